#include "egp/gperm/gperm.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/common/parallel.hpp"

namespace egp {

IntMatrix reduced_incidence(const Multigraph& g, VertexId special) {
  if (special < 0 || special >= g.vertex_count()) throw PreconditionError("special vertex out of range");
  if (g.vertex_count() < 2) throw PreconditionError("reduced incidence needs at least two vertices");
  IntMatrix m(g.vertex_count() - 1, g.edge_count(), 0);
  auto row_of = [special](VertexId v) { return v < special ? v : v - 1; };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.tail == ed.head) continue;
    if (ed.head != special) m(row_of(ed.head), e) += 1;
    if (ed.tail != special) m(row_of(ed.tail), e) -= 1;
  }
  return m;
}

VertexId default_special_vertex(const Multigraph& g) { return g.vertex_count() - 1; }

MatrixSource MatrixSource::from_graph(std::string name, const Multigraph& g, std::optional<VertexId> special) {
  const VertexId s = special.value_or(default_special_vertex(g));
  return MatrixSource{std::move(name), reduced_incidence(g, s), fundamental_spec(g)};
}

MatrixSource MatrixSource::from_matrix(std::string name, IntMatrix m) {
  const FundamentalSpec spec = FundamentalSpec::from_dimensions(m.rows(), m.cols());
  return MatrixSource{std::move(name), std::move(m), spec};
}

const char* to_string(Engine e) noexcept {
  switch (e) {
    case Engine::naive:
      return "naive";
    case Engine::ryser:
      return "ryser";
    case Engine::block:
      return "block";
    case Engine::automatic:
      break;
  }
  return "auto";
}

Engine parse_engine(const std::string& text) {
  if (text == "auto") return Engine::automatic;
  if (text == "naive") return Engine::naive;
  if (text == "ryser") return Engine::ryser;
  if (text == "block") return Engine::block;
  throw PreconditionError("unknown engine '" + text + "'");
}

GPermValue gperm_at_prime(const MatrixSource& src, std::uint64_t p, const EngineOptions& options) {
  const FundamentalSpec& spec = src.spec;
  const auto v = static_cast<std::uint64_t>(spec.vertex_factor);
  if (p < 2 || (p - 1) % v != 0 || (p - 1) / v < 1) {
    throw IneligiblePrime(std::to_string(p) + " is not of the form " + std::to_string(v) + "n+1");
  }
  const std::uint64_t n = (p - 1) / v;
  const bool prime = is_prime(p);
  BlockSpec block{src.matrix, static_cast<std::int64_t>(n * v), static_cast<std::int64_t>(n) * spec.edge_factor};
  GPermValue out;
  out.prime = p;
  out.sign_class = (n * static_cast<std::uint64_t>(spec.edge_factor)) % 2 == 1 ? SignClass::flippable : SignClass::fixed;
  const std::int64_t dim = block.expanded_rows();

  Engine engine = options.engine;
  if (!prime) engine = Engine::block;
  if (engine == Engine::automatic) {
    engine = dim <= options.naive_limit ? Engine::naive : dim <= options.ryser_limit ? Engine::ryser : Engine::block;
  }
  switch (engine) {
    case Engine::naive:
      out.residue = permanent_naive_mod(kron_ones(src.matrix, static_cast<int>(block.row_multiplicity),
                                                  static_cast<int>(block.column_multiplicity)),
                                        p);
      break;
    case Engine::ryser:
      out.residue = permanent_ryser_mod(kron_ones(src.matrix, static_cast<int>(block.row_multiplicity),
                                                  static_cast<int>(block.column_multiplicity)),
                                        p);
      break;
    default: {
      const BlockPermanent r = permanent_block(block, p, options.block);
      out.residue = r.residue;
      out.composite_modulus = r.composite_modulus;
    }
  }
  return out;
}

const SequenceEntry* PermSequence::find(std::uint64_t p) const {
  auto it = std::find_if(entries.begin(), entries.end(), [p](const SequenceEntry& e) { return e.prime == p; });
  return it == entries.end() ? nullptr : &*it;
}

std::vector<std::uint64_t> PermSequence::primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& e : entries) out.push_back(e.prime);
  return out;
}

PermSequence gperm_sequence_at(const MatrixSource& src, const std::vector<std::uint64_t>& primes,
                               const EngineOptions& options) {
  PermSequence seq{src.name, std::vector<SequenceEntry>(primes.size())};
  parallel_for(primes.size(), options.workers, [&](std::size_t i) {
    const GPermValue v = gperm_at_prime(src, primes[i], options);
    seq.entries[i] = {v.prime, v.residue, v.sign_class};
  });
  return seq;
}

PermSequence gperm_sequence(const MatrixSource& src, std::uint64_t max_prime, const EngineOptions& options) {
  return gperm_sequence_at(src, src.spec.eligible_primes(max_prime), options);
}

MatchReport sequences_match(const PermSequence& a, const PermSequence& b) {
  MatchReport report;
  if (a.primes() != b.primes()) {
    report.reason = "prime supports differ";
    return report;
  }
  int epsilon = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const SequenceEntry& x = a.entries[i];
    const SequenceEntry& y = b.entries[i];
    if (x.sign_class != y.sign_class) {
      report.reason = "sign classes differ at p=" + std::to_string(x.prime);
      return report;
    }
    if (x.sign_class == SignClass::fixed) {
      if (x.residue != y.residue) report.mismatched_primes.push_back(x.prime);
      continue;
    }
    const std::uint64_t neg_y = y.residue == 0 ? 0 : x.prime - y.residue;
    const bool plus = x.residue == y.residue;
    const bool minus = x.residue == neg_y;
    if (plus && minus) continue;
    const int needed = plus ? 1 : minus ? -1 : 0;
    if (needed == 0 || (epsilon != 0 && epsilon != needed)) {
      report.mismatched_primes.push_back(x.prime);
    } else {
      epsilon = needed;
    }
  }
  report.epsilon = epsilon == 0 ? 1 : epsilon;
  report.match = report.mismatched_primes.empty();
  if (!report.match) report.reason = "residues differ";
  return report;
}

PermSequence sequence_product(const PermSequence& a, const PermSequence& b, std::string name) {
  if (a.primes() != b.primes()) throw PreconditionError("sequence product needs identical prime supports");
  PermSequence out{std::move(name), {}};
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& x = a.entries[i];
    const auto& y = b.entries[i];
    const bool flip = x.sign_class == SignClass::flippable || y.sign_class == SignClass::flippable;
    out.entries.push_back({x.prime, mul_mod(x.residue, y.residue, x.prime), flip ? SignClass::flippable : SignClass::fixed});
  }
  return out;
}

PermSequence sequence_negated(const PermSequence& a, std::string name) {
  PermSequence out{std::move(name), a.entries};
  for (auto& e : out.entries) e.residue = e.residue == 0 ? 0 : e.prime - e.residue;
  return out;
}

PermSequence sequence_restricted(const PermSequence& a, const std::vector<std::uint64_t>& primes) {
  PermSequence out{a.name, {}};
  for (const auto& e : a.entries) {
    if (std::find(primes.begin(), primes.end(), e.prime) != primes.end()) out.entries.push_back(e);
  }
  return out;
}

std::string sequence_to_csv(const PermSequence& s) {
  std::ostringstream out;
  out << "prime,residue,sign_class\n";
  for (const auto& e : s.entries) out << e.prime << ',' << e.residue << ',' << to_string(e.sign_class) << '\n';
  return out.str();
}

std::string sequence_to_json(const PermSequence& s) {
  nlohmann::json j;
  j["schema"] = "v1";
  j["name"] = s.name;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : s.entries) {
    j["entries"].push_back({{"prime", e.prime}, {"residue", e.residue}, {"sign_class", to_string(e.sign_class)}});
  }
  return j.dump(2);
}

std::uint64_t tagging_oracle(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special, int max_edges) {
  const FundamentalSpec spec = fundamental_spec(g);
  const std::uint64_t n = spec.n_of(p);
  const VertexId s = special.value_or(default_special_vertex(g));
  const auto copies = static_cast<std::int64_t>(n) * spec.edge_factor;
  if (copies * g.edge_count() > max_edges) {
    throw PreconditionError("tagging oracle is limited to " + std::to_string(max_edges) + " duplicated edges");
  }
  std::vector<Edge> edges;
  for (std::int64_t c = 0; c < copies; ++c) edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  const auto k = static_cast<int>(p - 1);
  std::vector<int> tags(g.vertex_count(), 0);
  std::int64_t signed_count = 0;
  auto place = [&](auto&& self, std::size_t i, int sign) -> void {
    if (i == edges.size()) {
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (v != s && tags[v] != k) return;
      }
      signed_count += sign;
      return;
    }
    const Edge& e = edges[i];
    if (e.head != s && tags[e.head] < k) {
      ++tags[e.head];
      self(self, i + 1, sign);
      --tags[e.head];
    }
    if (e.tail != s && tags[e.tail] < k) {
      ++tags[e.tail];
      self(self, i + 1, -sign);
      --tags[e.tail];
    }
  };
  place(place, 0, 1);
  const Modulus field(p);
  std::uint64_t colourings = 1;
  for (std::uint64_t x = 2; x <= p - 1; ++x) colourings = field.mul(colourings, x);
  colourings = field.pow(colourings, static_cast<std::uint64_t>(g.vertex_count() - 1));
  return field.mul(field.reduce(signed_count), colourings);
}

}  // namespace egp

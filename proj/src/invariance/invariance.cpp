#include "egp/invariance/invariance.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>

#include "egp/closedform/generate.hpp"
#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/common/parallel.hpp"
#include "egp/gperm/gperm.hpp"
#include "egp/graphcore/operations.hpp"
#include "egp/matmod/modular.hpp"

namespace egp {
namespace {

std::vector<std::uint64_t> common_primes(std::vector<std::vector<std::uint64_t>> lists) {
  std::vector<std::uint64_t> out = lists.front();
  for (std::size_t i = 1; i < lists.size(); ++i) {
    std::vector<std::uint64_t> next;
    std::set_intersection(out.begin(), out.end(), lists[i].begin(), lists[i].end(), std::back_inserter(next));
    out = std::move(next);
  }
  return out;
}

std::vector<std::uint64_t> primes_for(const Multigraph& g, std::uint64_t max_prime) {
  return fundamental_spec(g).eligible_primes(max_prime);
}

void finish(VerificationReport& r) {
  r.pass = !r.comparisons.empty() &&
           std::all_of(r.comparisons.begin(), r.comparisons.end(), [](const Comparison& c) { return c.pass; });
}

std::string describe(const Multigraph& g) {
  return std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges";
}

nlohmann::json to_json_value(const VerificationReport& r) {
  nlohmann::json j;
  j["schema"] = "v1";
  j["theorem"] = r.theorem;
  j["inputs"] = r.inputs;
  j["applicable"] = r.applicable;
  j["experimental"] = r.experimental;
  j["note"] = r.note;
  j["pass"] = r.pass;
  j["comparisons"] = nlohmann::json::array();
  for (const auto& c : r.comparisons) {
    nlohmann::json jc;
    jc["label"] = c.label;
    jc["epsilon"] = c.epsilon;
    jc["pass"] = c.pass;
    jc["reason"] = c.reason;
    jc["checks"] = nlohmann::json::array();
    for (const auto& k : c.checks) {
      jc["checks"].push_back({{"prime", k.prime},
                              {"lhs", k.lhs},
                              {"rhs", k.rhs},
                              {"sign_class", to_string(k.sign_class)},
                              {"pass", k.pass}});
    }
    j["comparisons"].push_back(std::move(jc));
  }
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) { return to_json_value(report).dump(2); }

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(to_json_value(r));
  return j.dump(2);
}

PermSequence graph_sequence(const Multigraph& g, const std::string& name, const std::vector<std::uint64_t>& primes,
                            const InvarianceOptions& options) {
  PermSequence seq = gperm_sequence_at(MatrixSource::from_graph(name, g), primes, options.engine);
  if (options.cross_check) {
    std::optional<ClosedForm> formula;
    try {
      formula = generate_closed_form(g, default_special_vertex(g));
    } catch (const PreconditionError&) {
      // Outside the generator's domain (pendant vertices, loops): nothing to cross-check.
    }
    if (formula) {
      const MatchReport m = sequences_match(seq, formula_sequence_at(*formula, name, primes));
      if (!m.match) throw Error("block engine and closed form disagree on " + name + ": " + m.reason);
    }
  }
  return seq;
}

Comparison compare_residues(const std::string& label, const std::vector<std::uint64_t>& primes,
                            const std::vector<std::uint64_t>& lhs, const std::vector<std::uint64_t>& rhs,
                            const std::vector<bool>& flippable) {
  Comparison c;
  c.label = label;
  if (lhs.size() != primes.size() || rhs.size() != primes.size() || flippable.size() != primes.size()) {
    throw PreconditionError("comparison inputs have different lengths");
  }
  // The global sign is fixed by the first flippable entry that distinguishes +rhs from -rhs.
  int epsilon = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!flippable[i]) continue;
    const std::uint64_t p = primes[i];
    const std::uint64_t neg = rhs[i] == 0 ? 0 : p - rhs[i];
    if (lhs[i] == rhs[i] && lhs[i] != neg) {
      epsilon = 1;
      break;
    }
    if (lhs[i] == neg && lhs[i] != rhs[i]) {
      epsilon = -1;
      break;
    }
  }
  c.epsilon = epsilon == 0 ? 1 : epsilon;
  c.pass = true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    PrimeCheck k;
    k.prime = primes[i];
    k.lhs = lhs[i];
    k.rhs = rhs[i];
    k.sign_class = flippable[i] ? SignClass::flippable : SignClass::fixed;
    const std::uint64_t adjusted = (flippable[i] && c.epsilon < 0 && rhs[i] != 0) ? primes[i] - rhs[i] : rhs[i];
    k.pass = lhs[i] == adjusted;
    c.pass = c.pass && k.pass;
    c.checks.push_back(k);
  }
  if (!c.pass) c.reason = "residues differ";
  return c;
}

Comparison compare_sequences(const std::string& label, const PermSequence& lhs, const PermSequence& rhs) {
  if (lhs.primes() != rhs.primes()) {
    Comparison c;
    c.label = label;
    c.reason = "prime supports differ";
    return c;
  }
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
  std::vector<bool> flip;
  for (std::size_t i = 0; i < lhs.entries.size(); ++i) {
    if (lhs.entries[i].sign_class != rhs.entries[i].sign_class) {
      Comparison c;
      c.label = label;
      c.reason = "sign classes differ at p=" + std::to_string(lhs.entries[i].prime);
      return c;
    }
    a.push_back(lhs.entries[i].residue);
    b.push_back(rhs.entries[i].residue);
    flip.push_back(lhs.entries[i].sign_class == SignClass::flippable);
  }
  return compare_residues(label, lhs.primes(), a, b, flip);
}

VerificationReport sequence_pair_report(const std::string& theorem, const std::vector<std::string>& inputs,
                                        const PermSequence& lhs, const PermSequence& rhs) {
  VerificationReport r;
  r.theorem = theorem;
  r.inputs = inputs;
  r.comparisons.push_back(compare_sequences(lhs.name + " vs " + rhs.name, lhs, rhs));
  finish(r);
  return r;
}

VerificationReport check_decompletion(const Multigraph& completed, std::uint64_t max_prime,
                                      const InvarianceOptions& options) {
  if (!completed.is_regular(4) || !completed.is_connected()) {
    throw PreconditionError("decompletion check needs a connected 4-regular graph");
  }
  VerificationReport r;
  r.theorem = "decompletion";
  r.inputs = {describe(completed)};
  const std::vector<Multigraph> parts = decompletions(completed);
  const auto primes = primes_for(parts.front(), max_prime);
  std::vector<PermSequence> seqs(parts.size());
  for (std::size_t v = 0; v < parts.size(); ++v) {
    seqs[v] = graph_sequence(parts[v], "G-" + std::to_string(v), primes, options);
  }
  for (std::size_t v = 1; v < parts.size(); ++v) {
    r.comparisons.push_back(compare_sequences("G-0 vs G-" + std::to_string(v), seqs[0], seqs[v]));
  }
  finish(r);
  return r;
}

VerificationReport check_twist(const Multigraph& g1, const Multigraph& g2, const TwistData& data,
                               std::uint64_t max_prime, const InvarianceOptions& options) {
  if (!g1.is_regular(4) || !g2.is_regular(4)) throw PreconditionError("twist check needs 4-regular graphs");
  const Multigraph twisted = schnetz_twist(g1, data.cut, data.side);
  if (!are_isomorphic(twisted, g2)) throw PreconditionError("twist data does not turn the first graph into the second");
  VerificationReport r;
  r.theorem = "twist";
  r.inputs = {describe(g1), describe(g2)};
  const Multigraph d1 = decompletion(g1, 0);
  const Multigraph d2 = decompletion(g2, 0);
  const auto primes = primes_for(d1, max_prime);
  r.comparisons.push_back(compare_sequences("G1-0 vs G2-0", graph_sequence(d1, "G1-0", primes, options),
                                            graph_sequence(d2, "G2-0", primes, options)));
  finish(r);
  return r;
}

VerificationReport check_dual(const Multigraph& g, const Multigraph& dual, std::uint64_t max_prime,
                              const InvarianceOptions& options) {
  if (g.edge_count() != dual.edge_count()) throw PreconditionError("a planar dual has the same number of edges");
  VerificationReport r;
  r.theorem = "dual";
  r.inputs = {describe(g), describe(dual)};
  const int ne = g.edge_count();
  const int nv = g.vertex_count();
  if (ne == 2 * (nv - 1)) {
    const auto primes = primes_for(g, max_prime);
    if (primes_for(dual, max_prime) != primes) throw Error("prime supports of a graph and its dual differ");
    r.comparisons.push_back(
        compare_sequences("G vs G*", graph_sequence(g, "G", primes, options), graph_sequence(dual, "G*", primes, options)));
    finish(r);
    return r;
  }
  r.note = "general relation with factor (-1)^(|E|-|V|+1) (n e)!^|E|";
  const FundamentalSpec spec = fundamental_spec(g);
  const auto primes = common_primes({primes_for(g, max_prime), primes_for(dual, max_prime)});
  const PermSequence a = graph_sequence(g, "G", primes, options);
  const PermSequence b = graph_sequence(dual, "G*", primes, options);
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint64_t> rhs;
  std::vector<bool> flip;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const FactorialTable table(p);
    const Modulus& field = table.field();
    const auto n = static_cast<std::int64_t>(spec.n_of(p));
    std::uint64_t factor = field.pow(table.factorial(n * spec.edge_factor), static_cast<std::uint64_t>(ne));
    factor = field.mul(factor, field.sign(ne - nv + 1));
    lhs.push_back(a.entries[i].residue);
    rhs.push_back(field.mul(factor, b.entries[i].residue));
    flip.push_back(a.entries[i].sign_class == SignClass::flippable || b.entries[i].sign_class == SignClass::flippable);
  }
  r.comparisons.push_back(compare_residues("G vs factor * G*", primes, lhs, rhs, flip));
  finish(r);
  return r;
}

VerificationReport check_dual(const Multigraph& g, std::uint64_t max_prime, const InvarianceOptions& options) {
  const std::optional<Embedding> emb = find_planar_embedding(g);
  if (!emb) throw PreconditionError("graph is not planar");
  return check_dual(g, planar_dual(g, *emb).graph, max_prime, options);
}

VerificationReport two_cut_report(const PermSequence& glued, const PermSequence& first, const PermSequence& second,
                                  bool applicable) {
  VerificationReport r;
  r.theorem = "two_vertex_cut";
  r.inputs = {glued.name, first.name, second.name};
  r.applicable = applicable;
  if (!applicable) r.note = "theorem inapplicable: edge counts are not 2|V|-2";
  const auto primes = common_primes({glued.primes(), first.primes(), second.primes()});
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint64_t> rhs;
  std::vector<bool> flip;
  for (std::uint64_t p : primes) {
    const SequenceEntry* g = glued.find(p);
    const SequenceEntry* a = first.find(p);
    const SequenceEntry* b = second.find(p);
    const Modulus field(p);
    lhs.push_back(g->residue);
    rhs.push_back(field.neg(field.mul(a->residue, b->residue)));
    flip.push_back(g->sign_class == SignClass::flippable || a->sign_class == SignClass::flippable ||
                   b->sign_class == SignClass::flippable);
  }
  r.comparisons.push_back(compare_residues("glued vs -G1*G2", primes, lhs, rhs, flip));
  finish(r);
  return r;
}

VerificationReport check_two_cut(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2, bool flip,
                                 std::uint64_t max_prime, const InvarianceOptions& options) {
  const Multigraph glued = two_vertex_glue(g1, e1, g2, e2, flip);
  auto balanced = [](const Multigraph& g) { return g.edge_count() == 2 * g.vertex_count() - 2; };
  const bool applicable = balanced(g1) && balanced(g2) && balanced(glued);
  VerificationReport r = two_cut_report(graph_sequence(glued, "glued", primes_for(glued, max_prime), options),
                                        graph_sequence(g1, "G1", primes_for(g1, max_prime), options),
                                        graph_sequence(g2, "G2", primes_for(g2, max_prime), options), applicable);
  r.inputs = {describe(glued), describe(g1), describe(g2)};
  return r;
}

VerificationReport check_four_cut(const Multigraph& completed, const std::vector<VertexId>& side,
                                  std::uint64_t max_prime, const InvarianceOptions& options) {
  if (!completed.is_regular(4) || !completed.is_connected()) {
    throw PreconditionError("four-edge cut check needs a connected 4-regular graph");
  }
  const FourEdgeCutSplit split = split_four_edge_cut(completed, side);
  const Multigraph g = decompletion(completed, 0);
  const Multigraph g1 = decompletion(split.inner, split.inner.vertex_count() - 1);
  const Multigraph g2 = decompletion(split.outer, split.outer.vertex_count() - 1);
  const auto primes = common_primes({primes_for(g, max_prime), primes_for(g1, max_prime), primes_for(g2, max_prime)});
  const PermSequence s = graph_sequence(g, "G", primes, options);
  const PermSequence s1 = graph_sequence(g1, "G1", primes, options);
  const PermSequence s2 = graph_sequence(g2, "G2", primes, options);
  VerificationReport r;
  r.theorem = "four_edge_cut";
  r.inputs = {describe(completed), describe(split.inner), describe(split.outer)};
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint64_t> rhs;
  std::vector<bool> flip;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Modulus field(primes[i]);
    lhs.push_back(s.entries[i].residue);
    rhs.push_back(field.mul(s1.entries[i].residue, s2.entries[i].residue));
    flip.push_back(s.entries[i].sign_class == SignClass::flippable || s1.entries[i].sign_class == SignClass::flippable ||
                   s2.entries[i].sign_class == SignClass::flippable);
  }
  r.comparisons.push_back(compare_residues("G vs G1*G2", primes, lhs, rhs, flip));
  finish(r);
  return r;
}

VerificationReport check_whitney_flip(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2,
                                      std::uint64_t max_prime, const InvarianceOptions& options) {
  const Multigraph plain = two_vertex_glue(g1, e1, g2, e2, false);
  const Multigraph flipped = two_vertex_glue(g1, e1, g2, e2, true);
  const auto primes = primes_for(plain, max_prime);
  VerificationReport r;
  r.theorem = "whitney_flip";
  r.experimental = true;
  r.inputs = {describe(plain), describe(flipped)};
  r.comparisons.push_back(compare_sequences("glue vs flipped glue", graph_sequence(plain, "glue", primes, options),
                                            graph_sequence(flipped, "flipped", primes, options)));
  finish(r);
  if (!r.pass) r.note = "conjectural relation failed";
  return r;
}

const char* to_string(WitnessKind kind) noexcept {
  switch (kind) {
    case WitnessKind::pendant:
      return "pendant";
    case WitnessKind::parallel:
      return "parallel";
    case WitnessKind::separation:
      return "separation";
    case WitnessKind::involution:
      return "involution";
  }
  return "unknown";
}

WitnessSearch find_vanishing_witness(const Multigraph& g) {
  WitnessSearch out;
  const int nv = g.vertex_count();
  if (nv < 2 || g.edge_count() < 1) return out;
  const FundamentalSpec spec = fundamental_spec(g);

  if (g.is_connected() && g.edge_count() >= nv) {
    for (VertexId v = 0; v < nv; ++v) {
      if (g.degree(v) != 1) continue;
      const Edge& e = g.edge(g.incident_edges(v).front());
      VanishingWitness w;
      w.kind = WitnessKind::pendant;
      w.vertices = {v};
      w.special = e.tail == v ? e.head : e.tail;
      w.description = "vertex " + std::to_string(v) + " is pendant in a graph that is not a tree";
      out.witness = w;
      return out;
    }
  }

  const auto mult = g.multiplicity_matrix();
  for (VertexId u = 0; u < nv; ++u) {
    for (VertexId v = u + 1; v < nv; ++v) {
      const std::int64_t m = mult[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (m * spec.edge_factor > spec.vertex_factor) {
        VanishingWitness w;
        w.kind = WitnessKind::parallel;
        w.vertices = {u, v};
        w.special = u;
        w.description = std::to_string(m) + " parallel edges between " + std::to_string(u) + " and " +
                        std::to_string(v) + " exceed the vertex weight";
        out.witness = w;
        return out;
      }
    }
  }

  if (nv > 12) {
    out.separation_searched = false;
  } else {
    for (VertexId s = 0; s < nv; ++s) {
      std::vector<VertexId> others;
      for (VertexId v = 0; v < nv; ++v) {
        if (v != s) others.push_back(v);
      }
      const std::uint32_t full = (1U << others.size()) - 1;
      for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::vector<bool> in(static_cast<std::size_t>(nv), false);
        in[static_cast<std::size_t>(s)] = true;
        int size = 0;
        for (std::size_t i = 0; i < others.size(); ++i) {
          if (mask >> i & 1U) {
            in[static_cast<std::size_t>(others[i])] = true;
            ++size;
          }
        }
        std::int64_t inside = 0;
        for (const Edge& e : g.edges()) {
          if (in[static_cast<std::size_t>(e.tail)] && in[static_cast<std::size_t>(e.head)] &&
              !(e.tail == s && e.head == s)) {
            ++inside;
          }
        }
        if (inside * spec.edge_factor > size * spec.vertex_factor) {
          VanishingWitness w;
          w.kind = WitnessKind::separation;
          w.special = s;
          for (std::size_t i = 0; i < others.size(); ++i) {
            if (mask >> i & 1U) w.vertices.push_back(others[i]);
          }
          w.description = std::to_string(inside) + " edges on " + std::to_string(size) +
                          " non-special vertices carry more weight than the vertices";
          out.witness = w;
          return out;
        }
      }
    }
  }

  if (nv > 10) {
    out.involution_searched = false;
    return out;
  }
  for_each_isomorphism(g, g, [&](const std::vector<VertexId>& tau) {
    VertexId fixed = -1;
    for (VertexId v = 0; v < nv; ++v) {
      if (tau[static_cast<std::size_t>(tau[static_cast<std::size_t>(v)])] != v) return true;
      if (fixed < 0 && tau[static_cast<std::size_t>(v)] == v) fixed = v;
    }
    if (fixed < 0) return true;
    int crossing = 0;
    for (const Edge& e : g.edges()) {
      if (e.tail != e.head && tau[static_cast<std::size_t>(e.tail)] == e.head) ++crossing;
    }
    if (crossing % 2 == 0) return true;
    VanishingWitness w;
    w.kind = WitnessKind::involution;
    w.vertices = {fixed};
    w.special = fixed;
    w.involution = tau;
    w.odd_multiplicity_only = true;
    w.description = "involution fixing vertex " + std::to_string(fixed) + " with " + std::to_string(crossing) +
                    " crossing edges";
    out.witness = w;
    return false;
  });
  return out;
}

std::optional<VanishingWitness> vanishing_witness(const Multigraph& g) { return find_vanishing_witness(g).witness; }

std::optional<std::vector<bool>> find_mod_p_orientation(const Multigraph& g, std::uint64_t p, int max_edges) {
  const int ne = g.edge_count();
  if (ne > max_edges) throw BudgetExceeded("orientation search is limited to " + std::to_string(max_edges) + " edges");
  const auto mod = static_cast<std::int64_t>(p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    std::vector<std::int64_t> net(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e = 0; e < ne; ++e) {
      Edge ed = g.edge(e);
      if (mask >> e & 1U) std::swap(ed.tail, ed.head);
      ++net[static_cast<std::size_t>(ed.tail)];
      --net[static_cast<std::size_t>(ed.head)];
    }
    if (std::all_of(net.begin(), net.end(), [mod](std::int64_t x) { return x % mod == 0; })) {
      std::vector<bool> flags(static_cast<std::size_t>(ne));
      for (EdgeId e = 0; e < ne; ++e) flags[static_cast<std::size_t>(e)] = (mask >> e & 1U) != 0;
      return flags;
    }
  }
  return std::nullopt;
}

OrientationCertificate orientation_certificate(const Multigraph& g, const Multigraph& h, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError("orientation certificates need a prime");
  if (h.vertex_count() != g.vertex_count()) throw PreconditionError("H must span G");
  const auto k = static_cast<std::int64_t>(p - 1);
  if (h.edge_count() != k * (g.vertex_count() - 1)) {
    throw PreconditionError("H must have (p-1)(|V|-1) edges");
  }
  auto key = [](const Edge& e) { return std::pair{std::min(e.tail, e.head), std::max(e.tail, e.head)}; };
  std::map<std::pair<VertexId, VertexId>, int> available;
  for (const Edge& e : g.edges()) ++available[key(e)];
  for (const Edge& e : h.edges()) {
    if (--available[key(e)] < 0) throw PreconditionError("H is not a subgraph of G");
  }
  OrientationCertificate out;
  const BlockSpec block{reduced_incidence(h, default_special_vertex(h)), k, 1};
  out.certificate = permanent_block(block, p).residue != 0;
  if (g.edge_count() <= 10) {
    out.orientation = find_mod_p_orientation(g, p, 10);
    out.orientation_exists = out.orientation.has_value();
  }
  return out;
}

std::vector<VerificationReport> run_verification_suite(const std::vector<std::function<VerificationReport()>>& checks,
                                                       unsigned workers) {
  std::vector<VerificationReport> reports(checks.size());
  parallel_for(checks.size(), workers, [&](std::size_t i) { reports[i] = checks[i](); });
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.theorem < b.theorem; });
  return reports;
}

}  // namespace egp

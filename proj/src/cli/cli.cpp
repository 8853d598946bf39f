#include "egp/cli/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "egp/cli/goldens.hpp"
#include "egp/closedform/families.hpp"
#include "egp/closedform/generate.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/ctwo/ctwo.hpp"
#include "egp/graphcore/catalog.hpp"
#include "egp/graphcore/graph_io.hpp"
#include "egp/heppbound/hepp.hpp"
#include "egp/invariance/invariance.hpp"
#include "egp/pointcount/pointcount.hpp"

namespace egp::cli {
namespace {

struct GraphInput {
  std::string name;
  std::string file;
  std::string orientation = "file";
  std::optional<int> special;

  void add_to(CLI::App& app) {
    auto* n = app.add_option("--name", name, "Catalog graph, e.g. K4, W4, zigzag(7), C(6,1,2)");
    auto* f = app.add_option("--graph", file, "Graph file (V/E line format)");
    n->excludes(f);
    app.add_option("--orientation", orientation, "Edge orientation: canonical (tail <= head) or file")
        ->check(CLI::IsMember({"canonical", "file"}));
    app.add_option("--special", special, "Special vertex (default: highest index)");
  }

  Multigraph load() const {
    if (name.empty() == file.empty()) throw PreconditionError("give exactly one of --name and --graph");
    Multigraph g = name.empty() ? read_graph_file(file).graph : catalog_graph(name);
    if (orientation == "canonical") g = g.canonical();
    if (special && (*special < 0 || *special >= g.vertex_count())) {
      throw PreconditionError("special vertex " + std::to_string(*special) + " is out of range");
    }
    return g;
  }

  std::string label() const { return name.empty() ? file : name; }
};

struct Common {
  unsigned workers = 1;
  std::uint64_t budget = CountOptions{}.point_budget;

  void add_workers(CLI::App& app) { app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u)); }
  void add_budget(CLI::App& app) { app.add_option("--budget", budget, "Largest number of points to enumerate"); }
  CountOptions count() const { return CountOptions{budget, workers}; }
};

std::vector<std::uint64_t> prime_list(const FundamentalSpec& spec, std::uint64_t max_prime,
                                      const std::vector<std::uint64_t>& explicit_primes) {
  if (explicit_primes.empty()) return spec.eligible_primes(max_prime);
  for (const auto p : explicit_primes) {
    if (!spec.eligible(p)) throw IneligiblePrime(std::to_string(p) + " is not an eligible prime");
  }
  return explicit_primes;
}

std::string sequence_text(const PermSequence& s) {
  std::ostringstream out;
  for (const auto& e : s.entries) out << e.prime << " " << e.residue << " " << to_string(e.sign_class) << "\n";
  return out.str();
}

void write_sequence(std::ostream& out, const PermSequence& s, const std::string& format) {
  if (format == "csv") {
    out << sequence_to_csv(s);
  } else if (format == "json") {
    out << sequence_to_json(s) << "\n";
  } else {
    out << sequence_text(s);
  }
}

/// Compares against a golden row on the primes both sequences share.
bool report_golden(const PermSequence& s, const std::string& row_name, std::ostream& sink) {
  const GoldenTable& table = bundled_golden_table();
  const GoldenRow* row = table.find(row_name);
  if (row == nullptr) throw PreconditionError("no golden row named '" + row_name + "'");
  std::vector<std::uint64_t> common;
  for (const auto p : s.primes()) {
    if (std::find(table.primes.begin(), table.primes.end(), p) != table.primes.end()) common.push_back(p);
  }
  const MatchReport m =
      sequences_match(sequence_restricted(s, common), sequence_restricted(table.sequence(*row), common));
  sink << "golden " << row_name << ": " << (m.match ? "match" : "mismatch") << " (epsilon " << m.epsilon << ")";
  if (!m.reason.empty()) sink << " " << m.reason;
  sink << "\n";
  return m.match;
}

ClosedForm load_formula(const std::string& file, const std::string& bundled, const std::string& family,
                        const std::string& text) {
  const int given = !file.empty() + !bundled.empty() + !family.empty() + !text.empty();
  if (given != 1) throw PreconditionError("give exactly one of --file, --name, --family and --text");
  if (!file.empty()) return parse_formula(read_text_file(file));
  if (!bundled.empty()) return appendix_catalog(bundled);
  if (!family.empty()) return family_formula(family);
  return parse_formula(text);
}

std::vector<VertexId> vertex_list(const std::vector<int>& v) { return {v.begin(), v.end()}; }

bool write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, const std::string& format) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && (r.pass || r.experimental || !r.applicable);
  if (format == "json") {
    out << reports_to_json(reports) << "\n";
  } else {
    for (const auto& r : reports) {
      out << r.theorem << " [";
      for (std::size_t i = 0; i < r.inputs.size(); ++i) out << (i ? ", " : "") << r.inputs[i];
      out << "]: " << (!r.applicable ? "not applicable" : r.pass ? "pass" : "FAIL");
      if (!r.note.empty()) out << " (" << r.note << ")";
      out << "\n";
      for (const auto& c : r.comparisons) {
        out << "  " << c.label << ": " << (c.pass ? "pass" : "FAIL") << ", epsilon " << c.epsilon;
        if (!c.reason.empty()) out << ", " << c.reason;
        out << "\n";
      }
    }
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended graph permanents and companion invariants"};
  app.require_subcommand(1);
  Common common;

  // gperm
  GraphInput gperm_graph;
  std::uint64_t gperm_max = 41;
  std::vector<std::uint64_t> gperm_primes;
  std::string gperm_engine = "auto";
  std::string gperm_format = "csv";
  std::string gperm_golden;
  auto* gperm = app.add_subcommand("gperm", "Extended graph permanent residues of a graph");
  gperm_graph.add_to(*gperm);
  gperm->add_option("--max-prime", gperm_max, "Largest prime");
  gperm->add_option("--primes", gperm_primes, "Explicit primes")->delimiter(',');
  gperm->add_option("--engine", gperm_engine)->check(CLI::IsMember({"auto", "naive", "ryser", "block"}));
  gperm->add_option("--format", gperm_format)->check(CLI::IsMember({"csv", "json", "text"}));
  gperm->add_option("--golden", gperm_golden, "Compare with a bundled golden row");
  common.add_workers(*gperm);

  // formula
  std::string f_file, f_name, f_family, f_text, f_format = "csv";
  std::uint64_t f_prime = 0, f_max = 41;
  auto* formula = app.add_subcommand("formula", "Closed-form formulas");
  formula->require_subcommand(1);
  auto add_formula_source = [&](CLI::App& sub) {
    sub.add_option("--file", f_file, "Formula file");
    sub.add_option("--name", f_name, "Bundled formula, e.g. P5_1");
    sub.add_option("--family", f_family, "Formula family, e.g. wheel(4), zigzag(7), k34");
    sub.add_option("--text", f_text, "Formula text");
  };
  auto* f_eval = formula->add_subcommand("eval", "Residue at one prime");
  add_formula_source(*f_eval);
  f_eval->add_option("--prime", f_prime)->required();
  common.add_workers(*f_eval);
  auto* f_seq = formula->add_subcommand("sequence", "Residues at every eligible prime");
  add_formula_source(*f_seq);
  f_seq->add_option("--max-prime", f_max);
  f_seq->add_option("--format", f_format)->check(CLI::IsMember({"csv", "json", "text"}));
  common.add_workers(*f_seq);
  auto* f_show = formula->add_subcommand("show", "Canonical formula text");
  add_formula_source(*f_show);
  auto* f_list = formula->add_subcommand("list", "Bundled formulas and families");

  // generate
  GraphInput gen_graph;
  std::uint64_t gen_check = 0;
  auto* generate = app.add_subcommand("generate", "Closed form for a graph");
  gen_graph.add_to(*generate);
  generate->add_option("--check-max-prime", gen_check, "Compare with the permanent engine up to this prime");

  // verify
  GraphInput v_graph;
  std::string v_theorem = "suite", v_second, v_format = "text";
  int v_edge = 0, v_second_edge = 0;
  bool v_flip = false, v_cross = false;
  std::vector<int> v_side, v_cut;
  std::uint64_t v_max = 13;
  auto* verify = app.add_subcommand("verify", "Invariance checks");
  v_graph.add_to(*verify);
  verify->add_option("--theorem", v_theorem)
      ->check(CLI::IsMember({"suite", "decompletion", "dual", "two-cut", "four-cut", "twist", "witness"}));
  verify->add_option("--second", v_second, "Second catalog graph (two-cut, twist)");
  verify->add_option("--edge", v_edge, "Glue edge of the first graph");
  verify->add_option("--second-edge", v_second_edge, "Glue edge of the second graph");
  verify->add_flag("--flip", v_flip, "Glue with the second edge reversed");
  verify->add_option("--side", v_side, "One shore of the cut")->delimiter(',');
  verify->add_option("--cut", v_cut, "Four twist vertices")->delimiter(',');
  verify->add_option("--max-prime", v_max);
  verify->add_flag("--cross-check", v_cross, "Also evaluate generated closed forms");
  verify->add_option("--format", v_format)->check(CLI::IsMember({"text", "json"}));
  common.add_workers(*verify);

  // c2
  GraphInput c2_graph;
  std::uint64_t c2_max = 7;
  bool c2_no_fallback = false, c2_dodgson = false;
  auto* c2 = app.add_subcommand("c2", "c2 invariant at small primes");
  c2_graph.add_to(*c2);
  c2->add_option("--max-prime", c2_max);
  c2->add_flag("--no-fallback", c2_no_fallback, "Fail instead of switching to the Dodgson route");
  c2->add_flag("--dodgson", c2_dodgson, "Always use the Dodgson route");
  common.add_workers(*c2);
  common.add_budget(*c2);

  // hepp
  GraphInput hepp_graph;
  bool hepp_histogram = false;
  auto* hepp = app.add_subcommand("hepp", "Hepp bound");
  hepp_graph.add_to(*hepp);
  hepp->add_flag("--histogram", hepp_histogram, "Also print chain weights and their multiplicities");
  common.add_workers(*hepp);

  // pointcount
  GraphInput pc_graph;
  std::uint64_t pc_prime = 0;
  bool pc_polynomial = false;
  auto* pointcount = app.add_subcommand("pointcount", "Point count of the permanent hypersurface");
  pc_graph.add_to(*pointcount);
  pointcount->add_option("--prime", pc_prime, "Prime");
  pointcount->add_flag("--polynomial", pc_polynomial, "Only print the permanent polynomial");
  common.add_workers(*pointcount);
  common.add_budget(*pointcount);

  // modform
  GraphInput mf_graph;
  std::string mf_formula, mf_eta, mf_coefficients;
  std::uint64_t mf_max = 41;
  bool mf_signed = false;
  auto* modform = app.add_subcommand("modform", "Compare residues with modular-form coefficients");
  mf_graph.add_to(*modform);
  modform->add_option("--formula", mf_formula, "Bundled formula instead of a graph");
  modform->add_option("--eta", mf_eta, "Eta product, e.g. -eta(4z)^6");
  modform->add_option("--coefficients", mf_coefficients, "CSV file with header p,a_p");
  modform->add_option("--max-prime", mf_max);
  modform->add_flag("--signed", mf_signed, "Require equality at every prime");
  common.add_workers(*modform);

  // goldens
  std::vector<std::string> g_rows;
  std::string g_file, g_format = "text";
  auto* goldens = app.add_subcommand("goldens", "Compare bundled formulas with the golden table");
  goldens->add_option("--rows", g_rows, "Rows to compare")->delimiter(',');
  goldens->add_option("--file", g_file, "Golden table file instead of the bundled one");
  goldens->add_option("--format", g_format)->check(CLI::IsMember({"text", "json"}));
  common.add_workers(*goldens);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (gperm->parsed()) {
      const Multigraph g = gperm_graph.load();
      const MatrixSource src = MatrixSource::from_graph(gperm_graph.label(), g, gperm_graph.special);
      EngineOptions options;
      options.engine = parse_engine(gperm_engine);
      options.workers = common.workers;
      const PermSequence s = gperm_sequence_at(src, prime_list(src.spec, gperm_max, gperm_primes), options);
      write_sequence(out, s, gperm_format);
      if (!gperm_golden.empty()) return report_golden(s, gperm_golden, gperm_format == "text" ? out : err) ? exit_ok : exit_failure;
      return exit_ok;
    }
    if (formula->parsed()) {
      const FormulaEvalOptions options{common.workers};
      if (f_list->parsed()) {
        for (const auto& n : appendix_names()) out << n << "\n";
        for (const auto& n : family_names()) out << n << "\n";
        return exit_ok;
      }
      const ClosedForm f = load_formula(f_file, f_name, f_family, f_text);
      if (f_eval->parsed()) {
        out << eval_formula(f, f_prime, options) << "\n";
      } else if (f_seq->parsed()) {
        const std::string label = !f_name.empty() ? f_name : !f_family.empty() ? f_family : !f_file.empty() ? f_file : "formula";
        write_sequence(out, formula_sequence(f, label, f_max, options), f_format);
      } else if (f_show->parsed()) {
        out << format_formula(f) << "\n";
      }
      return exit_ok;
    }
    if (generate->parsed()) {
      const Multigraph g = gen_graph.load();
      const VertexId special = gen_graph.special.value_or(default_special_vertex(g));
      const ClosedForm f = generate_closed_form(g, special);
      out << format_formula(f) << "\n";
      if (gen_check > 0) {
        const MatrixSource src = MatrixSource::from_graph(gen_graph.label(), g, special);
        const auto primes = src.spec.eligible_primes(gen_check);
        const MatchReport m =
            sequences_match(formula_sequence_at(f, "formula", primes), gperm_sequence_at(src, primes));
        out << "engine check up to " << gen_check << ": " << (m.match ? "match" : "mismatch") << "\n";
        return m.match ? exit_ok : exit_failure;
      }
      return exit_ok;
    }
    if (verify->parsed()) {
      InvarianceOptions options;
      options.engine.workers = 1;
      options.cross_check = v_cross;
      std::vector<std::function<VerificationReport()>> checks;
      if (v_theorem == "suite") {
        checks.push_back([&] { return check_decompletion(catalog_graph("C(6,1,2)"), v_max, options); });
        checks.push_back([&] { return check_dual(catalog_graph("K4"), v_max, options); });
        checks.push_back([&] { return check_dual(catalog_graph("W4"), v_max, options); });
        checks.push_back([&] {
          return check_two_cut(catalog_graph("K4"), 0, catalog_graph("K4"), 0, false, v_max, options);
        });
      } else if (v_theorem == "witness") {
        const WitnessSearch w = find_vanishing_witness(v_graph.load());
        if (w.witness) {
          out << to_string(w.witness->kind) << ": " << w.witness->description << "\n";
        } else {
          out << "no witness";
          if (!w.separation_searched || !w.involution_searched) out << " (search truncated)";
          out << "\n";
        }
        return exit_ok;
      } else {
        const Multigraph g = v_graph.load();
        if (v_theorem == "decompletion") {
          checks.push_back([&, g] { return check_decompletion(g, v_max, options); });
        } else if (v_theorem == "dual") {
          checks.push_back([&, g] { return check_dual(g, v_max, options); });
        } else if (v_theorem == "two-cut") {
          const Multigraph h = v_second.empty() ? g : catalog_graph(v_second);
          checks.push_back([&, g, h] { return check_two_cut(g, v_edge, h, v_second_edge, v_flip, v_max, options); });
        } else if (v_theorem == "four-cut") {
          checks.push_back([&, g] { return check_four_cut(g, vertex_list(v_side), v_max, options); });
        } else if (v_theorem == "twist") {
          if (v_cut.size() != 4) throw PreconditionError("--cut needs four vertices");
          const Multigraph h = catalog_graph(v_second);
          const TwistData data{{v_cut[0], v_cut[1], v_cut[2], v_cut[3]}, vertex_list(v_side)};
          checks.push_back([&, g, h, data] { return check_twist(g, h, data, v_max, options); });
        }
      }
      return write_reports(out, run_verification_suite(checks, common.workers), v_format) ? exit_ok : exit_failure;
    }
    if (c2->parsed()) {
      const Multigraph g = c2_graph.load();
      C2Options options;
      options.count = common.count();
      options.dodgson_fallback = !c2_no_fallback;
      if (c2_dodgson) {
        const auto triple = default_dodgson_triple(g);
        if (!triple) throw PreconditionError("no edge triple with nonzero Dodgson polynomials");
        out << "prime,count,c2\n";
        for (const auto p : primes_in_range(2, c2_max)) {
          out << p << ",," << dodgson_c2(g, p, *triple, options.count) << "\n";
        }
        return exit_ok;
      }
      out << c2_to_csv(c2_sequence(g, c2_max, options));
      return exit_ok;
    }
    if (hepp->parsed()) {
      const Multigraph g = hepp_graph.load();
      out << format_rational(hepp_bound(g, common.workers)) << "\n";
      if (hepp_histogram) {
        for (const auto& [weight, count] : hepp_chain_histogram(g)) out << format_rational(weight) << " x" << count << "\n";
      }
      return exit_ok;
    }
    if (pointcount->parsed()) {
      const Multigraph g = pc_graph.load();
      if (pc_polynomial) {
        out << permanent_polynomial(g, pc_graph.special).to_string() << "\n";
        return exit_ok;
      }
      if (pc_prime == 0) throw PreconditionError("--prime is required");
      if (pc_prime == 2) {
        const mpz_class count = tilde_point_count(g, 2, pc_graph.special, common.count());
        out << "count " << count << "\n";
        return exit_ok;
      }
      const PointCountRelation r = check_point_count_relation(g, pc_prime, pc_graph.special, common.count());
      out << "count " << r.count << "\n"
          << "scaled " << r.scaled << "\n"
          << "gperm " << r.gperm << " " << to_string(r.sign_class) << "\n"
          << "gperm = r!^L count: " << (r.holds ? "yes" : "no") << "\n"
          << "gperm = (-1)^(L+1) r!^L count: " << (r.holds_with_sign ? "yes" : "no") << "\n";
      if (r.phi4_sign) {
        out << "phi4 sign " << *r.phi4_sign << ": " << (r.phi4_holds ? "yes" : "no") << "\n"
            << "phi4 sign " << -*r.phi4_sign << ": " << (r.phi4_holds_with_sign ? "yes" : "no") << "\n";
      }
      return r.holds_with_sign ? exit_ok : exit_failure;
    }
    if (modform->parsed()) {
      PermSequence seq;
      if (!mf_formula.empty()) {
        seq = formula_sequence(appendix_catalog(mf_formula), mf_formula, mf_max, FormulaEvalOptions{common.workers});
      } else {
        const Multigraph g = mf_graph.load();
        EngineOptions options;
        options.workers = common.workers;
        seq = gperm_sequence(MatrixSource::from_graph(mf_graph.label(), g, mf_graph.special), mf_max, options);
      }
      ModformReport report;
      if (!mf_eta.empty() == !mf_coefficients.empty()) throw PreconditionError("give exactly one of --eta and --coefficients");
      if (!mf_eta.empty()) {
        const auto [sign, terms] = parse_eta_product(mf_eta);
        PowerSeries series = eta_product(terms, static_cast<int>(mf_max));
        if (sign < 0) series = -series;
        report = compare_modform(seq, series, mf_signed);
      } else {
        report = compare_coefficients(seq, parse_coefficient_csv(read_text_file(mf_coefficients)), mf_signed);
      }
      out << "prime,a_p,a_p mod p,residue,class,pass\n";
      for (const auto& c : report.checks) {
        out << c.prime << "," << c.coefficient << "," << c.reduced << "," << c.residue << "," << to_string(c.sign_class)
            << "," << (c.pass ? "yes" : "no") << "\n";
      }
      out << (report.match ? "match" : "mismatch") << " (epsilon " << report.epsilon << ")";
      if (!report.reason.empty()) out << " " << report.reason;
      out << "\n";
      return report.match ? exit_ok : exit_failure;
    }
    if (goldens->parsed()) {
      const GoldenTable table = g_file.empty() ? bundled_golden_table() : parse_golden_table(read_text_file(g_file));
      const GoldenReport report = compare_goldens(table, g_rows, FormulaEvalOptions{common.workers});
      out << (g_format == "json" ? golden_report_to_json(report) : golden_report_to_text(report));
      return report.pass ? exit_ok : exit_failure;
    }
  } catch (const ChecksumError& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace egp::cli

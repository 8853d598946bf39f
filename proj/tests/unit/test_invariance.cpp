#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/graphcore/catalog.hpp"
#include "egp/graphcore/operations.hpp"
#include "egp/invariance/invariance.hpp"

using namespace egp;

namespace {

Multigraph build(int vertices, std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return Multigraph(vertices, edges);
}

}  // namespace

TEST_CASE("decompletion invariance") {
  InvarianceOptions options;
  options.cross_check = true;
  const VerificationReport r = check_decompletion(circulant(6, 1, 2), 13, options);
  CHECK(r.pass);
  CHECK(r.comparisons.size() == 5);
  CHECK(report_to_json(r).find("\"v1\"") != std::string::npos);
  CHECK_THROWS_AS(check_decompletion(complete_graph(4), 13), PreconditionError);
}

TEST_CASE("twist invariance on census candidates") {
  const Multigraph g8 = build(9, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 6},
                                  {3, 7}, {3, 8}, {4, 7}, {4, 8}, {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}});
  const Multigraph g10 = build(9, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}, {2, 6}, {2, 7},
                                   {3, 6}, {3, 8}, {4, 5}, {4, 7}, {4, 8}, {5, 7}, {5, 8}, {6, 7}, {6, 8}});
  CHECK(check_twist(g8, g10, TwistData{{1, 7, 2, 8}, {0, 3, 4}}, 7).pass);
  CHECK_THROWS_AS(check_twist(g8, circulant(9, 1, 2), TwistData{{1, 7, 2, 8}, {0, 3, 4}}, 7), PreconditionError);
}

TEST_CASE("planar duality") {
  CHECK(check_dual(complete_graph(4), 13).pass);
  CHECK(check_dual(wheel(4), 13).pass);
  const VerificationReport k3 = check_dual(complete_graph(3), 13);
  CHECK(k3.pass);
  CHECK(k3.applicable);
}

TEST_CASE("two-vertex cuts") {
  CHECK(check_two_cut(complete_graph(4), 0, complete_graph(4), 0, false, 13).pass);
  const VerificationReport bad = check_two_cut(k4_minus_edge(), 0, k4_minus_edge(), 0, false, 11);
  CHECK_FALSE(bad.applicable);
}

TEST_CASE("four-edge cuts") {
  std::vector<Edge> edges;
  for (int block : {0, 4}) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) edges.push_back({block + a, block + b});
    }
  }
  for (int i = 0; i < 4; ++i) edges.push_back({i, 4 + i});
  CHECK(check_four_cut(Multigraph(8, edges), {0, 1, 2, 3}, 7).pass);
}

TEST_CASE("vanishing witnesses") {
  const auto w3 = vanishing_witness(wheel(3));
  REQUIRE(w3);
  CHECK(w3->kind == WitnessKind::involution);
  CHECK(vanishing_witness(wheel(5))->kind == WitnessKind::involution);
  CHECK_FALSE(vanishing_witness(wheel(4)));
  const WitnessSearch p711 = find_vanishing_witness(catalog_graph("P7_11"));
  CHECK_FALSE(p711.witness);
  CHECK(p711.involution_searched);

  const Multigraph tripled = build(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {0, 2}});
  CHECK(vanishing_witness(tripled)->kind == WitnessKind::parallel);
  const Multigraph pendant = build(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  CHECK(vanishing_witness(pendant)->kind == WitnessKind::pendant);
}

TEST_CASE("nowhere-zero orientation certificates") {
  const OrientationCertificate banana_cert = orientation_certificate(banana(2), banana(2), 3);
  CHECK(banana_cert.certificate);
  CHECK(banana_cert.orientation_exists == true);
  const Multigraph k4 = complete_graph(4);
  const OrientationCertificate k4_cert = orientation_certificate(k4, k4, 3);
  CHECK_FALSE(k4_cert.certificate);
  CHECK(k4_cert.orientation_exists == false);
  CHECK(find_mod_p_orientation(banana(2), 3));
  CHECK_THROWS_AS(orientation_certificate(k4, complete_graph(3), 3), PreconditionError);
}

TEST_CASE("suite ordering is deterministic") {
  std::vector<std::function<VerificationReport()>> checks{
      [] { return check_dual(complete_graph(4), 7); },
      [] { return check_decompletion(circulant(6, 1, 2), 7); },
  };
  const auto one = run_verification_suite(checks, 1);
  const auto many = run_verification_suite(checks, 4);
  CHECK(reports_to_json(one) == reports_to_json(many));
}

#include <catch2/catch_amalgamated.hpp>

#include "ctqw/graph.hpp"
#include "ctqw/ipr.hpp"
#include "ctqw/spectra.hpp"

using namespace ctqw;

namespace {

constexpr double kSeries = 0.28986813369645287;  // pi^2/3 - 3

struct Instance {
  GraphInstance g;
  EigenSystem es;
};

Instance make(Family f, int n) {
  Instance inst{build_graph(f, n), {}};
  inst.es = analytic_spectrum(inst.g);
  return inst;
}

}  // namespace

TEST_CASE("uniform vector has minimal participation") {
  const int N = 10;
  const Eigen::VectorXd v = Eigen::VectorXd::Constant(N, 1.0 / std::sqrt(double(N)));
  const auto r = eigenstate_ipr(v, "uniform");
  REQUIRE(r.value == Catch::Approx(1.0 / N).margin(1e-15));
  REQUIRE(r.effective_support == Catch::Approx(double(N)).margin(1e-12));
}

TEST_CASE("sequential clique modes follow the closed form") {
  const auto [g, es] = make(Family::Barbell, 5);
  const auto* deg = es.space_with_family("BarbellDegenerate");
  REQUIRE(deg != nullptr);
  const auto& fam = deg->families[0];
  // block of n-2 modes per clique; mode k has IPR (1+k^3)/(k(k+1)^2)
  const std::vector<double> expected{0.5, 0.5, 7.0 / 12.0};
  for (int k = 1; k <= 3; ++k) {
    const auto r = eigenstate_ipr(deg->basis.col(fam.col_begin + k - 1));
    REQUIRE(r.value == Catch::Approx(expected[k - 1]).margin(1e-14));
    REQUIRE(r.value == Catch::Approx((1.0 + k * k * k) / (k * (k + 1.0) * (k + 1.0)))
                           .margin(1e-14));
  }
}

TEST_CASE("full-contact star eigenstate participation") {
  const int n = 3;
  const auto [g, es] = make(Family::StarFull, n);
  const auto* psi1 = es.space_with_family("V1_Psi1");
  REQUIRE(psi1 != nullptr);
  const auto r1 = eigenstate_ipr(psi1->basis.col(0));
  REQUIRE(r1.value == Catch::Approx(2.0 / ((n + 1.0) * (n + 1.0))).margin(1e-14));  // 1/8

  // chi_j modes: exactly the clique closed form scaled by 1/n
  const auto* chi = es.space_with_family("V1_Chi");
  REQUIRE(chi != nullptr);
  for (int j = 1; j <= n - 1; ++j) {
    const auto r = eigenstate_ipr(chi->basis.col(chi->families[0].col_begin + j - 1));
    const double formula = (1.0 + j * j * j) / (j * (j + 1.0) * (j + 1.0)) / n;
    REQUIRE(r.value == Catch::Approx(formula).margin(1e-14));
  }
}

TEST_CASE("dynamical participation of the full-contact center, exact rational") {
  const auto [g, es] = make(Family::StarFull, 8);
  const auto r = dynamical_ipr(es, 0, "Center");
  REQUIRE(r.value == Catch::Approx(4229.0 / 6561.0).margin(1e-14));
}

TEST_CASE("frozen dynamical participation values") {
  {
    const auto [g, es] = make(Family::Barbell, 8);
    REQUIRE(dynamical_ipr(es, 7).value == Catch::Approx(0.318249314086579).margin(1e-12));
    REQUIRE(dynamical_ipr(es, 0).value == Catch::Approx(0.557515292124216).margin(1e-12));
  }
  {
    const auto [g, es] = make(Family::StarFull, 3);
    REQUIRE(dynamical_ipr(es, 0).value == Catch::Approx(0.40625).margin(1e-13));
    REQUIRE(dynamical_ipr(es, 1).value == Catch::Approx(0.339034636488340).margin(1e-12));
  }
  {
    const auto [g, es] = make(Family::StarSingle, 4);
    REQUIRE(dynamical_ipr(es, 0).value == Catch::Approx(0.235598448563099).margin(1e-12));
    REQUIRE(dynamical_ipr(es, 1).value == Catch::Approx(0.190636107381909).margin(1e-12));
    REQUIRE(dynamical_ipr(es, 2).value == Catch::Approx(0.293612381094117).margin(1e-12));
  }
}

TEST_CASE("bridge participation grows toward one half") {
  const std::vector<std::pair<int, double>> frozen{
      {16, 0.394410820}, {32, 0.442782827}, {64, 0.470137253}};
  for (auto [n, expected] : frozen) {
    const auto [g, es] = make(Family::Barbell, n);
    REQUIRE(dynamical_ipr(es, n - 1).value == Catch::Approx(expected).margin(2e-9));
  }
}

TEST_CASE("spectral overlap bookkeeping") {
  const auto [g, es] = make(Family::Barbell, 8);
  const auto start = unit_vertex_state(es.N, 7);  // first bridge
  const auto o = spectral_overlap(es, start);
  REQUIRE(o.coefficients.size() == es.N);
  REQUIRE(o.coefficients.squaredNorm() == Catch::Approx(1.0).margin(1e-12));

  // bridge vertices carry no weight in the sequential clique modes
  REQUIRE(family_weight(o, "BarbellDegenerate") == Catch::Approx(0.0).margin(1e-28));
  const double sym = family_weight(o, "BarbellSymPlus") + family_weight(o, "BarbellSymMinus");
  const double anti = family_weight(o, "BarbellAntiPlus") + family_weight(o, "BarbellAntiMinus");
  REQUIRE(sym == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(anti == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("an eigenvector start loads a single coefficient") {
  const auto [g, es] = make(Family::StarSingle, 4);
  const auto* p2 = es.space_with_family("V2_Psi2");
  REQUIRE(p2 != nullptr);
  const auto o = spectral_overlap(es, p2->basis.col(0));
  REQUIRE(family_weight(o, "V2_Psi2") == Catch::Approx(1.0).margin(1e-12));
  int nonzero = 0;
  for (int m = 0; m < o.coefficients.size(); ++m)
    if (std::abs(o.coefficients(m)) > 1e-10) ++nonzero;
  REQUIRE(nonzero == 1);
}

TEST_CASE("center start of the full-contact star only excites two modes") {
  const auto [g, es] = make(Family::StarFull, 5);
  const auto o = spectral_overlap(es, unit_vertex_state(es.N, 0));
  REQUIRE(family_weight(o, "V1_Psi1") + family_weight(o, "V1_Psi2") ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE(family_weight(o, "V1_Chi") == Catch::Approx(0.0).margin(1e-24));
  REQUIRE(family_weight(o, "V1_W") == Catch::Approx(0.0).margin(1e-24));
}

TEST_CASE("single-mode quartic sum lower-bounds the dynamical value") {
  {
    const auto [g, es] = make(Family::Barbell, 8);
    const auto start = unit_vertex_state(es.N, 7);
    REQUIRE(observation1_lower_bound(es, start) <=
            dynamical_ipr(es, start).value + 1e-10);
  }
  {
    const auto [g, es] = make(Family::StarSingle, 8);
    const auto start = unit_vertex_state(es.N, 2);  // internal clique vertex
    REQUIRE(observation1_lower_bound(es, start) <=
            dynamical_ipr(es, start).value + 1e-10);
  }
}

TEST_CASE("equality for a nondegenerate eigenstate start") {
  const auto [g, es] = make(Family::Barbell, 6);
  const auto* sym = es.space_with_family("BarbellSymPlus");
  REQUIRE(sym != nullptr);
  REQUIRE(sym->multiplicity == 1);
  const Eigen::VectorXd v = sym->basis.col(0);
  REQUIRE(dynamical_ipr(es, v).value == Catch::Approx(eigenstate_ipr(v).value).margin(1e-12));
  REQUIRE(observation1_lower_bound(es, v) ==
          Catch::Approx(eigenstate_ipr(v).value * 1.0).margin(1e-12));
}

TEST_CASE("single-mode and cross-term split reconstructs the limit") {
  for (auto [f, n, start] : {std::tuple{Family::Barbell, 8, 7},
                             std::tuple{Family::StarFull, 4, 0},
                             std::tuple{Family::StarSingle, 4, 1}}) {
    const auto [g, es] = make(f, n);
    const auto d = xyz_decomposition(es, start);
    const auto lim = limiting_distribution(es, start);
    REQUIRE(((d.x + d.y) - lim.probabilities).cwiseAbs().maxCoeff() < 1e-12);
    const double ipr = dynamical_ipr(es, start).value;
    REQUIRE(d.reconstruction == Catch::Approx(ipr).margin(1e-10));
    REQUIRE(d.term1 + d.term2 + d.term3 == Catch::Approx(ipr).margin(1e-10));
    REQUIRE(d.quartet_sum == Catch::Approx(0.5 * d.term3).margin(1e-15));
  }
}

TEST_CASE("series partial sum reaches its closed form") {
  REQUIRE(l_series_partial(100000) == Catch::Approx(kSeries).margin(1e-12));
  REQUIRE(l_series_partial(10) == Catch::Approx(kSeries).margin(1e-2));
}

TEST_CASE("class report is symmetric across equivalent vertices") {
  for (Family f : {Family::Barbell, Family::StarFull, Family::StarSingle}) {
    const auto [g, es] = make(f, 5);
    for (const auto& row : vertex_class_report(g, es)) {
      INFO(class_tag_name(row.tag));
      REQUIRE(row.representative >= 0);
      REQUIRE(row.symmetry_deviation < 1e-10);
    }
  }
}

TEST_CASE("sequential-vector completeness sums") {
  const auto [g, es] = make(Family::StarSingle, 4);
  const auto s = overlap_identity_sums(es, g, 1, 2);
  REQUIRE(s.bridge_sq_sum == Catch::Approx(0.75).margin(1e-15));
  REQUIRE(s.internal_sq_sum == Catch::Approx(2.0 / 3.0).margin(1e-15));
  REQUIRE(s.alpha_p == Catch::Approx(41.0 / 144.0).margin(1e-14));

  const auto last = overlap_identity_sums(es, g, 4, 2);
  REQUIRE(last.bridge_sq_sum == Catch::Approx(0.75).margin(1e-15));
  REQUIRE(last.alpha_p == Catch::Approx(0.5625).margin(1e-14));  // ((n-1)/n)^2

  REQUIRE_THROWS_AS(overlap_identity_sums(es, g, 0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(overlap_identity_sums(es, g, 1, 1), std::invalid_argument);
  const auto [gb, esb] = make(Family::Barbell, 4);
  REQUIRE_THROWS_AS(overlap_identity_sums(esb, gb, 1, 2), std::invalid_argument);
}

TEST_CASE("own-clique sequential-mode transition law") {
  const int n = 4;
  const auto [g, es] = make(Family::StarFull, n);
  const auto t = clique_mode_transition(es, g, 1);  // first vertex of clique 1
  for (int i = 0; i < es.N; ++i) {
    const bool same_clique = g.classes[i].clique_index == 1;
    const double expected =
        same_clique ? std::pow((i == 1 ? 1.0 : 0.0) - 1.0 / n, 2) : 0.0;
    REQUIRE(t(i) == Catch::Approx(expected).margin(1e-14));
  }
  REQUIRE_THROWS_AS(clique_mode_transition(es, g, 0), std::invalid_argument);  // center
}

TEST_CASE("grouped return probability") {
  const auto [g, es] = make(Family::Barbell, 6);
  // one group per mode family reproduces the strict limiting diagonal
  std::vector<std::vector<std::string>> fine{{"BarbellDegenerate"},
                                             {"BarbellSymPlus"},
                                             {"BarbellSymMinus"},
                                             {"BarbellAntiPlus"},
                                             {"BarbellAntiMinus"}};
  const int v = 5;  // first bridge vertex of n=6
  REQUIRE(grouped_return_probability(es, v, fine) ==
          Catch::Approx(limiting_distribution(es, v).probabilities(v)).margin(1e-13));

  // merging the symmetric and antisymmetric sectors gives exactly 1/2 on a bridge
  std::vector<std::vector<std::string>> sectors{
      {"BarbellDegenerate"},
      {"BarbellSymPlus", "BarbellSymMinus"},
      {"BarbellAntiPlus", "BarbellAntiMinus"}};
  REQUIRE(grouped_return_probability(es, v, sectors) == Catch::Approx(0.5).margin(1e-13));

  std::vector<std::vector<std::string>> missing{{"BarbellDegenerate"}};
  REQUIRE_THROWS_AS(grouped_return_probability(es, v, missing), std::invalid_argument);
}

TEST_CASE("record validation") {
  Eigen::VectorXd big = Eigen::VectorXd::Constant(4, 0.9);
  REQUIRE_THROWS_AS(eigenstate_ipr(big), std::invalid_argument);
  REQUIRE_THROWS_AS(make_ipr_record(IPRKind::Eigenstate, "x", 1.5, 4), std::domain_error);
  REQUIRE_THROWS_AS(make_ipr_record(IPRKind::Eigenstate, "x", 0.1, 4), std::domain_error);
}

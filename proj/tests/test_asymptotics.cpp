#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "ctqw/asymptotics.hpp"

using namespace ctqw;

TEST_CASE("catalog covers every summary-table row with unique ids") {
  const auto& table = asymptotic_catalog();
  std::set<std::string> ids;
  for (const auto& m : table) REQUIRE(ids.insert(m.id).second);

  // barbell rows: degenerate, symmetric, antisymmetric eigenstates; bridge and
  // clique dynamical values
  for (const char* id : {"barbell_deg_eig", "barbell_sym_eig", "barbell_anti_eig",
                         "barbell_bridge_dyn", "barbell_clique_dyn"})
    REQUIRE(ids.count(id) == 1);
  // star rows
  for (const char* id : {"v1_psi1_eig", "v1_psi2_eig", "v1_chi_eig", "v1_w_eig",
                         "v1_center_dyn", "v1_clique_dyn", "v2_bridge_dyn", "v2_internal_dyn",
                         "v2_center_dyn", "v2_u_identity", "v2_v_identity"})
    REQUIRE(ids.count(id) == 1);

  REQUIRE_THROWS_AS(find_model("no_such_model"), std::invalid_argument);
}

TEST_CASE("closed-form mode participation") {
  REQUIRE(closed_form_mode_ipr(1) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(closed_form_mode_ipr(2) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(closed_form_mode_ipr(3) == Catch::Approx(7.0 / 12.0).margin(1e-15));
  REQUIRE(closed_form_mode_ipr(1000) == Catch::Approx(1.0).margin(2e-3));
}

TEST_CASE("prediction examples") {
  const auto center = predict("v1_center_dyn", 3);
  REQUIRE(center.has_value);
  REQUIRE(center.value == Catch::Approx(0.40625).margin(1e-15));

  const auto bridge = predict("barbell_bridge_dyn", 10);
  REQUIRE(bridge.has_value);
  REQUIRE(bridge.value == Catch::Approx(0.3).margin(1e-15));

  const auto order_only = predict("v2_center_dyn", 8);
  REQUIRE_FALSE(order_only.has_value);
  REQUIRE(order_only.order_exponent == -6.0);

  REQUIRE_THROWS_AS(predict("no_such_model", 4), std::invalid_argument);
}

TEST_CASE("exact models match the computed quantities to machine precision") {
  const std::vector<std::pair<std::string, int>> cases{
      {"barbell_deg_eig", 6}, {"barbell_deg_eig", 11}, {"v1_psi1_eig", 4},
      {"v1_psi2_eig", 4},     {"v1_w_eig", 4},         {"v1_center_dyn", 3},
      {"v1_center_dyn", 5},   {"v2_u_identity", 5},    {"v2_v_identity", 5}};
  for (const auto& [id, n] : cases) {
    INFO(id << " n=" << n);
    REQUIRE(find_model(id).kind == AsymptoticModel::Kind::Exact);
    const double computed = compute_model_value(id, n);
    const double predicted = predict(id, n).value;
    REQUIRE(computed == Catch::Approx(predicted).margin(1e-12));
  }
}

TEST_CASE("leading-order models close in on their formulas") {
  // symmetric barbell eigenstate: 1/(2n) with O(1/n^2) corrections
  REQUIRE(std::abs(compute_model_value("barbell_sym_eig", 16) - 1.0 / 32.0) < 1.0 / 256.0);
  // clique-vertex box of the full-contact star carries an O(1/n^2) tail
  const double r4 = std::abs(compute_model_value("v1_clique_dyn", 4) -
                             predict("v1_clique_dyn", 4).value);
  const double r8 = std::abs(compute_model_value("v1_clique_dyn", 8) -
                             predict("v1_clique_dyn", 8).value);
  REQUIRE(r8 < r4);
  REQUIRE(r8 < 4.0 / 64.0);
}

TEST_CASE("log-log slope fitting") {
  {
    std::vector<std::pair<long, double>> pts;
    for (long n : {8, 16, 32}) pts.emplace_back(n, 5.0 / std::pow(double(n), 6.0));
    const auto fit = scaling_fit(pts);
    REQUIRE(fit.slope == Catch::Approx(-6.0).margin(1e-9));
    REQUIRE(fit.max_abs_residual < 1e-9);
  }
  {
    std::vector<std::pair<long, double>> pts;
    for (long n : {8, 16, 32}) pts.emplace_back(n, 1.0 / n + 1.0 / (double(n) * n));
    const auto fit = scaling_fit(pts);
    REQUIRE(fit.slope > -1.3);
    REQUIRE(fit.slope < -0.9);
  }
  REQUIRE_THROWS_AS(scaling_fit({{8, 1.0}, {16, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(scaling_fit({{8, 1.0}, {16, 0.5}, {32, -0.25}}), std::invalid_argument);
}

TEST_CASE("frozen spot value routed through the full pipeline") {
  REQUIRE(compute_model_value("barbell_bridge_dyn", 8) ==
          Catch::Approx(0.318249314086579).margin(1e-12));
  REQUIRE_THROWS_AS(compute_model_value("no_such_model", 8), std::invalid_argument);
}

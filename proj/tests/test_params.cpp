#include "indep/params.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <doctest.h>

#include <cmath>

using namespace indep;

namespace {
// sum 1/(j (j + a)) = (digamma(1 + a) + euler gamma) / a
double mu_digamma(std::uint32_t k) {
  const double a = 1.0 / static_cast<double>(k - 1);
  return (boost::math::digamma(1.0 + a) + 0.57721566490153286061) / a;
}
}  // namespace

TEST_SUITE("params") {
  TEST_CASE("series against the digamma closed form") {
    for (std::uint32_t k : {2u, 3u, 5u, 6u, 10u, 40u}) CHECK(mu_k(k) == doctest::Approx(mu_digamma(k)).epsilon(1e-11));
    CHECK(mu_k(5) == doctest::Approx(1.39904852610106981).epsilon(1e-12));
    CHECK(std::abs(mu_k(1000000) - M_PI * M_PI / 6) < 1e-4);
    CHECK(std::abs(mu_k(5, 1e-3) - mu_k(5, 1e-12)) <= 1e-3);
    CHECK_THROWS(mu_k(1));
    CHECK_THROWS(mu_k(5, 0.0));
  }

  TEST_CASE("runtime bases") {
    CHECK(theta_k(3) == doctest::Approx(1.5366).epsilon(0.0001 / 1.5366));
    CHECK(theta_k(4) == doctest::Approx(1.6155).epsilon(0.0001 / 1.6155));
    CHECK(std::exp2(p_k(3)) == doctest::Approx(1.5298).epsilon(0.0001 / 1.5298));
    CHECK(std::exp2(p_k(4)) == doctest::Approx(1.6122).epsilon(0.0001 / 1.6122));
    CHECK(theta_k(5) == doctest::Approx(1.67118480654861).epsilon(1e-9));
    CHECK(std::exp2(p_k(5)) == doctest::Approx(1.66984243756346).epsilon(1e-9));
  }

  TEST_CASE("alpha below theta, beta increasing") {
    for (std::uint32_t k = 3; k <= 12; ++k) {
      CHECK(default_alpha(k) <= theta_k(k));
      CHECK(beta_k(k + 1) > beta_k(k));
    }
    CHECK(default_alpha(3) < theta_k(3));
    CHECK(default_alpha(4) < theta_k(4));
    CHECK(default_alpha(2) == 1.2377);
  }

  TEST_CASE("ell per strategy") {
    CHECK(params_for(3, 15, Strategy::Thurley).ell == 53);
    CHECK(params_for(3, 15, Strategy::PrunedTree).ell == 56);
    CHECK(params_for(3, 15, Strategy::IndepStructs).ell == 45);
    CHECK(params_for(3, 15, Strategy::IndepClauses).ell == 46);
    CHECK(params_for(3, 20, Strategy::IndepStructs).ell == 158);
    CHECK(params_for(4, 14, Strategy::Thurley).ell == 20);
    CHECK(params_for(4, 14, Strategy::PrunedTree).ell == 21);
    CHECK(params_for(3, 20, Strategy::IndepClauses).m_hat == 4);
    CHECK(params_for(4, 20, Strategy::IndepClauses).m_hat == 2);
    CHECK(params_for(3, 10, Strategy::Thurley).time_base == doctest::Approx(1.5366).epsilon(1e-4));
  }

  TEST_CASE("unsupported combinations") {
    CHECK_THROWS_AS(params_for(5, 20, Strategy::IndepClauses), std::invalid_argument);
    CHECK_THROWS_AS(params_for(1, 20, Strategy::Thurley), std::invalid_argument);
    const auto p = params_for(5, 20, Strategy::IndepStructs);
    CHECK(p.alpha(5) == doctest::Approx(theta_k(5)));
    REQUIRE(p.mu_k);
    CHECK(*p.mu_k == doctest::Approx(mu_k(5)));
  }

  TEST_CASE("strategy names") {
    for (auto s : {Strategy::BruteForce, Strategy::Thurley, Strategy::PrunedTree, Strategy::IndepClauses,
                   Strategy::IndepStructs})
      CHECK(parse_strategy(to_string(s)) == s);
    CHECK_FALSE(parse_strategy("fast"));
  }
}

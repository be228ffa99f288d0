#include <gtest/gtest.h>

#include <chrono>

#include "oprange/towers.hpp"
#include "support.hpp"

using namespace oprange;
using namespace oprange::testing;

TEST(Generator, Families) {
  EXPECT_EQ(Generator::reciprocal().at(4), q(1, 4));
  EXPECT_EQ(Generator::power(-2).at(3), q(1, 9));
  EXPECT_EQ(Generator::power(3).at(2), q(8));
  EXPECT_EQ(Generator::geometric(q(1, 2)).at(1), q(1, 2));
  EXPECT_EQ(Generator::geometric(q(1, 2)).at(4), q(1, 16));
  EXPECT_EQ(Generator::constant(q(5)).at(100), q(5));
  const auto l = Generator::list({q(1), q(0), q(2)});
  EXPECT_EQ(l.at(2), q(0));
  EXPECT_EQ(l.at(3), q(2));
  EXPECT_THROW(l.at(4), Error);
  for (auto f : {Generator::Family::Reciprocal, Generator::Family::Power, Generator::Family::Geometric,
                 Generator::Family::Constant, Generator::Family::List})
    EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_THROW(parse_family("harmonic"), Error);
}

TEST(Tower, ReciprocalUnit) {
  const DiagonalTower t{Generator::reciprocal(), Generator::constant(q(1)), 64};
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_tower(t);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(r.dims.size(), 64u);
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    // beta_k / alpha_k = k, so the maximum over k <= n is n.
    ASSERT_TRUE(r.constants[i].has_value());
    EXPECT_EQ(*r.constants[i], Rational(static_cast<long>(r.dims[i])));
    EXPECT_TRUE(r.dominated[i]);
    EXPECT_TRUE(r.regular[i]);
  }
  EXPECT_TRUE(r.cross_validated);
  EXPECT_EQ(r.verdict, TowerVerdict::AlmostDominatedNotDominated);
  EXPECT_EQ(r.growth_fit.model, "polynomial");
  EXPECT_NEAR(r.growth_fit.parameter, 1.0, 1e-6);
  EXPECT_LT(secs, 5.0);
}

TEST(Tower, UnitUnit) {
  const auto r = run_tower({Generator::constant(q(1)), Generator::constant(q(1)), 20});
  for (const auto& c : r.constants) EXPECT_EQ(c, std::optional<Rational>(q(1)));
  EXPECT_EQ(r.verdict, TowerVerdict::DominatedLimit);
  EXPECT_EQ(r.growth_fit.model, "constant");
}

TEST(Tower, ReciprocalVsSquare) {
  const auto r = run_tower({Generator::reciprocal(), Generator::power(-2), 30});
  for (const auto& c : r.constants) EXPECT_EQ(c, std::optional<Rational>(q(1)));
  EXPECT_EQ(r.verdict, TowerVerdict::DominatedLimit);
}

TEST(Tower, GeometricGrowth) {
  // beta/alpha = 2^k.
  const auto r = run_tower({Generator::geometric(q(1, 2)), Generator::constant(q(1)), 16});
  for (std::size_t i = 0; i < r.dims.size(); ++i)
    EXPECT_EQ(*r.constants[i], Rational(mpz_class(1) << static_cast<unsigned>(r.dims[i])));
  EXPECT_EQ(r.verdict, TowerVerdict::AlmostDominatedNotDominated);
  EXPECT_EQ(r.growth_fit.model, "exponential");
  EXPECT_NEAR(r.growth_fit.parameter, std::log(2.0), 1e-6);
}

TEST(Tower, SingularTrend) {
  // alpha and beta supported on alternating coordinates.
  const auto r = run_tower({Generator::list({q(1), q(0), q(1), q(0), q(1), q(0)}),
                            Generator::list({q(0), q(1), q(0), q(1), q(0), q(1)}), 6});
  EXPECT_TRUE(r.dominated[0]);
  for (std::size_t i = 1; i < r.dims.size(); ++i) {
    EXPECT_FALSE(r.constants[i].has_value());
    EXPECT_FALSE(r.dominated[i]);
    EXPECT_FALSE(r.regular[i]);
    EXPECT_TRUE(r.ranges_disjoint[i]);
  }
  EXPECT_EQ(r.verdict, TowerVerdict::SingularTrend);
}

TEST(Tower, MonotoneConstantsOnRandomLists) {
  std::mt19937 rng(91);
  std::uniform_int_distribution<int> num(0, 4), den(1, 3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> al, be;
    for (int k = 0; k < 8; ++k) {
      al.push_back(q(num(rng), den(rng)));
      be.push_back(q(num(rng), den(rng)));
    }
    const auto r = run_tower({Generator::list(al), Generator::list(be), 8});
    EXPECT_TRUE(r.cross_validated);
    // Independent oracle: running max of |beta/alpha| with infinity once alpha_k = 0 != beta_k.
    std::optional<Rational> running = Rational(0);
    for (std::size_t n = 0; n < 8; ++n) {
      if (running) {
        if (sgn(al[n]) == 0) {
          if (sgn(be[n]) != 0) running.reset();
        } else {
          running = std::max(*running, Rational(abs(be[n] / al[n])));
        }
      }
      EXPECT_EQ(r.constants[n], running) << "n=" << n + 1;
      EXPECT_EQ(r.dominated[n], running.has_value());
    }
  }
}

TEST(FitGrowth, Models) {
  std::vector<std::size_t> dims;
  std::vector<double> poly, logm, flat;
  for (std::size_t n = 1; n <= 40; ++n) {
    dims.push_back(n);
    poly.push_back(std::pow(static_cast<double>(n), 2.0));
    logm.push_back(1.0 + std::log(static_cast<double>(n)));
    flat.push_back(3.0);
  }
  const auto p = fit_growth(dims, poly);
  EXPECT_EQ(p.model, "polynomial");
  EXPECT_NEAR(p.parameter, 2.0, 1e-9);
  EXPECT_EQ(fit_growth(dims, flat).model, "constant");
  EXPECT_EQ(fit_growth(dims, logm).model, "logarithmic");
}

TEST(AdWitness, SingleWitness) {
  const MQ a{{1, 0}, {0, 2}};
  const MQ b{{1, 1}};
  const auto w = validate_ad_witness(a, b, {b});
  EXPECT_TRUE(w.passed);
  EXPECT_TRUE(w.dominated[0]);
  EXPECT_TRUE(w.monotone);
  EXPECT_TRUE(w.bounded_by_b);
  EXPECT_TRUE(w.gap_zero);
  EXPECT_EQ(w.gap_norm, 0.0);
}

TEST(AdWitness, TruncationFlag) {
  std::mt19937 rng(93);
  const MQ a = MQ::identity(4);
  const MQ b = random_rational(rng, 3, 4, 0.0);
  // B_n = P_n B with P_n projecting onto the first n coordinates of K, so
  // B_n* B_n = B* P_n B increases with n.
  std::vector<MQ> ws;
  std::vector<double> gaps;
  for (std::size_t n = 1; n <= 3; ++n) {
    MQ p(3, 3);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = q(1);
    ws.push_back(p * b);
    gaps.push_back(validate_ad_witness(a, b, ws).gap_norm);
  }
  const auto w = validate_ad_witness(a, b, ws);
  EXPECT_TRUE(w.monotone);
  EXPECT_TRUE(w.bounded_by_b);
  EXPECT_TRUE(w.gap_zero);
  EXPECT_TRUE(w.passed);
  for (std::size_t i = 1; i < gaps.size(); ++i) EXPECT_LE(gaps[i], gaps[i - 1] + 1e-12);
  EXPECT_EQ(gaps.back(), 0.0);
}

TEST(AdWitness, NonMonotone) {
  const MQ a = MQ::identity(2);
  const MQ b = MQ::identity(2);
  const auto w = validate_ad_witness(a, b, {b, MQ::diagonal({q(1), q(0)}), b});
  EXPECT_FALSE(w.monotone);
  ASSERT_TRUE(w.first_violation.has_value());
  EXPECT_EQ(*w.first_violation, 0u);
  EXPECT_FALSE(w.passed);
}

TEST(AdWitness, FloatAndErrors) {
  const MD a = MD::identity(2);
  const MD b = MD::diagonal({0.5, 1.0});
  const auto w = validate_ad_witness(a, b, {MD::diagonal({0.5, 0.0}), b});
  EXPECT_TRUE(w.passed);
  EXPECT_THROW(validate_ad_witness(a, b, {MD(2, 3)}), Error);
  EXPECT_THROW(validate_ad_witness(a, MD(2, 3), {}), Error);
}

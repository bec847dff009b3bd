#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vangle/errors.hpp"
#include "vangle/specfun.hpp"

using namespace vangle;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("elliptic integrals at reference points") {
  const EllipticPair at0 = elliptic(0.0);
  CHECK(at0.k_value == Approx(oracle::kPi / 2).epsilon(1e-15));
  CHECK(at0.e_value == Approx(oracle::kPi / 2).epsilon(1e-15));

  const double r = 1.0 / std::sqrt(2.0);
  CHECK(rel(elliptic_k(r), 1.8540746773013719) < 1e-13);
  CHECK(rel(elliptic_k(r), oracle::ellk(r)) < 1e-13);
}

TEST_CASE("elliptic integrals agree with Boost and quadrature") {
  for (int i = 1; i <= 200; ++i) {
    const double r = i / 201.0;
    const EllipticPair p = elliptic(r);
    CHECK(rel(p.k_value, oracle::ellk_quadrature(r)) <= 1e-10);
    CHECK(rel(p.k_value, oracle::ellk(r)) <= 1e-13);
    CHECK(rel(p.e_value, oracle::elle(r)) <= 1e-13);
  }
}

TEST_CASE("2E - r'^2 K tends to 2 at r = 1") {
  for (double rc : {1e-4, 1e-8, 1e-12}) {
    const Modulus m = Modulus::from_complement(rc);
    const EllipticPair p = elliptic(m);
    CHECK(std::abs(2.0 * p.e_value - rc * rc * p.k_value - 2.0) < 10 * rc);
  }
}

TEST_CASE("elliptic rejects moduli outside [0, 1)") {
  CHECK_THROWS_AS(elliptic(-0.1), DomainError);
  CHECK_THROWS_AS(elliptic(1.5), DomainError);
}

TEST_CASE("agm") {
  CHECK(agm(1.0, 1.0) == 1.0);
  CHECK(agm(1.0, std::sqrt(2.0)) == Approx(1.1981402347355922).epsilon(1e-15));
}

TEST_CASE("Grotzsch modulus") {
  CHECK(grotzsch_mu(1.0 / std::sqrt(2.0)) == Approx(oracle::kPi / 2).epsilon(1e-14));
  CHECK(rel(grotzsch_mu(0.5), 2.0094593770052852) < 1e-13);
  CHECK(grotzsch_mu(0.3) > grotzsch_mu(0.7));
  CHECK_THROWS_AS(grotzsch_mu(-0.2), DomainError);
  CHECK_THROWS_AS(grotzsch_mu(1.2), DomainError);

  double prev = INFINITY;
  for (int i = 1; i < 1000; ++i) {
    const double r = i / 1000.0;
    const double m = grotzsch_mu(r);
    CHECK(rel(m, oracle::mu(r)) < 1e-12);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("inverse Grotzsch modulus") {
  CHECK(grotzsch_mu_inv(oracle::kPi / 2) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(grotzsch_mu_inv(grotzsch_mu(0.5)) - 0.5) <= 1e-10);
  CHECK(rel(grotzsch_mu_inv(3.0), 0.19719072657000561) < 1e-12);
  CHECK(rel(grotzsch_mu_inv(3.0), oracle::mu_inv(3.0)) < 1e-12);
  CHECK_THROWS_AS(grotzsch_mu_inv(0.0), DomainError);
  CHECK_THROWS_AS(grotzsch_mu_inv(-1.0), DomainError);

  for (double m : {0.05, 0.3, 1.0, 1.5, 2.5, 5.0, 10.0, 20.0}) {
    const Modulus r = grotzsch_mu_inv_modulus(m).modulus;
    CHECK(std::abs(grotzsch_mu(r) - m) <= 1e-12 * std::max(1.0, m));
  }
}

TEST_CASE("phi_K values and limits") {
  CHECK(std::abs(phi(1.0, 0.3) - 0.3) <= 1e-10);
  CHECK(rel(phi(2.0, 0.5), 0.94280904158206337) < 1e-12);
  CHECK(rel(phi(2.0, 0.5), oracle::phi(2.0, 0.5)) < 1e-12);
  CHECK(std::abs(phi(2.0, 1e-6) / std::sqrt(1e-6) - 2.0) < 1e-3);
  for (int i = 1; i < 1000; ++i) CHECK(std::abs(phi(1.0, i / 1000.0) - i / 1000.0) <= 1e-10);
}

TEST_CASE("phi_K ordering, monotonicity and concavity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double k : {1.25, 2.0, 4.0}) {
    double prev = 0.0, prev_ratio = INFINITY;
    for (int i = 1; i < 1000; ++i) {
      const double r = i / 1000.0;
      const double s = phi(k, r);
      CHECK(s > r);
      CHECK(phi(1.0 / k, r) < r);
      CHECK(s > prev);
      CHECK(s / r <= prev_ratio + 1e-12);
      prev = s;
      prev_ratio = s / r;
    }
    for (int i = 0; i < 2000; ++i) {
      double r1 = u(rng), r2 = u(rng);
      if (r1 > r2) std::swap(r1, r2);
      if (r1 <= 0.0 || r2 >= 1.0) continue;
      const double lam = u(rng);
      const double mid = lam * r1 + (1 - lam) * r2;
      CHECK(phi(k, mid) >= lam * phi(k, r1) + (1 - lam) * phi(k, r2) - 1e-9);
    }
  }
}

TEST_CASE("phi_K partial derivatives") {
  CHECK(phi_partials(1.0, 0.4).ds_dr == Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 20; ++i) {
    const double k = 1.1 + 0.2 * i;
    for (int j = 0; j < 20; ++j) {
      const double r = 0.05 + 0.045 * j;
      const PhiPartials p = phi_partials(k, r);
      // Differences of s' rather than s: s is close to 1 for large K and r.
      const double h = 1e-6;
      const auto sc = [](double kk, double rr) {
        return phi_modulus(kk, Modulus::from_r(rr)).rc;
      };
      const Modulus s = phi_modulus(k, Modulus::from_r(r));
      const double fd_r = -(s.rc / s.r) * (sc(k, r + h) - sc(k, r - h)) / (2 * h);
      const double fd_k = -(s.rc / s.r) * (sc(k + h, r) - sc(k - h, r)) / (2 * h);
      CHECK(rel(p.ds_dr, fd_r) < 1e-5);
      CHECK(rel(p.ds_dk, fd_k) < 1e-5);
      CHECK(p.ds_dk > 0.0);
    }
  }
}

TEST_CASE("arth from a modulus pair") {
  CHECK(arth(Modulus::from_r(0.5)) == Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK(arth(Modulus::from_r(1e-10)) == Approx(1e-10).epsilon(1e-15));
  CHECK(std::isfinite(arth(Modulus::from_complement(1e-300))));
}

TEST_CASE("lemma functions: stated limits") {
  const FunctionParams none{};
  CHECK(lemma_fn(LemmaFunction::Vs1F5, none, 1e-7) == Approx(1.0).epsilon(1e-6));
  CHECK(lemma_fn(LemmaFunction::Vs1F5, none, Modulus::from_complement(1e-9)) ==
        Approx(2.0 / oracle::kPi).epsilon(1e-6));
  CHECK(std::abs(lemma_fn(LemmaFunction::Vs3G, none, 1.0) - 0.744915) < 1e-6);
  CHECK(std::abs(vs3_r0() - std::sin(1.0)) < 1e-15);
  CHECK(std::abs(lemma_fn(LemmaFunction::Lerho1F3, {std::nullopt, 1.0, 0.5}, 1e-7) - 4.0) <
        1e-6);
  CHECK(lemma_fn(LemmaFunction::Vs1F6, none, Modulus::from_complement(1e-9)) ==
        Approx(2.0).epsilon(1e-6));
  CHECK(lemma_fn(LemmaFunction::Vs1F1, {2.0, {}, {}}, 1e-8) == Approx(2.0).epsilon(1e-3));
}

TEST_CASE("lemma functions: parameters and domains") {
  CHECK_THROWS_AS(lemma_fn(LemmaFunction::Vs1F1, {}, 0.5), UsageError);
  CHECK_THROWS_AS(lemma_fn(LemmaFunction::Lerho1F2, {}, 0.1), UsageError);
  CHECK_THROWS_AS(lemma_fn(LemmaFunction::Vs1F1, {2.0, {}, {}}, 1.5), DomainError);
  CHECK_THROWS_AS(lemma_fn(LemmaFunction::Lerho1F3, {std::nullopt, 1.0, 0.5}, 0.2),
                  DomainError);
  const Interval d = lemma_fn_domain(LemmaFunction::Lerho1F2, {std::nullopt, 2.0, std::nullopt});
  CHECK(d.hi == Approx(oracle::kPi / 16));
}

TEST_CASE("lemma function names round trip") {
  for (const char* name : {"VS1_F1", "VS1_F6", "VS2_F2", "VS3_F", "VS3_G", "BV_G", "LERHO1_F1",
                           "LERHO1_F3", "RHO_STAR_RATIO"}) {
    const auto id = lemma_function_from_string(name);
    REQUIRE(id.has_value());
    CHECK(to_string(*id) == name);
  }
  CHECK_FALSE(lemma_function_from_string("nope").has_value());
}

TEST_CASE("governing ratio of the Schwarz bound against the oracle") {
  for (double k : {1.25, 2.0, 4.0}) {
    for (double r : {0.1, 0.5, 0.9}) {
      const double s = oracle::phi(k, r);
      const double a = std::atan(r / std::sqrt(1 - r * r));
      const double expect =
          2 * std::atan(s / std::sqrt(1 - s * s)) / std::max(a, std::pow(a, 1.0 / k));
      CHECK(rel(lemma_fn(LemmaFunction::RhoStarRatio, {k, {}, {}}, r), expect) < 1e-10);
    }
  }
}

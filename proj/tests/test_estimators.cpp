// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <Eigen/QR>

#include "covsel/errors.hpp"
#include "covsel/estimators.hpp"
#include "covsel/scenario.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace covsel;
using namespace covsel::testing;

TEST_CASE("covariance estimates on a scaled identity") {
  const Index n = 4, k = 4;
  const CMatrix z = std::sqrt(static_cast<double>(k)) * CMatrix::Identity(n, k);
  for (Hypothesis h : kHypotheses) {
    CHECK(max_abs(estimate_covariance(h, z) - CMatrix::Identity(n, n)) <= 1e-15);
  }
}

TEST_CASE("covariance estimates carry their structure exactly") {
  Rng rng(31);
  for (Index n : {3, 4, 7}) {
    const CMatrix z = rng.complex_normal(n, 3 * n);
    const CMatrix m1 = estimate_covariance(Hypothesis::H1, z);
    const CMatrix m2 = estimate_covariance(Hypothesis::H2, z);
    const CMatrix m3 = estimate_covariance(Hypothesis::H3, z);
    const CMatrix m4 = estimate_covariance(Hypothesis::H4, z);
    CHECK(max_abs(m1 - m1.adjoint()) == 0.0);
    CHECK(flip_conj(m3) == m3);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) CHECK(m2(i, k) == cplx(m1(i, k).real(), 0.0));
    CHECK(structure_residual(Hypothesis::H4, m4) == 0.0);
    CHECK(structure_residual(Hypothesis::H4, m1) > 0.0);
    // Symmetrizations commute.
    CHECK(m4 == project(Hypothesis::H4, m1));
    CHECK(m4 == CMatrix(project(Hypothesis::H3, m1).real().cast<cplx>()));
    for (Hypothesis h : kHypotheses) CHECK_NOTHROW(CPdFactor(estimate_covariance(h, z)));
  }
}

TEST_CASE("covariance estimate with too few snapshots is singular") {
  Rng rng(32);
  const CMatrix z = rng.complex_normal(5, 3);
  CHECK_THROWS_AS(CPdFactor(estimate_covariance(Hypothesis::H1, z)), NotPositiveDefinite);
}

TEST_CASE("alpha estimate: whitened matched filter and exact signal") {
  Rng rng(33);
  const Index n = 5;
  const CVector v = random_unit(rng, n);
  const CVector z = rng.complex_normal(n, 1);
  const cplx a = estimate_alpha(Hypothesis::H1, CMatrix::Identity(n, n), z, v);
  CHECK(std::abs(a - v.dot(z)) <= 1e-14);

  const cplx a0(1.5, -0.7);
  const CMatrix x = invert_pd(random_pd(rng, n));
  CHECK(std::abs(estimate_alpha(Hypothesis::H1, x, CVector(a0 * v), v) - a0) <= 1e-13);

  // Structured cases with a persymmetric steering vector.
  const CVector vp = random_persymmetric_unit(rng, n);
  for (Hypothesis h : kHypotheses) {
    const CMatrix xs = invert_pd(random_structured(rng, h, n));
    CHECK(std::abs(estimate_alpha(h, xs, CVector(a0 * vp), vp) - a0) <= 1e-12);
  }
}

TEST_CASE("alpha estimate under H4 matches a least-squares oracle") {
  Rng rng(34);
  for (Index n : {5, 13}) {
    for (int t = 0; t < 10; ++t) {
      const CVector v = random_persymmetric_unit(rng, n);
      const CVector z = rng.complex_normal(n, 1);
      // min over real (a, b) of |z - (a + j b) v|^2 as a 2-column real problem.
      RMatrix design(2 * n, 2);
      RVector rhs(2 * n);
      const CVector jv = cplx(0, 1) * v;
      design << v.real(), jv.real(), v.imag(), jv.imag();
      rhs << z.real(), z.imag();
      const Eigen::Vector2d ab = design.colPivHouseholderQr().solve(rhs);
      const cplx a = estimate_alpha(Hypothesis::H4, CMatrix::Identity(n, n), z, v);
      CHECK(std::abs(a.real() - ab(0)) <= 1e-12);
      CHECK(std::abs(a.imag() - ab(1)) <= 1e-12);
    }
  }
}

TEST_CASE("alpha estimate phase equivariance under H1") {
  Rng rng(35);
  const Index n = 6;
  const CVector v = random_unit(rng, n);
  const CVector z = rng.complex_normal(n, 1);
  const CMatrix x = invert_pd(random_pd(rng, n));
  const double phi = 0.83;
  const cplx rot = std::polar(1.0, phi);
  const cplx a = estimate_alpha(Hypothesis::H1, x, z, v);
  const cplx b = estimate_alpha(Hypothesis::H1, x, z, CVector(v * rot));
  CHECK(std::abs(b - a * std::conj(rot)) <= 1e-13);
}

TEST_CASE("degenerate steering") {
  const CVector zero = CVector::Zero(3);
  const CVector z = CVector::Ones(3);
  for (Hypothesis h : kHypotheses) {
    CHECK_THROWS_AS(estimate_alpha(h, CMatrix::Identity(3, 3), z, zero), DegenerateSteering);
  }
}

TEST_CASE("dataset validation names the field") {
  Rng rng(36);
  Dataset d = random_dataset(rng, 4, 8);
  CHECK_NOTHROW(d.validate(Approach::A));
  Dataset no_v = d;
  no_v.steering.reset();
  CHECK_NOTHROW(no_v.validate(Approach::B));
  try {
    no_v.validate(Approach::A);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("steering") != std::string::npos);
  }
  Dataset no_z = d;
  no_z.cut.reset();
  CHECK_THROWS_WITH_AS(no_z.validate(Approach::A), doctest::Contains("cut"), InvalidArgument);
  Dataset few = d;
  few.secondary = rng.complex_normal(4, 4);
  CHECK_THROWS_AS(few.validate(Approach::B), InvalidArgument);
  Dataset unnormed = d;
  *unnormed.steering *= 2.0;
  CHECK_THROWS_WITH_AS(unnormed.validate(Approach::A), doctest::Contains("steering"),
                       InvalidArgument);
}

TEST_CASE("estimate_all") {
  Rng rng(37);
  Dataset d;
  d.secondary = rng.complex_normal(2, 200);
  d.cut = CVector(rng.complex_normal(2, 1));
  d.steering = random_unit(rng, 2);
  const auto b = estimate_all(d, Approach::B);
  for (const auto& e : b) {
    CHECK_FALSE(e.alpha_hat.has_value());
    CHECK((e.M_hat - CMatrix::Identity(2, 2)).norm() <= 0.2);
    CHECK(max_abs(e.M_hat * e.X_hat - CMatrix::Identity(2, 2)) <= 1e-12);
    CHECK(e.logdet == doctest::Approx(logdet_pd(e.M_hat)).epsilon(1e-12));
  }
  const auto a = estimate_all(d, Approach::A);
  for (const auto& e : a) CHECK(e.alpha_hat.has_value());
  for (Hypothesis h : {Hypothesis::H2, Hypothesis::H4}) {
    CHECK(a[index_of(h)].X_hat.imag().norm() == 0.0);
  }
}

TEST_CASE("estimates under an H4 truth") {
  const ScenarioConfig cfg = ScenarioConfig::study(StudyCase::Case1);
  Rng rng(38);
  const TruthInstance t = truth_instance(Hypothesis::H4, cfg, rng);
  const Dataset d = sample_dataset(t, cfg, 30, rng);
  const auto est = estimate_all(d, Approach::A);
  CHECK(structure_residual(Hypothesis::H4, est[3].M_hat) == 0.0);
  CHECK(structure_residual(Hypothesis::H4, est[0].M_hat) > 0.0);
}

TEST_CASE("estimation error shrinks with K") {
  const Index n = 13;
  for (Hypothesis h : kHypotheses) {
    std::vector<double> small, large;
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng = Rng::stream(39, {static_cast<std::uint64_t>(index_of(h)), s});
      const CMatrix m = random_structured(rng, h, n);
      const CMatrix root = CPdFactor(m).lower();
      const double scale = m.norm();
      const CMatrix z2 = root * rng.complex_normal(n, 2 * n);
      const CMatrix z10 = root * rng.complex_normal(n, 10 * n);
      small.push_back((estimate_covariance(h, z2) - m).norm() / scale);
      large.push_back((estimate_covariance(h, z10) - m).norm() / scale);
    }
    auto median = [](std::vector<double> x) {
      std::nth_element(x.begin(), x.begin() + 10, x.end());
      return x[10];
    };
    CAPTURE(index_of(h));
    CHECK(median(large) <= 0.5 * median(small));
  }
}

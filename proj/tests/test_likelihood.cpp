// SPDX-License-Identifier: Apache-2.0
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "covsel/errors.hpp"
#include "covsel/likelihood.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace covsel;
using namespace covsel::testing;

namespace {

const double kLogPi = std::log(std::numbers::pi);

// log of the circular complex Gaussian density, evaluated through LU.
double log_density(const CMatrix& m, const CVector& x) {
  const Eigen::PartialPivLU<CMatrix> lu(m);
  const double logdet = std::log(std::abs(lu.determinant()));
  const double quad = x.dot(lu.solve(x)).real();
  return -static_cast<double>(x.size()) * kLogPi - logdet - quad;
}

struct Point {
  StructureModel model;
  RVector theta;
  cplx alpha;
  Dataset data;
};

Point random_point(Rng& rng, Hypothesis h, Index n, Index k) {
  StructureModel model(h, n);
  const RVector theta = model.encode(random_structured(rng, h, n));
  const cplx alpha = rng.complex_normal();
  return {model, theta, alpha, random_dataset(rng, n, k)};
}

CMatrix sample_matrix(const Dataset& d) { return d.secondary * d.secondary.adjoint(); }

// Analytic gradient of loglik_full (A) or loglik_secondary (B) over p.
RVector full_gradient(const Point& pt, const RVector& p, Approach approach) {
  const Index m = pt.model.params();
  const CovariancePoint at = CovariancePoint::from_matrix(pt.model.decode(p.head(m)));
  const RVector none = grad_theta(pt.model, at, CMatrix::Zero(pt.model.dim(), pt.model.dim()));
  const double k = static_cast<double>(pt.data.K());
  if (approach == Approach::B) {
    return grad_theta(pt.model, at, sample_matrix(pt.data)) + (k - 1.0) * none;
  }
  const cplx alpha(p(m), p(m + 1));
  const CVector r = *pt.data.cut - alpha * *pt.data.steering;
  RVector g(m + 2);
  g.head(m) = grad_theta(pt.model, at, CMatrix(sample_matrix(pt.data) + r * r.adjoint())) + k * none;
  g.tail(2) = grad_alpha(at, alpha, *pt.data.cut, *pt.data.steering);
  return g;
}

}  // namespace

TEST_CASE("loglik_cut closed forms") {
  Rng rng(41);
  const Index n = 4;
  const CovariancePoint id = CovariancePoint::from_matrix(CMatrix::Identity(n, n));
  const CVector v = random_unit(rng, n);
  CHECK(loglik_cut(id, 0.0, CVector::Zero(n), v) == doctest::Approx(-n * kLogPi));
  const cplx a(0.4, 2.0);
  CHECK(loglik_cut(id, a, CVector(a * v), v) == doctest::Approx(-n * kLogPi).epsilon(1e-14));
}

TEST_CASE("log-likelihoods agree with explicit densities") {
  Rng rng(42);
  for (Index n : {3, 5}) {
    const CMatrix m = random_pd(rng, n);
    const CovariancePoint at = CovariancePoint::from_matrix(m);
    const Dataset d = random_dataset(rng, n, 7);
    const cplx a = rng.complex_normal();
    const CVector r = *d.cut - a * *d.steering;
    CHECK(loglik_cut(at, a, *d.cut, *d.steering) == doctest::Approx(log_density(m, r)).epsilon(1e-12));
    double prod = 0.0;
    for (Index k = 0; k < d.K(); ++k) {
      prod += log_density(m, d.secondary.col(k));
      CHECK(loglik_snapshot(at, d.secondary.col(k)) ==
            doctest::Approx(log_density(m, d.secondary.col(k))).epsilon(1e-12));
    }
    CHECK(loglik_secondary(at, d.secondary) == doctest::Approx(prod).epsilon(1e-12));
    CHECK(loglik_full(at, a, *d.cut, d.secondary, *d.steering) ==
          doctest::Approx(prod + log_density(m, r)).epsilon(1e-12));
    CHECK(loglik_full(at, a, *d.cut, d.secondary, *d.steering) ==
          loglik_cut(at, a, *d.cut, *d.steering) + loglik_secondary(at, d.secondary));
  }
}

TEST_CASE("log-likelihoods at the identity") {
  Rng rng(43);
  const Index n = 3, k = 6;
  const CovariancePoint id = CovariancePoint::from_matrix(CMatrix::Identity(n, n));
  CHECK(loglik_secondary(id, CMatrix::Zero(n, k)) == doctest::Approx(-k * n * kLogPi));
  const Dataset d = random_dataset(rng, n, k);
  const double want = -(k + 1) * n * kLogPi - d.cut->squaredNorm() - d.secondary.squaredNorm();
  CHECK(loglik_full(id, 0.0, *d.cut, d.secondary, *d.steering) == doctest::Approx(want).epsilon(1e-13));

  const StructureModel model(Hypothesis::H4, n);
  const RVector theta = model.encode(CMatrix::Identity(n, n));
  CHECK(loglik_secondary(model, theta, d.secondary) == loglik_secondary(id, d.secondary));
}

TEST_CASE("theta gradient matches finite differences") {
  Rng rng(44);
  for (Index n : {3, 4, 5}) {
    for (Hypothesis h : kHypotheses) {
      for (int t = 0; t < 4; ++t) {
        const Point pt = random_point(rng, h, n, n + 3);
        const CVector r = *pt.data.cut - pt.alpha * *pt.data.steering;
        const CMatrix s_alpha = r * r.adjoint();
        auto f = [&](const RVector& th) {
          return loglik_cut(pt.model, th, pt.alpha, *pt.data.cut, *pt.data.steering);
        };
        const RVector fd = fd_gradient(f, pt.theta);
        const RVector an = grad_theta(pt.model, pt.theta, s_alpha);
        CAPTURE(n);
        CAPTURE(index_of(h));
        CHECK(rel_err(an, fd) <= 1e-5);

        const CVector zk = pt.data.secondary.col(0);
        auto g = [&](const RVector& th) {
          return loglik_snapshot(CovariancePoint::from_matrix(pt.model.decode(th)), zk);
        };
        CHECK(rel_err(grad_theta(pt.model, pt.theta, CMatrix(zk * zk.adjoint())),
                      fd_gradient(g, pt.theta)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("theta gradient vanishes at an exact scalar fit") {
  for (Hypothesis h : kHypotheses) {
    const StructureModel model(h, 1);
    CMatrix s(1, 1);
    s(0, 0) = 2.5;
    const RVector g = grad_theta(model, model.encode(s), s);
    CHECK(std::abs(g(0)) <= 1e-15);
  }
}

TEST_CASE("theta gradient with the reference H1 transform") {
  const cplx j(0, 1);
  CMatrix c = CMatrix::Zero(9, 9);
  c(0, 0) = 1;
  c(1, 1) = 1;
  c(1, 2) = j;
  c(2, 3) = 1;
  c(2, 4) = j;
  c(3, 1) = 1;
  c(3, 2) = -j;
  c(4, 5) = 1;
  c(5, 6) = 1;
  c(5, 7) = j;
  c(6, 3) = 1;
  c(6, 4) = -j;
  c(7, 6) = 1;
  c(7, 7) = -j;
  c(8, 8) = 1;
  Rng rng(45);
  const StructureModel model(Hypothesis::H1, 3);
  const CMatrix m = random_pd(rng, 3);
  const CovariancePoint at = CovariancePoint::from_matrix(m);
  const CVector z = rng.complex_normal(3, 1);
  const CMatrix s = z * z.adjoint();
  const CMatrix xc = at.X.conjugate();
  const CVector want =
      -(vec(at.X).adjoint() * c).transpose() + c.adjoint() * kron(xc, at.X) * vec(s);
  const RVector got = grad_theta(model, at, s);
  CHECK(max_abs(want.imag()) <= 1e-12);
  CHECK(rel_err(got, want.real()) <= 1e-13);
}

TEST_CASE("theta gradient rejects a complex residue") {
  const StructureModel model(Hypothesis::H1, 3);
  const CovariancePoint at = CovariancePoint::from_matrix(CMatrix::Identity(3, 3));
  const CMatrix bad = cplx(0, 1) * CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(grad_theta(model, at, bad), ComplexResidue);
}

TEST_CASE("alpha gradient") {
  Rng rng(46);
  const Index n = 4;
  const CMatrix m = random_pd(rng, n);
  const CovariancePoint at = CovariancePoint::from_matrix(m);
  const CVector v = random_unit(rng, n);
  const cplx a(0.7, -1.1);
  CHECK(grad_alpha(at, a, CVector(a * v), v).norm() <= 1e-13);

  const CovariancePoint id = CovariancePoint::from_matrix(CMatrix::Identity(n, n));
  const CVector z = rng.complex_normal(n, 1);
  const cplx zv = z.dot(v);
  const Eigen::Vector2d g0 = grad_alpha(id, 0.0, z, v);
  CHECK(g0(0) == doctest::Approx(2.0 * zv.real()));
  CHECK(g0(1) == doctest::Approx(-2.0 * zv.imag()));

  for (int t = 0; t < 10; ++t) {
    const cplx b = rng.complex_normal();
    auto f = [&](const RVector& p) { return loglik_cut(at, cplx(p(0), p(1)), z, v); };
    RVector p(2);
    p << b.real(), b.imag();
    const RVector fd = fd_gradient(f, p);
    CHECK(rel_err(RVector(grad_alpha(at, b, z, v)), fd) <= 1e-5);
  }

  // Stationary at the H1 amplitude estimate.
  const cplx a_hat = estimate_alpha(Hypothesis::H1, at.X, z, v);
  CHECK(grad_alpha(at, a_hat, z, v).norm() <= 1e-8);
}

TEST_CASE("Hessian matches finite differences of the analytic gradient") {
  Rng rng(47);
  for (Index n : {3, 4, 5}) {
    for (Hypothesis h : kHypotheses) {
      for (Approach approach : {Approach::A, Approach::B}) {
        for (int t = 0; t < 2; ++t) {
          const Point pt = random_point(rng, h, n, n + 4);
          const Index m = pt.model.params();
          RVector p(approach == Approach::A ? m + 2 : m);
          p.head(m) = pt.theta;
          if (approach == Approach::A) p.tail(2) << pt.alpha.real(), pt.alpha.imag();
          const RMatrix fd =
              fd_jacobian([&](const RVector& q) { return full_gradient(pt, q, approach); }, p);
          const HessianBlocks hb = hessian_blocks(
              pt.model, CovariancePoint::from_matrix(pt.model.decode(pt.theta)), pt.alpha,
              pt.data, approach);
          const RMatrix an = hb.assembled();
          CAPTURE(n);
          CAPTURE(index_of(h));
          CHECK(rel_err(an, fd) <= 1e-4);
          CHECK(max_abs(an - an.transpose()) <= 1e-10 * max_abs(an));
          if (approach == Approach::A) {
            const double q = (pt.data.steering->dot(
                                  CovariancePoint::from_matrix(pt.model.decode(pt.theta)).X *
                                  *pt.data.steering))
                                 .real();
            CHECK(hb.alpha_alpha(0, 0) == doctest::Approx(-2.0 * q));
            CHECK(hb.alpha_alpha(0, 1) == 0.0);
            CHECK(hb.alpha_alpha(1, 1) == hb.alpha_alpha(0, 0));
          }
        }
      }
    }
  }
}

TEST_CASE("Hessian against an independent dense assembly") {
  Rng rng(48);
  for (Hypothesis h : kHypotheses) {
    const Index n = 4;
    const StructureModel model(h, n);
    Dataset d = random_dataset(rng, n, 9);
    const EstimateSet est = estimate(h, d, Approach::B);
    const CMatrix& x = est.X_hat;
    const CMatrix s = d.secondary * d.secondary.adjoint();
    const CMatrix& c = model.transform();
    const CMatrix xsx = x * s * x;
    const CMatrix xc = x.conjugate();
    const CMatrix want = 9.0 * c.adjoint() * kron(xc, x) * c - c.adjoint() * kron(xc, xsx) * c -
                         c.adjoint() * kron(CMatrix(xsx.conjugate()), x) * c;
    const HessianBlocks hb =
        hessian_blocks(model, CovariancePoint::from_estimate(est), 0.0, d, Approach::B);
    CHECK(max_abs(want.imag()) <= 1e-10 * max_abs(want));
    CHECK(rel_err(hb.theta_theta, want.real()) <= 1e-12);
    CHECK(hb.alpha_theta.size() == 0);
  }
}

TEST_CASE("observed FIM shape and symmetry") {
  Rng rng(49);
  for (Hypothesis h : kHypotheses) {
    const Index n = 5;
    const StructureModel model(h, n);
    const Dataset d = random_dataset(rng, n, 12);
    for (Approach a : {Approach::A, Approach::B}) {
      const EstimateSet est = estimate(h, d, a);
      const RMatrix i = observed_fim(model, est, d, a);
      CHECK(i.rows() == total_params(h, n, a));
      CHECK(i.cols() == total_params(h, n, a));
      CHECK(max_abs(i - i.transpose()) <= 1e-8 * max_abs(i));
    }
    CHECK(total_params(h, n, Approach::A) == param_count(h, n) + 2);
    CHECK(total_params(h, n, Approach::B) == param_count(h, n));
  }
}

TEST_CASE("observed FIM per sample approaches the information at the truth") {
  Rng rng(50);
  const Index n = 3, k = 4000;
  for (Hypothesis h : kHypotheses) {
    const StructureModel model(h, n);
    const CMatrix m = random_structured(rng, h, n);
    Dataset d;
    d.secondary = CPdFactor(m).lower() * rng.complex_normal(n, k);
    d.steering = random_unit(rng, n);
    d.cut = CVector(CPdFactor(m).lower() * rng.complex_normal(n, 1));
    const EstimateSet est = estimate(h, d, Approach::A);
    const RMatrix i = observed_fim(model, est, d, Approach::A);
    const CMatrix x = invert_pd(m);
    const CMatrix& c = model.transform();
    const RMatrix info = (c.adjoint() * kron(CMatrix(x.conjugate()), x) * c).real();
    const Index p = model.params();
    CAPTURE(index_of(h));
    CHECK(rel_err(RMatrix(i.topLeftCorner(p, p) / static_cast<double>(k + 1)), info) <= 0.1);
  }
}

TEST_CASE("sample FIM") {
  Rng rng(51);
  for (Hypothesis h : kHypotheses) {
    const Index n = 4;
    const StructureModel model(h, n);
    const Dataset d = random_dataset(rng, n, 10);
    for (Approach a : {Approach::A, Approach::B}) {
      const EstimateSet est = estimate(h, d, a);
      const RMatrix j = sample_fim(model, est, d, a);
      CHECK(max_abs(j - j.transpose()) <= 1e-12 * max_abs(j));
      Eigen::SelfAdjointEigenSolver<RMatrix> es(j);
      CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().maxCoeff());

      // Explicit Kronecker scores give the same matrix.
      const CovariancePoint at = CovariancePoint::from_estimate(est);
      const Index m = model.params();
      RMatrix want = RMatrix::Zero(j.rows(), j.cols());
      for (Index k = 0; k < d.K(); ++k) {
        const CVector zk = d.secondary.col(k);
        RVector g = RVector::Zero(j.rows());
        g.head(m) = grad_theta(model, at, CMatrix(zk * zk.adjoint()));
        want += g * g.transpose();
      }
      if (a == Approach::A) {
        const CVector r = *d.cut - *est.alpha_hat * *d.steering;
        RVector g(m + 2);
        g.head(m) = grad_theta(model, at, CMatrix(r * r.adjoint()));
        g.tail(2) = grad_alpha(at, *est.alpha_hat, *d.cut, *d.steering);
        want += g * g.transpose();
        // Secondary scores leave the amplitude block to the CUT term alone.
        CHECK(rel_err(RMatrix(j.bottomRightCorner(2, 2)),
                      RMatrix(g.tail(2) * g.tail(2).transpose())) <= 1e-12);
      }
      CHECK(rel_err(j, want) <= 1e-11);
    }
  }
}

TEST_CASE("sample FIM of one snapshot is one outer product") {
  Rng rng(52);
  const Index n = 3;
  const StructureModel model(Hypothesis::H1, n);
  const CMatrix m = random_pd(rng, n);
  EstimateSet est{Hypothesis::H1, m, invert_pd(m), logdet_pd(m), std::nullopt};
  Dataset d;
  d.secondary = rng.complex_normal(n, 1);
  const RMatrix j = sample_fim(model, est, d, Approach::B);
  const RVector g = grad_theta(model, CovariancePoint::from_estimate(est),
                               CMatrix(d.secondary * d.secondary.adjoint()));
  CHECK(rel_err(j, RMatrix(g * g.transpose())) <= 1e-12);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(j);
  CHECK(std::abs(es.eigenvalues()(n * n - 2)) <= 1e-10 * es.eigenvalues().maxCoeff());
}

TEST_CASE("information matrix equivalence at moderate K") {
  const Index n = 3, k = 50 * n;
  for (Hypothesis h : kHypotheses) {
    Rng rng = Rng::stream(53, {static_cast<std::uint64_t>(index_of(h))});
    const StructureModel model(h, n);
    double frob = 0.0, tic = 0.0;
    for (int s = 0; s < 10; ++s) {
      const CMatrix m = random_structured(rng, h, n);
      Dataset d;
      d.secondary = CPdFactor(m).lower() * rng.complex_normal(n, k);
      const EstimateSet est = estimate(h, d, Approach::B);
      const FimPair f = fim_pair(model, est, d, Approach::B);
      frob += rel_err(f.sample, f.observed);
      tic += 2.0 * (f.sample * f.observed.inverse()).trace();
    }
    CAPTURE(index_of(h));
    // TIC penalty near 2 n for every family.
    CHECK(std::abs(tic / 10.0 - 2.0 * model.params()) <= 0.25 * 2.0 * model.params());
    // Frobenius agreement within 0.2 for the smallest family.
    if (h == Hypothesis::H4) CHECK(frob / 10.0 <= 0.2);
  }
}

// SPDX-License-Identifier: Apache-2.0
#include "covsel/likelihood.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

namespace {

constexpr double kImagTolerance = 1e-9;
const double kLogPi = std::log(std::numbers::pi);

template <typename Derived>
auto real_checked(const Eigen::MatrixBase<Derived>& value, const char* what) {
  const double scale = value.size() == 0 ? 0.0 : value.cwiseAbs().maxCoeff();
  const double residue = value.size() == 0 ? 0.0 : value.imag().cwiseAbs().maxCoeff();
  if (residue > kImagTolerance * scale + 1e-300) {
    std::ostringstream os;
    os << what << ": imaginary residue " << residue << " relative to scale " << scale;
    throw ComplexResidue(os.str());
  }
  return value.real().eval();
}

/// X* kron X for Hermitian families, X kron X for real ones.
CMatrix kron_branch(const StructureModel& model, const CMatrix& x) {
  return is_real_structure(model.hypothesis()) ? kron(x, x) : kron(CMatrix(x.conjugate()), x);
}

CMatrix outer(const CVector& a, const CVector& b) { return a * b.adjoint(); }

double trace_x_sample(const CMatrix& x, const CMatrix& secondary) {
  return (x * secondary).cwiseProduct(secondary.conjugate()).sum().real();
}

}  // namespace

CovariancePoint CovariancePoint::from_matrix(const CMatrix& m) {
  const CPdFactor factor(m);
  return {m, factor.inverse(), factor.logdet()};
}

CovariancePoint CovariancePoint::from_estimate(const EstimateSet& e) {
  return {e.M_hat, e.X_hat, e.logdet};
}

double loglik_cut(const CovariancePoint& at, cplx alpha, const CVector& z, const CVector& v) {
  const CVector r = z - alpha * v;
  const double quad = r.dot(at.X * r).real();
  return -static_cast<double>(z.size()) * kLogPi - at.logdet - quad;
}

double loglik_cut(const StructureModel& model, const RVector& theta, cplx alpha,
                  const CVector& z, const CVector& v) {
  return loglik_cut(CovariancePoint::from_matrix(model.decode(theta)), alpha, z, v);
}

double loglik_snapshot(const CovariancePoint& at, const CVector& zk) {
  return -static_cast<double>(zk.size()) * kLogPi - at.logdet - zk.dot(at.X * zk).real();
}

double loglik_secondary(const CovariancePoint& at, const CMatrix& secondary) {
  const auto n = static_cast<double>(secondary.rows());
  const auto k = static_cast<double>(secondary.cols());
  return -k * (n * kLogPi + at.logdet) - trace_x_sample(at.X, secondary);
}

double loglik_secondary(const StructureModel& model, const RVector& theta,
                        const CMatrix& secondary) {
  return loglik_secondary(CovariancePoint::from_matrix(model.decode(theta)), secondary);
}

double loglik_full(const CovariancePoint& at, cplx alpha, const CVector& z,
                   const CMatrix& secondary, const CVector& v) {
  return loglik_cut(at, alpha, z, v) + loglik_secondary(at, secondary);
}

double loglik_full(const StructureModel& model, const RVector& theta, cplx alpha,
                   const CVector& z, const CMatrix& secondary, const CVector& v) {
  return loglik_full(CovariancePoint::from_matrix(model.decode(theta)), alpha, z, secondary, v);
}

RVector grad_theta(const StructureModel& model, const CovariancePoint& at,
                   const CMatrix& sample) {
  const CMatrix& c = model.transform();
  const CVector vx = vec(at.X);
  const CVector quad = c.adjoint() * (kron_branch(model, at.X) * vec(sample));
  CVector logdet_term;
  if (is_real_structure(model.hypothesis())) {
    logdet_term = (vx.transpose() * c).transpose();
  } else {
    logdet_term = (vx.adjoint() * c).transpose();
  }
  return real_checked(CVector(quad - logdet_term), "grad_theta");
}

RVector grad_theta(const StructureModel& model, const RVector& theta, const CMatrix& sample) {
  return grad_theta(model, CovariancePoint::from_matrix(model.decode(theta)), sample);
}

Eigen::Vector2d grad_alpha(const CovariancePoint& at, cplx alpha, const CVector& z,
                           const CVector& v) {
  const CVector xv = at.X * v;
  const double q = xv.dot(v).real();
  const cplx zxv = z.dot(xv);  // z^H X v
  return {2.0 * (-alpha.real() * q + zxv.real()), 2.0 * (-alpha.imag() * q - zxv.imag())};
}

RMatrix HessianBlocks::assembled() const {
  const Index m = theta_theta.rows();
  if (approach == Approach::B) return theta_theta;
  RMatrix h(m + 2, m + 2);
  h.topLeftCorner(m, m) = theta_theta;
  h.bottomLeftCorner(2, m) = alpha_theta;
  h.topRightCorner(m, 2) = alpha_theta.transpose();
  h.bottomRightCorner(2, 2) = alpha_alpha;
  return h;
}

HessianBlocks hessian_blocks(const StructureModel& model, const CovariancePoint& at,
                             cplx alpha, const Dataset& data, Approach approach) {
  const CMatrix& x = at.X;
  CMatrix t = data.secondary * data.secondary.adjoint();
  double count = static_cast<double>(data.K());
  CVector z, v;
  if (approach == Approach::A) {
    data.validate(Approach::A);
    z = *data.cut;
    v = *data.steering;
    const CVector r = z - alpha * v;
    t += outer(r, r);
    count += 1.0;
  }
  const CMatrix xtx = x * t * x;
  const CMatrix inner = count * x - xtx;

  CMatrix g;
  if (is_real_structure(model.hypothesis())) {
    g = kron(x, inner) - kron(CMatrix(x * t.conjugate() * x), x);
  } else {
    g = kron(CMatrix(x.conjugate()), inner) - kron(CMatrix(xtx.conjugate()), x);
  }

  HessianBlocks out;
  out.approach = approach;
  out.theta_theta = real_checked(model.sandwich(g), "hessian theta-theta");
  out.alpha_alpha.setZero();
  if (approach == Approach::B) return out;

  const CMatrix k2 = kron_branch(model, x);
  const CVector phi_bar = model.adjoint_apply(unvec(k2 * vec(outer(v, v)), x.rows()));
  const CVector phi_tilde = model.adjoint_apply(unvec(k2 * vec(outer(v, z)), x.rows()));
  const RVector phi_bar_re = real_checked(phi_bar, "hessian alpha-theta");
  out.alpha_theta.resize(2, model.params());
  out.alpha_theta.row(0) = (2.0 * alpha.real() * phi_bar_re - 2.0 * phi_tilde.real()).transpose();
  out.alpha_theta.row(1) = (2.0 * alpha.imag() * phi_bar_re + 2.0 * phi_tilde.imag()).transpose();
  const double q = (x * v).dot(v).real();
  out.alpha_alpha = -2.0 * q * Eigen::Matrix2d::Identity();
  return out;
}

Index total_params(Hypothesis h, Index n, Approach approach) {
  return param_count(h, n) + (approach == Approach::A ? 2 : 0);
}

RMatrix observed_fim(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                     Approach approach) {
  const cplx alpha = est.alpha_hat.value_or(cplx{});
  if (approach == Approach::A && !est.alpha_hat) {
    throw InvalidArgument("observed_fim: Approach A needs an amplitude estimate");
  }
  const RMatrix h =
      hessian_blocks(model, CovariancePoint::from_estimate(est), alpha, data, approach).assembled();
  return -0.5 * (h + h.transpose());
}

RMatrix sample_fim(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                   Approach approach) {
  const CMatrix& x = est.X_hat;
  const Index m = model.params();
  const Index n = total_params(model.hypothesis(), model.dim(), approach);

  // Per-snapshot score: -Tr(X E_l) + Tr(E_l X S_k X), with X S_k X = w w^H, w = X z_k.
  const RVector base = -model.adjoint_apply(x).real();
  const CMatrix w = x * data.secondary;
  RMatrix scores(m, data.K());
  for (Index k = 0; k < data.K(); ++k) {
    scores.col(k) = base + model.adjoint_apply(outer(w.col(k), w.col(k))).real();
  }

  RMatrix j = RMatrix::Zero(n, n);
  j.topLeftCorner(m, m) = scores * scores.transpose();
  if (approach == Approach::A) {
    if (!est.alpha_hat) throw InvalidArgument("sample_fim: Approach A needs an amplitude estimate");
    data.validate(Approach::A);
    const CovariancePoint at = CovariancePoint::from_estimate(est);
    const CVector r = *data.cut - *est.alpha_hat * *data.steering;
    const CVector xr = x * r;
    RVector g(n);
    g.head(m) = base + model.adjoint_apply(outer(xr, xr)).real();
    g.tail(2) = grad_alpha(at, *est.alpha_hat, *data.cut, *data.steering);
    j += g * g.transpose();
  }
  return j;
}

FimPair fim_pair(const StructureModel& model, const EstimateSet& est, const Dataset& data,
                 Approach approach) {
  return {observed_fim(model, est, data, approach), sample_fim(model, est, data, approach)};
}

}  // namespace covsel

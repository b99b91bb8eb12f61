// SPDX-License-Identifier: Apache-2.0
#include "covsel/estimators.hpp"

#include <cmath>
#include <string>

#include "covsel/errors.hpp"

namespace covsel {

namespace {

constexpr double kSteeringFloor = 1e-14;

CVector flip_conj(const CVector& z) {
  const Index n = z.size();
  CVector out(n);
  for (Index i = 0; i < n; ++i) out(i) = std::conj(z(n - 1 - i));
  return out;
}

double checked_denominator(double den) {
  if (!(den > kSteeringFloor)) {
    throw DegenerateSteering("steering quadratic form v^H X v is not positive");
  }
  return den;
}

}  // namespace

void Dataset::validate(Approach approach) const {
  const Index n = N();
  if (n < 1) throw InvalidArgument("secondary: no channels");
  if (K() <= n) {
    throw InvalidArgument("secondary: need K > N (K=" + std::to_string(K()) +
                          ", N=" + std::to_string(n) + ")");
  }
  if (cut && cut->size() != n) throw InvalidArgument("cut: length differs from N");
  if (steering) {
    if (steering->size() != n) throw InvalidArgument("steering: length differs from N");
    if (std::abs(steering->norm() - 1.0) > 1e-12) {
      throw InvalidArgument("steering: vector must have unit norm");
    }
  }
  if (approach == Approach::A) {
    if (!cut) throw InvalidArgument("cut: Approach A requires the CUT snapshot");
    if (!steering) throw InvalidArgument("steering: Approach A requires a steering vector");
  }
}

CMatrix estimate_covariance(Hypothesis h, const CMatrix& secondary) {
  const auto k = static_cast<double>(secondary.cols());
  if (secondary.cols() == 0) throw InvalidArgument("estimate_covariance: no secondary data");
  const CMatrix m1 = hermitian_part(secondary * secondary.adjoint()) / k;
  return project(h, m1);
}

cplx estimate_alpha(Hypothesis h, const CMatrix& x_hat, const CVector& z, const CVector& v) {
  switch (h) {
    case Hypothesis::H1: {
      const CVector xv = x_hat * v;
      const double den = checked_denominator(xv.dot(v).real());
      return xv.dot(z) / den;  // dot() conjugates its left operand
    }
    case Hypothesis::H2: {
      const RMatrix x = x_hat.real();
      const RVector vr = v.real(), vi = v.imag(), zr = z.real(), zi = z.imag();
      const double den = checked_denominator(vr.dot(x * vr) + vi.dot(x * vi));
      const double re = vr.dot(x * zr) + vi.dot(x * zi);
      const double im = vr.dot(x * zi) - vi.dot(x * zr);
      return {re / den, im / den};
    }
    case Hypothesis::H3: {
      const CVector jz = flip_conj(z);
      const CVector ze = 0.5 * (z + jz);
      const CVector zo = 0.5 * (z - jz);
      const CVector xv = x_hat * v;
      const double den = checked_denominator(xv.dot(v).real());
      const double re = xv.dot(ze).real();
      const double im = (cplx(0.0, -1.0) * xv.dot(zo)).real();
      return {re / den, im / den};
    }
    case Hypothesis::H4: {
      const RMatrix x = x_hat.real();
      const CVector jz = flip_conj(z);
      const CVector ze = 0.5 * (z + jz);
      const CVector zo = 0.5 * (z - jz);
      RMatrix vm(v.size(), 2), zem(v.size(), 2);
      vm << v.real(), v.imag();
      zem << ze.real(), ze.imag();
      const double den = checked_denominator((vm.transpose() * x * vm).trace());
      const double re = (vm.transpose() * x * zem).trace();
      // Imaginary part from the full quadratic form: its real-stacked trace
      // counterpart vanishes for a real X and a persymmetric v.
      const CVector xv = x_hat.real().cast<cplx>() * v;
      const double im = (cplx(0.0, -1.0) * xv.dot(zo)).real();
      return {re / den, im / den};
    }
  }
  return {};
}

EstimateSet estimate(Hypothesis h, const Dataset& data, Approach approach) {
  EstimateSet out{h, estimate_covariance(h, data.secondary), {}, 0.0, std::nullopt};
  const CPdFactor factor(out.M_hat);
  out.X_hat = factor.inverse();
  if (is_real_structure(h)) out.X_hat = out.X_hat.real().cast<cplx>();
  out.logdet = factor.logdet();
  if (approach == Approach::A) {
    data.validate(Approach::A);
    out.alpha_hat = estimate_alpha(h, out.X_hat, *data.cut, *data.steering);
  }
  return out;
}

std::array<EstimateSet, 4> estimate_all(const Dataset& data, Approach approach) {
  data.validate(approach);
  return {estimate(Hypothesis::H1, data, approach), estimate(Hypothesis::H2, data, approach),
          estimate(Hypothesis::H3, data, approach), estimate(Hypothesis::H4, data, approach)};
}

}  // namespace covsel

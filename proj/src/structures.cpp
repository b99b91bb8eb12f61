// SPDX-License-Identifier: Apache-2.0
#include "covsel/structures.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

namespace {

constexpr cplx kJ{0.0, 1.0};

bool persymmetric(Hypothesis h) { return h == Hypothesis::H3 || h == Hypothesis::H4; }

}  // namespace

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::H1: return "H1";
    case Hypothesis::H2: return "H2";
    case Hypothesis::H3: return "H3";
    case Hypothesis::H4: return "H4";
  }
  return "H?";
}

std::string_view describe(Hypothesis h) {
  switch (h) {
    case Hypothesis::H1: return "Hermitian unstructured";
    case Hypothesis::H2: return "symmetric unstructured";
    case Hypothesis::H3: return "centrohermitian";
    case Hypothesis::H4: return "centrosymmetric";
  }
  return "unknown";
}

std::optional<Hypothesis> parse_hypothesis(std::string_view s) {
  if (s.size() == 2 && (s[0] == 'H' || s[0] == 'h')) s.remove_prefix(1);
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '4') return hypothesis_at(s[0] - '1');
  return std::nullopt;
}

Index param_count(Hypothesis h, Index n) {
  if (n < 1) throw InvalidArgument("param_count: N must be positive");
  switch (h) {
    case Hypothesis::H1: return n * n;
    case Hypothesis::H2:
    case Hypothesis::H3: return n * (n + 1) / 2;
    case Hypothesis::H4:
      if (n % 2 == 0) return (n / 2) * (n / 2 + 1);
      return ((n + 1) / 2) * ((n + 1) / 2);
  }
  return 0;
}

double structure_residual(Hypothesis h, const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double r = max_abs(CMatrix(m - m.adjoint()));
  if (is_real_structure(h)) r = std::max(r, max_abs(RMatrix(m.imag())));
  if (h == Hypothesis::H3) r = std::max(r, max_abs(CMatrix(m - flip_conj(m))));
  if (h == Hypothesis::H4) r = std::max(r, max_abs(CMatrix(m - flip(m))));
  return r;
}

bool satisfies(Hypothesis h, const CMatrix& m, double tol) {
  return structure_residual(h, m) <= tol;
}

CMatrix project(Hypothesis h, const CMatrix& m) {
  switch (h) {
    case Hypothesis::H1: return m;
    case Hypothesis::H2: return m.real().cast<cplx>();
    case Hypothesis::H3: return 0.5 * (m + flip_conj(m));
    case Hypothesis::H4: {
      const CMatrix ch = 0.5 * (m + flip_conj(m));
      return ch.real().cast<cplx>();
    }
  }
  return m;
}

StructureModel::StructureModel(Hypothesis h, Index n) : h_(h), n_(n) {
  if (n < 1) throw InvalidArgument("StructureModel: N must be positive");
  const bool complex_family = !is_real_structure(h);
  auto vec_index = [n](Index row, Index col) { return col * n + row; };

  for (Index b = 0; b < n; ++b) {
    for (Index a = b; a < n; ++a) {
      if (persymmetric(h) && a + b > n - 1) continue;

      // Positions sharing the value of M(a, b) and those holding its conjugate.
      std::vector<Index> same{vec_index(a, b)};
      std::vector<Index> conj;
      if (a != b) conj.push_back(vec_index(b, a));
      if (persymmetric(h)) {
        const Index ap = n - 1 - a;
        const Index bp = n - 1 - b;
        // M(a,b) = M(b',a') and M(b,a) = M(a',b') under both H3 and H4.
        if (vec_index(bp, ap) != vec_index(a, b)) same.push_back(vec_index(bp, ap));
        if (a != b && vec_index(ap, bp) != vec_index(b, a)) conj.push_back(vec_index(ap, bp));
      }

      if (a == b) {
        std::vector<Entry> col;
        for (Index r : same) col.push_back({r, 1.0});
        slots_.push_back({a, b, Part::Diagonal});
        columns_.push_back(std::move(col));
        continue;
      }

      std::vector<Entry> re;
      for (Index r : same) re.push_back({r, 1.0});
      for (Index r : conj) re.push_back({r, 1.0});
      slots_.push_back({a, b, Part::Real});
      columns_.push_back(std::move(re));

      if (complex_family) {
        std::vector<Entry> im;
        for (Index r : same) im.push_back({r, kJ});
        for (Index r : conj) im.push_back({r, -kJ});
        slots_.push_back({a, b, Part::Imag});
        columns_.push_back(std::move(im));
      }
    }
  }

  for (auto& col : columns_) {
    std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
  }

  dense_ = CMatrix::Zero(n * n, params());
  for (Index l = 0; l < params(); ++l) {
    for (const Entry& e : column(l)) dense_(e.row, l) = e.coeff;
  }
}

std::string StructureModel::slot_label(Index l) const {
  const Slot& s = slot(l);
  std::ostringstream os;
  const char* part = s.part == Part::Imag ? "Im " : (s.part == Part::Real ? "Re " : "");
  os << part << "M(" << s.row + 1 << "," << s.col + 1 << ")";
  return os.str();
}

CMatrix StructureModel::decode(const RVector& theta) const {
  if (theta.size() != params()) {
    throw InvalidArgument("decode: expected " + std::to_string(params()) + " parameters, got " +
                          std::to_string(theta.size()));
  }
  CVector v = CVector::Zero(n_ * n_);
  for (Index l = 0; l < params(); ++l) {
    for (const Entry& e : column(l)) v(e.row) += e.coeff * theta(l);
  }
  return unvec(v, n_);
}

RVector StructureModel::encode(const CMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) {
    throw InvalidArgument("encode: matrix size does not match model dimension");
  }
  const double r = structure_residual(h_, m);
  if (r > 1e-9) {
    std::ostringstream os;
    os << "matrix violates " << describe(h_) << " structure (residual " << r << ")";
    throw StructureViolation(os.str());
  }
  RVector theta(params());
  for (Index l = 0; l < params(); ++l) {
    const Slot& s = slot(l);
    const cplx value = m(s.row, s.col);
    theta(l) = s.part == Part::Imag ? value.imag() : value.real();
  }
  return theta;
}

CVector StructureModel::adjoint_apply(const CMatrix& a) const {
  CVector out(params());
  for (Index l = 0; l < params(); ++l) {
    cplx acc = 0.0;
    for (const Entry& e : column(l)) acc += std::conj(e.coeff) * a(e.row % n_, e.row / n_);
    out(l) = acc;
  }
  return out;
}

CMatrix StructureModel::sandwich(const CMatrix& g) const {
  const Index m = params();
  CMatrix out(m, m);
  for (Index k = 0; k < m; ++k) {
    const auto ck = column(k);
    for (Index l = 0; l < m; ++l) {
      cplx acc = 0.0;
      for (const Entry& el : column(l)) {
        cplx row_acc = 0.0;
        for (const Entry& ek : ck) row_acc += g(el.row, ek.row) * ek.coeff;
        acc += std::conj(el.coeff) * row_acc;
      }
      out(l, k) = acc;
    }
  }
  return out;
}

}  // namespace covsel

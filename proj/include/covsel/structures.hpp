// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covsel/types.hpp"

namespace covsel {

/// Candidate covariance structures.
///
///   H1  Hermitian unstructured       (complex)
///   H2  symmetric unstructured       (real)
///   H3  centrohermitian, M = J M* J  (complex)
///   H4  centrosymmetric, M = J M J   (real)
///
/// Nesting: H2, H3 within H1; H4 within H2 and H3.
enum class Hypothesis { H1 = 1, H2 = 2, H3 = 3, H4 = 4 };

inline constexpr std::array<Hypothesis, 4> kHypotheses = {Hypothesis::H1, Hypothesis::H2,
                                                          Hypothesis::H3, Hypothesis::H4};

inline constexpr int index_of(Hypothesis h) { return static_cast<int>(h) - 1; }
inline constexpr Hypothesis hypothesis_at(int i) { return static_cast<Hypothesis>(i + 1); }

std::string_view to_string(Hypothesis h);
std::string_view describe(Hypothesis h);
std::optional<Hypothesis> parse_hypothesis(std::string_view s);

/// H2 and H4 confine M to real matrices; derivatives then follow the
/// "symmetric" formulas, H1/H3 the "Hermitian" ones.
inline constexpr bool is_real_structure(Hypothesis h) {
  return h == Hypothesis::H2 || h == Hypothesis::H4;
}

/// Number of real parameters m_i describing an N x N matrix with structure h.
Index param_count(Hypothesis h, Index n);

/// Largest absolute violation of the constraints defining h.
double structure_residual(Hypothesis h, const CMatrix& m);

bool satisfies(Hypothesis h, const CMatrix& m, double tol = 1e-9);

/// Orthogonal projection of a Hermitian matrix onto the family h:
/// H1 -> M, H2 -> Re M, H3 -> (M + J M* J)/2, H4 -> Re((M + J M* J)/2).
CMatrix project(Hypothesis h, const CMatrix& m);

/// Linear parameterization vec(M) = C theta of one structure family.
///
/// Slots walk the lower triangle column by column. A diagonal entry takes
/// one slot; an off-diagonal entry of a complex family takes two
/// consecutive slots (real part, imaginary part), of a real family one. For
/// H3/H4 only the first entry of each persymmetric orbit in that walk gets
/// slots, i.e. lower-triangle entries (a, b) with a + b <= N - 1.
class StructureModel {
 public:
  /// One nonzero of a column of C: vec-index and coefficient in {1, +-j}.
  struct Entry {
    Index row;
    cplx coeff;
  };

  enum class Part { Diagonal, Real, Imag };

  /// Representative matrix entry (0-based) a slot reads from.
  struct Slot {
    Index row;
    Index col;
    Part part;
  };

  StructureModel(Hypothesis h, Index n);

  Hypothesis hypothesis() const { return h_; }
  Index dim() const { return n_; }
  Index params() const { return static_cast<Index>(slots_.size()); }

  /// Dense N^2 x m transformation matrix.
  const CMatrix& transform() const { return dense_; }

  std::span<const Entry> column(Index l) const { return columns_[static_cast<std::size_t>(l)]; }
  const Slot& slot(Index l) const { return slots_[static_cast<std::size_t>(l)]; }
  std::string slot_label(Index l) const;

  CMatrix decode(const RVector& theta) const;

  /// Throws StructureViolation when M is not in the family (tolerance 1e-9).
  RVector encode(const CMatrix& m) const;

  /// C^H vec(A), i.e. entry l is Tr(E_l^H A) with E_l = unvec(C e_l).
  CVector adjoint_apply(const CMatrix& a) const;

  /// C^H G C for an N^2 x N^2 matrix G, using the sparsity of C.
  CMatrix sandwich(const CMatrix& g) const;

 private:
  Hypothesis h_;
  Index n_;
  std::vector<Slot> slots_;
  std::vector<std::vector<Entry>> columns_;
  CMatrix dense_;
};

}  // namespace covsel

#pragma once

// Orthogonal almost complex structures on g*, their fundamental forms, type
// decompositions and Nijenhuis tensors. Matrices act on 1-forms in the
// orthonormal coframe of the metric; column j is the image of e^{j+1}.

#include <array>

#include "nilherm/exterior.hpp"
#include "nilherm/liealg.hpp"

namespace nilherm {

/// A 2-form or matrix that does not define a point of the moduli space.
class NotInModuli : public Error {
 public:
  using Error::Error;
};

class AlmostComplexStructure {
 public:
  /// J₀ with J₀e¹ = −e², J₀e³ = −e⁴, J₀e⁵ = −e⁶.
  AlmostComplexStructure();

  /// Throws NotInModuli unless J² = −I and Jᵀ = −J within `tol`. Orientation
  /// is not checked here; see positively_oriented().
  static AlmostComplexStructure from_matrix(const Matrix6d& m, double tol = 1e-8);

  const Matrix6d& matrix() const { return m_; }
  /// Action on tangent vectors, transpose of the action on 1-forms.
  Matrix6d vector_action() const { return m_.transpose(); }
  /// ω³ = +6υ.
  bool positively_oriented() const;

  AlmostComplexStructure operator-() const;

 private:
  explicit AlmostComplexStructure(const Matrix6d& m) : m_(m) {}
  Matrix6d m_;
};

/// ω(X, Y) = g(JX, Y), returned in e-coordinates of the given metric.
Multivector omega_from_J(const AlmostComplexStructure& j, const Gram& gram = Gram::identity());

/// Inverse of omega_from_J. Throws NotInModuli for 2-forms that are not
/// positively oriented fundamental forms of an orthogonal J.
AlmostComplexStructure J_from_omega(const Multivector& omega, const Gram& gram = Gram::identity(),
                                    double tol = 1e-8);

/// Orthonormal-frame validity: J² = −I, Jᵀ = −J, ω³ = 6υ, ‖ω‖² = 3.
bool is_point_of_moduli(const Multivector& omega, double tol = 1e-9);

/// (1,0)-forms α, β, γ with ω = (i/2)(αᾱ + ββ̄ + γγ̄), each of norm √2.
struct UnitaryCoframe {
  std::array<Multivector, 3> alpha;
  /// Columns α, β, γ, ᾱ, β̄, γ̄ as e-coordinate vectors.
  Matrix6cd basis;
};

/// Deterministic: projects e¹..e⁶ in order onto Λ^{1,0} and keeps the first
/// three independent images after Hermitian Gram–Schmidt.
UnitaryCoframe unitary_coframe(const AlmostComplexStructure& j);

/// Splits forms by type with respect to a fixed coframe.
class TypeDecomposition {
 public:
  explicit TypeDecomposition(const UnitaryCoframe& coframe);

  /// Coefficients in the basis α, β, γ, ᾱ, β̄, γ̄ (written as e^1..e^6) and back.
  Multivector to_type_coordinates(const Multivector& a) const;
  Multivector from_type_coordinates(const Multivector& a) const;

  Multivector project(const Multivector& a, int p, int q) const;

 private:
  Substitution to_type_;
  Substitution from_type_;
};

Multivector pq_project(const Multivector& a, const AlmostComplexStructure& j, int p, int q);

/// Lowered tensor N(i, j, k) = g(N(e_i, e_j), e_k) in the orthonormal frame,
/// with N(X, Y) = [JX, JY] − [X, Y] − J[JX, Y] − J[X, JY].
class NijenhuisTensor {
 public:
  double operator()(int i, int j, int k) const {
    return n_[static_cast<std::size_t>((i * kDim + j) * kDim + k)];
  }
  double& at(int i, int j, int k) { return n_[static_cast<std::size_t>((i * kDim + j) * kDim + k)]; }

  /// Frobenius norm over all index triples.
  double norm() const;
  /// Totally skew part (1/3)(N_ijk + N_jki + N_kij); N is already skew in i, j.
  NijenhuisTensor alternation() const;
  NijenhuisTensor operator-(const NijenhuisTensor& o) const;

 private:
  std::array<double, kDim * kDim * kDim> n_{};
};

/// `algebra` is used in the orthonormal frame of its metric.
NijenhuisTensor nijenhuis(const LieAlgebra& algebra, const AlmostComplexStructure& j);

}  // namespace nilherm

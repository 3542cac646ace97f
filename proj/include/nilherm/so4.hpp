#pragma once

#include <array>
#include <utility>

#include "nilherm/exterior.hpp"

namespace nilherm {

using Matrix3d = Eigen::Matrix3d;
using Matrix4d = Eigen::Matrix4d;
using Quaternion = Eigen::Vector4d;  // (w, x, y, z)

/// Zero-based generator indices of the distinguished 4-dimensional subspace D.
using Distinguished = std::array<int, 4>;
inline constexpr Distinguished kDefaultDistinguished{0, 1, 2, 3};

/// Rotation of D, with P(e^i) = f^i = Σ_j P(j, i) e^j.
class SO4Element {
 public:
  SO4Element() : m_(Matrix4d::Identity()) {}
  /// Throws InvalidInput unless `m` is orthogonal with determinant +1.
  explicit SO4Element(const Matrix4d& m, double tol = 1e-9);

  static SO4Element identity() { return SO4Element(); }
  /// x ↦ q_left · x · conj(q_right) on quaternions identified with D.
  static SO4Element from_quaternions(const Quaternion& left, const Quaternion& right);

  const Matrix4d& matrix() const { return m_; }
  SO4Element inverse() const;
  SO4Element operator-() const;
  friend SO4Element operator*(const SO4Element& a, const SO4Element& b);

  /// 6×6 action on g*, identity off D.
  Matrix6d embed(const Distinguished& d = kDefaultDistinguished) const;

  /// Image of the 2-form or k-form `a` (f^i replaces e^i).
  Multivector act(const Multivector& a, const Distinguished& d = kDefaultDistinguished) const;

 private:
  Matrix4d m_;
};

/// Bases (e12+e34, e13+e42, e14+e23) of Λ²₊D and (e12−e34, e13−e42, e14−e23)
/// of Λ²₋D, with the standard D = ⟨e1..e4⟩.
std::array<Multivector, 3> self_dual_basis();
std::array<Multivector, 3> anti_self_dual_basis();

/// Blocks (P₊, P₋): column j is the image of the j-th basis element,
/// expressed in the same basis.
std::pair<Matrix3d, Matrix3d> so4_blocks(const SO4Element& p);

}  // namespace nilherm

#include "nilherm/so4.hpp"

#include <cmath>

namespace nilherm {
namespace {

Matrix4d left_multiplication(const Quaternion& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Matrix4d m;
  m << w, -x, -y, -z,
       x,  w, -z,  y,
       y,  z,  w, -x,
       z, -y,  x,  w;
  return m;
}

Matrix4d right_multiplication(const Quaternion& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Matrix4d m;
  m << w, -x, -y, -z,
       x,  w,  z, -y,
       y, -z,  w,  x,
       z,  y, -x,  w;
  return m;
}

}  // namespace

SO4Element::SO4Element(const Matrix4d& m, double tol) : m_(m) {
  if (!m.allFinite()) throw InvalidInput("SO(4) matrix has non-finite entries");
  if ((m.transpose() * m - Matrix4d::Identity()).cwiseAbs().maxCoeff() > tol)
    throw InvalidInput("matrix is not orthogonal");
  if (m.determinant() < 0.0) throw InvalidInput("matrix has determinant -1");
}

SO4Element SO4Element::from_quaternions(const Quaternion& left, const Quaternion& right) {
  const Quaternion l = left.normalized();
  Quaternion r = right.normalized();
  r.tail<3>() = -r.tail<3>();
  return SO4Element(left_multiplication(l) * right_multiplication(r));
}

SO4Element SO4Element::inverse() const { return SO4Element(Matrix4d(m_.transpose())); }
SO4Element SO4Element::operator-() const { return SO4Element(Matrix4d(-m_)); }
SO4Element operator*(const SO4Element& a, const SO4Element& b) { return SO4Element(Matrix4d(a.m_ * b.m_)); }

Matrix6d SO4Element::embed(const Distinguished& d) const {
  Matrix6d out = Matrix6d::Identity();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(d[static_cast<std::size_t>(r)], d[static_cast<std::size_t>(c)]) = m_(r, c);
  return out;
}

Multivector SO4Element::act(const Multivector& a, const Distinguished& d) const {
  return transform(a, embed(d));
}

std::array<Multivector, 3> self_dual_basis() {
  return {e("12") + e("34"), e("13") + e("42"), e("14") + e("23")};
}

std::array<Multivector, 3> anti_self_dual_basis() {
  return {e("12") - e("34"), e("13") - e("42"), e("14") - e("23")};
}

std::pair<Matrix3d, Matrix3d> so4_blocks(const SO4Element& p) {
  const Substitution sub(p.embed());
  auto block = [&](const std::array<Multivector, 3>& basis) {
    Matrix3d m;
    for (int j = 0; j < 3; ++j) {
      const Multivector image = sub.apply(basis[static_cast<std::size_t>(j)]);
      for (int i = 0; i < 3; ++i) m(i, j) = inner(image, basis[static_cast<std::size_t>(i)]).real() / 2.0;
    }
    return m;
  };
  return {block(self_dual_basis()), block(anti_self_dual_basis())};
}

}  // namespace nilherm

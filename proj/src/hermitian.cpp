#include "nilherm/hermitian.hpp"

#include <cmath>

namespace nilherm {
namespace {

Matrix6d standard_j() {
  Matrix6d m = Matrix6d::Zero();
  for (int b = 0; b < 3; ++b) {
    m(2 * b + 1, 2 * b) = -1.0;
    m(2 * b, 2 * b + 1) = 1.0;
  }
  return m;
}

double orientation_coefficient(const Multivector& omega) {
  return wedge(wedge(omega, omega), omega)[kVolumeMask].real();
}

using Vec = Eigen::Matrix<double, kDim, 1>;

Vec bracket(const LieAlgebra& g, const Vec& x, const Vec& y) {
  Vec out = Vec::Zero();
  for (int i = 0; i < kDim; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < kDim; ++j) {
      if (y(j) == 0.0 || i == j) continue;
      for (int k = 0; k < kDim; ++k) out(k) += x(i) * y(j) * g.bracket(i, j, k);
    }
  }
  return out;
}

}  // namespace

AlmostComplexStructure::AlmostComplexStructure() : m_(standard_j()) {}

AlmostComplexStructure AlmostComplexStructure::from_matrix(const Matrix6d& m, double tol) {
  if (!m.allFinite()) throw NotInModuli("almost complex structure has non-finite entries");
  if ((m * m + Matrix6d::Identity()).cwiseAbs().maxCoeff() > tol)
    throw NotInModuli("J² ≠ −I: not an almost complex structure");
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw NotInModuli("Jᵀ ≠ −J: not compatible with the metric");
  return AlmostComplexStructure(m);
}

bool AlmostComplexStructure::positively_oriented() const {
  return orientation_coefficient(two_form(m_)) > 0.0;
}

AlmostComplexStructure AlmostComplexStructure::operator-() const { return AlmostComplexStructure(Matrix6d(-m_)); }

Multivector omega_from_J(const AlmostComplexStructure& j, const Gram& gram) {
  const Multivector omega = two_form(j.matrix());
  return gram.is_identity() ? omega : real_part(gram.from_orthonormal(omega));
}

AlmostComplexStructure J_from_omega(const Multivector& omega, const Gram& gram, double tol) {
  const auto deg = omega.degree();
  if (deg && *deg != 2) throw NotInModuli("fundamental form must be a 2-form");
  if (!is_real(omega, tol)) throw NotInModuli("fundamental form must be real");
  const Multivector framed = gram.is_identity() ? omega : gram.to_orthonormal(omega);
  const AlmostComplexStructure j = AlmostComplexStructure::from_matrix(skew_matrix(real_part(framed)), tol);
  if (!j.positively_oriented()) throw NotInModuli("fundamental form has the wrong orientation (ω³ = −6υ)");
  return j;
}

bool is_point_of_moduli(const Multivector& omega, double tol) {
  if (!is_real(omega, tol)) return false;
  const auto deg = omega.degree();
  if (deg && *deg != 2) return false;
  const Matrix6d m = skew_matrix(real_part(omega));
  if ((m * m + Matrix6d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(orientation_coefficient(omega) - 6.0) > tol) return false;
  return std::abs(norm(omega) * norm(omega) - 3.0) <= tol;
}

UnitaryCoframe unitary_coframe(const AlmostComplexStructure& j) {
  const Complex i(0.0, 1.0);
  const Matrix6cd projector = (Matrix6cd::Identity() - i * j.matrix().cast<Complex>()) / 2.0;
  UnitaryCoframe out;
  std::array<Vector6cd, 3> kept;
  int found = 0;
  for (int c = 0; c < kDim && found < 3; ++c) {
    Vector6cd v = projector.col(c);
    for (int k = 0; k < found; ++k) v -= kept[static_cast<std::size_t>(k)].dot(v) * kept[static_cast<std::size_t>(k)];
    const double n = v.norm();
    if (n < 1e-6) continue;
    kept[static_cast<std::size_t>(found++)] = v / n;
  }
  if (found < 3) throw NotInModuli("could not extract a (1,0) coframe");
  for (int k = 0; k < 3; ++k) {
    const Vector6cd a = kept[static_cast<std::size_t>(k)] * std::sqrt(2.0);
    out.alpha[static_cast<std::size_t>(k)] = one_form(a);
    out.basis.col(k) = a;
    out.basis.col(k + 3) = a.conjugate();
  }
  return out;
}

TypeDecomposition::TypeDecomposition(const UnitaryCoframe& coframe)
    : to_type_(Matrix6cd(coframe.basis.adjoint() / 2.0)), from_type_(coframe.basis) {}

Multivector TypeDecomposition::to_type_coordinates(const Multivector& a) const { return to_type_.apply(a); }
Multivector TypeDecomposition::from_type_coordinates(const Multivector& a) const { return from_type_.apply(a); }

Multivector TypeDecomposition::project(const Multivector& a, int p, int q) const {
  const Multivector typed = to_type_.apply(a);
  Multivector kept;
  for (unsigned m = 0; m < kBasisCount; ++m)
    if (std::popcount(m & 7u) == p && std::popcount(m >> 3) == q) kept.set(m, typed[m]);
  return from_type_.apply(kept);
}

Multivector pq_project(const Multivector& a, const AlmostComplexStructure& j, int p, int q) {
  return TypeDecomposition(unitary_coframe(j)).project(a, p, q);
}

double NijenhuisTensor::norm() const {
  double s = 0.0;
  for (double x : n_) s += x * x;
  return std::sqrt(s);
}

NijenhuisTensor NijenhuisTensor::alternation() const {
  NijenhuisTensor out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        out.at(i, j, k) = ((*this)(i, j, k) + (*this)(j, k, i) + (*this)(k, i, j)) / 3.0;
  return out;
}

NijenhuisTensor NijenhuisTensor::operator-(const NijenhuisTensor& o) const {
  NijenhuisTensor out;
  for (std::size_t i = 0; i < n_.size(); ++i) out.n_[i] = n_[i] - o.n_[i];
  return out;
}

NijenhuisTensor nijenhuis(const LieAlgebra& algebra, const AlmostComplexStructure& j) {
  const LieAlgebra model = algebra.orthonormal_model();
  const Matrix6d jv = j.vector_action();
  NijenhuisTensor out;
  for (int a = 0; a < kDim; ++a) {
    const Vec x = Vec::Unit(a), jx = jv.col(a);
    for (int b = a + 1; b < kDim; ++b) {
      const Vec y = Vec::Unit(b), jy = jv.col(b);
      const Vec n = bracket(model, jx, jy) - bracket(model, x, y) -
                    jv * (bracket(model, jx, y) + bracket(model, x, jy));
      for (int k = 0; k < kDim; ++k) {
        out.at(a, b, k) = n(k);
        out.at(b, a, k) = -n(k);
      }
    }
  }
  return out;
}

}  // namespace nilherm

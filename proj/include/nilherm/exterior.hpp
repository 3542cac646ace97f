#pragma once

// Exterior algebra on six generators e^1..e^6.
//
// A basis element e^{i1 i2 ... ik} (i1 < ... < ik) is addressed by a 6-bit
// mask with bit (i-1) set for every index i. Coefficients are stored densely;
// all 64 basis elements fit in one small array.

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace nilherm {

inline constexpr int kDim = 6;
inline constexpr int kBasisCount = 1 << kDim;
inline constexpr unsigned kVolumeMask = kBasisCount - 1;

/// Magnitude below which complex coefficients are dropped after arithmetic.
inline constexpr double kCoefficientFloor = 1e-14;

using Complex = std::complex<double>;
using Rational = boost::rational<long long>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix6cd = Eigen::Matrix<Complex, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector6cd = Eigen::Matrix<Complex, 6, 1>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

constexpr int grade_of(unsigned mask) { return std::popcount(mask); }

/// Sign of e^A ∧ e^B relative to e^{A∪B}; zero when the index sets overlap.
constexpr int wedge_sign(unsigned a, unsigned b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (unsigned rest = a; rest != 0; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    swaps += std::popcount(b & ((1u << i) - 1u));
  }
  return (swaps % 2 != 0) ? -1 : 1;
}

/// Masks of grade k in lexicographic order of their index tuples
/// (e12, e13, ..., e16, e23, ...). This is the canonical in-grade order used
/// by coordinate vectors and wire formats.
std::span<const unsigned> masks_of_grade(int k);

/// Position of a mask inside masks_of_grade(grade_of(mask)).
int index_in_grade(unsigned mask);

/// Binomial(6, k).
constexpr int grade_dimension(int k) {
  constexpr std::array<int, 7> dims{1, 6, 15, 20, 15, 6, 1};
  return (k < 0 || k > kDim) ? 0 : dims[static_cast<std::size_t>(k)];
}

namespace detail {
inline bool negligible(const Complex& c) { return std::abs(c) < kCoefficientFloor; }
inline bool negligible(const Rational& r) { return r == Rational(0); }
}  // namespace detail

template <class Scalar>
class BasicMultivector {
 public:
  using scalar_type = Scalar;
  using Storage = std::array<Scalar, kBasisCount>;

  BasicMultivector() { coeffs_.fill(Scalar(0)); }

  static BasicMultivector scalar(Scalar s) { return basis(0, s); }

  static BasicMultivector basis(unsigned mask, Scalar c = Scalar(1)) {
    BasicMultivector m;
    m.coeffs_[mask] = c;
    return m;
  }

  /// The generator e^{i+1}; `i` is zero-based.
  static BasicMultivector generator(int i) { return basis(1u << i); }

  Scalar operator[](unsigned mask) const { return coeffs_[mask]; }
  void set(unsigned mask, Scalar c) { coeffs_[mask] = c; }
  void add(unsigned mask, Scalar c) { coeffs_[mask] += c; }
  const Storage& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!detail::negligible(c)) return false;
    return true;
  }

  /// Degree of a homogeneous, non-zero element.
  std::optional<int> degree() const {
    std::optional<int> deg;
    for (unsigned m = 0; m < kBasisCount; ++m) {
      if (detail::negligible(coeffs_[m])) continue;
      if (deg && *deg != grade_of(m)) return std::nullopt;
      deg = grade_of(m);
    }
    return deg;
  }

  void canonicalize() {
    for (auto& c : coeffs_)
      if (detail::negligible(c)) c = Scalar(0);
  }

  BasicMultivector& operator+=(const BasicMultivector& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    canonicalize();
    return *this;
  }
  BasicMultivector& operator-=(const BasicMultivector& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    canonicalize();
    return *this;
  }
  BasicMultivector& operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    canonicalize();
    return *this;
  }

  friend BasicMultivector operator+(BasicMultivector a, const BasicMultivector& b) { return a += b; }
  friend BasicMultivector operator-(BasicMultivector a, const BasicMultivector& b) { return a -= b; }
  friend BasicMultivector operator*(BasicMultivector a, Scalar s) { return a *= s; }
  friend BasicMultivector operator*(Scalar s, BasicMultivector a) { return a *= s; }
  friend BasicMultivector operator-(BasicMultivector a) { return a *= Scalar(-1); }
  friend bool operator==(const BasicMultivector& a, const BasicMultivector& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  Storage coeffs_;
};

using Multivector = BasicMultivector<Complex>;
using RationalForm = BasicMultivector<Rational>;

template <class Scalar>
BasicMultivector<Scalar> wedge(const BasicMultivector<Scalar>& a, const BasicMultivector<Scalar>& b) {
  BasicMultivector<Scalar> out;
  for (unsigned i = 0; i < kBasisCount; ++i) {
    if (detail::negligible(a[i])) continue;
    for (unsigned j = 0; j < kBasisCount; ++j) {
      if ((i & j) != 0 || detail::negligible(b[j])) continue;
      out.add(i | j, Scalar(wedge_sign(i, j)) * a[i] * b[j]);
    }
  }
  out.canonicalize();
  return out;
}

template <class Scalar>
BasicMultivector<Scalar> operator^(const BasicMultivector<Scalar>& a, const BasicMultivector<Scalar>& b) {
  return wedge(a, b);
}

template <class Scalar>
BasicMultivector<Scalar> grade(const BasicMultivector<Scalar>& a, int k) {
  if (k < 0 || k > kDim) throw InvalidInput("grade must lie in [0, 6]");
  BasicMultivector<Scalar> out;
  for (unsigned m : masks_of_grade(k)) out.set(m, a[m]);
  return out;
}

/// e^{i} ∧ e^{j} for zero-based i, j.
Multivector e(int i, int j);
/// Basis element from one-based digits, e.g. e("135") == e^{135}.
Multivector e(std::string_view digits);

Multivector to_complex(const RationalForm& f);
/// Exact conversion; throws InvalidInput when a coefficient is not a small rational.
RationalForm to_rational(const Multivector& f, long long max_denominator = 1000000);

Multivector conj(const Multivector& a);
Multivector real_part(const Multivector& a);
bool is_real(const Multivector& a, double tol = kCoefficientFloor);

/// Largest coefficient magnitude.
double max_abs(const Multivector& a);

/// The unit volume form e^{123456} of the orthonormal frame.
Multivector volume();

/// Hodge star in an orthonormal frame, complex-linear: σ ∧ *τ = <σ, τ̄> υ.
Multivector star(const Multivector& a);

/// Hermitian inner product, linear in the first slot; real forms get the
/// usual induced metric.
Complex inner(const Multivector& a, const Multivector& b);
double norm(const Multivector& a);

/// Metric on generators, g = Σ G_ij e^i ⊗ e^j, together with an orthonormal
/// coframe f = C e where CᵀC = G (upper-triangular Cholesky factor).
class Gram {
 public:
  Gram();  // identity
  explicit Gram(const Matrix6d& metric);

  static Gram identity() { return Gram(); }
  static Gram diagonal(const std::array<double, 6>& d);

  const Matrix6d& metric() const { return metric_; }
  /// Row a holds the e-coordinates of the orthonormal 1-form f^{a+1}.
  const Matrix6d& coframe() const { return coframe_; }
  bool is_identity() const { return identity_; }

  /// Rewrites a form given in e-coordinates in the orthonormal coframe.
  Multivector to_orthonormal(const Multivector& a) const;
  /// Inverse of to_orthonormal.
  Multivector from_orthonormal(const Multivector& a) const;

  /// Positive multiple of e^{123456} with unit norm.
  Multivector volume() const;

 private:
  Matrix6d metric_;
  Matrix6d coframe_;
  Matrix6d coframe_inverse_;
  bool identity_ = true;
};

Multivector star(const Multivector& a, const Gram& gram);
Complex inner(const Multivector& a, const Multivector& b, const Gram& gram);

/// Algebra automorphism induced by a linear map of 1-forms. Column i of the
/// matrix is the image of e^{i+1}; on k-forms the induced matrix entries are
/// k×k minors. Per-grade matrices are built once, so reuse instances when the
/// same map is applied repeatedly.
class Substitution {
 public:
  explicit Substitution(const Matrix6cd& map);
  explicit Substitution(const Matrix6d& map);

  Multivector apply(const Multivector& a) const;
  const Matrix6cd& map() const { return map_; }

 private:
  Matrix6cd map_;
  std::array<Eigen::MatrixXcd, kDim + 1> induced_;
};

Multivector transform(const Multivector& a, const Matrix6cd& map);
Multivector transform(const Multivector& a, const Matrix6d& map);

/// Coefficients of grade k in canonical order.
Eigen::VectorXcd grade_coordinates(const Multivector& a, int k);
Multivector from_grade_coordinates(const Eigen::VectorXcd& v, int k);

/// 1-form coefficient vector (e^1..e^6) and back.
Vector6cd one_form_coordinates(const Multivector& a);
Multivector one_form(const Vector6cd& v);
Multivector one_form(const Vector6d& v);

/// Real 2-form from a skew matrix W: Σ_{i<j} W(i,j) e^{ij}; and back.
Multivector two_form(const Matrix6d& skew);
Matrix6d skew_matrix(const Multivector& two_form);

/// Human-readable rendering such as "e12 + e34 - 0.5 e56".
std::string to_string(const Multivector& a, int precision = 6);
std::string to_string(const RationalForm& a);

}  // namespace nilherm

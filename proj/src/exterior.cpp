#include "nilherm/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace nilherm {
namespace {

struct GradeTables {
  std::array<std::vector<unsigned>, kDim + 1> masks;
  std::array<int, kBasisCount> position{};

  GradeTables() {
    for (unsigned m = 0; m < kBasisCount; ++m) masks[grade_of(m)].push_back(m);
    for (auto& list : masks) {
      // Lexicographic order of the ascending index tuples.
      std::sort(list.begin(), list.end(), [](unsigned a, unsigned b) {
        while (a != 0 && b != 0) {
          const int ia = std::countr_zero(a);
          const int ib = std::countr_zero(b);
          if (ia != ib) return ia < ib;
          a &= a - 1;
          b &= b - 1;
        }
        return a == 0 && b != 0;
      });
      for (std::size_t i = 0; i < list.size(); ++i) position[list[i]] = static_cast<int>(i);
    }
  }
};

const GradeTables& tables() {
  static const GradeTables t;
  return t;
}

template <class Mat>
Complex small_determinant(Mat m, int n) {
  // Gaussian elimination with partial pivoting; n <= 6.
  Complex det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(pivot, c))) pivot = r;
    if (std::abs(m(pivot, c)) == 0.0) return 0.0;
    if (pivot != c) {
      m.row(pivot).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const Complex f = m(r, c) / m(c, c);
      for (int k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

}  // namespace

std::span<const unsigned> masks_of_grade(int k) {
  if (k < 0 || k > kDim) return {};
  return tables().masks[static_cast<std::size_t>(k)];
}

int index_in_grade(unsigned mask) { return tables().position[mask & kVolumeMask]; }

Multivector e(int i, int j) { return wedge(Multivector::generator(i), Multivector::generator(j)); }

Multivector e(std::string_view digits) {
  Multivector out = Multivector::scalar(1.0);
  for (char c : digits) {
    if (c < '1' || c > '6') throw InvalidInput("basis digits must be 1..6");
    out = wedge(out, Multivector::generator(c - '1'));
  }
  return out;
}

Multivector to_complex(const RationalForm& f) {
  Multivector out;
  for (unsigned m = 0; m < kBasisCount; ++m)
    out.set(m, Complex(boost::rational_cast<double>(f[m]), 0.0));
  return out;
}

RationalForm to_rational(const Multivector& f, long long max_denominator) {
  RationalForm out;
  for (unsigned m = 0; m < kBasisCount; ++m) {
    const Complex c = f[m];
    if (std::abs(c.imag()) > 1e-12) throw InvalidInput("complex coefficient has no rational form");
    // Continued-fraction expansion with a bounded denominator.
    double x = c.real();
    const double target = x;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    bool done = false;
    for (int iter = 0; iter < 64 && !done; ++iter) {
      const double a = std::floor(x);
      const long long ai = static_cast<long long>(a);
      const long long h2 = ai * h1 + h0;
      const long long k2 = ai * k1 + k0;
      if (k2 > max_denominator) break;
      h0 = h1; h1 = h2; k0 = k1; k1 = k2;
      if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) < 1e-12) done = true;
      const double frac = x - a;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
    if (k1 == 0 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) > 1e-12)
      throw InvalidInput("coefficient " + std::to_string(target) + " is not a small rational");
    out.set(m, Rational(h1, k1));
  }
  return out;
}

Multivector conj(const Multivector& a) {
  Multivector out;
  for (unsigned m = 0; m < kBasisCount; ++m) out.set(m, std::conj(a[m]));
  return out;
}

Multivector real_part(const Multivector& a) {
  Multivector out;
  for (unsigned m = 0; m < kBasisCount; ++m) out.set(m, a[m].real());
  out.canonicalize();
  return out;
}

bool is_real(const Multivector& a, double tol) {
  return std::all_of(a.coefficients().begin(), a.coefficients().end(),
                     [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

double max_abs(const Multivector& a) {
  double best = 0.0;
  for (const auto& c : a.coefficients()) best = std::max(best, std::abs(c));
  return best;
}

Multivector volume() { return Multivector::basis(kVolumeMask); }

Multivector star(const Multivector& a) {
  Multivector out;
  for (unsigned m = 0; m < kBasisCount; ++m) {
    if (a[m] == Complex(0.0)) continue;
    const unsigned comp = kVolumeMask & ~m;
    out.add(comp, static_cast<double>(wedge_sign(m, comp)) * a[m]);
  }
  return out;
}

Complex inner(const Multivector& a, const Multivector& b) {
  Complex sum = 0.0;
  for (unsigned m = 0; m < kBasisCount; ++m) sum += a[m] * std::conj(b[m]);
  return sum;
}

double norm(const Multivector& a) { return std::sqrt(std::max(0.0, inner(a, a).real())); }

// --- Gram -------------------------------------------------------------------

Gram::Gram()
    : metric_(Matrix6d::Identity()),
      coframe_(Matrix6d::Identity()),
      coframe_inverse_(Matrix6d::Identity()) {}

Gram::Gram(const Matrix6d& metric) : metric_(metric) {
  if (!metric.allFinite()) throw InvalidInput("gram matrix has non-finite entries");
  const double scale = std::max(1.0, metric.cwiseAbs().maxCoeff());
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInput("gram matrix is not symmetric");
  Eigen::LLT<Matrix6d> llt(metric);
  if (llt.info() != Eigen::Success) throw InvalidInput("gram matrix is not positive definite");
  const Matrix6d lower = llt.matrixL();
  if (lower.diagonal().minCoeff() <= 1e-12 * scale)
    throw InvalidInput("gram matrix is not positive definite");
  coframe_ = lower.transpose();
  coframe_inverse_ = coframe_.inverse();
  identity_ = (metric - Matrix6d::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

Gram Gram::diagonal(const std::array<double, 6>& d) {
  Matrix6d m = Matrix6d::Zero();
  for (int i = 0; i < kDim; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return Gram(m);
}

Multivector Gram::to_orthonormal(const Multivector& a) const {
  if (identity_) return a;
  // e^i = Σ_a (C⁻¹)_{ia} f^a
  return transform(a, Matrix6d(coframe_inverse_.transpose()));
}

Multivector Gram::from_orthonormal(const Multivector& a) const {
  if (identity_) return a;
  // f^a = Σ_i C_{ai} e^i
  return transform(a, Matrix6d(coframe_.transpose()));
}

Multivector Gram::volume() const { return from_orthonormal(nilherm::volume()); }

Multivector star(const Multivector& a, const Gram& gram) {
  return gram.from_orthonormal(star(gram.to_orthonormal(a)));
}

Complex inner(const Multivector& a, const Multivector& b, const Gram& gram) {
  return inner(gram.to_orthonormal(a), gram.to_orthonormal(b));
}

// --- Substitution -----------------------------------------------------------

Substitution::Substitution(const Matrix6d& map) : Substitution(Matrix6cd(map.cast<Complex>())) {}

Substitution::Substitution(const Matrix6cd& map) : map_(map) {
  Eigen::Matrix<Complex, 6, 6> minor;
  for (int k = 0; k <= kDim; ++k) {
    const auto masks = masks_of_grade(k);
    const int n = static_cast<int>(masks.size());
    auto& out = induced_[static_cast<std::size_t>(k)];
    out.resize(n, n);
    for (int col = 0; col < n; ++col) {
      for (int row = 0; row < n; ++row) {
        int r = 0;
        for (unsigned rm = masks[static_cast<std::size_t>(row)]; rm != 0; rm &= rm - 1, ++r) {
          int c = 0;
          for (unsigned cm = masks[static_cast<std::size_t>(col)]; cm != 0; cm &= cm - 1, ++c)
            minor(r, c) = map(std::countr_zero(rm), std::countr_zero(cm));
        }
        out(row, col) = (k == 0) ? Complex(1.0) : small_determinant(minor, k);
      }
    }
  }
}

Multivector Substitution::apply(const Multivector& a) const {
  Multivector out;
  for (int k = 0; k <= kDim; ++k) {
    const auto masks = masks_of_grade(k);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(masks.size()));
    bool any = false;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = a[masks[i]];
      any = any || a[masks[i]] != Complex(0.0);
    }
    if (!any) continue;
    const Eigen::VectorXcd w = induced_[static_cast<std::size_t>(k)] * v;
    for (std::size_t i = 0; i < masks.size(); ++i) out.set(masks[i], w(static_cast<Eigen::Index>(i)));
  }
  out.canonicalize();
  return out;
}

Multivector transform(const Multivector& a, const Matrix6cd& map) { return Substitution(map).apply(a); }
Multivector transform(const Multivector& a, const Matrix6d& map) { return Substitution(map).apply(a); }

Eigen::VectorXcd grade_coordinates(const Multivector& a, int k) {
  const auto masks = masks_of_grade(k);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(masks.size()));
  for (std::size_t i = 0; i < masks.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[masks[i]];
  return v;
}

Multivector from_grade_coordinates(const Eigen::VectorXcd& v, int k) {
  const auto masks = masks_of_grade(k);
  if (static_cast<std::size_t>(v.size()) != masks.size())
    throw InvalidInput("coordinate vector has the wrong length for grade " + std::to_string(k));
  Multivector out;
  for (std::size_t i = 0; i < masks.size(); ++i) out.set(masks[i], v(static_cast<Eigen::Index>(i)));
  out.canonicalize();
  return out;
}

Vector6cd one_form_coordinates(const Multivector& a) {
  Vector6cd v;
  for (int i = 0; i < kDim; ++i) v(i) = a[1u << i];
  return v;
}

Multivector one_form(const Vector6cd& v) {
  Multivector out;
  for (int i = 0; i < kDim; ++i) out.set(1u << i, v(i));
  out.canonicalize();
  return out;
}

Multivector one_form(const Vector6d& v) { return one_form(Vector6cd(v.cast<Complex>())); }

Multivector two_form(const Matrix6d& skew) {
  Multivector out;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) out.set((1u << i) | (1u << j), skew(i, j));
  out.canonicalize();
  return out;
}

Matrix6d skew_matrix(const Multivector& a) {
  Matrix6d w = Matrix6d::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      w(i, j) = a[(1u << i) | (1u << j)].real();
      w(j, i) = -w(i, j);
    }
  return w;
}

namespace {
std::string mask_label(unsigned m) {
  if (m == 0) return "";
  std::string s = "e";
  for (unsigned r = m; r != 0; r &= r - 1) s += static_cast<char>('1' + std::countr_zero(r));
  return s;
}
}  // namespace

std::string to_string(const Multivector& a, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  bool first = true;
  for (int k = 0; k <= kDim; ++k) {
    for (unsigned m : masks_of_grade(k)) {
      const Complex c = a[m];
      if (c == Complex(0.0)) continue;
      const std::string label = mask_label(m);
      if (std::abs(c.imag()) < kCoefficientFloor) {
        double r = c.real();
        os << (first ? (r < 0 ? "-" : "") : (r < 0 ? " - " : " + "));
        r = std::abs(r);
        if (r != 1.0 || label.empty()) os << r << (label.empty() ? "" : " ");
      } else {
        os << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "-" : "+")
           << std::abs(c.imag()) << "i)" << (label.empty() ? "" : " ");
      }
      os << label;
      first = false;
    }
  }
  return first ? "0" : os.str();
}

std::string to_string(const RationalForm& a) {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= kDim; ++k) {
    for (unsigned m : masks_of_grade(k)) {
      Rational c = a[m];
      if (c.numerator() == 0) continue;
      const bool neg = c.numerator() < 0;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (neg) c = -c;
      const std::string label = mask_label(m);
      if (c != Rational(1) || label.empty()) {
        os << c.numerator();
        if (c.denominator() != 1) os << "/" << c.denominator();
        if (!label.empty()) os << " ";
      }
      os << label;
      first = false;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace nilherm

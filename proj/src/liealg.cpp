#include "nilherm/liealg.hpp"

#include <algorithm>

#include "echelon.hpp"

namespace nilherm {
namespace {

template <class S>
BasicMultivector<S> leibniz(const std::array<BasicMultivector<S>, 6>& dgen, const BasicMultivector<S>& a) {
  BasicMultivector<S> out;
  for (unsigned mask = 1; mask < kBasisCount; ++mask) {
    if (detail::negligible(a[mask])) continue;
    int position = 0;
    for (unsigned rest = mask; rest != 0; rest &= rest - 1, ++position) {
      const int i = std::countr_zero(rest);
      const unsigned before = mask & ((1u << i) - 1u);
      const unsigned after = mask & ~((1u << (i + 1)) - 1u);
      BasicMultivector<S> term =
          wedge(wedge(BasicMultivector<S>::basis(before), dgen[static_cast<std::size_t>(i)]),
                BasicMultivector<S>::basis(after));
      const S sign = (position % 2 != 0) ? S(-1) : S(1);
      out += term * (sign * a[mask]);
    }
  }
  return out;
}

void check_degree_two(const Multivector& f, int i) {
  const auto deg = f.degree();
  if (deg && *deg != 2)
    throw InvalidInput("d e^" + std::to_string(i + 1) + " must be a 2-form");
}

/// 2-form coordinates (lexicographic pairs) of d e^i as rows of a 6 × 15 table.
template <class T>
detail::DenseMatrix<T> generator_table(const LieAlgebra& algebra);

template <>
detail::DenseMatrix<Rational> generator_table<Rational>(const LieAlgebra& algebra) {
  detail::DenseMatrix<Rational> rows;
  for (const auto& f : *algebra.exact_generators()) {
    std::vector<Rational> row;
    for (unsigned m : masks_of_grade(2)) row.push_back(f[m]);
    rows.push_back(std::move(row));
  }
  return rows;
}

template <>
detail::DenseMatrix<double> generator_table<double>(const LieAlgebra& algebra) {
  detail::DenseMatrix<double> rows;
  for (int i = 0; i < kDim; ++i) {
    std::vector<double> row;
    for (unsigned m : masks_of_grade(2)) row.push_back(algebra.d_generator(i)[m].real());
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
std::vector<T> wedge_coordinates(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j)
      out.push_back(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                    a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)]);
  return out;
}

/// Ascending filtration V₁ ⊂ V₂ ⊂ ... of g*, each level in echelon rows.
template <class T>
std::vector<detail::DenseMatrix<T>> filtration(const LieAlgebra& algebra) {
  const auto table = generator_table<T>(algebra);
  std::vector<detail::DenseMatrix<T>> levels;
  detail::DenseMatrix<T> current;
  for (int step = 1; step <= kDim; ++step) {
    std::vector<std::vector<T>> wedges;
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b)
        wedges.push_back(wedge_coordinates(current[a], current[b]));
    // Unknowns (x, y): Σ x_i d e^i − Σ y_w w = 0.
    const std::size_t ncols = kDim + wedges.size();
    detail::DenseMatrix<T> system(15, std::vector<T>(ncols, T(0)));
    for (std::size_t r = 0; r < 15; ++r) {
      for (std::size_t i = 0; i < kDim; ++i) system[r][i] = table[i][r];
      for (std::size_t w = 0; w < wedges.size(); ++w) system[r][kDim + w] = -wedges[w][r];
    }
    detail::DenseMatrix<T> spanning;
    for (auto& v : detail::nullspace(system, ncols)) {
      v.resize(kDim);
      spanning.push_back(std::move(v));
    }
    auto next = detail::rref(spanning);
    if (next.rank() <= static_cast<int>(current.size())) break;
    current = next.rows;
    levels.push_back(current);
    if (next.rank() == kDim) break;
  }
  return levels;
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::array<RationalForm, 6> d, Gram gram, Distinguished distinguished)
    : name_(std::move(name)), gram_(std::move(gram)), distinguished_(distinguished), exact_(std::move(d)) {
  for (int i = 0; i < kDim; ++i) {
    d_[static_cast<std::size_t>(i)] = to_complex((*exact_)[static_cast<std::size_t>(i)]);
    check_degree_two(d_[static_cast<std::size_t>(i)], i);
  }
  build_operator();
}

LieAlgebra LieAlgebra::from_forms(std::string name, std::array<Multivector, 6> d, Gram gram,
                                  Distinguished distinguished) {
  LieAlgebra out;
  out.name_ = std::move(name);
  out.gram_ = std::move(gram);
  out.distinguished_ = distinguished;
  for (int i = 0; i < kDim; ++i) {
    check_degree_two(d[static_cast<std::size_t>(i)], i);
    out.d_[static_cast<std::size_t>(i)] = grade(d[static_cast<std::size_t>(i)], 2);
  }
  out.build_operator();
  return out;
}

void LieAlgebra::build_operator() {
  for (int k = 0; k < kDim; ++k) {
    const auto src = masks_of_grade(k);
    auto& mat = d_matrix_[static_cast<std::size_t>(k)];
    mat = Eigen::MatrixXcd::Zero(grade_dimension(k + 1), grade_dimension(k));
    for (std::size_t c = 0; c < src.size(); ++c) {
      const Multivector image = leibniz(d_, Multivector::basis(src[c]));
      for (unsigned m : masks_of_grade(k + 1)) mat(index_in_grade(m), static_cast<Eigen::Index>(c)) = image[m];
    }
  }
  bracket_.fill(0.0);
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        const double c = d_[static_cast<std::size_t>(k)][(1u << i) | (1u << j)].real();
        bracket_[static_cast<std::size_t>((i * kDim + j) * kDim + k)] = -c;
        bracket_[static_cast<std::size_t>((j * kDim + i) * kDim + k)] = c;
      }
}

Multivector LieAlgebra::d(const Multivector& a) const {
  Multivector out;
  for (int k = 0; k < kDim; ++k) {
    const Eigen::VectorXcd v = grade_coordinates(a, k);
    if (v.isZero(0.0)) continue;
    out += from_grade_coordinates(d_matrix_[static_cast<std::size_t>(k)] * v, k + 1);
  }
  return out;
}

RationalForm LieAlgebra::d(const RationalForm& a) const {
  if (!exact_) throw InvalidInput("algebra '" + name_ + "' has no exact structure constants");
  return leibniz(*exact_, a);
}

LieAlgebra LieAlgebra::with_gram(Gram gram) const {
  LieAlgebra out = *this;
  out.gram_ = std::move(gram);
  return out;
}

LieAlgebra LieAlgebra::orthonormal_model() const {
  if (gram_.is_identity()) return *this;
  std::array<Multivector, 6> df;
  const Matrix6d& c = gram_.coframe();
  for (int a = 0; a < kDim; ++a) {
    Multivector sum;
    for (int i = 0; i < kDim; ++i)
      if (c(a, i) != 0.0) sum += d_[static_cast<std::size_t>(i)] * Complex(c(a, i));
    df[static_cast<std::size_t>(a)] = real_part(gram_.to_orthonormal(sum));
  }
  return from_forms(name_ + " (orthonormal frame)", df, Gram::identity(), distinguished_);
}

Multivector d(const LieAlgebra& algebra, const Multivector& a) { return algebra.d(a); }

bool satisfies_jacobi(const LieAlgebra& algebra, double tol) {
  if (const auto& exact = algebra.exact_generators()) {
    for (const auto& f : *exact)
      if (!algebra.d(f).is_zero()) return false;
    return true;
  }
  for (int i = 0; i < kDim; ++i)
    if (max_abs(algebra.d(algebra.d_generator(i))) > tol) return false;
  return true;
}

namespace {

template <class T>
detail::DenseMatrix<T> grade_operator(const LieAlgebra& algebra, int k);

template <>
detail::DenseMatrix<Rational> grade_operator<Rational>(const LieAlgebra& algebra, int k) {
  const auto src = masks_of_grade(k);
  detail::DenseMatrix<Rational> m(static_cast<std::size_t>(grade_dimension(k + 1)),
                                  std::vector<Rational>(src.size(), Rational(0)));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const RationalForm image = algebra.d(RationalForm::basis(src[c]));
    for (unsigned mask : masks_of_grade(k + 1)) m[static_cast<std::size_t>(index_in_grade(mask))][c] = image[mask];
  }
  return m;
}

template <>
detail::DenseMatrix<double> grade_operator<double>(const LieAlgebra& algebra, int k) {
  const auto src = masks_of_grade(k);
  detail::DenseMatrix<double> m(static_cast<std::size_t>(grade_dimension(k + 1)),
                                std::vector<double>(src.size(), 0.0));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const Multivector image = algebra.d(Multivector::basis(src[c]));
    for (unsigned mask : masks_of_grade(k + 1))
      m[static_cast<std::size_t>(index_in_grade(mask))][c] = image[mask].real();
  }
  return m;
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }
double to_double(double x) { return x; }

template <class T>
Multivector form_from_row(const std::vector<T>& row, int k) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(row.size()));
  for (std::size_t i = 0; i < row.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(row[i]);
  return from_grade_coordinates(v, k);
}

template <class T>
CohomologyProfile compute_cohomology(const LieAlgebra& algebra) {
  CohomologyProfile out;
  std::array<int, kDim + 1> ranks{};  // rank of d on Λ^k
  std::array<detail::DenseMatrix<T>, kDim> ops;
  for (int k = 0; k < kDim; ++k) {
    ops[static_cast<std::size_t>(k)] = grade_operator<T>(algebra, k);
    ranks[static_cast<std::size_t>(k)] = detail::rank(ops[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k <= kDim; ++k) {
    const int incoming = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    out.betti[static_cast<std::size_t>(k)] = grade_dimension(k) - ranks[static_cast<std::size_t>(k)] - incoming;
  }
  for (const auto& v : detail::rref(detail::nullspace(ops[1], kDim)).rows) out.kernel_basis.push_back(form_from_row(v, 1));
  // Image of d on 1-forms: row space of the transpose.
  detail::DenseMatrix<T> columns(kDim, std::vector<T>(15, T(0)));
  for (std::size_t r = 0; r < 15; ++r)
    for (std::size_t c = 0; c < kDim; ++c) columns[c][r] = ops[1][r][c];
  for (const auto& v : detail::rref(columns).rows) out.image_basis.push_back(form_from_row(v, 2));
  return out;
}

}  // namespace

CohomologyProfile cohomology(const LieAlgebra& algebra) {
  if (!satisfies_jacobi(algebra)) throw InvalidInput("d∘d ≠ 0: '" + algebra.name() + "' is not a Lie algebra");
  CohomologyProfile out = algebra.is_exact() ? compute_cohomology<Rational>(algebra)
                                             : compute_cohomology<double>(algebra);
  out.step = nilpotency_step(algebra);
  return out;
}

namespace {

template <class T>
std::optional<int> step_from_levels(const std::vector<detail::DenseMatrix<T>>& levels) {
  if (levels.empty() || static_cast<int>(levels.back().size()) != kDim) return std::nullopt;
  return static_cast<int>(levels.size());
}

}  // namespace

std::optional<int> nilpotency_step(const LieAlgebra& algebra) {
  if (algebra.is_exact()) return step_from_levels(filtration<Rational>(algebra));
  return step_from_levels(filtration<double>(algebra));
}

namespace {

template <class T>
std::optional<Matrix6d> adapted_from_levels(const std::vector<detail::DenseMatrix<T>>& levels) {
  if (levels.empty() || static_cast<int>(levels.back().size()) != kDim) return std::nullopt;
  detail::DenseMatrix<T> basis;
  for (const auto& level : levels) {
    for (const auto& row : level) {
      auto trial = basis;
      trial.push_back(row);
      if (detail::rank(trial) > static_cast<int>(basis.size())) basis = std::move(trial);
    }
  }
  Matrix6d out;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      out(r, c) = to_double(basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace

std::optional<Matrix6d> adapted_basis(const LieAlgebra& algebra) {
  if (algebra.is_exact()) return adapted_from_levels(filtration<Rational>(algebra));
  return adapted_from_levels(filtration<double>(algebra));
}

Multivector conjugated_d(const LieAlgebra& algebra, const SO4Element& p, const Multivector& a) {
  const Matrix6d forward = p.embed(algebra.distinguished());
  return transform(algebra.d(transform(a, forward)), Matrix6d(forward.transpose()));
}

LieAlgebra conjugated(const LieAlgebra& algebra, const SO4Element& p) {
  const Matrix6d forward = p.embed(algebra.distinguished());
  const Substitution back{Matrix6d(forward.transpose())};
  std::array<Multivector, 6> dp;
  for (int i = 0; i < kDim; ++i) {
    const Multivector moved = transform(Multivector::generator(i), forward);
    dp[static_cast<std::size_t>(i)] = real_part(back.apply(algebra.d(moved)));
  }
  return LieAlgebra::from_forms(algebra.name() + " (conjugated)", dp, algebra.gram(), algebra.distinguished());
}

}  // namespace nilherm

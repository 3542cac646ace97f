#pragma once

// Generators and brute-force oracles shared by the unit tests. The oracles
// work on dense alternating tensors and hand-typed structure constants, so
// they share no code paths with the library beyond the Multivector container.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nilherm/exterior.hpp"
#include "nilherm/hermitian.hpp"
#include "nilherm/liealg.hpp"
#include "nilherm/moduli.hpp"
#include "nilherm/so4.hpp"

namespace oracle {

using nilherm::Complex;
using nilherm::Matrix6d;
using nilherm::Multivector;
using Tuple = std::vector<int>;

// ---------------------------------------------------------------------------
// Permutations

/// Sign of the permutation that sorts `t` (entries distinct), via cycles.
inline int parity(const Tuple& t) {
  const int n = static_cast<int>(t.size());
  Tuple order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a] < t[b]; });
  std::vector<bool> seen(t.size(), false);
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = order[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Levi-Civita symbol on zero-based indices; 0 on repeats.
inline int levi_civita(const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return 0;
  return parity(t);
}

inline unsigned mask_of(const Tuple& t) {
  unsigned m = 0;
  for (int i : t) m |= 1u << i;
  return m;
}

inline Tuple tuple_of(unsigned mask) {
  Tuple t;
  for (int i = 0; i < 6; ++i)
    if (mask & (1u << i)) t.push_back(i);
  return t;
}

inline std::vector<unsigned> masks(int k) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < 64; ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Dense alternating tensors

struct Tensor {
  int k = 0;
  std::vector<Complex> v;

  explicit Tensor(int degree) : k(degree), v(static_cast<std::size_t>(std::pow(6, degree)), 0.0) {}

  static std::size_t flat(const Tuple& t) {
    std::size_t idx = 0;
    for (int i : t) idx = idx * 6 + static_cast<std::size_t>(i);
    return idx;
  }
  Complex& at(const Tuple& t) { return v[flat(t)]; }
  Complex at(const Tuple& t) const { return v[flat(t)]; }
};

/// Calls f(tuple) for every ordered k-tuple over {0..5}.
template <class F>
void for_each_tuple(int k, F&& f) {
  Tuple t(static_cast<std::size_t>(k), 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(6, k));
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t r = n;
    for (int i = k - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(r % 6);
      r /= 6;
    }
    f(t);
  }
}

inline Tensor to_tensor(const Multivector& a, int k) {
  Tensor out(k);
  for_each_tuple(k, [&](const Tuple& t) {
    const int s = levi_civita(t);
    if (s != 0) out.at(t) = static_cast<double>(s) * a[mask_of(t)];
  });
  return out;
}

inline Multivector from_tensor(const Tensor& t) {
  Multivector out;
  for (unsigned m : masks(t.k)) out.set(m, t.at(tuple_of(m)));
  return out;
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// (α∧β)(v₁..v_{p+q}) = 1/(p!q!) Σ_σ sgn σ α(v_σ…) β(v_σ…), on basis vectors.
inline Multivector wedge(const Multivector& a, int p, const Multivector& b, int q) {
  const Tensor ta = to_tensor(a, p), tb = to_tensor(b, q);
  Multivector out;
  for (unsigned m : masks(p + q)) {
    const Tuple base = tuple_of(m);
    Tuple perm(base.size());
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0.0;
    do {
      Tuple first, second;
      for (int i = 0; i < p; ++i) first.push_back(base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      for (int i = p; i < p + q; ++i) second.push_back(base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      sum += static_cast<double>(parity(perm)) * ta.at(first) * tb.at(second);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.set(m, sum / (factorial(p) * factorial(q)));
  }
  return out;
}

/// *e^I = ε(I, I^c) e^{I^c} in an orthonormal, positively oriented coframe.
inline Multivector star(const Multivector& a, int k) {
  Multivector out;
  for (unsigned m : masks(k)) {
    Tuple joined = tuple_of(m);
    const Tuple rest = tuple_of(63u & ~m);
    joined.insert(joined.end(), rest.begin(), rest.end());
    out.add(63u & ~m, static_cast<double>(levi_civita(joined)) * a[m]);
  }
  return out;
}

/// Induced inner product for the metric G on vectors: ⟨e^I, e^J⟩ = det (G⁻¹)_{IJ}.
inline Complex inner(const Multivector& a, const Multivector& b, int k, const Matrix6d& gram) {
  const Matrix6d h = gram.inverse();
  Complex sum = 0.0;
  for (unsigned mi : masks(k)) {
    if (a[mi] == Complex(0.0)) continue;
    for (unsigned mj : masks(k)) {
      if (b[mj] == Complex(0.0)) continue;
      const Tuple ti = tuple_of(mi), tj = tuple_of(mj);
      Eigen::MatrixXd sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = h(ti[static_cast<std::size_t>(r)], tj[static_cast<std::size_t>(c)]);
      sum += a[mi] * std::conj(b[mj]) * (k == 0 ? 1.0 : sub.determinant());
    }
  }
  return sum;
}

/// Pushes a k-form through e^i ↦ Σ_j M(j, i) e^j, tensor index by index.
inline Multivector push(const Multivector& a, int k, const Eigen::Matrix<Complex, 6, 6>& m) {
  Tensor t = to_tensor(a, k);
  for (int slot = 0; slot < k; ++slot) {
    Tensor next(k);
    for_each_tuple(k, [&](const Tuple& tup) {
      const Complex c = t.at(tup);
      if (c == Complex(0.0)) return;
      Tuple moved = tup;
      for (int j = 0; j < 6; ++j) {
        moved[static_cast<std::size_t>(slot)] = j;
        next.at(moved) += m(j, tup[static_cast<std::size_t>(slot)]) * c;
      }
    });
    t = next;
  }
  return from_tensor(t);
}

inline double magnitude(const Multivector& a) {
  double s = 0.0;
  for (unsigned m = 0; m < 64; ++m) s += std::norm(a[m]);
  return std::sqrt(s);
}

inline double distance(const Multivector& a, const Multivector& b) { return magnitude(a - b); }

// ---------------------------------------------------------------------------
// Lie algebras from hand-typed structure equations

/// A term coeff·e^{ij} of d e^k; indices one-based as printed.
struct Term {
  int k, i, j;
  double coeff;
};

struct Structure {
  /// c[i][j][k]: [e_i, e_j] = Σ_k c e_k, from dξ(X, Y) = −ξ([X, Y]).
  double c[6][6][6] = {};

  explicit Structure(const std::vector<Term>& terms) {
    for (const auto& t : terms) {
      c[t.i - 1][t.j - 1][t.k - 1] -= t.coeff;
      c[t.j - 1][t.i - 1][t.k - 1] += t.coeff;
    }
  }

  Eigen::Matrix<double, 6, 1> bracket(const Eigen::Matrix<double, 6, 1>& x, const Eigen::Matrix<double, 6, 1>& y) const {
    Eigen::Matrix<double, 6, 1> out = Eigen::Matrix<double, 6, 1>::Zero();
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) out(k) += x(i) * y(j) * c[i][j][k];
    return out;
  }
};

inline Structure abelian() { return Structure({}); }
inline Structure iwasawa() { return Structure({{5, 1, 3, 1}, {5, 4, 2, 1}, {6, 1, 4, 1}, {6, 2, 3, 1}}); }
inline Structure g2() { return Structure({{5, 1, 2, 1}, {6, 1, 4, 1}, {6, 2, 3, 1}}); }
inline Structure g3() { return Structure({{5, 1, 2, 1}, {6, 1, 5, 1}, {6, 3, 4, 1}}); }

/// dα(X₀..X_k) = Σ_{i<j} (−1)^{i+j} α([X_i, X_j], X₀..X̂_i..X̂_j..X_k).
inline Multivector d(const Structure& s, const Multivector& a, int k) {
  const Tensor t = to_tensor(a, k);
  Multivector out;
  for (unsigned m : masks(k + 1)) {
    const Tuple x = tuple_of(m);
    Complex sum = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        Tuple rest;
        for (int r = 0; r <= k; ++r)
          if (r != i && r != j) rest.push_back(x[static_cast<std::size_t>(r)]);
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        for (int l = 0; l < 6; ++l) {
          const double c = s.c[x[static_cast<std::size_t>(i)]][x[static_cast<std::size_t>(j)]][l];
          if (c == 0.0) continue;
          Tuple args{l};
          args.insert(args.end(), rest.begin(), rest.end());
          sum += sign * c * t.at(args);
        }
      }
    out.set(m, sum);
  }
  return out;
}

/// Betti numbers from ranks of the oracle differential.
inline std::array<int, 7> betti(const Structure& s) {
  std::array<int, 7> rank{};
  for (int k = 0; k < 6; ++k) {
    const auto src = masks(k), dst = masks(k + 1);
    Eigen::MatrixXd m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const Multivector image = d(s, Multivector::basis(src[c]), k);
      for (std::size_t r = 0; r < dst.size(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = image[dst[r]].real();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    rank[static_cast<std::size_t>(k)] = static_cast<int>(lu.rank());
  }
  std::array<int, 7> b{};
  for (int k = 0; k <= 6; ++k) {
    const int dim = static_cast<int>(masks(k).size());
    const int out_rank = k < 6 ? rank[static_cast<std::size_t>(k)] : 0;
    const int in_rank = k > 0 ? rank[static_cast<std::size_t>(k - 1)] : 0;
    b[static_cast<std::size_t>(k)] = dim - out_rank - in_rank;
  }
  return b;
}

/// Lowered Nijenhuis tensor g(N(e_i, e_j), e_k) with vector action Jv.
inline std::array<double, 216> nijenhuis(const Structure& s, const Matrix6d& jv) {
  std::array<double, 216> out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Eigen::Matrix<double, 6, 1> x = Eigen::Matrix<double, 6, 1>::Unit(i), y = Eigen::Matrix<double, 6, 1>::Unit(j);
      const Eigen::Matrix<double, 6, 1> jx = jv * x, jy = jv * y;
      const Eigen::Matrix<double, 6, 1> n =
          s.bracket(jx, jy) - s.bracket(x, y) - jv * s.bracket(jx, y) - jv * s.bracket(x, jy);
      for (int k = 0; k < 6; ++k) out[static_cast<std::size_t>((i * 6 + j) * 6 + k)] = n(k);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Type decomposition by averaging over the circle t ↦ exp(tJ)

/// (p,q) part of a k-form: (1/N) Σ e^{−i(p−q)t} exp(tJ)·α, since exp(tJ) acts
/// on (p,q)-forms by e^{i(p−q)t}.
inline Multivector pq(const Multivector& a, int k, const Matrix6d& jm, int p, int q) {
  if (p + q != k) return Multivector();
  constexpr int n = 16;
  Multivector out;
  for (int s = 0; s < n; ++s) {
    const double t = 2.0 * M_PI * s / n;
    const Eigen::Matrix<Complex, 6, 6> r =
        (std::cos(t) * Matrix6d::Identity() + std::sin(t) * jm).cast<Complex>();
    out += push(a, k, r) * (std::polar(1.0, -(p - q) * t) / static_cast<double>(n));
  }
  return out;
}

struct Norms {
  std::array<double, 4> w{};
};

/// w1..w4 from the oracle differential, type averaging and least squares.
inline Norms gh_norms(const Structure& s, const nilherm::AlmostComplexStructure& j) {
  const Matrix6d jm = j.matrix();
  const Multivector omega = nilherm::two_form(jm);
  const Multivector dw = d(s, omega, 2);
  Norms out;
  out.w[0] = magnitude(pq(dw, 3, jm, 3, 0) + pq(dw, 3, jm, 0, 3));

  const auto n = nijenhuis(s, j.vector_action());
  double dev = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        auto at = [&](int x, int y, int z) { return n[static_cast<std::size_t>((x * 6 + y) * 6 + z)]; };
        const double alt = (at(a, b, c) + at(b, c, a) + at(c, a, b)) / 3.0;
        dev += std::pow(at(a, b, c) - alt, 2);
      }
  out.w[1] = std::sqrt(dev);

  const Multivector mixed = pq(dw, 3, jm, 2, 1) + pq(dw, 3, jm, 1, 2);
  const auto m3 = masks(3);
  Eigen::MatrixXcd lee(static_cast<Eigen::Index>(m3.size()), 6);
  Eigen::VectorXcd target(static_cast<Eigen::Index>(m3.size()));
  for (int i = 0; i < 6; ++i) {
    const Multivector col = wedge(Multivector::generator(i), 1, omega, 2);
    for (std::size_t r = 0; r < m3.size(); ++r) lee(static_cast<Eigen::Index>(r), i) = col[m3[r]];
  }
  for (std::size_t r = 0; r < m3.size(); ++r) target(static_cast<Eigen::Index>(r)) = mixed[m3[r]];
  const Eigen::VectorXcd theta = lee.colPivHouseholderQr().solve(target);
  out.w[2] = (target - lee * theta).norm();

  out.w[3] = magnitude(wedge(dw, 3, omega, 2));
  return out;
}

}  // namespace oracle

namespace gen {

using nilherm::Complex;
using nilherm::Multivector;
using Rng = std::mt19937_64;

inline Rng rng(std::uint64_t seed) { return Rng(seed * 0x9E3779B97F4A7C15ull + 12345u); }

inline double gauss(Rng& r) { return std::normal_distribution<double>()(r); }

inline Multivector form(Rng& r, int k, bool real = false) {
  Multivector out;
  for (unsigned m : oracle::masks(k)) out.set(m, real ? Complex(gauss(r)) : Complex(gauss(r), gauss(r)));
  return out;
}

/// Mixed-degree element.
inline Multivector any(Rng& r) {
  Multivector out;
  for (unsigned m = 0; m < 64; ++m)
    if (std::uniform_int_distribution<int>(0, 2)(r) == 0) out.set(m, Complex(gauss(r), gauss(r)));
  return out;
}

inline nilherm::Matrix6d spd(Rng& r) {
  nilherm::Matrix6d a;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = gauss(r);
  return a * a.transpose() / 6.0 + 0.3 * nilherm::Matrix6d::Identity();
}

inline nilherm::SO4Element so4(Rng& r) {
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = gauss(r);
  Eigen::HouseholderQR<Eigen::Matrix4d> qr(a);
  Eigen::Matrix4d q = qr.householderQ();
  const Eigen::Matrix4d rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 4; ++i)
    if (rr(i, i) < 0) q.col(i) = -q.col(i);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return nilherm::SO4Element(q);
}

inline nilherm::Cp3Point cp3(Rng& r) {
  std::array<Complex, 4> u;
  for (auto& z : u) z = Complex(gauss(r), gauss(r));
  return nilherm::Cp3Point::normalized(u);
}

inline nilherm::AlmostComplexStructure J(Rng& r) { return nilherm::from_cp3(cp3(r)); }

}  // namespace gen

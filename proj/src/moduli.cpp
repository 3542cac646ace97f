#include "nilherm/moduli.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace nilherm {
namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pair_index(int a, int b) {
  for (int p = 0; p < 6; ++p)
    if (kPairs[static_cast<std::size_t>(p)][0] == a && kPairs[static_cast<std::size_t>(p)][1] == b) return p;
  return -1;
}

/// Columns: v^{01}, v^{02}, v^{03}, v^{12}, v^{13}, v^{23} in e-coordinates.
const Matrix6cd& pair_vectors() {
  static const Matrix6cd v = [] {
    const Complex i(0.0, 1.0);
    Matrix6cd m = Matrix6cd::Zero();
    m(0, 0) = 0.5; m(1, 0) = 0.5 * i;    // 2v^{01} = e¹ + ie²
    m(2, 1) = 0.5; m(3, 1) = 0.5 * i;    // 2v^{02} = e³ + ie⁴
    m(4, 2) = 0.5; m(5, 2) = 0.5 * i;    // 2v^{03} = e⁵ + ie⁶
    m(4, 3) = 0.5; m(5, 3) = -0.5 * i;   // 2v^{12} = e⁵ − ie⁶
    m(2, 4) = -0.5; m(3, 4) = 0.5 * i;   // 2v^{31} = e³ − ie⁴
    m(0, 5) = 0.5; m(1, 5) = -0.5 * i;   // 2v^{23} = e¹ − ie²
    return m;
  }();
  return v;
}

const Matrix6cd& pair_coordinates() {
  static const Matrix6cd inv = pair_vectors().inverse();
  return inv;
}

Vector6cd pair_vector(int a, int b) {
  if (a == b) return Vector6cd::Zero();
  if (a < b) return pair_vectors().col(pair_index(a, b));
  return -pair_vectors().col(pair_index(b, a));
}

std::array<Complex, 4> gaussian4(Rng& rng) {
  std::normal_distribution<double> n;
  std::array<Complex, 4> u;
  for (auto& z : u) z = Complex(n(rng), n(rng));
  return u;
}

Vector6d gaussian_d(Rng& rng) {
  std::normal_distribution<double> n;
  Vector6d v = Vector6d::Zero();
  for (int i = 0; i < 4; ++i) v(i) = n(rng);
  return v;
}

Multivector form_of(const Vector6d& v) { return one_form(v); }

/// (J₃c) = (−c₂, c₁, −c₄, c₃) on D.
Vector6d j3(const Vector6d& c) {
  Vector6d out = Vector6d::Zero();
  out(0) = -c(1);
  out(1) = c(0);
  out(2) = -c(3);
  out(3) = c(2);
  return out;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidInput("expected an integer, got '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw InvalidInput("");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("expected a number, got '" + std::string(s) + "'");
  }
}

void check_vertex_index(int i) {
  if (i < 0 || i > 3) throw InvalidInput("vertex index must be 0..3");
}

std::pair<int, int> parse_pair(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw InvalidInput("expected two indices 'i,j', got '" + std::string(s) + "'");
  int i = parse_int(s.substr(0, comma)), j = parse_int(s.substr(comma + 1));
  check_vertex_index(i);
  check_vertex_index(j);
  if (i == j) throw InvalidInput("edge indices must differ");
  if (i > j) std::swap(i, j);
  return {i, j};
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Cp3Point Cp3Point::normalized(const std::array<Complex, 4>& u) {
  double n = 0.0;
  for (const auto& z : u) n += std::norm(z);
  n = std::sqrt(n);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("CP³ point must be a non-zero finite vector");
  Cp3Point out;
  Complex phase(1.0, 0.0);
  for (const auto& z : u)
    if (std::abs(z) / n > 1e-8) {
      phase = std::conj(z) / std::abs(z);
      break;
    }
  for (std::size_t i = 0; i < 4; ++i) out.u[i] = u[i] * phase / n;
  for (auto& z : out.u)
    if (std::abs(z) > 1e-8) {
      z = Complex(std::abs(z), 0.0);
      break;
    }
  return out;
}

double Cp3Point::distance(const Cp3Point& other) const {
  Complex overlap(0.0, 0.0);
  for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(u[i]) * other.u[i];
  // ‖v − ⟨u, v⟩u‖ equals √(1 − |⟨u, v⟩|²) but keeps precision near zero
  double residual = 0.0;
  for (std::size_t i = 0; i < 4; ++i) residual += std::norm(other.u[i] - overlap * u[i]);
  return std::sqrt(residual);
}

AlmostComplexStructure from_cp3(const Cp3Point& point) {
  const Cp3Point p = Cp3Point::normalized(point.u);
  Eigen::Matrix<Complex, 6, 4> w = Eigen::Matrix<Complex, 6, 4>::Zero();
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) w.col(k) += p.u[static_cast<std::size_t>(i)] * pair_vector(i, k);
  const Eigen::JacobiSVD<Eigen::Matrix<Complex, 6, 4>> svd(w, Eigen::ComputeThinU);
  const Eigen::Matrix<Complex, 6, 3> basis = svd.matrixU().leftCols<3>();
  const Matrix6cd projector = basis * basis.adjoint();
  return AlmostComplexStructure::from_matrix(Matrix6d(-2.0 * projector.imag()), 1e-8);
}

Cp3Point cp3_from_J(const AlmostComplexStructure& j) {
  if (!j.positively_oriented())
    throw NotInModuli("almost complex structure has the wrong orientation and corresponds to no point of CP³");
  const UnitaryCoframe coframe = unitary_coframe(j);
  Eigen::Matrix<Complex, 12, 4> system = Eigen::Matrix<Complex, 12, 4>::Zero();
  constexpr std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  for (int m = 0; m < 3; ++m) {
    const Vector6cd b = pair_coordinates() * coframe.basis.col(m);
    auto at = [&](int x, int y) { return b(pair_index(x, y)); };
    for (int t = 0; t < 4; ++t) {
      const auto [p, q, r] = triples[static_cast<std::size_t>(t)];
      const int row = 4 * m + t;
      system(row, p) += at(q, r);
      system(row, q) -= at(p, r);
      system(row, r) += at(p, q);
    }
  }
  const Eigen::JacobiSVD<Eigen::Matrix<Complex, 12, 4>> svd(system, Eigen::ComputeFullV);
  if (svd.singularValues()(3) > 1e-6 * std::max(1.0, svd.singularValues()(0)))
    throw NotInModuli("(1,0)-space is not of the form {u ∧ v}");
  const Eigen::Matrix<Complex, 4, 1> u = svd.matrixV().col(3);
  return Cp3Point::normalized({u(0), u(1), u(2), u(3)});
}

Multivector omega_from_cp3(const Cp3Point& u) { return omega_from_J(from_cp3(u)); }

Cp3Point cp3_from_omega(const Multivector& omega) { return cp3_from_J(J_from_omega(omega)); }

Multivector omega_pab(const SO4Element& p, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a * a + b * b - 1.0) > 1e-12)
    throw InvalidInput("(a, b) must lie on the unit circle");
  const Matrix6d m = p.embed();
  std::array<Multivector, 4> f;
  for (int i = 0; i < 4; ++i) f[static_cast<std::size_t>(i)] = one_form(Vector6d(m.col(i)));
  const Multivector e5 = Multivector::generator(4), e6 = Multivector::generator(5);
  const Multivector out = wedge(e5, e6 * Complex(a) + f[0] * Complex(b)) -
                          wedge(f[1], f[0] * Complex(a) - e6 * Complex(b)) + wedge(f[2], f[3]);
  return real_part(out);
}

Cp3Point sample_cp3(Rng& rng) { return Cp3Point::normalized(gaussian4(rng)); }

SO4Element sample_so4(Rng& rng) {
  std::normal_distribution<double> n;
  Quaternion l, r;
  for (int i = 0; i < 4; ++i) l(i) = n(rng);
  for (int i = 0; i < 4; ++i) r(i) = n(rng);
  return SO4Element::from_quaternions(l, r);
}

std::pair<double, double> sample_circle(Rng& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const double phi = angle(rng);
  return {std::cos(phi), std::sin(phi)};
}

Multivector vertex(int i) {
  check_vertex_index(i);
  static const std::array<std::array<double, 3>, 4> signs{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  const auto& s = signs[static_cast<std::size_t>(i)];
  return e("12") * Complex(s[0]) + e("34") * Complex(s[1]) + e("56") * Complex(s[2]);
}

Multivector pi_vertex(int i) {
  Matrix6d rotation = Matrix6d::Identity();
  rotation(1, 1) = 0.0;
  rotation(4, 4) = 0.0;
  rotation(4, 1) = -1.0;  // e² ↦ −e⁵
  rotation(1, 4) = 1.0;   // e⁵ ↦ e²
  return real_part(transform(vertex(i), rotation));
}

Multivector epsilon(double theta) {
  return e("56") + (e("13") - e("24")) * Complex(std::cos(theta)) + (e("14") + e("23")) * Complex(std::sin(theta));
}

Multivector circle_point(double phi, bool primed) {
  const Complex a(std::cos(phi)), b(std::sin(phi));
  auto g = [](int i) { return Multivector::generator(i - 1); };
  const Multivector first = wedge(g(3) * a + g(4) * b, g(5));
  const Multivector second = wedge(g(1) * a - g(2) * b, g(6));
  const Multivector third = wedge(g(1) * b + g(2) * a, g(4) * a - g(3) * b);
  return real_part(primed ? first + second - third : second + third - first);
}

Multivector parse_two_form(std::string_view text) {
  Multivector out;
  std::size_t pos = 0;
  if (text.empty()) throw InvalidInput("empty 2-form");
  while (pos < text.size()) {
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (pos != 0) {
      throw InvalidInput("malformed 2-form '" + std::string(text) + "'");
    }
    if (pos + 2 > text.size()) throw InvalidInput("malformed 2-form '" + std::string(text) + "'");
    const int a = text[pos] - '1', b = text[pos + 1] - '1';
    if (a < 0 || a >= kDim || b < 0 || b >= kDim || a == b)
      throw InvalidInput("malformed 2-form term in '" + std::string(text) + "'");
    out += e(a, b) * Complex(sign);
    pos += 2;
  }
  if (out.is_zero()) throw InvalidInput("2-form '" + std::string(text) + "' vanishes");
  return out;
}

double pairing(const Multivector& omega, const Multivector& sigma) { return inner(omega, sigma).real(); }

Locus Locus::uniform() { return Locus(LocusKind::Uniform, "cp3:uniform"); }

Locus Locus::vertex(int i) {
  check_vertex_index(i);
  Locus l(LocusKind::Vertex, "vertex:w" + std::to_string(i));
  l.index_ = {i, i};
  return l;
}

Locus Locus::pi_vertex(int i) {
  check_vertex_index(i);
  Locus l(LocusKind::PiVertex, "pivertex:" + std::to_string(i));
  l.index_ = {i, i};
  return l;
}

Locus Locus::epsilon(double theta) {
  Locus l(LocusKind::Epsilon, "epsilon:" + std::to_string(theta));
  l.theta_ = theta;
  return l;
}

Locus Locus::edge(int i, int j) {
  check_vertex_index(i);
  check_vertex_index(j);
  if (i == j) throw InvalidInput("edge indices must differ");
  Locus l(LocusKind::Edge, "edge:" + std::to_string(std::min(i, j)) + "," + std::to_string(std::max(i, j)));
  l.index_ = {std::min(i, j), std::max(i, j)};
  return l;
}

Locus Locus::face(int i) {
  check_vertex_index(i);
  Locus l(LocusKind::Face, "face:" + std::to_string(i));
  l.index_ = {i, i};
  return l;
}

Locus Locus::equator(int i, int j) {
  Locus l = edge(i, j);
  l.kind_ = LocusKind::Equator;
  l.name_ = "equator:" + std::to_string(l.index_[0]) + "," + std::to_string(l.index_[1]);
  return l;
}

Locus Locus::generalized_edge(const Multivector& sigma) {
  int count = 0;
  unsigned mask = 0;
  for (unsigned m : masks_of_grade(2))
    if (!detail::negligible(sigma[m])) {
      ++count;
      mask = m;
    }
  if (count != 1 || !sigma.degree() || std::abs(std::abs(sigma[mask]) - 1.0) > 1e-12 || !is_real(sigma))
    throw InvalidInput("generalized edges need σ = ±e^{kl}");
  const int a = std::countr_zero(mask), b = std::countr_zero(mask & (mask - 1));
  const bool negative = sigma[mask].real() < 0.0;
  Locus l(LocusKind::GeneralizedEdge, std::string("gen-edge:") + (negative ? "-" : "+") + std::to_string(a + 1) +
                                          std::to_string(b + 1));
  l.sigma_ = real_part(sigma);
  l.index_ = {a, b};
  return l;
}

Locus Locus::polar(const Multivector& sigma) {
  if (sigma.degree() != 2 || !is_real(sigma)) throw InvalidInput("polar sets need a non-zero real 2-form");
  Locus l(LocusKind::Polar, "polar:" + to_string(sigma));
  l.sigma_ = real_part(sigma);
  return l;
}

Locus Locus::sphere() { return Locus(LocusKind::Sphere, "sphere:S"); }

Locus Locus::circle(bool primed) {
  return Locus(primed ? LocusKind::CirclePrime : LocusKind::Circle, primed ? "circle:CS'" : "circle:CS");
}

Locus Locus::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("locus must look like 'kind:args', got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon), arg = text.substr(colon + 1);
  if (kind == "cp3" && arg == "uniform") return uniform();
  if (kind == "vertex") {
    if (!arg.empty() && arg.front() == 'w') return vertex(parse_int(arg.substr(1)));
    return vertex(parse_int(arg));
  }
  if (kind == "pivertex") return pi_vertex(parse_int(arg));
  if (kind == "epsilon") return epsilon(parse_double(arg));
  if (kind == "edge") {
    const auto [i, j] = parse_pair(arg);
    return edge(i, j);
  }
  if (kind == "face") return face(parse_int(arg));
  if (kind == "equator") {
    const auto [i, j] = parse_pair(arg);
    return equator(i, j);
  }
  if (kind == "gen-edge") return generalized_edge(parse_two_form(arg));
  if (kind == "polar") return polar(parse_two_form(arg));
  if (kind == "sphere" && arg == "S") return sphere();
  if (kind == "circle" && arg == "CS") return circle(false);
  if (kind == "circle" && arg == "CS'") return circle(true);
  throw InvalidInput("unknown locus '" + std::string(text) + "'");
}

bool Locus::is_point() const {
  return kind_ == LocusKind::Vertex || kind_ == LocusKind::PiVertex || kind_ == LocusKind::Epsilon;
}

Multivector Locus::sample(Rng& rng) const {
  switch (kind_) {
    case LocusKind::Uniform:
      return omega_from_cp3(sample_cp3(rng));
    case LocusKind::Vertex:
      return nilherm::vertex(index_[0]);
    case LocusKind::PiVertex:
      return nilherm::pi_vertex(index_[0]);
    case LocusKind::Epsilon:
      return nilherm::epsilon(theta_);
    case LocusKind::Edge: {
      const auto g = gaussian4(rng);
      std::array<Complex, 4> u{};
      u[static_cast<std::size_t>(index_[0])] = g[0];
      u[static_cast<std::size_t>(index_[1])] = g[1];
      return omega_from_cp3(Cp3Point::normalized(u));
    }
    case LocusKind::Face: {
      auto u = gaussian4(rng);
      u[static_cast<std::size_t>(index_[0])] = 0.0;
      return omega_from_cp3(Cp3Point::normalized(u));
    }
    case LocusKind::Equator: {
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      std::array<Complex, 4> u{};
      u[static_cast<std::size_t>(index_[0])] = 1.0;
      u[static_cast<std::size_t>(index_[1])] = std::polar(1.0, angle(rng));
      return omega_from_cp3(Cp3Point::normalized(u));
    }
    case LocusKind::GeneralizedEdge: {
      std::array<int, 4> rest{};
      int k = 0;
      for (int i = 0; i < kDim; ++i)
        if (i != index_[0] && i != index_[1]) rest[static_cast<std::size_t>(k++)] = i;
      const auto [a, b, c, d] = rest;
      const unsigned quad = (1u << a) | (1u << b) | (1u << c) | (1u << d);
      const double s = wedge(sigma_, Multivector::basis(quad))[kVolumeMask].real() > 0.0 ? 1.0 : -1.0;
      const std::array<Multivector, 3> basis{e(a, b) + e(c, d) * Complex(s), e(a, c) - e(b, d) * Complex(s),
                                             e(a, d) + e(b, c) * Complex(s)};
      std::normal_distribution<double> n;
      Eigen::Vector3d x(n(rng), n(rng), n(rng));
      x.normalize();
      Multivector omega = sigma_;
      for (int i = 0; i < 3; ++i) omega += basis[static_cast<std::size_t>(i)] * Complex(x(i));
      return omega;
    }
    case LocusKind::Polar: {
      const Cp3Point u = sample_cp3(rng);
      const double gu = pairing(omega_from_cp3(u), sigma_);
      Cp3Point v;
      double gv = 0.0;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) throw Error("polar set of " + to_string(sigma_) + " looks empty");
        v = sample_cp3(rng);
        gv = pairing(omega_from_cp3(v), sigma_);
        if (gu * gv < 0.0) break;
      }
      Complex overlap(0.0, 0.0);
      for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(u.u[i]) * v.u[i];
      const Complex align = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
      auto point = [&](double t) {
        std::array<Complex, 4> x;
        for (std::size_t i = 0; i < 4; ++i) x[i] = (1.0 - t) * u.u[i] + t * align * v.u[i];
        return omega_from_cp3(Cp3Point::normalized(x));
      };
      double lo = 0.0, hi = 1.0;
      Multivector best = point(0.5);
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        best = point(mid);
        const double g = pairing(best, sigma_);
        if (g == 0.0) break;
        if ((g < 0.0) == (gu < 0.0)) lo = mid; else hi = mid;
      }
      return best;
    }
    case LocusKind::Sphere: {
      const Vector6d f1 = gaussian_d(rng).normalized();
      const Vector6d f2 = j3(f1);
      Vector6d f3 = gaussian_d(rng);
      f3 -= f1.dot(f3) * f1 + f2.dot(f3) * f2;
      f3.normalize();
      const Vector6d f4 = j3(f3);
      const Multivector e5 = Multivector::generator(4), e6 = Multivector::generator(5);
      return real_part(wedge(e5, form_of(f1)) + wedge(form_of(f2), e6) + wedge(form_of(f3), form_of(f4)));
    }
    case LocusKind::Circle:
    case LocusKind::CirclePrime: {
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      return circle_point(angle(rng), kind_ == LocusKind::CirclePrime);
    }
  }
  throw Error("unreachable locus kind");
}

bool Locus::contains(const Multivector& omega, double tol) const {
  if (!is_point_of_moduli(omega, std::max(tol, 1e-9))) return false;
  auto coordinates = [&] { return cp3_from_omega(omega); };
  switch (kind_) {
    case LocusKind::Uniform:
      return true;
    case LocusKind::Vertex:
      return max_abs(omega - nilherm::vertex(index_[0])) < tol;
    case LocusKind::PiVertex:
      return max_abs(omega - nilherm::pi_vertex(index_[0])) < tol;
    case LocusKind::Epsilon:
      return max_abs(omega - nilherm::epsilon(theta_)) < tol;
    case LocusKind::Edge:
    case LocusKind::Equator: {
      const Cp3Point u = coordinates();
      for (int k = 0; k < 4; ++k)
        if (k != index_[0] && k != index_[1] && std::abs(u.u[static_cast<std::size_t>(k)]) > tol) return false;
      if (kind_ == LocusKind::Edge) return true;
      return std::abs(std::abs(u.u[static_cast<std::size_t>(index_[0])]) -
                      std::abs(u.u[static_cast<std::size_t>(index_[1])])) < tol;
    }
    case LocusKind::Face:
      return std::abs(coordinates().u[static_cast<std::size_t>(index_[0])]) < tol;
    case LocusKind::GeneralizedEdge: {
      const unsigned pair = (1u << index_[0]) | (1u << index_[1]);
      for (unsigned m : masks_of_grade(2)) {
        if (m == pair) {
          if (std::abs(omega[m] - sigma_[m]) > tol) return false;
        } else if ((m & pair) != 0 && std::abs(omega[m]) > tol) {
          return false;
        }
      }
      return true;
    }
    case LocusKind::Polar:
      return std::abs(pairing(omega, sigma_)) / norm(sigma_) < tol;
    case LocusKind::Sphere:
      return std::abs(coordinates().u[3]) < tol && std::abs(pairing(omega, e("56"))) < tol;
    case LocusKind::Circle:
    case LocusKind::CirclePrime: {
      const double a = omega[0b100001u].real(), b = -omega[0b100010u].real();
      if (std::hypot(a, b) < 0.5) return false;
      return max_abs(omega - circle_point(std::atan2(b, a), kind_ == LocusKind::CirclePrime)) < tol;
    }
  }
  return false;
}

}  // namespace nilherm

#pragma once

// The moduli space Z of positively oriented orthogonal almost complex
// structures, identified with CP³ through Λ²V ⊗ C ≅ g* ⊗ C, together with
// the SO(4) × U(1) parametrization ω(P; a, b) and the named loci of the
// tetrahedron picture. All forms are in the orthonormal frame.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "nilherm/hermitian.hpp"
#include "nilherm/so4.hpp"

namespace nilherm {

using Rng = std::mt19937_64;

/// Independent deterministic stream for (seed, stream, index).
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

struct Cp3Point {
  std::array<Complex, 4> u{};

  /// Unit norm, first coordinate with |u_i| > 1e-8 made real-positive.
  /// Throws InvalidInput for the zero vector.
  static Cp3Point normalized(const std::array<Complex, 4>& u);
  /// Distance between projective classes, √(1 − |⟨u, v⟩|²).
  double distance(const Cp3Point& other) const;
};

AlmostComplexStructure from_cp3(const Cp3Point& u);
/// Throws NotInModuli for wrongly oriented J.
Cp3Point cp3_from_J(const AlmostComplexStructure& j);

Multivector omega_from_cp3(const Cp3Point& u);
Cp3Point cp3_from_omega(const Multivector& omega);

/// e⁵∧(a e⁶ + b f¹) − f²∧(a f¹ − b e⁶) + f³∧f⁴ with f^i = P(e^i).
/// Throws InvalidInput unless a² + b² = 1 within 1e-12.
Multivector omega_pab(const SO4Element& p, double a, double b);

Cp3Point sample_cp3(Rng& rng);
SO4Element sample_so4(Rng& rng);
std::pair<double, double> sample_circle(Rng& rng);

/// Vertices ω₀..ω₃ of the tetrahedron.
Multivector vertex(int i);
/// ϖ₀..ϖ₃: vertices rotated by e² ↦ −e⁵, e⁵ ↦ e².
Multivector pi_vertex(int i);
/// e⁵⁶ + cos θ (e¹³ + e⁴²) + sin θ (e¹⁴ + e²³).
Multivector epsilon(double theta);
/// Points of the circles CS (primed = false) and CS′ with A = cos φ, B = sin φ.
Multivector circle_point(double phi, bool primed);

/// Real 2-form from terms such as "13+42", "-15", "+56", "12-34".
Multivector parse_two_form(std::string_view text);

/// g(ω, σ) for real forms.
double pairing(const Multivector& omega, const Multivector& sigma);

enum class LocusKind {
  Uniform,
  Vertex,
  PiVertex,
  Epsilon,
  Edge,
  Face,
  Equator,
  GeneralizedEdge,
  Polar,
  Sphere,
  Circle,
  CirclePrime,
};

class Locus {
 public:
  static Locus uniform();
  static Locus vertex(int i);
  static Locus pi_vertex(int i);
  static Locus epsilon(double theta);
  static Locus edge(int i, int j);
  static Locus face(int i);
  static Locus equator(int i, int j);
  /// σ must be ±e^{kl}.
  static Locus generalized_edge(const Multivector& sigma);
  static Locus polar(const Multivector& sigma);
  static Locus sphere();
  static Locus circle(bool primed);

  /// CLI spelling: "cp3:uniform", "vertex:w0", "pivertex:1", "epsilon:3.14",
  /// "edge:0,3", "face:3", "equator:0,2", "gen-edge:+56", "polar:13+42",
  /// "sphere:S", "circle:CS", "circle:CS'". Throws InvalidInput.
  static Locus parse(std::string_view text);

  LocusKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_point() const;

  Multivector sample(Rng& rng) const;
  bool contains(const Multivector& omega, double tol = 1e-10) const;

 private:
  Locus(LocusKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  LocusKind kind_;
  std::string name_;
  std::array<int, 2> index_{};
  double theta_ = 0.0;
  Multivector sigma_;
};

}  // namespace nilherm

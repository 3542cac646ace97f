#pragma once

// Six-dimensional Lie algebras presented dually: d e^i ∈ Λ²g* for each
// generator, extended to all degrees by the graded Leibniz rule.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nilherm/exterior.hpp"
#include "nilherm/so4.hpp"

namespace nilherm {

class LieAlgebra {
 public:
  /// Exact presentation; `d` holds d e^1..d e^6. Throws InvalidInput unless
  /// every d e^i has degree 2 (or vanishes).
  LieAlgebra(std::string name, std::array<RationalForm, 6> d, Gram gram = Gram::identity(),
             Distinguished distinguished = kDefaultDistinguished);

  /// Floating-point presentation (e.g. after a change of frame).
  static LieAlgebra from_forms(std::string name, std::array<Multivector, 6> d,
                               Gram gram = Gram::identity(),
                               Distinguished distinguished = kDefaultDistinguished);

  const std::string& name() const { return name_; }
  const Gram& gram() const { return gram_; }
  const Distinguished& distinguished() const { return distinguished_; }
  const Multivector& d_generator(int i) const { return d_[static_cast<std::size_t>(i)]; }
  const std::optional<std::array<RationalForm, 6>>& exact_generators() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  Multivector d(const Multivector& a) const;
  /// Exact exterior derivative; throws InvalidInput for float presentations.
  RationalForm d(const RationalForm& a) const;

  /// Same structure constants, different metric.
  LieAlgebra with_gram(Gram gram) const;

  /// The algebra rewritten in the orthonormal coframe of its metric, carrying
  /// the identity gram. Returns a copy of *this when the gram is the identity.
  LieAlgebra orthonormal_model() const;

  /// Lie bracket of dual basis vectors: [e_i, e_j] = Σ_k c(i, j, k) e_k, from
  /// dξ(X, Y) = −ξ([X, Y]).
  double bracket(int i, int j, int k) const {
    return bracket_[static_cast<std::size_t>((i * kDim + j) * kDim + k)];
  }

 private:
  LieAlgebra() = default;
  void build_operator();

  std::string name_;
  Gram gram_;
  Distinguished distinguished_ = kDefaultDistinguished;
  std::array<Multivector, 6> d_;
  std::optional<std::array<RationalForm, 6>> exact_;
  // Per-grade matrices of d: Λ^k → Λ^{k+1} in canonical in-grade order.
  std::array<Eigen::MatrixXcd, kDim> d_matrix_;
  std::array<double, kDim * kDim * kDim> bracket_{};
};

Multivector d(const LieAlgebra& algebra, const Multivector& a);

/// d∘d vanishes on every generator; exact when rational constants are known.
bool satisfies_jacobi(const LieAlgebra& algebra, double tol = 1e-12);

struct CohomologyProfile {
  std::array<int, 7> betti{};
  /// Closed 1-forms spanning ker(d: Λ¹ → Λ²), echelonized.
  std::vector<Multivector> kernel_basis;
  /// 2-forms spanning d(Λ¹), echelonized; size 6 − b₁.
  std::vector<Multivector> image_basis;
  /// Nilpotency step, or nullopt for non-nilpotent algebras.
  std::optional<int> step;
};

/// Betti numbers of the Chevalley–Eilenberg complex. Throws InvalidInput when
/// d∘d ≠ 0.
CohomologyProfile cohomology(const LieAlgebra& algebra);

/// Length of the ascending filtration V₁ = ker d, V_{k+1} = {x : dx ∈ Λ²V_k};
/// nullopt when it stabilizes short of g*.
std::optional<int> nilpotency_step(const LieAlgebra& algebra);

/// Rows are 1-forms (in e-coordinates) forming a basis with
/// d(row k) ∈ Λ²⟨rows 0..k−1⟩; nullopt unless the algebra is nilpotent.
std::optional<Matrix6d> adapted_basis(const LieAlgebra& algebra);

/// P⁻¹(d(P(a))) with P acting on the algebra's distinguished subspace.
Multivector conjugated_d(const LieAlgebra& algebra, const SO4Element& p, const Multivector& a);

/// The algebra whose differential is P⁻¹ ∘ d ∘ P.
LieAlgebra conjugated(const LieAlgebra& algebra, const SO4Element& p);

// JSON algebra files:
//   {"name": str, "d": {"5": [[i, j, coeff], ...], ...}, "gram": 6×6, "D": [1,2,3,4]}
// Indices are one-based; coefficients are numbers or "p/q" strings.
LieAlgebra algebra_from_json(const nlohmann::json& j, bool require_distinguished = true);
nlohmann::json algebra_to_json(const LieAlgebra& algebra);
LieAlgebra load_algebra_file(const std::string& path);

}  // namespace nilherm

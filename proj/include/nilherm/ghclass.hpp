#pragma once

// Gray–Hervella components of an invariant almost Hermitian structure.
//
// Canonical norms (U(3)-invariant):
//   w1 = ‖(dω)^{3,0} + (dω)^{0,3}‖
//   w2 = ‖N − Alt(N)‖ for the lowered Nijenhuis tensor
//   w3 = ‖effective part of (dω)^{2,1} + (dω)^{1,2}‖
//   w4 = ‖dω ∧ ω‖
// plus coframe-dependent residuals used as independent cross-checks.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nilherm/hermitian.hpp"
#include "nilherm/liealg.hpp"

namespace nilherm {

struct Thresholds {
  double vanish = 1e-9;
  double nonvanish = 1e-6;
};

enum class Verdict { Vanishes, NonVanishing, Indeterminate };

Verdict verdict(double value, const Thresholds& t);
char verdict_char(Verdict v);  // 'V', 'N' or '?'

/// Label of the class W_S, S being the components that do not vanish.
std::string class_label(const std::array<bool, 4>& vanishing);

struct GHSignature {
  std::array<double, 4> norms{};
  std::array<Verdict, 4> verdicts{};
  std::string label;

  double w(int component) const { return norms[static_cast<std::size_t>(component - 1)]; }
  bool vanishes(int component) const { return verdicts[static_cast<std::size_t>(component - 1)] == Verdict::Vanishes; }
  bool any_indeterminate() const;
  /// e.g. "VVNV".
  std::string pattern() const;

  /// Membership in Z_S, where `digits` lists S (e.g. "134"; "" is the Kähler
  /// class). nullopt when a component outside S is indeterminate.
  std::optional<bool> in_class(std::string_view digits) const;

  nlohmann::json to_json() const;
};

GHSignature make_signature(const std::array<double, 4>& norms, const Thresholds& t);

/// Pieces of dω in the orthonormal frame.
struct DomegaDecomposition {
  Multivector domega;
  Multivector part30;     // (3,0) + (0,3)
  Multivector part21;     // (2,1) + (1,2)
  Multivector effective;  // part21 − θ∧ω
  Multivector lee_part;   // θ∧ω
  Vector6d theta;         // least-squares θ
};

/// Lemma-style scalar detectors (coefficients of top-degree products).
struct LemmaResiduals {
  /// (dα)βγαᾱ + (dβ)γαββ̄ + (dγ)αβγγ̄.
  Complex lemma1;
  /// Six listed products, then t1 − t2 and t2 − t3 for the last chain.
  std::array<Complex, 8> lemma2{};
  /// (dω)η_i.
  std::array<Complex, 6> lemma3{};
  /// max-norms of (dα)ωω, (dβ)ωω, (dγ)ωω; for non-nilpotent algebras a
  /// single entry ‖dω∧ω‖.
  std::vector<double> lemma4;

  /// Largest magnitude for lemma 1..4.
  double magnitude(int lemma) const;
};

/// η₁..η₆ built from α, β, γ.
std::array<Multivector, 6> effective_basis(const UnitaryCoframe& coframe);

/// Reusable classifier for one algebra; the metric is absorbed once by
/// rewriting d in its orthonormal coframe.
class Classifier {
 public:
  explicit Classifier(const LieAlgebra& algebra, Thresholds thresholds = {});

  const LieAlgebra& model() const { return model_; }
  const Thresholds& thresholds() const { return thresholds_; }
  bool nilpotent() const { return nilpotent_; }
  /// Real basis of d(g*) in the orthonormal frame.
  const std::vector<Multivector>& image_basis() const { return image_basis_; }

  std::array<double, 4> norms(const AlmostComplexStructure& j) const;
  GHSignature classify(const AlmostComplexStructure& j) const;

  DomegaDecomposition decompose(const AlmostComplexStructure& j) const;
  LemmaResiduals lemma_residuals(const AlmostComplexStructure& j) const;
  /// max_i |g(ω, σ_i)| over the image basis.
  double polar_residual(const AlmostComplexStructure& j) const;

  /// dω in the orthonormal frame.
  Multivector domega(const AlmostComplexStructure& j) const;

 private:
  LieAlgebra model_;
  Thresholds thresholds_;
  bool nilpotent_ = false;
  std::vector<Multivector> image_basis_;
};

GHSignature classify(const LieAlgebra& algebra, const AlmostComplexStructure& j, Thresholds t = {});

/// A structure with dω∧ω = 0 built from an orthonormalized adapted basis.
/// Throws InvalidInput when the algebra is not nilpotent.
AlmostComplexStructure cosymplectic_construct(const LieAlgebra& algebra);

}  // namespace nilherm

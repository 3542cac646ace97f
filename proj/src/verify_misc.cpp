#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nilherm/catalog.hpp"
#include "parallel.hpp"
#include "probe.hpp"

namespace nilherm {
namespace {

/// Q diag(λ) Qᵀ with Q Haar-orthogonal and log λ uniform on [log 1/4, log 4].
Matrix6d random_spd(Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> log_lambda(std::log(0.25), std::log(4.0));
  Matrix6d a;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) a(r, c) = gauss(rng);
  const Eigen::HouseholderQR<Matrix6d> qr(a);
  Matrix6d q = qr.householderQ();
  for (int c = 0; c < kDim; ++c)
    if (qr.matrixQR()(c, c) < 0.0) q.col(c) = -q.col(c);
  Vector6d lambda;
  for (int i = 0; i < kDim; ++i) lambda(i) = std::exp(log_lambda(rng));
  Matrix6d g = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (g + g.transpose());
}

struct Pair {
  std::size_t algebra = 0;
  std::string locus;
};

struct OracleOutcome {
  bool determinate = false;
  bool agree = true;
  bool any_vanishing = false;
  std::string detail;
};

}  // namespace

Report verify_prop4(const VerifyOptions& options) {
  Report report;
  report.suite = "prop4";
  report.seed = options.seed;
  const std::size_t grams = 20;
  const auto names = catalog::names();
  for (std::size_t a = 0; a < names.size(); ++a) {
    const LieAlgebra base = catalog::load(names[a]).algebra;
    struct Outcome {
      double w4 = 0.0;
      bool valid = false;
      std::string witness;
    };
    const auto outcomes = detail::parallel_map<Outcome>(grams + 1, options.threads, [&](std::size_t i) {
      Outcome o;
      LieAlgebra algebra = base;
      if (i > 0) {
        Rng rng = make_rng(options.seed, 100 + a, i);
        algebra = base.with_gram(Gram(random_spd(rng)));
      }
      try {
        const AlmostComplexStructure j = cosymplectic_construct(algebra);
        const Classifier cls(algebra, options.thresholds);
        o.w4 = cls.norms(j)[3];
        o.valid = is_point_of_moduli(omega_from_J(j), 1e-9);
        if (!o.valid || o.w4 >= options.thresholds.vanish)
          o.witness = "gram #" + std::to_string(i) + ": w4 = " + std::to_string(o.w4) + (o.valid ? "" : ", ω ∉ Z");
      } catch (const Error& ex) {
        o.witness = "gram #" + std::to_string(i) + ": " + ex.what();
      }
      return o;
    });
    Assertion as;
    as.claim = "cosymplectic structure exists on " + std::string(names[a]) + " (default metric + " +
               std::to_string(grams) + " random metrics)";
    as.ref = "prop4.cosymplectic";
    as.n_samples = outcomes.size();
    as.measured = true;
    as.min_norm = std::numeric_limits<double>::infinity();
    as.pass = true;
    for (const auto& o : outcomes) {
      as.min_norm = std::min(as.min_norm, o.w4);
      as.max_norm = std::max(as.max_norm, o.w4);
      if (!o.witness.empty()) {
        as.pass = false;
        if (as.witnesses.size() < 5) as.witnesses.push_back(o.witness);
      }
    }
    report.assertions.push_back(as);
  }
  return report;
}

Report verify_oracles(const VerifyOptions& options) {
  Report report;
  report.suite = "oracles";
  report.seed = options.seed;
  const auto names = catalog::names();
  std::vector<catalog::CatalogEntry> entries;
  std::vector<Classifier> classifiers;
  for (auto name : names) {
    entries.push_back(catalog::load(name));
    classifiers.emplace_back(entries.back().algebra, options.thresholds);
  }

  // Uniform pairs, then pairs on every catalog locus (where some components vanish).
  std::vector<Pair> pairs;
  const std::size_t uniform = 1000;
  for (std::size_t i = 0; i < uniform; ++i) pairs.push_back({i % names.size(), "cp3:uniform"});
  for (std::size_t a = 0; a < entries.size(); ++a)
    for (const auto& known : entries[a].known_results)
      if (known.locus != "cp3:uniform")
        for (int k = 0; k < 20; ++k) pairs.push_back({a, known.locus});

  const Thresholds& t = options.thresholds;
  const auto outcomes = detail::parallel_map<OracleOutcome>(pairs.size(), options.threads, [&](std::size_t i) {
    const Pair& p = pairs[i];
    const Classifier& cls = classifiers[p.algebra];
    const Locus locus = Locus::parse(p.locus);
    OracleOutcome o;
    for (int attempt = 0; attempt <= detail::kMaxResamples; ++attempt) {
      Rng rng = make_rng(options.seed, 200, i * 16 + static_cast<std::size_t>(attempt));
      const Multivector omega = locus.sample(rng);
      const AlmostComplexStructure j = J_from_omega(omega);
      const auto norms = cls.norms(j);
      const LemmaResiduals lemma = cls.lemma_residuals(j);
      std::array<Verdict, 5> canonical{}, oracle{};
      for (int c = 1; c <= 4; ++c) {
        canonical[static_cast<std::size_t>(c - 1)] = verdict(norms[static_cast<std::size_t>(c - 1)], t);
        oracle[static_cast<std::size_t>(c - 1)] = verdict(lemma.magnitude(c), t);
      }
      canonical[4] = canonical[3];
      oracle[4] = verdict(cls.polar_residual(j), t);
      const bool determinate = std::none_of(canonical.begin(), canonical.end(), [](Verdict v) { return v == Verdict::Indeterminate; }) &&
                               std::none_of(oracle.begin(), oracle.end(), [](Verdict v) { return v == Verdict::Indeterminate; });
      if (!determinate && attempt < detail::kMaxResamples) continue;
      o.determinate = determinate;
      o.agree = canonical == oracle;
      o.any_vanishing = std::count(canonical.begin(), canonical.end(), Verdict::Vanishes) > 0;
      std::ostringstream w;
      w << names[p.algebra] << " @ " << p.locus << ": canonical ";
      for (Verdict v : canonical) w << verdict_char(v);
      w << " vs lemma ";
      for (Verdict v : oracle) w << verdict_char(v);
      w << " at " << detail::describe(omega);
      o.detail = w.str();
      break;
    }
    return o;
  });

  auto summarize = [&](std::string claim, std::size_t begin, std::size_t end) {
    Assertion a;
    a.claim = std::move(claim);
    a.ref = "oracles.lemmas";
    a.n_samples = end - begin;
    std::size_t failures = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& o = outcomes[i];
      if (!o.determinate) {
        ++a.indeterminate;
        if (a.witnesses.size() < 5) a.witnesses.push_back("indeterminate: " + o.detail);
        continue;
      }
      if (!o.agree) {
        ++failures;
        if (a.witnesses.size() < 5) a.witnesses.push_back(o.detail);
      }
    }
    a.pass = failures == 0 && a.indeterminate * 100 <= a.n_samples;
    report.assertions.push_back(a);
  };
  summarize("canonical W1..W4 verdicts agree with lemma residuals and polar orthogonality (uniform pairs)", 0, uniform);
  summarize("canonical W1..W4 verdicts agree with lemma residuals and polar orthogonality (catalog loci)", uniform,
            pairs.size());

  const auto vanishing_seen = std::count_if(outcomes.begin() + static_cast<std::ptrdiff_t>(uniform), outcomes.end(),
                                           [](const OracleOutcome& o) { return o.any_vanishing; });
  report.info.push_back(std::to_string(uniform) + " uniform pairs and " + std::to_string(pairs.size() - uniform) +
                        " locus pairs; " + std::to_string(vanishing_seen) +
                        " locus pairs have at least one vanishing component");
  return report;
}

Report run_suite(std::string_view name, const VerifyOptions& options) {
  if (name == "theorem1") return verify_theorem1(options);
  if (name == "theorem2") return verify_theorem2(options);
  if (name == "theorem3") return verify_theorem3(options);
  if (name == "prop4") return verify_prop4(options);
  if (name == "oracles") return verify_oracles(options);
  throw InvalidInput("unknown suite '" + std::string(name) + "' (expected theorem1, theorem2, theorem3, prop4, oracles)");
}

}  // namespace nilherm

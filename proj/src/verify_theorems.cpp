#include <cmath>
#include <numbers>
#include <sstream>

#include "nilherm/catalog.hpp"
#include "parallel.hpp"
#include "probe.hpp"

namespace nilherm {
namespace {

using detail::Expect;
using detail::Probe;
using detail::ProbeResult;

using Sampler = std::function<Multivector(Rng&, std::size_t)>;
using Predicate = std::function<bool(const Multivector&)>;

constexpr double kPi = std::numbers::pi;

/// True when ω is within 1e-6 (projective distance) of one of the points.
Predicate near_points(const std::vector<Multivector>& points) {
  std::vector<Cp3Point> cps;
  for (const auto& p : points) cps.push_back(cp3_from_omega(p));
  return [cps](const Multivector& omega) {
    const Cp3Point u = cp3_from_omega(omega);
    for (const auto& c : cps)
      if (u.distance(c) < 1e-6) return true;
    return false;
  };
}

Predicate on_loci(std::vector<Locus> loci, std::vector<Multivector> points = {}) {
  Predicate near = points.empty() ? Predicate() : near_points(points);
  return [loci = std::move(loci), near](const Multivector& omega) {
    for (const auto& l : loci)
      if (l.contains(omega, 1e-8)) return true;
    return near && near(omega);
  };
}

std::vector<Multivector> circle_sweep(std::size_t n, bool primed) {
  std::vector<Multivector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(circle_point(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n), primed));
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

struct Pooled {
  Multivector omega;
  GHSignature sig;
};

class Suite {
 public:
  Suite(std::string name, const LieAlgebra& algebra, const VerifyOptions& options)
      : cls_(algebra, options.thresholds), options_(options) {
    report_.suite = std::move(name);
    report_.seed = options.seed;
  }

  const Classifier& classifier() const { return cls_; }
  Report& report() { return report_; }

  GHSignature signature(const Multivector& omega) const { return cls_.classify(J_from_omega(omega)); }

  ProbeResult probe(std::string claim, std::string ref, std::size_t n, Sampler sample,
                    std::function<double(const Multivector&)> measure, Expect expect, Predicate reject = {}) {
    Probe p;
    p.claim = std::move(claim);
    p.ref = std::move(ref);
    p.n = n;
    p.stream = next_stream_++;
    p.sample = std::move(sample);
    p.measure = std::move(measure);
    p.expect = expect;
    p.thresholds = options_.thresholds;
    p.reject = std::move(reject);
    ProbeResult r = detail::run_probe(p, options_);
    report_.assertions.push_back(r.assertion);
    for (const auto& s : r.samples)
      if (!s.is_zero()) pool_.push_back(s);
    return r;
  }

  /// Probe of membership in Z_digits (vanishing of the complementary norms).
  ProbeResult member(std::string claim, std::string ref, std::size_t n, Sampler sample, std::string digits,
                     Expect expect, Predicate reject = {}) {
    return probe(std::move(claim), std::move(ref), n, std::move(sample),
                 [this, digits](const Multivector& omega) { return detail::excess(signature(omega), digits); },
                 expect, std::move(reject));
  }

  ProbeResult member(std::string claim, std::string ref, std::size_t n, const Locus& locus, std::string digits,
                     Expect expect, Predicate reject = {}) {
    return member(std::move(claim), std::move(ref), n, detail::from_locus(locus), std::move(digits), expect,
                  std::move(reject));
  }

  /// Signatures of every sample drawn so far.
  const std::vector<Pooled>& pool() {
    if (pooled_.size() != pool_.size()) {
      pooled_ = detail::parallel_map<Pooled>(pool_.size(), options_.threads, [this](std::size_t i) {
        return Pooled{pool_[i], signature(pool_[i])};
      });
    }
    return pooled_;
  }

  /// Asserts `holds` on every pooled sample whose signature is determinate.
  void lattice(std::string claim, std::string ref, const std::function<bool(const Pooled&)>& holds) {
    const auto& all = pool();
    std::size_t indeterminate = 0;
    std::vector<std::string> witnesses;
    std::size_t failures = 0;
    for (const auto& p : all) {
      if (p.sig.any_indeterminate()) {
        ++indeterminate;
        continue;
      }
      if (!holds(p)) {
        ++failures;
        if (witnesses.size() < 5) witnesses.push_back(p.sig.pattern() + " at " + detail::describe(p.omega));
      }
    }
    Assertion a = detail::boolean_assertion(std::move(claim), std::move(ref), all.size(),
                                            failures == 0 && indeterminate * 100 <= all.size(), std::move(witnesses));
    a.indeterminate = indeterminate;
    report_.assertions.push_back(a);
  }

  void check(std::string claim, std::string ref, bool pass, std::vector<std::string> witnesses = {},
             std::size_t n = 1) {
    report_.assertions.push_back(detail::boolean_assertion(std::move(claim), std::move(ref), n, pass, std::move(witnesses)));
  }

  void info(std::string line) { report_.info.push_back(std::move(line)); }

 private:
  Classifier cls_;
  VerifyOptions options_;
  Report report_;
  std::uint64_t next_stream_ = 1;
  std::vector<Multivector> pool_;
  std::vector<Pooled> pooled_;
};

bool in(const GHSignature& s, std::string_view digits) { return s.in_class(digits).value_or(false); }

/// Point check: the signature of ω matches `expected` (a V/N pattern).
void point_pattern(Suite& suite, const std::string& name, const Multivector& omega, const std::string& expected,
                   const std::string& ref) {
  const GHSignature s = suite.signature(omega);
  bool ok = true;
  for (std::size_t c = 0; c < 4; ++c)
    if (expected[c] != '?' && expected[c] != verdict_char(s.verdicts[c])) ok = false;
  suite.check(name + " has pattern " + expected, ref, ok, {s.pattern() + " " + s.to_json().dump()});
}

double nijenhuis_norm(const Classifier& cls, const Multivector& omega) {
  return nijenhuis(cls.model(), J_from_omega(omega)).norm();
}

}  // namespace

Report verify_theorem1(const VerifyOptions& options) {
  Suite s("theorem1", catalog::load("iwasawa").algebra, options);
  const std::size_t n = 200;
  const Multivector w0 = vertex(0), w3 = vertex(3);

  // Z234 = F3.
  s.member("F3 ⊂ Z234", "theorem1.z234", n, Locus::face(3), "234", Expect::Vanish);
  s.member("uniform points off F3 ∉ Z234", "theorem1.z234", n, Locus::uniform(), "234", Expect::NonVanish,
           on_loci({Locus::face(3)}));
  s.member("F0 points off F3 ∉ Z234", "theorem1.z234", n, Locus::face(0), "234", Expect::NonVanish,
           on_loci({Locus::face(3)}));

  // Z134 = {ω0} ∪ E12.
  s.member("ω0 ∈ Z134", "theorem1.z134", 1, Locus::vertex(0), "134", Expect::Vanish);
  s.member("E12 ⊂ Z134", "theorem1.z134", n, Locus::edge(1, 2), "134", Expect::Vanish);
  const Predicate off134 = on_loci({Locus::edge(1, 2)}, {w0});
  s.member("uniform points ∉ Z134", "theorem1.z134", n, Locus::uniform(), "134", Expect::NonVanish, off134);
  s.member("F3 points off E12 ∪ {ω0} ∉ Z134", "theorem1.z134", n, Locus::face(3), "134", Expect::NonVanish, off134);
  s.member("E03 points other than ω0 ∉ Z134", "theorem1.z134", n, Locus::edge(0, 3), "134", Expect::NonVanish, off134);

  // Z124 = {ω3} ∪ S.
  s.member("ω3 ∈ Z124", "theorem1.z124", 1, Locus::vertex(3), "124", Expect::Vanish);
  s.member("S ⊂ Z124", "theorem1.z124", n, Locus::sphere(), "124", Expect::Vanish);
  const Predicate off124 = on_loci({Locus::sphere()}, {w3});
  s.member("uniform points ∉ Z124", "theorem1.z124", n, Locus::uniform(), "124", Expect::NonVanish, off124);
  s.member("F3 points ∉ Z124", "theorem1.z124", n, Locus::face(3), "124", Expect::NonVanish, off124);
  s.member("polar set of e56 off S ∉ Z124", "theorem1.z124", n, Locus::polar(e("56")), "124", Expect::NonVanish,
           off124);

  // Z123 = F0 ∪ F3.
  s.member("F0 ⊂ Z123", "theorem1.z123", n, Locus::face(0), "123", Expect::Vanish);
  s.member("F3 ⊂ Z123", "theorem1.z123", n, Locus::face(3), "123", Expect::Vanish);
  const Predicate off123 = on_loci({Locus::face(0), Locus::face(3)});
  s.member("uniform points ∉ Z123", "theorem1.z123", n, Locus::uniform(), "123", Expect::NonVanish, off123);
  s.member("polar set of e13+e42 off F0 ∪ F3 ∉ Z123", "theorem1.z123", n, Locus::polar(parse_two_form("13+42")),
           "123", Expect::NonVanish, off123);

  // Lattice over every sample drawn above.
  const Locus sphere = Locus::sphere(), e12 = Locus::edge(1, 2);
  const Predicate on_c = on_loci({e12}, {w0});
  s.lattice("Z2 = Z24 = S", "theorem1.lattice", [&](const Pooled& p) {
    const bool on_s = sphere.contains(p.omega, 1e-8);
    return in(p.sig, "2") == on_s && in(p.sig, "24") == on_s;
  });
  s.lattice("Z3 = Z13 = Z34 = Z134 = {ω0} ∪ E12", "theorem1.lattice", [&](const Pooled& p) {
    const bool on = on_c(p.omega);
    return in(p.sig, "3") == on && in(p.sig, "13") == on && in(p.sig, "34") == on && in(p.sig, "134") == on;
  });
  s.lattice("Z1 = Z4 = Z14 = ∅", "theorem1.lattice",
            [](const Pooled& p) { return !in(p.sig, "1") && !in(p.sig, "4") && !in(p.sig, "14"); });
  s.lattice("no Kähler point", "theorem1.lattice", [](const Pooled& p) { return !in(p.sig, ""); });

  // dω = 0 on S.
  s.probe("dω = 0 on S (≤ 1e-12)", "theorem1.sphere", 50, detail::from_locus(sphere),
          [&](const Multivector& omega) { return max_abs(s.classifier().domega(J_from_omega(omega))); },
          Expect::Vanish, {});
  {
    Assertion& a = s.report().assertions.back();
    a.pass = a.pass && a.max_norm <= 1e-12;
  }
  s.probe("uniform points are not Kähler", "theorem1.kahler", n, detail::from_locus(Locus::uniform()),
          [&](const Multivector& omega) {
            const auto w = s.signature(omega).norms;
            return *std::max_element(w.begin(), w.end());
          },
          Expect::NonVanish);

  // Named points.
  const GHSignature sw0 = s.signature(w0);
  s.check("ω0 ∈ Z234 ∩ Z134 ∩ Z123 and ω0 ∉ Z124", "theorem1.points",
          in(sw0, "234") && in(sw0, "134") && in(sw0, "123") && sw0.in_class("124") == false, {sw0.pattern()});
  const GHSignature sp0 = s.signature(pi_vertex(0));
  s.check("ϖ0 ∈ Z2", "theorem1.points", in(sp0, "2"), {sp0.pattern()});
  point_pattern(s, "ω3", w3, "NNVV", "theorem1.points");
  return std::move(s.report());
}

Report verify_theorem2(const VerifyOptions& options) {
  Suite s("theorem2", catalog::load("g2").algebra, options);
  const std::vector<Multivector> hermitian{vertex(1), vertex(2), epsilon(2 * kPi / 3), epsilon(-2 * kPi / 3)};

  // Z134 = {ω1, ω2, ε(±2π/3)}.
  s.probe("ω1, ω2, ε(±2π/3) have w1 = w2 = 0", "theorem2.z134", hermitian.size(), detail::from_points(hermitian),
          [&](const Multivector& omega) {
            const GHSignature g = s.signature(omega);
            return std::max(g.w(1), g.w(2));
          },
          Expect::Vanish);
  s.probe("uniform points have w2 ≠ 0", "theorem2.z134", 500, detail::from_locus(Locus::uniform()),
          [&](const Multivector& omega) { return s.signature(omega).w(2); }, Expect::NonVanish,
          near_points(hermitian));

  // Z124 = CS.
  const Locus cs = Locus::circle(false);
  const auto sweep = circle_sweep(50, false);
  s.member("CS ⊂ Z124 (sweep over A, B)", "theorem2.z124", sweep.size(), detail::from_points(sweep), "124",
           Expect::Vanish);
  s.member("uniform points ∉ Z124", "theorem2.z124", 500, Locus::uniform(), "124", Expect::NonVanish, on_loci({cs}));
  s.member("CS' points ∉ Z124", "theorem2.z124", 50, detail::from_points(circle_sweep(50, true)), "124",
           Expect::NonVanish, on_loci({cs}));

  // Z123 ⊇ {ε(0), ε(π)} ∪ CS ∪ CS' ∪ CS02 ∪ CS13 ∪ CS12.
  s.member("ε(0), ε(π) ∈ Z123", "theorem2.z123", 2, detail::from_points({epsilon(0), epsilon(kPi)}), "123",
           Expect::Vanish);
  s.member("CS ⊂ Z123", "theorem2.z123", 50, cs, "123", Expect::Vanish);
  s.member("CS' ⊂ Z123", "theorem2.z123", 50, Locus::circle(true), "123", Expect::Vanish);
  s.member("CS02 ⊂ Z123", "theorem2.z123", 50, Locus::equator(0, 2), "123", Expect::Vanish);
  s.member("CS13 ⊂ Z123", "theorem2.z123", 50, Locus::equator(1, 3), "123", Expect::Vanish);
  s.member("CS12 ⊂ Z123", "theorem2.z123", 50, Locus::equator(1, 2), "123", Expect::Vanish);

  // Z2 = CS.
  s.probe("dω = 0 on CS (≤ 1e-12)", "theorem2.z2", sweep.size(), detail::from_points(sweep),
          [&](const Multivector& omega) { return max_abs(s.classifier().domega(J_from_omega(omega))); },
          Expect::Vanish);
  {
    Assertion& a = s.report().assertions.back();
    a.pass = a.pass && a.max_norm <= 1e-12;
  }
  s.lattice("Z2 = CS over all samples", "theorem2.z2",
            [&](const Pooled& p) { return in(p.sig, "2") == cs.contains(p.omega, 1e-8); });
  s.lattice("Z124 = CS over all samples", "theorem2.z124",
            [&](const Pooled& p) { return in(p.sig, "124") == cs.contains(p.omega, 1e-8); });
  s.lattice("no Kähler point", "theorem2.kahler", [](const Pooled& p) { return !in(p.sig, ""); });

  // Where the Hermitian points sit relative to CS03.
  {
    const Locus cs03 = Locus::equator(0, 3);
    std::ostringstream line;
    line << "Z34 points and CS03:";
    const char* names[] = {"ω1", "ω2", "ε(2π/3)", "ε(-2π/3)"};
    for (std::size_t i = 0; i < hermitian.size(); ++i) {
      const GHSignature g = s.signature(hermitian[i]);
      line << " " << names[i] << (in(g, "34") ? " ∈ Z34" : " ∉ Z34")
           << (cs03.contains(hermitian[i]) ? " on CS03;" : " off CS03;");
    }
    line << " only the explicit four-point list is asserted";
    s.info(line.str());
  }

  // Metric diag(1/4, 1/4, 1, 1, 1, 1): Hermitian points on E'12 ∪ E'03.
  // Loci are taken in the orthonormal frame of the modified metric.
  const LieAlgebra modified_algebra = catalog::load("g2-modified-metric").algebra;
  const Classifier modified(modified_algebra, options.thresholds);
  const Gram& gram = modified_algebra.gram();
  const std::vector<Multivector> three{vertex(1), vertex(2), epsilon(kPi)};
  const auto n_norm = [&](const Multivector& omega) { return nijenhuis_norm(modified, omega); };
  s.probe("modified metric: ω1', ω2', ε'(π) have N = 0", "theorem2.modified", three.size(),
          detail::from_points(three), n_norm, Expect::Vanish);
  s.probe("modified metric: E'12 points other than ω1', ω2' have N ≠ 0", "theorem2.modified", 100,
          detail::from_locus(Locus::edge(1, 2)), n_norm, Expect::NonVanish, near_points(three));
  s.probe("modified metric: E'03 points other than ε'(π) have N ≠ 0", "theorem2.modified", 100,
          detail::from_locus(Locus::edge(0, 3)), n_norm, Expect::NonVanish, near_points(three));
  {
    const Multivector expected = -0.5 * e("13") - 0.5 * e("42") + e("56");
    const Multivector actual = gram.from_orthonormal(epsilon(kPi));
    const double err = max_abs(actual - expected);
    s.check("ε'(π) = -1/2 e13 - 1/2 e42 + e56 in the original coframe", "theorem2.modified", err <= 1e-9,
            {"ε'(π) = " + to_string(actual, 9) + ", deviation " + fmt(err)});
    const double err1 = max_abs(gram.from_orthonormal(vertex(1)) - (0.25 * e("12") - e("34") - e("56")));
    const double err2 = max_abs(gram.from_orthonormal(vertex(2)) - (-0.25 * e("12") + e("34") - e("56")));
    s.check("ω1' = 1/4 e12 - e34 - e56 and ω2' = -1/4 e12 + e34 - e56", "theorem2.modified",
            std::max(err1, err2) <= 1e-9, {"deviations " + fmt(err1) + ", " + fmt(err2)});
  }
  return std::move(s.report());
}

Report verify_theorem3(const VerifyOptions& options) {
  const LieAlgebra g3 = catalog::load("g3").algebra;
  Suite s("theorem3", g3, options);
  const Multivector p1 = pi_vertex(1), p2 = pi_vertex(2);

  // Z134 = ∅.
  const ProbeResult uniform =
      s.probe("w2 ≠ 0 on uniform points (Z134 = ∅)", "theorem3.z134", 10000, detail::from_locus(Locus::uniform()),
              [&](const Multivector& omega) { return s.signature(omega).w(2); }, Expect::NonVanish);
  s.info("minimum w2 over " + std::to_string(uniform.assertion.n_samples) +
         " uniform samples: " + fmt(uniform.assertion.min_norm));

  // Z124 = {ϖ1, ϖ2}.
  s.member("ϖ1, ϖ2 ∈ Z124", "theorem3.z124", 2, detail::from_points({p1, p2}), "124", Expect::Vanish);
  const Predicate off124 = near_points({p1, p2});
  s.member("uniform points ∉ Z124", "theorem3.z124", 500, Locus::uniform(), "124", Expect::NonVanish, off124);
  s.member("E02 points other than ϖ2 ∉ Z124", "theorem3.z124", 200, Locus::edge(0, 2), "124", Expect::NonVanish,
           off124);
  s.member("E13 points other than ϖ1 ∉ Z124", "theorem3.z124", 200, Locus::edge(1, 3), "124", Expect::NonVanish,
           off124);
  point_pattern(s, "ϖ1", p1, "VNVN", "theorem3.z124");
  point_pattern(s, "ϖ2", p2, "VNVN", "theorem3.z124");

  // dϖ1 = −ϖ1∧e2 and dϖ2 = ϖ2∧e2, exactly.
  {
    const RationalForm e2 = RationalForm::generator(1);
    const RationalForm q1 = to_rational(p1), q2 = to_rational(p2);
    const RationalForm r1 = g3.d(q1) + wedge(q1, e2);
    const RationalForm r2 = g3.d(q2) - wedge(q2, e2);
    s.check("dϖ1 + ϖ1∧e2 = 0 (exact)", "theorem3.lee", r1.is_zero(), {"residual " + to_string(r1)});
    s.check("dϖ2 − ϖ2∧e2 = 0 (exact)", "theorem3.lee", r2.is_zero(), {"residual " + to_string(r2)});
  }

  // Inclusions.
  const std::size_t n = 50;
  s.member("E02 ⊂ Z234", "theorem3.z234", n, Locus::edge(0, 2), "234", Expect::Vanish);
  s.member("E13 ⊂ Z234", "theorem3.z234", n, Locus::edge(1, 3), "234", Expect::Vanish);
  s.member("E(+e15) ⊂ Z234", "theorem3.z234", n, Locus::generalized_edge(e("15")), "234", Expect::Vanish);
  s.member("E(-e15) ⊂ Z234", "theorem3.z234", n, Locus::generalized_edge(-e("15")), "234", Expect::Vanish);
  s.member("CS02 ⊂ Z123", "theorem3.z123", n, Locus::equator(0, 2), "123", Expect::Vanish);
  s.member("CS13 ⊂ Z123", "theorem3.z123", n, Locus::equator(1, 3), "123", Expect::Vanish);
  s.member("E(+e26) ⊂ Z123", "theorem3.z123", n, Locus::generalized_edge(e("26")), "123", Expect::Vanish);
  s.member("CS03 ⊂ Z123", "theorem3.z123", n, Locus::equator(0, 3), "123", Expect::Vanish);
  s.member("CS12 ⊂ Z123", "theorem3.z123", n, Locus::equator(1, 2), "123", Expect::Vanish);
  {
    // ϖ2 ∈ CS02 while dϖ2 = ϖ2∧e2 forces dϖ2∧ϖ2 = ϖ2∧ϖ2∧e2 ≠ 0; likewise ϖ1 ∈ CS13.
    const RationalForm q2 = to_rational(p2);
    const RationalForm obstruction = wedge(wedge(q2, q2), RationalForm::generator(1));
    std::ostringstream line;
    line << "CS02 ∩ Z123 and CS13 ∩ Z123 are proper: ϖ2 ∈ CS02 is " << (Locus::equator(0, 2).contains(p2) ? "true" : "false")
         << ", ϖ2∧ϖ2∧e2 = " << to_string(obstruction) << " so w4(ϖ2) = " << fmt(s.signature(p2).w(4));
    s.info(line.str());
  }

  // Empty classes over every sample drawn above.
  static constexpr std::array<std::string_view, 9> kEmpty{"1", "2", "3", "4", "12", "13", "14", "34", "134"};
  s.lattice("Z1, Z2, Z3, Z4, Z12, Z13, Z14, Z34, Z134 are empty", "theorem3.empty", [](const Pooled& p) {
    for (auto digits : kEmpty)
      if (in(p.sig, digits)) return false;
    return in(p.sig, "") == false;
  });

  s.check("ϖ1 ∈ CS13 and ϖ2 ∈ CS02", "theorem3.points",
          Locus::equator(1, 3).contains(p1) && Locus::equator(0, 2).contains(p2));
  const GHSignature e0 = s.signature(epsilon(0));
  s.info("ε(0): " + e0.to_json().dump());
  return std::move(s.report());
}

}  // namespace nilherm

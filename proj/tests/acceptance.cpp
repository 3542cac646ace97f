// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--seed N] [--threads N] [--expect-fail 5,...]
// Exit 0 iff the set of failing criteria equals the expected set.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nilherm/catalog.hpp"
#include "nilherm/hermitian.hpp"
#include "nilherm/moduli.hpp"
#include "nilherm/verify.hpp"

using namespace nilherm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

bool has_prefix(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

/// Folds every assertion whose ref matches `keep` into `out`.
std::size_t absorb(Outcome& out, const Report& report, const std::function<bool(const std::string&)>& keep) {
  std::size_t n = 0;
  for (const auto& a : report.assertions) {
    if (!keep(a.ref)) continue;
    ++n;
    std::string note = a.ref + ": " + a.claim;
    if (!a.witnesses.empty()) note += " [" + a.witnesses.front() + "]";
    out.require(a.pass, note);
  }
  out.require(n > 0, "no assertions matched in " + report.suite);
  return n;
}

std::function<bool(const std::string&)> refs(std::vector<std::string> names) {
  return [names = std::move(names)](const std::string& ref) {
    for (const auto& n : names)
      if (ref == n) return true;
    return false;
  };
}

Outcome structural(std::uint64_t seed) {
  Outcome out;
  const std::map<std::string, std::pair<int, int>> expected{
      {"abelian", {6, 1}}, {"iwasawa", {4, 2}}, {"g2", {4, 2}}, {"g3", {4, 3}}};
  for (const auto& [name, b1_step] : expected) {
    const LieAlgebra g = catalog::load(name).algebra;
    bool exact = true;
    for (int i = 0; i < kDim; ++i) exact = exact && g.d(g.d(RationalForm::generator(i))).is_zero();
    out.require(exact, name + ": d² ≠ 0 on a generator");
    const CohomologyProfile p = cohomology(g);
    out.require(p.betti[1] == b1_step.first, name + ": b1 = " + std::to_string(p.betti[1]));
    out.require(p.step == b1_step.second, name + ": unexpected nilpotency step");
  }

  double worst = 0.0;
  for (unsigned s : masks_of_grade(2))
    for (unsigned t : masks_of_grade(2)) {
      const Multivector sigma = Multivector::basis(s), tau = Multivector::basis(t);
      const Multivector lhs = wedge(sigma, star(tau));
      const Multivector rhs = volume() * inner(sigma, tau);
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  out.require(worst == 0.0, "σ∧star(τ) ≠ inner(σ,τ)υ on the Λ² basis");

  Rng rng = make_rng(seed, 77);
  const SO4Element id;
  for (int i = 0; i < 1000; ++i) {
    const SO4Element p = sample_so4(rng);
    const auto [a, b] = sample_circle(rng);
    const Multivector omega = omega_pab(p, a, b);
    const bool ok = is_point_of_moduli(omega) && std::abs(norm(omega) * norm(omega) - 3.0) < 1e-12 &&
                    std::abs(wedge(wedge(omega, omega), omega)[kVolumeMask] - Complex(6.0)) < 1e-12 &&
                    max_abs(omega_pab(-p, a, -b) - omega) < 1e-12 &&
                    max_abs(p.act(omega_pab(id, a, b)) - omega) < 1e-12;
    if (!ok) {
      out.require(false, "ω(P;a,b) invariant broken at sample " + std::to_string(i));
      break;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::vector<int> expect_fail;
  app.add_option("--seed", seed);
  app.add_option("--threads", threads);
  app.add_option("--expect-fail", expect_fail)->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  VerifyOptions options;
  options.seed = seed;
  options.threads = threads;

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Report t1 = verify_theorem1(options);
  const double t1_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const Report t2 = verify_theorem2(options);
  const Report t3 = verify_theorem3(options);
  const Report oracles = verify_oracles(options);
  const Report prop4 = verify_prop4(options);

  std::vector<std::pair<std::string, Outcome>> results;

  {
    Outcome o;
    absorb(o, t1, refs({"theorem1.z234", "theorem1.z134", "theorem1.z124", "theorem1.z123"}));
    for (const auto& a : t1.assertions)
      if (a.n_samples > 1) o.require(a.indeterminate * 100 <= a.n_samples, a.claim + ": more than 1% indeterminate");
    char buf[64];
    std::snprintf(buf, sizeof buf, "runtime %.1f s", t1_seconds);
    o.require(t1_seconds < 60.0, buf);
    results.emplace_back(std::string("Iwasawa loci: F3, {ω0} ∪ E12, {ω3} ∪ S, F0 ∪ F3 (") + buf + ")", o);
  }
  {
    Outcome o;
    absorb(o, t1, refs({"theorem1.lattice", "theorem1.sphere"}));
    results.emplace_back("Iwasawa class lattice and dω = 0 on S", o);
  }
  {
    Outcome o;
    absorb(o, t2, [](const std::string& r) { return has_prefix(r, "theorem2.") && r != "theorem2.modified"; });
    bool info = false;
    for (const auto& line : t2.info) info = info || has_prefix(line, "Z34 points and CS03");
    o.require(info, "CS03 note missing");
    results.emplace_back("g2 loci: Hermitian points, CS, Z123 inclusions", o);
  }
  {
    Outcome o;
    absorb(o, t2, refs({"theorem2.modified"}));
    results.emplace_back("g2 under diag(1/4, 1/4, 1, 1, 1, 1): integrable points on E'12 ∪ E'03", o);
  }
  {
    Outcome o;
    absorb(o, t3, [](const std::string&) { return true; });
    results.emplace_back("g3 loci, exact Lee identities, empty classes", o);
  }
  {
    Outcome o;
    absorb(o, oracles, [](const std::string&) { return true; });
    results.emplace_back("projection verdicts agree with residual verdicts", o);
  }
  {
    Outcome o;
    absorb(o, prop4, [](const std::string&) { return true; });
    results.emplace_back("cosymplectic construction under random metrics", o);
  }
  results.emplace_back("structural checks", structural(seed));

  std::set<int> failing;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [title, o] = results[i];
    const int id = static_cast<int>(i) + 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << "\n";
    for (const auto& note : o.notes) std::cout << "         " << note << "\n";
    if (!o.pass) failing.insert(id);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!expected.empty()) {
    std::cout << "expected failures:";
    for (int id : expected) std::cout << " " << id;
    std::cout << (failing == expected ? " (matched)" : " (mismatch)") << "\n";
  }
  return failing == expected ? 0 : 1;
}

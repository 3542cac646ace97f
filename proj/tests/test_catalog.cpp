#include "doctest.h"

#include "nilherm/catalog.hpp"
#include "nilherm/ghclass.hpp"
#include "nilherm/verify.hpp"
#include "support.hpp"

using namespace nilherm;

namespace {

bool close(const Multivector& a, const Multivector& b, double tol = 1e-12) { return oracle::distance(a, b) <= tol; }

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("catalog entries") {
  CHECK(catalog::names().size() == 5);
  const auto iw = catalog::load("iwasawa");
  CHECK(iw.algebra.d_generator(5) == e("14") + e("23"));
  CHECK(iw.algebra.d_generator(4) == e("13") - e("24"));
  CHECK(catalog::load("g2").algebra.d_generator(4) == e("12"));
  CHECK(catalog::load("g2").algebra.d_generator(5) == e("14") + e("23"));
  CHECK(catalog::load("g3").algebra.d_generator(5) == e("15") + e("34"));
  CHECK(catalog::load("g3").step == 3);
  CHECK(catalog::load("abelian").b1 == 6);
  const auto mod = catalog::load("g2-modified-metric");
  CHECK(mod.algebra.gram().metric().diagonal().transpose() == Eigen::Matrix<double, 1, 6>(0.25, 0.25, 1, 1, 1, 1));
  CHECK(mod.algebra.gram().metric().sum() == 4.5);
  CHECK_THROWS_AS(catalog::load("g4"), InvalidInput);
  CHECK_THROWS_AS(catalog::resolve("no-such-algebra"), InvalidInput);
  CHECK(catalog::resolve("g3").name() == "g3");
}

TEST_CASE("entries are consistent with their own cohomology") {
  for (auto name : catalog::names()) {
    const auto entry = catalog::load(name);
    CAPTURE(name);
    CHECK(satisfies_jacobi(entry.algebra));
    const CohomologyProfile p = cohomology(entry.algebra);
    CHECK(p.step == entry.step);
    CHECK(p.betti[1] == entry.b1);
    CHECK(nilpotency_step(entry.algebra) == entry.step);
    CHECK(entry.algebra.distinguished() == kDefaultDistinguished);
  }
  CHECK(catalog::load("iwasawa").step == 2);
  CHECK(catalog::load("g2").step == 2);
  CHECK(catalog::load("abelian").step == 1);
}

TEST_CASE("every known result holds") {
  const Thresholds t;
  for (auto name : catalog::names()) {
    const auto entry = catalog::load(name);
    const Classifier cls(entry.algebra, t);
    for (const auto& known : entry.known_results) {
      const Locus locus = Locus::parse(known.locus);
      const int samples = locus.is_point() ? 1 : 30;
      for (int i = 0; i < samples; ++i) {
        GHSignature s;
        for (int attempt = 0; attempt <= 3; ++attempt) {
          Rng rng = make_rng(0, 900, static_cast<std::uint64_t>(i * 16 + attempt));
          s = cls.classify(J_from_omega(locus.sample(rng)));
          bool settled = true;
          for (std::size_t k = 0; k < 4; ++k)
            if (known.vanishing[k] && s.verdicts[k] == Verdict::Indeterminate) settled = false;
          if (settled) break;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          if (!known.vanishing[k]) continue;
          CAPTURE(name);
          CAPTURE(known.locus);
          CAPTURE(k + 1);
          CHECK(s.verdicts[k] == (*known.vanishing[k] ? Verdict::Vanishes : Verdict::NonVanishing));
        }
      }
    }
  }
}

TEST_CASE("named points") {
  const double r = std::sqrt(3.0) / 2.0;
  CHECK(close(epsilon(2 * M_PI / 3), (e("13") - e("24")) * Complex(-0.5) + (e("14") + e("23")) * Complex(r) + e("56"), 1e-15));
  CHECK(close(epsilon(0.0), e("13") - e("24") + e("56"), 0.0));
  const LieAlgebra g2 = catalog::load("g2").algebra;
  const AlmostComplexStructure cs = J_from_omega(circle_point(0.0, false));
  const GHSignature s = classify(g2, cs);
  CHECK(s.vanishes(3));
  CHECK(d(g2, circle_point(0.0, false)).is_zero());
  const auto sw = classify(g2, J_from_omega(epsilon(2 * M_PI / 3)));
  CHECK(sw.vanishes(1));
  CHECK(sw.vanishes(2));
}

TEST_CASE("modified metric points in e-coordinates") {
  const Gram g = catalog::load("g2-modified-metric").algebra.gram();
  // ω₁, ω₂, ε(π) taken in the orthonormal frame f¹ = e¹/2, f² = e²/2
  CHECK(close(g.from_orthonormal(vertex(1)), e("12") * Complex(0.25) - e("34") - e("56"), 1e-15));
  CHECK(close(g.from_orthonormal(vertex(2)), e("12") * Complex(-0.25) + e("34") - e("56"), 1e-15));
  CHECK(close(g.from_orthonormal(epsilon(M_PI)), (e("13") - e("24")) * Complex(-0.5) + e("56"), 1e-15));
}

TEST_CASE("suites pass and are deterministic") {
  VerifyOptions one;
  one.threads = 1;
  VerifyOptions two;
  two.threads = 2;
  for (const char* suite : {"prop4", "oracles", "theorem2"}) {
    const Report a = run_suite(suite, one);
    CAPTURE(suite);
    CHECK(a.pass());
    CHECK(a.suite == suite);
    CHECK(!a.assertions.empty());
    if (std::string(suite) != "theorem2") CHECK(a.to_json().dump() == run_suite(suite, two).to_json().dump());
  }
  CHECK_THROWS_AS(run_suite("theorem9"), InvalidInput);
}

TEST_CASE("report format") {
  const Report r = verify_prop4();
  const auto j = r.to_json();
  CHECK(j["suite"] == "prop4");
  CHECK(j["seed"] == 0);
  REQUIRE(j["assertions"].is_array());
  for (const auto& a : j["assertions"])
    for (const char* key : {"claim", "paper_ref", "n_samples", "pass", "witnesses", "min_norms"}) CHECK(a.contains(key));
  CHECK(r.summary().find("PASS") != std::string::npos);

  Report failing;
  failing.suite = "x";
  failing.assertions.push_back(Assertion{"c", "x.c", 1, false, {"w"}, false, 0, 0, 0});
  CHECK_FALSE(failing.pass());
  CHECK(failing.summary().find("FAIL") != std::string::npos);
  CHECK(failing.to_json()["assertions"][0]["min_norms"].is_null());
}

}  // TEST_SUITE

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "probe.hpp"

namespace nilherm {

bool Report::pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : assertions) {
    nlohmann::json x;
    x["claim"] = a.claim;
    x["paper_ref"] = a.ref;
    x["n_samples"] = a.n_samples;
    x["pass"] = a.pass;
    x["witnesses"] = a.witnesses;
    x["min_norms"] = a.measured ? nlohmann::json{{"min", a.min_norm}, {"max", a.max_norm}} : nlohmann::json();
    x["indeterminate"] = a.indeterminate;
    list.push_back(x);
  }
  j["assertions"] = list;
  j["info"] = info;
  return j;
}

std::string Report::summary() const {
  std::ostringstream out;
  out << "suite " << suite << " (seed " << seed << "): " << (pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& a : assertions) {
    out << "  [" << (a.pass ? "PASS" : "FAIL") << "] " << a.claim << "  (" << a.ref << "; n=" << a.n_samples;
    if (a.measured && a.n_samples > 0) out << ", range [" << a.min_norm << ", " << a.max_norm << "]";
    if (a.indeterminate > 0) out << ", indeterminate " << a.indeterminate;
    out << ")\n";
    for (const auto& w : a.witnesses) out << "      " << w << "\n";
  }
  for (const auto& line : info) out << "  [INFO] " << line << "\n";
  return out.str();
}

namespace detail {
namespace {

struct Outcome {
  double value = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  Multivector omega;
};

}  // namespace

ProbeResult run_probe(const Probe& probe, const VerifyOptions& options) {
  const auto outcomes = parallel_map<Outcome>(probe.n, options.threads, [&](std::size_t i) {
    Outcome o;
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
      Rng rng = make_rng(options.seed, probe.stream, i * 16 + static_cast<std::size_t>(attempt));
      Multivector omega = probe.sample(rng, i);
      if (probe.reject && probe.reject(omega)) continue;
      o.omega = omega;
      o.value = probe.measure(omega);
      o.verdict = verdict(o.value, probe.thresholds);
      if (o.verdict != Verdict::Indeterminate) break;
    }
    return o;
  });

  ProbeResult result;
  Assertion& a = result.assertion;
  a.claim = probe.claim;
  a.ref = probe.ref;
  a.n_samples = probe.n;
  a.measured = true;
  a.min_norm = std::numeric_limits<double>::infinity();
  a.max_norm = 0.0;
  const Verdict wanted = probe.expect == Expect::Vanish ? Verdict::Vanishes : Verdict::NonVanishing;
  std::size_t failures = 0;
  for (const auto& o : outcomes) {
    result.samples.push_back(o.omega);
    a.min_norm = std::min(a.min_norm, o.value);
    a.max_norm = std::max(a.max_norm, o.value);
    if (o.verdict == Verdict::Indeterminate) {
      ++a.indeterminate;
      continue;
    }
    if (o.verdict != wanted) {
      ++failures;
      if (a.witnesses.size() < 5) {
        std::ostringstream w;
        w << "value " << o.value << " at " << describe(o.omega);
        a.witnesses.push_back(w.str());
      }
    }
  }
  if (probe.n == 0) a.min_norm = 0.0;
  a.pass = failures == 0 && a.indeterminate * 100 <= probe.n;
  return result;
}

std::function<Multivector(Rng&, std::size_t)> from_locus(const Locus& locus) {
  return [locus](Rng& rng, std::size_t) { return locus.sample(rng); };
}

std::function<Multivector(Rng&, std::size_t)> from_points(std::vector<Multivector> points) {
  return [points = std::move(points)](Rng&, std::size_t i) { return points[i % points.size()]; };
}

double excess(const GHSignature& sig, std::string_view digits) {
  double m = 0.0;
  for (int c = 1; c <= 4; ++c)
    if (digits.find(static_cast<char>('0' + c)) == std::string_view::npos) m = std::max(m, sig.w(c));
  return m;
}

Assertion boolean_assertion(std::string claim, std::string ref, std::size_t n, bool pass,
                            std::vector<std::string> witnesses) {
  Assertion a;
  a.claim = std::move(claim);
  a.ref = std::move(ref);
  a.n_samples = n;
  a.pass = pass;
  a.witnesses = std::move(witnesses);
  return a;
}

std::string describe(const Multivector& omega) { return "ω = " + to_string(omega, 6); }

}  // namespace detail
}  // namespace nilherm

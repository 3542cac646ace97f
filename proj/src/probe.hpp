#pragma once

// Sampling probes shared by the verification suites.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nilherm/moduli.hpp"
#include "nilherm/verify.hpp"

namespace nilherm::detail {

enum class Expect { Vanish, NonVanish };

struct Probe {
  std::string claim;
  std::string ref;
  std::size_t n = 0;
  std::uint64_t stream = 0;
  std::function<Multivector(Rng&, std::size_t index)> sample;
  std::function<double(const Multivector&)> measure;
  Expect expect = Expect::Vanish;
  Thresholds thresholds;
  /// Samples for which this returns true are drawn again (e.g. negatives
  /// that happen to lie on the claimed set).
  std::function<bool(const Multivector&)> reject;
};

struct ProbeResult {
  Assertion assertion;
  std::vector<Multivector> samples;
};

inline constexpr int kMaxResamples = 3;

ProbeResult run_probe(const Probe& probe, const VerifyOptions& options);

/// Sampler over a locus, ignoring the sample index.
std::function<Multivector(Rng&, std::size_t)> from_locus(const Locus& locus);
/// Cycles through a fixed list of points.
std::function<Multivector(Rng&, std::size_t)> from_points(std::vector<Multivector> points);

/// max w_c over components c outside `digits`; ω lies in Z_digits iff this vanishes.
double excess(const GHSignature& sig, std::string_view digits);

Assertion boolean_assertion(std::string claim, std::string ref, std::size_t n, bool pass,
                            std::vector<std::string> witnesses = {});

std::string describe(const Multivector& omega);

}  // namespace nilherm::detail

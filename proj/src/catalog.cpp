#include "nilherm/catalog.hpp"

#include <filesystem>

namespace nilherm::catalog {
namespace {

constexpr std::array<std::string_view, 5> kNames{"abelian", "iwasawa", "g2", "g3", "g2-modified-metric"};

/// d e^k from one-based index pairs with unit coefficients.
RationalForm pairs(std::initializer_list<std::array<int, 2>> terms) {
  RationalForm out;
  for (const auto& [a, b] : terms) {
    const int i = a - 1, j = b - 1;
    const unsigned mask = (1u << i) | (1u << j);
    out.add(mask, i < j ? Rational(1) : Rational(-1));
  }
  return out;
}

constexpr std::optional<bool> V = true;
constexpr std::optional<bool> N = false;
constexpr std::optional<bool> A = std::nullopt;

}  // namespace

std::span<const std::string_view> names() { return kNames; }

CatalogEntry load(std::string_view name) {
  std::array<RationalForm, 6> d;
  if (name == "abelian") {
    return {LieAlgebra("abelian", d), 1, 6, {{"cp3:uniform", {V, V, V, V}}, {"vertex:w0", {V, V, V, V}}}};
  }
  if (name == "iwasawa") {
    d[4] = pairs({{1, 3}, {4, 2}});
    d[5] = pairs({{1, 4}, {2, 3}});
    return {LieAlgebra("iwasawa", d),
            2,
            4,
            {{"vertex:w0", {V, V, N, V}},
             {"vertex:w3", {N, N, V, V}},
             {"face:3", {V, A, A, V}},
             {"face:0", {A, A, A, V}},
             {"edge:1,2", {V, V, N, V}},
             {"sphere:S", {V, N, V, V}},
             {"pivertex:0", {V, N, V, V}},
             {"cp3:uniform", {N, N, N, N}}}};
  }
  if (name == "g2" || name == "g2-modified-metric") {
    d[4] = pairs({{1, 2}});
    d[5] = pairs({{1, 4}, {2, 3}});
    if (name == "g2") {
      return {LieAlgebra("g2", d),
              2,
              4,
              {{"vertex:w1", {V, V, A, A}},
               {"vertex:w2", {V, V, A, A}},
               {"epsilon:2.0943951023931957", {V, V, A, A}},
               {"epsilon:-2.0943951023931957", {V, V, A, A}},
               {"circle:CS", {V, N, V, V}},
               {"circle:CS'", {A, A, A, V}},
               {"epsilon:0", {A, A, A, V}},
               {"equator:0,2", {A, A, A, V}},
               {"cp3:uniform", {N, N, N, N}}}};
    }
    return {LieAlgebra("g2-modified-metric", d, Gram::diagonal({0.25, 0.25, 1, 1, 1, 1})),
            2,
            4,
            {{"vertex:w1", {V, V, A, A}},
             {"vertex:w2", {V, V, A, A}},
             {"epsilon:3.141592653589793", {V, V, A, A}},
             {"cp3:uniform", {A, N, A, A}}}};
  }
  if (name == "g3") {
    d[4] = pairs({{1, 2}});
    d[5] = pairs({{1, 5}, {3, 4}});
    return {LieAlgebra("g3", d),
            3,
            4,
            {{"pivertex:1", {V, N, V, N}},
             {"pivertex:2", {V, N, V, N}},
             {"edge:0,2", {V, A, A, A}},
             {"gen-edge:+15", {V, A, A, A}},
             {"gen-edge:+26", {A, A, A, V}},
             {"equator:0,3", {A, A, A, V}},
             {"equator:1,2", {A, A, A, V}},
             {"cp3:uniform", {N, N, N, N}}}};
  }
  throw InvalidInput("unknown catalog algebra '" + std::string(name) + "'");
}

LieAlgebra resolve(const std::string& ref) {
  for (auto n : kNames)
    if (ref == n) return load(n).algebra;
  if (!std::filesystem::exists(ref))
    throw InvalidInput("'" + ref + "' is neither a catalog algebra nor an existing file");
  return load_algebra_file(ref);
}

}  // namespace nilherm::catalog

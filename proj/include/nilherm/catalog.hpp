#pragma once

// Built-in algebras: abelian, iwasawa, g2, g3 and g2 with the metric
// diag(1/4, 1/4, 1, 1, 1, 1).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilherm/liealg.hpp"

namespace nilherm::catalog {

/// Expected vanishing of w1..w4 on a locus; nullopt entries are unconstrained.
struct KnownResult {
  std::string locus;
  std::array<std::optional<bool>, 4> vanishing;
};

struct CatalogEntry {
  LieAlgebra algebra;
  std::optional<int> step;
  int b1 = 0;
  std::vector<KnownResult> known_results;
};

std::span<const std::string_view> names();

/// Throws InvalidInput for unknown names.
CatalogEntry load(std::string_view name);

/// A catalog name, or otherwise a path to a JSON algebra file.
LieAlgebra resolve(const std::string& ref);

}  // namespace nilherm::catalog

#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 invalid input, 3 point not in the moduli space, 4 internal error.

#include <ostream>
#include <string>
#include <vector>

#include "nilherm/exterior.hpp"
#include "nilherm/liealg.hpp"

namespace nilherm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotInModuli = 3;
inline constexpr int kExitInternal = 4;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Point reference in the orthonormal frame of `algebra`'s metric:
///   cp3:[u0,u1,u2,u3]   entries are numbers or [re, im] pairs
///   pab:{"a":..,"b":..,"P":4×4}   P optional (identity)
///   omega:[15 coefficients]   e-coordinates, lexicographic e12, e13, ..., e56
///   any locus directive; non-point loci are sampled once with `seed`.
Multivector parse_point(const std::string& ref, const LieAlgebra& algebra, std::uint64_t seed = 0);

}  // namespace nilherm::cli

#include <cmath>
#include <fstream>
#include <set>

#include "nilherm/liealg.hpp"

namespace nilherm {
namespace {

using nlohmann::json;

Rational parse_coefficient(const json& c) {
  if (c.is_number_integer()) return Rational(c.get<long long>());
  if (c.is_number()) {
    const double x = c.get<double>();
    if (!std::isfinite(x)) throw InvalidInput("coefficient is not finite");
    const RationalForm r = to_rational(Multivector::scalar(Complex(x)));
    if (std::abs(boost::rational_cast<double>(r[0]) - x) > 1e-12 * std::max(1.0, std::abs(x)))
      throw InvalidInput("coefficient " + c.dump() + " is not a small rational; use a \"p/q\" string");
    return r[0];
  }
  if (c.is_string()) {
    const std::string s = c.get<std::string>();
    try {
      const auto slash = s.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const long long n = std::stoll(s, &used);
        if (used != s.size()) throw InvalidInput("");
        return Rational(n);
      }
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      const long long p = std::stoll(num, &used);
      if (used != num.size()) throw InvalidInput("");
      const long long q = std::stoll(den, &used);
      if (used != den.size() || q == 0) throw InvalidInput("");
      return Rational(p, q);
    } catch (const std::exception&) {
      throw InvalidInput("malformed rational coefficient \"" + s + "\"");
    }
  }
  throw InvalidInput("coefficient must be a number or \"p/q\" string");
}

int parse_index(const json& v) {
  if (!v.is_number_integer()) throw InvalidInput("generator index must be an integer");
  const int i = v.get<int>();
  if (i < 1 || i > kDim) throw InvalidInput("generator index " + std::to_string(i) + " out of range 1..6");
  return i - 1;
}

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

LieAlgebra algebra_from_json(const json& j, bool require_distinguished) {
  if (!j.is_object()) throw InvalidInput("algebra description must be a JSON object");
  const std::string name = j.value("name", std::string("custom"));
  if (!j.contains("d") || !j["d"].is_object()) throw InvalidInput("algebra needs a \"d\" object");

  std::array<RationalForm, 6> d;
  for (const auto& [key, terms] : j["d"].items()) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used) - 1;
      if (used != key.size()) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("\"d\" key \"" + key + "\" is not a generator index");
    }
    if (k < 0 || k >= kDim) throw InvalidInput("\"d\" key \"" + key + "\" out of range 1..6");
    if (!terms.is_array()) throw InvalidInput("d e^" + key + " must be a list of [i, j, coeff]");
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3) throw InvalidInput("each term must be [i, j, coeff]");
      const int a = parse_index(t[0]), b = parse_index(t[1]);
      if (a == b) throw InvalidInput("term e^{ii} vanishes identically");
      const unsigned mask = (1u << a) | (1u << b);
      const Rational sign = a < b ? Rational(1) : Rational(-1);
      d[static_cast<std::size_t>(k)].add(mask, sign * parse_coefficient(t[2]));
    }
    d[static_cast<std::size_t>(k)].canonicalize();
  }

  Gram gram;
  if (j.contains("gram")) {
    const auto& g = j["gram"];
    if (!g.is_array() || g.size() != 6) throw InvalidInput("\"gram\" must be a 6×6 array");
    Matrix6d m;
    for (int r = 0; r < kDim; ++r) {
      const auto& row = g[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != 6) throw InvalidInput("\"gram\" must be a 6×6 array");
      for (int c = 0; c < kDim; ++c) {
        const auto& x = row[static_cast<std::size_t>(c)];
        m(r, c) = x.is_string() ? boost::rational_cast<double>(parse_coefficient(x)) : x.get<double>();
      }
    }
    gram = Gram(m);
  }

  Distinguished dist = kDefaultDistinguished;
  if (j.contains("D")) {
    const auto& dj = j["D"];
    if (!dj.is_array() || dj.size() != 4) throw InvalidInput("\"D\" must list four generator indices");
    std::set<int> seen;
    for (std::size_t i = 0; i < 4; ++i) {
      dist[i] = parse_index(dj[i]);
      seen.insert(dist[i]);
    }
    if (seen.size() != 4) throw InvalidInput("\"D\" indices must be distinct");
  } else if (require_distinguished) {
    throw InvalidInput("custom algebras must specify the distinguished subspace \"D\"");
  }

  LieAlgebra out(name, d, gram, dist);
  if (!satisfies_jacobi(out)) throw InvalidInput("d∘d ≠ 0: '" + name + "' violates the Jacobi identity");
  return out;
}

json algebra_to_json(const LieAlgebra& algebra) {
  json j;
  j["name"] = algebra.name();
  json d = json::object();
  for (int k = 0; k < kDim; ++k) {
    json terms = json::array();
    for (unsigned m : masks_of_grade(2)) {
      const int a = std::countr_zero(m), b = std::countr_zero(m & (m - 1));
      if (const auto& exact = algebra.exact_generators()) {
        const Rational c = (*exact)[static_cast<std::size_t>(k)][m];
        if (c.numerator() != 0) terms.push_back({a + 1, b + 1, rational_string(c)});
      } else {
        const double c = algebra.d_generator(k)[m].real();
        if (c != 0.0) terms.push_back({a + 1, b + 1, c});
      }
    }
    if (!terms.empty()) d[std::to_string(k + 1)] = terms;
  }
  j["d"] = d;
  if (!algebra.gram().is_identity()) {
    json g = json::array();
    for (int r = 0; r < kDim; ++r) {
      json row = json::array();
      for (int c = 0; c < kDim; ++c) row.push_back(algebra.gram().metric()(r, c));
      g.push_back(row);
    }
    j["gram"] = g;
  }
  json dist = json::array();
  for (int i : algebra.distinguished()) dist.push_back(i + 1);
  j["D"] = dist;
  return j;
}

LieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open algebra file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw InvalidInput("algebra file '" + path + "' is not valid JSON: " + ex.what());
  }
  return algebra_from_json(j);
}

}  // namespace nilherm

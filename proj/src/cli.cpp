#include "nilherm/cli.hpp"

#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nilherm/catalog.hpp"
#include "nilherm/ghclass.hpp"
#include "nilherm/moduli.hpp"
#include "nilherm/verify.hpp"
#include "parallel.hpp"
#include "probe.hpp"

namespace nilherm::cli {
namespace {

using nlohmann::json;

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    throw InvalidInput(what + " is not valid JSON: '" + std::string(text) + "'");
  }
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidInput(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(what + " must be finite");
  return x;
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return {number(v, "coordinate"), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], "real part"), number(v[1], "imaginary part")};
  throw InvalidInput("CP³ coordinates must be numbers or [re, im] pairs");
}

Multivector parse_cp3(std::string_view body) {
  const json j = parse_json(body, "cp3 point");
  if (!j.is_array() || j.size() != 4) throw InvalidInput("cp3 point needs four homogeneous coordinates");
  std::array<Complex, 4> u;
  for (std::size_t i = 0; i < 4; ++i) u[i] = parse_complex(j[i]);
  return omega_from_cp3(Cp3Point::normalized(u));
}

Multivector parse_pab(std::string_view body) {
  const json j = parse_json(body, "pab point");
  double a = 0.0, b = 0.0;
  SO4Element p;
  if (j.is_array() && j.size() == 2) {
    a = number(j[0], "a");
    b = number(j[1], "b");
  } else if (j.is_object() && j.contains("a") && j.contains("b")) {
    a = number(j["a"], "a");
    b = number(j["b"], "b");
    if (j.contains("P")) {
      const json& m = j["P"];
      if (!m.is_array() || m.size() != 4) throw InvalidInput("P must be a 4×4 array");
      Matrix4d pm;
      for (int r = 0; r < 4; ++r) {
        const json& row = m[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 4) throw InvalidInput("P must be a 4×4 array");
        for (int c = 0; c < 4; ++c) pm(r, c) = number(row[static_cast<std::size_t>(c)], "P entry");
      }
      p = SO4Element(pm, 1e-9);
    }
  } else {
    throw InvalidInput("pab point must be [a, b] or {\"a\": .., \"b\": .., \"P\": 4×4}");
  }
  return omega_pab(p, a, b);
}

Multivector parse_omega(std::string_view body, const Gram& gram) {
  const json j = parse_json(body, "omega");
  if (!j.is_array() || j.size() != 15) throw InvalidInput("omega needs 15 coefficients (e12, e13, ..., e56)");
  Eigen::VectorXcd v(15);
  for (std::size_t i = 0; i < 15; ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "omega coefficient");
  const AlmostComplexStructure jm = J_from_omega(from_grade_coordinates(v, 2), gram);
  return omega_from_J(jm);
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

json real_list(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  return out;
}

json matrix_json(const Matrix6d& m) {
  json out = json::array();
  for (int r = 0; r < kDim; ++r) {
    json row = json::array();
    for (int c = 0; c < kDim; ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json cp3_json(const Cp3Point& u) {
  json out = json::array();
  for (const auto& z : u.u) out.push_back({z.real(), z.imag()});
  return out;
}

/// Fundamental form in the e-coordinates of the algebra's metric.
json omega_json(const Multivector& frame_omega, const Gram& gram) {
  return real_list(grade_coordinates(gram.from_orthonormal(frame_omega), 2));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Common {
  std::string algebra = "iwasawa";
  double tol = 1e-9;
  double floor = 1e-6;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  Thresholds thresholds() const {
    if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
    if (!(floor >= tol)) throw InvalidInput("--nonvanish-floor must be at least --tol");
    return {tol, floor};
  }
};

void add_common(CLI::App& cmd, Common& c, bool with_algebra) {
  if (with_algebra)
    cmd.add_option("--algebra", c.algebra, "Catalog name or algebra JSON file")->capture_default_str();
  cmd.add_option("--tol", c.tol, "Vanishing threshold")->capture_default_str();
  cmd.add_option("--nonvanish-floor", c.floor, "Non-vanishing floor")->capture_default_str();
  cmd.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

int cmd_classify(const Common& c, const std::string& point, std::ostream& out) {
  const LieAlgebra algebra = catalog::resolve(c.algebra);
  const Classifier cls(algebra, c.thresholds());
  const Multivector omega = parse_point(point, algebra, c.seed);
  const AlmostComplexStructure j = J_from_omega(omega);
  json report = cls.classify(j).to_json();
  report["algebra"] = algebra.name();
  report["point"] = point;
  report["omega"] = omega_json(omega, algebra.gram());
  report["cp3"] = cp3_json(cp3_from_J(j));
  report["J"] = matrix_json(j.matrix());
  out << report.dump(2) << "\n";
  return kExitOk;
}

struct Row {
  bool ok = false;
  Cp3Point u;
  GHSignature sig;
};

int cmd_scan(const Common& c, const std::string& locus_ref, std::size_t n, const std::string& format, std::ostream& out,
             std::ostream& err) {
  if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
  const LieAlgebra algebra = catalog::resolve(c.algebra);
  const Classifier cls(algebra, c.thresholds());
  const Locus locus = Locus::parse(locus_ref);
  const auto rows = detail::parallel_map<Row>(n, c.threads, [&](std::size_t i) {
    Row r;
    for (int attempt = 0; attempt <= detail::kMaxResamples; ++attempt) {
      Rng rng = make_rng(c.seed, 0, i * 16 + static_cast<std::size_t>(attempt));
      const Multivector omega = locus.sample(rng);
      const AlmostComplexStructure j = J_from_omega(omega);
      r.sig = cls.classify(j);
      r.u = cp3_from_J(j);
      r.ok = !r.sig.any_indeterminate();
      if (r.ok) break;
    }
    return r;
  });

  std::size_t exhausted = 0;
  std::array<double, 4> lo, hi{};
  lo.fill(std::numeric_limits<double>::infinity());
  for (const auto& r : rows) {
    if (!r.ok) {
      ++exhausted;
      continue;
    }
    for (std::size_t k = 0; k < 4; ++k) {
      lo[k] = std::min(lo[k], r.sig.norms[k]);
      hi[k] = std::max(hi[k], r.sig.norms[k]);
    }
  }
  const std::size_t kept = rows.size() - exhausted;
  json summary = {{"rows", kept}, {"exhausted", exhausted}, {"min", kept ? json(lo) : json()},
                  {"max", kept ? json(hi) : json()}};

  if (format == "csv") {
    out << "point_id,u0re,u0im,u1re,u1im,u2re,u2im,u3re,u3im,w1,w2,w3,w4,pattern,label\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      if (!r.ok) continue;
      out << i;
      for (const auto& z : r.u.u) out << ',' << fmt(z.real()) << ',' << fmt(z.imag());
      for (double w : r.sig.norms) out << ',' << fmt(w);
      out << ',' << r.sig.pattern() << ",\"" << r.sig.label << "\"\n";
    }
    err << "scan " << algebra.name() << " " << locus.name() << " seed " << c.seed << ": " << summary.dump() << "\n";
    return kExitOk;
  }

  json list = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (!r.ok) continue;
    json row = r.sig.to_json();
    row["point_id"] = i;
    row["cp3"] = cp3_json(r.u);
    row["pattern"] = r.sig.pattern();
    list.push_back(row);
  }
  json report = {{"algebra", algebra.name()}, {"locus", locus.name()}, {"seed", c.seed},   {"tol", c.tol},
                 {"nonvanish_floor", c.floor}, {"requested", n},       {"summary", summary}, {"rows", list}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, bool as_json, std::ostream& out) {
  VerifyOptions options;
  options.seed = c.seed;
  options.thresholds = c.thresholds();
  options.threads = c.threads;
  const Report report = run_suite(suite, options);
  if (as_json)
    out << report.to_json().dump(2) << "\n";
  else
    out << report.summary();
  return report.pass() ? kExitOk : kExitFail;
}

int cmd_cohomology(const Common& c, std::ostream& out) {
  const LieAlgebra algebra = catalog::resolve(c.algebra);
  const CohomologyProfile profile = cohomology(algebra);
  json kernel = json::array(), image = json::array(), image_text = json::array();
  for (const auto& f : profile.kernel_basis) kernel.push_back(real_list(grade_coordinates(f, 1)));
  for (const auto& f : profile.image_basis) {
    image.push_back(real_list(grade_coordinates(f, 2)));
    image_text.push_back(to_string(f));
  }
  json report = {{"algebra", algebra.name()},
                 {"betti", profile.betti},
                 {"b1", profile.betti[1]},
                 {"nilpotent", profile.step.has_value()},
                 {"step", profile.step ? json(*profile.step) : json()},
                 {"kernel_basis", kernel},
                 {"image_basis", image},
                 {"image_forms", image_text}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_construct(const Common& c, std::ostream& out) {
  const LieAlgebra algebra = catalog::resolve(c.algebra);
  const AlmostComplexStructure j = cosymplectic_construct(algebra);
  const Classifier cls(algebra, c.thresholds());
  const Multivector omega = omega_from_J(j);
  json report = {{"algebra", algebra.name()},
                 {"omega", omega_json(omega, algebra.gram())},
                 {"omega_form", to_string(algebra.gram().from_orthonormal(omega), 9)},
                 {"J", matrix_json(j.matrix())},
                 {"signature", cls.classify(j).to_json()}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

Multivector parse_point(const std::string& ref, const LieAlgebra& algebra, std::uint64_t seed) {
  const std::string_view text = ref;
  if (starts_with(text, "cp3:[")) return parse_cp3(text.substr(4));
  if (starts_with(text, "pab:")) return parse_pab(text.substr(4));
  if (starts_with(text, "omega:")) return parse_omega(text.substr(6), algebra.gram());
  const Locus locus = Locus::parse(text);
  Rng rng = make_rng(seed);
  return locus.sample(rng);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gray–Hervella classification of invariant almost Hermitian structures on 6-dimensional nilpotent Lie algebras",
               "nilherm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::string point, locus = "cp3:uniform", format = "csv", suite;
  std::size_t n = 100;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "Classify one point of the moduli space");
  add_common(*classify, common, true);
  classify->add_option("--point", point, "cp3:[..], pab:{..}, omega:[15 coefficients] or a locus directive")->required();

  auto* scan = app.add_subcommand("scan", "Classify seeded samples of a locus");
  add_common(*scan, common, true);
  scan->add_option("--locus", locus, "Locus directive, e.g. face:3, circle:CS, cp3:uniform")->capture_default_str();
  scan->add_option("--n", n, "Number of samples")->capture_default_str();
  scan->add_option("--format", format, "csv or json")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_common(*verify, common, false);
  verify->add_option("suite", suite, "theorem1, theorem2, theorem3, prop4 or oracles")->required();
  verify->add_flag("--json", as_json, "Emit the JSON report");

  auto* coh = app.add_subcommand("cohomology", "Betti numbers, nilpotency step and image of d");
  add_common(*coh, common, true);

  auto* construct = app.add_subcommand("construct-cosymplectic", "Build a structure with dω∧ω = 0");
  add_common(*construct, common, true);

  std::vector<std::string> argv_storage{"nilherm"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (*classify) return cmd_classify(common, point, out);
    if (*scan) return cmd_scan(common, locus, n, format, out, err);
    if (*verify) return cmd_verify(common, suite, as_json, out);
    if (*coh) return cmd_cohomology(common, out);
    if (*construct) return cmd_construct(common, out);
  } catch (const NotInModuli& e) {
    err << "error: not a point of the moduli space: " << e.what() << "\n";
    return kExitNotInModuli;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInvalid;
}

}  // namespace nilherm::cli

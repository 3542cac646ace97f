#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nilherm/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nilherm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json classify(const std::string& algebra, const std::string& point) {
  const Result r = call({"classify", "--algebra", algebra, "--point", point});
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify labels") {
  const json iw = classify("iwasawa", "cp3:[1,0,0,0]");
  CHECK(iw["label"] == "W3 (cosymplectic Hermitian)");
  CHECK(iw["vanishing"] == json({true, true, false, true}));
  CHECK(iw["algebra"] == "iwasawa");
  CHECK(iw["indeterminate"].empty());
  CHECK(iw["omega"].size() == 15);
  CHECK(iw["J"].size() == 6);

  const json ab = classify("abelian", "cp3:[0,1,0,0]");
  CHECK(ab["label"] == "Kähler");
  for (const char* w : {"w1", "w2", "w3", "w4"}) CHECK(ab[w].get<double>() < 1e-12);

  const json g3 = classify("g3", "pivertex:1");
  CHECK(g3["vanishing"] == json({true, false, true, false}));
}

TEST_CASE("point formats agree") {
  const json a = classify("g2", "cp3:[[0,1],0,0,0]");
  const json b = classify("g2", "pab:[1,0]");
  const json c = classify("g2", "pab:{\"a\":1,\"b\":0,\"P\":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}");
  const json v = classify("g2", "vertex:0");
  // ω₀ = e12 + e34 + e56 in lexicographic e-coordinates
  const json o = classify("g2", "omega:[1,0,0,0,0,0,0,0,0,1,0,0,0,0,1]");
  for (const json* x : {&b, &c, &v, &o}) {
    CHECK((*x)["vanishing"] == a["vanishing"]);
    for (const char* w : {"w1", "w2", "w3", "w4"}) CHECK((*x)[w].get<double>() == doctest::Approx(a[w].get<double>()).epsilon(1e-9));
  }
  CHECK(o["omega"] == json({1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(!call({"--help"}).out.empty());
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"classify", "--algebra", "g7", "--point", "vertex:0"}).code == 2);
  CHECK(call({"classify", "--point", "nowhere:1"}).code == 2);
  CHECK(call({"classify", "--point", "cp3:[1,0,0]"}).code == 2);
  CHECK(call({"classify", "--point", "cp3:[0,0,0,0]"}).code == 2);
  CHECK(call({"classify", "--point", "pab:{\"a\":1}"}).code == 2);
  CHECK(call({"classify", "--point", "omega:[1,2,3]"}).code == 2);
  CHECK(call({"classify", "--point", "omega:[1,0,0"}).code == 2);
  // −ω₀ induces −J₀
  const Result neg = call({"classify", "--point", "omega:[-1,0,0,0,0,0,0,0,0,-1,0,0,0,0,-1]"});
  CHECK(neg.code == 3);
  CHECK(neg.err.find("moduli") != std::string::npos);
  // degenerate
  CHECK(call({"classify", "--point", "omega:[1,0,0,0,0,0,0,0,0,1,0,0,0,0,0]"}).code >= 2);
  CHECK(call({"verify", "theorem9"}).code == 2);
  CHECK(call({"scan", "--locus", "face:9"}).code == 2);
  CHECK(call({"scan", "--format", "xml"}).code == 2);
  CHECK(call({"scan", "--tol", "0"}).code == 2);
  CHECK(call({"scan", "--tol", "1e-6", "--nonvanish-floor", "1e-9"}).code == 2);
}

TEST_CASE("custom algebra file") {
  const auto good = temp_file("nilherm_test_h.json",
                              R"({"name":"heis","d":{"6":[[1,2,1],[3,4,"1/2"]]},"D":[1,2,3,4]})");
  const Result r = call({"cohomology", "--algebra", good.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["algebra"] == "heis");
  CHECK(j["b1"] == 5);
  CHECK(j["step"] == 2);
  CHECK(j["image_forms"] == json({"e12 + 0.5 e34"}));

  const auto bad = temp_file("nilherm_test_bad.json", R"({"name":"x","d":{"6":[[1,2,1]]})");
  CHECK(call({"cohomology", "--algebra", bad.string()}).code == 2);
  const auto broken = temp_file("nilherm_test_broken.json", "{\"d\": ");
  CHECK(call({"cohomology", "--algebra", broken.string()}).code == 2);
  const auto jacobi = temp_file("nilherm_test_jacobi.json", R"({"d":{"4":[[1,2,1]],"5":[[1,4,1]],"6":[[4,5,1]]},"D":[1,2,3,4]})");
  CHECK(call({"cohomology", "--algebra", jacobi.string()}).code == 2);
  for (const auto& p : {good, bad, broken, jacobi}) std::filesystem::remove(p);
}

TEST_CASE("scan csv") {
  const Result r = call({"scan", "--algebra", "iwasawa", "--locus", "face:3", "--n", "40"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"point_id", "u0re", "u0im", "u1re", "u1im", "u2re", "u2im", "u3re", "u3im",
                                            "w1", "w2", "w3", "w4", "pattern", "label"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() >= 15);
    CHECK(std::stod(rows[i][9]) < 1e-9);
    CHECK(std::abs(std::stod(rows[i][7])) < 1e-12);
    CHECK(std::abs(std::stod(rows[i][8])) < 1e-12);
  }
  CHECK(r.err.find("\"rows\":40") != std::string::npos);

  const Result cs = call({"scan", "--algebra", "g2", "--locus", "circle:CS", "--n", "30"});
  REQUIRE(cs.code == 0);
  const auto cs_rows = csv_rows(cs.out);
  REQUIRE(cs_rows.size() == 31);
  for (std::size_t i = 1; i < cs_rows.size(); ++i) CHECK(std::stod(cs_rows[i][11]) < 1e-9);
}

TEST_CASE("scan json and determinism") {
  const Result r = call({"scan", "--algebra", "g3", "--locus", "cp3:uniform", "--n", "10000", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["requested"] == 10000);
  CHECK(j["summary"]["rows"].get<int>() + j["summary"]["exhausted"].get<int>() == 10000);
  CHECK(j["rows"].size() == j["summary"]["rows"].get<std::size_t>());
  CHECK(j["summary"]["min"][1].get<double>() > 0.0);
  CHECK(j["summary"]["min"][1].get<double>() > 1e-6);

  const std::vector<std::string> base{"scan", "--algebra", "g2", "--locus", "cp3:uniform", "--n", "200", "--seed", "7"};
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.insert(args.end(), {"--threads", t});
    return call(args);
  };
  const Result one = with_threads("1"), two = with_threads("2");
  CHECK(one.out == two.out);
  CHECK(one.err == two.err);
  CHECK(one.out != call({"scan", "--algebra", "g2", "--n", "200", "--seed", "8"}).out);
}

TEST_CASE("verify, cohomology, construct") {
  const Result v = call({"verify", "prop4"});
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS") != std::string::npos);
  const Result vj = call({"verify", "prop4", "--json"});
  CHECK(vj.code == 0);
  CHECK(json::parse(vj.out)["suite"] == "prop4");

  const json g3 = json::parse(call({"cohomology", "--algebra", "g3"}).out);
  CHECK(g3["step"] == 3);
  CHECK(g3["b1"] == 4);
  CHECK(g3["betti"][0] == 1);
  CHECK(g3["betti"][6] == 1);
  CHECK(g3["kernel_basis"].size() == 4);
  CHECK(g3["image_basis"].size() == 2);
  CHECK(g3["image_forms"] == json({"e12", "e15 + e34"}));

  const Result c = call({"construct-cosymplectic", "--algebra", "iwasawa"});
  REQUIRE(c.code == 0);
  const json cj = json::parse(c.out);
  CHECK(cj["signature"]["w4"].get<double>() < 1e-9);
  CHECK(cj["J"].size() == 6);
  CHECK(call({"construct-cosymplectic", "--algebra", "abelian"}).code == 0);
}

}  // TEST_SUITE

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "bisep/catalog.hpp"
#include "bisep/cli.hpp"
#include "bisep/report.hpp"
#include "bisep/search.hpp"

using namespace bisep;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("bisep_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("catalog build errors") {
  CHECK(kind_of([] { build_catalog("no_such_entry"); }) == ErrorKind::UnknownEntry);
  CHECK(kind_of([] { build_catalog("matrix_over_triangular", {{"n", "9"}}); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { build_catalog("matrix_over_triangular", {{"m", "2"}}); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { build_catalog("group_pair", {{"H", "0,1,2"}}); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { build_catalog("field_extension", {{"p", "4"}}); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { build_catalog("identity_ext", {{"field", "f6"}}); }) == ErrorKind::BadParams);
}

TEST_CASE("every catalog entry survives a JSON round trip") {
  for (const auto& info : catalog_entries()) {
    CAPTURE(info.name);
    const CatalogObject o = build_catalog(info.name);
    CHECK_FALSE(o.expected.empty());
    const json j = subject_to_json(o.subject);
    const Subject back = subject_from_json(json::parse(j.dump()));
    CHECK(subject_to_json(back) == j);
  }
}

TEST_CASE("scalars serialize exactly") {
  const Field q = Field::rationals();
  const Scalar s(mpq_class(-3, 4));
  CHECK(scalar_to_json(q, s) == json("-3/4"));
  CHECK(scalar_from_json(q, json("-6/8")) == s);
  CHECK(scalar_from_json(q, json(5)) == Scalar(mpq_class(5)));
  const Field f4 = Field::extension(2, 2);
  const Scalar x = f4.from_coefficients({0, 1});
  CHECK(scalar_from_json(f4, scalar_to_json(f4, x)) == x);
  CHECK(field_from_json(field_to_json(f4)) == f4);
  CHECK(field_from_name("f2^2") == f4);
  CHECK(field_from_name("q") == q);
}

TEST_CASE("malformed input keeps its error kind") {
  json j = algebra_to_json(upper_triangular(Field::prime(2), 2));
  j["unit"] = json::array({0, 0, 0});
  CHECK(kind_of([&] { algebra_from_json(j); }) == ErrorKind::BadUnit);
  j.erase("unit");
  CHECK(kind_of([&] { algebra_from_json(j); }) == ErrorKind::Parse);
  CHECK(kind_of([] { subject_from_json(json::object()); }) == ErrorKind::Parse);
}

TEST_CASE("reports are deterministic without timings") {
  const ReportOptions opt{kDefaultBudget, true, false};
  for (const auto& info : catalog_entries()) {
    const Subject s = build_catalog(info.name).subject;
    const auto props = resolve_properties(s, {"all"});
    const std::string a = evaluate(s, info.name, props, opt).to_json(opt).dump();
    const std::string b = evaluate(s, info.name, props, opt).to_json(opt).dump();
    CHECK(a == b);
  }
}

TEST_CASE("catalog entries satisfy the implication lattice and their claims") {
  const ReportOptions opt{kDefaultBudget, false, false};
  for (const auto& info : catalog_entries()) {
    CAPTURE(info.name);
    const CatalogObject o = build_catalog(info.name);
    const PropertyReport r = evaluate(o.subject, info.name, resolve_properties(o.subject, {"all"}), opt);
    CHECK(r.implication_violations.empty());
    for (const auto& [prop, want] : o.expected) {
      CAPTURE(prop);
      const PropertyEntry* e = r.find(prop);
      REQUIRE(e);
      if (const bool* b = std::get_if<bool>(&want))
        CHECK(e->verdict == (*b ? Verdict::True : Verdict::False));
      else
        CHECK(e->value == std::get<std::uint64_t>(want));
    }
  }
}

TEST_CASE("property names are validated") {
  const Subject s = z2z2_over_z2();
  CHECK(resolve_properties(s, {"qf"}) == std::vector<std::string>{"qf_left", "qf_right"});
  CHECK(kind_of([&] { resolve_properties(s, {"sep_dual_pairing"}); }) == ErrorKind::BadParams);
  CHECK(kind_of([&] { resolve_properties(s, {"nonsense"}); }) == ErrorKind::BadParams);
}

TEST_CASE("search is the same serial and parallel") {
  SearchConfig cfg;
  cfg.max_dim_r = cfg.max_dim_s = 3;
  cfg.filter = {"frobenius"};
  cfg.expect = {"separable"};
  cfg.timing = false;
  const SearchResult serial = run_search(cfg);
  cfg.jobs = 4;
  const SearchResult parallel = run_search(cfg);
  CHECK(serial.report.dump() == parallel.report.dump());
  // F2[C2]/F2 and its relatives are Frobenius without being separable
  CHECK(serial.violations > 0);
  for (const auto& v : serial.report["violations"]) CHECK(v["reverified"].get<bool>());
}

TEST_CASE("search candidates are proper and deduplicated") {
  SearchConfig cfg;
  cfg.max_dim_r = cfg.max_dim_s = 3;
  SearchStats stats;
  const auto cands = search_candidates(cfg, &stats);
  CHECK(stats.random_accepted <= stats.random_attempts);
  std::set<std::string> keys;
  for (const auto& c : cands) {
    CHECK(c.ext.S().dim() < c.ext.R().dim());
    CHECK(keys.insert(extension_to_json(c.ext).dump()).second);
  }
}

TEST_CASE("cli check on a catalog entry") {
  const Run r = cli({"check", "--catalog", "z2z2_over_z2", "--props", "split,separable,frobenius", "--witnesses",
                     "--no-timing"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  for (const char* p : {"split", "separable", "frobenius"}) {
    CHECK(j["properties"][p]["verdict"] == "true");
    CHECK(j["properties"][p].contains("witness"));
  }
  CHECK(cli({"check", "--catalog", "matrix_over_triangular", "--props", "qf", "--no-timing"}).out ==
        cli({"check", "--catalog", "matrix_over_triangular", "--props", "qf", "--no-timing"}).out);
  const json qf = json::parse(cli({"check", "--catalog", "matrix_over_triangular", "--props", "qf"}).out);
  CHECK(qf["properties"]["qf_left"]["verdict"] == "false");
  CHECK(qf["properties"]["qf_right"]["verdict"] == "false");
}

TEST_CASE("cli check on an emitted file") {
  const Run emit = cli({"catalog", "emit", "identity_ext", "--param", "algebra=k"});
  REQUIRE(emit.code == kExitOk);
  const std::string path = temp_file("identity.json", emit.out);
  const Run r = cli({"check", "--input", path, "--props", "separable", "--witnesses", "--no-timing"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["properties"]["separable"]["verdict"] == "true");
  // e = 1 (x) 1: the single pure tensor with coefficient 1
  CHECK(j["properties"]["separable"]["witness"]["element"] == json::parse("[[0,0,1]]"));
}

TEST_CASE("cli input errors exit 2 with a JSON diagnostic") {
  const std::string bad = temp_file("bad.json", "{\"iota\": [");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"check", "--input", bad},
           {"check", "--catalog", "nope"},
           {"check"},
           {"check", "--catalog", "group_pair", "--param", "G=C2", "--param", "zz=1"},
           {"check", "--catalog", "z2z2_over_z2", "--props", "bogus"},
           {"search", "--field", "f4x"},
           {"frobnicate"}}) {
    const Run r = cli(args);
    CHECK(r.code == kExitInput);
    const json d = json::parse(r.err);
    CHECK(d["error"].contains("kind"));
    CHECK(d["error"].contains("message"));
  }
}

TEST_CASE("cli strict mode reports unknown verdicts") {
  const std::vector<std::string> args{"check", "--catalog", "z2z2_over_z2", "--props", "frobenius", "--budget", "2"};
  CHECK(cli(args).code == kExitOk);
  auto strict = args;
  strict.push_back("--strict");
  CHECK(cli(strict).code == kExitUnknown);
}

TEST_CASE("cli search exits 1 when the expectation fails") {
  const Run ok = cli({"search", "--max-dim-r", "3", "--max-dim-s", "3", "--no-timing"});
  CHECK(ok.code == kExitOk);
  CHECK(json::parse(ok.out)["violations"].empty());
  const Run bad = cli({"search", "--max-dim-r", "2", "--filter", "frobenius", "--expect", "separable", "--format",
                       "text"});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.out.find("violation") != std::string::npos);
}

TEST_CASE("cli catalog list") {
  const Run r = cli({"catalog", "list"});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out).size() == catalog_entries().size());
}

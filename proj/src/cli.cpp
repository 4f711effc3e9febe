#include "bisep/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "bisep/acceptance.hpp"
#include "bisep/catalog.hpp"
#include "bisep/report.hpp"
#include "bisep/search.hpp"

namespace bisep {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

CatalogParams parse_params(const std::vector<std::string>& kv) {
  CatalogParams p;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::BadParams, "--param expects key=value, got \"" + s + "\"");
    p[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return p;
}

json diagnostic(const std::string& kind, const std::string& message, const std::vector<std::size_t>& witness = {}) {
  json d{{"error", {{"kind", kind}, {"message", message}}}};
  if (!witness.empty()) d["error"]["witness"] = witness;
  return d;
}

struct Common {
  std::uint64_t budget = default_budget();
  std::string format;  // empty: text for verify-paper, json elsewhere
  bool no_timing = false;
  bool strict = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "search budget (default: BISEP_BUDGET or 1000000)");
  cmd->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--no-timing", c.no_timing, "omit timings so output is byte-stable");
  cmd->add_flag("--strict", c.strict, "exit 3 when any verdict is unknown");
}

// ----- check ---------------------------------------------------------------

struct CheckArgs {
  std::string input, catalog, props = "all";
  std::vector<std::string> params;
  bool witnesses = false;
};

int do_check(const CheckArgs& a, const Common& c, std::ostream& out) {
  if (a.input.empty() == a.catalog.empty()) throw Error(ErrorKind::BadParams, "give exactly one of --input and --catalog");
  Subject subject = Extension(identity_extension(field_algebra(Field::prime(2))));
  std::string name;
  if (!a.input.empty()) {
    subject = subject_from_json(load_json_file(a.input));
    name = a.input;
  } else {
    subject = build_catalog(a.catalog, parse_params(a.params)).subject;
    name = a.catalog;
  }
  const ReportOptions opt{c.budget, a.witnesses, !c.no_timing};
  const auto props = resolve_properties(subject, split_list(a.props));
  const PropertyReport rep = evaluate(subject, name, props, opt);
  if (c.format == "json") {
    out << rep.to_json(opt).dump(2) << "\n";
  } else {
    out << rep.subject << "\n";
    for (const auto& [p, e] : rep.properties) {
      out << "  " << std::left << std::setw(34) << p << to_string(e.verdict);
      if (e.value) out << "  " << *e.value;
      if (!e.reason.empty()) out << "  (" << e.reason << ")";
      out << "\n";
    }
    for (const auto& v : rep.implication_violations) out << "  implication violated: " << v << "\n";
  }
  const bool unknown = std::any_of(rep.properties.begin(), rep.properties.end(),
                                   [](const auto& p) { return p.second.verdict == Verdict::Unknown; });
  return c.strict && unknown ? kExitUnknown : kExitOk;
}

// ----- catalog -------------------------------------------------------------

int do_catalog_list(const Common& c, std::ostream& out) {
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& e : catalog_entries())
      arr.push_back({{"name", e.name}, {"description", e.description}, {"params", e.params}, {"claim", e.anchor}});
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& e : catalog_entries()) {
    out << e.name << "  " << e.description << "\n";
    if (!e.params.empty()) out << "    params: " << e.params << "\n";
    out << "    claim: " << e.anchor << "\n";
  }
  return kExitOk;
}

int do_catalog_emit(const std::string& name, const std::vector<std::string>& params, std::ostream& out) {
  const CatalogObject o = build_catalog(name, parse_params(params));
  out << subject_to_json(o.subject).dump(2) << "\n";
  return kExitOk;
}

// ----- search --------------------------------------------------------------

struct SearchArgs {
  std::string field = "f2", filter = "biseparable", expect = "frobenius";
  std::size_t max_dim_r = 4, max_dim_s = 4, jobs = 1, random = 64;
  std::uint64_t seed = 1;
};

int do_search(const SearchArgs& a, const Common& c, std::ostream& out) {
  SearchConfig cfg;
  cfg.field = field_from_name(a.field);
  cfg.max_dim_r = a.max_dim_r;
  cfg.max_dim_s = a.max_dim_s;
  cfg.filter = split_list(a.filter);
  cfg.expect = split_list(a.expect);
  cfg.seed = a.seed;
  cfg.budget = c.budget;
  cfg.jobs = std::max<std::size_t>(1, a.jobs);
  cfg.random_algebras = a.random;
  cfg.timing = !c.no_timing;
  if (cfg.filter.empty() || cfg.expect.empty()) throw Error(ErrorKind::BadParams, "--filter and --expect need properties");
  const SearchResult r = run_search(cfg);
  if (c.format == "json") {
    out << r.report.dump(2) << "\n";
  } else {
    out << "candidates " << r.candidates << ", filter hits " << r.filter_hits << ", violations " << r.violations
        << ", unknown " << r.unknowns << "\n";
    for (const auto& v : r.report["violations"]) out << "  violation: " << v["origin"].get<std::string>() << "\n";
  }
  if (r.violations > 0) return kExitFailure;
  return c.strict && r.unknowns > 0 ? kExitUnknown : kExitOk;
}

// ----- verify-paper --------------------------------------------------------

struct VerifyArgs {
  bool json_out = false, inject_fault = false;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

int do_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  AcceptanceOptions opt;
  opt.seed = a.seed;
  opt.budget = c.budget;
  opt.jobs = std::max<std::size_t>(1, a.jobs);
  opt.inject_fault = a.inject_fault;
  const auto claims = run_catalog_claims(opt);
  const auto criteria = run_acceptance(opt);
  std::size_t failed = 0;
  for (const auto& cl : claims) failed += !cl.pass;
  for (const auto& cr : criteria) failed += !cr.pass;

  if (a.json_out || c.format == "json") {
    json j{{"claims", json::array()}, {"criteria", json::array()}};
    for (const auto& cl : claims)
      j["claims"].push_back(
          {{"entry", cl.entry}, {"property", cl.property}, {"expected", cl.expected}, {"got", cl.got}, {"pass", cl.pass}});
    for (const auto& cr : criteria) {
      json row{{"id", cr.id}, {"title", cr.title}, {"pass", cr.pass}, {"checks", cr.checks}, {"mismatches", cr.mismatches}};
      if (!c.no_timing) row["ms"] = cr.ms;
      j["criteria"].push_back(std::move(row));
    }
    j["failed"] = failed;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& cl : claims)
      out << (cl.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(44) << cl.entry << std::setw(22)
          << cl.property << "expected " << cl.expected << ", got " << cl.got << "\n";
    for (const auto& cr : criteria) {
      out << (cr.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(3) << cr.id << cr.title;
      if (!c.no_timing) out << "  [" << std::fixed << std::setprecision(0) << cr.ms << " ms]";
      out << "\n";
      for (const auto& m : cr.mismatches) out << "        " << m << "\n";
    }
    out << (failed == 0 ? "all " + std::to_string(claims.size() + criteria.size()) + " rows pass"
                        : std::to_string(failed) + " rows FAIL")
        << "\n";
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide separability, Frobenius and related properties of finite ring extensions and bimodules",
               "bisep"};
  app.require_subcommand(1);

  Common common;
  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "report properties of an extension or bimodule");
  c_check->add_option("--input", check.input, "JSON file with an extension or bimodule");
  c_check->add_option("--catalog", check.catalog, "catalog entry name");
  c_check->add_option("--param", check.params, "catalog parameter key=value (repeatable)");
  c_check->add_option("--props", check.props, "comma separated properties, or all");
  c_check->add_flag("--witnesses", check.witnesses, "include witnesses");
  add_common(c_check, common);

  auto* c_catalog = app.add_subcommand("catalog", "list or emit catalog entries");
  c_catalog->require_subcommand(1);
  auto* c_list = c_catalog->add_subcommand("list", "list entries");
  add_common(c_list, common);
  std::string emit_name;
  std::vector<std::string> emit_params;
  auto* c_emit = c_catalog->add_subcommand("emit", "print an entry as JSON input for check");
  c_emit->add_option("name", emit_name, "entry name")->required();
  c_emit->add_option("--param", emit_params, "parameter key=value (repeatable)");

  SearchArgs search;
  auto* c_search = app.add_subcommand("search", "search for filter-pass, expectation-fail extensions");
  c_search->add_option("--field", search.field, "q, f<p> or f<p>^<k>");
  c_search->add_option("--max-dim-r", search.max_dim_r, "largest dim R")->check(CLI::Range(1, 6));
  c_search->add_option("--max-dim-s", search.max_dim_s, "largest dim S")->check(CLI::Range(1, 6));
  c_search->add_option("--filter", search.filter, "properties every candidate must have");
  c_search->add_option("--expect", search.expect, "properties expected of every filtered candidate");
  c_search->add_option("--seed", search.seed, "seed for random structure constants");
  c_search->add_option("--jobs", search.jobs, "worker threads");
  c_search->add_option("--random", search.random, "random structure-constant tables to draw");
  add_common(c_search, common);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify-paper", "recheck every catalog claim and acceptance criterion");
  c_verify->add_flag("--json", verify.json_out, "machine-readable results");
  c_verify->add_option("--seed", verify.seed, "seed for the randomised criteria");
  c_verify->add_option("--jobs", verify.jobs, "threads for the search criterion");
  c_verify->add_flag("--inject-fault", verify.inject_fault)->group("");
  add_common(c_verify, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << diagnostic("Usage", e.what()).dump() << "\n";
    return kExitInput;
  }

  if (common.format.empty()) common.format = c_verify->parsed() ? "text" : "json";

  try {
    if (c_check->parsed()) return do_check(check, common, out);
    if (c_list->parsed()) return do_catalog_list(common, out);
    if (c_emit->parsed()) return do_catalog_emit(emit_name, emit_params, out);
    if (c_search->parsed()) return do_search(search, common, out);
    if (c_verify->parsed()) return do_verify(verify, common, out);
  } catch (const Error& e) {
    err << diagnostic(std::string(to_string(e.kind())), e.what(), e.witness()).dump() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << diagnostic("Parse", e.what()).dump() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace bisep

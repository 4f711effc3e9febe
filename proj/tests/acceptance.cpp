// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "bisep/acceptance.hpp"
#include "bisep/cli.hpp"
#include "bisep/serialize.hpp"

using namespace bisep;

namespace {

void print(const CriterionOutcome& c, bool verbose) {
  std::cout << (c.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title << "  [" << std::fixed
            << std::setprecision(0) << c.ms << " ms";
  if (c.limit_ms > 0) std::cout << ", limit " << c.limit_ms << " ms";
  std::cout << "]\n";
  if (verbose)
    for (const auto& line : c.checks) std::cout << "        " << line << "\n";
  for (const auto& m : c.mismatches) std::cout << "     !! " << m << "\n";
}

// verify-paper in-process: exit 0 with every row passing, and a broken
// structure constant in the two-point algebra must be caught by name.
CriterionOutcome verify_paper_row() {
  CriterionOutcome c;
  c.id = 11;
  c.title = "verify-paper exits 0 with a PASS row for every claim and criterion";
  const auto t0 = std::chrono::steady_clock::now();
  auto run = [](std::vector<std::string> args, std::string& out) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    out = o.str();
    return code;
  };
  std::string out;
  const int code = run({"verify-paper", "--json", "--no-timing"}, out);
  c.checks.push_back("exit code: expected 0, got " + std::to_string(code));
  if (code != 0) c.mismatches.push_back(c.checks.back());
  const json j = json::parse(out);
  std::size_t rows = 0, passed = 0;
  std::set<int> ids;
  for (const auto& part : {"claims", "criteria"})
    for (const auto& row : j[part]) {
      ++rows;
      passed += row["pass"].get<bool>();
      if (row.contains("id")) ids.insert(row["id"].get<int>());
    }
  c.checks.push_back("rows passing: " + std::to_string(passed) + " of " + std::to_string(rows));
  if (passed != rows || rows == 0) c.mismatches.push_back(c.checks.back());
  for (int id : acceptance_ids())
    if (!ids.count(id)) c.mismatches.push_back("no row for criterion " + std::to_string(id));

  const int fault = run({"verify-paper", "--inject-fault", "--no-timing"}, out);
  const bool named = out.find("FAIL  z2z2_over_z2") != std::string::npos;
  c.checks.push_back("with a broken structure constant: exit " + std::to_string(fault) +
                     (named ? ", failing claim named" : ", failing claim not named"));
  if (fault != 1 || !named) c.mismatches.push_back(c.checks.back());
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  c.pass = c.mismatches.empty();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  AcceptanceOptions opt;
  opt.budget = default_budget();
  bool ok = true;
  for (int id : acceptance_ids()) {
    const CriterionOutcome c = run_criterion(id, opt);
    print(c, verbose);
    ok = ok && c.pass;
  }
  const CriterionOutcome last = verify_paper_row();
  print(last, verbose);
  ok = ok && last.pass;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

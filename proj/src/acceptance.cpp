#include "bisep/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <functional>
#include <random>
#include <set>

#include "bisep/catalog.hpp"
#include "bisep/report.hpp"
#include "bisep/search.hpp"

namespace bisep {

namespace {

using Clock = std::chrono::steady_clock;

class Checker {
 public:
  explicit Checker(CriterionOutcome& out) : out_(out) {}

  void expect(const std::string& claim, const std::string& expected, const std::string& got) {
    const std::string line = claim + ": expected " + expected + ", got " + got;
    out_.checks.push_back(line);
    if (expected != got) out_.mismatches.push_back(line);
  }
  void verdict(const std::string& claim, bool expected, Verdict got) {
    expect(claim, expected ? "true" : "false", to_string(got));
  }
  void count(const std::string& claim, std::uint64_t expected, std::uint64_t got) {
    expect(claim, std::to_string(expected), std::to_string(got));
  }
  void that(const std::string& claim, bool ok) { expect(claim, "holds", ok ? "holds" : "fails"); }
  // For large sets: only failures are itemised.
  void quiet(const std::string& claim, bool ok) {
    ++quiet_total_;
    if (!ok) out_.mismatches.push_back(claim);
  }
  void summarize(const std::string& what) {
    out_.checks.push_back(what + ": " + std::to_string(quiet_total_) + " comparisons, " +
                          std::to_string(out_.mismatches.size()) + " discrepancies");
  }

 private:
  CriterionOutcome& out_;
  std::size_t quiet_total_ = 0;
};

const Field kF2 = Field::prime(2);

Extension two_point_subject(bool fault) {
  if (!fault) return z2z2_over_z2();
  // basis 1, e with e*e := 0 instead of e
  const Algebra r = polynomial_quotient(kF2, {kF2.zero(), kF2.zero(), kF2.one()});
  return Extension(field_algebra(kF2), r, Matrix::from_columns(kF2, 2, {r.unit()}));
}

// I spanned by `basis` (an ideal of r), with r's product or none.
MultiplicativeBimodule ideal_bimodule(const Algebra& r, const Matrix& basis, bool with_product) {
  const Field& f = r.field();
  const Subspace sub(basis);
  const std::size_t d = basis.cols();
  MultiplicativeBimodule m{d, {}, {}, {}};
  for (std::size_t k = 0; k < r.dim(); ++k) {
    Matrix l(f, d, d), rr(f, d, d);
    for (std::size_t b = 0; b < d; ++b) {
      l.set_column(b, sub.coords(r.mul(r.basis_vector(k), basis.column(b))));
      rr.set_column(b, sub.coords(r.mul(basis.column(b), r.basis_vector(k))));
    }
    m.left.push_back(std::move(l));
    m.right.push_back(std::move(rr));
  }
  if (with_product)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const Vec c = sub.coords(r.mul(basis.column(a), basis.column(b)));
        for (std::size_t k = 0; k < d; ++k)
          if (!f.is_zero(c[k])) m.product.push_back({a, b, k, c[k]});
      }
  return m;
}

std::vector<SearchCandidate> f2_candidates(std::size_t max_dim, const AcceptanceOptions& opt) {
  SearchConfig sc;
  sc.field = kF2;
  sc.max_dim_r = sc.max_dim_s = max_dim;
  sc.seed = opt.seed;
  sc.budget = opt.budget;
  return search_candidates(sc);
}

std::vector<Extension> sample(const std::vector<SearchCandidate>& c, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(c.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<Extension> out;
  for (std::size_t i = 0; i < std::min(n, idx.size()); ++i) out.push_back(c[idx[i]].ext);
  return out;
}

struct Instance {
  std::string name;
  Subject subject;
};

std::vector<Instance> cross_check_instances(const AcceptanceOptions& opt) {
  std::vector<Instance> out;
  for (const auto& info : catalog_entries()) out.push_back({info.name, build_catalog(info.name).subject});
  out.push_back({"group_pair F2 C2", build_catalog("group_pair", {{"field", "f2"}}).subject});
  out.push_back({"triangular_over_diagonal Q", build_catalog("triangular_over_diagonal", {{"field", "q"}}).subject});
  out.push_back({"morita_bimodule F3", build_catalog("morita_bimodule", {{"field", "f3"}}).subject});
  std::size_t i = 0;
  for (auto& e : sample(f2_candidates(4, opt), 100, opt.seed)) out.push_back({"random #" + std::to_string(i++), e});
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1(const AcceptanceOptions& opt, Checker& c) {
  const Extension e = two_point_subject(opt.inject_fault);
  c.verdict("split", true, is_split_ext(e).verdict);
  c.verdict("separable", true, is_separable_ext(e).verdict);
  c.verdict("frobenius", true, is_frobenius_ext(e, opt.budget).verdict);
  const auto pc = count_split_projections(e, opt.budget);
  c.count("split projections", 2, pc.count);
  const auto fc = count_frobenius_homs(e, opt.budget);
  c.count("Frobenius homomorphisms", 1, fc.count);
  bool disjoint = true;
  for (const auto& p : pc.projections)
    for (const auto& h : fc.homs)
      if (p == h) disjoint = false;
  c.that("no split projection is a Frobenius homomorphism", disjoint && !fc.homs.empty());
}

void criterion_2(const AcceptanceOptions& opt, Checker& c) {
  const Extension e = matrix_over_triangular(kF2, 2);
  c.verdict("fgp left", true, is_fgp(e, Side::Left).verdict);
  c.verdict("fgp right", true, is_fgp(e, Side::Right).verdict);
  c.verdict("H-separable", true, is_h_separable(e).verdict);
  c.verdict("separable", true, is_separable_ext(e).verdict);
  c.verdict("frobenius", false, is_frobenius_ext(e, opt.budget).verdict);
  c.verdict("qf left", false, is_qf_ext(e, Side::Left).verdict);
  c.verdict("qf right", false, is_qf_ext(e, Side::Right).verdict);
  const auto autos = enumerate_automorphisms(e.S(), opt.budget);
  c.that("T2(F2) has automorphisms (" + std::to_string(autos.size()) + " found)", !autos.empty());
  std::size_t twisted = 0;
  for (const auto& b : autos)
    if (twisted_frobenius_check(e, b, opt.budget).verdict != Verdict::False) ++twisted;
  c.count("automorphisms beta with a beta-twisted Frobenius structure", 0, twisted);
}

void criterion_3(const AcceptanceOptions& opt, Checker& c) {
  for (const Field& f : {kF2, Field::rationals()}) {
    const Extension e = triangular_over_diagonal(f, 2);
    const std::string p = "T2(" + f.name() + ")/diag ";
    c.verdict(p + "split", true, is_split_ext(e).verdict);
    c.verdict(p + "fgp left", true, is_fgp(e, Side::Left).verdict);
    c.verdict(p + "fgp right", true, is_fgp(e, Side::Right).verdict);
    c.verdict(p + "frobenius", false, is_frobenius_ext(e, opt.budget).verdict);
    c.verdict(p + "separable", false, is_separable_ext(e).verdict);
    c.expect("T2(" + f.name() + ") QF ring", "false", is_qf_ring(e.R()) ? "true" : "false");
  }
}

void criterion_4(const AcceptanceOptions& opt, Checker& c) {
  const Field f3 = Field::prime(3);
  const Group c2 = cyclic_group(2), s3 = symmetric3();
  std::size_t rot = 0;
  for (std::size_t x = 0; x < s3.order(); ++x)
    if (generated_subgroup(s3, {x}).size() == 3) {
      rot = x;
      break;
    }
  const auto c3 = generated_subgroup(s3, {rot});
  for (const Field& f : {f3, kF2}) {
    const Extension e = group_pair(f, c2, {c2.identity});
    const std::string p = f.name() + "[C2]/" + f.name() + " ";
    c.verdict(p + "split", true, is_split_ext(e).verdict);
    c.verdict(p + "separable", f == f3, is_separable_ext(e).verdict);
    c.verdict(p + "frobenius", true, is_frobenius_ext(e, opt.budget).verdict);
  }
  const Extension e2 = group_pair(kF2, s3, c3);
  c.verdict("F2[S3]/F2[C3] separable", false, is_separable_ext(e2).verdict);
  c.verdict("F2[S3]/F2[C3] split", true, is_split_ext(e2).verdict);
  const Extension e3 = group_pair(f3, s3, c3);
  c.verdict("F3[S3]/F3[C3] separable", true, is_separable_ext(e3).verdict);
}

void criterion_5(const AcceptanceOptions& opt, Checker& c) {
  const auto cands = f2_candidates(4, opt);
  std::mt19937_64 rng(opt.seed ^ 0x5eedULL);
  std::size_t agree = 0;
  for (std::size_t t = 0; t < 50; ++t) {
    const Extension& base = cands[rng() % cands.size()].ext;
    const Algebra& r = base.R();
    const unsigned kind = rng() % 4;
    Matrix basis = Matrix::identity(kF2, r.dim());
    if (kind >= 2) {
      const Matrix rad = radical(r);
      if (rad.cols() > 0) basis = rad;
    }
    const MultiplicativeBimodule i = ideal_bimodule(r, basis, kind % 2 == 1);
    const Extension pair = trivial_extension_pair(base, i);
    const Verdict a = is_separable_ext(base).verdict, b = is_separable_ext(pair).verdict;
    if (a == b) ++agree;
    c.quiet("instance " + std::to_string(t) + ": separable(R/S) = " + to_string(a) + ", separable(A/T) = " +
                to_string(b),
            a == b);
  }
  c.count("instances where separability transfers", 50, agree);
}

Matrix ideal_generated(const Algebra& a, const std::vector<Vec>& gens) {
  RowSpace rs(a.field(), a.dim());
  for (const auto& g : gens) rs.add_row(g);
  std::size_t r = rs.rank();
  while (true) {
    const RowEchelon e = rs.echelon();
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      for (std::size_t k = 0; k < a.dim(); ++k) {
        rs.add_row(a.mul(a.basis_vector(k), e.reduced.row(i)));
        rs.add_row(a.mul(e.reduced.row(i), a.basis_vector(k)));
      }
    if (rs.rank() == r) return e.reduced.transpose();
    r = rs.rank();
  }
}

void criterion_6(const AcceptanceOptions& opt, Checker& c) {
  std::size_t sequences = 0, separable = 0, nilpotent = 0;
  for (const auto& cand : f2_candidates(4, opt)) {
    const Extension& ext = cand.ext;
    const Algebra& a = ext.R();
    const std::size_t need = a.dim() - ext.S().dim();
    std::vector<Vec> elems;
    enumerate_coefficients(kF2, a.dim(), [&](const Vec& x) {
      elems.push_back(x);
      return false;
    });
    std::set<std::string> seen;
    std::optional<bool> sep;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i; j < elems.size(); ++j) {
        const Matrix jb = ideal_generated(a, {elems[i], elems[j]});
        if (jb.cols() != need || need == 0) continue;
        if (rank(hstack({ext.iota(), jb})) != a.dim()) continue;
        std::string key;
        for (const auto& s : jb.flatten()) key += kF2.to_string(s);
        if (!seen.insert(key).second) continue;
        ++sequences;
        if (!sep) sep = is_separable_ext(ext).holds();
        Matrix power = jb;
        for (std::size_t k = 0; k < a.dim() && power.cols() > 0; ++k) power = column_basis(product_span(a, power, jb));
        const bool nil = power.cols() == 0;
        if (nil) ++nilpotent;
        if (!*sep) continue;
        ++separable;
        const std::size_t sq = rank(product_span(a, jb, jb));
        c.quiet(cand.origin + ": separable split sequence with J^2 != J", sq == jb.cols());
        c.quiet(cand.origin + ": separable split sequence with nonzero nilpotent kernel", !nil);
      }
  }
  c.that("split exact sequences examined: " + std::to_string(sequences), sequences > 0);
  c.that("with A/S separable: " + std::to_string(separable) + ", each with J^2 = J", separable > 0);
  c.that("with nilpotent kernel J != 0: " + std::to_string(nilpotent) + ", none separable", nilpotent > 0);
}

void cross_check_bimodule(const std::string& name, const Bimodule& m, const AcceptanceOptions& opt, Checker& c) {
  const Verdict bs = is_separable_bimodule(m).verdict;
  auto eq = [&](const std::string& what, Verdict a, Verdict b) {
    c.quiet(name + ": " + what + " (" + to_string(a) + " vs " + to_string(b) + ")", a == b);
  };
  if (const auto r = separable_via_dual_pairing(m); r.applicable) eq("dual pairing vs separable", r.verdict, bs);
  if (const auto r = separable_via_right_endomorphisms(m); r.applicable)
    eq("right endomorphisms vs separable", r.verdict, bs);
  const Verdict casimir = dual_separable_via_casimir(m).verdict;
  if (is_fgp_right_module(m)) eq("M* Casimir vs M* separable", casimir, is_separable_bimodule(dual_right(m).module).verdict);
  if (const auto r = dual_separable_via_pairing(m); r.applicable) eq("M* pairing vs M* Casimir", r.verdict, casimir);
  if (const auto r = dual_separable_via_left_endomorphisms(m); r.applicable)
    eq("left endomorphisms vs M* Casimir", r.verdict, casimir);
  const auto pair = frobenius_pair_data(m, opt.budget);
  const Verdict fb = is_frobenius_bimodule(m, opt.budget).verdict;
  eq("Frobenius pair vs Frobenius bimodule", pair.verdict, fb);
  if (fb == Verdict::True) eq("Frobenius-pair criterion vs separable", separable_via_frobenius_pair(m, pair).verdict, bs);
}

void criterion_7(const AcceptanceOptions& opt, Checker& c) {
  for (const auto& inst : cross_check_instances(opt)) {
    if (const auto* b = std::get_if<Bimodule>(&inst.subject)) {
      cross_check_bimodule(inst.name, *b, opt, c);
      cross_check_bimodule(inst.name + " dual", dual_right(*b).module, opt, c);
      continue;
    }
    const Extension& e = std::get<Extension>(inst.subject);
    const Bimodule rrs = natural_bimodule(e, Pattern::R_as_RRS), srr = natural_bimodule(e, Pattern::R_as_SRR);
    const Verdict sep = is_separable_ext(e).verdict, split = is_split_ext(e).verdict;
    c.quiet(inst.name + ": separable(_R R_S) vs separable extension", is_separable_bimodule(rrs).verdict == sep);
    c.quiet(inst.name + ": separable(_S R_R) vs split", is_separable_bimodule(srr).verdict == split);
    c.quiet(inst.name + ": M* Casimir criterion on _R R_S vs split", dual_separable_via_casimir(rrs).verdict == split);
    cross_check_bimodule(inst.name + " _R R_S", rrs, opt, c);
    cross_check_bimodule(inst.name + " _S R_R", srr, opt, c);
  }
  c.summarize("cross-decider comparisons");
}

void criterion_8(const AcceptanceOptions& opt, Checker& c) {
  const ReportOptions ro{opt.budget, false, false};
  std::size_t biseparable = 0;
  for (const auto& inst : cross_check_instances(opt)) {
    const bool is_ext = std::holds_alternative<Extension>(inst.subject);
    std::vector<std::string> props = is_ext ? extension_properties() : bimodule_properties();
    if (is_ext) std::erase_if(props, [](const std::string& p) { return p.find("count") != std::string::npos; });
    const PropertyReport rep = evaluate(inst.subject, inst.name, props, ro);
    for (const auto& v : rep.implication_violations) c.quiet(inst.name + ": " + v, false);
    c.quiet(inst.name + ": lattice", rep.implication_violations.empty());
    if (!is_ext) continue;
    const Extension& e = std::get<Extension>(inst.subject);
    if (rep.find("biseparable")->verdict != Verdict::True) continue;
    ++biseparable;
    const Bimodule rstar = dual_right(natural_bimodule(e, Pattern::R_as_RRS)).module;
    const Bimodule starr = dual_left(natural_bimodule(e, Pattern::R_as_SRR)).module;
    c.quiet(inst.name + ": R_R in add(R*_R)", in_add(right_regular(e.R()), as_right_module(rstar)).member);
    c.quiet(inst.name + ": _R R in add(_R *R)", in_add(left_regular(e.R()), as_left_module(starr)).member);
  }
  c.summarize("implication checks");
  c.that("biseparable instances among them: " + std::to_string(biseparable), biseparable > 0);
}

void criterion_9(const AcceptanceOptions& opt, Checker& c) {
  const OracleStats add = run_add_oracle(3, 4);
  for (const auto& d : add.discrepancies) c.quiet(d, false);
  c.that("in_add vs exhaustive summand search: " + std::to_string(add.modules) + " modules over " +
             std::to_string(add.algebras) + " algebras, " + std::to_string(add.add_checks) + " pairs",
         add.discrepancies.empty() && add.add_checks > 0);
  const OracleStats ext = run_extension_oracle(3, opt.budget);
  for (const auto& d : ext.discrepancies) c.quiet(d, false);
  c.that("split/separable deciders vs exhaustive enumeration: " + std::to_string(ext.extensions) + " extensions",
         ext.discrepancies.empty() && ext.extensions > 0);
}

void criterion_10(const AcceptanceOptions& opt, Checker& c) {
  SearchConfig sc;
  sc.field = kF2;
  sc.max_dim_r = sc.max_dim_s = 4;
  sc.filter = {"biseparable"};
  sc.expect = {"frobenius"};
  sc.budget = 1'000'000;
  sc.seed = opt.seed;
  sc.jobs = opt.jobs;
  const SearchResult r = run_search(sc);
  c.count("violations", 0, r.violations);
  c.that("filter hits examined: " + std::to_string(r.filter_hits) + " (need >= 100)", r.filter_hits >= 100);
  c.count("unknown verdicts", 0, r.unknowns);
}

struct CriterionDef {
  int id;
  const char* title;
  double limit_ms;
  void (*run)(const AcceptanceOptions&, Checker&);
};

const std::vector<CriterionDef>& definitions() {
  static const std::vector<CriterionDef> s = {
      {1, "Z2+Z2 over Z2: split, separable, Frobenius; 2 projections, 1 Frobenius homomorphism", 1000, criterion_1},
      {2, "M2(F2) over T2(F2): projective, H-separable, separable, not Frobenius, not QF, no twist", 10000,
       criterion_2},
      {3, "T2 over the diagonal (F2 and Q): split, projective, not Frobenius, not separable", 5000, criterion_3},
      {4, "group algebra pairs: separable iff the characteristic misses the index", 10000, criterion_4},
      {5, "trivial extensions preserve separability (50 random instances)", 0, criterion_5},
      {6, "split sequences with separable quotient have idempotent kernel", 0, criterion_6},
      {7, "cross-decider equivalence on catalog and 100 random extensions", 0, criterion_7},
      {8, "implication lattice on the same instances", 0, criterion_8},
      {9, "exhaustive F2 oracles for add, split and separable", 300000, criterion_9},
      {10, "search: biseparable => Frobenius over F2, dim R <= 4", 1800000, criterion_10},
  };
  return s;
}

}  // namespace

std::vector<int> acceptance_ids() {
  std::vector<int> ids;
  for (const auto& s : definitions()) ids.push_back(s.id);
  return ids;
}

CriterionOutcome run_criterion(int id, const AcceptanceOptions& opt) {
  for (const auto& s : definitions()) {
    if (s.id != id) continue;
    CriterionOutcome out;
    out.id = id;
    out.title = s.title;
    out.limit_ms = s.limit_ms;
    Checker c(out);
    const auto t0 = Clock::now();
    try {
      s.run(opt, c);
    } catch (const std::exception& e) {
      out.mismatches.push_back(std::string("exception: ") + e.what());
    }
    out.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (out.limit_ms > 0 && out.ms > out.limit_ms)
      out.mismatches.push_back("runtime " + std::to_string(static_cast<long>(out.ms)) + " ms exceeds " +
                               std::to_string(static_cast<long>(out.limit_ms)) + " ms");
    out.pass = out.mismatches.empty();
    return out;
  }
  throw Error(ErrorKind::BadParams, "no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionOutcome> out;
  for (int id : acceptance_ids()) out.push_back(run_criterion(id, opt));
  return out;
}

std::vector<ClaimOutcome> run_catalog_claims(const AcceptanceOptions& opt) {
  std::vector<std::pair<std::string, CatalogParams>> entries;
  for (const auto& info : catalog_entries()) entries.push_back({info.name, {}});
  entries.push_back({"matrix_over_triangular", {{"n", "3"}}});
  entries.push_back({"triangular_over_diagonal", {{"field", "q"}}});
  entries.push_back({"group_pair", {{"field", "f2"}}});
  entries.push_back({"group_pair", {{"G", "S3"}, {"Hgens", "1"}, {"field", "f2"}}});
  entries.push_back({"morita_bimodule", {{"n", "3"}}});
  entries.push_back({"trivial_ext_pair", {{"product", "regular"}}});
  entries.push_back({"identity_ext", {{"algebra", "T2"}}});

  const ReportOptions ro{opt.budget, false, false};
  std::vector<ClaimOutcome> out;
  for (const auto& [name, params] : entries) {
    CatalogObject obj = build_catalog(name, params);
    if (opt.inject_fault && name == "z2z2_over_z2") obj.subject = two_point_subject(true);
    std::string label = name;
    for (const auto& [k, v] : params) label += " " + k + "=" + v;
    for (const auto& [prop, want] : obj.expected) {
      const PropertyEntry e = evaluate_property(obj.subject, prop, ro);
      std::string got = to_string(e.verdict);
      if (std::holds_alternative<std::uint64_t>(want))
        got = e.value ? std::to_string(*e.value) : got;
      const std::string expected = to_string(want);
      out.push_back({label, prop, expected, got, expected == got});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// F_2 oracles on bit matrices; deliberately share nothing with the solver.

namespace {

struct Bits {
  int rows = 0, cols = 0;
  std::array<std::uint32_t, 16> row{};
  bool operator==(const Bits& o) const { return rows == o.rows && cols == o.cols && row == o.row; }
};

Bits bmul(const Bits& a, const Bits& b) {
  Bits o{a.rows, b.cols, {}};
  for (int i = 0; i < a.rows; ++i) {
    std::uint32_t acc = 0;
    for (int k = 0; k < a.cols; ++k)
      if ((a.row[i] >> k) & 1u) acc ^= b.row[k];
    o.row[i] = acc;
  }
  return o;
}

Bits bident(int n) {
  Bits o{n, n, {}};
  for (int i = 0; i < n; ++i) o.row[i] = 1u << i;
  return o;
}

Bits from_matrix(const Matrix& m) {
  Bits o{static_cast<int>(m.rows()), static_cast<int>(m.cols()), {}};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c).residue() & 1u) o.row[r] |= 1u << c;
  return o;
}

Matrix to_matrix(const Bits& b) {
  Matrix m(kF2, b.rows, b.cols);
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c)
      if ((b.row[r] >> c) & 1u) m(r, c) = kF2.one();
  return m;
}

std::uint32_t flatten(const Bits& b) {
  std::uint32_t v = 0;
  for (int r = 0; r < b.rows; ++r) v |= b.row[r] << (r * b.cols);
  return v;
}

Bits unflatten(std::uint32_t v, int rows, int cols) {
  Bits o{rows, cols, {}};
  for (int r = 0; r < rows; ++r) o.row[r] = (v >> (r * cols)) & ((1u << cols) - 1);
  return o;
}

std::uint32_t apply(const Bits& m, std::uint32_t x) {
  std::uint32_t y = 0;
  for (int r = 0; r < m.rows; ++r)
    if (__builtin_parity(m.row[r] & x)) y |= 1u << r;
  return y;
}

int lead(std::uint64_t v) { return 63 - __builtin_clzll(v); }

// Products of an F_2 algebra on bit vectors.
struct BitAlgebra {
  int n = 0;
  std::uint32_t unit = 0;
  std::vector<std::vector<std::uint32_t>> prod;

  explicit BitAlgebra(const Algebra& a) : n(static_cast<int>(a.dim())) {
    for (int i = 0; i < n; ++i)
      if (a.unit()[i].residue() & 1u) unit |= 1u << i;
    prod.assign(n, std::vector<std::uint32_t>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& t : a.product(i, j))
          if (t.c.residue() & 1u) prod[i][j] ^= 1u << t.k;
  }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1u)
        for (int j = 0; j < n; ++j)
          if ((y >> j) & 1u) out ^= prod[i][j];
    return out;
  }
};

// Right module: act[i] is m -> m e_i.
struct BitModule {
  int d = 0;
  std::vector<Bits> act;
};

// Span of F_2 vectors with distinct leading bits.
class BitSpan {
 public:
  // 1 inserted, 0 dependent; returns the reduced vector through `v`.
  bool insert(std::uint64_t& v) {
    reduce(v);
    if (v == 0) return false;
    basis_.push_back(v);
    std::sort(basis_.begin(), basis_.end(), std::greater<>());
    return true;
  }
  void reduce(std::uint64_t& v) const {
    for (auto b : basis_)
      if ((v >> lead(b)) & 1u) v ^= b;
  }
  bool contains(std::uint64_t v) const {
    reduce(v);
    return v == 0;
  }
  std::vector<std::uint64_t>& basis() { return basis_; }

 private:
  std::vector<std::uint64_t> basis_;  // descending, so leading bits are eliminated in order
};

// All right modules of dimension d on which `gens` (bit vectors generating A)
// act by the enumerated matrices.
void enumerate_modules(const BitAlgebra& a, const std::vector<std::uint32_t>& gens, int d,
                       const std::function<void(const BitModule&)>& visit) {
  const int dd = d * d;
  const int m = static_cast<int>(gens.size());
  const int bits = m * dd;
  const std::uint64_t mask = (1ull << dd) - 1;
  for (std::uint64_t code = 0; code < (1ull << bits); ++code) {
    std::vector<Bits> g;
    for (int k = 0; k < m; ++k) g.push_back(unflatten(static_cast<std::uint32_t>((code >> (k * dd)) & mask), d, d));
    // The graph {(a, rho(a))} closed under right multiplication by generators
    // must stay a graph: no vector (0, nonzero).
    BitSpan span;
    std::deque<std::uint64_t> queue;
    std::uint64_t start = (static_cast<std::uint64_t>(a.unit) << dd) | flatten(bident(d));
    span.insert(start);
    queue.push_back((static_cast<std::uint64_t>(a.unit) << dd) | flatten(bident(d)));
    bool ok = true;
    while (ok && !queue.empty()) {
      const std::uint64_t v = queue.front();
      queue.pop_front();
      const auto x = static_cast<std::uint32_t>(v >> dd);
      const Bits rho = unflatten(static_cast<std::uint32_t>(v & mask), d, d);
      for (int k = 0; k < m && ok; ++k) {
        const std::uint64_t w =
            (static_cast<std::uint64_t>(a.mul(x, gens[k])) << dd) | flatten(bmul(g[k], rho));
        std::uint64_t r = w;
        if (!span.insert(r)) continue;
        if (lead(r) < dd) ok = false;
        queue.push_back(w);
      }
    }
    if (!ok || static_cast<int>(span.basis().size()) != a.n) continue;
    auto& basis = span.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (i != j && ((basis[j] >> lead(basis[i])) & 1u)) basis[j] ^= basis[i];
    BitModule mod{d, std::vector<Bits>(a.n)};
    for (auto v : basis) mod.act[lead(v) - dd] = unflatten(static_cast<std::uint32_t>(v & mask), d, d);
    visit(mod);
  }
}

std::vector<Bits> all_homs(const BitModule& m, const BitModule& n) {
  std::vector<Bits> out;
  const int bits = m.d * n.d;
  for (std::uint32_t code = 0; code < (1u << bits); ++code) {
    const Bits f = unflatten(code, n.d, m.d);
    bool ok = true;
    for (std::size_t i = 0; i < m.act.size() && ok; ++i) ok = bmul(f, m.act[i]) == bmul(n.act[i], f);
    if (ok) out.push_back(f);
  }
  return out;
}

// id_M in the additive closure of {g f}: M is a summand of some N^r.
bool summand_oracle(const BitModule& m, const BitModule& n) {
  const auto fs = all_homs(m, n), gs = all_homs(n, m);
  std::set<std::uint32_t> gens;
  for (const auto& g : gs)
    for (const auto& f : fs) gens.insert(flatten(bmul(g, f)));
  std::set<std::uint32_t> reach{0};
  std::deque<std::uint32_t> queue{0};
  const std::uint32_t id = flatten(bident(m.d));
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    if (x == id) return true;
    for (auto g : gens)
      if (reach.insert(x ^ g).second) queue.push_back(x ^ g);
  }
  return false;
}

Bimodule to_bimodule(const Algebra& a, const BitModule& m) {
  std::vector<Matrix> right;
  for (const auto& b : m.act) right.push_back(to_matrix(b));
  return Bimodule(field_algebra(kF2), a, m.d, {Matrix::identity(kF2, m.d)}, std::move(right));
}

BitModule from_bimodule(const Bimodule& m) {
  BitModule out{static_cast<int>(m.dim()), {}};
  for (const auto& r : m.right()) out.act.push_back(from_matrix(r));
  return out;
}

std::vector<std::uint32_t> generators(const Algebra& a) {
  std::vector<std::uint32_t> gens;
  std::vector<Vec> vs;
  std::size_t dim = subalgebra_span(a, {}).cols();
  for (std::size_t i = 0; i < a.dim() && dim < a.dim(); ++i) {
    vs.push_back(a.basis_vector(i));
    const std::size_t d2 = subalgebra_span(a, vs).cols();
    if (d2 > dim) {
      gens.push_back(1u << i);
      dim = d2;
    } else {
      vs.pop_back();
    }
  }
  return gens;
}

}  // namespace

OracleStats run_add_oracle(std::size_t max_module_dim, std::size_t max_algebra_dim) {
  OracleStats st;
  std::vector<std::pair<std::string, Algebra>> algebras{{"k", field_algebra(kF2)}};
  for (auto& a : builtin_search_algebras(kF2, max_algebra_dim)) algebras.push_back(std::move(a));
  for (const auto& [name, alg] : algebras) {
    const BitAlgebra ba(alg);
    const auto gens = generators(alg);
    ++st.algebras;
    std::vector<BitModule> targets{from_bimodule(right_regular(alg)), from_bimodule(linear_dual_right(alg))};
    std::vector<BitModule> modules;
    for (int d = 1; d <= static_cast<int>(max_module_dim); ++d) {
      if (static_cast<int>(gens.size()) * d * d > 18) continue;
      enumerate_modules(ba, gens, d, [&](const BitModule& m) { modules.push_back(m); });
    }
    st.modules += modules.size();
    // a spread of enumerated modules also serve as targets
    const std::size_t stride = std::max<std::size_t>(1, modules.size() / 6);
    for (std::size_t i = 0; i < modules.size(); i += stride) targets.push_back(modules[i]);
    for (const auto& m : modules) {
      const Bimodule lm = to_bimodule(alg, m);
      for (const auto& n : targets) {
        const bool oracle = summand_oracle(m, n);
        const bool lib = in_add(lm, to_bimodule(alg, n)).member;
        ++st.add_checks;
        if (oracle != lib)
          st.discrepancies.push_back(name + ": in_add(dim " + std::to_string(m.d) + ", dim " + std::to_string(n.d) +
                                     ") oracle " + (oracle ? "true" : "false"));
      }
    }
  }
  return st;
}

OracleStats run_extension_oracle(std::size_t max_dim_r, std::uint64_t budget) {
  OracleStats st;
  SearchConfig sc;
  sc.field = kF2;
  sc.max_dim_r = sc.max_dim_s = max_dim_r;
  sc.budget = budget;
  for (const auto& cand : search_candidates(sc)) {
    const Extension& e = cand.ext;
    const BitAlgebra r(e.R()), s(e.S());
    const int n = r.n, m = s.n;
    std::vector<std::uint32_t> iota;
    for (int j = 0; j < m; ++j) iota.push_back(apply(from_matrix(e.iota()), 1u << j));
    ++st.extensions;

    std::uint64_t projections = 0;
    for (std::uint32_t code = 0; code < (1u << (m * n)); ++code) {
      const Bits E = unflatten(code, m, n);
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) ok = apply(E, iota[j]) == (1u << j);
      for (int j = 0; j < m && ok; ++j)
        for (int i = 0; i < n && ok; ++i)
          ok = apply(E, r.mul(iota[j], 1u << i)) == s.mul(1u << j, apply(E, 1u << i)) &&
               apply(E, r.mul(1u << i, iota[j])) == s.mul(apply(E, 1u << i), 1u << j);
      if (ok) ++projections;
    }
    const auto pc = count_split_projections(e, budget);
    if ((projections > 0) != is_split_ext(e).holds() || projections != pc.count)
      st.discrepancies.push_back(cand.origin + ": split projections oracle " + std::to_string(projections) +
                                 ", decider " + std::to_string(pc.count));

    auto tensor = [&](std::uint32_t x, std::uint32_t y) {
      std::uint64_t t = 0;
      for (int a = 0; a < n; ++a)
        if ((x >> a) & 1u)
          for (int b = 0; b < n; ++b)
            if ((y >> b) & 1u) t ^= 1ull << (a * n + b);
      return t;
    };
    BitSpan rel;
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::uint64_t v = tensor(r.mul(1u << a, iota[j]), 1u << b) ^ tensor(1u << a, r.mul(iota[j], 1u << b));
          rel.insert(v);
        }
    bool separable = false;
    for (std::uint64_t w = 0; w < (1ull << (n * n)) && !separable; ++w) {
      std::uint32_t mu = 0;
      for (int idx = 0; idx < n * n; ++idx)
        if ((w >> idx) & 1u) mu ^= r.mul(1u << (idx / n), 1u << (idx % n));
      if (mu != r.unit) continue;
      bool central = true;
      for (int x = 0; x < n && central; ++x) {
        std::uint64_t d = 0;
        for (int idx = 0; idx < n * n; ++idx)
          if ((w >> idx) & 1u)
            d ^= tensor(r.mul(1u << x, 1u << (idx / n)), 1u << (idx % n)) ^
                 tensor(1u << (idx / n), r.mul(1u << (idx % n), 1u << x));
        central = rel.contains(d);
      }
      separable = central;
    }
    if (separable != is_separable_ext(e).holds())
      st.discrepancies.push_back(cand.origin + ": separable oracle " + (separable ? "true" : "false"));
  }
  return st;
}

}  // namespace bisep

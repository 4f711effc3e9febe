#include "bisep/search.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "bisep/catalog.hpp"
#include "bisep/group.hpp"

namespace bisep {

namespace {

std::string matrix_key(const Matrix& m) {
  std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += m.field().to_string(m(r, c)) + ",";
  return s;
}

struct NamedAlgebra {
  std::string origin;
  Algebra algebra;
};

Vec poly(const Field& f, std::initializer_list<int> coeffs) {
  Vec v;
  for (int c : coeffs) v.push_back(f.from_int(c));
  return v;
}

// k[x]/(g) for every monic g of degree d over a small prime field.
void polynomial_family(const Field& f, std::size_t max_dim, std::vector<NamedAlgebra>& out) {
  if (f.kind() != FieldKind::Prime || f.order() > 3) {
    for (std::size_t d = 2; d <= max_dim; ++d) {
      Vec g(d + 1, f.zero());
      g[d] = f.one();
      out.push_back({"k[x]/(x^" + std::to_string(d) + ")", polynomial_quotient(f, g)});
    }
    if (max_dim >= 2) out.push_back({"k[x]/(x^2-1)", polynomial_quotient(f, poly(f, {-1, 0, 1}))});
    return;
  }
  for (std::size_t d = 2; d <= max_dim; ++d)
    enumerate_coefficients(f, d, [&](const Vec& low) {
      Vec g = low;
      g.push_back(f.one());
      std::string name = "k[x]/(";
      for (std::size_t i = 0; i < g.size(); ++i) name += f.to_string(g[i]) + (i + 1 < g.size() ? "," : ")");
      out.push_back({name, polynomial_quotient(f, g)});
      return false;
    });
}

std::vector<NamedAlgebra> builtin_algebras(const Field& f, std::size_t max_dim) {
  std::vector<NamedAlgebra> out;
  const Algebra k = field_algebra(f);
  const Algebra dual = polynomial_quotient(f, poly(f, {0, 0, 1}));
  for (std::size_t n = 2; n <= max_dim; ++n) out.push_back({"k^" + std::to_string(n), diagonal(f, n)});
  if (max_dim >= 3) out.push_back({"T2", upper_triangular(f, 2)});
  if (max_dim >= 4) out.push_back({"M2", matrix_algebra(f, 2)});
  polynomial_family(f, max_dim, out);
  for (const char* g : {"C2", "C3", "C4", "V4"}) {
    const Group grp = group_by_name(g);
    if (grp.order() <= max_dim) out.push_back({std::string("k[") + g + "]", group_algebra(f, grp)});
  }
  if (max_dim >= 3) {
    // k (+) V with V^2 = 0, dim V = 2
    MultiplicativeBimodule v{2, {Matrix::identity(f, 2)}, {Matrix::identity(f, 2)}, {}};
    out.push_back({"k+V^2", trivial_extension(k, v)});
    out.push_back({"k+dual", direct_sum(k, dual)});
  }
  if (max_dim >= 4) {
    out.push_back({"k+T2", direct_sum(k, upper_triangular(f, 2))});
    out.push_back({"dual+dual", direct_sum(dual, dual)});
    out.push_back({"dual(x)dual", tensor_over_field(dual, dual)});
    out.push_back({"k+k+dual", direct_sum(diagonal(f, 2), dual)});
    MultiplicativeBimodule v{3, {Matrix::identity(f, 3)}, {Matrix::identity(f, 3)}, {}};
    out.push_back({"k+V^3", trivial_extension(k, v)});
    // k^2 plus a square-zero bimodule on which both idempotents act on both sides
    MultiplicativeBimodule w{2, {Matrix::identity(f, 2), Matrix(f, 2, 2)}, {Matrix::identity(f, 2), Matrix(f, 2, 2)}, {}};
    out.push_back({"k^2+V", trivial_extension(diagonal(f, 2), w)});
  }
  return out;
}

// Subalgebras of M_3(k) generated by at most two sparse 0/1 matrices (and, over
// F_2, by any single matrix).
std::vector<NamedAlgebra> matrix3_subalgebras(const Field& f, std::size_t max_dim, std::uint64_t budget) {
  const Algebra m3 = matrix_algebra(f, 3);
  std::vector<Vec> gens;
  for (std::size_t a = 0; a < 9; ++a) gens.push_back(unit_vec(f, 9, a));
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = a + 1; b < 9; ++b) gens.push_back(add(f, unit_vec(f, 9, a), unit_vec(f, 9, b)));
  std::set<std::string> seen;
  std::vector<NamedAlgebra> out;
  auto consider = [&](const std::vector<Vec>& g) {
    const Matrix span = subalgebra_span(m3, g);
    if (span.cols() < 2 || span.cols() > max_dim) return;
    if (!seen.insert(matrix_key(span)).second) return;
    out.push_back({"M3 subalgebra #" + std::to_string(out.size()), algebra_on_subspace(m3, span)});
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    consider({gens[i]});
    for (std::size_t j = i + 1; j < gens.size(); ++j) consider({gens[i], gens[j]});
  }
  if (f.kind() == FieldKind::Prime && f.order() == 2 && bounded_pow(2, 9, budget) <= budget)
    enumerate_coefficients(f, 9, [&](const Vec& x) {
      consider({x});
      return false;
    });
  return out;
}

// Random structure constants with e_0 = 1; non-associative draws are rejected.
std::vector<NamedAlgebra> random_algebras(const Field& f, std::size_t max_dim, std::size_t attempts, std::uint64_t seed,
                                          SearchStats& stats) {
  std::vector<NamedAlgebra> out;
  if (max_dim < 2) return out;
  std::mt19937_64 rng(seed);
  auto draw = [&]() -> Scalar {
    if (rng() % 2 == 0) return f.zero();
    if (f.is_finite()) return f.element(1 + rng() % (f.order() - 1));
    return f.from_int(rng() % 2 == 0 ? 1 : -1);
  };
  for (std::size_t t = 0; t < attempts; ++t) {
    const std::size_t d = 2 + rng() % (max_dim - 1);
    std::vector<StructureEntry> s;
    for (std::size_t i = 0; i < d; ++i) {
      s.push_back({0, i, i, f.one()});
      if (i > 0) s.push_back({i, 0, i, f.one()});
    }
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 1; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar c = draw();
          if (!f.is_zero(c)) s.push_back({i, j, k, c});
        }
    ++stats.random_attempts;
    try {
      out.push_back({"random #" + std::to_string(t), Algebra::make(f, d, s, unit_vec(f, d, 0))});
      ++stats.random_accepted;
    } catch (const Error&) {
    }
  }
  return out;
}

void add_subalgebras(const NamedAlgebra& r, const SearchConfig& cfg, std::vector<SearchCandidate>& out,
                     SearchStats& stats) {
  const Field& f = cfg.field;
  const Algebra& a = r.algebra;
  const std::size_t d = a.dim();
  std::vector<Vec> elems;
  if (f.is_finite() && bounded_pow(f.order(), d, 4096) <= 4096) {
    enumerate_coefficients(f, d, [&](const Vec& x) {
      elems.push_back(x);
      return false;
    });
  } else {
    for (std::size_t i = 0; i < d; ++i) elems.push_back(a.basis_vector(i));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) elems.push_back(add(f, a.basis_vector(i), a.basis_vector(j)));
  }
  const std::uint64_t pairs = elems.size() * (elems.size() + 1) / 2;
  const bool use_pairs = pairs <= cfg.budget;
  if (!use_pairs) ++stats.subalgebra_budget_skips;
  std::set<std::string> seen;
  auto consider = [&](const std::vector<Vec>& g) {
    const Matrix span = subalgebra_span(a, g);
    if (span.cols() == d || span.cols() > cfg.max_dim_s) return;
    if (!seen.insert(matrix_key(span)).second) return;
    out.push_back({r.origin, subalgebra_extension(a, span)});
  };
  consider({});
  for (std::size_t i = 0; i < elems.size(); ++i) {
    consider({elems[i]});
    if (use_pairs)
      for (std::size_t j = i + 1; j < elems.size(); ++j) consider({elems[i], elems[j]});
  }
}

struct Evaluation {
  bool filter_pass = false;
  bool unknown = false;
  bool violation = false;
  json detail;
};

Evaluation evaluate_candidate(const Extension& ext, const SearchConfig& cfg) {
  Evaluation ev;
  const ReportOptions opt{cfg.budget, true, false};
  const Subject s = ext;
  PropertyReport rep;
  rep.subject = "candidate";
  for (const auto& p : resolve_properties(s, cfg.filter)) {
    rep.properties.emplace_back(p, evaluate_property(s, p, opt));
    const Verdict v = rep.properties.back().second.verdict;
    if (v == Verdict::Unknown) ev.unknown = true;
    if (v != Verdict::True) {
      ev.detail = rep.to_json(opt);
      return ev;
    }
  }
  ev.filter_pass = true;
  for (const auto& p : resolve_properties(s, cfg.expect)) {
    rep.properties.emplace_back(p, evaluate_property(s, p, opt));
    const Verdict v = rep.properties.back().second.verdict;
    if (v == Verdict::Unknown) ev.unknown = true;
    if (v == Verdict::False) ev.violation = true;
  }
  rep.implication_violations = implication_violations(s, rep);
  ev.detail = rep.to_json(opt);
  return ev;
}

// A violation must reproduce from its serialized form alone.
bool reverify(const json& instance, const SearchConfig& cfg) {
  const Extension ext = extension_from_json(instance);
  const Evaluation ev = evaluate_candidate(ext, cfg);
  return ev.filter_pass && ev.violation;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

}  // namespace

std::vector<std::pair<std::string, Algebra>> builtin_search_algebras(const Field& f, std::size_t max_dim) {
  std::vector<std::pair<std::string, Algebra>> out;
  for (auto& a : builtin_algebras(f, max_dim)) out.emplace_back(a.origin, a.algebra);
  return out;
}

std::vector<SearchCandidate> search_candidates(const SearchConfig& cfg, SearchStats* stats_out) {
  if (cfg.max_dim_r < 1 || cfg.max_dim_s < 1) throw Error(ErrorKind::BadParams, "dimension bounds must be >= 1");
  SearchStats stats;
  std::vector<NamedAlgebra> algebras;
  if (cfg.builtin) {
    algebras = builtin_algebras(cfg.field, cfg.max_dim_r);
    for (auto& a : matrix3_subalgebras(cfg.field, cfg.max_dim_r, cfg.budget)) algebras.push_back(std::move(a));
  }
  for (auto& a : random_algebras(cfg.field, cfg.max_dim_r, cfg.random_algebras, cfg.seed, stats))
    algebras.push_back(std::move(a));
  std::set<std::string> seen;
  std::vector<SearchCandidate> out;
  for (const auto& a : algebras) {
    if (a.algebra.dim() > cfg.max_dim_r) continue;
    if (!seen.insert(a.algebra.serialize_key()).second) continue;
    ++stats.algebras;
    add_subalgebras(a, cfg, out, stats);
  }
  if (stats_out) *stats_out = stats;
  return out;
}

SearchResult run_search(const SearchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  // Validate property names once, up front.
  {
    const Subject probe = identity_extension(field_algebra(cfg.field));
    resolve_properties(probe, cfg.filter);
    resolve_properties(probe, cfg.expect);
  }
  SearchStats stats;
  const std::vector<SearchCandidate> cands = search_candidates(cfg, &stats);

  std::vector<Evaluation> results(cands.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cands.size(); i = next++) results[i] = evaluate_candidate(cands[i].ext, cfg);
  };
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SearchResult res;
  res.candidates = cands.size();
  json violations = json::array(), unknowns = json::array();
  std::size_t holds = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Evaluation& ev = results[i];
    if (ev.filter_pass) ++res.filter_hits;
    if (ev.unknown) {
      ++res.unknowns;
      unknowns.push_back(json{{"index", i}, {"origin", cands[i].origin}, {"report", ev.detail}});
    }
    if (ev.violation) {
      const json inst = extension_to_json(cands[i].ext);
      violations.push_back(json{{"index", i},
                                {"origin", cands[i].origin},
                                {"instance", inst},
                                {"report", ev.detail},
                                {"reverified", reverify(inst, cfg)}});
    } else if (ev.filter_pass && !ev.unknown) {
      ++holds;
    }
  }
  res.violations = violations.size();
  const double accept =
      stats.random_attempts == 0 ? 0.0 : static_cast<double>(stats.random_accepted) / stats.random_attempts;
  json rep{{"field", cfg.field.name()},
           {"max_dim_r", cfg.max_dim_r},
           {"max_dim_s", cfg.max_dim_s},
           {"filter", join(cfg.filter)},
           {"expect", join(cfg.expect)},
           {"seed", cfg.seed},
           {"budget", cfg.budget},
           {"algebras", stats.algebras},
           {"random_attempts", stats.random_attempts},
           {"random_accepted", stats.random_accepted},
           {"random_acceptance_rate", accept},
           {"candidates", res.candidates},
           {"filter_hits", res.filter_hits},
           {"expectation_holds", holds},
           {"violations", violations},
           {"unknowns", unknowns},
           {"subalgebra_pair_budget_skips", stats.subalgebra_budget_skips},
           {"coverage_note",
            "subalgebras are generated by at most two elements and compared by the echelon basis of their span; "
            "conjugate subalgebras are not identified"}};
  if (cfg.timing)
    rep["ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  res.report = std::move(rep);
  return res;
}

}  // namespace bisep

#include "bisep/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace bisep {

namespace {

json sparse_tensor(const Field& f, const Vec& w, std::size_t right_dim) {
  json out = json::array();
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    if (!f.is_zero(w[idx])) out.push_back(json::array({idx / right_dim, idx % right_dim, scalar_to_json(f, w[idx])}));
  return out;
}

json matrices(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

json vecs(const Field& f, const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec_to_json(f, v));
  return out;
}

json add_witness(const std::optional<AddWitness>& w) {
  if (!w) return nullptr;
  return json{{"f", matrices(w->f)}, {"g", matrices(w->g)}};
}

void fill(PropertyEntry& e, const Outcome& o) {
  e.verdict = o.verdict;
  e.certificate = o.certificate;
  e.reason = o.reason;
}

json separable_witness(const Field& f, const SeparableResult& r, std::size_t n) {
  if (!r.element) return nullptr;
  return json{{"element", sparse_tensor(f, *r.element, n)}};
}
json split_witness(const SplitResult& r) {
  if (!r.projection) return nullptr;
  return json{{"projection", matrix_to_json(*r.projection)}};
}
json fgp_witness(const Field& f, const FgpResult& r) {
  if (!r.holds()) return nullptr;
  return json{{"xs", vecs(f, r.xs)}, {"fs", matrices(r.fs)}};
}

PropertyEntry evaluate_extension(const Extension& ext, const std::string& name, const ReportOptions& opt) {
  const Field& f = ext.field();
  const std::size_t n = ext.R().dim();
  PropertyEntry e;
  if (name == "separable") {
    const auto r = is_separable_ext(ext);
    fill(e, r);
    e.witness = separable_witness(f, r, n);
  } else if (name == "split") {
    const auto r = is_split_ext(ext);
    fill(e, r);
    e.witness = split_witness(r);
  } else if (name == "fgp_left" || name == "fgp_right") {
    const auto r = is_fgp(ext, name == "fgp_left" ? Side::Left : Side::Right);
    fill(e, r);
    e.witness = fgp_witness(f, r);
  } else if (name == "frobenius") {
    const auto r = is_frobenius_ext(ext, opt.budget);
    fill(e, r);
    if (r.system)
      e.witness = json{{"E", matrix_to_json(r.system->e)}, {"xs", vecs(f, r.system->xs)}, {"ys", vecs(f, r.system->ys)},
                       {"method", r.method}};
  } else if (name == "qf_left" || name == "qf_right") {
    const auto r = is_qf_ext(ext, name == "qf_left" ? Side::Left : Side::Right);
    fill(e, r);
    e.witness = add_witness(r.witness);
  } else if (name == "h_separable") {
    const auto r = is_h_separable(ext);
    fill(e, r);
    e.witness = add_witness(r.witness);
  } else if (name == "centrally_projective") {
    const auto r = is_centrally_projective(ext);
    fill(e, r);
    e.witness = add_witness(r.witness);
  } else if (name == "biseparable") {
    const auto r = is_biseparable_ext(ext);
    fill(e, r);
    if (r.holds())
      e.witness = json{{"split", split_witness(r.split)},
                       {"separable", separable_witness(f, r.separable, n)},
                       {"fgp_left", fgp_witness(f, r.fgp_left)},
                       {"fgp_right", fgp_witness(f, r.fgp_right)}};
  } else if (name == "axiom_compatible") {
    const auto r = axiom_compatibility_search(ext, opt.budget);
    fill(e, r);
    if (r.holds())
      e.witness = json{{"projection", matrix_to_json(*r.projection)}, {"element", sparse_tensor(f, *r.element, n)}};
  } else if (name == "projection_count") {
    const auto r = count_split_projections(ext, opt.budget);
    e.verdict = r.verdict;
    if (r.verdict == Verdict::True) {
      e.value = r.count;
      e.witness = json{{"projections", matrices(r.projections)}};
    } else {
      e.certificate = CertificateKind::Budget;
      e.reason = "affine space of projections has dimension " + std::to_string(r.affine_dim);
      e.witness = json{{"affine_dim", r.affine_dim}};
    }
  } else if (name == "frobenius_hom_count") {
    const auto r = count_frobenius_homs(ext, opt.budget);
    e.verdict = r.verdict;
    e.reason = r.reason;
    if (r.verdict == Verdict::True) {
      e.value = r.count;
      e.witness = json{{"homs", matrices(r.homs)}};
    } else {
      e.certificate = CertificateKind::Budget;
    }
  } else {
    throw Error(ErrorKind::BadParams, "unknown extension property \"" + name + "\"");
  }
  return e;
}

json criterion_witness(const CriterionResult& r) {
  if (!r.map) return nullptr;
  return json{{"map", matrix_to_json(*r.map)}};
}

PropertyEntry evaluate_bimodule(const Bimodule& m, const std::string& name, const ReportOptions& opt) {
  const Field& f = m.field();
  PropertyEntry e;
  auto bimodule_sep = [&](const Bimodule& x) {
    const auto r = is_separable_bimodule(x);
    fill(e, r);
    if (r.element) {
      const Dual d = dual_left(x);
      std::vector<Matrix> maps;
      for (std::size_t b = 0; b < d.module.dim(); ++b) maps.push_back(d.ambient(unit_vec(f, d.module.dim(), b)));
      e.witness = json{{"element", sparse_tensor(f, *r.element, d.module.dim())}, {"dual_basis_maps", matrices(maps)}};
    }
    return r.holds();
  };
  if (name == "separable") {
    bimodule_sep(m);
  } else if (name == "dual_separable") {
    bimodule_sep(dual_right(m).module);
  } else if (name == "biseparable") {
    const bool a = is_separable_bimodule(m).holds();
    const bool b = is_separable_bimodule(dual_right(m).module).holds();
    e.verdict = a && b ? Verdict::True : Verdict::False;
    if (!(a && b)) {
      e.certificate = CertificateKind::LinearInfeasible;
      e.reason = !a ? "M is not separable" : "M* is not separable";
    }
  } else if (name == "fgp_left" || name == "fgp_right") {
    const bool left = name == "fgp_left";
    const auto r = left ? in_add(as_left_module(m), left_regular(m.T())) : in_add(as_right_module(m), right_regular(m.R()));
    e.verdict = r.member ? Verdict::True : Verdict::False;
    if (r.member)
      e.witness = add_witness(r.witness);
    else
      e.certificate = CertificateKind::LinearInfeasible;
  } else if (name == "frobenius") {
    const auto r = is_frobenius_bimodule(m, opt.budget);
    fill(e, r);
    if (r.iso) e.witness = json{{"iso", matrix_to_json(*r.iso)}, {"method", r.method}};
  } else if (name == "frobenius_pair") {
    const auto r = frobenius_pair_data(m, opt.budget);
    fill(e, r);
    if (r.holds())
      e.witness = json{{"element", sparse_tensor(f, *r.element, dual_left(m).module.dim())},
                       {"nu", matrix_to_json(*r.nu_map)}};
  } else if (name == "sep_dual_pairing") {
    const auto r = separable_via_dual_pairing(m);
    fill(e, r);
    e.witness = criterion_witness(r);
  } else if (name == "sep_right_endomorphisms") {
    const auto r = separable_via_right_endomorphisms(m);
    fill(e, r);
    e.witness = criterion_witness(r);
  } else if (name == "dual_sep_casimir") {
    const auto r = dual_separable_via_casimir(m);
    fill(e, r);
    e.witness = criterion_witness(r);
  } else if (name == "dual_sep_pairing") {
    const auto r = dual_separable_via_pairing(m);
    fill(e, r);
    e.witness = criterion_witness(r);
  } else if (name == "dual_sep_left_endomorphisms") {
    const auto r = dual_separable_via_left_endomorphisms(m);
    fill(e, r);
    e.witness = criterion_witness(r);
  } else if (name == "sep_frobenius_pair") {
    const auto r = separable_via_frobenius_pair(m, frobenius_pair_data(m, opt.budget));
    fill(e, r);
    if (r.alpha) e.witness = json{{"alpha", matrix_to_json(*r.alpha)}};
  } else {
    throw Error(ErrorKind::BadParams, "unknown bimodule property \"" + name + "\"");
  }
  return e;
}

}  // namespace

const PropertyEntry* PropertyReport::find(const std::string& name) const {
  for (const auto& [k, v] : properties)
    if (k == name) return &v;
  return nullptr;
}

json PropertyReport::to_json(const ReportOptions& opt) const {
  json props = json::object();
  for (const auto& [name, e] : properties) {
    json p{{"verdict", bisep::to_string(e.verdict)}};
    if (e.value) p["value"] = *e.value;
    if (e.certificate != CertificateKind::None) p["certificate"] = bisep::to_string(e.certificate);
    if (!e.reason.empty()) p["reason"] = e.reason;
    if (opt.witnesses && !e.witness.is_null()) p["witness"] = e.witness;
    if (opt.timing) p["ms"] = e.ms;
    props[name] = p;
  }
  return json{{"subject", subject}, {"properties", props}, {"implication_violations", implication_violations}};
}

const std::vector<std::string>& extension_properties() {
  static const std::vector<std::string> v = {"split",       "separable",          "fgp_left",
                                             "fgp_right",   "frobenius",          "qf_left",
                                             "qf_right",    "h_separable",        "centrally_projective",
                                             "biseparable", "axiom_compatible",   "projection_count",
                                             "frobenius_hom_count"};
  return v;
}

const std::vector<std::string>& bimodule_properties() {
  static const std::vector<std::string> v = {
      "separable",        "dual_separable",    "biseparable",         "fgp_left",
      "fgp_right",        "frobenius",         "frobenius_pair",      "sep_dual_pairing",
      "sep_right_endomorphisms", "dual_sep_casimir", "dual_sep_pairing", "dual_sep_left_endomorphisms",
      "sep_frobenius_pair"};
  return v;
}

std::vector<std::string> resolve_properties(const Subject& s, const std::vector<std::string>& requested) {
  const bool is_ext = std::holds_alternative<Extension>(s);
  const auto& all = is_ext ? extension_properties() : bimodule_properties();
  std::vector<std::string> out;
  auto push = [&](const std::string& p) {
    if (std::find(all.begin(), all.end(), p) == all.end())
      throw Error(ErrorKind::BadParams,
                  "property \"" + p + "\" does not apply to " + (is_ext ? "an extension" : "a bimodule"));
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& p : requested) {
    if (p == "all") {
      for (const auto& q : all) push(q);
    } else if (p == "qf" && is_ext) {
      push("qf_left");
      push("qf_right");
    } else if (p == "fgp") {
      push("fgp_left");
      push("fgp_right");
    } else {
      push(p);
    }
  }
  return out;
}

PropertyEntry evaluate_property(const Subject& s, const std::string& name, const ReportOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  PropertyEntry e = std::holds_alternative<Extension>(s) ? evaluate_extension(std::get<Extension>(s), name, opt)
                                                         : evaluate_bimodule(std::get<Bimodule>(s), name, opt);
  e.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return e;
}

PropertyReport evaluate(const Subject& s, const std::string& subject, const std::vector<std::string>& props,
                        const ReportOptions& opt) {
  PropertyReport r;
  r.subject = subject;
  for (const auto& p : resolve_properties(s, props)) r.properties.emplace_back(p, evaluate_property(s, p, opt));
  r.implication_violations = implication_violations(s, r);
  return r;
}

std::vector<std::string> implication_violations(const Subject& s, const PropertyReport& r) {
  std::vector<std::string> out;
  auto v = [&](const std::string& name) -> std::optional<Verdict> {
    const auto* e = r.find(name);
    if (!e) return std::nullopt;
    return e->verdict;
  };
  auto is_true = [&](const std::string& n) { return v(n) == Verdict::True; };
  auto is_false = [&](const std::string& n) { return v(n) == Verdict::False; };
  auto implies = [&](const std::string& a, const std::string& b) {
    if (is_true(a) && is_false(b)) out.push_back(a + " => " + b);
  };
  implies("frobenius", "qf_left");
  implies("frobenius", "qf_right");
  implies("qf_left", "fgp_left");
  implies("qf_right", "fgp_right");
  implies("h_separable", "separable");
  for (const char* c : {"split", "separable", "fgp_left", "fgp_right"}) implies("biseparable", c);
  if (std::holds_alternative<Bimodule>(s)) {
    implies("biseparable", "dual_separable");
    implies("frobenius", "fgp_left");
    implies("frobenius", "fgp_right");
    return out;
  }
  const Extension& ext = std::get<Extension>(s);
  if (is_true("centrally_projective") && is_true("biseparable")) {
    implies("biseparable", "qf_left");
    implies("biseparable", "qf_right");
  }
  if (ext.field().is_finite() && is_true("biseparable") && is_false("frobenius") && is_semisimple(ext.S()))
    out.push_back("biseparable with semisimple S => frobenius");
  if (ext.is_identity_like())
    for (const auto& [name, e] : r.properties)
      if (!e.value && e.verdict != Verdict::True) out.push_back("identity extension => " + name);
  return out;
}

}  // namespace bisep

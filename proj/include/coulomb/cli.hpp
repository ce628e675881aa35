#pragma once

// JSON requests and reports, the analysis driver and the registry of worked
// examples with their stored expectations.

#include "coulomb/descent.hpp"
#include "coulomb/formal_sections.hpp"
#include "coulomb/obstructions.hpp"
#include "coulomb/weyl_cohomology.hpp"

#include <json.hpp>

#include <functional>
#include <set>
#include <sstream>
#include <string>

namespace coulomb::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// A request that does not describe a valid group and representation.
class RequestError : public std::runtime_error {
 public:
  RequestError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what) {}
};

inline const std::vector<std::string>& all_analyses() {
  static const std::vector<std::string> names{"obstruction", "cocycles",       "identities",
                                              "torsor",      "abelianization", "conditions"};
  return names;
}

/// A sign flip applied to the restriction of χ_{s_α} at a root hyperplane.
struct HyperplaneCorrection {
  Vec root;
  Vec sign;
};

struct AnalysisRequest {
  json document;  // normalized input, re-parses to an equal request
  std::string name;
  DatumPtr datum;
  WeightMultiset rep;
  WeightMap invariant_half;  // intrinsic
  std::optional<TensorFactorization> factorization;
  Vec xi0;  // intrinsic
  std::set<std::string> analyses;
  std::vector<HyperplaneCorrection> corrections;
  std::size_t weyl_cap = kDefaultWeylCap;
};

namespace detail {

inline Rational parse_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (!j.is_string()) throw RequestError(path, "expected an integer or a rational string like \"1/2\"");
  const std::string s = j.get<std::string>();
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    const Int num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
    if (slash == std::string::npos) return Rational(num);
    const std::string rest = s.substr(slash + 1);
    const Int den = std::stoll(rest, &used);
    if (used != rest.size() || den == 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw RequestError(path, "'" + s + "' is not a rational number");
  }
}

inline RatVec parse_ratvec(const json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw RequestError(path, "expected an array");
  if (j.size() != size) throw RequestError(path, "expected " + std::to_string(size) + " entries");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Vec parse_intvec(const json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw RequestError(path, "expected an array");
  if (j.size() != size) throw RequestError(path, "expected " + std::to_string(size) + " entries");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw RequestError(path + "[" + std::to_string(i) + "]", "expected an integer");
    v.push_back(j[i].get<Int>());
  }
  return v;
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw RequestError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw RequestError(path, "missing field '" + key + "'");
  return *it;
}

inline Int int_field(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) throw RequestError(path + "." + key, "expected an integer");
  return v.get<Int>();
}

inline std::size_t factor_field(const json& j, const std::string& path, const RootDatum& d) {
  const Int f = int_field(j, "factor", path);
  if (f < 0 || static_cast<std::size_t>(f) >= d.structure.factors.size())
    throw RequestError(path + ".factor", "no factor " + std::to_string(f));
  return static_cast<std::size_t>(f);
}

inline DatumPtr parse_group(const json& g, const std::string& path) {
  const json& factors = field(g, "factors", path);
  if (!factors.is_array() || factors.empty()) throw RequestError(path + ".factors", "expected a non-empty array");
  std::optional<RootDatum> d;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string p = path + ".factors[" + std::to_string(i) + "]";
    const json& fam = field(factors[i], "family", p);
    if (!fam.is_string()) throw RequestError(p + ".family", "expected a string");
    try {
      RootDatum f = build_simple(parse_family(fam.get<std::string>()), static_cast<int>(int_field(factors[i], "n", p)));
      d = d ? product(*d, f) : f;
    } catch (const std::invalid_argument& e) {
      throw RequestError(p, e.what());
    }
  }
  if (auto k = g.find("kernel"); k != g.end()) {
    if (!k->is_array()) throw RequestError(path + ".kernel", "expected an array of coweights");
    std::vector<RatVec> kernel;
    for (std::size_t i = 0; i < k->size(); ++i)
      kernel.push_back(parse_ratvec((*k)[i], path + ".kernel[" + std::to_string(i) + "]", d->cover_rank()));
    if (!kernel.empty()) {
      try {
        d = central_quotient(*d, kernel);
      } catch (const std::invalid_argument& e) {
        throw RequestError(path + ".kernel", e.what());
      }
    }
  }
  return std::make_shared<RootDatum>(std::move(*d));
}

/// Explicit weights in cover coordinates. Spin and SO blocks are doubled
/// (2ε) in cover coordinates; with "doubled": false they are given in ε.
inline WeightMultiset parse_weights(const json& node, const std::string& path, const DatumPtr& d) {
  const json& ws = field(node, "weights", path);
  if (!ws.is_array()) throw RequestError(path + ".weights", "expected an array of weights");
  bool doubled = false;
  if (auto it = node.find("doubled"); it != node.end()) {
    if (!it->is_boolean()) throw RequestError(path + ".doubled", "expected a boolean");
    doubled = it->get<bool>();
  }
  std::vector<Int> mult(ws.size(), 1);
  if (auto it = node.find("multiplicities"); it != node.end()) {
    const Vec m = parse_intvec(*it, path + ".multiplicities", ws.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 1) throw RequestError(path + ".multiplicities[" + std::to_string(i) + "]", "must be positive");
      mult[i] = m[i];
    }
  }
  WeightMultiset e(d);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::string p = path + ".weights[" + std::to_string(i) + "]";
    Vec v = parse_intvec(ws[i], p, d->cover_rank());
    if (!doubled)
      for (const auto& f : d->structure.factors)
        if (f.doubled())
          for (std::size_t j = 0; j < f.cover_rank; ++j) v[f.cover_offset + j] *= 2;
    if (!d->weight_from_cover(v)) throw RequestError(p, "not a weight of the group");
    e.add(v, mult[i]);
  }
  return e;
}

inline WeightMultiset parse_rep(const json& node, const std::string& path, const DatumPtr& d) {
  const json& opj = field(node, "op", path);
  if (!opj.is_string()) throw RequestError(path + ".op", "expected a string");
  const std::string op = opj.get<std::string>();
  auto args = [&](const std::string& key) {
    const json& a = field(node, key, path);
    if (!a.is_array() || a.empty()) throw RequestError(path + "." + key, "expected a non-empty array");
    std::vector<WeightMultiset> out;
    for (std::size_t i = 0; i < a.size(); ++i)
      out.push_back(parse_rep(a[i], path + "." + key + "[" + std::to_string(i) + "]", d));
    return out;
  };
  try {
    if (op == "standard") return standard_rep(d, factor_field(node, path, *d));
    if (op == "spinor") {
      const Int c = node.contains("chirality") ? int_field(node, "chirality", path) : 0;
      return spinor_rep(d, factor_field(node, path, *d), static_cast<int>(c));
    }
    if (op == "irrep") return su2_irrep(d, factor_field(node, path, *d), static_cast<int>(int_field(node, "k", path)));
    if (op == "adjoint") return adjoint_rep(d);
    if (op == "trivial") return trivial_rep(d, int_field(node, "dim", path));
    if (op == "weights") return parse_weights(node, path, d);
    if (op == "dual") return dual(parse_rep(field(node, "arg", path), path + ".arg", d));
    if (op == "quaternionify") return quaternionify(parse_rep(field(node, "arg", path), path + ".arg", d));
    if (op == "scale") return scale(parse_rep(field(node, "arg", path), path + ".arg", d), int_field(node, "by", path));
    if (op == "sum" || op == "tensor") {
      auto parts = args("args");
      WeightMultiset acc = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) acc = op == "sum" ? direct_sum(acc, parts[i]) : tensor(acc, parts[i]);
      return acc;
    }
  } catch (const std::invalid_argument& e) {
    throw RequestError(path, e.what());
  }
  throw RequestError(path + ".op", "unknown constructor '" + op + "'");
}

}  // namespace detail

inline AnalysisRequest parse_request(const json& doc) {
  if (!doc.is_object()) throw RequestError("", "request must be a JSON object");
  AnalysisRequest req;
  const json& version = detail::field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw RequestError("schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> known{"schema_version", "name",          "group",  "representation",
                                             "invariant_half", "factorization", "options"};
    if (!known.count(key)) throw RequestError(key, "unknown field");
  }
  req.name = doc.value("name", std::string("request"));
  req.datum = detail::parse_group(detail::field(doc, "group", ""), "group");
  req.rep = detail::parse_rep(detail::field(doc, "representation", ""), "representation", req.datum);
  if (auto v = req.rep.lattice_violation())
    throw RequestError("representation", "weight " + coulomb::detail::vec_string(*v) + " is not a weight of the group");
  if (req.rep.dimension() % 2 != 0) throw RequestError("representation", "odd total dimension; not self-dual");
  if (!req.rep.is_self_dual()) throw RequestError("representation", "weights are not closed under negation");
  if (auto it = doc.find("invariant_half"); it != doc.end()) {
    WeightMultiset half = detail::parse_weights(*it, "invariant_half", req.datum);
    req.invariant_half = half.intrinsic();
  }
  if (auto it = doc.find("factorization"); it != doc.end()) {
    TensorFactorization t;
    t.sp_factor = detail::factor_field(*it, "factorization", *req.datum);
    t.r = detail::parse_rep(detail::field(*it, "r", "factorization"), "factorization.r", req.datum);
    t.s = detail::parse_rep(detail::field(*it, "s", "factorization"), "factorization.s", req.datum);
    req.factorization = std::move(t);
  }
  const json options = doc.value("options", json::object());
  if (!options.is_object()) throw RequestError("options", "expected an object");
  for (const auto& [key, value] : options.items()) {
    static const std::set<std::string> known{"xi0", "analyses", "corrections", "weyl_cap"};
    if (!known.count(key)) throw RequestError("options." + key, "unknown option");
  }
  const WeightMap weights = req.rep.intrinsic();
  if (auto it = options.find("xi0"); it != options.end()) {
    const RatVec g = detail::parse_ratvec(*it, "options.xi0", req.datum->cover_rank());
    auto y = req.datum->integral_coweight_from_cover(g);
    if (!y) throw RequestError("options.xi0", "not a cocharacter of the group");
    req.xi0 = *y;
  } else {
    req.xi0 = default_xi0(*req.datum, weights);
  }
  if (auto it = options.find("analyses"); it != options.end()) {
    if (!it->is_array()) throw RequestError("options.analyses", "expected an array of names");
    for (const auto& a : *it) {
      const std::string n = a.is_string() ? a.get<std::string>() : "";
      if (std::find(all_analyses().begin(), all_analyses().end(), n) == all_analyses().end())
        throw RequestError("options.analyses", "unknown analysis '" + a.dump() + "'");
      req.analyses.insert(n);
    }
  } else {
    req.analyses.insert(all_analyses().begin(), all_analyses().end());
  }
  if (auto it = options.find("corrections"); it != options.end()) {
    if (!it->is_array()) throw RequestError("options.corrections", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = "options.corrections[" + std::to_string(i) + "]";
      HyperplaneCorrection c;
      c.root = detail::parse_intvec(detail::field((*it)[i], "root", p), p + ".root", req.datum->rank());
      if (!req.datum->root_index(c.root)) throw RequestError(p + ".root", "not a root");
      c.sign = detail::parse_intvec(detail::field((*it)[i], "sign", p), p + ".sign", req.datum->rank());
      req.corrections.push_back(std::move(c));
    }
  }
  if (auto it = options.find("weyl_cap"); it != options.end()) {
    if (!it->is_number_integer() || it->get<Int>() < 1)
      throw RequestError("options.weyl_cap", "expected a positive integer");
    req.weyl_cap = static_cast<std::size_t>(it->get<Int>());
  }
  req.document = doc;
  return req;
}

inline AnalysisRequest parse_request_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RequestError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_request(doc);
}

/// The normalized request document; parse_request(serialize(r)) reproduces r.
inline json serialize(const AnalysisRequest& req) { return req.document; }

// ---------------------------------------------------------------------------
// Report pieces

namespace detail {

inline json to_json(const Vec& v) { return json(v); }

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline std::string rational_string(const Rational& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << "/" << q.denominator();
  return os.str();
}

/// One string per value coordinate: sign, scalars and linear factors.
inline std::vector<std::string> components(const FormalLinearSection& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.value_rank(); ++i) {
    std::string c;
    for (const auto& [p, l] : s.scalars())
      if (l[i]) c += (c.empty() ? "" : " ") + std::to_string(p) + (l[i] == 1 ? "" : "^" + std::to_string(l[i]));
    for (const auto& [k, l] : s.factors())
      if (l[i]) c += (c.empty() ? "" : " ") + std::string("<") + coulomb::detail::vec_string(k) + ">" + (l[i] == 1 ? "" : "^" + std::to_string(l[i]));
    if (c.empty()) c = "1";
    out.push_back((s.sign()[i] ? "-" : "") + c);
  }
  return out;
}

inline json skipped(const std::string& reason) { return json{{"skipped", reason}}; }

}  // namespace detail

/// Everything an analysis needs, computed once per request.
struct AnalysisContext {
  const AnalysisRequest& req;
  WeylGroup weyl;
  PolarizationSplit split;
  PrimaryStatus status;
};

inline json obstruction_section(const AnalysisContext& ctx) {
  const auto& req = ctx.req;
  json out;
  const auto roots = w4_square_root_search(req.rep);
  json rs = json::array();
  for (const auto& r : roots) {
    rs.push_back({{"r", r.r},
                  {"in_group", r.in_group},
                  {"integral_lift", r.integral_lift},
                  {"mod4_lift", r.mod4_lift},
                  {"lift", r.lift ? json(*r.lift) : json(nullptr)}});
  }
  out["square_roots"] = rs;
  out["status"] = status_name(ctx.status);
  if (req.factorization) {
    const auto& t = *req.factorization;
    const ClassificationCase k = classify_irreducible(req.rep, t);
    out["classification"] = {{"case", case_name(k)},
                             {"expected_status", status_name(expected_status(k))},
                             {"agrees", expected_status(k) == ctx.status},
                             {"glued_mu2", glued_mu2(*req.datum, t.sp_factor)},
                             {"dim_c2_mod4", dim_c2_mod4_check(t.s, t.sp_factor)}};
  } else {
    out["classification"] = detail::skipped("no R (x) S factorization supplied");
  }
  if (ctx.status == PrimaryStatus::obstructed) {
    out["sigma"] = detail::skipped("primary obstruction does not vanish");
  } else {
    const SigmaResult s = secondary_sigma(req.rep, req.factorization);
    out["sigma"] = {{"status", sigma_name(s.status)}, {"reason", s.reason}};
  }
  if (roots.front().lift) {
    const EvenChoice dim_s = even_choice(*roots.front().lift);
    json dims = json::array();
    bool even = true;
    for (std::size_t i = 0; i < req.datum->rank(); ++i) {
      const Vec g = coulomb::detail::unit(req.datum->rank(), i);
      const Int f = fiber_dimension(ctx.split, g, dim_s(g));
      even = even && f % 2 == 0;
      dims.push_back(f);
    }
    out["parity"] = {{"fiber_dimensions", dims}, {"all_even", even}};
  } else {
    out["parity"] = detail::skipped("no integral square root");
  }
  return out;
}

inline json cocycles_section(const AnalysisContext& ctx) {
  const auto& w = ctx.weyl;
  const auto cc = cochain_c(ctx.split, w);
  const auto sol = solve_coboundary_c(cc, w);
  json c{{"cocycle_ok", verify_2cocycle(cc, w).ok}, {"exact", sol.solvable()}};
  if (sol.solvable()) {
    json gens = json::array();
    for (std::size_t g : w.generators()) gens.push_back((*sol.particular)(g));
    c["witness_on_generators"] = gens;
  }
  const auto s2 = cochain_s2(ctx.split, w);
  json gens = json::array();
  for (std::size_t g : w.generators()) gens.push_back(detail::to_json(s2(g)));
  json s{{"crossed_hom_ok", verify_crossed_hom(s2, w).ok},
         {"exact", solve_coboundary_s2(s2, w).solvable()},
         {"on_generators", gens}};
  return {{"c", c}, {"s2", s}, {"weyl_order", w.size()}};
}

inline json identities_section(const AnalysisContext& ctx) {
  const auto& w = ctx.weyl;
  const auto& split = ctx.split;
  std::size_t chi_bad = 0, kappa_bad = 0;
  for (std::size_t u = 0; u < w.size(); ++u)
    for (std::size_t v = 0; v < w.size(); ++v) {
      const Vec c = cocycle_c(split, w, u, v);
      if (delta_chi(split, w, u, v) != c) ++chi_bad;
      const SignAndMonomial k = delta_kappa(split, w, u, v);
      if (k.sign != c || k.monomial != cocycle_d(split, w, u, v)) ++kappa_bad;
    }
  std::size_t literal_constant = 0, coboundary_bad = 0, regweyl_bad = 0;
  for (std::size_t u = 0; u < w.size(); ++u) {
    const auto lin = verify_vepchikappa(split, w, u);
    const auto chr = verify_vepchikappa_character(split, w, u);
    if (lin.literal_constant()) ++literal_constant;
    if (!lin.coboundary.is_identity() || !chr.coboundary.is_identity()) ++coboundary_bad;
    if (!verify_regweyl(split, w, u).is_identity() || !verify_regweyl_character(split, w, u).is_identity())
      ++regweyl_bad;
  }
  const auto cl = charge_conjugation_linear(split);
  const auto cc = charge_conjugation_character(split);
  const bool squares = compose(cl, cl, w).shift == c_squared_linear(split) &&
                       compose(cc, cc, w).shift == c_squared_character(split);
  return {{"pairs", w.size() * w.size()},
          {"delta_chi_vs_c", chi_bad},
          {"delta_kappa_vs_cd", kappa_bad},
          {"vepchikappa", {{"literal_constant", literal_constant}, {"coboundary_discrepancies", coboundary_bad}}},
          {"regweyl_discrepancies", regweyl_bad},
          {"c_plus_squared_matches", squares},
          {"c_squared", to_string(c_squared_linear(split))}};
}

inline json torsor_section(const AnalysisContext& ctx) {
  const auto& req = ctx.req;
  const auto& w = ctx.weyl;
  const auto& split = ctx.split;
  json out;
  std::string verdict = "undetermined";
  if (auto v = weyl_polarization(req.rep, w)) {
    const FormalLinearSection psi = polarized_trivialization(split, *v);
    const bool ok = trivializes(split, w, psi);
    out["weyl_polarization"] = {{"exists", true}, {"trivializes", ok}, {"section", to_string(psi)}};
    if (ok) verdict = "trivial";
  } else {
    out["weyl_polarization"] = {{"exists", false}};
  }
  if (auto minus = w.longest_negation()) {
    const FormalLinearSection chi = chi_w(split, w, *minus);
    const TorsorParityReport p = torsor_parity(chi);
    json odd = json::array();
    for (const auto& e : p.entries)
      if (e.odd) odd.push_back({{"key", e.key}, {"exponent", e.exponent}});
    const FormalLinearSection shown = invert(chi);
    json inverse = json::object();
    for (const auto& [k, l] : shown.factors()) inverse[coulomb::detail::vec_string(k)] = l;
    out["parity"] = {{"coboundary_possible", p.coboundary_possible},
                     {"odd_entries", odd},
                     {"chi_inverse_factors", inverse},
                     {"chi_inverse", to_string(shown)}};
    if (!p.coboundary_possible) verdict = "nontrivial";
  } else {
    out["parity"] = detail::skipped("-1 is not in the Weyl group");
  }
  json planes = json::array();
  for (std::size_t i : coulomb::detail::root_representatives(*req.datum)) {
    const Vec& alpha = req.datum->roots[i];
    const std::size_t s = w.index_of(root_reflection(alpha, req.datum->coroots[i]));
    const HyperplaneRestriction r = restrict_to_hyperplane(invert(chi_w(split, w, s)), *req.datum, alpha);
    const HyperplaneClass cls = hyperplane_class(r);
    json entry{{"root", alpha},
               {"vanishing_exponent", r.vanishing_exponent},
               {"residual", detail::components(r.residual)},
               {"trivial", cls.trivial()},
               {"keys_ok", cls.keys_ok},
               {"scalars_ok", cls.scalars_ok},
               {"sign_ok", cls.sign_ok}};
    for (const auto& c : req.corrections)
      if (c.root == alpha) {
        HyperplaneRestriction fixed = r;
        fixed.residual.add_sign(c.sign);
        entry["corrected"] = {{"sign", c.sign},
                              {"residual", detail::components(fixed.residual)},
                              {"trivial", hyperplane_class(fixed).trivial()}};
      }
    planes.push_back(entry);
  }
  out["hyperplanes"] = planes;
  out["verdict"] = verdict;
  return out;
}

inline json abelianization_section(const AnalysisContext& ctx) {
  const AbelianizedModel m = abelianizable(ctx.req.rep);
  json roots = json::array();
  for (const auto& r : m.roots) {
    json mult = json::object();
    for (const auto& [n, k] : r.multiples) mult[std::to_string(n)] = k;
    roots.push_back({{"root", r.root},
                     {"multiples", mult},
                     {"total", detail::rational_string(r.total)},
                     {"integral_total", detail::rational_string(r.integral_total)},
                     {"eligible", r.eligible},
                     {"affine_relevant", r.affine_relevant},
                     {"affine_eligible", r.affine_eligible}});
  }
  json out{{"roots", roots}, {"eligible_c3", m.eligible_c3()}, {"eligible_c4", m.eligible_c4()}};
  if (m.torus_weights) {
    out["torus_weight_dimension"] = m.torus_weights->dimension();
  } else {
    out["missing_adjoint_weight"] = *m.missing_weight;
  }
  return out;
}

inline json conditions_section(const AnalysisContext& ctx) {
  if (ctx.status == PrimaryStatus::obstructed) return detail::skipped("primary obstruction does not vanish");
  const EvaluationConditionReport rep = evaluation_conditions(ctx.split, ctx.weyl, ctx.req.rep);
  json roots = json::array();
  for (const auto& c : rep.roots) {
    roots.push_back({{"root", c.root},
                     {"levi", levi_name(c.levi)},
                     {"odd_spin_sum", c.odd_spin_sum},
                     {"r_alpha", c.r_alpha ? json(to_string(*c.r_alpha)) : json(nullptr)},
                     {"q_alpha", c.q_alpha ? json(to_string(*c.q_alpha)) : json(nullptr)},
                     {"note", c.note},
                     {"condition_linear", c.condition_linear},
                     {"condition_character", c.condition_character}});
  }
  return {{"roots", roots}};
}

/// Runs the requested analyses. Sections that were not requested, or that
/// cannot run, say why.
inline json run_analysis(const AnalysisRequest& req) {
  AnalysisContext ctx{req, enumerate_weyl(*req.datum, req.weyl_cap), polarize(req.rep, req.xi0, req.invariant_half),
                      primary_status(w4_square_root_search(req.rep))};
  json group = json::array();
  for (const auto& f : req.datum->structure.factors) group.push_back(f.name());
  json report{{"schema_version", kSchemaVersion},
              {"name", req.name},
              {"group", {{"factors", group}, {"rank", req.datum->rank()}, {"weyl_order", ctx.weyl.size()}}},
              {"representation", {{"dimension", req.rep.dimension()}, {"xi0", req.xi0}, {"regular", ctx.split.strict()}}}};
  const std::vector<std::pair<std::string, json (*)(const AnalysisContext&)>> sections{
      {"obstruction", obstruction_section}, {"cocycles", cocycles_section},
      {"identities", identities_section},   {"torsor", torsor_section},
      {"abelianization", abelianization_section}, {"conditions", conditions_section}};
  for (const auto& [name, fn] : sections) {
    if (!req.analyses.count(name)) {
      report[name] = detail::skipped("not requested");
    } else if (!ctx.split.strict() && name != "obstruction" && name != "abelianization") {
      report[name] = detail::skipped("xi0 is not regular for the representation");
    } else {
      report[name] = fn(ctx);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Worked examples

/// A stored value at a JSON pointer into an example's result.
struct Expectation {
  std::string pointer;
  json value;
};

struct Example {
  std::string name;
  std::string summary;
  std::vector<json> requests;
  std::vector<Expectation> expectations;
  json hand_recorded = nullptr;                          // statements no request can reproduce
  std::function<json(const AnalysisRequest&)> extra = nullptr;  // run on the first request
};

/// Q = Σ_{ν>0} ν νᵀ over a torus, with ν > 0 taken by the default coweight.
/// The quadratic form c₂ = Σ_{ν>0} ν² has coefficients Q_ii and 2 Q_ij.
inline json torus_c2_gram(const AnalysisRequest& req) {
  const PolarizationSplit split = polarize(req.rep, req.xi0, req.invariant_half);
  const std::size_t r = req.datum->rank();
  std::vector<Vec> q(r, Vec(r, 0));
  for (const auto& [v, m] : split.positive)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q[i][j] += m * v[i] * v[j];
  bool even = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) even = even && (i == j ? q[i][j] : 2 * q[i][j]) % 2 == 0;
  return {{"gram", q}, {"c2_even", even}};
}

namespace detail {

inline json op(const std::string& name, json fields = json::object()) {
  fields["op"] = name;
  return fields;
}
inline json std_rep(int f) { return op("standard", {{"factor", f}}); }
inline json tensor_of(json a, json b) { return op("tensor", {{"args", {std::move(a), std::move(b)}}}); }

inline json request(const std::string& name, json factors, json rep, json xi0) {
  return {{"schema_version", kSchemaVersion},
          {"name", name},
          {"group", {{"factors", std::move(factors)}}},
          {"representation", std::move(rep)},
          {"options", {{"xi0", std::move(xi0)}}}};
}

inline json factor(const std::string& family, int n) { return {{"family", family}, {"n", n}}; }

inline json su2_request(const std::string& name, int copies) {
  json rep = copies == 0 ? op("weights", {{"weights", json::array()}})
                         : op("scale", {{"arg", std_rep(0)}, {"by", copies}});
  json r = request(name, {factor("SU", 2)}, rep, {1});
  if (copies > 0)
    r["factorization"] = {{"factor", 0}, {"r", op("trivial", {{"dim", copies}})}, {"s", std_rep(0)}};
  return r;
}

inline json so4_sp1_request() {
  json r = request("so4_sp1", {factor("Spin", 4), factor("Sp", 1)}, tensor_of(std_rep(0), std_rep(1)), {4, 2, 1});
  r["group"]["kernel"] = {{1, 0, 0}, {"1/2", "1/2", "1/2"}};
  r["factorization"] = {{"factor", 1}, {"r", std_rep(0)}, {"s", std_rep(1)}};
  return r;
}

inline std::vector<Example> build_examples() {
  std::vector<Example> out;
  {
    json r = request("su2_cubed", {factor("SU", 2), factor("SU", 2), factor("SU", 2)},
                     tensor_of(tensor_of(std_rep(0), std_rep(1)), std_rep(2)), {4, 2, 1});
    r["group"]["kernel"] = {{"1/2", "1/2", 0}, {0, "1/2", "1/2"}};
    r["factorization"] = {{"factor", 2}, {"r", tensor_of(std_rep(0), std_rep(1))}, {"s", std_rep(2)}};
    out.push_back({"su2_cubed",
                   "SU(2)^3/S(mu2^3) on H(x)H(x)H: c is exact, s(x)2 is not, sigma is nonzero",
                   {r},
                   {{"/reports/0/cocycles/c/exact", true},
                    {"/reports/0/cocycles/s2/exact", false},
                    {"/reports/0/obstruction/sigma/status", "nonzero"},
                    {"/reports/0/identities/delta_chi_vs_c", 0},
                    {"/reports/0/identities/delta_kappa_vs_cd", 0}}});
  }
  {
    json weights = json::array();
    for (const Vec& v : std::vector<Vec>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) {
      weights.push_back(v);
      weights.push_back(neg(v));
    }
    json r = request("disconnected_torus", {factor("U1", 3)}, op("weights", {{"weights", weights}}), {1, 2, 4});
    r["options"]["analyses"] = json::array();
    Example e{"disconnected",
              "disconnected group; only the maximal-torus c2 is computed",
              {r},
              {{"/extra/c2_even", true}, {"/extra/gram", {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}}}};
    e.hand_recorded = {{"c2", "2(h + sum_i w_i^2), even"},
                       {"sigma", "u h + u sum_i [w_i^2]"},
                       {"B_sigma", "u^2 (h + phi) != 0"},
                       {"reason", "the group is not connected, so no root datum describes it"}};
    e.extra = torus_c2_gram;
    out.push_back(std::move(e));
  }
  {
    json weights = json::array();
    for (const Vec& v : std::vector<Vec>{{2, 1}, {1, 2}, {2, -1}, {-1, 2}}) {
      weights.push_back(v);
      weights.push_back(neg(v));
    }
    json rep = op("sum", {{"args", {op("weights", {{"weights", weights}}), op("scale", {{"arg", std_rep(0)}, {"by", 2}})}}});
    json r = request("sp2_complement", {factor("Sp", 2)}, rep, {3, 2});
    r["invariant_half"] = {{"weights", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}};
    r["factorization"] = {{"factor", 0}, {"r", op("trivial", {{"dim", 1}})}, {"s", rep}};
    out.push_back({"sp2_complement",
                   "Sp(2) on the complement of H^2 in R^5(x)H^2: -1 acts with odd exponents",
                   {r},
                   {{"/reports/0/torsor/parity/coboundary_possible", false},
                    {"/reports/0/torsor/verdict", "nontrivial"},
                    {"/reports/0/torsor/parity/chi_inverse_factors",
                     {{"(-1,2)", {-1, 2}}, {"(1,2)", {1, 2}}, {"(2,-1)", {2, -1}}, {"(2,1)", {2, 1}}}}}});
  }
  {
    json r = request("su2_u1", {factor("SU", 2), factor("U1", 1)},
                     tensor_of(std_rep(0), op("quaternionify", {{"arg", std_rep(1)}})), {2, 1});
    r["factorization"] = {{"factor", 0}, {"r", op("quaternionify", {{"arg", std_rep(1)}})}, {"s", std_rep(0)}};
    r["options"]["corrections"] = {{{"root", {2, 0}}, {"sign", {0, 1}}}};
    out.push_back({"su2_u1",
                   "SU(2)xU(1) on C^2(x)(C+C*): the root-hyperplane residual and its sign fix",
                   {r},
                   {{"/reports/0/torsor/hyperplanes/0/residual", {"-<(0,1)>^2", "-1"}},
                    {"/reports/0/torsor/hyperplanes/0/trivial", false},
                    {"/reports/0/torsor/hyperplanes/0/corrected/trivial", true},
                    {"/reports/0/torsor/verdict", "trivial"}}});
  }
  out.push_back({"su2_family",
                 "SU(2) with E = 0, H, 2H",
                 {su2_request("su2_E0", 0), su2_request("su2_H", 1), su2_request("su2_2H", 2)},
                 {{"/reports/0/conditions/roots/0/condition_linear", "exp(h_a) o s = 1 on a = 0"},
                  {"/reports/0/abelianization/eligible_c3", false},
                  {"/reports/1/obstruction/status", "obstructed"},
                  {"/reports/1/obstruction/classification/case", "case_i"},
                  {"/reports/1/abelianization/eligible_c3", false},
                  {"/reports/2/obstruction/status", "unobstructed"},
                  {"/reports/2/torsor/verdict", "trivial"},
                  {"/reports/2/abelianization/eligible_c3", false}}});
  {
    json r = request("su2_so6", {factor("SU", 2), factor("Spin", 6)}, tensor_of(std_rep(0), std_rep(1)),
                     {8, 3, 2, 1});
    r["group"]["kernel"] = {{"1/2", "1/2", "1/2", "1/2"}};
    r["factorization"] = {{"factor", 0}, {"r", std_rep(1)}, {"s", std_rep(0)}};
    json sp = request("sp1_h", {factor("Sp", 1)}, std_rep(0), {1});
    sp["factorization"] = {{"factor", 0}, {"r", op("trivial", {{"dim", 1}})}, {"s", std_rep(0)}};
    out.push_back({"whenodd_ii",
                   "SU(2)x_mu2 SO(6) on H(x)R^6 against Sp(1) on H",
                   {r, sp},
                   {{"/reports/0/obstruction/status", "mod2_only"},
                    {"/reports/0/obstruction/classification/case", "case_ii"},
                    {"/reports/0/obstruction/classification/agrees", true},
                    {"/reports/1/obstruction/status", "obstructed"},
                    {"/reports/1/obstruction/classification/case", "case_i"},
                    {"/reports/1/obstruction/classification/agrees", true}}});
  }
  out.push_back({"kobst_witness",
                 "SO(4)x_mu2 Sp(1) on R^4(x)H: sigma is nonzero and s(x)2 is not exact",
                 {so4_sp1_request()},
                 {{"/reports/0/obstruction/status", "unobstructed"},
                  {"/reports/0/obstruction/sigma/status", "nonzero"},
                  {"/reports/0/cocycles/s2/exact", false}}});
  return out;
}

}  // namespace detail

inline const std::vector<Example>& examples() {
  static const std::vector<Example> all = detail::build_examples();
  return all;
}

inline const Example& find_example(const std::string& name) {
  for (const auto& e : examples())
    if (e.name == name) return e;
  throw RequestError("", "unknown example '" + name + "'");
}

/// Runs every request of an example and compares the stored expectations.
inline json run_example(const Example& ex) {
  json result{{"example", ex.name}, {"summary", ex.summary}, {"reports", json::array()}};
  std::optional<AnalysisRequest> first;
  for (const auto& doc : ex.requests) {
    AnalysisRequest req = parse_request(doc);
    result["reports"].push_back(run_analysis(req));
    if (!first) first = std::move(req);
  }
  if (ex.extra && first) result["extra"] = ex.extra(*first);
  if (!ex.hand_recorded.is_null()) result["hand_recorded"] = ex.hand_recorded;
  json checks = json::array();
  bool ok = true;
  for (const auto& x : ex.expectations) {
    const json::json_pointer ptr(x.pointer);
    const json actual = result.contains(ptr) ? result.at(ptr) : json(nullptr);
    const bool pass = actual == x.value;
    ok = ok && pass;
    checks.push_back({{"pointer", x.pointer}, {"expected", x.value}, {"actual", actual}, {"ok", pass}});
  }
  result["checks"] = checks;
  result["ok"] = ok;
  return result;
}

}  // namespace coulomb::cli

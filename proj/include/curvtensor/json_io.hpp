#pragma once

// JSON serialization for every value and report type. Ordered maps keep key
// order stable so identical inputs produce byte-identical reports.
//
// Scalar convention: exact mode writes rationals as "p/q" strings, float mode
// writes plain numbers; parsers accept either form in either mode (numbers
// lift to their exact dyadic value).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvtensor/chain_reduce.hpp"
#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/decompose.hpp"
#include "curvtensor/dependence.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/structure_group.hpp"
#include "curvtensor/tensor.hpp"

namespace curv::io {

using json = nlohmann::ordered_json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << '\n';
}

// --- Scalars ---------------------------------------------------------------------

template <typename S>
json scalar_to_json(const S& v) {
  if constexpr (is_exact_v<S>) return v.str();
  else return v;
}

template <typename S>
S scalar_from_json(const json& j) {
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    return scalar_from_rational<S>(r);
  }
  if (j.is_number()) {
    if constexpr (is_exact_v<S>) return rational_from_double(j.get<double>());
    else return j.get<double>();
  }
  throw ParseError("expected a number or a \"p/q\" string");
}

// --- Matrices ---------------------------------------------------------------------

template <typename S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json<S>(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
Matrix<S> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError("matrix must be a nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  if (cols == 0) throw ParseError("matrix rows must be nonempty");
  Matrix<S> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("matrix rows must have equal length");
    for (int c = 0; c < cols; ++c) m(i, c) = scalar_from_json<S>(j[i][c]);
  }
  return m;
}

// --- Operators --------------------------------------------------------------------

inline std::optional<OperatorKind> kind_from_name(const std::string& s) {
  if (s == "self-adjoint") return OperatorKind::SelfAdjoint;
  if (s == "skew-adjoint") return OperatorKind::SkewAdjoint;
  if (s == "general") return OperatorKind::General;
  return std::nullopt;
}

inline std::optional<BuildKind> build_from_name(const std::string& s) {
  if (s == "S") return BuildKind::Symmetric;
  if (s == "Lambda") return BuildKind::Alternating;
  return std::nullopt;
}

template <typename S>
json operator_to_json(const Operator<S>& op) {
  return json{{"kind", kind_name(op.kind)}, {"matrix", matrix_to_json<S>(op.mat)}};
}

template <typename S>
Operator<S> operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("matrix"))
    throw ParseError("operator needs \"kind\" and \"matrix\"");
  const auto kind = kind_from_name(j["kind"].get<std::string>());
  if (!kind) throw ParseError("unknown operator kind: " + j["kind"].get<std::string>());
  Matrix<S> m = matrix_from_json<S>(j["matrix"]);
  if (m.rows() != m.cols()) throw ParseError("operator matrix must be square");
  return Operator<S>{std::move(m), *kind};
}

// --- Context ----------------------------------------------------------------------

inline std::string mode_name(bool exact) { return exact ? "exact" : "float64"; }

// Reads the "mode" field so the caller can pick the scalar type before any
// templated parse happens. Absent mode defaults to float64.
inline bool context_json_is_exact(const json& j) {
  if (!j.is_object() || !j.contains("mode")) return false;
  const std::string m = j["mode"].get<std::string>();
  if (m == "exact") return true;
  if (m == "float64") return false;
  throw ParseError("unknown mode: " + m);
}

template <typename S>
json context_to_json(const SpaceContext<S>& ctx) {
  json j;
  j["dim"] = ctx.dim();
  j["mode"] = mode_name(is_exact_v<S>);
  j["tolerance"] = ctx.tolerance();
  if (ctx.phi().is_identity()) j["phi"] = "identity";
  else j["phi"] = matrix_to_json<S>(ctx.phi());
  return j;
}

template <typename S>
SpaceContext<S> context_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim")) throw ParseError("context needs \"dim\"");
  const int dim = j["dim"].get<int>();
  const double tol = j.contains("tolerance") ? j["tolerance"].get<double>() : kDefaultTolerance;
  if (!j.contains("phi") || (j["phi"].is_string() && j["phi"] == "identity"))
    return SpaceContext<S>::standard(dim, tol);
  return SpaceContext<S>(dim, matrix_from_json<S>(j["phi"]), tol);
}

// --- Tensors ----------------------------------------------------------------------

template <typename S>
json tensor_to_json(const CurvatureTensor<S>& r,
                    const CanonicalTerm<S>* provenance = nullptr) {
  const int n = r.dim();
  json entries = json::array();
  for (int x = 0; x < n; ++x) {
    json jx = json::array();
    for (int y = 0; y < n; ++y) {
      json jy = json::array();
      for (int z = 0; z < n; ++z) {
        json jz = json::array();
        for (int w = 0; w < n; ++w) jz.push_back(scalar_to_json<S>(r.at(x, y, z, w)));
        jy.push_back(std::move(jz));
      }
      jx.push_back(std::move(jy));
    }
    entries.push_back(std::move(jx));
  }
  json j;
  j["dim"] = n;
  j["entries"] = std::move(entries);
  if (provenance) {
    json c;
    c["build"] = build_name(provenance->build);
    c["operator"] = operator_to_json<S>(provenance->op);
    if (provenance->sign != 1) c["sign"] = provenance->sign;
    if (provenance->scale != 1) c["scale"] = scalar_to_json<Rational>(provenance->scale);
    j["canonical"] = std::move(c);
  }
  return j;
}

template <typename S>
CurvatureTensor<S> tensor_from_json(const json& j, const SpaceContext<S>* ctx = nullptr) {
  if (!j.is_object() || !j.contains("dim")) throw ParseError("tensor needs \"dim\"");
  const int n = j["dim"].get<int>();
  if (n < 1) throw ParseError("tensor dim must be positive");
  if (j.contains("entries")) {
    const json& e = j["entries"];
    CurvatureTensor<S> r(n);
    auto level = [n](const json& v) {
      if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw ParseError("tensor entries must be a dim^4 nested array");
      return &v;
    };
    level(e);
    for (int x = 0; x < n; ++x) {
      level(e[x]);
      for (int y = 0; y < n; ++y) {
        level(e[x][y]);
        for (int z = 0; z < n; ++z) {
          level(e[x][y][z]);
          for (int w = 0; w < n; ++w) r.at(x, y, z, w) = scalar_from_json<S>(e[x][y][z][w]);
        }
      }
    }
    return r;
  }
  if (j.contains("canonical")) {
    const json& c = j["canonical"];
    if (!c.is_object() || !c.contains("build") || !c.contains("operator"))
      throw ParseError("canonical block needs \"build\" and \"operator\"");
    const auto b = build_from_name(c["build"].get<std::string>());
    if (!b) throw ParseError("unknown build: " + c["build"].get<std::string>());
    const auto op = operator_from_json<S>(c["operator"]);
    if (op.mat.rows() != n) throw ParseError("canonical operator dimension mismatch");
    const int sign = c.contains("sign") ? c["sign"].get<int>() : 1;
    const Rational scale =
        c.contains("scale") ? scalar_from_json<Rational>(c["scale"]) : Rational(1);
    const SpaceContext<S> local = ctx ? *ctx : SpaceContext<S>::standard(n);
    if (ctx && ctx->dim() != n) throw ParseError("tensor dimension does not match context");
    return build_term(local, CanonicalTerm<S>(*b, sign, op, scale, /*raw=*/true));
  }
  throw ParseError("tensor needs \"entries\" or a \"canonical\" block");
}

// --- Canonical terms and decompositions --------------------------------------------

template <typename S>
json term_to_json(const CanonicalTerm<S>& t) {
  json j;
  j["build"] = build_name(t.build);
  j["sign"] = t.sign;
  j["op"] = operator_to_json<S>(t.op);
  if (t.scale != 1) j["scale"] = scalar_to_json<Rational>(t.scale);
  if (t.op.kind != canonical_operator_kind(t.build)) j["raw"] = true;
  return j;
}

template <typename S>
CanonicalTerm<S> term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("build") || !j.contains("op"))
    throw ParseError("term needs \"build\" and \"op\"");
  const auto b = build_from_name(j["build"].get<std::string>());
  if (!b) throw ParseError("unknown build: " + j["build"].get<std::string>());
  const int sign = j.contains("sign") ? j["sign"].get<int>() : 1;
  if (sign != 1 && sign != -1) throw ParseError("sign must be +1 or -1");
  const auto op = operator_from_json<S>(j["op"]);
  const Rational scale =
      j.contains("scale") ? scalar_from_json<Rational>(j["scale"]) : Rational(1);
  const bool raw = j.contains("raw") && j["raw"].get<bool>();
  return CanonicalTerm<S>(*b, sign, op, scale, raw);
}

template <typename S>
json decomposition_to_json(const Decomposition<S>& d) {
  json j;
  if (d.canonical_target) j["target"] = term_to_json<S>(*d.canonical_target);
  else if (d.target) j["target"] = tensor_to_json<S>(*d.target);
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back(term_to_json<S>(t));
  j["terms"] = std::move(terms);
  return j;
}

template <typename S>
Decomposition<S> decomposition_from_json(const json& j, const SpaceContext<S>* ctx = nullptr) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("decomposition needs a \"terms\" list");
  Decomposition<S> d;
  if (j.contains("target")) {
    const json& t = j["target"];
    if (t.is_object() && t.contains("build") && t.contains("op"))
      d.canonical_target = term_from_json<S>(t);
    else
      d.target = tensor_from_json<S>(t, ctx);
  }
  for (const json& t : j["terms"]) d.terms.push_back(term_from_json<S>(t));
  return d;
}

// A dependence input entry: an inline canonical term, an inline tensor, or a
// string naming a JSON file (resolved against base_dir) holding either.
template <typename S>
CurvatureTensor<S> tensor_entry_from_json(const SpaceContext<S>& ctx, const json& j,
                                          const std::string& base_dir) {
  if (j.is_string()) {
    std::string path = j.get<std::string>();
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    return tensor_entry_from_json<S>(ctx, load_json_file(path), base_dir);
  }
  if (j.is_object() && j.contains("build") && j.contains("op"))
    return build_term(ctx, term_from_json<S>(j));
  return tensor_from_json<S>(j, &ctx);
}

// A structure-group form: an operator object, a bare nested array read as the
// form matrix, or {"form": [[...]]}.
template <typename S>
FormView<S> form_view_from_json(const SpaceContext<S>& ctx, const json& j) {
  if (j.is_array()) return form_from_matrix(ctx, matrix_from_json<S>(j));
  if (j.is_object() && j.contains("form"))
    return form_from_matrix(ctx, matrix_from_json<S>(j["form"]));
  if (j.is_object() && j.contains("kind")) return FormView<S>(ctx, operator_from_json<S>(j));
  throw ParseError("expected an operator, a form matrix, or {\"form\": [[...]]}");
}

// --- Reports -----------------------------------------------------------------------

inline json axiom_report_to_json(const AxiomReport& r) {
  json j;
  j["is_act"] = r.is_act;
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    ws.push_back(json{{"axiom", w.axiom},
                      {"quadruple", {w.quadruple[0], w.quadruple[1], w.quadruple[2], w.quadruple[3]}},
                      {"magnitude", w.magnitude}});
  }
  j["witnesses"] = std::move(ws);
  return j;
}

inline json deviation_to_json(const Deviation& d) {
  return json{{"exact", d.exact}, {"max_abs", d.max_abs}};
}

template <typename S>
json dependence_verdict_to_json(const DependenceVerdict<S>& v) {
  json j;
  j["independent"] = v.independent;
  j["nullity"] = v.nullity;
  if (v.coefficients) {
    json cs = json::array();
    for (const auto& c : *v.coefficients) cs.push_back(scalar_to_json<S>(c));
    j["coefficients"] = std::move(cs);
  }
  if (v.proper) j["proper"] = *v.proper;
  j["exact_certificate"] = v.exact_certificate;
  j["used_referee"] = v.used_referee;
  return j;
}

template <typename S>
json triple_theorem_report_to_json(const TripleTheoremReport<S>& r) {
  json j;
  j["triple"] = r.triple;
  j["operators_independent"] = r.operators_independent;
  j["tensors"] = dependence_verdict_to_json<S>(r.tensors);
  j["status"] = status_name(r.status);
  return j;
}

template <typename S>
json necessary_conditions_report_to_json(const NecessaryConditionsReport<S>& r) {
  json j;
  j["tensors"] = dependence_verdict_to_json<S>(r.tensors);
  j["gate_triggered"] = r.gate_triggered;
  j["commute"] = r.commute;
  j["commutator_norm"] = r.commutator_norm;
  j["rank_c"] = r.rank_c;
  j["conclusions_hold"] = r.conclusions_hold;
  return j;
}

template <typename S>
json exclusion_report_to_json(const ExclusionReport<S>& r) {
  return json{{"arm", r.arm},
              {"holds", r.holds},
              {"deviation_plus", r.deviation_plus},
              {"deviation_minus", r.deviation_minus}};
}

inline json pool_stats_to_json(const PoolStats& p) {
  return json{{"samples", p.samples},
              {"in_tensor_group", p.in_tensor_group},
              {"in_pm_group", p.in_pm_group},
              {"mismatches", p.mismatches}};
}

inline json structure_theorem_report_to_json(const StructureTheoremReport& r) {
  json j;
  j["dim"] = r.dim;
  j["tau_rank"] = r.tau_rank;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["pools"] = json{{"isometries", pool_stats_to_json(r.isometries)},
                    {"anti_isometries", pool_stats_to_json(r.anti_isometries)},
                    {"generic", pool_stats_to_json(r.generic)}};
  j["equivalence_holds"] = r.equivalence_holds;
  if (!r.equivalence_holds) {
    j["counterexample"] =
        json{{"pool", r.first_mismatch_pool}, {"index", r.first_mismatch_index}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline json conclusion_to_json(const Conclusion& c) {
  return json{{"name", c.name},
              {"status", conclusion_status_name(c.status)},
              {"deviation", c.deviation}};
}

inline json chain_theorem_report_to_json(const ChainTheoremReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["premise_residual"] = r.premise_residual;
  j["exact_sequence"] = r.exact_sequence;
  json cs = json::array();
  for (const auto& c : r.conclusions) cs.push_back(conclusion_to_json(c));
  j["conclusions"] = std::move(cs);
  j["all_hold"] = r.all_hold();
  return j;
}

inline json star_report_to_json(const StarReport& r) {
  json j = chain_theorem_report_to_json(r.base);
  j["theorem"] = r.base.theorem;
  j["direction"] = r.direction;
  json legs = json::array();
  for (const auto& leg : r.legs)
    legs.push_back(json{{"exact", leg.exact}, {"invertible", conclusion_to_json(leg.invertible)}});
  j["legs"] = std::move(legs);
  return j;
}

template <typename S>
json reduction_result_to_json(const ReductionResult<S>& r) {
  json j;
  j["reduced"] = decomposition_to_json<S>(r.reduced);
  j["map"] = matrix_to_json<S>(r.map);
  j["residual"] = r.residual;
  return j;
}

template <typename S>
json decomposition_report_to_json(const DecompositionReport<S>& r) {
  json j;
  j["family"] = family_name(r.family);
  j["k"] = r.k;
  j["residual"] = r.residual;
  j["exact_residual_zero"] = r.exact_residual_zero;
  j["bound_kind"] = bound_kind_name(r.bound_kind);
  j["search_hit"] = r.search_hit;
  j["constructive_fallback"] = r.constructive_fallback;
  j["restarts"] = r.restarts;
  j["seed"] = r.seed;
  // Cited reference bound for the symmetric term count at this dimension.
  j["reference"] = "nu(n) <= n(n+1)/2 = " + std::to_string(r.reference_upper_bound);
  j["decomposition"] = decomposition_to_json<S>(r.best);
  return j;
}

inline json conjecture_report_to_json(const ConjectureReport& r) {
  json j;
  j["dim"] = r.dim;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["nu_hats"] = r.nu_hats;
  j["mu_hats"] = r.mu_hats;
  json hist = json::object();
  for (const auto& [gap, count] : r.gap_histogram) hist[std::to_string(gap)] = count;
  j["gap_histogram"] = std::move(hist);
  json ws = json::array();
  for (const auto& w : r.witnesses)
    ws.push_back(json{{"trial", w.trial},
                      {"target_seed", w.target_seed},
                      {"nu_hat", w.nu_hat},
                      {"mu_hat", w.mu_hat}});
  j["witnesses"] = std::move(ws);
  return j;
}

}  // namespace curv::io

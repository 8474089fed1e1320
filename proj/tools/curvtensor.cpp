// curvtensor: command-line front end for the curvature-tensor library.
// Every run prints one JSON report (stdout or --out) whose bytes depend only
// on the input files, seed, mode, tolerance, and tool version. Wall time and
// the human summary go to stderr so reruns stay byte-identical.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvtensor/campaigns.hpp"
#include "curvtensor/chain_reduce.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/decompose.hpp"
#include "curvtensor/dependence.hpp"
#include "curvtensor/digest.hpp"
#include "curvtensor/json_io.hpp"
#include "curvtensor/structure_group.hpp"
#include "curvtensor/version.hpp"

namespace {

using curv::io::json;
namespace fs = std::filesystem;

struct Globals {
  std::string mode = "float64";
  bool mode_set = false;
  double tolerance = curv::kDefaultTolerance;
  bool tolerance_set = false;
  std::uint64_t seed = 1;
  bool quiet = false;
  std::string out;
};

// One run = one report. Inputs are remembered in load order; their digests
// form the manifest, so the manifest pins everything the report depends on.
struct Run {
  const Globals& g;
  std::string sub;
  bool exact = false;
  double tol = curv::kDefaultTolerance;
  std::vector<std::pair<std::string, std::string>> inputs;  // flag -> path
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Run(const Globals& globals, std::string name) : g(globals), sub(std::move(name)) {
    tol = g.tolerance;
  }

  json load(const std::string& flag, const std::string& path) {
    json j;
    try {
      j = curv::io::load_json_file(path);
    } catch (const json::exception& e) {
      throw curv::ParseError("bad JSON in " + path + ": " + e.what());
    }
    inputs.emplace_back(flag, path);
    return j;
  }

  // Mode and tolerance: explicit flags win, then the context file, then the
  // float64/1e-9 defaults.
  void resolve(const json* ctxj) {
    if (g.mode_set) exact = g.mode == "exact";
    else if (ctxj) exact = curv::io::context_json_is_exact(*ctxj);
    if (g.tolerance_set) tol = g.tolerance;
    else if (ctxj && ctxj->is_object() && ctxj->contains("tolerance"))
      tol = (*ctxj)["tolerance"].get<double>();
  }

  json manifest() const {
    json ins = json::object();
    for (const auto& [flag, path] : inputs)
      ins[flag] = json{{"path", path}, {"digest", curv::file_digest(path)}};
    json m;
    m["tool"] = curv::kToolName;
    m["version"] = curv::kVersion;
    m["subcommand"] = sub;
    m["mode"] = curv::io::mode_name(exact);
    m["tolerance"] = tol;
    m["seed"] = g.seed;
    m["inputs"] = std::move(ins);
    return m;
  }

  int emit(json body, const std::string& human, int code = 0) {
    json rep;
    rep["manifest"] = manifest();
    for (auto& [k, v] : body.items()) rep[k] = std::move(v);
    const std::string text = rep.dump(2) + "\n";
    if (g.out.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      std::ofstream f(g.out, std::ios::binary);
      if (!f) throw curv::ParseError("cannot write " + g.out);
      f << text;
    }
    if (!g.quiet) {
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      std::fprintf(stderr, "%s: %s (%.1f ms)\n", sub.c_str(), human.c_str(), ms);
    }
    return code;
  }

  int error(int code, const std::string& msg) {
    return emit(json{{"error", msg}}, "error: " + msg, code);
  }
};

// Exit-code contract: 0 report delivered, 2 hypothesis/premise/precondition
// unmet (still reported), 1 malformed input, 64 usage, 70 internal failure.
template <typename F>
int guarded(Run& run, F&& f) {
  try {
    return f();
  } catch (const curv::HypothesisError& e) {
    return run.error(2, e.what());
  } catch (const curv::PremiseError& e) {
    return run.error(2, e.what());
  } catch (const curv::KernelError& e) {
    return run.error(2, e.what());
  } catch (const curv::DomainError& e) {
    return run.error(2, e.what());
  } catch (const curv::ConstraintError& e) {
    return run.error(2, e.what());
  } catch (const curv::SamplingError& e) {
    return run.error(2, e.what());
  } catch (const curv::ParseError& e) {
    return run.error(1, e.what());
  } catch (const curv::ContextError& e) {
    return run.error(1, e.what());
  } catch (const json::exception& e) {
    return run.error(1, e.what());
  } catch (const std::exception& e) {
    return run.error(70, e.what());
  }
}

// Dimension of the space an input lives in, without committing to a scalar
// type yet. Strings are file references resolved against the referring file.
int infer_dim(const json& j, const fs::path& base) {
  if (j.is_string()) {
    fs::path p(j.get<std::string>());
    if (p.is_relative()) p = base / p;
    return infer_dim(curv::io::load_json_file(p.string()), p.parent_path());
  }
  if (j.is_array() && !j.empty()) {
    if (j[0].is_array()) return static_cast<int>(j.size());  // bare matrix
    if (j[0].is_object() || j[0].is_string()) return infer_dim(j[0], base);
  }
  if (j.is_object()) {
    if (j.contains("dim")) return j["dim"].get<int>();
    if (j.contains("matrix")) return static_cast<int>(j["matrix"].size());
    if (j.contains("form")) return static_cast<int>(j["form"].size());
    if (j.contains("op")) return infer_dim(j["op"], base);
    if (j.contains("operator")) return infer_dim(j["operator"], base);
    if (j.contains("terms")) return infer_dim(j["terms"], base);
    if (j.contains("target")) return infer_dim(j["target"], base);
  }
  throw curv::ParseError("cannot infer the dimension from the input");
}

template <typename S>
curv::SpaceContext<S> make_ctx(const Run& run, const json* ctxj, int dim) {
  if (ctxj) {
    auto c = curv::io::context_from_json<S>(*ctxj);
    return curv::SpaceContext<S>(c.dim(), c.phi(), run.tol);
  }
  if (dim <= 0) throw curv::ParseError("cannot infer the dimension from the input");
  return curv::SpaceContext<S>::standard(dim, run.tol);
}

std::vector<int> parse_signs(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok == "+" || tok == "+1" || tok == "1") out.push_back(1);
    else if (tok == "-" || tok == "-1") out.push_back(-1);
    else throw curv::ParseError("bad sign token: '" + tok + "'");
  }
  if (out.empty()) throw curv::ParseError("empty sign list");
  return out;
}

// Operator list file: a bare array or {"ops": [...]}, entries either inline
// operator objects or path strings.
template <typename S>
std::vector<curv::Operator<S>> operators_from_list(const json& j, const fs::path& base) {
  const json& arr = j.is_object() && j.contains("ops") ? j["ops"] : j;
  if (!arr.is_array() || arr.empty()) throw curv::ParseError("expected a nonempty operator list");
  std::vector<curv::Operator<S>> out;
  for (const json& e : arr) {
    if (e.is_string()) {
      fs::path p(e.get<std::string>());
      if (p.is_relative()) p = base / p;
      out.push_back(curv::io::operator_from_json<S>(curv::io::load_json_file(p.string())));
    } else {
      out.push_back(curv::io::operator_from_json<S>(e));
    }
  }
  return out;
}

json campaign_to_json(const curv::fuzz::CampaignResult& c) {
  json j;
  j["name"] = c.name;
  j["trials"] = c.trials;
  j["failures"] = c.failures;
  j["ok"] = c.ok();
  j["worst"] = c.worst;
  if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
  return j;
}

// --- build / check ------------------------------------------------------------

struct BuildArgs {
  std::string op_path, ctx_path, build = "", scale = "1";
  int sign = 1;
  bool raw = false;
};

template <typename S>
int run_build(Run& run, const BuildArgs& a, const json& opj, const json* ctxj) {
  const auto op = curv::io::operator_from_json<S>(opj);
  const auto ctx = make_ctx<S>(run, ctxj, op.mat.rows());
  curv::BuildKind bk;
  if (!a.build.empty()) {
    const auto parsed = curv::io::build_from_name(a.build);
    if (!parsed) throw curv::ParseError("unknown build: " + a.build);
    bk = *parsed;
  } else if (op.kind == curv::OperatorKind::General) {
    throw curv::ParseError("a general operator needs an explicit --build");
  } else {
    bk = curv::build_for_kind(op.kind);
  }
  const curv::CanonicalTerm<S> term(bk, a.sign, op, curv::parse_rational(a.scale), a.raw);
  const auto r = curv::build_term(ctx, term);
  const auto axioms = curv::is_act(ctx, r);

  json body;
  body["context"] = curv::io::context_to_json<S>(ctx);
  body["tensor"] = curv::io::tensor_to_json<S>(r, &term);
  body["axioms"] = curv::io::axiom_report_to_json(axioms);
  const std::string human = "R^" + curv::build_name(bk) + " of a " + curv::kind_name(op.kind) +
                            " operator, dim " + std::to_string(ctx.dim()) +
                            (axioms.is_act ? ", is_act" : ", NOT an algebraic curvature tensor");
  return run.emit(std::move(body), human);
}

struct CheckArgs {
  std::string op_path, tensor_path, ctx_path, build = "";
};

template <typename S>
int run_check(Run& run, const CheckArgs& a, const json& inj, bool is_tensor, const json* ctxj,
              const fs::path& base) {
  curv::AxiomReport rep;
  int dim = infer_dim(inj, base);
  const auto ctx = make_ctx<S>(run, ctxj, dim);
  if (is_tensor) {
    const auto r = curv::io::tensor_entry_from_json<S>(ctx, inj, base.string());
    rep = curv::is_act(ctx, r);
  } else {
    const auto op = curv::io::operator_from_json<S>(inj);
    curv::BuildKind bk;
    if (!a.build.empty()) {
      const auto parsed = curv::io::build_from_name(a.build);
      if (!parsed) throw curv::ParseError("unknown build: " + a.build);
      bk = *parsed;
    } else if (op.kind == curv::OperatorKind::General) {
      throw curv::ParseError("a general operator needs an explicit --build");
    } else {
      bk = curv::build_for_kind(op.kind);
    }
    rep = curv::is_act(ctx, curv::build(ctx, bk, op.mat));
  }
  json body = curv::io::axiom_report_to_json(rep);
  return run.emit(std::move(body), rep.is_act ? "is_act" : "not an algebraic curvature tensor");
}

// --- identity -------------------------------------------------------------------

template <typename S>
int run_identity(Run& run, const json& opj, const json* ctxj) {
  const auto op = curv::io::operator_from_json<S>(opj);
  const auto ctx = make_ctx<S>(run, ctxj, op.mat.rows());
  json body;
  body["operator_kind"] = curv::kind_name(op.kind);
  body["builds_relation"] =
      curv::io::deviation_to_json(curv::builds_relation_deviation(ctx, op.mat));
  if (op.kind == curv::OperatorKind::SkewAdjoint) {
    const auto dev = curv::skew_build_identity_deviation(ctx, op);
    body["skew_identity"] = curv::io::deviation_to_json(dev);
    return run.emit(std::move(body),
                    dev.exact ? "skew identity exact" : "skew identity max |dev| = " +
                                                            std::to_string(dev.max_abs));
  }
  body["skew_identity"] = nullptr;
  return run.emit(std::move(body), "builds relation checked");
}

// --- structgroup ----------------------------------------------------------------

template <typename S>
int run_structgroup(Run& run, const json& tauj, const json* ctxj, long trials,
                    const fs::path& base) {
  const auto ctx = make_ctx<S>(run, ctxj, infer_dim(tauj, base));
  const auto tau = curv::io::form_view_from_json<S>(ctx, tauj);
  const auto rep = curv::verify_structure_theorem(ctx, tau, trials, run.g.seed);
  json body = curv::io::structure_theorem_report_to_json(rep);
  const long total =
      rep.isometries.samples + rep.anti_isometries.samples + rep.generic.samples;
  return run.emit(std::move(body),
                  rep.equivalence_holds
                      ? "equivalence held on " + std::to_string(total) + " samples"
                      : "counterexample found");
}

// --- depend -----------------------------------------------------------------------

template <typename S>
int run_depend(Run& run, const json& termsj, const json* ctxj, bool check_proper,
               const fs::path& base) {
  const json& arr = termsj.is_object() && termsj.contains("terms") ? termsj["terms"] : termsj;
  if (!arr.is_array() || arr.empty()) throw curv::ParseError("expected a nonempty term list");
  const auto ctx = make_ctx<S>(run, ctxj, infer_dim(arr, base));
  std::vector<curv::CurvatureTensor<S>> tensors;
  for (const json& e : arr)
    tensors.push_back(curv::io::tensor_entry_from_json<S>(ctx, e, base.string()));
  const auto verdict = curv::dependence(ctx, tensors, check_proper);
  json body;
  body["count"] = tensors.size();
  body.update(curv::io::dependence_verdict_to_json<S>(verdict));
  std::string human = verdict.independent ? "independent" : "dependent, nullity " +
                                                                std::to_string(verdict.nullity);
  if (verdict.proper && *verdict.proper) human += ", proper";
  return run.emit(std::move(body), human);
}

// --- chain ------------------------------------------------------------------------

struct ChainArgs {
  std::string ops_path, signs, ctx_path;
  bool star = false;
};

template <typename S>
int run_chain(Run& run, const ChainArgs& a, const json& opsj, const json* ctxj,
              const fs::path& base) {
  const auto ops = operators_from_list<S>(opsj, base);
  const auto ctx = make_ctx<S>(run, ctxj, ops[0].mat.rows());

  if (a.star) {
    if (ops.size() < 2) throw curv::ParseError("star needs a hub and at least one leg");
    std::vector<curv::Operator<S>> legs(ops.begin() + 1, ops.end());
    std::vector<int> signs = parse_signs(a.signs);
    // Accept either one sign per leg or one per operator (hub first).
    if (signs.size() == ops.size()) {
      const int lead = signs[0];
      signs.erase(signs.begin());
      for (int& s : signs) s *= lead;
    }
    if (signs.size() != legs.size())
      throw curv::ParseError("expected one sign per leg");
    const auto rep = curv::analyze_star(ctx, ops[0], legs, signs);
    json body = curv::io::star_report_to_json(rep);
    return run.emit(std::move(body), rep.base.all_hold() ? "star: all conclusions hold"
                                                         : "star: conclusion FAILED");
  }

  // Premise first: a list that is not a complex is reported as such even if
  // the sign list is unusable for the sum.
  std::vector<curv::Matrix<S>> mats;
  for (const auto& op : ops) mats.push_back(op.mat);
  if (!curv::is_chain(ctx, mats).ok) throw curv::PremiseError("not_a_chain");

  std::vector<int> signs = parse_signs(a.signs);
  if (signs.size() != ops.size())
    throw curv::ParseError("expected one sign per operator");
  // The premise sums the signed builds to zero; a global sign flip does not
  // change it, so normalize the leading sign to +.
  if (signs[0] == -1)
    for (int& s : signs) s = -s;

  curv::ChainTheoremReport rep;
  if (ops.size() == 3)
    rep = curv::analyze_three_chain(ctx, ops[0], ops[1], ops[2], signs[1], signs[2]);
  else if (ops.size() == 4)
    rep = curv::analyze_four_chain(ctx, ops[0], ops[1], ops[2], ops[3], signs[1], signs[2],
                                   signs[3]);
  else
    throw curv::ParseError("chain analysis covers 3 or 4 operators (use --star otherwise)");
  json body = curv::io::chain_theorem_report_to_json(rep);
  return run.emit(std::move(body), rep.theorem + ": " + (rep.all_hold()
                                                             ? "all conclusions hold"
                                                             : "conclusion FAILED"));
}

// --- reduce -----------------------------------------------------------------------

struct ReduceArgs {
  std::string decomp_path, map_path, ctx_path;
  int pivot = 0;
  bool preserve_target = false;
};

template <typename S>
int run_reduce(Run& run, const ReduceArgs& a, const json& dj, const json* mapj, const json* ctxj,
               const fs::path& base) {
  const auto ctx = make_ctx<S>(run, ctxj, infer_dim(dj, base));
  const auto decomp = curv::io::decomposition_from_json<S>(dj, &ctx);
  std::optional<curv::Matrix<S>> map;
  if (mapj) map = curv::io::matrix_from_json<S>(*mapj);
  const auto result = a.preserve_target
                          ? curv::reduce_preserving_target(ctx, decomp, a.pivot, map)
                          : curv::reduce_by_kernel(ctx, decomp, a.pivot, map);
  json body = curv::io::reduction_result_to_json<S>(result);
  return run.emit(std::move(body),
                  std::to_string(decomp.terms.size()) + " -> " +
                      std::to_string(result.reduced.terms.size()) + " terms, residual " +
                      std::to_string(result.residual));
}

// --- decompose ----------------------------------------------------------------------

struct DecomposeArgs {
  std::string tensor_path, ctx_path, family = "sym";
  int kmax = 4;
  long budget = 24;
  bool constructive = false;
  bool conjecture = false;
  long trials = 10;
  int dim = 0;
};

template <typename S>
int run_decompose(Run& run, const DecomposeArgs& a, const json* rj, const json* ctxj,
                  const fs::path& base) {
  const auto family = curv::family_from_name(a.family);
  if (!family) throw curv::ParseError("unknown family: " + a.family);

  if (a.conjecture) {
    const int dim = ctxj ? infer_dim(*ctxj, base) : a.dim;
    const auto ctx = make_ctx<S>(run, ctxj, dim);
    const auto rep =
        curv::conjecture_campaign<S>(ctx, a.trials, run.g.seed, a.kmax, a.budget);
    json body = curv::io::conjecture_report_to_json(rep);
    return run.emit(std::move(body),
                    std::to_string(rep.trials) + " targets, " +
                        std::to_string(rep.witnesses.size()) + " gap witnesses");
  }

  if (!rj) throw curv::ParseError("--tensor is required unless --conjecture is given");
  const auto ctx = make_ctx<S>(run, ctxj, infer_dim(*rj, base));
  const auto target = curv::io::tensor_entry_from_json<S>(ctx, *rj, base.string());

  if (a.constructive) {
    const auto d = curv::constructive_decomposition(ctx, target, *family, run.g.seed);
    const auto sum = curv::decomposition_sum(ctx, d);
    const auto dev = curv::deviation_between(sum, target);
    json body;
    body["family"] = curv::family_name(*family);
    body["k"] = d.terms.size();
    body["residual"] = dev.max_abs;
    body["exact_residual_zero"] = dev.exact;
    body["decomposition"] = curv::io::decomposition_to_json<S>(d);
    return run.emit(std::move(body),
                    "constructive, k = " + std::to_string(d.terms.size()));
  }

  const auto rep = curv::minimal_search(ctx, target, *family, a.kmax, a.budget, run.g.seed);
  json body = curv::io::decomposition_report_to_json<S>(rep);
  return run.emit(std::move(body), "k = " + std::to_string(rep.k) + " (" +
                                       curv::bound_kind_name(rep.bound_kind) + "), residual " +
                                       std::to_string(rep.residual));
}

// --- fuzz --------------------------------------------------------------------------

struct FuzzArgs {
  std::string campaign = "all";
  long trials = 50;
  std::vector<int> dims;
};

template <typename S>
std::vector<curv::fuzz::CampaignResult> run_campaigns(const FuzzArgs& a, std::uint64_t seed) {
  using namespace curv::fuzz;
  const bool all = a.campaign == "all";
  std::vector<curv::fuzz::CampaignResult> out;
  auto dims_or = [&](std::vector<int> def) { return a.dims.empty() ? def : a.dims; };
  auto want = [&](const char* name) { return all || a.campaign == name; };

  if (want("axioms"))
    for (int n : dims_or({2, 3, 4, 5, 6})) out.push_back(axiom_campaign<S>(n, a.trials, seed + n));
  if (want("skew-identity"))
    out.push_back(skew_identity_campaign<S>(dims_or({2, 3, 4, 5, 6}), a.trials, seed));
  if (want("precompose"))
    for (int n : dims_or({2, 3, 4, 5})) out.push_back(precompose_campaign<S>(n, a.trials, seed + n));
  if (want("dimension"))
    for (int n : dims_or({3, 4})) out.push_back(dimension_campaign(n, a.trials, seed + n));
  if (want("structure")) out.push_back(structure_campaign<S>(a.trials, seed));
  if (want("triple-ssl")) out.push_back(triple_ssl_campaign<S>(dims_or({4, 5}), a.trials, seed));
  if (want("triple-sll"))
    out.push_back(triple_sll_campaign<S>(dims_or({3, 4, 5}), a.trials, seed));
  if (want("necessary-conditions"))
    out.push_back(necessary_conditions_campaign<S>(a.trials, seed));
  if (want("exclusions")) out.push_back(exclusion_campaign<S>(a.trials, seed));
  if (want("three-chain")) out.push_back(three_chain_campaign<S>(a.trials, seed));
  if (want("star")) out.push_back(star_campaign<S>(a.trials, seed));
  if (want("four-chain")) out.push_back(four_chain_campaign<S>(a.trials, seed));
  if (want("rank-power")) out.push_back(rank_power_campaign(a.trials, seed));
  if (want("reduction")) out.push_back(reduction_campaign<S>(a.trials, seed));
  if (out.empty()) throw curv::ParseError("unknown campaign: " + a.campaign);
  return out;
}

template <typename S>
int run_fuzz(Run& run, const FuzzArgs& a) {
  const auto results = run_campaigns<S>(a, run.g.seed);
  bool ok = true;
  long failures = 0;
  json rows = json::array();
  for (const auto& r : results) {
    ok = ok && r.ok();
    failures += r.failures;
    rows.push_back(campaign_to_json(r));
  }
  json body;
  body["ok"] = ok;
  body["results"] = std::move(rows);
  return run.emit(std::move(body), std::to_string(results.size()) + " campaigns, " +
                                       std::to_string(failures) + " failures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic curvature tensor toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* mode_opt = app.add_option("--mode", g.mode, "arithmetic: exact or float64")
                       ->check(CLI::IsMember({"exact", "float64"}));
  auto* tol_opt = app.add_option("--tolerance", g.tolerance, "float-mode comparison tolerance");
  app.add_option("--seed", g.seed, "seed for all randomized sampling");
  app.add_flag("--quiet", g.quiet, "suppress the stderr summary");
  app.add_option("--out", g.out, "write the JSON report to a file instead of stdout");

  BuildArgs build_a;
  auto* sub_build = app.add_subcommand("build", "build a canonical curvature tensor");
  sub_build->add_option("--op", build_a.op_path, "operator JSON file")->required();
  sub_build->add_option("--build", build_a.build, "S or Lambda (default: by operator kind)");
  sub_build->add_option("--sign", build_a.sign, "term sign, +1 or -1");
  sub_build->add_option("--scale", build_a.scale, "positive rational scale, e.g. 3/2");
  sub_build->add_flag("--raw", build_a.raw, "allow a non-canonical kind/build pairing");
  sub_build->add_option("--context", build_a.ctx_path, "context JSON file");

  CheckArgs check_a;
  auto* sub_check = app.add_subcommand("check", "check the curvature axioms");
  sub_check->add_option("--op", check_a.op_path, "operator JSON file (build then check)");
  sub_check->add_option("--tensor", check_a.tensor_path, "tensor JSON file");
  sub_check->add_option("--build", check_a.build, "S or Lambda (with --op)");
  sub_check->add_option("--context", check_a.ctx_path, "context JSON file");

  std::string identity_op, identity_ctx;
  auto* sub_identity = app.add_subcommand("identity", "verify the build identities");
  sub_identity->add_option("--op", identity_op, "operator JSON file")->required();
  sub_identity->add_option("--context", identity_ctx, "context JSON file");

  std::string sg_tau, sg_ctx;
  long sg_trials = 200;
  auto* sub_sg = app.add_subcommand("structgroup", "sample the structure-group equivalence");
  sub_sg->add_option("--tau", sg_tau, "anti-symmetric form JSON file")->required();
  sub_sg->add_option("--trials", sg_trials, "samples per pool");
  sub_sg->add_option("--context", sg_ctx, "context JSON file");

  std::string dep_terms, dep_ctx;
  bool dep_no_proper = false;
  auto* sub_dep = app.add_subcommand("depend", "linear dependence of curvature tensors");
  sub_dep->add_option("--terms", dep_terms, "term/tensor list JSON file")->required();
  sub_dep->add_flag("--no-proper", dep_no_proper, "skip the proper-subset scan");
  sub_dep->add_option("--context", dep_ctx, "context JSON file");

  ChainArgs chain_a;
  auto* sub_chain = app.add_subcommand("chain", "chain-complex theorems");
  sub_chain->add_option("--ops", chain_a.ops_path, "operator list JSON file")->required();
  sub_chain->add_option("--signs", chain_a.signs, "signed sum, e.g. \"+,-,+\"")->required();
  sub_chain->add_flag("--star", chain_a.star, "first operator is the hub of a star");
  sub_chain->add_option("--context", chain_a.ctx_path, "context JSON file");

  ReduceArgs red_a;
  auto* sub_red = app.add_subcommand("reduce", "kernel reduction of a decomposition");
  sub_red->add_option("--decomp", red_a.decomp_path, "decomposition JSON file")->required();
  sub_red->add_option("--pivot", red_a.pivot, "index of the term to annihilate")->required();
  sub_red->add_option("--map", red_a.map_path, "matrix JSON file (default: kernel projection)");
  sub_red->add_flag("--preserve-target", red_a.preserve_target,
                    "require the canonical target to be fixed");
  sub_red->add_option("--context", red_a.ctx_path, "context JSON file");

  DecomposeArgs dec_a;
  auto* sub_dec = app.add_subcommand("decompose", "minimal canonical decompositions");
  sub_dec->add_option("--tensor", dec_a.tensor_path, "target tensor JSON file");
  sub_dec->add_option("--family", dec_a.family, "sym, skew, or mixed");
  sub_dec->add_option("--kmax", dec_a.kmax, "largest term count to try");
  sub_dec->add_option("--budget", dec_a.budget, "search restarts per term count");
  sub_dec->add_flag("--constructive", dec_a.constructive, "skip the search; spanning-set route");
  sub_dec->add_flag("--conjecture", dec_a.conjecture, "random-target campaign");
  sub_dec->add_option("--trials", dec_a.trials, "targets for --conjecture");
  sub_dec->add_option("--dim", dec_a.dim, "dimension for --conjecture");
  sub_dec->add_option("--context", dec_a.ctx_path, "context JSON file");

  FuzzArgs fuzz_a;
  auto* sub_fuzz = app.add_subcommand("fuzz", "randomized property campaigns");
  sub_fuzz->add_option("--campaign", fuzz_a.campaign, "campaign name or \"all\"");
  sub_fuzz->add_option("--trials", fuzz_a.trials, "trials per campaign");
  sub_fuzz->add_option("--dims", fuzz_a.dims, "dimensions to cover")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }
  g.mode_set = mode_opt->count() > 0;
  g.tolerance_set = tol_opt->count() > 0;

  using curv::Rational;
  auto base_of = [](const std::string& p) { return fs::path(p).parent_path(); };

  if (app.got_subcommand(sub_build)) {
    Run run(g, "build");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!build_a.ctx_path.empty()) ctxj = run.load("context", build_a.ctx_path);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json opj = run.load("op", build_a.op_path);
      return run.exact ? run_build<Rational>(run, build_a, opj, ctxj ? &*ctxj : nullptr)
                       : run_build<double>(run, build_a, opj, ctxj ? &*ctxj : nullptr);
    });
  }
  if (app.got_subcommand(sub_check)) {
    Run run(g, "check");
    return guarded(run, [&] {
      if (check_a.op_path.empty() == check_a.tensor_path.empty())
        throw curv::ParseError("check needs exactly one of --op or --tensor");
      std::optional<json> ctxj;
      if (!check_a.ctx_path.empty()) ctxj = run.load("context", check_a.ctx_path);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const bool is_tensor = !check_a.tensor_path.empty();
      const std::string path = is_tensor ? check_a.tensor_path : check_a.op_path;
      const json inj = run.load(is_tensor ? "tensor" : "op", path);
      return run.exact ? run_check<Rational>(run, check_a, inj, is_tensor,
                                             ctxj ? &*ctxj : nullptr, base_of(path))
                       : run_check<double>(run, check_a, inj, is_tensor,
                                           ctxj ? &*ctxj : nullptr, base_of(path));
    });
  }
  if (app.got_subcommand(sub_identity)) {
    Run run(g, "identity");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!identity_ctx.empty()) ctxj = run.load("context", identity_ctx);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json opj = run.load("op", identity_op);
      return run.exact ? run_identity<Rational>(run, opj, ctxj ? &*ctxj : nullptr)
                       : run_identity<double>(run, opj, ctxj ? &*ctxj : nullptr);
    });
  }
  if (app.got_subcommand(sub_sg)) {
    Run run(g, "structgroup");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!sg_ctx.empty()) ctxj = run.load("context", sg_ctx);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json tauj = run.load("tau", sg_tau);
      return run.exact ? run_structgroup<Rational>(run, tauj, ctxj ? &*ctxj : nullptr, sg_trials,
                                                   base_of(sg_tau))
                       : run_structgroup<double>(run, tauj, ctxj ? &*ctxj : nullptr, sg_trials,
                                                 base_of(sg_tau));
    });
  }
  if (app.got_subcommand(sub_dep)) {
    Run run(g, "depend");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!dep_ctx.empty()) ctxj = run.load("context", dep_ctx);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json termsj = run.load("terms", dep_terms);
      return run.exact ? run_depend<Rational>(run, termsj, ctxj ? &*ctxj : nullptr,
                                              !dep_no_proper, base_of(dep_terms))
                       : run_depend<double>(run, termsj, ctxj ? &*ctxj : nullptr, !dep_no_proper,
                                            base_of(dep_terms));
    });
  }
  if (app.got_subcommand(sub_chain)) {
    Run run(g, "chain");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!chain_a.ctx_path.empty()) ctxj = run.load("context", chain_a.ctx_path);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json opsj = run.load("ops", chain_a.ops_path);
      return run.exact ? run_chain<Rational>(run, chain_a, opsj, ctxj ? &*ctxj : nullptr,
                                             base_of(chain_a.ops_path))
                       : run_chain<double>(run, chain_a, opsj, ctxj ? &*ctxj : nullptr,
                                           base_of(chain_a.ops_path));
    });
  }
  if (app.got_subcommand(sub_red)) {
    Run run(g, "reduce");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!red_a.ctx_path.empty()) ctxj = run.load("context", red_a.ctx_path);
      run.resolve(ctxj ? &*ctxj : nullptr);
      const json dj = run.load("decomp", red_a.decomp_path);
      std::optional<json> mapj;
      if (!red_a.map_path.empty()) mapj = run.load("map", red_a.map_path);
      return run.exact ? run_reduce<Rational>(run, red_a, dj, mapj ? &*mapj : nullptr,
                                              ctxj ? &*ctxj : nullptr, base_of(red_a.decomp_path))
                       : run_reduce<double>(run, red_a, dj, mapj ? &*mapj : nullptr,
                                            ctxj ? &*ctxj : nullptr, base_of(red_a.decomp_path));
    });
  }
  if (app.got_subcommand(sub_dec)) {
    Run run(g, "decompose");
    return guarded(run, [&] {
      std::optional<json> ctxj;
      if (!dec_a.ctx_path.empty()) ctxj = run.load("context", dec_a.ctx_path);
      run.resolve(ctxj ? &*ctxj : nullptr);
      std::optional<json> rj;
      if (!dec_a.tensor_path.empty()) rj = run.load("tensor", dec_a.tensor_path);
      const fs::path base =
          dec_a.tensor_path.empty() ? fs::path() : base_of(dec_a.tensor_path);
      return run.exact ? run_decompose<Rational>(run, dec_a, rj ? &*rj : nullptr,
                                                 ctxj ? &*ctxj : nullptr, base)
                       : run_decompose<double>(run, dec_a, rj ? &*rj : nullptr,
                                               ctxj ? &*ctxj : nullptr, base);
    });
  }
  if (app.got_subcommand(sub_fuzz)) {
    Run run(g, "fuzz");
    return guarded(run, [&] {
      run.resolve(nullptr);
      return run.exact ? run_fuzz<Rational>(run, fuzz_a) : run_fuzz<double>(run, fuzz_a);
    });
  }
  return 64;
}

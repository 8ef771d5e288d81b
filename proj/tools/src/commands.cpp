#include "rwinv_app/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rwinv/error.hpp"
#include "rwinv/occupation.hpp"
#include "rwinv/reconstruct.hpp"
#include "rwinv/solvability.hpp"
#include "rwinv_app/io.hpp"

namespace rwinv::app {
namespace {

using nlohmann::json;

struct Common {
  std::string instance;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json manifest(const std::string& command, const Common& c, const Instance& inst, json flags) {
  json m;
  m["command"] = command;
  m["instance_path"] = c.instance;
  m["instance_hash"] = inst.hash;
  m["output_path"] = c.out.empty() ? "-" : c.out;
  m["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  m["flags"] = std::move(flags);
  return m;
}

void emit(const Context& ctx, const std::string& path, const std::string& contents) {
  if (path.empty()) {
    ctx.out << contents;
  } else {
    write_atomic(path, contents);
  }
}

std::string csv_preamble(const json& m) { return "# manifest " + m.dump() + "\n"; }

const Eigen::VectorXd& require_rho(const Instance& inst) {
  if (!inst.rho) throw Error(ErrorCode::InvalidInput, "instance is missing field \"rho\"");
  return *inst.rho;
}

std::uint64_t require_seed(const Common& c) {
  if (!c.seed) throw Error(ErrorCode::InvalidInput, "--seed is required for stochastic runs");
  return *c.seed;
}

bool wants_csv(const std::string& format, const std::string& path) {
  if (format == "csv") return true;
  if (format == "json") return false;
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

// ---------------------------------------------------------------- expect

struct ExpectArgs {
  Common common;
  std::string method = "fixedpoint";
  std::uint64_t walks = 0;
  unsigned workers = 1;
  std::string format = "auto";
};

int cmd_expect(const ExpectArgs& a, const Context& ctx) {
  const Instance inst = load_instance(a.common.instance);
  const WeightAssignment w = derived_weights(inst.graph, require_rho(inst));

  json flags{{"method", a.method}};
  OccupationVector tau;
  std::optional<Eigen::VectorXd> se;
  if (a.method == "green") {
    tau = expected_occupation_green(inst.graph, w, spectral_data(inst.graph, w));
  } else if (a.method == "fixedpoint") {
    tau = expected_occupation_fixed_point(inst.graph, w);
  } else {
    require_seed(a.common);
    if (a.walks == 0) throw Error(ErrorCode::InvalidInput, "--N is required for method montecarlo");
    flags["N"] = a.walks;
    const EmpiricalOccupation emp =
        empirical_occupation(inst.graph, w, {a.walks, *a.common.seed, a.workers, kDefaultStepLimit});
    tau = emp.mean;
    se = emp.standard_error;
  }
  const json m = manifest("expect", a.common, inst, flags);

  std::string body;
  if (wants_csv(a.format, a.common.out)) {
    body = csv_preamble(m) + (se ? "vertex,tau,se\n" : "vertex,tau\n");
    for (Eigen::Index v = 0; v < tau.values.size(); ++v) {
      body += std::to_string(v) + "," + number(tau.values[v]);
      if (se) body += "," + number((*se)[v]);
      body += "\n";
    }
  } else {
    json doc{{"manifest", m}, {"method", a.method}, {"tau", to_json(tau.values)}};
    if (se) {
      doc["standard_error"] = to_json(*se);
      doc["walks"] = a.walks;
    }
    body = doc.dump(2) + "\n";
  }
  emit(ctx, a.common.out, body);
  return kExitOk;
}

// -------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::uint64_t walks = 1;
  unsigned workers = 1;
  bool paths = false;
  std::uint64_t step_limit = kDefaultStepLimit;
};

int cmd_simulate(const SimulateArgs& a, const Context& ctx) {
  const Instance inst = load_instance(a.common.instance);
  const WeightAssignment w = derived_weights(inst.graph, require_rho(inst));
  const std::uint64_t seed = require_seed(a.common);
  if (a.walks == 0) throw Error(ErrorCode::InvalidInput, "--N must be positive");

  std::vector<WalkTrace> walks(a.walks);
  const unsigned workers = std::max(1u, std::min<unsigned>(a.workers, static_cast<unsigned>(a.walks)));
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::uint64_t k = t; k < a.walks; k += workers) {
            WalkRng rng(substream_seed(seed, k));
            walks[k] = simulate_walk(inst.graph, w, rng, a.step_limit);
          }
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  json list = json::array();
  for (const WalkTrace& walk : walks) {
    json item{{"steps", walk.vertices.size() - 1}, {"trace", walk.trace}};
    if (a.paths) item["vertices"] = walk.vertices;
    list.push_back(std::move(item));
  }
  json flags{{"N", a.walks}, {"paths", a.paths}};
  json doc{{"manifest", manifest("simulate", a.common, inst, flags)}, {"walks", std::move(list)}};
  emit(ctx, a.common.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ----------------------------------------------------------- reconstruct

struct ReconstructArgs {
  Common common;
  std::string tau;
  std::string log;
  int max_iters = ReconstructionConfig{}.max_iters;
  double cost_tol = ReconstructionConfig{}.cost_tol;
  double eta = ReconstructionConfig{}.eta;
  std::string step_rule = "spectral";
  std::string gradient = "analytic";
};

const char* status_name(ReconstructionStatus s) {
  switch (s) {
    case ReconstructionStatus::Converged: return "converged";
    case ReconstructionStatus::MaxIters: return "max_iters";
    case ReconstructionStatus::NoDescent: return "no_descent";
  }
  return "unknown";
}

int cmd_reconstruct(const ReconstructArgs& a, const Context& ctx) {
  const Instance inst = load_instance(a.common.instance);
  const OccupationVector tau_hat{load_vector(a.tau), OccupationKind::Empirical};

  ReconstructionConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.cost_tol = a.cost_tol;
  cfg.eta = a.eta;
  cfg.step_rule = a.step_rule == "fixed"          ? StepRule::Fixed
                  : a.step_rule == "backtracking" ? StepRule::Backtracking
                                                  : StepRule::Spectral;
  cfg.gradient_mode = a.gradient == "fd" ? GradientMode::FiniteDifference : GradientMode::Analytic;
  const ReconstructionResult res = reconstruct_weights(inst.graph, tau_hat, cfg);

  json flags{{"tau_path", a.tau},         {"max_iters", a.max_iters}, {"cost_tol", a.cost_tol},
             {"eta", a.eta},              {"step_rule", a.step_rule}, {"gradient", a.gradient}};
  const json m = manifest("reconstruct", a.common, inst, flags);

  std::vector<Vertex> support = res.support.to_parent;
  json doc{{"manifest", m},
           {"status", status_name(res.status)},
           {"iterations", res.log.empty() ? 0 : res.log.back().iter},
           {"final_cost", res.final_cost},
           {"floor_events", res.floor_events},
           {"support", support},
           {"rho", to_json(res.rho_full)}};
  emit(ctx, a.common.out, doc.dump(2) + "\n");

  std::string log_path = a.log;
  if (log_path.empty() && !a.common.out.empty()) log_path = a.common.out + ".iters.csv";
  if (!log_path.empty()) {
    std::string csv = csv_preamble(m) + "iter,cost,step\n";
    for (const IterationRecord& rec : res.log) {
      csv += std::to_string(rec.iter) + "," + number(rec.cost) + "," + number(rec.step) + "\n";
    }
    write_atomic(log_path, csv);
  }
  if (!a.common.out.empty()) {
    ctx.out << status_name(res.status) << " after " << (res.log.empty() ? 0 : res.log.back().iter)
            << " iterations, cost " << number(res.final_cost) << "\n";
  }
  return res.status == ReconstructionStatus::Converged ? kExitOk : kExitNonConvergence;
}

// ----------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  std::string target;
  std::string family = "auto";
};

int cmd_solve(const SolveArgs& a, const Context& ctx) {
  const Instance inst = load_instance(a.common.instance);
  const OccupationVector r{load_vector(a.target), OccupationKind::Expected};

  WeightAssignment w;
  if (a.family == "path") {
    w = solve_path(inst.graph, r);
  } else if (a.family == "complete") {
    w = solve_complete(inst.graph, r);
  } else {
    w = solve_reducible(inst.graph, r);
  }
  const Eigen::VectorXd rho = pin_out(inst.graph, w.rho);
  const Eigen::VectorXd tau = expected_occupation_fixed_point(inst.graph, w).values;
  json flags{{"family", a.family}, {"target_path", a.target}};
  json doc{{"manifest", manifest("solve", a.common, inst, flags)},
           {"rho", to_json(rho)},
           {"beta", to_json(rho / rho.sum())},
           {"tau", to_json(tau)}};
  emit(ctx, a.common.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ----------------------------------------------------------------- check

struct CheckArgs {
  Common common;
  std::string target;
  int cap = 0;
};

const char* verdict_name(HullVerdict v) {
  switch (v) {
    case HullVerdict::Interior: return "interior";
    case HullVerdict::Boundary: return "boundary";
    case HullVerdict::Outside: return "outside";
  }
  return "unknown";
}

int cmd_check(const CheckArgs& a, const Context& ctx) {
  const Instance inst = load_instance(a.common.instance);
  const Graph& g = inst.graph;
  const int cap = a.cap > 0 ? a.cap : default_cap(g);
  json flags{{"cap", cap}};
  json doc;

  if (a.target.empty()) {
    doc["hull_dim"] = hull_dimension(g, cap);
    doc["bipartite"] = g.bipartite();
    doc["relint"] = nullptr;
    doc["cap_used"] = cap;
  } else {
    flags["target_path"] = a.target;
    const OccupationVector r{load_vector(a.target), OccupationKind::Expected};
    if (r.values.size() != g.size()) {
      throw Error(ErrorCode::DimensionMismatch, "target length does not match the instance");
    }
    RelintResult res;
    if (std::abs(r.values[g.v_out()] - 1.0) > 1e-9) {
      // every trace has exactly one visit to v_out
      res.cap_used = cap;
      res.hull_dim = hull_dimension(g, cap);
      res.bipartite = g.bipartite();
    } else {
      res = relint_membership(g, r, cap);
    }
    doc["hull_dim"] = res.hull_dim;
    doc["bipartite"] = res.bipartite;
    doc["relint"] = res.relint;
    doc["cap_used"] = res.cap_used;
    doc["verdict"] = verdict_name(res.verdict);
    doc["certificate"] = res.certificate;
  }
  doc["manifest"] = manifest("check", a.common, inst, flags);
  emit(ctx, a.common.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ------------------------------------------------------------- gradcheck

struct GradcheckArgs {
  Common common;
  double fd_step = 1e-5;
};

constexpr double kGradcheckTol = 1e-5;

int cmd_gradcheck(GradcheckArgs a, const Context& ctx) {
  if (!a.common.seed) a.common.seed = 1;
  const Instance inst = load_instance(a.common.instance);
  const Graph& g = inst.graph;
  WalkRng rng(substream_seed(*a.common.seed, 0));
  Eigen::VectorXd rho(g.size());
  Eigen::VectorXd tau_hat(g.size());
  for (int v = 0; v < g.size(); ++v) rho[v] = 0.2 + 4.8 * uniform01(rng);
  for (int v = 0; v < g.size(); ++v) tau_hat[v] = 0.5 + 2.5 * uniform01(rng);
  rho[g.v_out()] = 1.0;
  tau_hat[g.v_out()] = 1.0;

  const WeightAssignment w = derived_weights(g, rho);
  const OccupationVector target{tau_hat, OccupationKind::Expected};
  const GradientReport analytic = occupation_gradient(g, w, target, GradientMode::Analytic);
  const Eigen::VectorXd fd = finite_difference_gradient(g, w, target, a.fd_step);
  const double error = max_relative_error(analytic.gradient, fd);
  const bool pass = error <= kGradcheckTol;

  json flags{{"fd_step", a.fd_step}};
  json doc{{"manifest", manifest("gradcheck", a.common, inst, flags)},
           {"max_relative_error", error},
           {"tolerance", kGradcheckTol},
           {"pass", pass},
           {"cost", analytic.cost},
           {"free_vertices", analytic.free_vertices},
           {"analytic", to_json(analytic.gradient)},
           {"finite_difference", to_json(fd)},
           {"rho", to_json(rho)},
           {"tau_hat", to_json(tau_hat)}};
  if (!a.common.out.empty()) write_atomic(a.common.out, doc.dump(2) + "\n");
  ctx.out << "max relative error " << number(error) << (pass ? " ok" : " FAILED") << "\n";
  return pass ? kExitOk : kExitNonConvergence;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInPsi:
    case ErrorCode::Irreducible:
      return kExitStructural;
    case ErrorCode::NoDescent:
    case ErrorCode::BracketFailure:
      return kExitNonConvergence;
    default:
      return kExitInput;
  }
}

void add_common(CLI::App* sub, Common& c, bool seed) {
  sub->add_option("--instance", c.instance, "Graph instance JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "Output file (stdout when omitted)");
  if (seed) sub->add_option("--seed", c.seed, "Master seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Occupation times of absorbing random walks on vertex-weighted graphs", "rwinv"};
  app.require_subcommand(1);

  ExpectArgs expect;
  auto* s_expect = app.add_subcommand("expect", "Expected (or Monte Carlo) occupation times");
  add_common(s_expect, expect.common, true);
  s_expect->add_option("--method", expect.method)
      ->check(CLI::IsMember({"green", "fixedpoint", "montecarlo"}))
      ->capture_default_str();
  s_expect->add_option("--N", expect.walks, "Number of walks for montecarlo");
  s_expect->add_option("--workers", expect.workers)->check(CLI::Range(1u, 1024u))->capture_default_str();
  s_expect->add_option("--format", expect.format)->check(CLI::IsMember({"auto", "json", "csv"}));

  SimulateArgs simulate;
  auto* s_sim = app.add_subcommand("simulate", "Sample walks and report their traces");
  add_common(s_sim, simulate.common, true);
  s_sim->add_option("--N", simulate.walks)->capture_default_str();
  s_sim->add_option("--workers", simulate.workers)->check(CLI::Range(1u, 1024u))->capture_default_str();
  s_sim->add_flag("--paths", simulate.paths, "Include vertex sequences");
  s_sim->add_option("--step-limit", simulate.step_limit)->capture_default_str();

  ReconstructArgs recon;
  auto* s_rec = app.add_subcommand("reconstruct", "Fit weights to target occupation times");
  add_common(s_rec, recon.common, false);
  s_rec->add_option("--tau", recon.tau, "Target occupation vector")->required()->check(CLI::ExistingFile);
  s_rec->add_option("--log", recon.log, "Iteration log CSV (default: <out>.iters.csv)");
  s_rec->add_option("--max-iters", recon.max_iters)->check(CLI::NonNegativeNumber)->capture_default_str();
  s_rec->add_option("--cost-tol", recon.cost_tol)->check(CLI::PositiveNumber)->capture_default_str();
  s_rec->add_option("--eta", recon.eta)->check(CLI::PositiveNumber)->capture_default_str();
  s_rec->add_option("--step-rule", recon.step_rule)
      ->check(CLI::IsMember({"fixed", "backtracking", "spectral"}))
      ->capture_default_str();
  s_rec->add_option("--gradient", recon.gradient)->check(CLI::IsMember({"analytic", "fd"}));

  SolveArgs solve;
  auto* s_solve = app.add_subcommand("solve", "Exact weights for a solvable target");
  add_common(s_solve, solve.common, false);
  s_solve->add_option("--target", solve.target, "Target occupation vector")
      ->required()
      ->check(CLI::ExistingFile);
  s_solve->add_option("--family", solve.family)
      ->check(CLI::IsMember({"auto", "path", "complete"}))
      ->capture_default_str();

  CheckArgs check;
  auto* s_check = app.add_subcommand("check", "Trace hull dimension and relative-interior test");
  add_common(s_check, check.common, false);
  s_check->add_option("--target", check.target, "Target occupation vector")->check(CLI::ExistingFile);
  s_check->add_option("--cap", check.cap, "Walk length cap (default 4n)")->check(CLI::NonNegativeNumber);

  GradcheckArgs grad;
  auto* s_grad = app.add_subcommand("gradcheck", "Analytic gradient against central differences");
  add_common(s_grad, grad.common, true);
  s_grad->add_option("--fd-step", grad.fd_step)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  const Context ctx{out, err};
  try {
    if (*s_expect) return cmd_expect(expect, ctx);
    if (*s_sim) return cmd_simulate(simulate, ctx);
    if (*s_rec) return cmd_reconstruct(recon, ctx);
    if (*s_solve) return cmd_solve(solve, ctx);
    if (*s_check) return cmd_check(check, ctx);
    if (*s_grad) return cmd_gradcheck(grad, ctx);
  } catch (const Error& e) {
    err << "rwinv: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "rwinv: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace rwinv::app

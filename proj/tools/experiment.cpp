// Copyright 2026 The restartkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "restartkit/prox.hpp"
#include "restartkit/trace_io.hpp"

namespace restartkit::tools {
namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment", "scheme",  "solver", "seed",  "output_path",
      "n",          "m",       "s",      "noise", "kappa",
      "side",       "mask",    "rate",   "density_exponent",
      "radial_lines", "dataset_path", "dataset_format", "dataset_name",
      "lambda",     "reference_optimum",
      "t",          "a",       "b",      "r",     "c1",
      "c2",         "alpha0",  "beta0",  "eps0",  "alpha",
      "beta",       "i_min",   "i_max",  "j_min", "j_max",
      "checkpoint_stride", "start_policy", "workers", "mu", "delta"};
  return keys;
}

template <typename T>
std::optional<T> field(const json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw ConfigError("");
    } else {
      if (!it->is_number()) throw ConfigError("");
      if constexpr (std::is_integral_v<T>) {
        const double v = it->get<double>();
        if (v != std::floor(v)) throw ConfigError("");
      }
    }
    return it->get<T>();
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected " +
                      (std::is_same_v<T, std::string> ? "a string"
                       : std::is_integral_v<T>        ? "an integer"
                                                      : "a number"));
  }
}

Experiment parse_experiment(const std::string& name) {
  if (name == "qcbp_gaussian") return Experiment::kQcbpGaussian;
  if (name == "qcbp_fourier") return Experiment::kQcbpFourier;
  if (name == "tv_fourier") return Experiment::kTvFourier;
  if (name == "srlasso") return Experiment::kSrLasso;
  throw ConfigError("field 'experiment': unknown value '" + name + "'");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "none") return Scheme::kNone;
  if (name == "fixed") return Scheme::kFixed;
  if (name == "grid_alpha") return Scheme::kGridAlpha;
  if (name == "grid_beta") return Scheme::kGridBeta;
  if (name == "grid_both") return Scheme::kGridBoth;
  if (name == "ranges") return Scheme::kRanges;
  throw ConfigError("field 'scheme': unknown value '" + name + "'");
}

SolverKind parse_solver(const std::string& name) {
  if (name == "pd") return SolverKind::kPrimalDual;
  if (name == "nesta") return SolverKind::kNesta;
  throw ConfigError("field 'solver': unknown value '" + name + "'");
}

StartPolicy parse_start_policy(const std::string& name) {
  if (name == "global_best") return StartPolicy::kGlobalBest;
  if (name == "instance_local") return StartPolicy::kInstanceLocal;
  throw ConfigError("field 'start_policy': unknown value '" + name + "'");
}

SolverKind default_solver(Experiment e) {
  switch (e) {
    case Experiment::kQcbpFourier:
    case Experiment::kTvFourier:
      return SolverKind::kNesta;
    default:
      return SolverKind::kPrimalDual;
  }
}

double default_noise(Experiment e) {
  switch (e) {
    case Experiment::kTvFourier:
      return 1e-5;
    case Experiment::kSrLasso:
      return 0.0;
    default:
      return 1e-6;
  }
}

double default_lambda(const std::string& dataset) {
  if (dataset == "wine") return 3.0;
  if (dataset == "leu") return 4.0;
  return 2.0;
}

ScheduleMode scheme_mode(Scheme s) {
  switch (s) {
    case Scheme::kGridAlpha:
      return ScheduleMode::kBetaKnown;
    case Scheme::kGridBeta:
      return ScheduleMode::kAlphaKnown;
    case Scheme::kGridBoth:
      return ScheduleMode::kBothUnknown;
    case Scheme::kRanges:
      return ScheduleMode::kRangesKnown;
    default:
      return ScheduleMode::kBothKnown;
  }
}

bool is_grid(Scheme s) {
  return s == Scheme::kGridAlpha || s == Scheme::kGridBeta ||
         s == Scheme::kGridBoth || s == Scheme::kRanges;
}

// Running-best recorder for the non-restarted baselines.
class BaselineTrace {
 public:
  BaselineTrace(const ProblemInstance& problem, std::int64_t stride)
      : problem_(problem), stride_(std::max<std::int64_t>(stride, 1)) {}

  void observe(std::int64_t t, const Vec& x, bool force) {
    if (!force && t % stride_ != 0) return;
    const double f = problem_.objective(x);
    const double gap = problem_.gap(x);
    if (!std::isfinite(f + gap)) {
      throw AbortedRun("non-finite objective value in baseline run", rows_);
    }
    if (rows_.empty() || f + gap < best_total_) {
      best_total_ = f + gap;
      best_ = x;
      best_row_ = TraceRecord{t, 0, 0, 0, 0, f, std::nullopt, gap, std::nullopt};
      if (problem_.reference_optimum) {
        best_row_.objective_error = f + gap - *problem_.reference_optimum;
      }
      if (problem_.reference_point) {
        best_row_.reconstruction_error = problem_.distance(x, *problem_.reference_point);
      }
    }
    TraceRecord row = best_row_;
    row.inner_iteration = t;
    if (!rows_.empty() && rows_.back().inner_iteration == t) {
      rows_.back() = row;
    } else {
      rows_.push_back(row);
    }
  }

  std::vector<TraceRecord>& rows() { return rows_; }
  const Vec& best() const { return best_; }

 private:
  const ProblemInstance& problem_;
  std::int64_t stride_;
  double best_total_ = 0.0;
  Vec best_;
  TraceRecord best_row_;
  std::vector<TraceRecord> rows_;
};

RestartOutcome run_baseline(const ExperimentConfig& config, const BuiltExperiment& built,
                            std::int64_t stride) {
  BaselineTrace trace(built.problem, stride);
  trace.observe(0, built.x0, true);
  const std::int64_t t = config.t;
  if (built.solver == SolverKind::kNesta) {
    const double mu = config.mu.value_or(built.noise > 0.0 ? built.noise : 1e-3);
    const SmoothProblem smooth = built.smoothable->at(mu);
    nesterov_fixed(smooth, t, built.x0, [&](std::int64_t j, const Vec& x) {
      trace.observe(j, x, j == t);
    });
  } else {
    const PrimalDualProblem& pd = *built.primal_dual;
    // Balanced steps (tau = sigma) unless delta is given.
    const double delta =
        config.delta.value_or(pd.constrained() ? pd.kappa : pd.lipschitz_h);
    PdSteps steps = pd_step_sizes(pd, delta, 1.0);
    steps.iterations = t;
    pd_iterate(pd, steps, built.x0, {}, [&](const PdState& s) {
      trace.observe(s.iteration, s.ergodic_primal, s.iteration == t);
    });
  }
  RestartOutcome out;
  out.final_point = trace.best();
  out.trace = std::move(trace.rows());
  out.inner_iterations = t;
  return out;
}

// Restarts of the known-constant scheme that fit in the budget.
std::int64_t fitting_restarts(const SolverContract& contract, double eps0,
                              double alpha, double beta, double r, std::int64_t budget) {
  std::int64_t used = 0;
  std::int64_t count = 0;
  double eps = eps0;
  while (eps * r > 10.0 * kMachineEpsilon) {
    const double delta = std::pow(2.0 * eps / alpha, 1.0 / beta);
    const std::int64_t cost = contract.cost_bound(delta, r * eps);
    if (add_counts(used, cost) > budget) break;
    used += cost;
    ++count;
    eps *= r;
  }
  return count;
}

std::string path_with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string()))
      .string();
}

void write_outputs(const std::string& path, const std::vector<TraceRecord>& trace,
                   const RunSummary* summary) {
  if (path.empty()) return;
  {
    std::ofstream out(path);
    if (!out) throw ConfigError("field 'output_path': cannot write '" + path + "'");
    write_trace_csv(out, trace);
  }
  if (summary) {
    std::ofstream out(path + ".summary.json");
    out << to_json(*summary).dump(2) << '\n';
  }
}

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kQcbpGaussian:
      return "qcbp_gaussian";
    case Experiment::kQcbpFourier:
      return "qcbp_fourier";
    case Experiment::kTvFourier:
      return "tv_fourier";
    case Experiment::kSrLasso:
      return "srlasso";
  }
  return "?";
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kNone:
      return "none";
    case Scheme::kFixed:
      return "fixed";
    case Scheme::kGridAlpha:
      return "grid_alpha";
    case Scheme::kGridBeta:
      return "grid_beta";
    case Scheme::kGridBoth:
      return "grid_both";
    case Scheme::kRanges:
      return "ranges";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  const SolverKind kind = solver.value_or(default_solver(experiment));
  if (kind == SolverKind::kNesta && (experiment == Experiment::kQcbpGaussian ||
                                     experiment == Experiment::kSrLasso)) {
    throw ConfigError("field 'solver': nesta needs a Fourier measurement operator");
  }
  if (kind == SolverKind::kPrimalDual && experiment == Experiment::kTvFourier) {
    throw ConfigError("field 'solver': tv_fourier runs with nesta only");
  }
  if (t < 0) throw ConfigError("field 't': must be nonnegative");
  if (scheme == Scheme::kRanges && !ranges) {
    throw ConfigError("field 'i_min': ranges scheme needs i_min, i_max, j_min, j_max");
  }
  if (workers < 1) throw ConfigError("field 'workers': must be at least 1");
  if (workers > 1 && !is_grid(scheme)) {
    throw ConfigError("field 'workers': parallel runs need a grid scheme");
  }
  if (workers > 1 && start_policy != StartPolicy::kInstanceLocal) {
    throw ConfigError("field 'start_policy': parallel runs need instance_local");
  }
  if (noise && !(*noise >= 0.0)) throw ConfigError("field 'noise': must be >= 0");
  if (lambda && !(*lambda > 0.0)) throw ConfigError("field 'lambda': must be positive");
  if (mu && !(*mu > 0.0)) throw ConfigError("field 'mu': must be positive");
  if (delta && !(*delta > 0.0)) throw ConfigError("field 'delta': must be positive");
  if (alpha && !(*alpha > 0.0)) throw ConfigError("field 'alpha': must be positive");
  if (beta && !(*beta >= 1.0)) throw ConfigError("field 'beta': must be >= 1");
  if (!(rate > 0.0 && rate <= 1.0)) throw ConfigError("field 'rate': must lie in (0, 1]");
  if (checkpoint_stride && *checkpoint_stride < 0) {
    throw ConfigError("field 'checkpoint_stride': must be >= 0");
  }
  if (experiment == Experiment::kSrLasso && !dataset_path.empty()) {
    parse_tabular_format(dataset_format);
  }
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known_keys().count(item.key())) {
      throw ConfigError("field '" + item.key() + "': unknown field");
    }
  }
  ExperimentConfig c;
  if (auto v = field<std::string>(doc, "experiment")) c.experiment = parse_experiment(*v);
  if (auto v = field<std::string>(doc, "scheme")) c.scheme = parse_scheme(*v);
  if (auto v = field<std::string>(doc, "solver")) c.solver = parse_solver(*v);
  if (auto v = field<std::int64_t>(doc, "seed")) {
    if (*v < 0) throw ConfigError("field 'seed': must be nonnegative");
    c.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = field<std::string>(doc, "output_path")) c.output_path = *v;
  c.n = field<Index>(doc, "n");
  c.m = field<Index>(doc, "m");
  c.s = field<Index>(doc, "s");
  c.noise = field<double>(doc, "noise");
  c.kappa = field<double>(doc, "kappa");
  if (auto v = field<Index>(doc, "side")) c.side = *v;
  if (auto v = field<std::string>(doc, "mask")) {
    try {
      c.mask = parse_mask_kind(*v);
    } catch (const std::exception&) {
      throw ConfigError("field 'mask': unknown value '" + *v + "'");
    }
  }
  if (auto v = field<double>(doc, "rate")) c.rate = *v;
  if (auto v = field<double>(doc, "density_exponent")) c.density_exponent = *v;
  c.radial_lines = field<int>(doc, "radial_lines");
  if (auto v = field<std::string>(doc, "dataset_path")) c.dataset_path = *v;
  if (auto v = field<std::string>(doc, "dataset_format")) c.dataset_format = *v;
  if (auto v = field<std::string>(doc, "dataset_name")) c.dataset_name = *v;
  c.lambda = field<double>(doc, "lambda");
  c.reference_optimum = field<double>(doc, "reference_optimum");
  if (auto v = field<std::int64_t>(doc, "t")) c.t = *v;
  c.a = field<double>(doc, "a");
  c.b = field<double>(doc, "b");
  c.r = field<double>(doc, "r");
  c.c1 = field<double>(doc, "c1");
  c.c2 = field<double>(doc, "c2");
  c.alpha0 = field<double>(doc, "alpha0");
  c.beta0 = field<double>(doc, "beta0");
  c.eps0 = field<double>(doc, "eps0");
  c.alpha = field<double>(doc, "alpha");
  c.beta = field<double>(doc, "beta");
  const auto i_min = field<int>(doc, "i_min");
  const auto i_max = field<int>(doc, "i_max");
  const auto j_min = field<int>(doc, "j_min");
  const auto j_max = field<int>(doc, "j_max");
  if (i_min || i_max || j_min || j_max) {
    if (!(i_min && i_max && j_min && j_max)) {
      throw ConfigError("field 'i_min': give all of i_min, i_max, j_min, j_max");
    }
    c.ranges = IndexRanges{*i_min, *i_max, *j_min, *j_max};
  }
  c.checkpoint_stride = field<std::int64_t>(doc, "checkpoint_stride");
  if (auto v = field<std::string>(doc, "start_policy")) c.start_policy = parse_start_policy(*v);
  if (auto v = field<int>(doc, "workers")) c.workers = *v;
  c.mu = field<double>(doc, "mu");
  c.delta = field<double>(doc, "delta");
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  json doc;
  doc["experiment"] = std::string(to_string(c.experiment));
  doc["scheme"] = std::string(to_string(c.scheme));
  if (c.solver) doc["solver"] = *c.solver == SolverKind::kNesta ? "nesta" : "pd";
  doc["seed"] = c.seed;
  if (!c.output_path.empty()) doc["output_path"] = c.output_path;
  const auto put = [&doc](const char* key, const auto& opt) {
    if (opt) doc[key] = *opt;
  };
  put("n", c.n);
  put("m", c.m);
  put("s", c.s);
  put("noise", c.noise);
  put("kappa", c.kappa);
  doc["side"] = c.side;
  if (c.mask) doc["mask"] = std::string(to_string(*c.mask));
  doc["rate"] = c.rate;
  doc["density_exponent"] = c.density_exponent;
  put("radial_lines", c.radial_lines);
  if (!c.dataset_path.empty()) doc["dataset_path"] = c.dataset_path;
  doc["dataset_format"] = c.dataset_format;
  if (!c.dataset_name.empty()) doc["dataset_name"] = c.dataset_name;
  put("lambda", c.lambda);
  put("reference_optimum", c.reference_optimum);
  doc["t"] = c.t;
  put("a", c.a);
  put("b", c.b);
  put("r", c.r);
  put("c1", c.c1);
  put("c2", c.c2);
  put("alpha0", c.alpha0);
  put("beta0", c.beta0);
  put("eps0", c.eps0);
  put("alpha", c.alpha);
  put("beta", c.beta);
  if (c.ranges) {
    doc["i_min"] = c.ranges->i_min;
    doc["i_max"] = c.ranges->i_max;
    doc["j_min"] = c.ranges->j_min;
    doc["j_max"] = c.ranges->j_max;
  }
  put("checkpoint_stride", c.checkpoint_stride);
  doc["start_policy"] =
      c.start_policy == StartPolicy::kInstanceLocal ? "instance_local" : "global_best";
  doc["workers"] = c.workers;
  put("mu", c.mu);
  put("delta", c.delta);
  return doc;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  doc[key] = value.is_discarded() ? json(text) : value;
}

BuiltExperiment build_experiment(const ExperimentConfig& config) {
  config.validate();
  BuiltExperiment built;
  built.solver = config.solver.value_or(default_solver(config.experiment));
  built.noise = config.noise.value_or(default_noise(config.experiment));
  try {
    switch (config.experiment) {
      case Experiment::kQcbpGaussian:
      case Experiment::kQcbpFourier: {
        const bool gaussian = config.experiment == Experiment::kQcbpGaussian;
        QcbpInstance inst =
            gaussian ? gen_gaussian_qcbp(config.n.value_or(128), config.m.value_or(60),
                                         config.s.value_or(10), built.noise, config.seed)
                     : gen_fourier_qcbp(config.n.value_or(128), config.m.value_or(60),
                                        config.s.value_or(15), built.noise, config.seed);
        if (config.kappa) inst.kappa = *config.kappa;
        if (built.solver == SolverKind::kPrimalDual) {
          PdSetup setup = qcbp_problem(inst);
          built.problem = std::move(setup.problem);
          built.primal_dual = setup.solver;
          built.contract = primal_dual_contract(setup.solver);
          built.x0 = std::move(setup.initial_point);
          built.alpha0 = setup.alpha0;
          built.beta0 = setup.beta0;
        } else {
          NestaSetup setup = qcbp_nesta_problem(inst);
          built.problem = std::move(setup.problem);
          built.smoothable = setup.solver;
          built.contract = nesterov_smoothed_contract(setup.solver);
          built.x0 = std::move(setup.initial_point);
          built.alpha0 = setup.alpha0;
          built.beta0 = setup.beta0;
        }
        break;
      }
      case Experiment::kTvFourier: {
        MaskOptions options;
        options.density_exponent = config.density_exponent;
        options.radial_lines = config.radial_lines;
        const TvInstance inst =
            gen_tv_instance(config.side, config.mask.value_or(MaskKind::kPowerDensity),
                            config.rate, built.noise, config.seed, options);
        NestaSetup setup = tv_problem(inst);
        built.problem = std::move(setup.problem);
        built.smoothable = setup.solver;
        built.contract = nesterov_smoothed_contract(setup.solver);
        built.x0 = std::move(setup.initial_point);
        built.alpha0 = setup.alpha0;
        built.beta0 = setup.beta0;
        break;
      }
      case Experiment::kSrLasso: {
        const double lambda = config.lambda.value_or(default_lambda(config.dataset_name));
        SrLassoInstance inst;
        if (config.dataset_path.empty()) {
          inst = gen_synthetic_srlasso(config.m.value_or(50), config.n.value_or(100),
                                       lambda, config.seed);
        } else {
          const TabularData data =
              load_tabular_dataset(config.dataset_path,
                                   parse_tabular_format(config.dataset_format),
                                   config.dataset_name);
          inst = make_srlasso(data.features, data.labels, lambda);
        }
        inst.reference_optimum = config.reference_optimum;
        PdSetup setup = srlasso_problem(inst);
        built.problem = std::move(setup.problem);
        built.primal_dual = setup.solver;
        built.contract = primal_dual_contract(setup.solver);
        built.x0 = std::move(setup.initial_point);
        built.alpha0 = setup.alpha0;
        built.beta0 = setup.beta0;
        break;
      }
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (config.reference_optimum) built.problem.reference_optimum = config.reference_optimum;
  if (config.alpha0) built.alpha0 = *config.alpha0;
  if (config.beta0) built.beta0 = *config.beta0;
  return built;
}

RestartConfig restart_config(const ExperimentConfig& config, const BuiltExperiment& built) {
  const CostExponents exponents = built.contract.cost_exponents.value_or(CostExponents{});
  const ScheduleMode mode = scheme_mode(config.scheme);
  const DefaultParameters defaults =
      default_parameters(exponents.d1, exponents.d2, built.beta0, mode);
  RestartConfig rc;
  rc.a = config.a.value_or(defaults.a);
  rc.b = config.b.value_or(defaults.b);
  rc.r = config.r.value_or(defaults.r);
  rc.alpha0 = built.alpha0;
  rc.beta0 = built.beta0;
  if (config.eps0) {
    rc.eps0 = *config.eps0;
  } else {
    const double total = built.problem.total(built.x0);
    rc.eps0 = total > 0.0 ? total : 1.0;
  }
  rc.total_inner_iterations = config.t;
  rc.criterion.mode = mode;
  rc.criterion.c1 = config.c1.value_or(defaults.c1);
  rc.criterion.c2 = config.c2.value_or(defaults.c2);
  rc.criterion.ranges = config.ranges;
  rc.criterion = clamped_criterion(rc.criterion, rc.a, rc.b);
  rc.checkpoint_stride =
      config.checkpoint_stride.value_or(built.problem.dimension <= 1000 ? 1 : 10);
  rc.start_policy = config.start_policy;
  rc.validate();
  return rc;
}

RunSummary summarize(const std::vector<TraceRecord>& trace,
                     std::int64_t inner_iterations, std::int64_t restarts) {
  RunSummary s;
  s.inner_iterations = inner_iterations;
  s.restarts = restarts;
  if (trace.empty()) return s;
  const TraceRecord& last = trace.back();
  s.objective = last.objective_value;
  s.gap = last.feasibility_gap;
  s.objective_error = last.objective_error;
  s.reconstruction_error = last.reconstruction_error;
  const auto error_of = [](const TraceRecord& row) {
    if (row.reconstruction_error) return *row.reconstruction_error;
    if (row.objective_error) return *row.objective_error;
    return row.objective_value + row.feasibility_gap;
  };
  for (int p = 0; p <= 16; ++p) {
    const double target = std::pow(10.0, -p);
    std::optional<std::int64_t> hit;
    for (const auto& row : trace) {
      if (error_of(row) <= target) {
        hit = row.inner_iteration;
        break;
      }
    }
    if (!hit) break;
    s.iterations_to_decade.push_back(hit);
  }
  return s;
}

json to_json(const RunSummary& s) {
  json doc;
  doc["objective"] = s.objective;
  doc["gap"] = s.gap;
  doc["objective_error"] = s.objective_error ? json(*s.objective_error) : json(nullptr);
  doc["reconstruction_error"] =
      s.reconstruction_error ? json(*s.reconstruction_error) : json(nullptr);
  doc["inner_iterations"] = s.inner_iterations;
  doc["restarts"] = s.restarts;
  json decades = json::array();
  for (std::size_t p = 0; p < s.iterations_to_decade.size(); ++p) {
    decades.push_back({{"decade", -static_cast<int>(p)},
                       {"iterations", *s.iterations_to_decade[p]}});
  }
  doc["iterations_to_decade"] = decades;
  return doc;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const BuiltExperiment built = build_experiment(config);
  const RestartConfig rc = restart_config(config, built);
  ExperimentResult result;
  try {
    switch (config.scheme) {
      case Scheme::kNone:
        result.outcome = run_baseline(config, built, rc.checkpoint_stride);
        break;
      case Scheme::kFixed: {
        const double alpha = config.alpha.value_or(built.alpha0);
        const double beta = config.beta.value_or(built.beta0);
        const std::int64_t restarts =
            fitting_restarts(built.contract, rc.eps0, alpha, beta, rc.r, config.t);
        result.outcome = restart_known(built.problem, built.contract, built.x0, rc.eps0,
                                       alpha, beta, rc.r, restarts,
                                       KnownOptions{rc.checkpoint_stride});
        break;
      }
      default:
        if (config.workers > 1) {
          result.outcome =
              restart_grid_parallel(built.problem, built.contract, built.x0, rc,
                                    std::min(config.workers, worker_limit()));
        } else {
          result.outcome = restart_grid(built.problem, built.contract, built.x0, rc);
        }
        break;
    }
  } catch (const AbortedRun& e) {
    write_outputs(config.output_path, e.partial_trace, nullptr);
    throw;
  }
  result.summary = summarize(result.outcome.trace, result.outcome.inner_iterations,
                             result.outcome.restarts);
  write_outputs(config.output_path, result.outcome.trace, &result.summary);
  return result;
}

std::vector<SweepEntry> sweep(const ExperimentConfig& config, const std::string& parameter,
                              const std::vector<double>& values, int workers) {
  if (std::find(std::begin(kSweepParameters), std::end(kSweepParameters), parameter) ==
      std::end(kSweepParameters)) {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
  std::vector<ExperimentConfig> configs;
  for (double v : values) {
    ExperimentConfig c = config;
    if (parameter == "alpha") {
      c.alpha = v;
      c.alpha0 = v;
    } else if (parameter == "beta") {
      c.beta = v;
      c.beta0 = v;
    } else if (parameter == "noise") {
      c.noise = v;
    } else if (parameter == "lambda") {
      c.lambda = v;
    } else {
      c.mu = v;
    }
    if (!c.output_path.empty()) {
      c.output_path = path_with_suffix(c.output_path, "_" + parameter + "-" + format_value(v));
    }
    c.validate();
    configs.push_back(std::move(c));
  }

  std::vector<SweepEntry> entries(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        entries[i] = {values[i], configs[i].output_path,
                      run_experiment(configs[i]).summary};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads =
      std::max(1, std::min<int>(workers, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return entries;
}

void write_sweep_table(std::ostream& out, const std::string& parameter,
                       const std::vector<SweepEntry>& entries) {
  out << parameter << ",f,gap,ferr,rerr,inner_iterations,restarts,output\n";
  for (const auto& e : entries) {
    out << format_double(e.value) << ',' << format_double(e.summary.objective) << ','
        << format_double(e.summary.gap) << ','
        << (e.summary.objective_error ? format_double(*e.summary.objective_error) : "")
        << ','
        << (e.summary.reconstruction_error ? format_double(*e.summary.reconstruction_error)
                                           : "")
        << ',' << e.summary.inner_iterations << ',' << e.summary.restarts << ','
        << e.output_path << '\n';
  }
}

ReferenceOptimum run_oracle(const ExperimentConfig& config, std::int64_t budget) {
  ExperimentConfig c = config;
  if (!is_grid(c.scheme)) c.scheme = Scheme::kGridBoth;
  c.checkpoint_stride = 0;
  c.workers = 1;
  c.start_policy = StartPolicy::kGlobalBest;
  const BuiltExperiment built = build_experiment(c);
  return reference_optimum(built.problem, built.contract, built.x0, budget,
                           restart_config(c, built));
}

}  // namespace restartkit::tools

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

#include "restartkit/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "restartkit/prox.hpp"
#include "restartkit/rng.hpp"

namespace restartkit {
namespace {

// Independent stream for measurement noise so the mask and the noise do not
// share draws.
constexpr std::uint64_t kNoiseStream = 0x9E3779B97F4A7C15ULL;

Vec sphere_noise(Rng& rng, Index m, double radius, bool complex_valued) {
  if (radius == 0.0 || m == 0) return Vec::Zero(m);
  Vec e = complex_valued ? rng.complex_normal_vector(m) : rng.normal_vector(m);
  const double norm = e.norm();
  if (norm == 0.0) return Vec::Zero(m);
  return e * (radius / norm);
}

Vec sparse_signal(Rng& rng, Index n, Index s) {
  if (s < 0 || s > n) throw InvalidArgument("sparsity out of range");
  Vec x = Vec::Zero(n);
  for (Index idx : rng.sample_without_replacement(n, s)) x[idx] = rng.normal();
  return x;
}

void check_noise(double noise) {
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw InvalidArgument("noise level must be finite and nonnegative");
  }
}

double parse_number(std::string_view field, std::size_t row, std::size_t column) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                            field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw IngestionError("row " + std::to_string(row) + ", column " +
                         std::to_string(column) + ": cannot parse '" +
                         std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

TabularData load_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    const char sep = line.find(';') != std::string::npos ? ';' : ',';
    const auto fields = split(line, sep);
    if (first) {
      first = false;
      try {
        parse_number(fields.front(), row, 1);
      } catch (const IngestionError&) {
        width = fields.size();
        continue;  // header line
      }
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw IngestionError("row " + std::to_string(row) + ": expected " +
                           std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()));
    }
    if (width < 2) {
      throw IngestionError("row " + std::to_string(row) +
                           ": need at least one feature and a label");
    }
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      values[c] = parse_number(fields[c], row, c + 1);
    }
    rows.push_back(std::move(values));
  }
  TabularData data;
  const auto m = static_cast<Index>(rows.size());
  const auto n = static_cast<Index>(width == 0 ? 0 : width - 1);
  data.features.resize(m, n);
  data.labels.resize(m);
  for (Index i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) data.features(i, j) = r[static_cast<std::size_t>(j)];
    data.labels[i] = r.back();
  }
  return data;
}

TabularData load_svmlight(std::istream& in) {
  struct Row {
    double label;
    std::vector<std::pair<Index, double>> entries;
  };
  std::vector<Row> rows;
  Index n = 0;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (blank(line)) continue;
    std::istringstream tokens(line);
    std::string token;
    tokens >> token;
    Row r{parse_number(token, row, 1), {}};
    std::size_t column = 1;
    while (tokens >> token) {
      ++column;
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw IngestionError("row " + std::to_string(row) + ", column " +
                             std::to_string(column) + ": expected index:value");
      }
      const std::string_view view(token);
      const double idx = parse_number(view.substr(0, colon), row, column);
      if (idx < 1 || idx != std::floor(idx)) {
        throw IngestionError("row " + std::to_string(row) + ", column " +
                             std::to_string(column) + ": bad feature index");
      }
      const auto j = static_cast<Index>(idx) - 1;
      r.entries.emplace_back(j, parse_number(view.substr(colon + 1), row, column));
      n = std::max(n, j + 1);
    }
    rows.push_back(std::move(r));
  }
  TabularData data;
  const auto m = static_cast<Index>(rows.size());
  data.features = Eigen::MatrixXd::Zero(m, n);
  data.labels.resize(m);
  for (Index i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    data.labels[i] = r.label;
    for (const auto& [j, v] : r.entries) data.features(i, j) = v;
  }
  return data;
}

struct KnownShape {
  const char* name;
  Index rows;
  Index cols;
};

constexpr KnownShape kKnownShapes[] = {
    {"wine", 6497, 11},
    {"cc", 62, 2000},
    {"leu", 38, 7129},
};

}  // namespace

QcbpInstance gen_gaussian_qcbp(Index n, Index m, Index s, double noise,
                               std::uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidArgument("dimensions must be positive");
  check_noise(noise);
  Rng rng(seed);
  Eigen::MatrixXcd A(m, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) A(i, j) = Complex(scale * rng.normal(), 0.0);
  }
  QcbpInstance out;
  const Vec x = sparse_signal(rng, n, s);
  out.y = A * x + sphere_noise(rng, m, noise, false);
  out.A = std::make_shared<DenseOperator>(std::move(A));
  out.noise = noise;
  out.ground_truth = x;
  out.sparsity = s;
  out.kappa = std::sqrt(static_cast<double>(m));
  return out;
}

QcbpInstance gen_fourier_qcbp(Index n, Index m, Index s, double noise,
                              std::uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidArgument("dimensions must be positive");
  check_noise(noise);
  const SamplingMask mask = sample_mask(n, m, MaskKind::kBernoulliUniform, seed);
  auto A = make_fourier_operator(n, mask);
  Rng rng(seed ^ kNoiseStream);
  QcbpInstance out;
  const Vec x = sparse_signal(rng, n, s);
  out.y = A->apply(x) + sphere_noise(rng, A->out_dim(), noise, true);
  out.A = std::move(A);
  out.noise = noise;
  out.ground_truth = x;
  out.sparsity = s;
  out.kappa = std::sqrt(static_cast<double>(mask.size()));
  return out;
}

PdSetup qcbp_problem(const QcbpInstance& instance) {
  if (!instance.A) throw InvalidArgument("instance has no measurement operator");
  auto pd = std::make_shared<PrimalDualProblem>();
  pd->g_value = [](const Vec& x) { return l1_norm(x); };
  pd->g_prox = [](const Vec& x, double t) { return prox_l1(x, t); };
  pd->A = instance.A;
  const Vec y = instance.y;
  const double noise = instance.noise;
  pd->project_C = [y, noise](const Vec& w) { return project_l2_ball(w, y, noise); };
  pd->support_C = [y, noise](const Vec& w) {
    return real_inner(y, w) + noise * w.norm();
  };
  pd->norm_A = instance.A->norm_bound();
  pd->kappa = instance.kappa;
  pd->validate();

  PdSetup setup;
  const Index n = instance.A->in_dim();
  setup.problem = primal_dual_instance(pd, n);
  setup.problem.reference_point = instance.ground_truth;
  setup.solver = std::move(pd);
  setup.initial_point = Vec::Zero(n);
  setup.alpha0 = std::sqrt(static_cast<double>(instance.A->out_dim()));
  setup.beta0 = 1.0;
  return setup;
}

NestaSetup qcbp_nesta_problem(const QcbpInstance& instance) {
  if (!instance.A) throw InvalidArgument("instance has no measurement operator");
  const auto nu = instance.A->row_orthonormal_constant();
  if (!nu) throw ConfigError("smoothed QCBP needs an operator with A A* = nu I");
  const LinearOperatorPtr A = instance.A;
  const Vec y = instance.y;
  const double noise = instance.noise;
  const Index n = A->in_dim();

  NestaSetup setup;
  setup.solver.smoothed_gradient = [](const Vec& x, double mu) {
    return SmoothedL1{mu, std::nullopt}.gradient(x);
  };
  setup.solver.smoothed_value = [](const Vec& x, double mu) {
    return SmoothedL1{mu, std::nullopt}.value(x);
  };
  setup.solver.u = 1.0;
  setup.solver.v = static_cast<double>(n) / 2.0;
  setup.solver.project = [A, y, noise](const Vec& z) {
    return nesta_q_projection(z, *A, y, noise);
  };
  setup.problem.dimension = n;
  setup.problem.objective = [](const Vec& x) { return l1_norm(x); };
  setup.problem.reference_point = instance.ground_truth;
  setup.initial_point = A->adjoint(y) / *nu;
  setup.alpha0 = std::sqrt(static_cast<double>(A->out_dim()));
  setup.beta0 = 1.0;
  return setup;
}

TvInstance gen_tv_instance(Index side, MaskKind kind, double rate, double noise,
                           std::uint64_t seed, const MaskOptions& options) {
  if (side < 2) throw InvalidArgument("image side must be at least 2");
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidArgument("sampling rate must be in (0, 1]");
  check_noise(noise);
  const Index n = side * side;
  const auto m_target =
      std::max<Index>(1, static_cast<Index>(std::llround(rate * static_cast<double>(n))));
  const SamplingMask mask = sample_mask(n, m_target, kind, seed, options);

  TvInstance out;
  out.side = side;
  out.A = make_fourier_operator_2d(side, mask);
  out.V = std::make_shared<TvGradientOperator>(side);
  out.ground_truth = gen_phantom(side);
  out.noise = noise;
  Rng rng(seed ^ kNoiseStream);
  out.y = out.A->apply(out.ground_truth) +
          sphere_noise(rng, out.A->out_dim(), noise, true);
  return out;
}

NestaSetup tv_problem(const TvInstance& instance) {
  if (!instance.A || !instance.V) throw InvalidArgument("incomplete TV instance");
  const std::shared_ptr<const FourierOperator> A = instance.A;
  const std::shared_ptr<const TvGradientOperator> V = instance.V;
  const Vec y = instance.y;
  const double noise = instance.noise;
  const auto nu = A->row_orthonormal_constant();

  NestaSetup setup;
  setup.solver.smoothed_gradient = [V](const Vec& x, double mu) {
    return V->adjoint(SmoothedL1{mu, std::nullopt}.gradient(V->apply(x)));
  };
  setup.solver.smoothed_value = [V](const Vec& x, double mu) {
    return SmoothedL1{mu, std::nullopt}.value(V->apply(x));
  };
  setup.solver.u = V->norm_bound() * V->norm_bound();
  setup.solver.v = static_cast<double>(V->out_dim()) / 2.0;
  setup.solver.project = [A, y, noise](const Vec& z) {
    return nesta_q_projection(z, *A, y, noise);
  };
  setup.problem.dimension = A->in_dim();
  setup.problem.objective = [V](const Vec& x) { return l1_norm(V->apply(x)); };
  setup.problem.reference_point = instance.ground_truth;
  setup.initial_point = A->adjoint(y) / *nu;
  return setup;
}

Vec gen_phantom(Index side) {
  if (side < 8) throw InvalidArgument("phantom side must be at least 8");
  Vec image = Vec::Zero(side * side);
  const double s = static_cast<double>(side);
  for (Index p = 0; p < side; ++p) {
    for (Index q = 0; q < side; ++q) {
      const double row = (static_cast<double>(p) + 0.5) / s;
      const double col = (static_cast<double>(q) + 0.5) / s;
      double value = 0.0;
      if (row >= 0.125 && row < 0.875 && col >= 0.125 && col < 0.875) value = 0.25;
      if (row >= 0.25 && row < 0.5 && col >= 0.25 && col < 0.75) value = 0.6;
      const double er = (row - 0.65) / 0.15;
      const double ec = (col - 0.55) / 0.22;
      if (er * er + ec * ec <= 1.0) value = 1.0;
      image[p * side + q] = value;
    }
  }
  return image;
}

void write_pgm(std::ostream& out, const Vec& image, Index side) {
  if (side < 1 || image.size() != side * side) {
    throw InvalidArgument("image size does not match side");
  }
  out << "P2\n" << side << ' ' << side << "\n255\n";
  for (Index p = 0; p < side; ++p) {
    for (Index q = 0; q < side; ++q) {
      const double v = std::clamp(image[p * side + q].real(), 0.0, 1.0);
      out << std::lround(v * 255.0) << (q + 1 < side ? ' ' : '\n');
    }
  }
}

SrLassoInstance make_srlasso(const Eigen::MatrixXd& features,
                             const Eigen::VectorXd& labels, double lambda) {
  if (features.rows() != labels.size()) {
    throw InvalidArgument("feature rows and labels differ in length");
  }
  if (features.rows() == 0) throw InvalidArgument("empty dataset");
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  SrLassoInstance out;
  out.A.resize(features.rows(), features.cols() + 1);
  out.A.leftCols(features.cols()) = features.cast<Complex>();
  out.A.col(features.cols()).setOnes();
  out.y = labels.cast<Complex>();
  out.lambda = lambda;
  return out;
}

SrLassoInstance gen_synthetic_srlasso(Index m, Index n, double lambda,
                                      std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidArgument("dimensions must be positive");
  Rng rng(seed);
  Eigen::MatrixXd X(m, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) X(i, j) = rng.normal();
  }
  const Index s = std::min<Index>(5, n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Index idx : rng.sample_without_replacement(n, s)) w[idx] = 1.0 + rng.uniform();
  Eigen::VectorXd labels = X * w;
  for (Index i = 0; i < m; ++i) labels[i] += 0.1 * rng.normal();
  SrLassoInstance out = make_srlasso(X, labels, lambda);
  Vec planted = Vec::Zero(n + 1);
  planted.head(n) = w.cast<Complex>();
  out.planted = planted;
  return out;
}

PdSetup srlasso_problem(const SrLassoInstance& instance) {
  const double lambda = instance.lambda;
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  auto pd = std::make_shared<PrimalDualProblem>();
  pd->g_value = [lambda](const Vec& x) { return lambda * l1_norm(x); };
  pd->g_prox = [lambda](const Vec& x, double t) { return prox_l1(x, lambda * t); };
  auto B = std::make_shared<DenseOperator>(instance.A);
  pd->norm_B = B->norm_bound();
  pd->B = B;
  const Vec y = instance.y;
  pd->h_value = [y](const Vec& z) { return (z - y).norm(); };
  pd->h_conjugate_prox = [y](const Vec& w, double sigma) {
    const Vec shifted = w - sigma * y;
    return project_l2_ball(shifted, Vec::Zero(shifted.size()), 1.0);
  };
  pd->h_conjugate_value = [y](const Vec& w) {
    if (w.norm() > 1.0 + 1e-12) return std::numeric_limits<double>::infinity();
    return real_inner(w, y);
  };
  pd->lipschitz_h = 1.0;
  pd->validate();

  PdSetup setup;
  const Index n = instance.A.cols();
  setup.problem = primal_dual_instance(pd, n);
  setup.problem.reference_optimum = instance.reference_optimum;
  setup.problem.reference_point = instance.planted;
  setup.solver = std::move(pd);
  setup.initial_point = Vec::Zero(n);
  return setup;
}

Index count_nonzeros(const Vec& x, double threshold) {
  Index count = 0;
  for (Index i = 0; i < x.size(); ++i) count += std::abs(x[i]) > threshold ? 1 : 0;
  return count;
}

TabularFormat parse_tabular_format(const std::string& name) {
  if (name == "csv") return TabularFormat::kCsv;
  if (name == "svmlight") return TabularFormat::kSvmlight;
  throw ConfigError("unknown dataset format '" + name + "'");
}

TabularData load_tabular_dataset(const std::string& path, TabularFormat format,
                                 const std::string& dataset_name) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open dataset '" + path + "'");
  TabularData data = format == TabularFormat::kCsv ? load_csv(in) : load_svmlight(in);
  if (data.features.rows() == 0) throw IngestionError("dataset '" + path + "' has no rows");
  for (const auto& shape : kKnownShapes) {
    if (dataset_name != shape.name) continue;
    const Index rows = data.features.rows();
    // svmlight omits trailing zero columns.
    Index cols = data.features.cols();
    if (format == TabularFormat::kSvmlight && cols < shape.cols) {
      data.features.conservativeResize(rows, shape.cols);
      data.features.rightCols(shape.cols - cols).setZero();
      cols = shape.cols;
    }
    if (rows != shape.rows || cols != shape.cols) {
      throw IngestionError("dataset '" + dataset_name + "' expected " +
                           std::to_string(shape.rows) + "x" +
                           std::to_string(shape.cols) + ", found " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  return data;
}

ReferenceOptimum reference_optimum(const ProblemInstance& problem,
                                   const SolverContract& contract, const Vec& x0,
                                   std::int64_t budget, RestartConfig config) {
  if (budget < 1) throw InvalidArgument("budget must be positive");
  config.total_inner_iterations = budget;
  config.start_policy = StartPolicy::kGlobalBest;
  const RestartOutcome outcome = restart_grid(problem, contract, x0, config);

  std::vector<double> plateaus;
  for (const auto& row : outcome.trace) {
    const double total = row.objective_value + row.feasibility_gap;
    if (plateaus.empty() || total < plateaus.back()) plateaus.push_back(total);
  }
  const double final_total = problem.total(outcome.final_point);
  if (plateaus.empty() || final_total < plateaus.back()) plateaus.push_back(final_total);

  ReferenceOptimum out;
  out.value = plateaus.back();
  out.uncertainty = plateaus.size() > 1 ? plateaus[plateaus.size() - 2] - plateaus.back() : 0.0;
  out.inner_iterations = outcome.inner_iterations;
  return out;
}

}  // namespace restartkit

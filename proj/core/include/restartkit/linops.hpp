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

#ifndef RESTARTKIT_LINOPS_HPP_
#define RESTARTKIT_LINOPS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "restartkit/core.hpp"

namespace restartkit {

class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index in_dim() const = 0;
  virtual Index out_dim() const = 0;
  virtual Vec apply(const Vec& x) const = 0;
  virtual Vec adjoint(const Vec& y) const = 0;
  // Upper bound on the induced 2-norm.
  virtual double norm_bound() const = 0;
  // nu with A A* = nu I, when the rows are orthogonal with equal norms.
  virtual std::optional<double> row_orthonormal_constant() const {
    return std::nullopt;
  }
};

using LinearOperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator final : public LinearOperator {
 public:
  // The norm bound is the largest singular value, inflated by 1e-10 relative.
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  Index in_dim() const override { return matrix_.cols(); }
  Index out_dim() const override { return matrix_.rows(); }
  Vec apply(const Vec& x) const override;
  Vec adjoint(const Vec& y) const override;
  double norm_bound() const override { return norm_bound_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
  double norm_bound_;
};

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(Index n) : n_(n) {}

  Index in_dim() const override { return n_; }
  Index out_dim() const override { return n_; }
  Vec apply(const Vec& x) const override { return x; }
  Vec adjoint(const Vec& y) const override { return y; }
  double norm_bound() const override { return 1.0; }
  std::optional<double> row_orthonormal_constant() const override { return 1.0; }

 private:
  Index n_;
};

// Unnormalized DFT of length n: X_k = sum_j x_j exp(-2 pi i jk/n). Radix-2
// when n is a power of two, direct summation otherwise.
class Fft {
 public:
  explicit Fft(Index n);

  Index size() const { return n_; }
  // In-place transform of n entries spaced `stride` apart. The inverse
  // direction is the adjoint F*, i.e. unscaled.
  void transform(Complex* data, Index stride, bool inverse) const;

 private:
  Index n_;
  bool radix2_;
  std::vector<Index> bit_reverse_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k/n), k < n/2 (radix-2)
};

bool is_power_of_two(Index n);

// F x for a length-n vector.
Vec dft_apply(const Vec& x);
// F* x.
Vec dft_adjoint(const Vec& x);
// O(n^2) reference transform.
Vec dft_direct(const Vec& x, bool inverse = false);
// 2-D transform of a row-major side x side image.
Vec dft2_apply(const Vec& image, Index side, bool inverse = false);

enum class MaskKind { kBernoulliUniform, kRadial, kPowerDensity };

std::string_view to_string(MaskKind kind);
MaskKind parse_mask_kind(std::string_view name);

struct SamplingMask {
  Index n = 0;
  std::vector<Index> indices;  // sorted, unique
  MaskKind kind = MaskKind::kBernoulliUniform;
  std::uint64_t seed = 0;

  Index size() const { return static_cast<Index>(indices.size()); }
  void validate() const;
};

struct MaskOptions {
  // Decay exponent of the power-density profile (1 + |w|)^-exponent.
  double density_exponent = 1.0;
  // Number of radial lines; chosen from the target size when absent.
  std::optional<int> radial_lines;
};

// Radial and power-density masks live on a square frequency grid, so n must
// be a perfect square for them.
SamplingMask sample_mask(Index n, Index m_target, MaskKind kind,
                         std::uint64_t seed, const MaskOptions& options = {});

void write_mask(std::ostream& out, const SamplingMask& mask);
SamplingMask read_mask(std::istream& in);

// A = m^{-1/2} P_Omega F with the unnormalized DFT, so A A* = (n/m) I.
class FourierOperator final : public LinearOperator {
 public:
  // side == 0 selects the 1-D transform of length n; otherwise n = side^2 and
  // the transform is 2-D over a row-major image.
  FourierOperator(Index n, SamplingMask mask, Index side);

  Index in_dim() const override { return n_; }
  Index out_dim() const override { return mask_.size(); }
  Vec apply(const Vec& x) const override;
  Vec adjoint(const Vec& y) const override;
  double norm_bound() const override;
  std::optional<double> row_orthonormal_constant() const override;
  const SamplingMask& mask() const { return mask_; }
  Index side() const { return side_; }

 private:
  Vec full_transform(Vec x, bool inverse) const;

  Index n_;
  SamplingMask mask_;
  Index side_;
  Fft fft_;
  double scale_;
};

// 1-D for bernoulli masks, 2-D for radial and power-density masks.
std::shared_ptr<FourierOperator> make_fourier_operator(Index n,
                                                       const SamplingMask& mask);
std::shared_ptr<FourierOperator> make_fourier_operator_2d(Index side,
                                                          const SamplingMask& mask);

// Periodic anisotropic gradient of a row-major side x side image: horizontal
// differences x[p, q+1] - x[p, q] followed by vertical x[p+1, q] - x[p, q].
Vec tv_gradient_apply(const Vec& image, Index side);
// Adjoint of tv_gradient_apply (negative periodic divergence).
Vec tv_gradient_adjoint(const Vec& grad, Index side);

class TvGradientOperator final : public LinearOperator {
 public:
  explicit TvGradientOperator(Index side) : side_(side) {}

  Index in_dim() const override { return side_ * side_; }
  Index out_dim() const override { return 2 * side_ * side_; }
  Vec apply(const Vec& x) const override { return tv_gradient_apply(x, side_); }
  Vec adjoint(const Vec& y) const override { return tv_gradient_adjoint(y, side_); }
  double norm_bound() const override;
  Index side() const { return side_; }

 private:
  Index side_;
};

// Dense matrix of an operator, column by column (tests and small problems).
Eigen::MatrixXcd to_dense(const LinearOperator& op);

}  // namespace restartkit

#endif  // RESTARTKIT_LINOPS_HPP_

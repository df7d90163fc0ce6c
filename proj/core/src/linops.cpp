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

#include "restartkit/linops.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <Eigen/SVD>

#include "restartkit/rng.hpp"

namespace restartkit {
namespace {

Index exact_side(Index n) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) {
    throw InvalidArgument("2-D masks need n to be a perfect square, got " +
                          std::to_string(n));
  }
  return side;
}

// Centered frequency coordinate in [-side/2, side/2).
Index centered(Index k, Index side) { return k < (side + 1) / 2 ? k : k - side; }

Index wrap(Index u, Index side) { return ((u % side) + side) % side; }

std::set<Index> radial_set(Index side, int lines, double offset) {
  std::set<Index> out;
  const double half = static_cast<double>(side) / 2.0;
  for (int l = 0; l < lines; ++l) {
    const double theta = std::numbers::pi * (l + offset) / lines;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (double t = -static_cast<double>(side); t <= static_cast<double>(side); t += 0.5) {
      const double fu = t * c;
      const double fv = t * s;
      if (fu < -half || fu >= half || fv < -half || fv >= half) continue;
      const Index u = std::lround(fu);
      const Index v = std::lround(fv);
      out.insert(wrap(u, side) * side + wrap(v, side));
      out.insert(wrap(-u, side) * side + wrap(-v, side));
    }
  }
  return out;
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.cols() == 0) {
    throw InvalidArgument("dense operator needs a nonempty matrix");
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix_);
  norm_bound_ = svd.singularValues()(0) * (1.0 + 1e-10);
}

Vec DenseOperator::apply(const Vec& x) const { return matrix_ * x; }

Vec DenseOperator::adjoint(const Vec& y) const { return matrix_.adjoint() * y; }

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(Index n) : n_(n), radix2_(is_power_of_two(n)) {
  if (n < 1) throw InvalidArgument("transform length must be positive");
  if (radix2_) {
    int bits = 0;
    while ((Index{1} << bits) < n) ++bits;
    bit_reverse_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      Index r = 0;
      for (int b = 0; b < bits; ++b) {
        if (i & (Index{1} << b)) r |= Index{1} << (bits - 1 - b);
      }
      bit_reverse_[static_cast<std::size_t>(i)] = r;
    }
    twiddles_.resize(static_cast<std::size_t>(std::max<Index>(1, n / 2)));
  } else {
    twiddles_.resize(static_cast<std::size_t>(n));
  }
  for (std::size_t k = 0; k < twiddles_.size(); ++k) {
    twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));
  }
}

void Fft::transform(Complex* data, Index stride, bool inverse) const {
  if (!radix2_) {
    std::vector<Complex> out(static_cast<std::size_t>(n_));
    for (Index k = 0; k < n_; ++k) {
      Complex acc = 0.0;
      for (Index j = 0; j < n_; ++j) {
        Complex w = twiddles_[static_cast<std::size_t>((j * k) % n_)];
        acc += data[j * stride] * (inverse ? std::conj(w) : w);
      }
      out[static_cast<std::size_t>(k)] = acc;
    }
    for (Index k = 0; k < n_; ++k) data[k * stride] = out[static_cast<std::size_t>(k)];
    return;
  }
  for (Index i = 0; i < n_; ++i) {
    const Index r = bit_reverse_[static_cast<std::size_t>(i)];
    if (i < r) std::swap(data[i * stride], data[r * stride]);
  }
  for (Index len = 2; len <= n_; len <<= 1) {
    const Index half = len / 2;
    const Index step = n_ / len;
    for (Index start = 0; start < n_; start += len) {
      for (Index j = 0; j < half; ++j) {
        Complex w = twiddles_[static_cast<std::size_t>(j * step)];
        if (inverse) w = std::conj(w);
        Complex& lo = data[(start + j) * stride];
        Complex& hi = data[(start + j + half) * stride];
        const Complex v = hi * w;
        hi = lo - v;
        lo += v;
      }
    }
  }
}

Vec dft_apply(const Vec& x) {
  Vec out = x;
  Fft(x.size()).transform(out.data(), 1, false);
  return out;
}

Vec dft_adjoint(const Vec& x) {
  Vec out = x;
  Fft(x.size()).transform(out.data(), 1, true);
  return out;
}

Vec dft_direct(const Vec& x, bool inverse) {
  const Index n = x.size();
  Vec out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (Index k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double angle = sign * 2.0 * std::numbers::pi *
                           static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += x[j] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

Vec dft2_apply(const Vec& image, Index side, bool inverse) {
  if (image.size() != side * side) throw InvalidArgument("image size is not side^2");
  Vec out = image;
  const Fft fft(side);
  for (Index p = 0; p < side; ++p) fft.transform(out.data() + p * side, 1, inverse);
  for (Index q = 0; q < side; ++q) fft.transform(out.data() + q, side, inverse);
  return out;
}

std::string_view to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::kBernoulliUniform:
      return "bernoulli_uniform";
    case MaskKind::kRadial:
      return "radial";
    case MaskKind::kPowerDensity:
      return "power_density";
  }
  return "unknown";
}

MaskKind parse_mask_kind(std::string_view name) {
  for (MaskKind kind :
       {MaskKind::kBernoulliUniform, MaskKind::kRadial, MaskKind::kPowerDensity}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown mask kind '" + std::string(name) + "'");
}

void SamplingMask::validate() const {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n) throw InvalidArgument("mask index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw InvalidArgument("mask indices must be sorted and unique");
    }
  }
}

SamplingMask sample_mask(Index n, Index m_target, MaskKind kind,
                         std::uint64_t seed, const MaskOptions& options) {
  if (n < 1 || m_target < 1 || m_target > n) {
    throw InvalidArgument("sample_mask needs 1 <= m_target <= n");
  }
  SamplingMask mask;
  mask.n = n;
  mask.kind = kind;
  mask.seed = seed;
  Rng rng(seed);
  const double rate = static_cast<double>(m_target) / static_cast<double>(n);

  switch (kind) {
    case MaskKind::kBernoulliUniform: {
      for (Index i = 0; i < n; ++i) {
        if (rng.bernoulli(rate)) mask.indices.push_back(i);
      }
      break;
    }
    case MaskKind::kRadial: {
      const Index side = exact_side(n);
      const double offset = rng.uniform();
      std::set<Index> chosen;
      if (options.radial_lines) {
        if (*options.radial_lines < 1) throw InvalidArgument("radial line count must be positive");
        chosen = radial_set(side, *options.radial_lines, offset);
      } else {
        // Smallest line count reaching the target, or the closer neighbour.
        std::set<Index> previous;
        for (int lines = 1; lines <= 4 * side; ++lines) {
          chosen = radial_set(side, lines, offset);
          if (static_cast<Index>(chosen.size()) >= m_target) {
            if (!previous.empty() &&
                m_target - static_cast<Index>(previous.size()) <
                    static_cast<Index>(chosen.size()) - m_target) {
              chosen = std::move(previous);
            }
            break;
          }
          previous = chosen;
        }
      }
      mask.indices.assign(chosen.begin(), chosen.end());
      break;
    }
    case MaskKind::kPowerDensity: {
      const Index side = exact_side(n);
      std::vector<double> weight(static_cast<std::size_t>(n));
      for (Index p = 0; p < side; ++p) {
        for (Index q = 0; q < side; ++q) {
          const double u = static_cast<double>(centered(p, side));
          const double v = static_cast<double>(centered(q, side));
          weight[static_cast<std::size_t>(p * side + q)] =
              std::pow(1.0 + std::hypot(u, v), -options.density_exponent);
        }
      }
      // Scale c with sum_w min(1, c w) = m_target.
      auto expected = [&](double c) {
        double s = 0.0;
        for (double w : weight) s += std::min(1.0, c * w);
        return s;
      };
      double lo = 0.0;
      double hi = 1.0;
      while (expected(hi) < static_cast<double>(m_target) - 1e-9) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (expected(mid) < static_cast<double>(m_target) ? lo : hi) = mid;
      }
      for (Index i = 0; i < n; ++i) {
        const double prob = std::min(1.0, hi * weight[static_cast<std::size_t>(i)]);
        if (rng.bernoulli(prob)) mask.indices.push_back(i);
      }
      break;
    }
  }
  if (mask.indices.empty()) mask.indices.push_back(0);
  return mask;
}

void write_mask(std::ostream& out, const SamplingMask& mask) {
  out << mask.n << ' ' << mask.size() << ' ' << to_string(mask.kind) << ' '
      << mask.seed << '\n';
  for (Index i : mask.indices) out << i << '\n';
}

SamplingMask read_mask(std::istream& in) {
  SamplingMask mask;
  std::string header;
  if (!std::getline(in, header)) throw IngestionError("mask file is empty");
  std::istringstream hs(header);
  Index m = 0;
  std::string kind;
  if (!(hs >> mask.n >> m >> kind >> mask.seed)) {
    throw IngestionError("mask header must read 'n m kind seed'");
  }
  try {
    mask.kind = parse_mask_kind(kind);
  } catch (const InvalidArgument& e) {
    throw IngestionError(e.what());
  }
  Index idx = 0;
  while (in >> idx) mask.indices.push_back(idx);
  if (mask.size() != m) {
    throw IngestionError("mask header declares " + std::to_string(m) +
                         " indices, file has " + std::to_string(mask.size()));
  }
  try {
    mask.validate();
  } catch (const InvalidArgument& e) {
    throw IngestionError(e.what());
  }
  return mask;
}

FourierOperator::FourierOperator(Index n, SamplingMask mask, Index side)
    : n_(n), mask_(std::move(mask)), side_(side), fft_(side > 0 ? side : n) {
  if (mask_.indices.empty()) throw InvalidArgument("Fourier operator needs a nonempty mask");
  if (mask_.n != n) throw InvalidArgument("mask length does not match operator size");
  if (side > 0 && side * side != n) throw InvalidArgument("2-D operator needs n = side^2");
  mask_.validate();
  scale_ = 1.0 / std::sqrt(static_cast<double>(mask_.size()));
}

Vec FourierOperator::full_transform(Vec x, bool inverse) const {
  if (side_ == 0) {
    fft_.transform(x.data(), 1, inverse);
  } else {
    for (Index p = 0; p < side_; ++p) fft_.transform(x.data() + p * side_, 1, inverse);
    for (Index q = 0; q < side_; ++q) fft_.transform(x.data() + q, side_, inverse);
  }
  return x;
}

Vec FourierOperator::apply(const Vec& x) const {
  if (x.size() != n_) throw InvalidArgument("Fourier operator input has wrong size");
  const Vec full = full_transform(x, false);
  Vec out(mask_.size());
  for (Index r = 0; r < mask_.size(); ++r) {
    out[r] = scale_ * full[mask_.indices[static_cast<std::size_t>(r)]];
  }
  return out;
}

Vec FourierOperator::adjoint(const Vec& y) const {
  if (y.size() != mask_.size()) throw InvalidArgument("Fourier adjoint input has wrong size");
  Vec full = Vec::Zero(n_);
  for (Index r = 0; r < mask_.size(); ++r) {
    full[mask_.indices[static_cast<std::size_t>(r)]] = scale_ * y[r];
  }
  return full_transform(std::move(full), true);
}

double FourierOperator::norm_bound() const {
  return std::sqrt(static_cast<double>(n_) / static_cast<double>(mask_.size()));
}

std::optional<double> FourierOperator::row_orthonormal_constant() const {
  return static_cast<double>(n_) / static_cast<double>(mask_.size());
}

std::shared_ptr<FourierOperator> make_fourier_operator(Index n,
                                                       const SamplingMask& mask) {
  if (mask.kind == MaskKind::kBernoulliUniform) {
    return std::make_shared<FourierOperator>(n, mask, 0);
  }
  return std::make_shared<FourierOperator>(n, mask, exact_side(n));
}

std::shared_ptr<FourierOperator> make_fourier_operator_2d(Index side,
                                                          const SamplingMask& mask) {
  return std::make_shared<FourierOperator>(side * side, mask, side);
}

Vec tv_gradient_apply(const Vec& image, Index side) {
  if (side < 1 || image.size() != side * side) {
    throw InvalidArgument("TV gradient needs a side x side image");
  }
  const Index n = side * side;
  Vec out(2 * n);
  for (Index p = 0; p < side; ++p) {
    for (Index q = 0; q < side; ++q) {
      const Complex x = image[p * side + q];
      out[p * side + q] = image[p * side + (q + 1) % side] - x;
      out[n + p * side + q] = image[((p + 1) % side) * side + q] - x;
    }
  }
  return out;
}

Vec tv_gradient_adjoint(const Vec& grad, Index side) {
  const Index n = side * side;
  if (side < 1 || grad.size() != 2 * n) {
    throw InvalidArgument("TV adjoint needs a vector of length 2 side^2");
  }
  Vec out(n);
  for (Index p = 0; p < side; ++p) {
    for (Index q = 0; q < side; ++q) {
      const Index left = p * side + (q + side - 1) % side;
      const Index up = ((p + side - 1) % side) * side + q;
      out[p * side + q] = grad[left] - grad[p * side + q] + grad[n + up] -
                          grad[n + p * side + q];
    }
  }
  return out;
}

double TvGradientOperator::norm_bound() const { return 2.0 * std::sqrt(2.0); }

Eigen::MatrixXcd to_dense(const LinearOperator& op) {
  Eigen::MatrixXcd out(op.out_dim(), op.in_dim());
  for (Index c = 0; c < op.in_dim(); ++c) {
    Vec e = Vec::Zero(op.in_dim());
    e[c] = 1.0;
    out.col(c) = op.apply(e);
  }
  return out;
}

}  // namespace restartkit

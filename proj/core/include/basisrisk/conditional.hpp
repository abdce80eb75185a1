// Copyright 2026 The basisrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BASISRISK_CONDITIONAL_HPP_
#define BASISRISK_CONDITIONAL_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "basisrisk/expectile.hpp"

namespace basisrisk {

// Conditional law of the loss given the index value, S | tau = theta.
class ConditionalModel {
 public:
  virtual ~ConditionalModel() = default;

  virtual double expectile(double theta, Level gamma) const = 0;
  virtual double ess_inf(double theta) const = 0;
  // May be +inf.
  virtual double ess_sup(double theta) const = 0;

  // Batched evaluation; models sharing work across rows override this.
  virtual void expectiles(std::span<const double> thetas, Level gamma,
                          std::span<double> out) const;

  // Index values at which a separability decomposition samples the
  // expectile surface. Default: 20 equal-frequency quantiles of the
  // triggered indices.
  virtual std::vector<double> knots(std::span<const double> triggered) const;
};

// S | theta ~ Exp with mean lambda(theta).
class ExponentialConditional final : public ConditionalModel {
 public:
  explicit ExponentialConditional(std::function<double(double)> mean);
  double expectile(double theta, Level gamma) const override;
  double ess_inf(double) const override { return 0.0; }
  double ess_sup(double) const override;
  void expectiles(std::span<const double> thetas, Level gamma,
                  std::span<double> out) const override;

 private:
  std::function<double(double)> mean_;
};

// S | theta ~ Gamma(shape(theta), scale(theta)).
class GammaConditional final : public ConditionalModel {
 public:
  GammaConditional(std::function<double(double)> shape,
                   std::function<double(double)> scale);
  double expectile(double theta, Level gamma) const override;
  double ess_inf(double) const override { return 0.0; }
  double ess_sup(double) const override;
  void expectiles(std::span<const double> thetas, Level gamma,
                  std::span<double> out) const override;

 private:
  std::function<double(double)> shape_, scale_;
};

// S | theta = mu(theta) + sigma(theta) Z with Z independent of theta.
class LocationScaleConditional final : public ConditionalModel {
 public:
  struct ErrorLaw {
    std::function<double(Level)> expectile;
    double inf;
    double sup;
  };

  LocationScaleConditional(std::function<double(double)> location,
                           std::function<double(double)> scale, ErrorLaw error);

  double expectile(double theta, Level gamma) const override;
  double ess_inf(double theta) const override;
  double ess_sup(double theta) const override;
  void expectiles(std::span<const double> thetas, Level gamma,
                  std::span<double> out) const override;

  double location(double theta) const { return location_(theta); }
  double scale(double theta) const { return scale_(theta); }

 private:
  std::function<double(double)> location_, scale_;
  ErrorLaw error_;
};

// The same empirical law for every index value.
class PooledConditional final : public ConditionalModel {
 public:
  explicit PooledConditional(EmpiricalSample losses);
  double expectile(double theta, Level gamma) const override;
  double ess_inf(double) const override { return losses_.min(); }
  double ess_sup(double) const override { return losses_.max(); }
  void expectiles(std::span<const double> thetas, Level gamma,
                  std::span<double> out) const override;

 private:
  EmpiricalSample losses_;
};

// Equal-frequency bins over the index with a constant empirical law inside
// each bin. Throws DegenerateDataError("insufficient conditional data") if
// fewer than min_bin_count observations are available.
class BinnedEmpiricalConditional final : public ConditionalModel {
 public:
  BinnedEmpiricalConditional(std::span<const double> indices,
                             std::span<const double> losses,
                             std::size_t min_bin_count = 200,
                             std::size_t max_bins = 50);

  double expectile(double theta, Level gamma) const override;
  double ess_inf(double theta) const override;
  double ess_sup(double theta) const override;
  std::vector<double> knots(std::span<const double> triggered) const override;

  std::size_t bins() const noexcept { return samples_.size(); }
  std::size_t bin_of(double theta) const;
  const EmpiricalSample& bin_sample(std::size_t b) const { return samples_[b]; }

 private:
  std::vector<double> upper_edges_;
  std::vector<double> centers_;
  std::vector<EmpiricalSample> samples_;
};

}  // namespace basisrisk

#endif  // BASISRISK_CONDITIONAL_HPP_

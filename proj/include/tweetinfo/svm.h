// Copyright 2026 The tweetinfo Authors
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

// Soft-margin SVM with the sigmoid kernel K(x, z) = tanh(gamma * <x, z> +
// coef0), trained by sequential minimal optimization, plus Platt scaling of
// the decision value into P(INFORMATIVE).
//
// The dual being solved is
//
//   max_a  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
//   s.t.   0 <= a_i <= C,  sum_i a_i y_i = 0,
//
// with y = +1 for INFORMATIVE and -1 for UNINFORMATIVE. The decision value is
// f(x) = sum_i a_i y_i K(x_i, x) + b.

#ifndef TWEETINFO_SVM_H_
#define TWEETINFO_SVM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetinfo/dataset.h"
#include "tweetinfo/features.h"

namespace tweetinfo {

struct SvmParams {
  double c = 1.0;       // box constraint
  double gamma = 1.0;   // kernel scale
  double coef0 = 0.0;   // kernel shift
  double tol = 1e-3;    // KKT tolerance
  // Upper bound on SMO pair updates.
  std::size_t max_passes = 1000;

  // Throws InvalidArgument unless c > 0, gamma > 0, tol > 0, max_passes >= 1
  // and every value is finite.
  void Validate() const;

  friend bool operator==(const SvmParams&, const SvmParams&) = default;
};

// gamma = 1 / n_features, coef0 = 0, C = 1, tol = 1e-3,
// max_passes = 10 * n_samples.
SvmParams DefaultSvmParams(std::size_t n_features, std::size_t n_samples);

double SigmoidKernel(const SparseVector& x, const SparseVector& z,
                     double gamma, double coef0);

// p = 1 / (1 + exp(a * decision + b)).
struct PlattScaling {
  double a = 0.0;
  double b = 0.0;

  // Always strictly inside (0, 1).
  double Probability(double decision) const;

  friend bool operator==(const PlattScaling&, const PlattScaling&) = default;
};

struct PlattFit {
  PlattScaling scaling;
  int iterations = 0;
  bool converged = false;
};

// Maximum-likelihood sigmoid fit with Platt's smoothed targets
// t+ = (N+ + 1) / (N+ + 2) and t- = 1 / (N- + 2), solved by Newton's method
// with backtracking line search. Stops when both gradient components are
// below 1e-5 or after 100 iterations. When all decision values are equal the
// likelihood carries no slope information and the fit is a = 0 with p equal
// to the mean smoothed target.
//
// Throws InvalidArgument on length mismatch, ValidationError when a class is
// missing.
PlattFit FitPlatt(std::span<const double> decisions,
                  std::span<const Label> labels);

struct ConfidencePair {
  double decision;
  double probability;
};

class SvmModel {
 public:
  SvmModel() = default;
  // Throws InvalidArgument when the pieces are inconsistent (count mismatch,
  // dimension mismatch, |coef| outside (0, C], non-finite values).
  SvmModel(SvmParams params, std::size_t dimension,
           std::vector<SparseVector> support_vectors,
           std::vector<double> dual_coefs, double bias,
           std::optional<PlattScaling> platt = std::nullopt);

  const SvmParams& params() const { return params_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<SparseVector>& support_vectors() const {
    return support_vectors_;
  }
  // a_i * y_i for each support vector.
  const std::vector<double>& dual_coefs() const { return dual_coefs_; }
  double bias() const { return bias_; }
  const std::optional<PlattScaling>& platt() const { return platt_; }

  void set_platt(PlattScaling platt) { platt_ = platt; }

  // Throws InvalidArgument on a dimension mismatch.
  double Decision(const SparseVector& x) const;
  std::vector<double> Decisions(std::span<const SparseVector> xs) const;

  // P(INFORMATIVE). Throws ValidationError when no Platt pair is attached.
  double PredictProba(const SparseVector& x) const;
  ConfidencePair Predict(const SparseVector& x) const;

  std::string Serialize() const;
  static SvmModel Parse(std::string_view content,
                        const std::string& source = "<memory>");
  void Save(const std::filesystem::path& path) const;
  static SvmModel Load(const std::filesystem::path& path);

 private:
  SvmParams params_;
  std::size_t dimension_ = 0;
  std::vector<SparseVector> support_vectors_;
  std::vector<double> dual_coefs_;
  double bias_ = 0.0;
  std::optional<PlattScaling> platt_;
};

struct TrainOptions {
  // Memory budget of the kernel row cache. At least two rows are always
  // kept.
  std::size_t cache_bytes = std::size_t{256} << 20;
  // Recompute the dual objective after every accepted step and count
  // decreases (debugging aid, O(n) per step).
  bool monitor_objective = false;
};

struct TrainReport {
  std::size_t iterations = 0;      // accepted pair updates
  bool converged = false;          // KKT gap fell below tol
  bool stalled = false;            // no pair could make progress
  double kkt_gap = 0.0;            // max violating pair gap at exit
  double max_kkt_violation = 0.0;  // worst per-point violation given the bias
  std::size_t support_vectors = 0;
  std::size_t bounded_support_vectors = 0;  // a_i == C
  std::size_t fallback_sweeps = 0;
  double dual_objective = 0.0;
  std::size_t objective_decreases = 0;  // only with monitor_objective
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

struct TrainResult {
  SvmModel model;
  TrainReport report;
  std::vector<double> alphas;  // one per training point
};

// Solves the dual with SMO. Working pairs are the maximal violating pair
// (largest gap in y_i * gradient); when that pair cannot move, a sweep in a
// seeded random order looks for another pair that can. If the curvature
// K_ii + K_jj - 2 K_ij of a pair is not positive (the sigmoid kernel is not
// positive semidefinite) the pair objective is evaluated at both ends of the
// feasible segment and the better end is taken.
//
// Throws InvalidArgument for empty/mismatched input or bad params and
// ValidationError when a class is missing (the message names it).
TrainResult TrainSvm(std::span<const SparseVector> vectors,
                     std::span<const Label> labels, const SvmParams& params,
                     std::uint64_t seed, const TrainOptions& options = {});

}  // namespace tweetinfo

#endif  // TWEETINFO_SVM_H_

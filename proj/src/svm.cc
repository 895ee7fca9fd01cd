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

#include "tweetinfo/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "tweetinfo/error.h"
#include "tweetinfo/kernel_cache.h"
#include "tweetinfo/random.h"
#include "tweetinfo/text_format.h"

namespace tweetinfo {

namespace {

constexpr std::string_view kModelMagic = "tweetinfo-svm";
constexpr int kModelVersion = 1;

// Curvature at or below this is treated as non-positive.
constexpr double kMinCurvature = 1e-12;

void RequireBothClasses(std::span<const Label> labels) {
  for (Label label : kAllLabels) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      throw ValidationError("both classes are required; no " +
                            std::string(LabelName(label)) + " examples");
    }
  }
}

// Numerically stable log(1 + exp(z)).
double Log1pExp(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// State of one SMO run. The gradient is that of the minimization form
// D(a) = 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij, so grad = Qa - 1.
class SmoSolver {
 public:
  SmoSolver(std::span<const SparseVector> x, std::span<const Label> labels,
            const SvmParams& params, std::uint64_t seed,
            const TrainOptions& options)
      : n_(x.size()),
        c_(params.c),
        params_(params),
        options_(options),
        cache_(x, params.gamma, params.coef0, options.cache_bytes),
        rng_(seed),
        y_(n_),
        alpha_(n_, 0.0),
        grad_(n_, -1.0) {
    for (std::size_t i = 0; i < n_; ++i) y_[i] = SignOf(labels[i]);
  }

  TrainReport Run() {
    TrainReport report;
    double objective = 0.0;
    while (report.iterations < params_.max_passes) {
      const auto [i, j, gap] = MaximalViolatingPair();
      report.kkt_gap = gap;
      if (gap <= params_.tol) {
        report.converged = true;
        break;
      }
      if (!TakeStep(i, j) && !FallbackSweep(i, j, report)) {
        report.stalled = true;
        break;
      }
      ++report.iterations;
      if (options_.monitor_objective) {
        const double next = DualObjective();
        if (next < objective - 1e-12 * std::max(1.0, std::abs(objective))) {
          ++report.objective_decreases;
        }
        objective = next;
      }
    }
    if (!report.converged) {
      report.kkt_gap = std::get<2>(MaximalViolatingPair());
      report.converged = report.kkt_gap <= params_.tol;
    }
    bias_ = ComputeBias();
    report.max_kkt_violation = MaxKktViolation();
    report.dual_objective = DualObjective();
    report.cache_hits = cache_.hits();
    report.cache_misses = cache_.misses();
    for (double a : alpha_) {
      if (a > 0) ++report.support_vectors;
      if (a >= c_) ++report.bounded_support_vectors;
    }
    return report;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<int>& y() const { return y_; }
  double bias() const { return bias_; }

 private:
  bool InUp(std::size_t i) const {
    return y_[i] > 0 ? alpha_[i] < c_ : alpha_[i] > 0;
  }
  bool InLow(std::size_t i) const {
    return y_[i] > 0 ? alpha_[i] > 0 : alpha_[i] < c_;
  }
  // -y_i * grad_i; equals b - E_i for any bias b, E_i = f(x_i) - y_i.
  double Score(std::size_t i) const { return -y_[i] * grad_[i]; }

  std::tuple<std::size_t, std::size_t, double> MaximalViolatingPair() const {
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    std::size_t i = n_, j = n_;
    for (std::size_t k = 0; k < n_; ++k) {
      const double s = Score(k);
      if (InUp(k) && s > up_max) {
        up_max = s;
        i = k;
      }
      if (InLow(k) && s < low_min) {
        low_min = s;
        j = k;
      }
    }
    if (i == n_ || j == n_) return {i, j, 0.0};
    return {i, j, up_max - low_min};
  }

  // Moves a_i and a_j along the equality constraint. `i` should come from
  // the up set and `j` from the low set. Returns false if the pair objective
  // cannot be decreased.
  bool TakeStep(std::size_t i, std::size_t j) {
    if (i == j) return false;
    const double ai = alpha_[i], aj = alpha_[j];
    const int s = y_[i] * y_[j];

    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, aj - ai);
      hi = std::min(c_, c_ + aj - ai);
    } else {
      lo = std::max(0.0, ai + aj - c_);
      hi = std::min(c_, ai + aj);
    }
    if (hi - lo <= 0.0) return false;

    const KernelCache::Row row_i = cache_.GetRow(i);
    const KernelCache::Row row_j = cache_.GetRow(j);
    const double kij = (*row_i)[j];
    const double eta = cache_.Diagonal(i) + cache_.Diagonal(j) - 2.0 * kij;

    // Change of D when a_j moves by d (a_i moves by -s d).
    const double slope = grad_[j] - s * grad_[i];
    const auto delta_objective = [&](double d) {
      return slope * d + 0.5 * eta * d * d;
    };

    double new_aj;
    if (eta > kMinCurvature) {
      new_aj = std::clamp(aj - slope / eta, lo, hi);
    } else {
      const double at_lo = delta_objective(lo - aj);
      const double at_hi = delta_objective(hi - aj);
      new_aj = at_lo <= at_hi ? lo : hi;
    }
    const double improvement = -delta_objective(new_aj - aj);
    const double step = std::abs(new_aj - aj);
    if (step <= 1e-14 * std::max(1.0, c_) || !(improvement > 0.0)) {
      return false;
    }

    // Derive a_i from the conserved quantity so sum a_k y_k stays put.
    double new_ai = s < 0 ? (ai - aj) + new_aj : (ai + aj) - new_aj;
    new_ai = Snap(new_ai);
    new_aj = Snap(new_aj);

    const double di = new_ai - ai;
    const double dj = new_aj - aj;
    alpha_[i] = new_ai;
    alpha_[j] = new_aj;
    const double ci = y_[i] * di;
    const double cj = y_[j] * dj;
    for (std::size_t k = 0; k < n_; ++k) {
      grad_[k] += y_[k] * (ci * (*row_i)[k] + cj * (*row_j)[k]);
    }
    return true;
  }

  // Pins values within rounding distance of a bound onto the bound. The
  // threshold is a few ulps so the equality constraint does not drift.
  double Snap(double a) const {
    const double eps = 8.0 * std::numeric_limits<double>::epsilon() * c_;
    if (a <= eps) return 0.0;
    if (a >= c_ - eps) return c_;
    return a;
  }

  // The maximal violating pair could not move; look for any other violating
  // pair, visiting candidates in a seeded random order.
  bool FallbackSweep(std::size_t i, std::size_t j, TrainReport& report) {
    ++report.fallback_sweeps;
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Shuffle(order, rng_);
    const double tol = params_.tol;
    for (std::size_t k : order) {
      if (k != i && InLow(k) && Score(i) - Score(k) > tol && TakeStep(i, k)) {
        return true;
      }
    }
    for (std::size_t k : order) {
      if (k != j && InUp(k) && Score(k) - Score(j) > tol && TakeStep(k, j)) {
        return true;
      }
    }
    // Last resort: any violating pair at all.
    for (std::size_t a : order) {
      if (!InUp(a)) continue;
      for (std::size_t b : order) {
        if (a != b && InLow(b) && Score(a) - Score(b) > tol &&
            TakeStep(a, b)) {
          return true;
        }
      }
    }
    return false;
  }

  double ComputeBias() const {
    double sum = 0.0;
    std::size_t free = 0;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
      const double s = Score(k);
      if (alpha_[k] > 0 && alpha_[k] < c_) {
        sum += s;
        ++free;
      }
      if (InUp(k)) up_max = std::max(up_max, s);
      if (InLow(k)) low_min = std::min(low_min, s);
    }
    if (free > 0) return sum / static_cast<double>(free);
    if (std::isfinite(up_max) && std::isfinite(low_min)) {
      return 0.5 * (up_max + low_min);
    }
    return std::isfinite(up_max) ? up_max : low_min;
  }

  // Largest amount by which y_i f(x_i) misses its KKT condition.
  double MaxKktViolation() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double margin_minus_one = grad_[k] + y_[k] * bias_;
      double v;
      if (alpha_[k] <= 0) {
        v = std::max(0.0, -margin_minus_one);
      } else if (alpha_[k] >= c_) {
        v = std::max(0.0, margin_minus_one);
      } else {
        v = std::abs(margin_minus_one);
      }
      worst = std::max(worst, v);
    }
    return worst;
  }

  // sum a - 1/2 a'Qa, using grad = Qa - 1.
  double DualObjective() const {
    double w = 0.0;
    for (std::size_t k = 0; k < n_; ++k) w += alpha_[k] * (1.0 - grad_[k]);
    return 0.5 * w;
  }

  std::size_t n_;
  double c_;
  SvmParams params_;
  TrainOptions options_;
  KernelCache cache_;
  SplitMix64 rng_;
  std::vector<int> y_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  double bias_ = 0.0;
};

}  // namespace

void SvmParams::Validate() const {
  if (!(std::isfinite(c) && c > 0)) throw InvalidArgument("C must be positive");
  if (!(std::isfinite(gamma) && gamma > 0)) {
    throw InvalidArgument("gamma must be positive");
  }
  if (!std::isfinite(coef0)) throw InvalidArgument("coef0 must be finite");
  if (!(std::isfinite(tol) && tol > 0)) {
    throw InvalidArgument("tol must be positive");
  }
  if (max_passes < 1) throw InvalidArgument("max_passes must be at least 1");
}

SvmParams DefaultSvmParams(std::size_t n_features, std::size_t n_samples) {
  SvmParams p;
  p.gamma = 1.0 / static_cast<double>(std::max<std::size_t>(1, n_features));
  p.max_passes = 10 * std::max<std::size_t>(1, n_samples);
  return p;
}

double SigmoidKernel(const SparseVector& x, const SparseVector& z,
                     double gamma, double coef0) {
  return std::tanh(gamma * Dot(x, z) + coef0);
}

double PlattScaling::Probability(double decision) const {
  const double z = a * decision + b;
  double p;
  if (z >= 0) {
    const double e = std::exp(-z);
    p = e / (1.0 + e);
  } else {
    p = 1.0 / (1.0 + std::exp(z));
  }
  return std::clamp(p, std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

PlattFit FitPlatt(std::span<const double> decisions,
                  std::span<const Label> labels) {
  if (decisions.size() != labels.size()) {
    throw InvalidArgument("decisions and labels differ in length");
  }
  RequireBothClasses(labels);

  double n_pos = 0, n_neg = 0;
  for (Label l : labels) (l == Label::kInformative ? n_pos : n_neg) += 1;
  const double hi_target = (n_pos + 1.0) / (n_pos + 2.0);
  const double lo_target = 1.0 / (n_neg + 2.0);
  std::vector<double> t(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    t[i] = labels[i] == Label::kInformative ? hi_target : lo_target;
  }

  PlattFit fit;
  const auto [lo_it, hi_it] = std::minmax_element(decisions.begin(), decisions.end());
  if (*lo_it == *hi_it) {
    const double mean_t = std::accumulate(t.begin(), t.end(), 0.0) /
                          static_cast<double>(t.size());
    fit.scaling = {0.0, std::log((1.0 - mean_t) / mean_t)};
    fit.converged = true;
    return fit;
  }

  // Negative log-likelihood of the smoothed targets.
  const auto objective = [&](double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double z = decisions[i] * a + b;
      // -[t log p + (1 - t) log(1 - p)] with p = 1 / (1 + e^z)
      f += t[i] * Log1pExp(z) + (1.0 - t[i]) * Log1pExp(-z);
    }
    return f;
  };

  constexpr int kMaxIterations = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;  // Hessian ridge
  constexpr double kEps = 1e-5;

  double a = 0.0;
  double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
  double fval = objective(a, b);
  for (fit.iterations = 0; fit.iterations < kMaxIterations; ++fit.iterations) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double z = decisions[i] * a + b;
      double p, q;  // p = 1 / (1 + e^z), q = 1 - p
      if (z >= 0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        const double e = std::exp(z);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      const double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      const double d1 = t[i] - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) {
      fit.converged = true;
      break;
    }
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;

    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;  // line search failed
  }
  fit.scaling = {a, b};
  return fit;
}

SvmModel::SvmModel(SvmParams params, std::size_t dimension,
                   std::vector<SparseVector> support_vectors,
                   std::vector<double> dual_coefs, double bias,
                   std::optional<PlattScaling> platt)
    : params_(params),
      dimension_(dimension),
      support_vectors_(std::move(support_vectors)),
      dual_coefs_(std::move(dual_coefs)),
      bias_(bias),
      platt_(platt) {
  params_.Validate();
  if (support_vectors_.size() != dual_coefs_.size()) {
    throw InvalidArgument("support vector and coefficient counts differ");
  }
  for (std::size_t k = 0; k < support_vectors_.size(); ++k) {
    if (support_vectors_[k].dimension() != dimension_) {
      throw InvalidArgument("support vector dimension mismatch");
    }
    const double c = std::abs(dual_coefs_[k]);
    if (!(c > 0 && c <= params_.c)) {
      throw InvalidArgument("dual coefficient outside (0, C]");
    }
  }
  if (!std::isfinite(bias_)) throw InvalidArgument("bias is not finite");
  if (platt_ && !(std::isfinite(platt_->a) && std::isfinite(platt_->b))) {
    throw InvalidArgument("Platt parameters are not finite");
  }
}

double SvmModel::Decision(const SparseVector& x) const {
  if (x.dimension() != dimension_) {
    throw InvalidArgument("input dimension " + std::to_string(x.dimension()) +
                          " does not match model dimension " +
                          std::to_string(dimension_));
  }
  double f = 0.0;
  for (std::size_t k = 0; k < support_vectors_.size(); ++k) {
    f += dual_coefs_[k] * SigmoidKernel(support_vectors_[k], x, params_.gamma,
                                        params_.coef0);
  }
  return f + bias_;
}

std::vector<double> SvmModel::Decisions(
    std::span<const SparseVector> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const SparseVector& x : xs) out.push_back(Decision(x));
  return out;
}

double SvmModel::PredictProba(const SparseVector& x) const {
  return Predict(x).probability;
}

ConfidencePair SvmModel::Predict(const SparseVector& x) const {
  if (!platt_) throw ValidationError("model has no Platt calibration");
  const double f = Decision(x);
  return {f, platt_->Probability(f)};
}

std::string SvmModel::Serialize() const {
  std::string out;
  out += std::string(kModelMagic) + " " + std::to_string(kModelVersion) + "\n";
  out += "kernel sigmoid\n";
  out += "dimension " + std::to_string(dimension_) + "\n";
  out += "C " + FormatDouble(params_.c) + "\n";
  out += "gamma " + FormatDouble(params_.gamma) + "\n";
  out += "coef0 " + FormatDouble(params_.coef0) + "\n";
  out += "tol " + FormatDouble(params_.tol) + "\n";
  out += "max_passes " + std::to_string(params_.max_passes) + "\n";
  out += "bias " + FormatDouble(bias_) + "\n";
  if (platt_) {
    out += "platt " + FormatDouble(platt_->a) + " " + FormatDouble(platt_->b) +
           "\n";
  } else {
    out += "platt none\n";
  }
  out += "support_vectors " + std::to_string(support_vectors_.size()) + "\n";
  for (std::size_t k = 0; k < support_vectors_.size(); ++k) {
    out += FormatDouble(dual_coefs_[k]);
    for (const SparseEntry& e : support_vectors_[k].entries()) {
      out += ' ';
      out += std::to_string(e.index);
      out += ':';
      out += FormatDouble(e.weight);
    }
    out += '\n';
  }
  return out;
}

SvmModel SvmModel::Parse(std::string_view content, const std::string& source) {
  const auto lines = SplitLines(content);
  std::size_t n = 0;
  // Reads "<key> <fields...>" and returns the fields.
  const auto expect = [&](std::string_view key, std::size_t count) {
    if (n >= lines.size()) {
      throw ParseError(source, n + 1, "missing '" + std::string(key) + "'");
    }
    auto fields = SplitFields(lines[n], ' ');
    if (fields.size() != count + 1 || fields[0] != key) {
      throw ParseError(source, n + 1,
                       "expected '" + std::string(key) + "' with " +
                           std::to_string(count) + " value(s)");
    }
    ++n;
    return std::vector<std::string_view>(fields.begin() + 1, fields.end());
  };

  const auto magic = expect(kModelMagic, 1);
  if (ParseUnsigned(magic[0], source, n) != kModelVersion) {
    throw ParseError(source, n, "unsupported model version");
  }
  if (expect("kernel", 1)[0] != "sigmoid") {
    throw ParseError(source, n, "only the sigmoid kernel is supported");
  }
  const std::size_t dimension = ParseUnsigned(expect("dimension", 1)[0], source, n);
  SvmParams params;
  params.c = ParseDouble(expect("C", 1)[0], source, n);
  params.gamma = ParseDouble(expect("gamma", 1)[0], source, n);
  params.coef0 = ParseDouble(expect("coef0", 1)[0], source, n);
  params.tol = ParseDouble(expect("tol", 1)[0], source, n);
  params.max_passes = ParseUnsigned(expect("max_passes", 1)[0], source, n);
  const double bias = ParseDouble(expect("bias", 1)[0], source, n);

  std::optional<PlattScaling> platt;
  {
    if (n >= lines.size()) throw ParseError(source, n + 1, "missing 'platt'");
    const auto fields = SplitFields(lines[n], ' ');
    ++n;
    if (fields.size() == 2 && fields[0] == "platt" && fields[1] == "none") {
      // uncalibrated
    } else if (fields.size() == 3 && fields[0] == "platt") {
      platt = PlattScaling{ParseDouble(fields[1], source, n),
                           ParseDouble(fields[2], source, n)};
    } else {
      throw ParseError(source, n, "expected 'platt A B' or 'platt none'");
    }
  }

  const std::size_t count =
      ParseUnsigned(expect("support_vectors", 1)[0], source, n);
  if (lines.size() - n != count) {
    throw ParseError(source, n, "expected " + std::to_string(count) +
                                    " support vector lines, found " +
                                    std::to_string(lines.size() - n));
  }
  std::vector<SparseVector> svs;
  std::vector<double> coefs;
  svs.reserve(count);
  coefs.reserve(count);
  for (; n < lines.size(); ++n) {
    const auto fields = SplitFields(lines[n], ' ');
    coefs.push_back(ParseDouble(fields[0], source, n + 1));
    std::vector<SparseEntry> entries;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto colon = fields[f].find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(source, n + 1, "expected index:weight");
      }
      entries.push_back(
          {static_cast<std::uint32_t>(
               ParseUnsigned(fields[f].substr(0, colon), source, n + 1)),
           ParseDouble(fields[f].substr(colon + 1), source, n + 1)});
    }
    try {
      svs.emplace_back(std::move(entries), dimension);
    } catch (const InvalidArgument& e) {
      throw ParseError(source, n + 1, e.what());
    }
  }
  try {
    return SvmModel(params, dimension, std::move(svs), std::move(coefs), bias,
                    platt);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, 0, e.what());
  }
}

void SvmModel::Save(const std::filesystem::path& path) const {
  WriteFile(path, Serialize());
}

SvmModel SvmModel::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

TrainResult TrainSvm(std::span<const SparseVector> vectors,
                     std::span<const Label> labels, const SvmParams& params,
                     std::uint64_t seed, const TrainOptions& options) {
  if (vectors.empty()) throw InvalidArgument("no training vectors");
  if (vectors.size() != labels.size()) {
    throw InvalidArgument("vectors and labels differ in length");
  }
  params.Validate();
  RequireBothClasses(labels);
  const std::size_t dimension = vectors.front().dimension();
  for (const SparseVector& v : vectors) {
    if (v.dimension() != dimension) {
      throw InvalidArgument("training vectors differ in dimension");
    }
  }

  SmoSolver solver(vectors, labels, params, seed, options);
  TrainReport report = solver.Run();

  std::vector<SparseVector> svs;
  std::vector<double> coefs;
  const auto& alpha = solver.alpha();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (alpha[i] > 0) {
      svs.push_back(vectors[i]);
      coefs.push_back(alpha[i] * solver.y()[i]);
    }
  }
  return {SvmModel(params, dimension, std::move(svs), std::move(coefs),
                   solver.bias()),
          report, alpha};
}

}  // namespace tweetinfo

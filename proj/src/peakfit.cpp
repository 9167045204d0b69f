// Copyright 2026 The cgnet Authors
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

#include "cgnet/peakfit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/NonLinearOptimization>

namespace cgnet {

namespace {

enum Param { kCenter = 0, kHeight = 1, kWidth = 2, kOffset = 3 };

struct Problem {
  const std::vector<double>& x;
  const std::vector<double>& y;
  std::vector<double> err;
  std::array<double, 4> fixed{};
  std::vector<int> free;

  std::array<double, 4> unpack(const Eigen::VectorXd& p) const {
    auto full = fixed;
    for (std::size_t i = 0; i < free.size(); ++i) full[free[i]] = p(static_cast<Eigen::Index>(i));
    return full;
  }
};

struct Functor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Problem* prob;

  int inputs() const { return static_cast<int>(prob->free.size()); }
  int values() const { return static_cast<int>(prob->x.size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    const auto q = prob->unpack(p);
    for (int i = 0; i < values(); ++i) {
      const double d = prob->x[i] - q[kCenter];
      const double g = std::exp(-d * d / (2 * q[kWidth] * q[kWidth]));
      f(i) = (q[kOffset] + q[kHeight] * g - prob->y[i]) / prob->err[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    const auto q = prob->unpack(p);
    const double w = q[kWidth];
    for (int i = 0; i < values(); ++i) {
      const double d = prob->x[i] - q[kCenter];
      const double g = std::exp(-d * d / (2 * w * w));
      const std::array<double, 4> grad = {q[kHeight] * g * d / (w * w), g, q[kHeight] * g * d * d / (w * w * w), 1.0};
      for (int j = 0; j < inputs(); ++j) jac(i, j) = grad[prob->free[j]] / prob->err[i];
    }
    return 0;
  }
};

}  // namespace

PeakFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& err,
                     const PeakModelInit& init, FitMask mask, double min_err) {
  if (x.size() != y.size() || x.size() != err.size()) throw std::invalid_argument("fit input size mismatch");
  Problem prob{x, y, {}, {init.center, init.height, init.width, init.offset}, {kCenter, kHeight}};
  if (!mask.fix_width) prob.free.push_back(kWidth);
  if (!mask.fix_offset) prob.free.push_back(kOffset);
  if (x.size() <= prob.free.size()) throw std::invalid_argument("degenerate fit window");
  prob.err.reserve(err.size());
  for (double e : err) prob.err.push_back(std::max(e, min_err));

  Eigen::VectorXd p(prob.free.size());
  for (std::size_t i = 0; i < prob.free.size(); ++i) p(i) = prob.fixed[prob.free[i]];

  Functor f{&prob};
  Eigen::LevenbergMarquardt<Functor> lm(f);
  lm.parameters.maxfev = 4000;
  const auto status = lm.minimize(p);

  PeakFit r;
  r.width_fixed = mask.fix_width;
  r.offset_fixed = mask.fix_offset;
  using S = Eigen::LevenbergMarquardtSpace::Status;
  r.converged = status != S::ImproperInputParameters && status != S::TooManyFunctionEvaluation &&
                status != S::UserAsked && p.allFinite();

  const auto q = prob.unpack(p);
  r.center = q[kCenter];
  r.height = q[kHeight];
  r.width = std::abs(q[kWidth]);
  r.offset = q[kOffset];

  Eigen::VectorXd res(x.size());
  f(p, res);
  r.chi2 = res.squaredNorm();
  r.residual_norm = std::sqrt(r.chi2);
  r.dof = static_cast<int>(x.size() - prob.free.size());

  Eigen::MatrixXd jac(x.size(), prob.free.size());
  f.df(p, jac);
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  std::array<double, 4> sd{0, 0, 0, 0};
  if (lu.isInvertible()) {
    const Eigen::MatrixXd cov = lu.inverse() * (r.chi2 / r.dof);
    for (std::size_t i = 0; i < prob.free.size(); ++i) sd[prob.free[i]] = std::sqrt(std::max(0.0, cov(i, i)));
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    for (int i : prob.free) sd[i] = inf;
    r.converged = false;
    r.note = "singular normal matrix";
  }
  r.center_err = sd[kCenter];
  r.height_err = sd[kHeight];
  r.width_err = sd[kWidth];
  r.offset_err = sd[kOffset];
  return r;
}

PeakFit fit_peak(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& err,
                 const PeakFitOptions& opt) {
  if (x.size() < 5) throw std::invalid_argument("need at least five points per peak window");
  // Start at the maximum of a three-point running mean so one outlier cannot
  // pull the initial center.
  std::size_t top = 0;
  double best = -1e300;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1, hi = std::min(i + 1, y.size() - 1);
    double m = 0;
    for (std::size_t j = lo; j <= hi; ++j) m += y[j];
    m /= double(hi - lo + 1);
    if (m > best) {
      best = m;
      top = i;
    }
  }
  PeakModelInit init{x[top], std::max(best - opt.background, 1e-3), opt.initial_width, opt.background};

  const auto sane = [&](const PeakFit& f) {
    return f.converged && std::isfinite(f.center_err) && f.height > 0 && f.offset >= -3 * f.offset_err &&
           f.center >= x.front() && f.center <= x.back();
  };
  // A single set of random times can make the peak several times narrower or
  // wider than nominal, so the plausibility band is wide.
  const auto usable = [&](const PeakFit& f) {
    return sane(f) && f.width > 0.25 * opt.fallback_width && f.width < 4.0 * opt.fallback_width;
  };

  std::vector<PeakFit> tried;
  if (!opt.always_fix_width) {
    tried.push_back(fit_gaussian(x, y, err, init, {}, opt.min_err));
    if (usable(tried.back())) return tried.back();
  }
  init.width = opt.fallback_width;
  tried.push_back(fit_gaussian(x, y, err, init, {true, false}, opt.min_err));
  if (sane(tried.back())) return tried.back();
  init.offset = std::max(opt.background, 0.0);
  tried.push_back(fit_gaussian(x, y, err, init, {true, true}, opt.min_err));
  if (sane(tried.back())) return tried.back();

  PeakFit fit = tried.front();
  for (const auto& f : tried) {
    if (std::isfinite(f.center_err) && f.center >= x.front() && f.center <= x.back()) {
      fit = f;
      break;
    }
  }
  fit.note = fit.center < x.front() || fit.center > x.back() ? "center outside window" : "no plausible fit";
  return fit;
}

}  // namespace cgnet

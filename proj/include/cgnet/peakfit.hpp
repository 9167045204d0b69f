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

// Weighted Gaussian-plus-offset fit:
//   y(E) = offset + height * exp(-(E - center)^2 / (2 width^2)),
// residuals scaled by 1/err. Parameter errors come from the inverse normal
// matrix scaled by chi^2 / dof, so they reflect the observed scatter rather
// than the nominal error bars.

#pragma once

#include <string>
#include <vector>

namespace cgnet {

struct PeakFit {
  double center = 0, center_err = 0;
  double height = 0, height_err = 0;
  double width = 0, width_err = 0;
  double offset = 0, offset_err = 0;
  double chi2 = 0;
  double residual_norm = 0;
  int dof = 0;
  bool width_fixed = false;
  bool offset_fixed = false;
  bool converged = false;
  std::string note;

  double peak_value() const { return offset + height; }
};

struct PeakModelInit {
  double center = 0, height = 0, width = 1, offset = 0;
};

struct FitMask {
  bool fix_width = false;
  bool fix_offset = false;
};

// Single weighted fit; errors below `min_err` are raised to it. Needs more
// points than free parameters.
PeakFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& err,
                     const PeakModelInit& init, FitMask mask = {}, double min_err = 1e-4);

struct PeakFitOptions {
  double background = 0.0;      // initial offset
  double initial_width = 1.0;   // starting width for the free fit
  double fallback_width = 1.0;  // width used when the free width is implausible
  bool always_fix_width = false;
  double min_err = 1e-4;
};

// Initializes at the highest point, fits with free width, falls back to a
// fixed width when the free width leaves [fallback/2, 2*fallback] or the fit
// fails, and pins the offset at 0 if it comes out negative.
PeakFit fit_peak(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& err,
                 const PeakFitOptions& opt);

}  // namespace cgnet

// Copyright 2026 The RBSV Authors
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

#ifndef RBSV_FIT_H
#define RBSV_FIT_H

#include <array>
#include <optional>
#include <vector>

namespace rbsv {

struct DecayPoint {
    double m = 0;
    double value = 0;
    /// Optional per-point standard error; when every point carries a positive
    /// one, weights default to 1/stderr^2.
    double stderr_ = 0;
};

/// Fit of value = A0 + B0 p^m.
struct DecayFit {
    double A0 = 0;
    double B0 = 0;
    double p = 1;
    double residual_rms = 0;
    bool converged = false;
    /// Data carries no decay information (constant values); p set to 1.
    bool degenerate = false;
    /// p ended on the boundary of [0, 1].
    bool at_boundary = false;
    /// A0 or B0 ended on one of its box bounds.
    bool amplitude_at_bound = false;
    int iterations = 0;
    /// Covariance of (A0, B0, p), scaled by the residual variance.
    std::array<std::array<double, 3>, 3> covariance{};
    double p_stderr = 0;
};

struct FitOptions {
    /// Explicit weights, one per point. Overrides stderr-derived weights.
    std::optional<std::vector<double>> weights;
    /// Derive weights from DecayPoint::stderr_ when all are positive.
    bool use_stderr_weights = true;
    /// Box constraints on A0 and B0 as {lower, upper}; unset means free.
    std::optional<std::array<double, 2>> a_bounds;
    std::optional<std::array<double, 2>> b_bounds;
    int max_iterations = 200;
    double step_tolerance = 1e-12;
    int grid_points = 512;
};

/// Least-squares fit of value = A0 + B0 p^m with p in [0, 1]: a grid over p
/// (log-spaced in 1 - p), a linear solve for A0 and B0 at each grid point,
/// then damped Gauss-Newton refinement of all three parameters. Optional box
/// bounds on A0 and B0 are honored by both stages.
DecayFit fit_decay(const std::vector<DecayPoint> &points, const FitOptions &options = {});

/// r = (d - 1)(1 - p)/d.
double r_from_p(double p, double d);

}  // namespace rbsv

#endif

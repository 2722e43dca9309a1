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

#include "rbsv/fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace rbsv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Problem {
    Eigen::ArrayXd m;
    Eigen::ArrayXd v;
    Eigen::ArrayXd w;
    std::array<double, 3> lo{-kInf, -kInf, 0.0};
    std::array<double, 3> hi{kInf, kInf, 1.0};
};

Eigen::ArrayXd powers(const Problem &pr, double p) {
    return pr.m.unaryExpr([p](double m) { return std::pow(p, m); });
}

double weighted_sse(const Problem &pr, double a, double b, double p) {
    Eigen::ArrayXd r = pr.v - a - b * powers(pr, p);
    return (pr.w * r * r).sum();
}

// Minimizes sum w (v - a - b x)^2 over the (a, b) box. The objective is a
// convex quadratic, so when the free minimizer is outside the box the optimum
// lies on an edge, where the 1D problem is solved and clamped.
bool solve_linear(const Problem &pr, double p, double &a, double &b) {
    const Eigen::ArrayXd x = powers(pr, p);
    const double s0 = pr.w.sum(), s1 = (pr.w * x).sum(), s11 = (pr.w * x * x).sum();
    const double t0 = (pr.w * pr.v).sum(), t1 = (pr.w * x * pr.v).sum();
    const double det = s0 * s11 - s1 * s1;
    auto inside = [&](double av, double bv) {
        return av >= pr.lo[0] && av <= pr.hi[0] && bv >= pr.lo[1] && bv <= pr.hi[1];
    };
    if (std::abs(det) > 1e-300 * std::max(1.0, s0 * s11)) {
        const double af = (s11 * t0 - s1 * t1) / det;
        const double bf = (s0 * t1 - s1 * t0) / det;
        if (inside(af, bf)) {
            a = af;
            b = bf;
            return true;
        }
    }
    double best = kInf;
    auto consider = [&](double av, double bv) {
        if (!std::isfinite(av) || !std::isfinite(bv)) {
            return;
        }
        const double sse = weighted_sse(pr, av, bv, p);
        if (sse < best) {
            best = sse;
            a = av;
            b = bv;
        }
    };
    for (double av : {pr.lo[0], pr.hi[0]}) {
        if (std::isfinite(av) && s11 > 0) {
            consider(av, std::clamp((t1 - av * s1) / s11, pr.lo[1], pr.hi[1]));
        }
    }
    for (double bv : {pr.lo[1], pr.hi[1]}) {
        if (std::isfinite(bv)) {
            consider(std::clamp((t0 - bv * s1) / s0, pr.lo[0], pr.hi[0]), bv);
        }
    }
    return std::isfinite(best);
}

Eigen::MatrixXd jacobian(const Problem &pr, double b, double p) {
    Eigen::MatrixXd j(pr.m.size(), 3);
    for (Eigen::Index i = 0; i < pr.m.size(); i++) {
        const double m = pr.m(i);
        j(i, 0) = 1;
        j(i, 1) = std::pow(p, m);
        j(i, 2) = m == 0 ? 0.0 : b * m * std::pow(p, m - 1);
    }
    return j;
}

void check_bounds(const std::optional<std::array<double, 2>> &bounds, const char *name) {
    if (bounds && !((*bounds)[0] <= (*bounds)[1])) {
        throw std::invalid_argument(std::string(name) + " bounds must satisfy lower <= upper");
    }
}

}  // namespace

DecayFit fit_decay(const std::vector<DecayPoint> &points, const FitOptions &options) {
    std::set<double> distinct;
    for (const auto &pt : points) {
        if (!std::isfinite(pt.m) || !std::isfinite(pt.value) || pt.m < 0) {
            throw std::invalid_argument("decay points need finite values and nonnegative lengths");
        }
        distinct.insert(pt.m);
    }
    if (points.size() < 3 || distinct.size() < 3) {
        throw std::invalid_argument("decay fit needs at least 3 points with 3 distinct lengths");
    }
    check_bounds(options.a_bounds, "A0");
    check_bounds(options.b_bounds, "B0");

    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Problem pr{Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd::Ones(n)};
    if (options.a_bounds) {
        pr.lo[0] = (*options.a_bounds)[0];
        pr.hi[0] = (*options.a_bounds)[1];
    }
    if (options.b_bounds) {
        pr.lo[1] = (*options.b_bounds)[0];
        pr.hi[1] = (*options.b_bounds)[1];
    }
    bool all_stderr = options.use_stderr_weights;
    for (Eigen::Index i = 0; i < n; i++) {
        pr.m(i) = points[i].m;
        pr.v(i) = points[i].value;
        all_stderr = all_stderr && points[i].stderr_ > 0;
    }
    if (options.weights) {
        if (options.weights->size() != points.size()) {
            throw std::invalid_argument("need one weight per point");
        }
        for (Eigen::Index i = 0; i < n; i++) {
            if (!((*options.weights)[i] > 0)) {
                throw std::invalid_argument("weights must be positive");
            }
            pr.w(i) = (*options.weights)[i];
        }
    } else if (all_stderr) {
        for (Eigen::Index i = 0; i < n; i++) {
            pr.w(i) = 1 / (points[i].stderr_ * points[i].stderr_);
        }
    }

    DecayFit fit;
    const double scale = pr.v.abs().maxCoeff();
    if (pr.v.maxCoeff() - pr.v.minCoeff() <= 1e-14 * std::max(1.0, scale)) {
        fit.degenerate = true;
        fit.converged = false;
        fit.p = 1;
        fit.A0 = (pr.w * pr.v).sum() / pr.w.sum();
        fit.B0 = 0;
        fit.residual_rms = std::sqrt(((pr.v - fit.A0).square()).mean());
        return fit;
    }

    // Coarse grid: 1 - p log-spaced from 1e-8 to 1.
    std::array<double, 3> theta{0, 0, 1};
    double sse = kInf;
    const int grid = std::max(2, options.grid_points);
    for (int k = 0; k < grid; k++) {
        const double pk = 1 - std::pow(10.0, -8.0 + 8.0 * k / (grid - 1));
        double ak = 0, bk = 0;
        if (!solve_linear(pr, pk, ak, bk)) {
            continue;
        }
        const double s = weighted_sse(pr, ak, bk, pk);
        if (s < sse) {
            sse = s;
            theta = {ak, bk, pk};
        }
    }
    if (!std::isfinite(sse)) {
        throw std::runtime_error("decay fit failed: no grid point admits a linear solve");
    }

    // Levenberg-Marquardt refinement. Parameters sitting on a bound with the
    // descent direction pointing out of the box are held fixed for the step.
    const Eigen::VectorXd sw = pr.w.sqrt().matrix();
    double lambda = 1e-3;
    for (fit.iterations = 0; fit.iterations < options.max_iterations; fit.iterations++) {
        Eigen::MatrixXd jw = sw.asDiagonal() * jacobian(pr, theta[1], theta[2]);
        Eigen::VectorXd rw =
            sw.asDiagonal() * (pr.v - theta[0] - theta[1] * powers(pr, theta[2])).matrix();
        Eigen::Matrix3d jtj = jw.transpose() * jw;
        Eigen::Vector3d g = jw.transpose() * rw;
        std::array<bool, 3> free{};
        for (int i = 0; i < 3; i++) {
            const bool at_lo = theta[i] <= pr.lo[i] && g(i) < 0;
            const bool at_hi = theta[i] >= pr.hi[i] && g(i) > 0;
            free[i] = !(at_lo || at_hi);
        }

        bool improved = false;
        std::array<double, 3> next = theta;
        double next_sse = sse;
        for (int attempt = 0; attempt < 40; attempt++) {
            Eigen::Matrix3d damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            Eigen::Vector3d rhs = g;
            for (int i = 0; i < 3; i++) {
                if (!free[i]) {
                    damped.row(i).setZero();
                    damped.col(i).setZero();
                    damped(i, i) = 1;
                    rhs(i) = 0;
                }
            }
            Eigen::Vector3d step = damped.ldlt().solve(rhs);
            if (!step.allFinite()) {
                lambda *= 10;
                continue;
            }
            for (int i = 0; i < 3; i++) {
                next[i] = std::clamp(theta[i] + step(i), pr.lo[i], pr.hi[i]);
            }
            next_sse = weighted_sse(pr, next[0], next[1], next[2]);
            if (next_sse <= sse) {
                improved = true;
                break;
            }
            lambda *= 10;
        }
        if (!improved) {
            // No descent at any damping: local minimum.
            fit.converged = true;
            break;
        }
        double size = 0, ref = 1;
        for (int i = 0; i < 3; i++) {
            size += std::abs(next[i] - theta[i]);
            ref += std::abs(theta[i]);
        }
        const double previous = sse;
        theta = next;
        sse = next_sse;
        lambda = std::max(lambda / 10, 1e-12);
        if (size <= options.step_tolerance * ref || previous - sse <= 1e-30 * std::max(1.0, previous)) {
            fit.converged = true;
            break;
        }
    }

    fit.A0 = theta[0];
    fit.B0 = theta[1];
    fit.p = theta[2];
    fit.at_boundary = fit.p <= 0 || fit.p >= 1;
    fit.amplitude_at_bound = fit.A0 <= pr.lo[0] || fit.A0 >= pr.hi[0] || fit.B0 <= pr.lo[1] || fit.B0 >= pr.hi[1];
    fit.residual_rms = std::sqrt((pr.v - fit.A0 - fit.B0 * powers(pr, fit.p)).square().mean());

    Eigen::MatrixXd jw = sw.asDiagonal() * jacobian(pr, fit.B0, fit.p);
    Eigen::Matrix3d jtj = jw.transpose() * jw;
    const double dof = static_cast<double>(std::max<Eigen::Index>(1, n - 3));
    Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
    if (lu.isInvertible()) {
        Eigen::Matrix3d cov = lu.inverse() * (sse / dof);
        for (int r = 0; r < 3; r++) {
            for (int c = 0; c < 3; c++) {
                fit.covariance[r][c] = cov(r, c);
            }
        }
        fit.p_stderr = std::sqrt(std::max(0.0, cov(2, 2)));
    } else {
        for (auto &row : fit.covariance) {
            row.fill(std::numeric_limits<double>::quiet_NaN());
        }
        fit.p_stderr = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

double r_from_p(double p, double d) {
    if (!(d >= 2)) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    return (d - 1) * (1 - p) / d;
}

}  // namespace rbsv

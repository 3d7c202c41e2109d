#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rph/binomial.hpp"
#include "rph/homotopy.hpp"
#include "rph/krawczyk.hpp"
#include "rph/patchwork.hpp"
#include "rph/system.hpp"

namespace rph {

enum class PathStatus { success, diverged, step_limit, newton_failure };

inline const char* to_string(PathStatus s) {
    switch (s) {
        case PathStatus::success: return "success";
        case PathStatus::diverged: return "diverged";
        case PathStatus::step_limit: return "step-limit";
        case PathStatus::newton_failure: return "newton-failure";
    }
    return "unknown";
}

struct PathResult {
    PathStatus status = PathStatus::newton_failure;
    Eigen::VectorXd endpoint;
    double final_residual = 0;
    long steps_taken = 0;
    long newton_iters_total = 0;
};

inline constexpr double kDivergenceNorm = 1e12;

/// Track one start solution from t = 0 to t = 1: seed by Newton correction
/// at t_start, then RK4 prediction on the Davidenko field with a Newton
/// corrector and multiplicative step control. The final step lands on t = 1
/// exactly and is polished there.
inline PathResult track_path(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x0,
                             const TrackerOptions& opts) {
    PathResult res;

    if (h.t_independent) {
        // Nothing moves; a single polish at t = 1 settles the path.
        NewtonResult polish = newton_correct(h, x0, 1.0, opts);
        res.steps_taken = 1;
        res.newton_iters_total = polish.iterations;
        res.final_residual = polish.residual;
        res.endpoint = polish.x;
        res.status = polish.converged ? PathStatus::success : PathStatus::newton_failure;
        return res;
    }

    NewtonResult seed = newton_correct(h, x0, opts.t_start, opts);
    res.newton_iters_total += seed.iterations;
    if (!seed.converged) {
        res.endpoint = seed.x;
        res.final_residual = seed.residual;
        res.status = PathStatus::newton_failure;
        return res;
    }

    Eigen::VectorXd x = seed.x;
    double t = opts.t_start;
    double step = opts.initial_step;
    int accepted_in_a_row = 0;
    bool last_reject_singular = false;

    while (t < 1.0) {
        if (res.steps_taken >= opts.max_steps) {
            res.status = PathStatus::step_limit;
            res.endpoint = x;
            return res;
        }
        const double hs = std::min(step, 1.0 - t);
        bool rejected = false;
        bool singular = false;

        Eigen::VectorXd predicted;
        try {
            const Eigen::VectorXd k1 = davidenko_velocity(h, x, t);
            const Eigen::VectorXd k2 = davidenko_velocity(h, x + 0.5 * hs * k1, t + 0.5 * hs);
            const Eigen::VectorXd k3 = davidenko_velocity(h, x + 0.5 * hs * k2, t + 0.5 * hs);
            const Eigen::VectorXd k4 = davidenko_velocity(h, x + hs * k3, t + hs);
            predicted = x + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } catch (const SingularMatrixError&) {
            rejected = true;
            singular = true;
        }

        if (!rejected) {
            NewtonResult corr = newton_correct(h, predicted, t + hs, opts);
            res.newton_iters_total += corr.iterations;
            ++res.steps_taken;
            if (corr.converged) {
                x = corr.x;
                t = t + hs;
                if (x.lpNorm<Eigen::Infinity>() > kDivergenceNorm) {
                    res.status = PathStatus::diverged;
                    res.endpoint = x;
                    return res;
                }
                if (++accepted_in_a_row >= 3) {
                    step *= opts.step_expand;
                    accepted_in_a_row = 0;
                }
                last_reject_singular = false;
                continue;
            }
            rejected = true;
        } else {
            ++res.steps_taken;
        }

        step *= opts.step_shrink;
        accepted_in_a_row = 0;
        last_reject_singular = singular;
        if (step < opts.min_step) {
            res.status = last_reject_singular ? PathStatus::diverged : PathStatus::newton_failure;
            res.endpoint = x;
            return res;
        }
    }

    NewtonResult polish = newton_correct(h, x, 1.0, opts);
    res.newton_iters_total += polish.iterations;
    res.endpoint = polish.x;
    res.final_residual = polish.residual;
    res.status = polish.converged ? PathStatus::success : PathStatus::newton_failure;
    return res;
}

namespace detail {

inline int worker_count(std::size_t jobs) {
    int cap = 0;
    if (const char* env = std::getenv("RPH_THREADS")) cap = std::atoi(env);
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    return std::max(1, std::min<int>(cap, static_cast<int>(jobs)));
}

/// Index-sharded parallel loop; each job writes only its own slot, so the
/// result is schedule-independent.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const int workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int wkr = 0; wkr < workers; ++wkr)
        pool.emplace_back([&, wkr] {
            for (std::size_t i = static_cast<std::size_t>(wkr); i < jobs;
                 i += static_cast<std::size_t>(workers))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

inline double relative_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()});
    return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

} // namespace detail

inline constexpr double kEndpointMergeTolerance = 1e-8;
inline constexpr double kStartResidualTolerance = 1e-12;

struct TrackedPath {
    int cell = 0;
    int start_index = 0;
    Eigen::VectorXd start;
    PathResult result;
};

struct TrackSummary {
    std::vector<Eigen::VectorXd> solutions; // deduplicated success endpoints
    std::vector<TrackedPath> paths;
    std::optional<int> certified; // set when certification was requested
    bool certified_input = false; // patchwork certificate of the input
    std::vector<std::string> warnings;
};

/// The full pipeline: binomial starts from the log-lifting cells, one
/// homotopy per cell, every real start tracked to t = 1. With `certify`,
/// start solutions are checked against their binomial systems and endpoints
/// are Krawczyk-certified as a set against the target.
inline TrackSummary rph_track(const SparseSystem& f, const TrackerOptions& opts = {},
                              bool certify = false, double scale = 1e6) {
    TrackSummary out;

    const Lifting w = log_lifting(f);
    const IntegerLifting wi = integerize(w, scale);
    const auto cells = enumerate_mixed_cells(f, wi);
    const auto bins = binomials_from_cells(f, cells);

    {
        const auto cert = certify_patchwork(f, false, scale);
        out.certified_input = cert.certified;
        if (!cert.certified)
            out.warnings.push_back(
                "input is not certified patchworked; results are heuristic");
    }

    std::vector<RealPolyhedralHomotopy> homotopies;
    homotopies.reserve(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        homotopies.push_back(build_homotopy(f, cells[ci], w, static_cast<int>(ci)));

    std::vector<std::vector<Eigen::VectorXd>> starts(bins.size());
    for (std::size_t ci = 0; ci < bins.size(); ++ci) starts[ci] = solve_binomial_real(bins[ci]);

    for (std::size_t ci = 0; ci < starts.size(); ++ci)
        for (std::size_t k = 0; k < starts[ci].size(); ++k) {
            TrackedPath p;
            p.cell = static_cast<int>(ci);
            p.start_index = static_cast<int>(k);
            p.start = starts[ci][k];
            out.paths.push_back(std::move(p));
        }

    detail::parallel_for(out.paths.size(), [&](std::size_t i) {
        auto& p = out.paths[i];
        p.result = track_path(homotopies[static_cast<std::size_t>(p.cell)], p.start, opts);
    });

    for (const auto& p : out.paths) {
        if (p.result.status != PathStatus::success) {
            out.warnings.push_back("path from cell " + std::to_string(p.cell) + " start " +
                                   std::to_string(p.start_index) + " ended with status " +
                                   to_string(p.result.status));
            continue;
        }
        bool duplicate = false;
        for (const auto& s : out.solutions)
            if (detail::relative_distance(s, p.result.endpoint) < kEndpointMergeTolerance) {
                duplicate = true;
                out.warnings.push_back("two paths reached the same endpoint; merged");
                break;
            }
        if (!duplicate) out.solutions.push_back(p.result.endpoint);
    }

    if (certify) {
        bool starts_ok = true;
        for (const auto& p : out.paths) {
            const auto& b = bins[static_cast<std::size_t>(p.cell)];
            for (int i = 0; i < b.size() && starts_ok; ++i) {
                double lhs = 1.0;
                for (int j = 0; j < b.size(); ++j)
                    lhs *= std::pow(p.start[j],
                                    static_cast<double>(
                                        b.exponent_matrix[static_cast<std::size_t>(i)]
                                                         [static_cast<std::size_t>(j)]));
                if (std::abs(lhs - b.rhs[static_cast<std::size_t>(i)]) >
                    kStartResidualTolerance * std::abs(b.rhs[static_cast<std::size_t>(i)]))
                    starts_ok = false;
            }
            if (starts_ok) {
                const SparseSystem bs = binomial_as_system(b, f.variable_names);
                if (!certify_solution_set(bs, {p.start}, 1).flag) starts_ok = false;
            }
            if (!starts_ok) break;
        }

        const auto set_cert =
            certify_solution_set(f, out.solutions, static_cast<int>(out.paths.size()));
        out.certified = (starts_ok && set_cert.flag == 1) ? 1 : 0;
    }

    return out;
}

} // namespace rph

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "rph/cells.hpp"
#include "rph/errors.hpp"
#include "rph/system.hpp"

namespace rph {

/// H(x,t): each term of the target system carries a factor t^{m_{i,a}},
/// where m is zero exactly on the cell pair and positive elsewhere, so
/// H(.,0) is the cell's binomial and H(.,1) is the target.
struct RealPolyhedralHomotopy {
    SparseSystem target;
    std::vector<std::vector<double>> exponents; // m_{i,a}, shape-congruent
    int source_cell = 0;
    bool t_independent = false; // all exponents zero (target already binomial)
};

/// Build the homotopy for one mixed cell. The exponents come from the
/// un-scaled real lifting: m_{i,a} = v_i - (<a, alpha> + w(a)) with alpha
/// re-solved on `w` from the cell's pairs, and v_i the pair's common value.
inline RealPolyhedralHomotopy build_homotopy(const SparseSystem& f, const MixedCell& cell,
                                             const Lifting& w, int source_cell = 0) {
    const int n = f.n_vars;
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
        const auto [p, q] = cell.pairs[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
            m(i, j) = sup[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] -
                      sup[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
        d[i] = w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] -
               w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
    }
    const Eigen::VectorXd alpha = m.fullPivLu().solve(d);

    RealPolyhedralHomotopy h;
    h.target = f;
    h.source_cell = source_cell;
    h.t_independent = true;
    for (int i = 0; i < n; ++i) {
        const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
        const auto [p, q] = cell.pairs[static_cast<std::size_t>(i)];
        auto lifted = [&](int a) {
            double v = w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
            for (int j = 0; j < n; ++j)
                v += alpha[j] * sup[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
            return v;
        };
        const double v_cell = 0.5 * (lifted(p) + lifted(q));
        std::vector<double> row(sup.size(), 0.0);
        for (int a = 0; a < static_cast<int>(sup.size()); ++a) {
            if (a == p || a == q) continue; // pair exponents are exactly zero
            const double e = v_cell - lifted(a);
            if (e < -1e-9)
                throw ConventionViolationError(
                    "negative homotopy exponent: cell does not match the lifting");
            row[static_cast<std::size_t>(a)] = std::max(e, 0.0);
            if (row[static_cast<std::size_t>(a)] > 0) h.t_independent = false;
        }
        h.exponents.push_back(std::move(row));
    }
    return h;
}

inline double t_power(double t, double m) { return m == 0.0 ? 1.0 : std::pow(t, m); }

inline Eigen::VectorXd evaluate(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x,
                                double t) {
    const int n = h.target.n_vars;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = h.target.polynomials[static_cast<std::size_t>(i)];
        double s = 0.0;
        for (std::size_t a = 0; a < p.support.size(); ++a)
            s += t_power(t, h.exponents[static_cast<std::size_t>(i)][a]) * p.coefficients[a] *
                 monomial_value(p.support[a], x);
        v[i] = s;
    }
    return v;
}

inline void evaluate_with_scale(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x,
                                double t, Eigen::VectorXd& values, Eigen::VectorXd& scales) {
    const int n = h.target.n_vars;
    values.resize(n);
    scales.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = h.target.polynomials[static_cast<std::size_t>(i)];
        double s = 0.0, mag = 0.0;
        for (std::size_t a = 0; a < p.support.size(); ++a) {
            const double term = t_power(t, h.exponents[static_cast<std::size_t>(i)][a]) *
                                p.coefficients[a] * monomial_value(p.support[a], x);
            s += term;
            mag = std::max(mag, std::abs(term));
        }
        values[i] = s;
        scales[i] = mag;
    }
}

inline Eigen::MatrixXd jacobian_x(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x,
                                  double t) {
    const int n = h.target.n_vars;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& p = h.target.polynomials[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < p.support.size(); ++a) {
            const double tp = t_power(t, h.exponents[static_cast<std::size_t>(i)][a]);
            if (tp == 0.0) continue;
            const auto& exps = p.support[a];
            for (int j = 0; j < n; ++j) {
                const int e = exps[static_cast<std::size_t>(j)];
                if (e == 0) continue;
                double dterm = tp * p.coefficients[a] * e * ipow(x[j], e - 1);
                for (int k = 0; k < n; ++k)
                    if (k != j) dterm *= ipow(x[k], exps[static_cast<std::size_t>(k)]);
                jac(i, j) += dterm;
            }
        }
    }
    return jac;
}

/// dH/dt. Terms with zero exponent contribute nothing; requires t > 0 when
/// any exponent lies in (0,1).
inline Eigen::VectorXd dt_derivative(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x,
                                     double t) {
    const int n = h.target.n_vars;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = h.target.polynomials[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < p.support.size(); ++a) {
            const double m = h.exponents[static_cast<std::size_t>(i)][a];
            if (m == 0.0) continue;
            v[i] += m * std::pow(t, m - 1.0) * p.coefficients[a] *
                    monomial_value(p.support[a], x);
        }
    }
    return v;
}

/// The path velocity dx/dt = -(dH/dx)^{-1} dH/dt.
inline Eigen::VectorXd davidenko_velocity(const RealPolyhedralHomotopy& h,
                                          const Eigen::VectorXd& x, double t) {
    const Eigen::MatrixXd jac = jacobian_x(h, x, t);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible())
        throw SingularMatrixError("homotopy Jacobian is singular along the path");
    return lu.solve(-dt_derivative(h, x, t));
}

struct TrackerOptions {
    double t_start = 1e-6;
    double initial_step = 1e-4;
    double min_step = 1e-14;
    double newton_tol = 1e-10;
    int max_newton_iters = 8;
    long max_steps = 100000;
    double step_expand = 2.0;
    double step_shrink = 0.5;
};

struct NewtonResult {
    bool converged = false;
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0;
};

/// Damped-free Newton corrector at fixed t; convergence is measured by the
/// residual relative to the largest monomial magnitude per equation.
inline NewtonResult newton_correct(const RealPolyhedralHomotopy& h, const Eigen::VectorXd& x0,
                                   double t, const TrackerOptions& opts) {
    NewtonResult res;
    res.x = x0;
    Eigen::VectorXd values, scales;
    for (int it = 0; it <= opts.max_newton_iters; ++it) {
        evaluate_with_scale(h, res.x, t, values, scales);
        double rel = 0;
        for (int i = 0; i < values.size(); ++i)
            rel = std::max(rel, std::abs(values[i]) / std::max(1.0, scales[i]));
        res.residual = rel;
        res.iterations = it;
        if (rel < opts.newton_tol) {
            res.converged = true;
            return res;
        }
        if (it == opts.max_newton_iters) break;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jacobian_x(h, res.x, t));
        if (!lu.isInvertible()) return res;
        res.x -= lu.solve(values);
    }
    return res;
}

} // namespace rph

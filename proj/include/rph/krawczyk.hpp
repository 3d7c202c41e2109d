#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "rph/interval.hpp"
#include "rph/system.hpp"

namespace rph {

struct CertificateOutcome {
    bool certified = false;
    IntervalBox box;           // the verified enclosure when certified
    double shrink_factor = 0;  // max componentwise width(K)/width(X)
    double radius_used = 0;    // relative radius that produced `box`
    std::string reason;        // failure diagnostics
};

inline constexpr double kRadiusFloor = 1e-12;
inline constexpr std::array<double, 3> kRadiusLadder = {1e-8, 1e-6, 1e-4};

/// Krawczyk operator test on X = x +- radius (relative per component,
/// floored absolutely): K(X) = y - Y F(y) + (I - Y J(X))(X - y) with y the
/// midpoint and Y the approximate inverse midpoint Jacobian. K contracting
/// into the interior of X proves a unique zero of F in X.
inline CertificateOutcome krawczyk_test(const SparseSystem& f, const Eigen::VectorXd& x,
                                        double radius) {
    const int n = f.n_vars;
    CertificateOutcome out;
    out.radius_used = radius;

    IntervalBox box;
    for (int i = 0; i < n; ++i) {
        const double r = std::max(radius * std::abs(x[i]), kRadiusFloor);
        box.components.emplace_back(x[i] - r, x[i] + r);
    }

    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = box[i].midpoint();

    const Eigen::MatrixXd jac_mid = jacobian(f, y);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac_mid);
    if (!lu.isInvertible()) {
        out.reason = "singular midpoint Jacobian";
        out.box = box;
        return out;
    }
    const Eigen::MatrixXd inv = lu.inverse();

    const IntervalBox f_mid = interval_eval(f, point_box(y));
    const auto jac_box = interval_jacobian(f, box);

    IntervalBox k;
    k.components.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // y_i - (Y F(y))_i
        Interval acc(y[i]);
        for (int j = 0; j < n; ++j) acc = acc - inv(i, j) * f_mid[j];
        // + sum_j (I - Y J(X))_ij (X_j - y_j)
        for (int j = 0; j < n; ++j) {
            Interval entry(i == j ? 1.0 : 0.0);
            for (int l = 0; l < n; ++l)
                entry = entry - inv(i, l) * jac_box[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
            acc = acc + entry * (box[j] - Interval(y[j]));
        }
        k[i] = acc;
    }

    out.shrink_factor = 0;
    bool inside = true;
    for (int i = 0; i < n; ++i) {
        if (!box[i].contains_in_interior(k[i])) inside = false;
        out.shrink_factor = std::max(out.shrink_factor, k[i].width() / box[i].width());
    }
    out.certified = inside;
    out.box = inside ? k : box;
    if (!inside) out.reason = "Krawczyk image not contained in the box interior";
    return out;
}

struct SetCertificate {
    std::vector<CertificateOutcome> outcomes;
    int flag = 0;
};

/// Certify a whole solution list: each point must certify at some radius of
/// the ladder, the verified boxes must be pairwise disjoint, and the count
/// must match the expected one. Any shortfall yields flag 0.
inline SetCertificate certify_solution_set(const SparseSystem& f,
                                           const std::vector<Eigen::VectorXd>& points,
                                           int expected_count) {
    SetCertificate cert;
    bool all_ok = true;
    for (const auto& p : points) {
        CertificateOutcome best;
        for (double r : kRadiusLadder) {
            best = krawczyk_test(f, p, r);
            if (best.certified) break;
        }
        if (!best.certified) all_ok = false;
        cert.outcomes.push_back(std::move(best));
    }
    for (std::size_t i = 0; i < cert.outcomes.size() && all_ok; ++i)
        for (std::size_t j = i + 1; j < cert.outcomes.size(); ++j)
            if (!boxes_disjoint(cert.outcomes[i].box, cert.outcomes[j].box)) {
                all_ok = false;
                break;
            }
    if (static_cast<int>(points.size()) != expected_count) all_ok = false;
    cert.flag = all_ok ? 1 : 0;
    return cert;
}

} // namespace rph

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rph/system.hpp"

namespace rph {

/// Closed interval with conservative endpoint handling: every arithmetic
/// operation widens each endpoint outward by two ulps, which dominates the
/// rounding of the underlying IEEE operation. No rounding-mode switches.
struct Interval {
    double lo = 0;
    double hi = 0;

    Interval() = default;
    Interval(double point) : lo(point), hi(point) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool contains_in_interior(const Interval& other) const {
        return lo < other.lo && other.hi < hi;
    }
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
};

namespace detail {

inline double down2(double v) {
    v = std::nextafter(v, -std::numeric_limits<double>::infinity());
    return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

inline double up2(double v) {
    v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return std::nextafter(v, std::numeric_limits<double>::infinity());
}

inline Interval inflate(double lo, double hi) { return Interval(down2(lo), up2(hi)); }

} // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
    return detail::inflate(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return detail::inflate(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return detail::inflate(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline Interval operator*(double s, const Interval& a) { return Interval(s) * a; }

inline Interval operator+(double s, const Interval& a) { return Interval(s) + a; }

/// x^e for nonnegative integer e; even powers of straddling intervals
/// bottom out at zero instead of going negative.
inline Interval pow_int(const Interval& a, int e) {
    if (e == 0) return Interval(1.0);
    if (e == 1) return a;
    const bool even = e % 2 == 0;
    if (even && a.lo < 0 && a.hi > 0) {
        const double m = a.mag();
        return detail::inflate(0.0, std::pow(m, e));
    }
    double plo = std::pow(a.lo, e), phi = std::pow(a.hi, e);
    if (plo > phi) std::swap(plo, phi);
    return detail::inflate(plo, phi);
}

struct IntervalBox {
    std::vector<Interval> components;

    int size() const { return static_cast<int>(components.size()); }
    Interval& operator[](int i) { return components[static_cast<std::size_t>(i)]; }
    const Interval& operator[](int i) const { return components[static_cast<std::size_t>(i)]; }
};

inline IntervalBox point_box(const Eigen::VectorXd& x) {
    IntervalBox b;
    b.components.reserve(static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) b.components.emplace_back(x[i]);
    return b;
}

inline bool boxes_disjoint(const IntervalBox& a, const IntervalBox& b) {
    for (int i = 0; i < a.size(); ++i)
        if (a[i].hi < b[i].lo || b[i].hi < a[i].lo) return true;
    return false;
}

/// Componentwise enclosure of F over the box X.
inline IntervalBox interval_eval(const SparseSystem& f, const IntervalBox& x) {
    IntervalBox out;
    for (const auto& p : f.polynomials) {
        Interval sum(0.0);
        for (std::size_t t = 0; t < p.support.size(); ++t) {
            Interval term(p.coefficients[t]);
            for (int j = 0; j < f.n_vars; ++j)
                term = term * pow_int(x[j], p.support[t][static_cast<std::size_t>(j)]);
            sum = sum + term;
        }
        out.components.push_back(sum);
    }
    return out;
}

/// Termwise interval enclosure of the Jacobian over X.
inline std::vector<std::vector<Interval>> interval_jacobian(const SparseSystem& f,
                                                            const IntervalBox& x) {
    std::vector<std::vector<Interval>> jac(
        static_cast<std::size_t>(f.n_vars),
        std::vector<Interval>(static_cast<std::size_t>(f.n_vars), Interval(0.0)));
    for (int i = 0; i < f.n_vars; ++i) {
        const auto& p = f.polynomials[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t < p.support.size(); ++t) {
            const auto& a = p.support[t];
            for (int j = 0; j < f.n_vars; ++j) {
                const int e = a[static_cast<std::size_t>(j)];
                if (e == 0) continue;
                Interval d(p.coefficients[t] * e);
                d = d * pow_int(x[j], e - 1);
                for (int k = 0; k < f.n_vars; ++k)
                    if (k != j) d = d * pow_int(x[k], a[static_cast<std::size_t>(k)]);
                jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + d;
            }
        }
    }
    return jac;
}

} // namespace rph

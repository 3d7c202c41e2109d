#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rph/errors.hpp"
#include "rph/exact.hpp"

namespace rph {

/// One sparse polynomial: parallel lists of exponent vectors and nonzero
/// coefficients, kept in source order.
struct SparsePolynomial {
    std::vector<std::vector<int>> support;
    std::vector<double> coefficients;

    int term_count() const { return static_cast<int>(support.size()); }
};

/// A square system of sparse real polynomials.
struct SparseSystem {
    int n_vars = 0;
    std::vector<SparsePolynomial> polynomials;
    std::vector<std::string> variable_names;
};

/// Real lifting values, shape-congruent with the system's supports.
struct Lifting {
    std::vector<std::vector<double>> values;
};

/// Merge duplicate exponent vectors (summing coefficients into the first
/// occurrence) and drop zero coefficients. Source order is preserved.
inline SparsePolynomial canonicalize(const SparsePolynomial& p) {
    SparsePolynomial out;
    for (std::size_t t = 0; t < p.support.size(); ++t) {
        auto it = std::find(out.support.begin(), out.support.end(), p.support[t]);
        if (it == out.support.end()) {
            out.support.push_back(p.support[t]);
            out.coefficients.push_back(p.coefficients[t]);
        } else {
            out.coefficients[static_cast<std::size_t>(it - out.support.begin())] +=
                p.coefficients[t];
        }
    }
    SparsePolynomial cleaned;
    for (std::size_t t = 0; t < out.support.size(); ++t) {
        if (out.coefficients[t] != 0.0) {
            cleaned.support.push_back(out.support[t]);
            cleaned.coefficients.push_back(out.coefficients[t]);
        }
    }
    return cleaned;
}

/// Checked constructor: canonicalizes every polynomial and enforces the
/// square-system and two-term invariants.
inline SparseSystem make_system(std::vector<std::string> variable_names,
                                std::vector<SparsePolynomial> polynomials) {
    SparseSystem f;
    f.n_vars = static_cast<int>(variable_names.size());
    f.variable_names = std::move(variable_names);
    if (static_cast<int>(polynomials.size()) != f.n_vars)
        throw DimensionError("system is not square: " +
                             std::to_string(polynomials.size()) + " polynomials, " +
                             std::to_string(f.n_vars) + " variables");
    for (auto& p : polynomials) {
        for (const auto& a : p.support) {
            if (static_cast<int>(a.size()) != f.n_vars)
                throw DimensionError("exponent vector length does not match variable count");
            for (int e : a)
                if (e < 0)
                    throw ParseError("negative exponent in support");
        }
        SparsePolynomial c = canonicalize(p);
        if (c.term_count() < 2)
            throw DegenerateSystemError(
                "polynomial has fewer than 2 terms after merging duplicates");
        f.polynomials.push_back(std::move(c));
    }
    return f;
}

/// x^e for nonnegative integer e, with 0^0 = 1.
inline double ipow(double x, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

inline double monomial_value(const std::vector<int>& a, const Eigen::VectorXd& x) {
    double r = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) r *= ipow(x[static_cast<int>(j)], a[j]);
    return r;
}

inline Eigen::VectorXd evaluate(const SparseSystem& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd v(f.n_vars);
    for (int i = 0; i < f.n_vars; ++i) {
        const auto& p = f.polynomials[static_cast<std::size_t>(i)];
        double s = 0.0;
        for (std::size_t t = 0; t < p.support.size(); ++t)
            s += p.coefficients[t] * monomial_value(p.support[t], x);
        v[i] = s;
    }
    return v;
}

/// Evaluation together with the per-polynomial magnitude of the largest
/// monomial, the natural scale for relative residuals.
inline void evaluate_with_scale(const SparseSystem& f, const Eigen::VectorXd& x,
                                Eigen::VectorXd& values, Eigen::VectorXd& scales) {
    values.resize(f.n_vars);
    scales.resize(f.n_vars);
    for (int i = 0; i < f.n_vars; ++i) {
        const auto& p = f.polynomials[static_cast<std::size_t>(i)];
        double s = 0.0, m = 0.0;
        for (std::size_t t = 0; t < p.support.size(); ++t) {
            const double term = p.coefficients[t] * monomial_value(p.support[t], x);
            s += term;
            m = std::max(m, std::abs(term));
        }
        values[i] = s;
        scales[i] = m;
    }
}

/// max_i |f_i(x)| / max(1, largest monomial of f_i at x).
inline double relative_residual(const SparseSystem& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd v, s;
    evaluate_with_scale(f, x, v, s);
    double r = 0.0;
    for (int i = 0; i < f.n_vars; ++i)
        r = std::max(r, std::abs(v[i]) / std::max(1.0, s[i]));
    return r;
}

inline Eigen::MatrixXd jacobian(const SparseSystem& f, const Eigen::VectorXd& x) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(f.n_vars, f.n_vars);
    for (int i = 0; i < f.n_vars; ++i) {
        const auto& p = f.polynomials[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t < p.support.size(); ++t) {
            const auto& a = p.support[t];
            for (int j = 0; j < f.n_vars; ++j) {
                const int e = a[static_cast<std::size_t>(j)];
                if (e == 0) continue;
                double d = p.coefficients[t] * e * ipow(x[j], e - 1);
                for (int k = 0; k < f.n_vars; ++k)
                    if (k != j) d *= ipow(x[k], a[static_cast<std::size_t>(k)]);
                jac(i, j) += d;
            }
        }
    }
    return jac;
}

/// The log-absolute-value lifting: each support point gets ln|c_a|.
inline Lifting log_lifting(const SparseSystem& f) {
    Lifting w;
    for (const auto& p : f.polynomials) {
        std::vector<double> row;
        row.reserve(p.coefficients.size());
        for (double c : p.coefficients) row.push_back(std::log(std::abs(c)));
        w.values.push_back(std::move(row));
    }
    return w;
}

/// Warnings for supports whose affine span is below full dimension. Such
/// systems are accepted but the toolchain cannot promise to see every
/// real solution.
inline std::vector<std::string> support_dimension_warnings(const SparseSystem& f) {
    std::vector<std::string> warnings;
    for (int i = 0; i < f.n_vars; ++i) {
        const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
        IMat diffs;
        for (std::size_t t = 1; t < sup.size(); ++t) {
            std::vector<BigInt> row;
            for (int j = 0; j < f.n_vars; ++j)
                row.push_back(BigInt(sup[t][static_cast<std::size_t>(j)] -
                                     sup[0][static_cast<std::size_t>(j)]));
            diffs.push_back(std::move(row));
        }
        if (static_cast<int>(int_rank(diffs)) < f.n_vars)
            warnings.push_back("support of polynomial " + std::to_string(i + 1) +
                               " is not full-dimensional");
    }
    return warnings;
}

/// Round-trippable decimal form of a double; integral values print bare.
inline std::string format_double(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Human-readable monomial form, e.g. "-24000*y + x^3".
inline std::string format_terms(const std::vector<std::pair<double, std::vector<int>>>& terms,
                                const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const double c = terms[t].first;
        const auto& a = terms[t].second;
        const bool negative = c < 0;
        if (t == 0)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[j];
            if (a[j] > 1) mono += "^" + std::to_string(a[j]);
        }
        const double mag = std::abs(c);
        if (mono.empty())
            out += format_double(mag);
        else if (mag == 1.0)
            out += mono;
        else
            out += format_double(mag) + "*" + mono;
    }
    return out;
}

inline std::string format_polynomial(const SparsePolynomial& p,
                                     const std::vector<std::string>& names) {
    std::vector<std::pair<double, std::vector<int>>> terms;
    for (std::size_t t = 0; t < p.support.size(); ++t)
        terms.emplace_back(p.coefficients[t], p.support[t]);
    return format_terms(terms, names);
}

} // namespace rph

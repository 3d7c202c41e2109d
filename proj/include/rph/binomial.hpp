#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rph/cells.hpp"
#include "rph/errors.hpp"
#include "rph/exact.hpp"
#include "rph/system.hpp"

namespace rph {

/// A binomial start system x^E = rhs, one equation per polynomial. Row i of
/// E is a_p - a_q for the cell pair of polynomial i and rhs_i = -c_q / c_p,
/// so each equation is equivalent to c_p x^{a_p} + c_q x^{a_q} = 0.
struct BinomialSystem {
    struct Term {
        double coefficient;
        std::vector<int> exponents;
    };

    std::vector<std::vector<std::int64_t>> exponent_matrix;
    std::vector<double> rhs;
    /// The two surviving terms per equation in source order, for printing.
    std::vector<std::array<Term, 2>> display_terms;
    int source_cell = 0;

    int size() const { return static_cast<int>(exponent_matrix.size()); }
};

/// Smith normal form U * E * V = S with unimodular U, V and S diagonal with
/// positive entries forming a divisibility chain (zeros trail for singular E).
struct SmithDecomposition {
    IMat u, s, v;
};

inline SmithDecomposition smith_normal_form(const IMat& e) {
    const std::size_t n = e.size();
    IMat a = e;
    IMat u = identity_matrix(n);
    IMat v = identity_matrix(n);

    auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& factor) {
        for (std::size_t j = 0; j < n; ++j) {
            a[dst][j] += factor * a[src][j];
            u[dst][j] += factor * u[src][j];
        }
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& factor) {
        for (std::size_t i = 0; i < n; ++i) {
            a[i][dst] += factor * a[i][src];
            v[i][dst] += factor * v[i][src];
        }
    };

    for (std::size_t s = 0; s < n; ++s) {
        while (true) {
            // smallest nonzero |entry| of the trailing submatrix as pivot
            std::size_t pr = s, pc = s;
            BigInt best = 0;
            for (std::size_t i = s; i < n; ++i)
                for (std::size_t j = s; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    BigInt mag = a[i][j] < 0 ? BigInt(-a[i][j]) : a[i][j];
                    if (best == 0 || mag < best) {
                        best = mag;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0) {
                s = n; // trailing block is all zero
                break;
            }
            if (pr != s) {
                std::swap(a[pr], a[s]);
                std::swap(u[pr], u[s]);
            }
            if (pc != s)
                for (std::size_t i = 0; i < n; ++i) {
                    std::swap(a[i][pc], a[i][s]);
                    std::swap(v[i][pc], v[i][s]);
                }

            bool clean = true;
            for (std::size_t i = s + 1; i < n; ++i) {
                if (a[i][s] == 0) continue;
                const BigInt q = a[i][s] / a[s][s];
                if (q != 0) row_op(i, s, -q);
                if (a[i][s] != 0) clean = false;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (a[s][j] == 0) continue;
                const BigInt q = a[s][j] / a[s][s];
                if (q != 0) col_op(j, s, -q);
                if (a[s][j] != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the rest of the submatrix for the chain
            bool divides = true;
            for (std::size_t i = s + 1; i < n && divides; ++i)
                for (std::size_t j = s + 1; j < n; ++j)
                    if (a[i][j] % a[s][s] != 0) {
                        row_op(s, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s >= n) break;
    }

    for (std::size_t i = 0; i < n; ++i)
        if (a[i][i] < 0)
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = -a[i][j];
                u[i][j] = -u[i][j];
            }

    return SmithDecomposition{std::move(u), std::move(a), std::move(v)};
}

/// One binomial system per mixed cell, in cell order.
inline std::vector<BinomialSystem> binomials_from_cells(const SparseSystem& f,
                                                        const std::vector<MixedCell>& cells) {
    std::vector<BinomialSystem> out;
    for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
        const auto& cell = cells[static_cast<std::size_t>(ci)];
        BinomialSystem b;
        b.source_cell = ci;
        for (int i = 0; i < f.n_vars; ++i) {
            const auto& poly = f.polynomials[static_cast<std::size_t>(i)];
            const auto [p, q] = cell.pairs[static_cast<std::size_t>(i)];
            std::vector<std::int64_t> row(static_cast<std::size_t>(f.n_vars));
            for (int j = 0; j < f.n_vars; ++j)
                row[static_cast<std::size_t>(j)] =
                    poly.support[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] -
                    poly.support[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
            b.exponent_matrix.push_back(std::move(row));
            b.rhs.push_back(-poly.coefficients[static_cast<std::size_t>(q)] /
                            poly.coefficients[static_cast<std::size_t>(p)]);
            const int first = std::min(p, q), second = std::max(p, q);
            b.display_terms.push_back(
                {BinomialSystem::Term{poly.coefficients[static_cast<std::size_t>(first)],
                                      poly.support[static_cast<std::size_t>(first)]},
                 BinomialSystem::Term{poly.coefficients[static_cast<std::size_t>(second)],
                                      poly.support[static_cast<std::size_t>(second)]}});
        }
        out.push_back(std::move(b));
    }
    return out;
}

/// Start systems from the mixed cells of the integerized log-absolute-value
/// lifting of F.
inline std::vector<BinomialSystem> generate_binomials(const SparseSystem& f,
                                                      double scale = 1e6) {
    const auto cells = enumerate_mixed_cells(f, integerize(log_lifting(f), scale));
    return binomials_from_cells(f, cells);
}

/// The surviving two-term polynomials of a start system as a SparseSystem
/// (same variables, original coefficients, source term order).
inline SparseSystem binomial_as_system(const BinomialSystem& b,
                                       const std::vector<std::string>& variable_names) {
    std::vector<SparsePolynomial> polys;
    for (const auto& terms : b.display_terms) {
        SparsePolynomial p;
        for (const auto& t : terms) {
            p.support.push_back(t.exponents);
            p.coefficients.push_back(t.coefficient);
        }
        polys.push_back(std::move(p));
    }
    return make_system(variable_names, std::move(polys));
}

namespace detail {

/// Nonzero real in sign/log-magnitude form; products of large powers stay
/// representable this way.
struct SignedLog {
    int sign = 1;   // +1 or -1
    double log = 0; // ln |value|
};

inline SignedLog signed_log(double v) {
    return SignedLog{v < 0 ? -1 : 1, std::log(std::abs(v))};
}

inline bool is_odd(const BigInt& v) { return v % 2 != 0; }

struct DiagonalData {
    std::vector<std::int64_t> s;     // Smith diagonal
    std::vector<SignedLog> b_prime;  // U-transformed right-hand side
    IMat v;                          // back-transform x = y^V
};

inline DiagonalData diagonalize(const BinomialSystem& b) {
    const std::size_t n = static_cast<std::size_t>(b.size());
    IMat e(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i][j] = b.exponent_matrix[i][j];
    if (determinant(e) == 0)
        throw SingularMatrixError("binomial exponent matrix is singular");

    auto snf = smith_normal_form(e);
    DiagonalData d;
    d.s.resize(n);
    d.b_prime.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.s[i] = to_int64(snf.s[i][i], "Smith diagonal entry");
        SignedLog acc{1, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const BigInt& exp = snf.u[i][j];
            const SignedLog base = signed_log(b.rhs[j]);
            acc.log += exp.convert_to<double>() * base.log;
            if (base.sign < 0 && is_odd(exp)) acc.sign = -acc.sign;
        }
        d.b_prime[i] = acc;
    }
    d.v = std::move(snf.v);
    return d;
}

} // namespace detail

/// Number of solutions of x^E = rhs in the real torus, from the parity and
/// sign pattern of the diagonalized system y^S = b'.
inline std::int64_t count_binomial_real(const BinomialSystem& b) {
    const auto d = detail::diagonalize(b);
    std::int64_t count = 1;
    for (std::size_t i = 0; i < d.s.size(); ++i) {
        if (d.s[i] % 2 != 0) continue; // odd: exactly one real root
        if (d.b_prime[i].sign < 0) return 0;
        count *= 2;
    }
    return count;
}

/// All solutions of x^E = rhs in the real torus, via y^S = b' and the
/// monomial change of coordinates given by V. Deterministic order:
/// lexicographic by coordinates.
inline std::vector<Eigen::VectorXd> solve_binomial_real(const BinomialSystem& b) {
    const std::size_t n = static_cast<std::size_t>(b.size());
    const auto d = detail::diagonalize(b);

    // roots per diagonal equation y_i^{s_i} = b'_i
    std::vector<std::vector<detail::SignedLog>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double root_log = d.b_prime[i].log / static_cast<double>(d.s[i]);
        if (d.s[i] % 2 != 0) {
            choices[i] = {detail::SignedLog{d.b_prime[i].sign, root_log}};
        } else if (d.b_prime[i].sign > 0) {
            choices[i] = {detail::SignedLog{1, root_log}, detail::SignedLog{-1, root_log}};
        } else {
            return {};
        }
    }

    std::vector<Eigen::VectorXd> solutions;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        Eigen::VectorXd x(static_cast<int>(n));
        for (std::size_t k = 0; k < n; ++k) {
            detail::SignedLog acc{1, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                const BigInt& exp = d.v[k][j];
                const auto& y = choices[j][pick[j]];
                acc.log += exp.convert_to<double>() * y.log;
                if (y.sign < 0 && detail::is_odd(exp)) acc.sign = -acc.sign;
            }
            x[static_cast<int>(k)] = acc.sign * std::exp(acc.log);
        }
        solutions.push_back(std::move(x));

        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++pick[k] < choices[k].size()) break;
            pick[k] = 0;
            if (k == 0) {
                k = n + 1;
                break;
            }
        }
        if (k == n + 1 || n == 0) break;
    }

    std::sort(solutions.begin(), solutions.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b2) {
                  for (int i = 0; i < a.size(); ++i) {
                      if (a[i] < b2[i]) return true;
                      if (a[i] > b2[i]) return false;
                  }
                  return false;
              });
    return solutions;
}

} // namespace rph

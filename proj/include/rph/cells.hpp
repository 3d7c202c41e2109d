#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rph/errors.hpp"
#include "rph/exact.hpp"
#include "rph/system.hpp"

namespace rph {

/// The joint point configuration: every support point a of polynomial i
/// becomes (a, e_{n+i}) in dimension n_vars + n_polys.
struct CayleyConfiguration {
    std::vector<std::vector<int>> points;
    std::vector<std::pair<int, int>> block_offsets; // [begin, end) per polynomial

    int total_points() const { return static_cast<int>(points.size()); }
};

inline CayleyConfiguration cayley(const SparseSystem& f) {
    CayleyConfiguration c;
    const int n = f.n_vars;
    const int m = static_cast<int>(f.polynomials.size());
    for (int i = 0; i < m; ++i) {
        const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
        const int begin = c.total_points();
        for (const auto& a : sup) {
            std::vector<int> pt(static_cast<std::size_t>(n + m), 0);
            for (int j = 0; j < n; ++j) pt[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)];
            pt[static_cast<std::size_t>(n + i)] = 1;
            c.points.push_back(std::move(pt));
        }
        c.block_offsets.emplace_back(begin, c.total_points());
    }
    return c;
}

/// Integer lifting obtained by scaling and rounding a real lifting. The
/// combinatorial predicates below are exact on these values.
struct IntegerLifting {
    std::vector<std::vector<std::int64_t>> values;
    double scale = 1e6;
};

/// Round half away from zero, per llround.
inline IntegerLifting integerize(const Lifting& w, double scale = 1e6) {
    if (!(scale > 0)) throw Error("integerize: scale must be positive");
    IntegerLifting out;
    out.scale = scale;
    for (const auto& row : w.values) {
        std::vector<std::int64_t> irow;
        irow.reserve(row.size());
        for (double v : row) {
            const double s = scale * v;
            if (!std::isfinite(s) || std::abs(s) > 4.6e18)
                throw OverflowError("scaled lifting value out of integer range");
            irow.push_back(std::llround(s));
        }
        out.values.push_back(std::move(irow));
    }
    return out;
}

/// A mixed cell: one index pair per support, the exact facet normal of the
/// lifted configuration, and the edge-difference volume.
struct MixedCell {
    /// (p, q) indices into A_i, oriented so that exponent[p] > exponent[q]
    /// lexicographically.
    std::vector<std::pair<int, int>> pairs;
    RationalVector normal; // alpha, exact, w.r.t. the inducing integer lifting
    std::int64_t volume = 0;
};

inline bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace detail {

/// Edge rows a_p - a_q and lifting differences w_q - w_p for a candidate.
inline void candidate_system(const SparseSystem& f, const IntegerLifting& w,
                             const std::vector<std::pair<int, int>>& pairs,
                             IMat& m, std::vector<BigInt>& d) {
    const int n = f.n_vars;
    m.assign(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
    d.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
        const auto [p, q] = pairs[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                sup[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] -
                sup[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
        d[static_cast<std::size_t>(i)] = BigInt(w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)]) -
                                         BigInt(w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]);
    }
}

} // namespace detail

/// Enumerate all mixed cells of the subdivision induced by `w`, under the
/// convention that a cell pair attains the strict maximum of
/// <a, alpha> + w(a) within each support. Candidates are visited in
/// lexicographic order of their index pairs, which fixes the output order.
///
/// Throws DegenerateLiftingError when a candidate's supporting value is
/// attained by a third point (the subdivision is not fine).
inline std::vector<MixedCell> enumerate_mixed_cells(const SparseSystem& f,
                                                    const IntegerLifting& w) {
    const int n = f.n_vars;
    std::vector<std::vector<std::pair<int, int>>> pair_choices(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int count = f.polynomials[static_cast<std::size_t>(i)].term_count();
        for (int a = 0; a < count; ++a)
            for (int b = a + 1; b < count; ++b)
                pair_choices[static_cast<std::size_t>(i)].emplace_back(a, b);
    }

    std::vector<MixedCell> cells;
    std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> pairs(static_cast<std::size_t>(n));
    IMat m;
    std::vector<BigInt> d;
    while (true) {
        for (int i = 0; i < n; ++i)
            pairs[static_cast<std::size_t>(i)] = pair_choices[static_cast<std::size_t>(i)][odo[static_cast<std::size_t>(i)]];

        detail::candidate_system(f, w, pairs, m, d);
        BigInt det;
        auto alpha = solve_exact(m, d, &det);
        if (alpha) {
            // Facet test: every non-pair point must lie strictly below the
            // common value of the pair. Scaled by den > 0:
            //   <a - a_p, num> + den * (w_a - w_p) < 0.
            bool violated = false;
            bool tie = false;
            for (int i = 0; i < n && !violated; ++i) {
                const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
                const auto [p, q] = pairs[static_cast<std::size_t>(i)];
                for (int a = 0; a < static_cast<int>(sup.size()); ++a) {
                    if (a == p || a == q) continue;
                    BigInt diff = 0;
                    for (int j = 0; j < n; ++j)
                        diff += BigInt(sup[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] -
                                       sup[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)]) *
                                alpha->num[static_cast<std::size_t>(j)];
                    diff += alpha->den *
                            (BigInt(w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]) -
                             BigInt(w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]));
                    if (diff > 0) {
                        violated = true;
                        break;
                    }
                    if (diff == 0) tie = true;
                }
            }
            if (!violated) {
                if (tie)
                    throw DegenerateLiftingError(
                        "lifting is not generic: a third point attains a cell's supporting value");
                MixedCell cell;
                cell.pairs = pairs;
                for (int i = 0; i < n; ++i) {
                    auto& [p, q] = cell.pairs[static_cast<std::size_t>(i)];
                    const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
                    if (!lex_greater(sup[static_cast<std::size_t>(p)], sup[static_cast<std::size_t>(q)]))
                        std::swap(p, q);
                }
                cell.normal = *alpha;
                BigInt vol = det < 0 ? -det : det;
                cell.volume = to_int64(vol, "cell volume");
                cells.push_back(std::move(cell));
            }
        }

        // advance odometer
        int k = n - 1;
        while (k >= 0) {
            if (++odo[static_cast<std::size_t>(k)] < pair_choices[static_cast<std::size_t>(k)].size()) break;
            odo[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return cells;
}

inline constexpr std::uint64_t kDefaultMixedVolumeSeed = 2024;
inline constexpr int kMixedVolumeRetryCap = 32;

/// Bernstein bound: sum of mixed-cell volumes under a random integer
/// lifting, retried with fresh liftings when a draw is degenerate.
inline std::int64_t mixed_volume(const SparseSystem& f,
                                 std::uint64_t seed = kDefaultMixedVolumeSeed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, (std::int64_t(1) << 31) - 1);
    for (int attempt = 0; attempt < kMixedVolumeRetryCap; ++attempt) {
        IntegerLifting w;
        w.scale = 1.0;
        for (const auto& p : f.polynomials) {
            std::vector<std::int64_t> row(p.support.size());
            for (auto& v : row) v = dist(rng);
            w.values.push_back(std::move(row));
        }
        try {
            const auto cells = enumerate_mixed_cells(f, w);
            std::int64_t total = 0;
            for (const auto& c : cells) total += c.volume;
            return total;
        } catch (const DegenerateLiftingError&) {
            continue;
        }
    }
    throw GenericityFailureError("random liftings kept producing ties");
}

/// A generating functional of the dual mixed cell cone: a primitive integer
/// vector zeta on the flat Cayley coordinates with <zeta, w> > 0 for the
/// inducing lifting w.
struct DualConeGenerator {
    std::vector<std::int64_t> zeta;
    int cell_index = 0;
    int poly_index = 0;
    int excluded_point = 0;
};

/// Facet functionals of all cells, expressed in a symbolic lifting u:
/// for cell sigma, support i, excluded point a, the slack
///   v_{sigma,i}(u) - (<a, alpha(u)> + u_a)
/// is linear in u because alpha(u) solves the cell's equality system.
/// Denominators are cleared, vectors made primitive and deduplicated.
inline std::vector<DualConeGenerator> dual_cone_generators(const SparseSystem& f,
                                                           const std::vector<MixedCell>& cells,
                                                           const IntegerLifting& w) {
    const int n = f.n_vars;
    std::vector<int> offsets;
    int total = 0;
    for (const auto& p : f.polynomials) {
        offsets.push_back(total);
        total += p.term_count();
    }

    std::vector<std::int64_t> w_flat;
    w_flat.reserve(static_cast<std::size_t>(total));
    for (const auto& row : w.values)
        for (std::int64_t v : row) w_flat.push_back(v);

    std::vector<DualConeGenerator> gens;
    std::set<std::vector<std::int64_t>> seen;
    for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
        const auto& cell = cells[static_cast<std::size_t>(ci)];
        IMat mt(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
            const auto [p, q] = cell.pairs[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j)
                mt[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    sup[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] -
                    sup[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < n; ++i) {
            const auto& sup = f.polynomials[static_cast<std::size_t>(i)].support;
            const auto [pi, qi] = cell.pairs[static_cast<std::size_t>(i)];
            for (int a = 0; a < static_cast<int>(sup.size()); ++a) {
                if (a == pi || a == qi) continue;
                // r solves M^T r = a_p - a; then the functional is
                //   u_p - u_a + sum_j r_j (u_{q_j} - u_{p_j}).
                std::vector<BigInt> rhs(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                    rhs[static_cast<std::size_t>(j)] =
                        sup[static_cast<std::size_t>(pi)][static_cast<std::size_t>(j)] -
                        sup[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
                auto r = solve_exact(mt, rhs);
                if (!r)
                    throw SingularMatrixError("cell equality system is singular");

                std::vector<BigInt> z(static_cast<std::size_t>(total), 0);
                z[static_cast<std::size_t>(offsets[static_cast<std::size_t>(i)] + pi)] += r->den;
                z[static_cast<std::size_t>(offsets[static_cast<std::size_t>(i)] + a)] -= r->den;
                for (int j = 0; j < n; ++j) {
                    const auto [pj, qj] = cell.pairs[static_cast<std::size_t>(j)];
                    z[static_cast<std::size_t>(offsets[static_cast<std::size_t>(j)] + qj)] += r->num[static_cast<std::size_t>(j)];
                    z[static_cast<std::size_t>(offsets[static_cast<std::size_t>(j)] + pj)] -= r->num[static_cast<std::size_t>(j)];
                }
                make_primitive(z);

                BigInt dot = 0;
                for (int k = 0; k < total; ++k)
                    dot += z[static_cast<std::size_t>(k)] * BigInt(w_flat[static_cast<std::size_t>(k)]);
                if (dot <= 0)
                    throw Error("dual cone functional not positive on the inducing lifting");

                std::vector<std::int64_t> zeta(static_cast<std::size_t>(total));
                for (int k = 0; k < total; ++k)
                    zeta[static_cast<std::size_t>(k)] = to_int64(z[static_cast<std::size_t>(k)], "zeta entry");
                if (seen.insert(zeta).second) {
                    DualConeGenerator g;
                    g.zeta = std::move(zeta);
                    g.cell_index = ci;
                    g.poly_index = i;
                    g.excluded_point = a;
                    gens.push_back(std::move(g));
                }
            }
        }
    }
    return gens;
}

} // namespace rph

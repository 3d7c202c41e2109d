#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "rph/binomial.hpp"
#include "rph/cells.hpp"
#include "rph/system.hpp"

namespace rph {

/// One evaluated certificate inequality: lhs = <Log|C|, zeta>,
/// rhs = ||zeta||_1 * ln|A|, slack = lhs - rhs.
struct PatchworkMargin {
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
};

struct PatchworkCertificate {
    bool certified = false;
    std::vector<PatchworkMargin> margins;
    std::optional<std::int64_t> real_root_count;
};

/// Slacks closer to zero than this (times ||zeta||_1) are treated as
/// failures; the certificate must never lean on roundoff.
inline constexpr double kPatchworkSlackGuard = 1e-9;

inline PatchworkMargin patchwork_margin(const std::vector<std::int64_t>& zeta,
                                        const std::vector<double>& log_c_flat,
                                        int cayley_point_count) {
    PatchworkMargin m;
    double norm1 = 0;
    for (std::size_t k = 0; k < zeta.size(); ++k) {
        m.lhs += static_cast<double>(zeta[k]) * log_c_flat[k];
        norm1 += std::abs(static_cast<double>(zeta[k]));
    }
    m.rhs = norm1 * std::log(static_cast<double>(cayley_point_count));
    m.slack = m.lhs - m.rhs;
    return m;
}

/// Decide whether the log-absolute-value lifting guarantees that tracking
/// the real binomial starts reaches every real torus solution. The test is
/// sufficient only: every dual-cone generator must clear its inequality
/// with positive slack.
inline PatchworkCertificate certify_patchwork(const SparseSystem& f,
                                              bool count_real = false,
                                              double scale = 1e6) {
    const Lifting w = log_lifting(f);
    const IntegerLifting wi = integerize(w, scale);
    const auto cells = enumerate_mixed_cells(f, wi);
    const auto gens = dual_cone_generators(f, cells, wi);

    std::vector<double> log_c_flat;
    for (const auto& row : w.values)
        for (double v : row) log_c_flat.push_back(v);
    const int point_count = cayley(f).total_points();

    PatchworkCertificate cert;
    cert.certified = true;
    for (const auto& g : gens) {
        PatchworkMargin m = patchwork_margin(g.zeta, log_c_flat, point_count);
        double norm1 = 0;
        for (std::int64_t z : g.zeta) norm1 += std::abs(static_cast<double>(z));
        if (!(m.slack > kPatchworkSlackGuard * norm1)) cert.certified = false;
        cert.margins.push_back(m);
    }

    if (count_real && cert.certified) {
        std::int64_t total = 0;
        for (const auto& b : binomials_from_cells(f, cells)) total += count_binomial_real(b);
        cert.real_root_count = total;
    }
    return cert;
}

} // namespace rph

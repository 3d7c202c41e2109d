#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rph/errors.hpp"

namespace rph {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix in row-major nested vectors. Sizes here are tiny
/// (cell matrices are n x n with n the variable count), so no effort is
/// spent on storage layout.
using IMat = std::vector<std::vector<BigInt>>;

inline IMat identity_matrix(std::size_t n) {
    IMat m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    IMat out(rows, std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IMat a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k;
            while (pivot < n && a[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Rank over the rationals, by fraction-free elimination with pivoting.
inline std::size_t int_rank(IMat a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[row], a[pivot]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            const BigInt f = a[i][col];
            const BigInt g = a[row][col];
            for (std::size_t j = col; j < cols; ++j)
                a[i][j] = a[i][j] * g - a[row][j] * f;
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Exact solution of a square system M x = d, stored as x_j = num[j] / den
/// with den > 0 and gcd(num..., den) = 1.
struct RationalVector {
    std::vector<BigInt> num;
    BigInt den = 1;
};

/// Cramer solve. Returns nullopt when det(M) == 0. `raw_det` receives the
/// signed determinant of M before any normalization.
inline std::optional<RationalVector> solve_exact(const IMat& m,
                                                 const std::vector<BigInt>& d,
                                                 BigInt* raw_det = nullptr) {
    const std::size_t n = m.size();
    const BigInt det = determinant(m);
    if (raw_det) *raw_det = det;
    if (det == 0) return std::nullopt;

    RationalVector x;
    x.num.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        IMat mj = m;
        for (std::size_t i = 0; i < n; ++i) mj[i][j] = d[i];
        x.num[j] = determinant(mj);
    }
    x.den = det;
    if (x.den < 0) {
        x.den = -x.den;
        for (auto& v : x.num) v = -v;
    }
    BigInt g = x.den;
    for (const auto& v : x.num) g = boost::multiprecision::gcd(g, v);
    if (g > 1) {
        x.den /= g;
        for (auto& v : x.num) v /= g;
    }
    return x;
}

/// Divide an integer vector by the gcd of its entries (no-op on the zero
/// vector). The sign of the vector is preserved.
inline void make_primitive(std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& e : v) g = boost::multiprecision::gcd(g, e);
    if (g > 1)
        for (auto& e : v) e /= g;
}

inline std::int64_t to_int64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError(std::string(what) + " exceeds 64-bit range");
    return v.convert_to<std::int64_t>();
}

} // namespace rph

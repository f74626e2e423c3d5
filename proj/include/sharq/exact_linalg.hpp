#pragma once

#include <array>
#include <span>
#include <vector>

#include "sharq/rational.hpp"

namespace sharq::linalg {

using Vec3 = std::array<Integer, 3>;
using Mat3 = std::array<std::array<Integer, 3>, 3>;
using Mat2 = std::array<std::array<Integer, 2>, 2>;

inline Integer dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Integer det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Integer det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(a, cross(b, c));
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t[r][c] = m[c][r];
    return t;
}

inline Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 p{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Integer acc = 0;
            for (int k = 0; k < 3; ++k) acc += a[r][k] * b[k][c];
            p[r][c] = acc;
        }
    return p;
}

inline Vec3 mul_vec(const Mat3& m, const Vec3& v) {
    Vec3 out;
    for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
    return out;
}

/// Classical adjugate: m * adjugate(m) = det(m) * I.
inline Mat3 adjugate(const Mat3& m) {
    Mat3 a;
    a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return a;
}

/// Divides by the gcd and makes the first nonzero entry positive.
/// Returns false when every entry is zero.
inline bool canonicalize(std::span<Integer> v) {
    Integer g = 0;
    for (const Integer& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0) return false;
    for (Integer& x : v) x /= g;
    for (const Integer& x : v) {
        if (x != 0) {
            if (x < 0)
                for (Integer& y : v) y = -y;
            break;
        }
    }
    return true;
}

/// Scales a rational vector to coprime integers (canonical sign applied).
inline std::vector<Integer> clear_denominators(std::span<const Rational> v) {
    Integer l = 1;
    for (const Rational& r : v) l = boost::multiprecision::lcm(l, denominator(r));
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const Rational& r : v) out.push_back(numerator(r) * (l / denominator(r)));
    canonicalize(out);
    return out;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

struct NullSpace {
    int rank = 0;
    // Integer basis vectors of the kernel, each canonicalized.
    std::vector<std::vector<Integer>> basis;
};

/// Exact kernel of an m x n integer matrix via rational Gauss-Jordan.
inline NullSpace nullspace(const std::vector<std::vector<Integer>>& rows, size_t ncols) {
    std::vector<std::vector<Rational>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Rational> rr(ncols);
        for (size_t c = 0; c < ncols && c < r.size(); ++c) rr[c] = Rational(r[c]);
        a.push_back(std::move(rr));
    }

    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < a.size(); ++col) {
        size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[row], a[piv]);
        Rational inv = a[row][col];
        for (size_t c = col; c < ncols; ++c) a[row][c] /= inv;
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t c = col; c < ncols; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }

    NullSpace ns;
    ns.rank = static_cast<int>(pivot_col.size());
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> x(ncols, Rational(0));
        x[free_col] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][free_col];
        ns.basis.push_back(clear_denominators(x));
    }
    return ns;
}

}  // namespace sharq::linalg

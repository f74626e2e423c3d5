#pragma once

#include <array>

#include "sharq/projmap.hpp"

namespace sharq {

/// Conic section as a symmetric 3x3 rational quadratic form, stored with
/// canonical coprime integer entries. Degenerate conics (det = 0) are
/// representable values; operations that need invertibility refuse them.
class Conic {
public:
    explicit Conic(linalg::Mat3 sym) : m_(detail::canonical_matrix(std::move(sym), "conic")) {
        for (int r = 0; r < 3; ++r)
            for (int c = r + 1; c < 3; ++c)
                if (m_[r][c] != m_[c][r]) raise(Err::InvalidConfig, "conic matrix must be symmetric");
        degenerate_ = (linalg::det3(m_) == 0);
    }

    /// From coefficients [a,b,c,d,e,f] of a x^2 + b y^2 + c w^2 + 2d xy + 2e xw + 2f yw.
    static Conic from_coefficients(const std::array<Rational, 6>& q) {
        auto ints = linalg::clear_denominators(q);
        return Conic(linalg::Mat3{{{ints[0], ints[3], ints[4]},
                                   {ints[3], ints[1], ints[5]},
                                   {ints[4], ints[5], ints[2]}}});
    }

    std::array<Integer, 6> coefficients() const {
        return {m_[0][0], m_[1][1], m_[2][2], m_[0][1], m_[0][2], m_[1][2]};
    }

    const linalg::Mat3& matrix() const { return m_; }
    bool degenerate() const { return degenerate_; }
    bool operator==(const Conic& o) const { return m_ == o.m_; }

    Integer evaluate(const HPoint& p) const {
        return linalg::dot(p.triple(), linalg::mul_vec(m_, p.triple()));
    }

private:
    linalg::Mat3 m_;
    bool degenerate_;
};

inline bool on_conic(const HPoint& p, const Conic& c) { return c.evaluate(p) == 0; }

/// Unique conic through five points (NotUnique when the 5x6 incidence system
/// has rank below 5). The null vector is assembled from the six maximal minors.
inline Conic conic_through_five(const std::array<HPoint, 5>& pts) {
    std::array<std::array<Integer, 6>, 5> rows;
    for (size_t r = 0; r < 5; ++r) {
        const auto& v = pts[r].triple();
        rows[r] = {v[0] * v[0], v[1] * v[1], v[2] * v[2],
                   2 * v[0] * v[1], 2 * v[0] * v[2], 2 * v[1] * v[2]};
    }

    std::array<Integer, 6> sol;
    bool all_zero = true;
    for (size_t drop = 0; drop < 6; ++drop) {
        std::vector<std::vector<Integer>> minor(5, std::vector<Integer>(5));
        for (size_t r = 0; r < 5; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < 6; ++c) {
                if (c == drop) continue;
                minor[r][cc++] = rows[r][c];
            }
        }
        Integer d = linalg::bareiss_det(std::move(minor));
        sol[drop] = (drop % 2 == 0) ? d : -d;
        if (d != 0) all_zero = false;
    }
    if (all_zero)
        raise(Err::NotUnique, "five points do not determine a unique conic (rank below 5)");

    return Conic(linalg::Mat3{{{sol[0], sol[3], sol[4]},
                               {sol[3], sol[1], sol[5]},
                               {sol[4], sol[5], sol[2]}}});
}

inline HLine polar(const HPoint& p, const Conic& c) {
    linalg::Vec3 mp = linalg::mul_vec(c.matrix(), p.triple());
    if (mp[0] == 0 && mp[1] == 0 && mp[2] == 0)
        raise(Err::PolarUndefined, "point is a singular point of the degenerate conic");
    return HLine(mp);
}

inline HPoint pole(const HLine& l, const Conic& c) {
    if (c.degenerate()) raise(Err::DegenerateConic, "pole requires a non-degenerate conic");
    return HPoint(linalg::mul_vec(linalg::adjugate(c.matrix()), l.triple()));
}

/// True when each vertex's polar is the opposite side. Collinear or repeated
/// vertices are not a triangle and yield false.
inline bool is_self_polar_triangle(const HPoint& p, const HPoint& q, const HPoint& r,
                                   const Conic& c) {
    if (c.degenerate()) raise(Err::DegenerateConic, "self-polarity requires a non-degenerate conic");
    if (collinear(p, q, r)) return false;
    return polar(p, c) == join(q, r) && polar(q, c) == join(p, r) && polar(r, c) == join(p, q);
}

/// Pascal line of the hexagon h0 h1 h2 h3 h4 h5 inscribed in c: the line
/// through the meets of the three opposite-side pairs.
inline HLine pascal_line(const std::array<HPoint, 6>& h, const Conic& c) {
    if (c.degenerate()) raise(Err::DegenerateConic, "Pascal line requires a non-degenerate conic");
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j)
            if (h[i] == h[j]) raise(Err::DegenerateHexagon, "hexagon vertices must be distinct");
    for (const HPoint& p : h)
        if (!on_conic(p, c)) raise(Err::NotOnConic, "hexagon vertex " + p.str() + " is off the conic");

    HPoint p0 = meet(join(h[0], h[1]), join(h[3], h[4]));
    HPoint p1 = meet(join(h[1], h[2]), join(h[4], h[5]));
    HPoint p2 = meet(join(h[2], h[3]), join(h[5], h[0]));
    if (!collinear(p0, p1, p2))
        raise(Err::ConcurrencyViolation, "opposite-side meets are not collinear");

    if (p0 != p1) return join(p0, p1);
    if (p0 != p2) return join(p0, p2);
    raise(Err::DegenerateHexagon, "all three opposite-side meets coincide");
}

/// Second intersection of the conic with the line through on_point (on the
/// conic) and aux. Exact: the residual root of the restricted quadratic.
inline HPoint second_intersection(const Conic& c, const HPoint& on_point, const HPoint& aux) {
    if (!on_conic(on_point, c)) raise(Err::NotOnConic, "base point must lie on the conic");
    if (on_point == aux) raise(Err::IdenticalPoints, "auxiliary point equals the base point");
    Integer qq = c.evaluate(aux);
    Integer pq = linalg::dot(on_point.triple(), linalg::mul_vec(c.matrix(), aux.triple()));
    if (qq == 0) {
        if (pq == 0) raise(Err::DegenerateConic, "whole line lies on the conic");
        return aux;
    }
    linalg::Vec3 x;
    for (size_t i = 0; i < 3; ++i) x[i] = qq * on_point.triple()[i] - 2 * pq * aux.triple()[i];
    return HPoint(x);
}

enum class ConicType { ellipse, parabola, hyperbola };

/// Affine type by the sign of the x,y-minor; the test used to split SVG paths.
inline ConicType affine_conic_type(const Conic& c) {
    if (c.degenerate()) raise(Err::DegenerateConic, "affine type undefined for degenerate conics");
    const auto& m = c.matrix();
    Integer disc = m[0][0] * m[1][1] - m[0][1] * m[0][1];
    if (disc > 0) return ConicType::ellipse;
    if (disc == 0) return ConicType::parabola;
    return ConicType::hyperbola;
}

}  // namespace sharq

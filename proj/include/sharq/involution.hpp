#pragma once

#include "sharq/sharygin.hpp"

namespace sharq {

/// Homogeneous parameter (alpha : beta) on a line chart, canonical like the
/// coordinate triples: coprime, first nonzero entry positive.
struct ChartParam {
    Integer alpha, beta;

    ChartParam(Integer a, Integer b) : alpha(std::move(a)), beta(std::move(b)) {
        std::array<Integer, 2> v{alpha, beta};
        if (!linalg::canonicalize(v)) raise(Err::InvalidConfig, "chart parameter must be nonzero");
        alpha = v[0];
        beta = v[1];
    }

    bool operator==(const ChartParam&) const = default;
    std::string str() const { return "(" + alpha.str() + " : " + beta.str() + ")"; }
};

/// Coordinate chart on a line: every point P on the line has a unique
/// parameter (alpha : beta) with P = alpha * base0 + beta * base1.
class LineChart {
public:
    LineChart(HLine line, HPoint base0, HPoint base1)
        : line_(std::move(line)), base0_(std::move(base0)), base1_(std::move(base1)) {
        if (base0_ == base1_) raise(Err::InvalidConfig, "chart base points must be distinct");
        if (!incident(base0_, line_) || !incident(base1_, line_))
            raise(Err::NotOnLine, "chart base points must lie on the chart line");
    }

    const HLine& line() const { return line_; }
    const HPoint& base0() const { return base0_; }
    const HPoint& base1() const { return base1_; }
    bool operator==(const LineChart&) const = default;

private:
    HLine line_;
    HPoint base0_, base1_;
};

inline ChartParam chart_param(const LineChart& chart, const HPoint& p) {
    if (!incident(p, chart.line())) raise(Err::NotOnLine, "point " + p.str() + " is off the chart line");
    auto [alpha, beta] =
        detail::pencil_coordinates(p.triple(), chart.base0().triple(), chart.base1().triple());
    return ChartParam(std::move(alpha), std::move(beta));
}

inline HPoint chart_point(const LineChart& chart, const ChartParam& t) {
    linalg::Vec3 v;
    for (size_t c = 0; c < 3; ++c)
        v[c] = t.alpha * chart.base0().triple()[c] + t.beta * chart.base1().triple()[c];
    return HPoint(v);
}

namespace detail {

inline linalg::Mat2 canonical_mat2(linalg::Mat2 m) {
    std::array<Integer, 4> flat{m[0][0], m[0][1], m[1][0], m[1][1]};
    if (!linalg::canonicalize(flat)) raise(Err::InvalidConfig, "2x2 matrix must be nonzero");
    return {{{flat[0], flat[1]}, {flat[2], flat[3]}}};
}

inline Integer det2(const linalg::Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

}  // namespace detail

/// Involution of a line in chart coordinates: a nonsingular 2x2 matrix whose
/// square is a scalar multiple of the identity.
class LineInvolution {
public:
    LineInvolution(LineChart chart, linalg::Mat2 m)
        : chart_(std::move(chart)), m_(detail::canonical_mat2(std::move(m))) {
        if (detail::det2(m_) == 0) raise(Err::InconsistentPairs, "involution matrix is singular");
        Integer off0 = m_[0][0] * m_[0][1] + m_[0][1] * m_[1][1];
        Integer off1 = m_[1][0] * m_[0][0] + m_[1][1] * m_[1][0];
        Integer d00 = m_[0][0] * m_[0][0] + m_[0][1] * m_[1][0];
        Integer d11 = m_[1][0] * m_[0][1] + m_[1][1] * m_[1][1];
        if (off0 != 0 || off1 != 0 || d00 != d11)
            raise(Err::NotInvolution, "matrix square is not a scalar multiple of the identity");
    }

    const LineChart& chart() const { return chart_; }
    const linalg::Mat2& matrix() const { return m_; }
    bool operator==(const LineInvolution&) const = default;

    ChartParam apply(const ChartParam& t) const {
        return ChartParam(m_[0][0] * t.alpha + m_[0][1] * t.beta,
                          m_[1][0] * t.alpha + m_[1][1] * t.beta);
    }

private:
    LineChart chart_;
    linalg::Mat2 m_;
};

/// Fits the involution swapping p1 <-> q1 and p2 <-> q2 (a pair with p == q
/// pins a fixed point). The involution law is checked after the linear solve.
inline LineInvolution involution_from_pairs(const LineChart& chart,
                                            std::pair<HPoint, HPoint> pair1,
                                            std::pair<HPoint, HPoint> pair2) {
    auto as_pair = [&](const HPoint& p) { return chart_param(chart, p); };
    ChartParam p1 = as_pair(pair1.first), q1 = as_pair(pair1.second);
    ChartParam p2 = as_pair(pair2.first), q2 = as_pair(pair2.second);

    auto same_pair = [](const ChartParam& a1, const ChartParam& b1, const ChartParam& a2,
                        const ChartParam& b2) {
        return (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2);
    };
    if (same_pair(p1, q1, p2, q2))
        raise(Err::InconsistentPairs, "the two point pairs must be distinct as pairs");

    if (p1 == q1 && p2 == q2) {
        // Two fixed points F1 != F2: conjugate diag(1, -1) by the basis (F1, F2).
        const Integer &a = p1.alpha, &b = p1.beta, &c = p2.alpha, &d = p2.beta;
        linalg::Mat2 m{{{a * d + c * b, -2 * a * c}, {2 * b * d, -(b * c + d * a)}}};
        return LineInvolution(chart, m);
    }

    // Row of the condition T * p ~ q for T = [[a, b], [c, d]].
    auto row = [](const ChartParam& p, const ChartParam& q) {
        return std::vector<Integer>{p.alpha * q.beta, p.beta * q.beta, -p.alpha * q.alpha,
                                    -p.beta * q.alpha};
    };
    std::vector<std::vector<Integer>> rows;
    rows.push_back(row(p1, q1));
    if (!(p1 == q1)) rows.push_back(row(q1, p1));
    rows.push_back(row(p2, q2));
    if (!(p2 == q2)) rows.push_back(row(q2, p2));

    auto ns = linalg::nullspace(rows, 4);
    if (ns.basis.size() != 1)
        raise(Err::InconsistentPairs, "pair conditions do not determine a unique projectivity");
    const auto& t = ns.basis[0];
    return LineInvolution(chart, linalg::Mat2{{{t[0], t[1]}, {t[2], t[3]}}});
}

inline HPoint apply_involution(const LineInvolution& inv, const HPoint& p) {
    return chart_point(inv.chart(), inv.apply(chart_param(inv.chart(), p)));
}

inline bool is_conjugate_pair(const LineInvolution& inv, const HPoint& p, const HPoint& q) {
    return apply_involution(inv, p) == q;
}

/// The involution the three opposite-side pairs of the quadrangle cut on g,
/// fitted from (U_12, U_34) and (U_13, U_24) and checked on (U_14, U_23).
inline LineInvolution pappus_desargues_involution(const QLPair& ql) {
    UPoints u = u_points(ql);

    // Canonical chart: the meets of g with the two coordinate axes when they
    // are usable and distinct, else U_12 and U_13.
    auto chart = [&]() -> LineChart {
        const HLine y_axis(Integer(1), Integer(0), Integer(0));
        const HLine x_axis(Integer(0), Integer(1), Integer(0));
        if (ql.g() != y_axis && ql.g() != x_axis) {
            HPoint b0 = meet(ql.g(), y_axis);
            HPoint b1 = meet(ql.g(), x_axis);
            if (b0 != b1) return LineChart(ql.g(), b0, b1);
        }
        return LineChart(ql.g(), u.at(1, 2), u.at(1, 3));
    }();

    LineInvolution inv =
        involution_from_pairs(chart, {u.at(1, 2), u.at(3, 4)}, {u.at(1, 3), u.at(2, 4)});
    if (!is_conjugate_pair(inv, u.at(1, 4), u.at(2, 3)))
        raise(Err::ThirdPairMismatch, "fitted involution does not map U_14 to U_23");
    return inv;
}

}  // namespace sharq

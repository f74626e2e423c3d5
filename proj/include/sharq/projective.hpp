#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>

#include "sharq/exact_linalg.hpp"

namespace sharq {

namespace detail {

inline linalg::Vec3 canonical_triple(linalg::Vec3 v, const char* what) {
    if (!linalg::canonicalize(v)) raise(Err::InvalidConfig, std::string(what) + " must not be the zero triple");
    return v;
}

inline linalg::Vec3 triple_from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                          const char* what) {
    std::array<Rational, 3> r{a, b, c};
    auto ints = linalg::clear_denominators(r);
    linalg::Vec3 v{ints[0], ints[1], ints[2]};
    if (v[0] == 0 && v[1] == 0 && v[2] == 0)
        raise(Err::InvalidConfig, std::string(what) + " must not be the zero triple");
    return v;
}

inline std::string triple_str(const linalg::Vec3& v, char open, char close) {
    std::string s;
    s += open;
    s += v[0].str() + " : " + v[1].str() + " : " + v[2].str();
    s += close;
    return s;
}

}  // namespace detail

/// Point of the extended Euclidean plane in homogeneous coordinates (x : y : w).
/// Stored canonically: coprime integers with the first nonzero entry positive,
/// so operator== is projective equality.
class HPoint {
public:
    HPoint(Integer x, Integer y, Integer w)
        : v_(detail::canonical_triple({std::move(x), std::move(y), std::move(w)}, "point")) {}
    HPoint(const Rational& x, const Rational& y, const Rational& w)
        : v_(detail::triple_from_rationals(x, y, w, "point")) {}
    explicit HPoint(linalg::Vec3 v) : v_(detail::canonical_triple(std::move(v), "point")) {}

    const Integer& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const linalg::Vec3& triple() const { return v_; }
    bool operator==(const HPoint&) const = default;

    std::string str() const { return detail::triple_str(v_, '(', ')'); }

private:
    linalg::Vec3 v_;
};

/// Line u0*x + u1*y + u2*w = 0, canonicalized the same way as HPoint.
class HLine {
public:
    HLine(Integer u0, Integer u1, Integer u2)
        : v_(detail::canonical_triple({std::move(u0), std::move(u1), std::move(u2)}, "line")) {}
    HLine(const Rational& u0, const Rational& u1, const Rational& u2)
        : v_(detail::triple_from_rationals(u0, u1, u2, "line")) {}
    explicit HLine(linalg::Vec3 v) : v_(detail::canonical_triple(std::move(v), "line")) {}

    const Integer& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const linalg::Vec3& triple() const { return v_; }
    bool operator==(const HLine&) const = default;

    std::string str() const { return detail::triple_str(v_, '[', ']'); }

private:
    linalg::Vec3 v_;
};

/// The infinite line.
inline HLine omega() { return HLine(Integer(0), Integer(0), Integer(1)); }

inline HLine join(const HPoint& p, const HPoint& q) {
    if (p == q) raise(Err::IdenticalPoints, "join requires two distinct points, got " + p.str());
    return HLine(linalg::cross(p.triple(), q.triple()));
}

inline HPoint meet(const HLine& l, const HLine& m) {
    if (l == m) raise(Err::IdenticalLines, "meet requires two distinct lines, got " + l.str());
    return HPoint(linalg::cross(l.triple(), m.triple()));
}

inline bool incident(const HPoint& p, const HLine& l) {
    return linalg::dot(p.triple(), l.triple()) == 0;
}

inline bool collinear(const HPoint& p, const HPoint& q, const HPoint& r) {
    return linalg::det3(p.triple(), q.triple(), r.triple()) == 0;
}

/// True when all points in the span lie on one line (trivially true for < 3).
inline bool collinear(std::span<const HPoint> pts) {
    size_t second = 1;
    if (pts.size() < 3) return true;
    while (second < pts.size() && pts[second] == pts[0]) ++second;
    if (second >= pts.size()) return true;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (i == second) continue;
        if (!collinear(pts[0], pts[second], pts[i])) return false;
    }
    return true;
}

inline bool concurrent(const HLine& l, const HLine& m, const HLine& n) {
    return linalg::det3(l.triple(), m.triple(), n.triple()) == 0;
}

/// True when all lines share a point; identical lines count as sharing.
inline bool concurrent(std::span<const HLine> lines) {
    size_t second = 1;
    if (lines.size() < 3) return true;
    while (second < lines.size() && lines[second] == lines[0]) ++second;
    if (second >= lines.size()) return true;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (i == second) continue;
        if (!concurrent(lines[0], lines[second], lines[i])) return false;
    }
    return true;
}

namespace detail {

// Coordinates (alpha : beta) of P in the pencil alpha*A + beta*B, valid for
// collinear P, A, B with A != B. Uses a fixed nonzero component of A x B.
inline std::pair<Integer, Integer> pencil_coordinates(const linalg::Vec3& p, const linalg::Vec3& a,
                                                      const linalg::Vec3& b) {
    linalg::Vec3 ab = linalg::cross(a, b);
    int pivot = 0;
    while (pivot < 3 && ab[static_cast<size_t>(pivot)] == 0) ++pivot;
    linalg::Vec3 pb = linalg::cross(p, b);
    linalg::Vec3 pa = linalg::cross(p, a);
    return {pb[static_cast<size_t>(pivot)], -pa[static_cast<size_t>(pivot)]};
}

}  // namespace detail

/// Value of a cross-ratio: an exact rational or the point at infinity of the
/// parameter line. Stored as a coprime pair (num : den) with den >= 0.
class CrossRatio {
public:
    CrossRatio(Integer num, Integer den) {
        if (num == 0 && den == 0) raise(Err::DegenerateTuple, "cross-ratio 0/0 is undefined");
        std::array<Integer, 2> v{std::move(num), std::move(den)};
        linalg::canonicalize(v);
        if (v[1] < 0) {
            v[0] = -v[0];
            v[1] = -v[1];
        }
        num_ = v[0];
        den_ = v[1];
    }
    explicit CrossRatio(const Rational& r) : CrossRatio(numerator(r), denominator(r)) {}

    static CrossRatio infinity() { return CrossRatio(Integer(1), Integer(0)); }

    bool is_infinity() const { return den_ == 0; }
    Rational value() const {
        if (is_infinity()) raise(Err::DegenerateTuple, "cross-ratio is infinite");
        return Rational(num_, den_);
    }
    CrossRatio reciprocal() const { return CrossRatio(den_, num_); }

    bool operator==(const CrossRatio&) const = default;
    bool operator==(const Rational& r) const { return !is_infinity() && value() == r; }
    bool operator==(int n) const { return !is_infinity() && value() == n; }

    std::string str() const { return is_infinity() ? "inf" : format_rational(Rational(num_, den_)); }

private:
    Integer num_, den_;
};

/// Cross-ratio (A,B; C,D) = ((c-a)(d-b)) / ((c-b)(d-a)) in any affine chart of
/// the common line; A and B serve as the base points of the parametrization.
inline CrossRatio cross_ratio(const HPoint& a, const HPoint& b, const HPoint& c, const HPoint& d) {
    if (a == b || c == d) raise(Err::DegenerateTuple, "cross-ratio needs A != B and C != D");
    // With A = B or C = D already excluded, fewer than three distinct points
    // means {C, D} == {A, B}.
    if ((c == a && d == b) || (c == b && d == a))
        raise(Err::DegenerateTuple, "cross-ratio needs at least three distinct points");
    if (!collinear(a, b, c) || !collinear(a, b, d))
        raise(Err::NotCollinear, "cross-ratio arguments must be collinear");

    auto [ac, bc] = detail::pencil_coordinates(c.triple(), a.triple(), b.triple());
    auto [ad, bd] = detail::pencil_coordinates(d.triple(), a.triple(), b.triple());
    return CrossRatio(bc * ad, ac * bd);
}

/// The point D with (A,B; C,D) = -1.
inline HPoint harmonic_conjugate(const HPoint& a, const HPoint& b, const HPoint& c) {
    if (a == b) raise(Err::DegenerateTuple, "harmonic conjugate needs distinct base points");
    if (c == a || c == b)
        raise(Err::CoincidesWithEndpoint, "harmonic conjugate undefined for C on {A, B}");
    if (!collinear(a, b, c)) raise(Err::NotCollinear, "harmonic conjugate arguments must be collinear");

    auto [alpha, beta] = detail::pencil_coordinates(c.triple(), a.triple(), b.triple());
    linalg::Vec3 d;
    for (size_t i = 0; i < 3; ++i) d[i] = alpha * a.triple()[i] - beta * b.triple()[i];
    return HPoint(d);
}

struct AffinePoint {
    Rational x, y;
    bool operator==(const AffinePoint&) const = default;
};

struct InfiniteDirection {
    Integer dx, dy;  // coprime, canonical sign
    bool operator==(const InfiniteDirection&) const = default;
};

using EuclideanPosition = std::variant<AffinePoint, InfiniteDirection>;

inline HPoint euclidean_embed(const Rational& x, const Rational& y) {
    return HPoint(x, y, Rational(1));
}

inline EuclideanPosition euclidean_extract(const HPoint& p) {
    if (p[2] == 0) {
        std::array<Integer, 2> d{p[0], p[1]};
        linalg::canonicalize(d);
        return InfiniteDirection{d[0], d[1]};
    }
    return AffinePoint{make_rational(p[0], p[2]), make_rational(p[1], p[2])};
}

inline bool at_infinity(const HPoint& p) { return p[2] == 0; }

}  // namespace sharq

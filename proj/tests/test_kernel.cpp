#include <catch2/catch_amalgamated.hpp>

#include "sharq/projmap.hpp"
#include "sharq/rng.hpp"

using namespace sharq;

namespace {

HPoint pt(int x, int y, int w) { return HPoint(Integer(x), Integer(y), Integer(w)); }
HLine ln(int a, int b, int c) { return HLine(Integer(a), Integer(b), Integer(c)); }

HPoint random_point(SplitMix64& rng, int bound) {
    for (;;) {
        Integer x(rng.between(-bound, bound));
        Integer y(rng.between(-bound, bound));
        Integer w(rng.between(-bound, bound));
        if (x != 0 || y != 0 || w != 0) return HPoint(x, y, w);
    }
}

}  // namespace

TEST_CASE("canonical form of homogeneous triples") {
    CHECK(pt(2, 4, 6) == pt(1, 2, 3));
    CHECK(pt(-1, 2, 0) == pt(1, -2, 0));
    CHECK(HPoint(Rational(1, 2), Rational(3, 4), Rational(1)) == pt(2, 3, 4));
    CHECK_THROWS_AS(pt(0, 0, 0), Error);

    SplitMix64 rng(7);
    for (int t = 0; t < 200; ++t) {
        HPoint p = random_point(rng, 50);
        CHECK(HPoint(p.triple()) == p);  // idempotent
    }
}

TEST_CASE("join and meet") {
    CHECK(join(pt(1, 0, 0), pt(0, 1, 0)) == ln(0, 0, 1));
    CHECK(join(pt(0, 0, 1), pt(1, 0, 1)) == ln(0, 1, 0));
    CHECK(join(pt(0, 0, 1), pt(1, 4, 1)) == ln(4, -1, 0));
    CHECK_THROWS_MATCHES(join(pt(1, 2, 3), pt(2, 4, 6)), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == Err::IdenticalPoints; }));

    CHECK(meet(ln(1, 0, 0), ln(0, 1, 0)) == pt(0, 0, 1));
    CHECK(meet(ln(0, 1, 0), ln(0, 0, 1)) == pt(1, 0, 0));
    CHECK(meet(ln(1, 1, -2), ln(1, -1, 0)) == pt(1, 1, 1));
    CHECK_THROWS_AS(meet(ln(1, 1, 1), ln(1, 1, 1)), Error);
}

TEST_CASE("incidence and collinearity") {
    CHECK(incident(pt(0, 0, 1), ln(1, 0, 0)));
    CHECK(incident(pt(1, 0, 0), ln(0, 0, 1)));
    CHECK_FALSE(incident(pt(1, 1, 1), ln(1, 1, -1)));

    CHECK(collinear(pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1)));
    CHECK_FALSE(collinear(pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1)));

    // Pappus on two horizontal lines.
    HPoint a = pt(0, 0, 1), b = pt(1, 0, 1), c = pt(2, 0, 1);
    HPoint ap = pt(0, 1, 1), bp = pt(1, 1, 1), cp = pt(2, 1, 1);
    HPoint p = meet(join(b, cp), join(c, bp));
    HPoint q = meet(join(a, cp), join(c, ap));
    HPoint r = meet(join(a, bp), join(b, ap));
    CHECK(collinear(p, q, r));

    CHECK(concurrent(ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0)));
    CHECK(concurrent(ln(1, 0, 0), ln(1, 0, 0), ln(0, 1, 5)));  // identical lines share points
    CHECK_FALSE(concurrent(ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 1)));
}

TEST_CASE("collinearity is concurrency of the transposed configuration") {
    SplitMix64 rng(19);
    for (int t = 0; t < 200; ++t) {
        HPoint p = random_point(rng, 20);
        HPoint q = random_point(rng, 20);
        HPoint r = random_point(rng, 20);
        HLine lp(p[0], p[1], p[2]);
        HLine lq(q[0], q[1], q[2]);
        HLine lr(r[0], r[1], r[2]);
        CHECK(collinear(p, q, r) == concurrent(lp, lq, lr));
    }
}

TEST_CASE("join/meet duality") {
    SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
        HPoint p = random_point(rng, 20);
        HPoint q = random_point(rng, 20);
        HPoint r = random_point(rng, 20);
        if (p == q || p == r || collinear(p, q, r)) continue;
        CHECK(meet(join(p, q), join(p, r)) == p);
    }
}

TEST_CASE("cross ratio") {
    CHECK(cross_ratio(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1), pt(1, 0, 0)) == Rational(-1));
    CHECK(cross_ratio(pt(0, 0, 1), pt(3, 0, 1), pt(1, 0, 1), pt(2, 0, 1)) == Rational(1, 4));

    // Swap law on the last two arguments.
    CrossRatio cr = cross_ratio(pt(0, 0, 1), pt(3, 0, 1), pt(1, 0, 1), pt(2, 0, 1));
    CrossRatio swapped = cross_ratio(pt(0, 0, 1), pt(3, 0, 1), pt(2, 0, 1), pt(1, 0, 1));
    CHECK(swapped == cr.reciprocal());

    CHECK_THROWS_MATCHES(
        cross_ratio(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1), pt(1, 0, 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Err::DegenerateTuple; }));
    CHECK_THROWS_MATCHES(
        cross_ratio(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1), pt(0, 1, 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Err::NotCollinear; }));

    // D coinciding with a base point of the formula gives the infinite value.
    CHECK(cross_ratio(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1), pt(0, 0, 1)).is_infinity());
}

TEST_CASE("cross ratio is a projective invariant") {
    SplitMix64 rng(13);
    int done = 0;
    while (done < 100) {
        HPoint a = random_point(rng, 10);
        HPoint b = random_point(rng, 10);
        if (a == b) continue;
        auto on_line = [&](int alpha, int beta) {
            linalg::Vec3 v;
            for (size_t i = 0; i < 3; ++i)
                v[i] = Integer(alpha) * a.triple()[i] + Integer(beta) * b.triple()[i];
            return HPoint(v);
        };
        HPoint c = on_line(1, static_cast<int>(rng.between(1, 9)));
        HPoint d = on_line(1, -static_cast<int>(rng.between(1, 9)));
        if (c == d || c == a || c == b || d == a || d == b) continue;

        linalg::Mat3 m;
        for (auto& row : m)
            for (auto& x : row) x = Integer(rng.between(-9, 9));
        if (linalg::det3(m) == 0) continue;
        ProjMap t{m};

        CHECK(cross_ratio(t.apply(a), t.apply(b), t.apply(c), t.apply(d)) ==
              cross_ratio(a, b, c, d));
        ++done;
    }
}

TEST_CASE("harmonic conjugate") {
    CHECK(harmonic_conjugate(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1)) == pt(1, 0, 0));
    CHECK(harmonic_conjugate(pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 0)) == pt(1, 0, 1));

    HPoint d = harmonic_conjugate(pt(0, 0, 1), pt(3, 0, 1), pt(1, 0, 1));
    CHECK(cross_ratio(pt(0, 0, 1), pt(3, 0, 1), pt(1, 0, 1), d) == Rational(-1));

    CHECK_THROWS_MATCHES(
        harmonic_conjugate(pt(0, 0, 1), pt(2, 0, 1), pt(2, 0, 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Err::CoincidesWithEndpoint; }));

    // Involution property.
    SplitMix64 rng(17);
    int done = 0;
    while (done < 100) {
        HPoint a = random_point(rng, 10);
        HPoint b = random_point(rng, 10);
        if (a == b) continue;
        linalg::Vec3 v;
        Integer alpha(rng.between(1, 9)), beta(rng.between(1, 9));
        for (size_t i = 0; i < 3; ++i) v[i] = alpha * a.triple()[i] + beta * b.triple()[i];
        HPoint c{v};
        if (c == a || c == b) continue;
        CHECK(harmonic_conjugate(a, b, harmonic_conjugate(a, b, c)) == c);
        ++done;
    }
}

TEST_CASE("euclidean embedding") {
    CHECK(euclidean_embed(Rational(4), Rational(0)) == pt(4, 0, 1));

    auto affine = std::get<AffinePoint>(euclidean_extract(pt(80, 48, 17)));
    CHECK(affine.x == Rational(80, 17));
    CHECK(affine.y == Rational(48, 17));

    auto inf = std::get<InfiniteDirection>(euclidean_extract(pt(1, 4, 0)));
    CHECK(inf.dx == 1);
    CHECK(inf.dy == 4);
}

TEST_CASE("homologies") {
    // Central dilation with ratio 2 about the origin.
    ProjMap h = homology_from(pt(0, 0, 1), ln(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1));
    CHECK(h.apply(pt(0, 1, 1)) == pt(0, 2, 1));
    CHECK(h.apply(ln(1, 0, -2)) == ln(1, 0, -4));

    CHECK(homology_from(pt(0, 0, 1), ln(0, 0, 1), pt(1, 0, 1), pt(1, 0, 1)) ==
          ProjMap::identity());

    CHECK_THROWS_MATCHES(homology_from(pt(0, 0, 1), ln(0, 0, 1), pt(1, 0, 0), pt(2, 0, 1)), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == Err::InvalidPair; }));
}

TEST_CASE("homology fixes axis pointwise and center") {
    SplitMix64 rng(23);
    int done = 0;
    while (done < 50) {
        HPoint center = random_point(rng, 10);
        HPoint axis_a = random_point(rng, 10);
        HPoint axis_b = random_point(rng, 10);
        if (axis_a == axis_b) continue;
        HLine axis = join(axis_a, axis_b);
        HPoint pre = random_point(rng, 10);
        if (incident(pre, axis) || pre == center) continue;

        linalg::Vec3 v;
        Integer alpha(rng.between(1, 5)), beta(rng.between(1, 5));
        for (size_t i = 0; i < 3; ++i)
            v[i] = alpha * pre.triple()[i] + beta * center.triple()[i];
        HPoint image{v};
        if (image == center || incident(image, axis)) continue;

        ProjMap h = [&]() -> ProjMap {
            try {
                return homology_from(center, axis, pre, image);
            } catch (const Error&) {
                return ProjMap::identity();
            }
        }();
        CHECK(h.apply(pre) == image);
        CHECK(h.apply(center) == center);
        for (int k = 0; k < 20; ++k) {
            linalg::Vec3 x;
            Integer aa(rng.between(-9, 9)), bb(rng.between(-9, 9));
            if (aa == 0 && bb == 0) continue;
            for (size_t i = 0; i < 3; ++i)
                x[i] = aa * axis_a.triple()[i] + bb * axis_b.triple()[i];
            HPoint on_axis{x};
            CHECK(h.apply(on_axis) == on_axis);
        }
        ++done;
    }
}

TEST_CASE("map application preserves incidence") {
    SplitMix64 rng(29);
    int done = 0;
    while (done < 100) {
        linalg::Mat3 m;
        for (auto& row : m)
            for (auto& x : row) x = Integer(rng.between(-9, 9));
        if (linalg::det3(m) == 0) continue;
        ProjMap t{m};
        HPoint p = random_point(rng, 10);
        HPoint q = random_point(rng, 10);
        if (p == q) continue;
        HLine l = join(p, q);
        CHECK(incident(t.apply(p), t.apply(l)));
        CHECK(incident(t.apply(q), t.apply(l)));
        HPoint off = random_point(rng, 10);
        CHECK(incident(off, l) == incident(t.apply(off), t.apply(l)));
        ++done;
    }
}

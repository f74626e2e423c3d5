#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sharq/sharygin.hpp"

using namespace sharq;

namespace {

HPoint pt(int x, int y, int w) { return HPoint(Integer(x), Integer(y), Integer(w)); }
HLine ln(int a, int b, int c) { return HLine(Integer(a), Integer(b), Integer(c)); }

HPoint affine(const Rational& x, const Rational& y) { return euclidean_embed(x, y); }

std::array<HPoint, 4> reference_vertices() {
    return {pt(0, 0, 1), pt(4, 0, 1), pt(5, 3, 1), pt(1, 4, 1)};
}

QLPair reference_pair() { return make_qlpair(reference_vertices(), ln(0, 1, 1)); }

QLPair reference_omega_pair() { return make_qlpair(reference_vertices(), omega()); }

HPoint midpoint(const HPoint& a, const HPoint& b) {
    auto pa = std::get<AffinePoint>(euclidean_extract(a));
    auto pb = std::get<AffinePoint>(euclidean_extract(b));
    return euclidean_embed((pa.x + pb.x) / 2, (pa.y + pb.y) / 2);
}

}  // namespace

TEST_CASE("quadrangle and (q,l)-pair validation") {
    CHECK_NOTHROW(reference_pair());

    SECTION("three collinear vertices") {
        CHECK_THROWS_MATCHES(
            CompleteQuadrangle({pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1), pt(0, 1, 1)}), Error,
            Catch::Matchers::Predicate<Error>(
                [](const Error& e) { return e.code() == Err::ThreeCollinearVertices; }));
    }

    SECTION("line through a vertex") {
        HLine g = join(pt(0, 0, 1), pt(4, 0, 1));
        CHECK_THROWS_MATCHES(make_qlpair(reference_vertices(), g), Error,
                             Catch::Matchers::Predicate<Error>(
                                 [](const Error& e) { return e.code() == Err::LineThroughVertex; }));
    }

    SECTION("line through a diagonal point") {
        CompleteQuadrangle quad(reference_vertices());
        HPoint diag = quad.diagonal_points()[1];  // A1A3 ^ A2A4
        HLine g = join(diag, pt(0, -5, 1));
        CHECK_THROWS_MATCHES(
            make_qlpair(reference_vertices(), g), Error,
            Catch::Matchers::Predicate<Error>(
                [](const Error& e) { return e.code() == Err::LineThroughDiagonalPoint; }));
    }
}

TEST_CASE("diagonal points") {
    SECTION("unit square") {
        CompleteQuadrangle quad({pt(0, 0, 1), pt(1, 0, 1), pt(1, 1, 1), pt(0, 1, 1)});
        auto d = quad.diagonal_points();
        CHECK(d[0] == pt(1, 0, 0));                              // parallel pair A1A2, A3A4
        CHECK(d[1] == affine(Rational(1, 2), Rational(1, 2)));   // the center
        CHECK(d[2] == pt(0, 1, 0));                              // parallel pair A1A4, A2A3
    }

    SECTION("no diagonal point is a vertex") {
        CompleteQuadrangle quad(reference_vertices());
        for (const HPoint& d : quad.diagonal_points())
            for (int v = 1; v <= 4; ++v) CHECK(d != quad.vertex(v));
    }
}

TEST_CASE("u points") {
    QLPair ql = reference_pair();
    UPoints u = u_points(ql);
    for (auto [i, j] :
         std::initializer_list<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
        CHECK(incident(u.at(i, j), ql.g()));
        CHECK(incident(u.at(i, j), ql.side(i, j)));
    }

    SECTION("omega gives the side directions") {
        QLPair om = reference_omega_pair();
        UPoints uo = u_points(om);
        CHECK(uo.at(2, 3) == pt(1, 3, 0));  // direction of A2A3
        CHECK(uo.at(1, 4) == pt(1, 4, 0));  // direction of A1A4
    }
}

TEST_CASE("Sharygin quartet for the classical parallel-chord instance") {
    // A = A1, B = A2, C = A3, D = A4 with g = omega and (i,j,k,s) = (1,2,4,3):
    // U_23, U_14 are the infinite points of BC and AD.
    QLPair ql = reference_omega_pair();
    IndexSelection sel = IndexSelection::make(1, 2, 4, 3);
    SharyginQuartet q = sharygin_quartet(ql, sel);

    HPoint m = q.m_ji_s;  // B V_inf ^ AC
    HPoint n = q.m_ij_k;  // A U_inf ^ BD
    CHECK(m == affine(Rational(80, 17), Rational(48, 17)));
    CHECK(n == affine(Rational(16, 13), Rational(48, 13)));

    // MN is parallel to CD with direction (-4 : 1).
    HPoint dir = meet(join(m, n), omega());
    CHECK(dir == pt(-4, 1, 0));
    CHECK(dir == meet(ql.side(3, 4), omega()));

    SECTION("swapping i and j exchanges the labels") {
        SharyginQuartet swapped = sharygin_quartet(ql, IndexSelection::make(2, 1, 4, 3));
        CHECK(swapped.m_ji_s == q.m_ij_s);
        CHECK(swapped.m_ij_k == q.m_ji_k);
        CHECK(swapped.m_ij_s == q.m_ji_s);
        CHECK(swapped.m_ji_k == q.m_ij_k);
    }

    SECTION("quartet points sit on their sides") {
        QLPair fin = reference_pair();
        for (const IndexSelection& s : all_selections()) {
            SharyginQuartet qq = sharygin_quartet(fin, s);
            CHECK(incident(qq.m_ij_k, fin.side(s.j, s.k)));
            CHECK(incident(qq.m_ji_s, fin.side(s.i, s.s)));
            CHECK(incident(qq.m_ij_s, fin.side(s.j, s.s)));
            CHECK(incident(qq.m_ji_k, fin.side(s.i, s.k)));
        }
    }
}

TEST_CASE("auxiliary points") {
    QLPair ql = reference_pair();
    IndexSelection sel = IndexSelection::make(1, 2, 3, 4);
    AuxPoints aux = aux_points(ql, sel);

    CHECK(aux.I == meet(ql.side(1, 3), ql.side(2, 4)));
    CHECK(aux.I_prime == meet(ql.side(1, 4), ql.side(2, 3)));
    CHECK(aux.I_bar == meet(ql.side(1, 2), ql.side(3, 4)));
    // check-I of the second notation group is definitionally I'.
    CHECK(meet(ql.side(1, 4), ql.side(2, 3)) == aux.I_prime);

    SECTION("parallelogram midpoint property under omega") {
        QLPair om = reference_omega_pair();
        for (const IndexSelection& s : selections_i_less_j()) {
            AuxPoints a = aux_points(om, s);
            SharyginQuartet q = sharygin_quartet(om, s);
            HPoint side_mid = midpoint(om.vertex(s.i), om.vertex(s.j));
            CHECK(midpoint(a.I, a.J) == side_mid);
            CHECK(midpoint(a.I_prime, a.J_prime) == side_mid);
            CHECK(midpoint(q.m_ij_s, q.m_ij_k) == side_mid);
            CHECK(midpoint(q.m_ji_s, q.m_ji_k) == side_mid);
        }
    }
}

TEST_CASE("G points") {
    QLPair ql = reference_pair();
    UPoints u = u_points(ql);

    HPoint g12 = g_point(ql, 1, 2);
    CHECK(incident(g12, ql.side(1, 2)));

    SECTION("harmonic relation") {
        for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
                 {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
            CHECK(cross_ratio(g_point(ql, i, j), u.at(i, j), ql.vertex(i), ql.vertex(j)) ==
                  Rational(-1));
        }
    }

    SECTION("midpoints under omega") {
        QLPair om = reference_omega_pair();
        for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
                 {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
            CHECK(g_point(om, i, j) == midpoint(om.vertex(i), om.vertex(j)));
        }
    }

    SECTION("alternative construction via I-bar and J-bar") {
        IndexSelection sel = IndexSelection::make(1, 2, 3, 4);
        AuxPoints aux = aux_points(ql, u, sel);
        HPoint g_js = g_point(ql, sel.j, sel.s);  // G_24
        CHECK(incident(g_js, join(aux.I_bar, aux.J_bar)));
        CHECK(incident(g_js, join(aux.I_prime, aux.J_check)));
        CHECK(incident(g_js, ql.side(sel.j, sel.s)));
    }
}

TEST_CASE("Sharygin curves") {
    QLPair ql = reference_pair();
    UPoints u = u_points(ql);

    for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
             {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
        Conic k = sharygin_curve(ql, i, j);
        CHECK_FALSE(k.degenerate());
        CHECK(on_conic(ql.vertex(i), k));
        CHECK(on_conic(ql.vertex(j), k));
        int kk = 0;
        for (int v = 1; v <= 4; ++v)
            if (v != i && v != j && kk == 0) kk = v;
        IndexSelection sel = IndexSelection::make(i, j, kk, 10 - i - j - kk);
        SharyginQuartet q = sharygin_quartet(ql, u, sel);
        CHECK(on_conic(q.m_ij_k, k));
        CHECK(on_conic(q.m_ij_s, k));
        CHECK(on_conic(q.m_ji_k, k));
        CHECK(on_conic(q.m_ji_s, k));

        // Proposition: the pole of g is G_ij.
        CHECK(pole(ql.g(), k) == g_point(ql, i, j));
    }

    SECTION("center of k_12 under omega is G_12") {
        QLPair om = reference_omega_pair();
        Conic k12 = sharygin_curve(om, 1, 2);
        CHECK(pole(omega(), k12) == g_point(om, 1, 2));
        CHECK(pole(omega(), k12) == midpoint(om.vertex(1), om.vertex(2)));
    }
}

TEST_CASE("nine-point conic") {
    QLPair ql = reference_pair();
    Conic k9 = nine_point_conic(ql);
    CHECK_FALSE(k9.degenerate());

    for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
             {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
        CHECK(on_conic(g_point(ql, i, j), k9));
    }
    for (const HPoint& d : ql.quad().diagonal_points()) CHECK(on_conic(d, k9));

    SECTION("the classical midpoint conic under omega") {
        QLPair om = reference_omega_pair();
        Conic k = nine_point_conic(om);
        for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
                 {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
            CHECK(on_conic(midpoint(om.vertex(i), om.vertex(j)), k));
        }
    }
}

TEST_CASE("nine-point pole") {
    QLPair ql = reference_pair();
    Conic k9 = nine_point_conic(ql);
    HPoint g = nine_point_pole(ql);

    CHECK(g == pole(ql.g(), k9));
    CHECK(incident(g, join(g_point(ql, 1, 2), g_point(ql, 3, 4))));
    CHECK(incident(g, join(g_point(ql, 1, 3), g_point(ql, 2, 4))));
    CHECK(incident(g, join(g_point(ql, 1, 4), g_point(ql, 2, 3))));

    SECTION("center of the nine-point conic under omega") {
        QLPair om = reference_omega_pair();
        CHECK(nine_point_pole(om) == pole(omega(), nine_point_conic(om)));
    }
}

TEST_CASE("homologies of a selection") {
    QLPair ql = reference_pair();
    UPoints u = u_points(ql);
    IndexSelection sel = IndexSelection::make(1, 2, 3, 4);

    Homologies h = homologies(ql, u, sel);
    CHECK(h.center != h.center_prime);

    // Phi maps A_i to M_ks^j and A_j to M_sk^i.
    CHECK(h.phi.apply(ql.vertex(1)) == sharygin_point(ql, u, 3, 4, 2));
    CHECK(h.phi.apply(ql.vertex(2)) == sharygin_point(ql, u, 4, 3, 1));

    // g is the axis: every point of g is fixed.
    CHECK(h.phi.apply(u.at(1, 2)) == u.at(1, 2));
    CHECK(h.phi_prime.apply(u.at(3, 4)) == u.at(3, 4));

    // Phi(I') = L'.
    AuxPoints aux = aux_points(ql, u, sel);
    CHECK(h.phi.apply(aux.I_prime) == aux.L_prime);
    CHECK(h.phi_prime.apply(aux.I) == aux.L);

    SECTION("all selections construct without violations") {
        for (const IndexSelection& s : selections_i_less_j()) CHECK_NOTHROW(homologies(ql, u, s));
    }
}

TEST_CASE("case enumeration") {
    auto cases = enumerate_cases();
    CHECK(cases.size() == 48);

    std::set<std::string> labels;
    for (const CaseDescriptor& c : cases) labels.insert(c.label());
    CHECK(labels.size() == 48);  // pairwise distinct

    // The classical instance: i=1, j=2, s=3, k=4 with both U points infinite.
    CaseDescriptor classical{1, 2, 4, 3, true, true};
    CHECK(std::find(cases.begin(), cases.end(), classical) != cases.end());

    SECTION("enumeration is stable") {
        auto again = enumerate_cases();
        CHECK(std::equal(cases.begin(), cases.end(), again.begin(), again.end()));
    }
}

TEST_CASE("results are invariant under vertex relabeling") {
    QLPair original = reference_pair();
    UPoints u_orig = u_points(original);

    // Relabel by a 4-cycle: new vertex p is the old vertex perm[p].
    constexpr int perm[5] = {0, 2, 3, 4, 1};
    std::array<HPoint, 4> relabeled_vertices{original.vertex(perm[1]), original.vertex(perm[2]),
                                             original.vertex(perm[3]), original.vertex(perm[4])};
    QLPair relabeled = make_qlpair(relabeled_vertices, original.g());
    UPoints u_rel = u_points(relabeled);

    for (auto [i, j] : std::initializer_list<std::pair<int, int>>{
             {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}) {
        CHECK(u_rel.at(i, j) == u_orig.at(perm[i], perm[j]));
        CHECK(g_point(relabeled, i, j) == g_point(original, perm[i], perm[j]));
        CHECK(sharygin_curve(relabeled, i, j) == sharygin_curve(original, perm[i], perm[j]));
    }
    for (const IndexSelection& sel : all_selections()) {
        CHECK(sharygin_point(relabeled, sel.i, sel.j, sel.k) ==
              sharygin_point(original, perm[sel.i], perm[sel.j], perm[sel.k]));
    }
    CHECK(nine_point_conic(relabeled) == nine_point_conic(original));
    CHECK(nine_point_pole(relabeled) == nine_point_pole(original));
}

TEST_CASE("construction bundle") {
    QLPair ql = reference_pair();
    ConstructionBundle b = construct_bundle(ql);

    CHECK(b.m_points.size() == 24);
    CHECK(b.nine_point.has_value());
    CHECK(b.pole_of_g.has_value());
    for (const auto& curve : b.curves) {
        REQUIRE(curve.has_value());
        CHECK_FALSE(curve->degenerate());
    }
    CHECK(b.m(1, 2, 3) == sharygin_point(ql, 1, 2, 3));
    CHECK(*b.pole_of_g == nine_point_pole(ql));
}

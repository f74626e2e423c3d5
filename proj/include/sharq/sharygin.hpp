#pragma once

#include <optional>
#include <vector>

#include "sharq/conic.hpp"

namespace sharq {

/// Four points, no three collinear, together with their six connecting lines.
class CompleteQuadrangle {
public:
    explicit CompleteQuadrangle(std::array<HPoint, 4> vertices) : v_(std::move(vertices)) {
        static constexpr int triples[4][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
        for (auto [a, b, c] : triples) {
            if (collinear(vertex(a), vertex(b), vertex(c)))
                raise(Err::ThreeCollinearVertices,
                      "vertices A" + std::to_string(a) + ", A" + std::to_string(b) + ", A" +
                          std::to_string(c) + " are collinear");
        }
    }

    /// 1-based, matching the A_1..A_4 labels.
    const HPoint& vertex(int i) const { return v_[static_cast<size_t>(i - 1)]; }
    const std::array<HPoint, 4>& vertices() const { return v_; }

    HLine side(int i, int j) const { return join(vertex(i), vertex(j)); }

    /// Meets of the three opposite-side pairs, in the fixed order
    /// {A1A2 ^ A3A4, A1A3 ^ A2A4, A1A4 ^ A2A3}.
    std::array<HPoint, 3> diagonal_points() const {
        return {meet(side(1, 2), side(3, 4)), meet(side(1, 3), side(2, 4)),
                meet(side(1, 4), side(2, 3))};
    }

    bool operator==(const CompleteQuadrangle&) const = default;

private:
    std::array<HPoint, 4> v_;
};

/// A complete quadrangle plus a line g avoiding its vertices and diagonal points.
class QLPair {
public:
    QLPair(CompleteQuadrangle quad, HLine g) : quad_(std::move(quad)), g_(std::move(g)) {
        for (int i = 1; i <= 4; ++i) {
            if (incident(quad_.vertex(i), g_))
                raise(Err::LineThroughVertex, "g passes through vertex A" + std::to_string(i));
        }
        static constexpr const char* names[3] = {"A1A2^A3A4", "A1A3^A2A4", "A1A4^A2A3"};
        auto diag = quad_.diagonal_points();
        for (size_t d = 0; d < 3; ++d) {
            if (incident(diag[d], g_))
                raise(Err::LineThroughDiagonalPoint,
                      std::string("g passes through diagonal point ") + names[d]);
        }
    }

    const CompleteQuadrangle& quad() const { return quad_; }
    const HLine& g() const { return g_; }
    const HPoint& vertex(int i) const { return quad_.vertex(i); }
    HLine side(int i, int j) const { return quad_.side(i, j); }

    bool operator==(const QLPair&) const = default;

private:
    CompleteQuadrangle quad_;
    HLine g_;
};

inline QLPair make_qlpair(std::array<HPoint, 4> vertices, HLine g) {
    return QLPair(CompleteQuadrangle(std::move(vertices)), std::move(g));
}

/// A permutation (i, j, k, s) of {1, 2, 3, 4}.
struct IndexSelection {
    int i, j, k, s;

    static IndexSelection make(int i, int j, int k, int s) {
        int mask = 0;
        for (int x : {i, j, k, s}) {
            if (x < 1 || x > 4) raise(Err::InvalidConfig, "selection indices must be in 1..4");
            mask |= 1 << x;
        }
        if (mask != 0b11110) raise(Err::InvalidConfig, "selection must be a permutation of 1..4");
        return IndexSelection{i, j, k, s};
    }

    bool operator==(const IndexSelection&) const = default;
};

inline std::vector<IndexSelection> all_selections() {
    std::vector<IndexSelection> out;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            if (j == i) continue;
            for (int k = 1; k <= 4; ++k) {
                if (k == i || k == j) continue;
                out.push_back(IndexSelection{i, j, k, 10 - i - j - k});
            }
        }
    return out;
}

/// The twelve selections with i < j (each unordered vertex pair with both
/// (k, s) assignments); sufficient for statements symmetric in (i, j).
inline std::vector<IndexSelection> selections_i_less_j() {
    std::vector<IndexSelection> out;
    for (const IndexSelection& sel : all_selections())
        if (sel.i < sel.j) out.push_back(sel);
    return out;
}

namespace detail {

inline size_t pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int table[5][5] = {{-1, -1, -1, -1, -1},
                                        {-1, -1, 0, 1, 2},
                                        {-1, -1, -1, 3, 4},
                                        {-1, -1, -1, -1, 5},
                                        {-1, -1, -1, -1, -1}};
    return static_cast<size_t>(table[i][j]);
}

inline constexpr std::array<std::pair<int, int>, 6> vertex_pairs() {
    return {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
}

}  // namespace detail

/// The six points U_ij = g ^ A_iA_j.
class UPoints {
public:
    explicit UPoints(std::vector<HPoint> pts) : pts_(std::move(pts)) {}

    const HPoint& at(int i, int j) const { return pts_[detail::pair_index(i, j)]; }

    bool operator==(const UPoints&) const = default;

private:
    std::vector<HPoint> pts_;  // indexed by detail::pair_index
};

inline UPoints u_points(const QLPair& ql) {
    std::vector<HPoint> pts;
    pts.reserve(6);
    for (auto [i, j] : detail::vertex_pairs()) pts.push_back(meet(ql.g(), ql.side(i, j)));
    return UPoints(std::move(pts));
}

/// Generic Sharygin point M_ab^c = A_a U_bd ^ A_b A_c, with d the remaining index.
inline HPoint sharygin_point(const QLPair& ql, const UPoints& u, int a, int b, int c) {
    int d = 10 - a - b - c;
    HPoint m = meet(join(ql.vertex(a), u.at(b, d)), ql.side(b, c));
    for (int v = 1; v <= 4; ++v) {
        if (m == ql.vertex(v))
            raise(Err::DegenerateConfiguration,
                  "Sharygin point M_" + std::to_string(a) + std::to_string(b) + "^" +
                      std::to_string(c) + " coincides with vertex A" + std::to_string(v));
    }
    return m;
}

inline HPoint sharygin_point(const QLPair& ql, int a, int b, int c) {
    return sharygin_point(ql, u_points(ql), a, b, c);
}

/// The four Sharygin points attached to the vertex pair (A_i, A_j) of a
/// selection: M_ij^k, M_ji^s, M_ij^s, M_ji^k.
struct SharyginQuartet {
    IndexSelection sel;
    HPoint m_ij_k, m_ji_s, m_ij_s, m_ji_k;
};

inline SharyginQuartet sharygin_quartet(const QLPair& ql, const UPoints& u,
                                        const IndexSelection& sel) {
    return SharyginQuartet{sel, sharygin_point(ql, u, sel.i, sel.j, sel.k),
                           sharygin_point(ql, u, sel.j, sel.i, sel.s),
                           sharygin_point(ql, u, sel.i, sel.j, sel.s),
                           sharygin_point(ql, u, sel.j, sel.i, sel.k)};
}

inline SharyginQuartet sharygin_quartet(const QLPair& ql, const IndexSelection& sel) {
    return sharygin_quartet(ql, u_points(ql), sel);
}

/// Auxiliary meets attached to a selection. Field names mirror the customary
/// point labels; the check-I companion of I_bar is definitionally I_prime and
/// is not stored twice.
struct AuxPoints {
    HPoint I, I_prime;
    HPoint J, J_prime;
    HPoint L, L_prime;
    HPoint I_bar, J_bar, J_check;
};

inline AuxPoints aux_points(const QLPair& ql, const UPoints& u, const IndexSelection& sel) {
    const auto [i, j, k, s] = sel;
    auto a = [&](int v) { return ql.vertex(v); };
    return AuxPoints{
        meet(ql.side(i, k), ql.side(j, s)),                    // I
        meet(ql.side(i, s), ql.side(j, k)),                    // I'
        meet(join(a(i), u.at(j, s)), join(a(j), u.at(i, k))),  // J
        meet(join(a(i), u.at(j, k)), join(a(j), u.at(i, s))),  // J'
        meet(join(a(k), u.at(j, s)), join(a(s), u.at(i, k))),  // L
        meet(join(a(s), u.at(j, k)), join(a(k), u.at(i, s))),  // L'
        meet(ql.side(i, j), ql.side(s, k)),                    // I-bar
        meet(join(a(j), u.at(s, k)), join(a(s), u.at(i, j))),  // J-bar
        meet(join(a(j), u.at(i, s)), join(a(s), u.at(j, k))),  // J-check
    };
}

inline AuxPoints aux_points(const QLPair& ql, const IndexSelection& sel) {
    return aux_points(ql, u_points(ql), sel);
}

namespace detail {

inline IndexSelection canonical_selection(int i, int j) {
    int k = 0, s = 0;
    for (int v = 1; v <= 4; ++v) {
        if (v == i || v == j) continue;
        if (k == 0)
            k = v;
        else
            s = v;
    }
    return IndexSelection{i, j, k, s};
}

inline HPoint g_point_checked(const QLPair& ql, const UPoints& u, int i, int j) {
    IndexSelection sel = canonical_selection(i, j);
    SharyginQuartet q = sharygin_quartet(ql, u, sel);
    AuxPoints aux = aux_points(ql, u, sel);

    HLine chord = join(q.m_ij_k, q.m_ij_s);
    HPoint g_ij = meet(chord, ql.side(i, j));
    struct Named {
        const char* name;
        HLine line;
    };
    const Named others[3] = {{"M_ji^s M_ji^k", join(q.m_ji_s, q.m_ji_k)},
                             {"J I", join(aux.J, aux.I)},
                             {"J' I'", join(aux.J_prime, aux.I_prime)}};
    for (const auto& [name, line] : others) {
        if (!incident(g_ij, line))
            raise(Err::ConcurrencyViolation, "line " + std::string(name) + " misses G_" +
                                                 std::to_string(i) + std::to_string(j));
    }
    return g_ij;
}

}  // namespace detail

/// G_ij: the meet of A_iA_j with the chord M_ij^k M_ij^s, checked against the
/// other three lines of the five-fold concurrency.
inline HPoint g_point(const QLPair& ql, int i, int j) {
    return detail::g_point_checked(ql, u_points(ql), i, j);
}

/// Sharygin curve k_ij: the conic through A_i, A_j and the four Sharygin
/// points of the pair. Fitted from five of the six, sixth verified.
inline Conic sharygin_curve(const QLPair& ql, const UPoints& u, int i, int j) {
    IndexSelection sel = detail::canonical_selection(i, j);
    SharyginQuartet q = sharygin_quartet(ql, u, sel);
    Conic c = [&] {
        try {
            return conic_through_five(
                {ql.vertex(i), ql.vertex(j), q.m_ij_k, q.m_ij_s, q.m_ji_k});
        } catch (const Error& e) {
            if (e.code() == Err::NotUnique)
                raise(Err::DegenerateConfiguration,
                      "Sharygin curve k_" + std::to_string(i) + std::to_string(j) +
                          " is not determined: " + e.what());
            throw;
        }
    }();
    if (!on_conic(q.m_ji_s, c))
        raise(Err::ConcurrencyViolation, "sixth Sharygin point is off the fitted curve k_" +
                                             std::to_string(i) + std::to_string(j));
    return c;
}

inline Conic sharygin_curve(const QLPair& ql, int i, int j) {
    return sharygin_curve(ql, u_points(ql), i, j);
}

namespace detail {

inline std::array<HPoint, 6> all_g_points(const QLPair& ql, const UPoints& u) {
    auto pairs = vertex_pairs();
    return {g_point_checked(ql, u, pairs[0].first, pairs[0].second),
            g_point_checked(ql, u, pairs[1].first, pairs[1].second),
            g_point_checked(ql, u, pairs[2].first, pairs[2].second),
            g_point_checked(ql, u, pairs[3].first, pairs[3].second),
            g_point_checked(ql, u, pairs[4].first, pairs[4].second),
            g_point_checked(ql, u, pairs[5].first, pairs[5].second)};
}

inline Conic nine_point_from(const QLPair& ql, const std::array<HPoint, 6>& g) {
    Conic c = [&] {
        try {
            return conic_through_five({g[0], g[1], g[2], g[3], g[4]});
        } catch (const Error& e) {
            if (e.code() == Err::NotUnique)
                raise(Err::DegenerateConfiguration,
                      std::string("nine-point conic is not determined: ") + e.what());
            throw;
        }
    }();
    if (!on_conic(g[5], c))
        raise(Err::ConcurrencyViolation, "G_34 is off the fitted nine-point conic");
    auto diag = ql.quad().diagonal_points();
    static constexpr const char* names[3] = {"I-bar", "I", "I'"};
    for (size_t d = 0; d < 3; ++d) {
        if (!on_conic(diag[d], c))
            raise(Err::ConcurrencyViolation,
                  "diagonal point " + std::string(names[d]) + " is off the nine-point conic");
    }
    return c;
}

inline HPoint nine_point_pole_from(const QLPair& ql, const std::array<HPoint, 6>& g,
                                   const Conic& k9) {
    if (k9.degenerate()) raise(Err::DegenerateConic, "nine-point conic is degenerate");
    // Pair indices: (1,2)&(3,4) -> 0,5; (1,3)&(2,4) -> 1,4; (1,4)&(2,3) -> 2,3.
    HPoint pole_pt = meet(join(g[0], g[5]), join(g[1], g[4]));
    if (!incident(pole_pt, join(g[2], g[3])))
        raise(Err::ConcurrencyViolation, "G_14 G_23 misses the common point G");
    if (pole_pt != pole(ql.g(), k9))
        raise(Err::ConcurrencyViolation, "G differs from the pole of g w.r.t. the nine-point conic");
    return pole_pt;
}

}  // namespace detail

/// Conic through the six G-points, checked to contain the sixth G-point and
/// all three diagonal points.
inline Conic nine_point_conic(const QLPair& ql) {
    UPoints u = u_points(ql);
    return detail::nine_point_from(ql, detail::all_g_points(ql, u));
}

/// G = G_12G_34 ^ G_13G_24 ^ G_14G_23, checked equal to the pole of g.
inline HPoint nine_point_pole(const QLPair& ql) {
    UPoints u = u_points(ql);
    auto g = detail::all_g_points(ql, u);
    return detail::nine_point_pole_from(ql, g, detail::nine_point_from(ql, g));
}

/// Perspective-collineation data of a selection: centers O, O' (each a
/// six-fold meet) and the homologies Phi, Phi' with axis g.
struct Homologies {
    HPoint center, center_prime;
    ProjMap phi, phi_prime;
};

/// Centers O and O', each checked against all six defining lines.
inline std::pair<HPoint, HPoint> homology_centers(const QLPair& ql, const UPoints& u,
                                                  const IndexSelection& sel) {
    const auto [i, j, k, s] = sel;
    auto a = [&](int v) { return ql.vertex(v); };
    SharyginQuartet q = sharygin_quartet(ql, u, sel);
    AuxPoints aux = aux_points(ql, u, sel);

    HPoint m_ks_j = sharygin_point(ql, u, k, s, j);
    HPoint m_sk_i = sharygin_point(ql, u, s, k, i);
    HPoint m_sk_j = sharygin_point(ql, u, s, k, j);
    HPoint m_ks_i = sharygin_point(ql, u, k, s, i);

    HPoint o = meet(join(a(i), m_ks_j), join(a(j), m_sk_i));
    {
        const std::array<HLine, 4> rest = {join(a(s), q.m_ij_k), join(a(k), q.m_ji_s),
                                           join(aux.J, aux.I), join(aux.I_prime, aux.L_prime)};
        static constexpr const char* names[4] = {"A_s M_ij^k", "A_k M_ji^s", "J I", "I' L'"};
        for (size_t t = 0; t < 4; ++t)
            if (!incident(o, rest[t]))
                raise(Err::ConcurrencyViolation, "line " + std::string(names[t]) + " misses O");
    }

    HPoint o_prime = meet(join(a(i), m_sk_j), join(a(j), m_ks_i));
    {
        const std::array<HLine, 4> rest = {join(a(s), q.m_ji_k), join(a(k), q.m_ij_s),
                                           join(aux.I_prime, aux.J_prime), join(aux.L, aux.I)};
        static constexpr const char* names[4] = {"A_s M_ji^k", "A_k M_ij^s", "I' J'", "L I"};
        for (size_t t = 0; t < 4; ++t)
            if (!incident(o_prime, rest[t]))
                raise(Err::ConcurrencyViolation, "line " + std::string(names[t]) + " misses O'");
    }
    return {o, o_prime};
}

/// Builds Phi and Phi' and checks every correspondence of both six-point rows.
inline Homologies homologies(const QLPair& ql, const UPoints& u, const IndexSelection& sel) {
    const auto [i, j, k, s] = sel;
    auto a = [&](int v) { return ql.vertex(v); };
    SharyginQuartet q = sharygin_quartet(ql, u, sel);
    AuxPoints aux = aux_points(ql, u, sel);
    auto [o, o_prime] = homology_centers(ql, u, sel);

    HPoint m_ks_j = sharygin_point(ql, u, k, s, j);
    HPoint m_sk_i = sharygin_point(ql, u, s, k, i);
    HPoint m_sk_j = sharygin_point(ql, u, s, k, j);
    HPoint m_ks_i = sharygin_point(ql, u, k, s, i);

    struct Corresp {
        const char* name;
        HPoint from, to;
    };
    auto check = [](const ProjMap& map, const char* map_name,
                    std::initializer_list<Corresp> rows) {
        for (const Corresp& r : rows) {
            if (map.apply(r.from) != r.to)
                raise(Err::MappingViolation,
                      std::string(map_name) + " fails the correspondence " + r.name);
        }
    };

    ProjMap phi = homology_from(o, ql.g(), a(i), m_ks_j);
    check(phi, "Phi",
          {{"A_j -> M_sk^i", a(j), m_sk_i},
           {"M_ji^s -> A_k", q.m_ji_s, a(k)},
           {"M_ij^k -> A_s", q.m_ij_k, a(s)},
           {"J -> I", aux.J, aux.I},
           {"I' -> L'", aux.I_prime, aux.L_prime}});

    ProjMap phi_prime = homology_from(o_prime, ql.g(), a(i), m_sk_j);
    check(phi_prime, "Phi'",
          {{"A_j -> M_ks^i", a(j), m_ks_i},
           {"M_ij^s -> A_k", q.m_ij_s, a(k)},
           {"M_ji^k -> A_s", q.m_ji_k, a(s)},
           {"J' -> I'", aux.J_prime, aux.I_prime},
           {"I -> L", aux.I, aux.L}});

    return Homologies{std::move(o), std::move(o_prime), std::move(phi), std::move(phi_prime)};
}

inline Homologies homologies(const QLPair& ql, const IndexSelection& sel) {
    return homologies(ql, u_points(ql), sel);
}

/// One of the 48 concrete variants of the generalized problem: a vertex pair,
/// a (k, s) assignment, and which of U_js, U_ik are at infinity.
struct CaseDescriptor {
    int i, j, k, s;
    bool u_js_infinite, u_ik_infinite;

    bool operator==(const CaseDescriptor&) const = default;

    std::string label() const {
        auto fin = [](bool inf) { return inf ? "inf" : "fin"; };
        return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
               " s=" + std::to_string(s) + " U_js=" + fin(u_js_infinite) +
               " U_ik=" + fin(u_ik_infinite);
    }
};

/// All 48 descriptors (6 vertex pairs x 2 (k,s) assignments x 4 finiteness
/// combinations), in lexicographic order.
inline std::vector<CaseDescriptor> enumerate_cases() {
    std::vector<CaseDescriptor> cases;
    cases.reserve(48);
    for (auto [i, j] : detail::vertex_pairs()) {
        IndexSelection base = detail::canonical_selection(i, j);
        for (auto [k, s] : {std::pair{base.k, base.s}, std::pair{base.s, base.k}}) {
            for (int flags = 0; flags < 4; ++flags) {
                cases.push_back(CaseDescriptor{i, j, k, s, (flags & 2) != 0, (flags & 1) != 0});
            }
        }
    }
    return cases;
}

/// Everything derivable from one (q,l)-pair, computed eagerly. Conic slots are
/// empty when fitting reports a degenerate configuration.
struct ConstructionBundle {
    QLPair ql;
    std::array<HPoint, 3> diagonals;
    UPoints u;
    std::vector<HPoint> m_points;  // 24 entries, see m_index
    std::array<HPoint, 6> g_points;
    std::array<std::optional<Conic>, 6> curves;
    std::optional<Conic> nine_point;
    std::optional<HPoint> pole_of_g;

    static size_t m_index(int a, int b, int c) {
        size_t slot = 0;
        for (int aa = 1; aa <= 4; ++aa)
            for (int bb = 1; bb <= 4; ++bb) {
                if (bb == aa) continue;
                for (int cc = 1; cc <= 4; ++cc) {
                    if (cc == aa || cc == bb) continue;
                    if (aa == a && bb == b && cc == c) return slot;
                    ++slot;
                }
            }
        raise(Err::InvalidConfig, "Sharygin point indices must be pairwise distinct");
    }

    /// M_ab^c.
    const HPoint& m(int a, int b, int c) const { return m_points[m_index(a, b, c)]; }
};

inline ConstructionBundle construct_bundle(const QLPair& ql) {
    UPoints u = u_points(ql);

    std::vector<HPoint> m_points;
    m_points.reserve(24);
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            if (b == a) continue;
            for (int c = 1; c <= 4; ++c) {
                if (c == a || c == b) continue;
                m_points.push_back(sharygin_point(ql, u, a, b, c));
            }
        }

    auto gp = detail::all_g_points(ql, u);

    std::array<std::optional<Conic>, 6> curves;
    for (auto [i, j] : detail::vertex_pairs()) {
        try {
            curves[detail::pair_index(i, j)] = sharygin_curve(ql, u, i, j);
        } catch (const Error& e) {
            if (e.code() != Err::DegenerateConfiguration) throw;
        }
    }

    std::optional<Conic> nine;
    std::optional<HPoint> pole_pt;
    try {
        nine = detail::nine_point_from(ql, gp);
        if (!nine->degenerate()) pole_pt = detail::nine_point_pole_from(ql, gp, *nine);
    } catch (const Error& e) {
        if (e.code() != Err::DegenerateConfiguration) throw;
    }

    return ConstructionBundle{ql,     ql.quad().diagonal_points(), u,    std::move(m_points),
                              gp,     std::move(curves),           nine, std::move(pole_pt)};
}

}  // namespace sharq

#pragma once

#include <functional>
#include <map>
#include <optional>

#include "sharq/involution.hpp"
#include "sharq/json_io.hpp"
#include "sharq/rng.hpp"

namespace sharq {

struct TrialConfig {
    uint64_t seed = 42;
    int trials = 100;
    int coordinate_bound = 10;  // vertices sampled in [-bound, bound]^2
    bool omega_mode = false;    // force g = omega for generated instances

    void validate() const {
        if (trials < 1) raise(Err::InvalidConfig, "trials must be at least 1");
        if (coordinate_bound < 2) raise(Err::InvalidConfig, "coordinate bound must be at least 2");
    }
};

struct CheckFailure {
    int trial;
    std::string clause;
    json instance;
};

struct CheckReport {
    std::string check_id;
    int instances_run = 0;
    std::vector<CheckFailure> failures;
    std::vector<std::pair<int, std::string>> degeneracies;  // (trial, note)

    bool pass() const { return failures.empty(); }
};

inline json report_to_json(const CheckReport& r) {
    json j;
    j["check_id"] = r.check_id;
    j["instances_run"] = r.instances_run;
    j["pass"] = r.pass();
    json fails = json::array();
    for (const CheckFailure& f : r.failures)
        fails.push_back({{"trial", f.trial}, {"clause", f.clause}, {"instance", f.instance}});
    j["failures"] = fails;
    json degs = json::array();
    for (const auto& [trial, note] : r.degeneracies)
        degs.push_back({{"trial", trial}, {"note", note}});
    j["degeneracies"] = degs;
    return j;
}

/// Rejection-samples a valid (q,l)-pair with integer data. Deterministic for a
/// given generator state; throws ExhaustedAttempts after 10,000 rejections.
inline QLPair generate_qlpair(SplitMix64& rng, int bound, bool force_omega) {
    auto random_point = [&] {
        return HPoint(Integer(rng.between(-bound, bound)), Integer(rng.between(-bound, bound)),
                      Integer(1));
    };
    for (int attempt = 0; attempt < 10000; ++attempt) {
        try {
            std::array<HPoint, 4> vertices{random_point(), random_point(), random_point(),
                                           random_point()};
            HLine g = omega();
            if (!force_omega) {
                HPoint p = random_point();
                HPoint q = random_point();
                if (p == q) continue;
                g = join(p, q);
            }
            return make_qlpair(std::move(vertices), std::move(g));
        } catch (const Error&) {
            continue;
        }
    }
    raise(Err::ExhaustedAttempts, "no valid (q,l)-pair found within the attempt budget");
}

namespace detail {

/// Per-trial instance shared by every check of that trial: the base (q,l)-pair
/// stream depends only on (seed, trial), so single-check runs reproduce the
/// instances a full run sees.
class TrialInstance {
public:
    TrialInstance(const TrialConfig& cfg, int trial) : cfg_(cfg), trial_(trial) {}

    int trial() const { return trial_; }
    const TrialConfig& cfg() const { return cfg_; }

    const QLPair& ql() const {
        if (!ql_) {
            SplitMix64 rng(mix64(cfg_.seed, static_cast<uint64_t>(trial_)));
            ql_ = generate_qlpair(rng, cfg_.coordinate_bound, cfg_.omega_mode);
        }
        return *ql_;
    }

    const ConstructionBundle& bundle() const {
        if (!bundle_) bundle_ = construct_bundle(ql());
        return *bundle_;
    }

    SplitMix64 check_stream(std::string_view check_id) const {
        return SplitMix64(mix64(mix64(cfg_.seed, fnv1a64(check_id)), static_cast<uint64_t>(trial_)));
    }

private:
    const TrialConfig& cfg_;
    int trial_;
    mutable std::optional<QLPair> ql_;
    mutable std::optional<ConstructionBundle> bundle_;
};

struct CheckContext {
    const TrialInstance& inst;
    SplitMix64 rng;                     // check-specific stream
    std::function<json()> describe;    // instance payload for failure reports
    std::vector<std::string> degeneracy_notes;

    [[noreturn]] void fail(const std::string& clause) const {
        raise(Err::ConcurrencyViolation, clause);
    }
    void degenerate(std::string note) { degeneracy_notes.push_back(std::move(note)); }
};

inline HPoint random_affine_point(SplitMix64& rng, int bound) {
    return HPoint(Integer(rng.between(-bound, bound)), Integer(rng.between(-bound, bound)),
                  Integer(1));
}

/// Random point on a line through two given points, excluding both base points
/// when exclude_bases is set.
inline HPoint random_on_line(SplitMix64& rng, const HPoint& a, const HPoint& b, int prange,
                             bool exclude_bases) {
    for (;;) {
        Integer alpha(rng.between(-prange, prange));
        Integer beta(rng.between(-prange, prange));
        if (alpha == 0 && beta == 0) continue;
        if (exclude_bases && (alpha == 0 || beta == 0)) continue;
        linalg::Vec3 v;
        for (size_t c = 0; c < 3; ++c) v[c] = alpha * a.triple()[c] + beta * b.triple()[c];
        return HPoint(v);
    }
}

/// Two distinct points spanning a line, taken from the coordinate-axis meets.
inline std::pair<HPoint, HPoint> span_of_line(const HLine& l) {
    std::optional<HPoint> first;
    for (int axis = 0; axis < 3; ++axis) {
        linalg::Vec3 e{Integer(axis == 0), Integer(axis == 1), Integer(axis == 2)};
        linalg::Vec3 pt = linalg::cross(l.triple(), e);
        if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) continue;
        HPoint p{pt};
        if (!first)
            first = std::move(p);
        else if (*first != p)
            return {*first, std::move(p)};
    }
    raise(Err::InvalidConfig, "cannot span line " + l.str());
}

struct SampledConic {
    Conic conic;
    HPoint base;  // a known rational point on the conic
};

/// Conic through five random affine points, retried until non-degenerate.
inline SampledConic random_nondegenerate_conic(SplitMix64& rng, int bound) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::array<HPoint, 5> pts{random_affine_point(rng, bound), random_affine_point(rng, bound),
                                  random_affine_point(rng, bound), random_affine_point(rng, bound),
                                  random_affine_point(rng, bound)};
        try {
            Conic c = conic_through_five(pts);
            if (c.degenerate()) continue;
            return SampledConic{std::move(c), pts[0]};
        } catch (const Error&) {
            continue;
        }
    }
    raise(Err::ExhaustedAttempts, "no non-degenerate conic found within the attempt budget");
}

/// Random point on a non-degenerate conic through the pencil at base.
inline HPoint random_on_conic(SplitMix64& rng, const Conic& c, const HPoint& base, int bound) {
    for (;;) {
        HPoint aux = random_affine_point(rng, bound);
        if (aux == base) continue;
        return second_intersection(c, base, aux);
    }
}

using CheckFn = std::function<void(CheckContext&)>;

// ---------------------------------------------------------------------------
// Classical closure checks on freshly sampled configurations.
// ---------------------------------------------------------------------------

inline void check_pappus(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 1000) raise(Err::ExhaustedAttempts, "pappus sampling failed");
        HPoint g1a = random_affine_point(ctx.rng, bound);
        HPoint g1b = random_affine_point(ctx.rng, bound);
        HPoint g2a = random_affine_point(ctx.rng, bound);
        HPoint g2b = random_affine_point(ctx.rng, bound);
        if (g1a == g1b || g2a == g2b) continue;
        HLine l1 = join(g1a, g1b);
        HLine l2 = join(g2a, g2b);
        if (l1 == l2) continue;
        HPoint x = meet(l1, l2);

        auto pick3 = [&](const HPoint& a, const HPoint& b) {
            std::vector<HPoint> out;
            int guard = 0;
            while (out.size() < 3 && guard++ < 200) {
                HPoint p = random_on_line(ctx.rng, a, b, bound, false);
                if (p == x) continue;
                bool dup = false;
                for (const HPoint& q : out) dup = dup || q == p;
                if (!dup) out.push_back(std::move(p));
            }
            return out;
        };
        auto first = pick3(g1a, g1b);
        auto second = pick3(g2a, g2b);
        if (first.size() < 3 || second.size() < 3) continue;

        ctx.describe = [=] {
            json j;
            j["g"] = line_to_json(l1);
            j["g_prime"] = line_to_json(l2);
            json pts = json::array();
            for (const HPoint& p : first) pts.push_back(point_to_json(p));
            for (const HPoint& p : second) pts.push_back(point_to_json(p));
            j["points"] = pts;
            return j;
        };

        const HPoint &a = first[0], &b = first[1], &c = first[2];
        const HPoint &ap = second[0], &bp = second[1], &cp = second[2];
        HPoint p = meet(join(b, cp), join(c, bp));
        HPoint q = meet(join(a, cp), join(c, ap));
        HPoint r = meet(join(a, bp), join(b, ap));
        if (!collinear(p, q, r)) ctx.fail("Pappus points P, Q, R are not collinear");
        return;
    }
}

inline void check_desargues(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 1000) raise(Err::ExhaustedAttempts, "desargues sampling failed");
        HPoint center = random_affine_point(ctx.rng, bound);
        std::vector<HPoint> dirs;
        int guard = 0;
        while (dirs.size() < 3 && guard++ < 200) {
            HPoint d = random_affine_point(ctx.rng, bound);
            if (d == center) continue;
            bool dup = false;
            for (const HPoint& q : dirs) dup = dup || join(center, q) == join(center, d);
            if (!dup) dirs.push_back(std::move(d));
        }
        if (dirs.size() < 3) continue;

        std::vector<HPoint> tri, tri_p;
        for (const HPoint& d : dirs) {
            HPoint u = random_on_line(ctx.rng, center, d, bound, true);
            HPoint v = random_on_line(ctx.rng, center, d, bound, true);
            if (u == v || u == center || v == center) {
                tri.clear();
                break;
            }
            tri.push_back(u);
            tri_p.push_back(v);
        }
        if (tri.size() < 3) continue;
        if (collinear(tri[0], tri[1], tri[2]) || collinear(tri_p[0], tri_p[1], tri_p[2])) continue;
        if (join(tri[0], tri[1]) == join(tri_p[0], tri_p[1]) ||
            join(tri[0], tri[2]) == join(tri_p[0], tri_p[2]) ||
            join(tri[1], tri[2]) == join(tri_p[1], tri_p[2]))
            continue;

        ctx.describe = [=] {
            json j;
            j["center"] = point_to_json(center);
            json t1 = json::array(), t2 = json::array();
            for (const HPoint& p : tri) t1.push_back(point_to_json(p));
            for (const HPoint& p : tri_p) t2.push_back(point_to_json(p));
            j["triangle"] = t1;
            j["triangle_prime"] = t2;
            return j;
        };

        HPoint p = meet(join(tri[1], tri[2]), join(tri_p[1], tri_p[2]));
        HPoint q = meet(join(tri[0], tri[2]), join(tri_p[0], tri_p[2]));
        HPoint r = meet(join(tri[0], tri[1]), join(tri_p[0], tri_p[1]));
        if (!collinear(p, q, r))
            ctx.fail("corresponding sides of point-perspective triangles meet off a line");
        return;
    }
}

inline void check_pascal_forward(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    auto [c, base] = random_nondegenerate_conic(ctx.rng, bound);

    std::vector<HPoint> hex;
    int guard = 0;
    while (hex.size() < 6 && guard++ < 2000) {
        HPoint p = random_on_conic(ctx.rng, c, base, bound);
        bool dup = false;
        for (const HPoint& q : hex) dup = dup || q == p;
        if (!dup) hex.push_back(std::move(p));
    }
    if (hex.size() < 6) raise(Err::ExhaustedAttempts, "pascal sampling failed");

    ctx.describe = [c = c, hex] {
        json j;
        j["conic"] = conic_to_json(c);
        json pts = json::array();
        for (const HPoint& p : hex) pts.push_back(point_to_json(p));
        j["hexagon"] = pts;
        return j;
    };

    HPoint p = meet(join(hex[0], hex[1]), join(hex[3], hex[4]));
    HPoint q = meet(join(hex[1], hex[2]), join(hex[4], hex[5]));
    HPoint r = meet(join(hex[2], hex[3]), join(hex[5], hex[0]));
    if (!collinear(p, q, r)) ctx.fail("opposite-side meets of the inscribed hexagon are not collinear");
}

inline void check_self_polar(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    auto [c, base] = random_nondegenerate_conic(ctx.rng, bound);

    std::vector<HPoint> quad;
    int guard = 0;
    while (quad.size() < 4 && guard++ < 2000) {
        HPoint p = random_on_conic(ctx.rng, c, base, bound);
        bool dup = false;
        for (const HPoint& q : quad) dup = dup || q == p;
        if (!dup) quad.push_back(std::move(p));
    }
    if (quad.size() < 4) raise(Err::ExhaustedAttempts, "self-polar sampling failed");

    ctx.describe = [c = c, quad] {
        json j;
        j["conic"] = conic_to_json(c);
        json pts = json::array();
        for (const HPoint& p : quad) pts.push_back(point_to_json(p));
        j["quadrangle"] = pts;
        return j;
    };

    CompleteQuadrangle cq({quad[0], quad[1], quad[2], quad[3]});
    auto d = cq.diagonal_points();
    if (!is_self_polar_triangle(d[0], d[1], d[2], c))
        ctx.fail("diagonal triangle of the inscribed quadrangle is not self-polar");
}

inline void check_problem2(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 1000) raise(Err::ExhaustedAttempts, "problem2 sampling failed");
        std::array<HPoint, 4> v{random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound)};
        try {
            CompleteQuadrangle cq(v);
            const HPoint &a = v[0], &b = v[1], &c = v[2], &d = v[3];
            HPoint u = random_on_line(ctx.rng, b, c, bound, true);
            HPoint w = random_on_line(ctx.rng, a, d, bound, true);
            if (u == w || join(u, w) == join(c, d)) continue;

            ctx.describe = [=] {
                json j;
                json pts = json::array();
                for (const HPoint& p : v) pts.push_back(point_to_json(p));
                j["quadrangle"] = pts;
                j["U"] = point_to_json(u);
                j["V"] = point_to_json(w);
                return j;
            };

            HPoint m = meet(join(b, w), join(a, c));
            HPoint n = meet(join(a, u), join(b, d));
            HPoint cut = meet(join(c, d), join(u, w));
            if (!collinear(m, n, cut)) ctx.fail("M, N and CD^UV are not collinear");
            return;
        } catch (const Error& e) {
            if (e.code() == Err::ThreeCollinearVertices || e.code() == Err::IdenticalPoints)
                continue;
            throw;
        }
    }
}

inline void check_problem3(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 1000) raise(Err::ExhaustedAttempts, "problem3 sampling failed");
        std::array<HPoint, 4> v{random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound),
                                random_affine_point(ctx.rng, bound)};
        try {
            CompleteQuadrangle cq(v);
            const HPoint &a = v[0], &b = v[1], &c = v[2], &d = v[3];
            HPoint vp = random_on_line(ctx.rng, a, c, bound, true);
            HPoint up = meet(join(b, d), omega());

            ctx.describe = [=] {
                json j;
                json pts = json::array();
                for (const HPoint& p : v) pts.push_back(point_to_json(p));
                j["quadrangle"] = pts;
                j["V_prime"] = point_to_json(vp);
                return j;
            };

            HPoint mp = meet(join(b, vp), join(a, d));
            HPoint np = meet(join(a, up), join(b, c));
            if (vp == up || mp == np) continue;
            if (!concurrent(join(c, d), join(vp, up), join(mp, np)))
                ctx.fail("CD, V'U'_inf and M'N' are not concurrent");
            return;
        } catch (const Error& e) {
            if (e.code() == Err::ThreeCollinearVertices || e.code() == Err::IdenticalPoints ||
                e.code() == Err::IdenticalLines)
                continue;
            throw;
        }
    }
}

// ---------------------------------------------------------------------------
// Checks on the shared (q,l)-pair instance.
// ---------------------------------------------------------------------------

inline void check_thm4_involution(CheckContext& ctx) {
    const QLPair& ql = ctx.inst.ql();
    const UPoints& u = ctx.inst.bundle().u;
    pappus_desargues_involution(ql);  // fits (U12,U34),(U13,U24), checks (U14,U23)

    auto chart_pair = span_of_line(ql.g());
    LineChart chart(ql.g(), chart_pair.first, chart_pair.second);
    LineInvolution from_23 =
        involution_from_pairs(chart, {u.at(1, 3), u.at(2, 4)}, {u.at(1, 4), u.at(2, 3)});
    if (!is_conjugate_pair(from_23, u.at(1, 2), u.at(3, 4)))
        ctx.fail("involution fitted from pairs 2 and 3 does not map (U_12, U_34)");
    LineInvolution from_13 =
        involution_from_pairs(chart, {u.at(1, 2), u.at(3, 4)}, {u.at(1, 4), u.at(2, 3)});
    if (!is_conjugate_pair(from_13, u.at(1, 3), u.at(2, 4)))
        ctx.fail("involution fitted from pairs 1 and 3 does not map (U_13, U_24)");
}

inline void check_problem4_part1(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    for (const IndexSelection& sel : all_selections()) {
        const HPoint& m = b.m(sel.i, sel.j, sel.k);
        const HPoint& n = b.m(sel.j, sel.i, sel.s);
        if (!incident(b.u.at(sel.k, sel.s), join(m, n)))
            ctx.fail("M N misses U_ks at selection " +
                     CaseDescriptor{sel.i, sel.j, sel.k, sel.s, false, false}.label());
        if (!concurrent(ctx.inst.ql().g(), join(m, n), ctx.inst.ql().side(sel.k, sel.s)))
            ctx.fail("g, MN, A_kA_s are not concurrent at selection " +
                     CaseDescriptor{sel.i, sel.j, sel.k, sel.s, false, false}.label());
    }
}

inline void check_problem4_part2(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    const QLPair& ql = ctx.inst.ql();
    for (const IndexSelection& sel : all_selections()) {
        const HPoint& m = b.m(sel.i, sel.j, sel.k);
        const HPoint& n = b.m(sel.j, sel.i, sel.s);
        AuxPoints aux = aux_points(ql, b.u, sel);
        if (!concurrent(join(ql.vertex(sel.s), m), join(ql.vertex(sel.k), n), join(aux.I, aux.J)))
            ctx.fail("A_sM, A_kN, IJ are not concurrent at selection " +
                     CaseDescriptor{sel.i, sel.j, sel.k, sel.s, false, false}.label());
    }
}

inline void check_thm6_part1(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    for (const IndexSelection& sel : all_selections()) {
        const HPoint& u_ks = b.u.at(sel.k, sel.s);
        if (!incident(u_ks, join(b.m(sel.i, sel.j, sel.k), b.m(sel.j, sel.i, sel.s))))
            ctx.fail("M_ij^k M_ji^s misses U_ks");
        if (!incident(u_ks, join(b.m(sel.i, sel.j, sel.s), b.m(sel.j, sel.i, sel.k))))
            ctx.fail("M_ij^s M_ji^k misses U_ks");
    }
}

inline void check_thm6_part2(CheckContext& ctx) {
    const QLPair& ql = ctx.inst.ql();
    const UPoints& u = ctx.inst.bundle().u;
    for (const IndexSelection& sel : selections_i_less_j()) {
        auto [o, o_prime] = homology_centers(ql, u, sel);  // asserts both six-fold meets
        if (o == o_prime) ctx.degenerate("O and O' coincide at one selection");
    }
}

inline void check_thm6_part3(CheckContext& ctx) {
    const QLPair& ql = ctx.inst.ql();
    const ConstructionBundle& b = ctx.inst.bundle();
    for (const IndexSelection& sel : selections_i_less_j()) {
        // Five-fold meet at G_ij (checked inside the construction).
        HPoint g_ij = detail::g_point_checked(ql, b.u, sel.i, sel.j);
        (void)g_ij;

        // Dual statement: G_sk also collects the chords of the (s,k) quartet
        // and the lines L I and L' I'.
        const HPoint& g_sk = b.g_points[pair_index(sel.s, sel.k)];
        AuxPoints aux = aux_points(ql, b.u, sel);
        if (!incident(g_sk, join(b.m(sel.s, sel.k, sel.j), b.m(sel.s, sel.k, sel.i))))
            ctx.fail("M_sk^j M_sk^i misses G_sk");
        if (!incident(g_sk, join(b.m(sel.k, sel.s, sel.i), b.m(sel.k, sel.s, sel.j))))
            ctx.fail("M_ks^i M_ks^j misses G_sk");
        if (!incident(g_sk, join(aux.L, aux.I))) ctx.fail("L I misses G_sk");
        if (!incident(g_sk, join(aux.L_prime, aux.I_prime))) ctx.fail("L' I' misses G_sk");
    }
}

inline void check_prop1(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    const QLPair& ql = ctx.inst.ql();
    for (auto [i, j] : vertex_pairs()) {
        CrossRatio cr = cross_ratio(b.g_points[pair_index(i, j)], b.u.at(i, j), ql.vertex(i),
                                    ql.vertex(j));
        if (!(cr == Rational(-1)))
            ctx.fail("(G_ij, U_ij; A_i, A_j) is " + cr.str() + " instead of -1");
    }
}

inline void check_prop2(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    const QLPair& ql = ctx.inst.ql();
    size_t omit = static_cast<size_t>(ctx.inst.trial()) % 6;
    for (auto [i, j] : vertex_pairs()) {
        IndexSelection sel = canonical_selection(i, j);
        std::array<HPoint, 6> six{ql.vertex(i),           ql.vertex(j),
                                  b.m(i, j, sel.k),       b.m(i, j, sel.s),
                                  b.m(j, i, sel.k),       b.m(j, i, sel.s)};
        std::array<HPoint, 5> five{six[(omit + 1) % 6], six[(omit + 2) % 6], six[(omit + 3) % 6],
                                   six[(omit + 4) % 6], six[(omit + 5) % 6]};
        try {
            Conic c = conic_through_five(five);
            if (!on_conic(six[omit], c))
                ctx.fail("the sixth point is off the conic through the other five");
        } catch (const Error& e) {
            if (e.code() == Err::NotUnique) {
                ctx.degenerate("Sharygin curve fit not unique for one pair");
                continue;
            }
            throw;
        }
    }
}

inline void check_prop3(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    for (auto [i, j] : vertex_pairs()) {
        const auto& curve = b.curves[pair_index(i, j)];
        if (!curve) {
            ctx.degenerate("Sharygin curve missing (degenerate configuration)");
            continue;
        }
        if (curve->degenerate()) {
            ctx.degenerate("Sharygin curve degenerate");
            continue;
        }
        if (polar(b.g_points[pair_index(i, j)], *curve) != ctx.inst.ql().g())
            ctx.fail("polar of G_ij w.r.t. k_ij differs from g");
    }
}

inline void check_prop4(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    for (int i = 1; i <= 4; ++i)
        for (int s = i + 1; s <= 4; ++s)
            for (int j = 1; j <= 4; ++j) {
                if (j == i || j == s) continue;
                if (!collinear(b.g_points[pair_index(i, j)], b.g_points[pair_index(j, s)],
                               b.u.at(i, s)))
                    ctx.fail("G_ij G_js misses U_is for (i,j,s) = (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(s) + ")");
            }
}

inline void check_thm7(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    if (!b.nine_point) {
        ctx.degenerate("nine-point conic fit not unique");
        return;
    }
    // Containment of all nine points is asserted when the bundle is built.
    if (b.nine_point->degenerate()) {
        ctx.degenerate("nine-point conic degenerate; Pascal check skipped");
        return;
    }
    const auto& g = b.g_points;
    std::array<HPoint, 6> hexagon{g[1], g[3], g[0], g[4], g[2], g[5]};  // G13 G23 G12 G24 G14 G34
    if (pascal_line(hexagon, *b.nine_point) != ctx.inst.ql().g())
        ctx.fail("Pascal line of the G-hexagon differs from g");
}

inline void check_thm8(CheckContext& ctx) {
    const ConstructionBundle& b = ctx.inst.bundle();
    if (!b.nine_point || b.nine_point->degenerate()) {
        ctx.degenerate("nine-point conic unavailable or degenerate");
        return;
    }
    const auto& g = b.g_points;
    HPoint common = meet(join(g[0], g[5]), join(g[1], g[4]));
    if (!incident(common, join(g[2], g[3])))
        ctx.fail("G_12G_34, G_13G_24, G_14G_23 are not concurrent");
    if (common != pole(ctx.inst.ql().g(), *b.nine_point))
        ctx.fail("triple meet G differs from the pole of g w.r.t. the nine-point conic");
}

inline void check_prop5(CheckContext& ctx) {
    const QLPair& ql = ctx.inst.ql();
    const UPoints& u = ctx.inst.bundle().u;
    for (const IndexSelection& sel : selections_i_less_j()) {
        homologies(ql, u, sel);  // asserts all twelve correspondences
    }
}

// ---------------------------------------------------------------------------
// Specializations with g = omega and the 48-case sweep.
// ---------------------------------------------------------------------------

inline void check_omega_midpoints(CheckContext& ctx) {
    QLPair ql = generate_qlpair(ctx.rng, ctx.inst.cfg().coordinate_bound, true);
    ctx.describe = [=] { return qlpair_to_json(ql); };
    UPoints u = u_points(ql);
    for (auto [i, j] : vertex_pairs()) {
        HPoint g_ij = g_point_checked(ql, u, i, j);
        auto pi = std::get<AffinePoint>(euclidean_extract(ql.vertex(i)));
        auto pj = std::get<AffinePoint>(euclidean_extract(ql.vertex(j)));
        HPoint midpoint = euclidean_embed((pi.x + pj.x) / 2, (pi.y + pj.y) / 2);
        if (g_ij != midpoint)
            ctx.fail("G_" + std::to_string(i) + std::to_string(j) +
                     " is not the Euclidean midpoint of its side under g = omega");
    }
}

inline void check_omega_center(CheckContext& ctx) {
    QLPair ql = generate_qlpair(ctx.rng, ctx.inst.cfg().coordinate_bound, true);
    ctx.describe = [=] { return qlpair_to_json(ql); };
    UPoints u = u_points(ql);
    auto gp = all_g_points(ql, u);
    std::optional<Conic> fitted;
    try {
        fitted = nine_point_from(ql, gp);
    } catch (const Error& e) {
        if (e.code() == Err::DegenerateConfiguration) {
            ctx.degenerate("nine-point conic fit not unique under g = omega");
            return;
        }
        throw;
    }
    const Conic& k9 = *fitted;
    if (k9.degenerate()) {
        ctx.degenerate("nine-point conic degenerate under g = omega");
        return;
    }
    HPoint center = nine_point_pole_from(ql, gp, k9);  // asserts pole identity
    if (center != pole(omega(), k9))
        ctx.fail("G differs from the center (pole of omega) of the nine-point conic");

    if (at_infinity(center)) {
        ctx.degenerate("nine-point conic center at infinity; symmetry oracle skipped");
        return;
    }
    // Independent oracle: a central conic is symmetric about its center.
    auto c = std::get<AffinePoint>(euclidean_extract(center));
    auto diag = ql.quad().diagonal_points();
    std::vector<HPoint> nine(gp.begin(), gp.end());
    nine.insert(nine.end(), diag.begin(), diag.end());
    for (const HPoint& p : nine) {
        auto ap = std::get<AffinePoint>(euclidean_extract(p));
        HPoint reflected = euclidean_embed(2 * c.x - ap.x, 2 * c.y - ap.y);
        if (!on_conic(reflected, k9))
            ctx.fail("reflection of a nine-point through the center leaves the conic");
    }
}

inline void check_cases48(CheckContext& ctx) {
    const int bound = ctx.inst.cfg().coordinate_bound;
    // Base quadrangle valid against omega, so every finiteness combination is
    // realizable over the same vertices.
    QLPair omega_pair = generate_qlpair(ctx.rng, bound, true);
    const CompleteQuadrangle& quad = omega_pair.quad();

    auto cases = enumerate_cases();
    if (cases.size() != 48) ctx.fail("enumerate_cases did not produce 48 descriptors");

    for (const CaseDescriptor& cd : cases) {
        IndexSelection sel = IndexSelection::make(cd.i, cd.j, cd.k, cd.s);
        QLPair instance = [&]() -> QLPair {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                try {
                    HLine g = omega();
                    if (cd.u_js_infinite && cd.u_ik_infinite) {
                        // only omega passes through both infinite points
                    } else if (cd.u_js_infinite || cd.u_ik_infinite) {
                        HLine side = cd.u_js_infinite ? quad.side(sel.j, sel.s)
                                                      : quad.side(sel.i, sel.k);
                        HPoint dir = meet(side, omega());
                        HPoint f = random_affine_point(ctx.rng, bound);
                        g = join(dir, f);
                    } else {
                        HPoint f1 = random_affine_point(ctx.rng, bound);
                        HPoint f2 = random_affine_point(ctx.rng, bound);
                        g = join(f1, f2);
                    }
                    QLPair cand(quad, g);
                    UPoints u = u_points(cand);
                    if (at_infinity(u.at(sel.j, sel.s)) != cd.u_js_infinite) continue;
                    if (at_infinity(u.at(sel.i, sel.k)) != cd.u_ik_infinite) continue;
                    return cand;
                } catch (const Error&) {
                    continue;
                }
            }
            raise(Err::ExhaustedAttempts, "no realization for case " + cd.label());
        }();

        ctx.describe = [instance, label = cd.label()] {
            json j = qlpair_to_json(instance);
            j["case"] = label;
            return j;
        };

        UPoints u = u_points(instance);
        HPoint m = sharygin_point(instance, u, sel.i, sel.j, sel.k);
        HPoint n = sharygin_point(instance, u, sel.j, sel.i, sel.s);
        if (!concurrent(instance.g(), join(m, n), instance.side(sel.k, sel.s)))
            ctx.fail("part 1 fails for case " + cd.label());
        AuxPoints aux = aux_points(instance, u, sel);
        if (!concurrent(join(instance.vertex(sel.s), m), join(instance.vertex(sel.k), n),
                        join(aux.I, aux.J)))
            ctx.fail("part 2 fails for case " + cd.label());
    }
}

inline const std::vector<std::pair<std::string, CheckFn>>& check_registry() {
    static const std::vector<std::pair<std::string, CheckFn>> registry = {
        {"pappus", check_pappus},
        {"desargues", check_desargues},
        {"pascal-fwd", check_pascal_forward},
        {"pappus-desargues-involution", check_thm4_involution},
        {"self-polar", check_self_polar},
        {"problem2", check_problem2},
        {"problem3", check_problem3},
        {"problem4.1", check_problem4_part1},
        {"problem4.2", check_problem4_part2},
        {"thm6.1", check_thm6_part1},
        {"thm6.2", check_thm6_part2},
        {"thm6.3", check_thm6_part3},
        {"prop1", check_prop1},
        {"prop2", check_prop2},
        {"prop3", check_prop3},
        {"prop4", check_prop4},
        {"thm7", check_thm7},
        {"thm8", check_thm8},
        {"prop5", check_prop5},
        {"omega-midpoints", check_omega_midpoints},
        {"omega-center", check_omega_center},
        {"cases48", check_cases48},
    };
    return registry;
}

inline void run_check_on_instance(const std::string& id, const CheckFn& fn,
                                  const TrialInstance& inst, CheckReport& report) {
    CheckContext ctx{inst, inst.check_stream(id), [&inst] { return qlpair_to_json(inst.ql()); }, {}};
    try {
        fn(ctx);
    } catch (const Error& e) {
        json payload;
        try {
            payload = ctx.describe();
        } catch (const Error&) {
            payload = json();
        }
        report.failures.push_back(CheckFailure{inst.trial(), e.what(), payload});
    }
    for (std::string& note : ctx.degeneracy_notes)
        report.degeneracies.emplace_back(inst.trial(), std::move(note));
    ++report.instances_run;
}

}  // namespace detail

inline std::vector<std::string> check_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, fn] : detail::check_registry()) ids.push_back(id);
    return ids;
}

inline CheckReport run_check(const std::string& check_id, const TrialConfig& cfg) {
    cfg.validate();
    const detail::CheckFn* fn = nullptr;
    for (const auto& [id, f] : detail::check_registry())
        if (id == check_id) fn = &f;
    if (!fn) raise(Err::UnknownCheck, "no check named '" + check_id + "'");

    CheckReport report;
    report.check_id = check_id;
    for (int t = 0; t < cfg.trials; ++t) {
        detail::TrialInstance inst(cfg, t);
        detail::run_check_on_instance(check_id, *fn, inst, report);
    }
    return report;
}

/// Runs every registered check; construction bundles are computed once per
/// trial and shared across the checks of that trial.
inline std::vector<CheckReport> run_all(const TrialConfig& cfg) {
    cfg.validate();
    std::vector<CheckReport> reports;
    for (const auto& [id, fn] : detail::check_registry()) {
        CheckReport r;
        r.check_id = id;
        reports.push_back(std::move(r));
    }
    for (int t = 0; t < cfg.trials; ++t) {
        detail::TrialInstance inst(cfg, t);
        size_t idx = 0;
        for (const auto& [id, fn] : detail::check_registry()) {
            detail::run_check_on_instance(id, fn, inst, reports[idx]);
            ++idx;
        }
    }
    return reports;
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (!r.pass()) return false;
    return true;
}

}  // namespace sharq

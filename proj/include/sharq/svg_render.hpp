#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sharq/sharygin.hpp"

namespace sharq {

struct Viewport {
    Rational x_min, y_min, x_max, y_max;
    int width_px = 800;
    int height_px = 600;

    void validate() const {
        if (!(x_min < x_max) || !(y_min < y_max))
            raise(Err::InvalidConfig, "viewport must satisfy x_min < x_max and y_min < y_max");
        if (width_px < 1 || height_px < 1)
            raise(Err::InvalidConfig, "viewport pixel dimensions must be positive");
    }
};

enum class FigurePreset { quadrangle, curves, ninepoint };

inline FigurePreset parse_preset(const std::string& name) {
    if (name == "quadrangle") return FigurePreset::quadrangle;
    if (name == "curves") return FigurePreset::curves;
    if (name == "ninepoint") return FigurePreset::ninepoint;
    raise(Err::InvalidConfig, "unknown figure preset '" + name + "'");
}

namespace svg_detail {

/// Fixed three-decimal rendering of an exact rational (round half up), the
/// only lossy step of the pipeline.
inline std::string fixed3(const Rational& v) {
    Integer n = numerator(v) * 2000 + denominator(v);
    Integer d = denominator(v) * 2;
    Integer q = n / d;
    if (n % d != 0 && n < 0) q -= 1;  // floor for negatives
    bool negative = q < 0;
    Integer a = negative ? Integer(-q) : q;
    Integer whole = a / 1000;
    Integer frac = a % 1000;
    std::string fs = frac.str();
    while (fs.size() < 3) fs.insert(fs.begin(), '0');
    return (negative ? "-" : "") + whole.str() + "." + fs;
}

struct PixelMapper {
    const Viewport& vp;

    std::string x(const Rational& wx) const {
        return fixed3(Rational(vp.width_px) * (wx - vp.x_min) / (vp.x_max - vp.x_min));
    }
    std::string y(const Rational& wy) const {
        return fixed3(Rational(vp.height_px) * (vp.y_max - wy) / (vp.y_max - vp.y_min));
    }

    bool inside(const Rational& wx, const Rational& wy) const {
        return vp.x_min <= wx && wx <= vp.x_max && vp.y_min <= wy && wy <= vp.y_max;
    }

    bool inside_margin(const Rational& wx, const Rational& wy) const {
        Rational mx = (vp.x_max - vp.x_min) / 2;
        Rational my = (vp.y_max - vp.y_min) / 2;
        return vp.x_min - mx <= wx && wx <= vp.x_max + mx && vp.y_min - my <= wy &&
               wy <= vp.y_max + my;
    }
};

inline std::optional<std::pair<AffinePoint, AffinePoint>> clip_line(const HLine& l,
                                                                    const Viewport& vp) {
    if (l == omega()) return std::nullopt;

    const std::array<HLine, 4> borders = {
        HLine(Rational(1), Rational(0), -vp.x_min), HLine(Rational(1), Rational(0), -vp.x_max),
        HLine(Rational(0), Rational(1), -vp.y_min), HLine(Rational(0), Rational(1), -vp.y_max)};

    std::vector<AffinePoint> hits;
    auto add = [&](const Rational& x, const Rational& y) {
        if (!(vp.x_min <= x && x <= vp.x_max && vp.y_min <= y && y <= vp.y_max)) return;
        for (const AffinePoint& h : hits)
            if (h.x == x && h.y == y) return;
        hits.push_back(AffinePoint{x, y});
    };

    for (const HLine& border : borders) {
        if (l == border) {
            // The line is a viewport edge; both corners of that edge are hits.
            if (border[1] == 0) {  // vertical border x = c
                Rational x = make_rational(-border[2], border[0]);
                add(x, vp.y_min);
                add(x, vp.y_max);
            } else {
                Rational y = make_rational(-border[2], border[1]);
                add(vp.x_min, y);
                add(vp.x_max, y);
            }
            continue;
        }
        HPoint p = meet(l, border);
        if (at_infinity(p)) continue;
        auto a = std::get<AffinePoint>(euclidean_extract(p));
        add(a.x, a.y);
    }

    if (hits.size() < 2) return std::nullopt;
    size_t best_i = 0, best_j = 1;
    Rational best = -1;
    for (size_t i = 0; i < hits.size(); ++i)
        for (size_t j = i + 1; j < hits.size(); ++j) {
            Rational dx = hits[i].x - hits[j].x;
            Rational dy = hits[i].y - hits[j].y;
            Rational d2 = dx * dx + dy * dy;
            if (d2 > best) {
                best = d2;
                best_i = i;
                best_j = j;
            }
        }
    if (best == 0) return std::nullopt;
    return std::make_pair(hits[best_i], hits[best_j]);
}

/// Exact sample points of a conic: a full projective sweep of the pencil of
/// lines through a base point of the conic. Raw (non-canonicalized) triples
/// keep the w-component continuous along the sweep so branch crossings of the
/// infinite line are detectable by sign.
class ConicSampler {
public:
    ConicSampler(const Conic& conic, const HPoint& base) : c_(conic), p_(base) {
        // Pencil targets D0, D1 with base off the line D0 D1.
        if (p_[2] != 0) {
            d0_ = {Integer(1), Integer(0), Integer(0)};
            d1_ = {Integer(0), Integer(1), Integer(0)};
        } else if (p_[1] != 0) {
            d0_ = {Integer(1), Integer(0), Integer(0)};
            d1_ = {Integer(0), Integer(0), Integer(1)};
        } else {
            d0_ = {Integer(0), Integer(1), Integer(0)};
            d1_ = {Integer(0), Integer(0), Integer(1)};
        }
    }

    /// Raw conic point for sweep parameter s in [0, 1): the pencil target is
    /// (lambda : mu) = (s(1-s) : 2s-1), a monotone loop over all directions.
    linalg::Vec3 at(const Rational& s) const {
        Rational lam = s * (1 - s);
        Rational mu = 2 * s - 1;
        std::array<Rational, 2> pair{lam, mu};
        auto ints = linalg::clear_denominators(pair);
        linalg::Vec3 q;
        for (size_t i = 0; i < 3; ++i) q[i] = ints[0] * d0_[i] + ints[1] * d1_[i];
        Integer qq = linalg::dot(q, linalg::mul_vec(c_.matrix(), q));
        Integer pq = linalg::dot(p_.triple(), linalg::mul_vec(c_.matrix(), q));
        linalg::Vec3 x;
        for (size_t i = 0; i < 3; ++i) x[i] = qq * p_.triple()[i] - 2 * pq * q[i];
        return x;
    }

private:
    Conic c_;
    HPoint p_;
    linalg::Vec3 d0_, d1_;
};

struct Branch {
    std::vector<AffinePoint> points;  // exact conic points
    bool closed = false;
};

/// Splits the sweep into affine branches at crossings of the infinite line and
/// resamples each branch at 128 exact points.
inline std::vector<Branch> conic_branches(const Conic& c, const HPoint& base) {
    constexpr int kCoarse = 256;
    constexpr int kPerBranch = 128;
    ConicSampler sampler(c, base);

    std::vector<int> w_sign(kCoarse);
    for (int k = 0; k < kCoarse; ++k) {
        linalg::Vec3 x = sampler.at(Rational(k, kCoarse));
        w_sign[k] = x[2] == 0 ? 0 : (x[2] > 0 ? 1 : -1);
    }

    // Break positions: k where the w-sign changes against the previous sample
    // (circularly) or vanishes.
    std::vector<std::pair<int, int>> runs;  // [start, length] in coarse indices
    std::vector<int> breaks;
    for (int k = 0; k < kCoarse; ++k) {
        int prev = (k + kCoarse - 1) % kCoarse;
        if (w_sign[k] == 0 || (w_sign[prev] != 0 && w_sign[k] != w_sign[prev])) breaks.push_back(k);
    }

    if (breaks.empty()) {
        runs.emplace_back(0, kCoarse);  // fully affine oval
    } else {
        for (size_t b = 0; b < breaks.size(); ++b) {
            int start = breaks[b];
            int end = breaks[(b + 1) % breaks.size()];
            int len = (end - start + kCoarse) % kCoarse;
            if (len == 0) len = kCoarse;
            if (w_sign[start] == 0) {
                ++start;
                --len;
            }
            if (len >= 2) runs.emplace_back(start, len);
        }
    }

    std::vector<Branch> out;
    for (auto [start, len] : runs) {
        Branch branch;
        branch.closed = breaks.empty();
        Rational s0 = Rational(start, kCoarse);
        Rational span = Rational(len - 1, kCoarse);
        for (int j = 0; j < kPerBranch; ++j) {
            Rational s = s0 + span * Rational(j, kPerBranch - 1);
            if (s >= 1) s -= 1;
            linalg::Vec3 x = sampler.at(s);
            if (x[2] == 0) continue;
            branch.points.push_back(
                AffinePoint{make_rational(x[0], x[2]), make_rational(x[1], x[2])});
        }
        if (branch.points.size() >= 2) out.push_back(std::move(branch));
    }
    return out;
}

class Canvas {
public:
    Canvas(const Viewport& vp) : vp_(vp), map_{vp} {}

    void line_segment(const HLine& l, const char* stroke, const char* width,
                      const char* dash = nullptr) {
        auto seg = clip_line(l, vp_);
        if (!seg) return;
        body_ << "  <line x1=\"" << map_.x(seg->first.x) << "\" y1=\"" << map_.y(seg->first.y)
              << "\" x2=\"" << map_.x(seg->second.x) << "\" y2=\"" << map_.y(seg->second.y)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
        if (dash) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
        drew_ = true;
    }

    void labeled_point(const HPoint& p, const std::string& label, const char* fill) {
        if (at_infinity(p)) {
            direction_arrow(p, label, fill);
            return;
        }
        auto a = std::get<AffinePoint>(euclidean_extract(p));
        if (!map_.inside(a.x, a.y)) return;
        std::string px = map_.x(a.x), py = map_.y(a.y);
        body_ << "  <circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"" << fill
              << "\"/>\n";
        body_ << "  <text x=\"" << px << "\" y=\"" << py
              << "\" dx=\"5\" dy=\"-5\" font-size=\"12\" fill=\"" << fill << "\">" << label
              << "</text>\n";
        drew_ = true;
    }

    /// Infinite points render as a short arrow along their direction, placed
    /// where the ray from the viewport center leaves the viewport.
    void direction_arrow(const HPoint& p, const std::string& label, const char* fill) {
        Integer dx = p[0], dy = p[1];
        Rational cx = (vp_.x_min + vp_.x_max) / 2;
        Rational cy = (vp_.y_min + vp_.y_max) / 2;
        std::optional<Rational> t_exit;
        auto consider = [&](const Rational& t) {
            if (t > 0 && (!t_exit || t < *t_exit)) t_exit = t;
        };
        if (dx != 0) {
            consider((vp_.x_min - cx) / Rational(dx));
            consider((vp_.x_max - cx) / Rational(dx));
        }
        if (dy != 0) {
            consider((vp_.y_min - cy) / Rational(dy));
            consider((vp_.y_max - cy) / Rational(dy));
        }
        if (!t_exit) return;
        Rational ex = cx + *t_exit * Rational(dx);
        Rational ey = cy + *t_exit * Rational(dy);
        Rational back = *t_exit * Rational(1, 10);
        Rational sx = ex - back * Rational(dx);
        Rational sy = ey - back * Rational(dy);
        body_ << "  <line x1=\"" << map_.x(sx) << "\" y1=\"" << map_.y(sy) << "\" x2=\""
              << map_.x(ex) << "\" y2=\"" << map_.y(ey) << "\" stroke=\"" << fill
              << "\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
        body_ << "  <text x=\"" << map_.x(sx) << "\" y=\"" << map_.y(sy)
              << "\" dx=\"4\" dy=\"-4\" font-size=\"12\" fill=\"" << fill << "\">" << label
              << "</text>\n";
        drew_ = true;
    }

    void conic_path(const Conic& c, const HPoint& base, const char* stroke) {
        if (c.degenerate()) return;
        for (const Branch& branch : conic_branches(c, base)) {
            std::ostringstream d;
            bool pen_down = false;
            bool visible = false;
            for (const AffinePoint& a : branch.points) {
                if (!map_.inside_margin(a.x, a.y)) {
                    pen_down = false;
                    continue;
                }
                d << (pen_down ? " L " : " M ") << map_.x(a.x) << "," << map_.y(a.y);
                pen_down = true;
                visible = visible || map_.inside(a.x, a.y);
            }
            std::string path = d.str();
            if (!visible || path.empty()) continue;
            body_ << "  <path d=\"" << path.substr(1) << "\" fill=\"none\" stroke=\"" << stroke
                  << "\" stroke-width=\"1.2\"/>\n";
            drew_ = true;
        }
    }

    bool drew_anything() const { return drew_; }

    std::string document() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << vp_.width_px
            << "\" height=\"" << vp_.height_px << "\" viewBox=\"0 0 " << vp_.width_px << " "
            << vp_.height_px << "\">\n";
        out << "  <defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
               "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
        out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << body_.str();
        out << "</svg>\n";
        return out.str();
    }

private:
    Viewport vp_;
    PixelMapper map_;
    std::ostringstream body_;
    bool drew_ = false;
};

inline const char* curve_color(size_t idx) {
    static constexpr const char* palette[6] = {"#c0392b", "#2471a3", "#1e8449",
                                               "#af601a", "#7d3c96", "#148f77"};
    return palette[idx % 6];
}

}  // namespace svg_detail

/// Viewport hugging the finite construction points with a 40% margin.
inline Viewport default_viewport(const ConstructionBundle& bundle, int width_px = 800,
                                 int height_px = 600) {
    std::vector<HPoint> anchors(bundle.ql.quad().vertices().begin(),
                                bundle.ql.quad().vertices().end());
    for (auto [i, j] : detail::vertex_pairs()) {
        anchors.push_back(bundle.u.at(i, j));
        anchors.push_back(bundle.g_points[detail::pair_index(i, j)]);
    }

    std::optional<Rational> x_min, x_max, y_min, y_max;
    for (const HPoint& p : anchors) {
        if (at_infinity(p)) continue;
        auto a = std::get<AffinePoint>(euclidean_extract(p));
        if (!x_min || a.x < *x_min) x_min = a.x;
        if (!x_max || a.x > *x_max) x_max = a.x;
        if (!y_min || a.y < *y_min) y_min = a.y;
        if (!y_max || a.y > *y_max) y_max = a.y;
    }
    Rational mx = (*x_max - *x_min) * Rational(2, 5) + Rational(1, 2);
    Rational my = (*y_max - *y_min) * Rational(2, 5) + Rational(1, 2);
    Viewport vp{*x_min - mx, *y_min - my, *x_max + mx, *y_max + my, width_px, height_px};
    vp.validate();
    return vp;
}

/// Deterministic SVG figure of a construction bundle. Identical inputs give
/// byte-identical output.
inline std::string render_svg(const ConstructionBundle& bundle, const Viewport& vp,
                              FigurePreset preset) {
    vp.validate();
    svg_detail::Canvas canvas(vp);
    const QLPair& ql = bundle.ql;

    for (auto [i, j] : detail::vertex_pairs())
        canvas.line_segment(ql.side(i, j), "#999999", "0.8");
    canvas.line_segment(ql.g(), "#c0392b", "1.4");

    if (preset == FigurePreset::curves) {
        for (auto [i, j] : detail::vertex_pairs()) {
            size_t idx = detail::pair_index(i, j);
            if (bundle.curves[idx])
                canvas.conic_path(*bundle.curves[idx], ql.vertex(i), svg_detail::curve_color(idx));
        }
        for (auto [i, j] : detail::vertex_pairs()) {
            size_t idx = detail::pair_index(i, j);
            canvas.labeled_point(bundle.g_points[idx],
                                 "G" + std::to_string(i) + std::to_string(j),
                                 svg_detail::curve_color(idx));
        }
    } else if (preset == FigurePreset::ninepoint) {
        if (bundle.nine_point)
            canvas.conic_path(*bundle.nine_point, bundle.g_points[0], "#2471a3");
        for (auto [i, j] : detail::vertex_pairs()) {
            canvas.labeled_point(bundle.g_points[detail::pair_index(i, j)],
                                 "G" + std::to_string(i) + std::to_string(j), "#2471a3");
        }
        static constexpr const char* diag_labels[3] = {"\xC4\xAA", "I", "I\xE2\x80\xB2"};
        for (size_t d = 0; d < 3; ++d)
            canvas.labeled_point(bundle.diagonals[d], diag_labels[d], "#1e8449");
        if (bundle.pole_of_g) canvas.labeled_point(*bundle.pole_of_g, "G", "#000000");
    } else {
        // Plain quadrangle figure: the selection (1,2,3,4) quartet with its
        // auxiliary meets.
        IndexSelection sel = IndexSelection::make(1, 2, 3, 4);
        canvas.labeled_point(bundle.m(1, 2, 3), "M_12^3", "#7d3c96");
        canvas.labeled_point(bundle.m(2, 1, 4), "M_21^4", "#7d3c96");
        canvas.labeled_point(bundle.m(1, 2, 4), "M_12^4", "#7d3c96");
        canvas.labeled_point(bundle.m(2, 1, 3), "M_21^3", "#7d3c96");
        AuxPoints aux = aux_points(ql, bundle.u, sel);
        canvas.labeled_point(aux.I, "I", "#1e8449");
        canvas.labeled_point(aux.I_prime, "I\xE2\x80\xB2", "#1e8449");
        canvas.labeled_point(aux.J, "J", "#1e8449");
        canvas.labeled_point(aux.J_prime, "J\xE2\x80\xB2", "#1e8449");
        try {
            auto [o, o_prime] = homology_centers(ql, bundle.u, sel);
            canvas.labeled_point(o, "O", "#000000");
            canvas.labeled_point(o_prime, "O\xE2\x80\xB2", "#000000");
        } catch (const Error&) {
            // degenerate position: centers left out of the figure
        }
    }

    for (auto [i, j] : detail::vertex_pairs())
        canvas.labeled_point(bundle.u.at(i, j), "U" + std::to_string(i) + std::to_string(j),
                             "#c0392b");
    for (int v = 1; v <= 4; ++v)
        canvas.labeled_point(ql.vertex(v), "A" + std::to_string(v), "#000000");

    if (!canvas.drew_anything())
        raise(Err::EmptyViewport, "no finite element intersects the viewport");
    return canvas.document();
}

}  // namespace sharq

#pragma once

#include <json.hpp>

#include <string>

#include "sharq/sharygin.hpp"

namespace sharq {

using json = nlohmann::json;

inline json point_to_json(const HPoint& p) {
    return json::array({p[0].str(), p[1].str(), p[2].str()});
}

inline json line_to_json(const HLine& l) {
    return json::array({l[0].str(), l[1].str(), l[2].str()});
}

inline json conic_to_json(const Conic& c) {
    json arr = json::array();
    for (const Integer& q : c.coefficients()) arr.push_back(q.str());
    return arr;
}

inline json map_to_json(const ProjMap& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(m.matrix()[r][c].str());
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline Rational rational_at(const json& node, const std::string& path) {
    if (!node.is_string())
        raise(Err::InvalidConfig, path + ": expected a rational string");
    try {
        return parse_rational(node.get<std::string>());
    } catch (const Error&) {
        raise(Err::InvalidConfig,
              path + ": malformed rational string '" + node.get<std::string>() + "'");
    }
}

inline std::array<Rational, 3> triple_at(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 3)
        raise(Err::InvalidConfig, path + ": expected an array of 3 rational strings");
    return {rational_at(node[0], path + "[0]"), rational_at(node[1], path + "[1]"),
            rational_at(node[2], path + "[2]")};
}

}  // namespace detail

inline HPoint point_from_json(const json& node, const std::string& path) {
    auto [x, y, w] = detail::triple_at(node, path);
    return HPoint(x, y, w);
}

inline HLine line_from_json(const json& node, const std::string& path) {
    auto [u0, u1, u2] = detail::triple_at(node, path);
    return HLine(u0, u1, u2);
}

inline Conic conic_from_json(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 6)
        raise(Err::InvalidConfig, path + ": expected an array of 6 rational strings");
    std::array<Rational, 6> q;
    for (size_t c = 0; c < 6; ++c)
        q[c] = detail::rational_at(node[c], path + "[" + std::to_string(c) + "]");
    return Conic::from_coefficients(q);
}

/// Persistent form of a (q,l)-pair plus an optional derived bundle. The
/// derived object is carried verbatim; anything absent is recomputed, never
/// guessed.
struct ConfigDocument {
    static constexpr int format_version = 1;
    std::array<HPoint, 4> vertices;
    HLine g;
    json derived;  // null when absent

    bool operator==(const ConfigDocument&) const = default;
};

inline json config_to_json(const ConfigDocument& doc) {
    json j;
    j["format_version"] = ConfigDocument::format_version;
    json verts = json::array();
    for (const HPoint& v : doc.vertices) verts.push_back(point_to_json(v));
    j["vertices"] = verts;
    j["g"] = line_to_json(doc.g);
    if (!doc.derived.is_null()) j["derived"] = doc.derived;
    return j;
}

inline ConfigDocument config_from_json(const json& j) {
    if (!j.is_object()) raise(Err::InvalidConfig, "config root must be an object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != ConfigDocument::format_version)
        raise(Err::InvalidConfig, "format_version: expected the integer 1");
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].size() != 4)
        raise(Err::InvalidConfig, "vertices: expected an array of 4 points");
    if (!j.contains("g")) raise(Err::InvalidConfig, "g: missing line");

    auto vertex_at = [&](size_t idx) {
        return point_from_json(j["vertices"][idx], "vertices[" + std::to_string(idx) + "]");
    };
    ConfigDocument doc{{vertex_at(0), vertex_at(1), vertex_at(2), vertex_at(3)},
                       line_from_json(j["g"], "g"),
                       j.contains("derived") ? j["derived"] : json()};
    return doc;
}

inline json qlpair_to_json(const QLPair& ql) {
    json j;
    json verts = json::array();
    for (const HPoint& v : ql.quad().vertices()) verts.push_back(point_to_json(v));
    j["vertices"] = verts;
    j["g"] = line_to_json(ql.g());
    return j;
}

namespace detail {

inline std::string pair_key(const char* prefix, int i, int j) {
    return std::string(prefix) + "." + std::to_string(i) + std::to_string(j);
}

}  // namespace detail

/// Serializes the full construction bundle under stable keys. Selection-bound
/// objects (aux points, O, O', Phi, Phi') use the given selection.
inline json derived_to_json(const ConstructionBundle& bundle, const IndexSelection& sel) {
    json d;
    json degeneracies = json::array();

    for (auto [i, j] : detail::vertex_pairs()) {
        d[detail::pair_key("U", i, j)] = point_to_json(bundle.u.at(i, j));
        d[detail::pair_key("G", i, j)] = point_to_json(bundle.g_points[detail::pair_index(i, j)]);
        const auto& curve = bundle.curves[detail::pair_index(i, j)];
        if (curve)
            d[detail::pair_key("k", i, j)] = conic_to_json(*curve);
        else
            degeneracies.push_back(detail::pair_key("k", i, j));
    }

    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            if (b == a) continue;
            for (int c = 1; c <= 4; ++c) {
                if (c == a || c == b) continue;
                std::string key =
                    "M." + std::to_string(a) + std::to_string(b) + "^" + std::to_string(c);
                d[key] = point_to_json(bundle.m(a, b, c));
            }
        }

    if (bundle.nine_point)
        d["k9"] = conic_to_json(*bundle.nine_point);
    else
        degeneracies.push_back("k9");
    if (bundle.pole_of_g)
        d["G"] = point_to_json(*bundle.pole_of_g);
    else if (bundle.nine_point)
        degeneracies.push_back("G");

    AuxPoints aux = aux_points(bundle.ql, bundle.u, sel);
    d["I"] = point_to_json(aux.I);
    d["Iprime"] = point_to_json(aux.I_prime);
    d["Ibar"] = point_to_json(aux.I_bar);
    d["J"] = point_to_json(aux.J);
    d["Jprime"] = point_to_json(aux.J_prime);
    d["L"] = point_to_json(aux.L);
    d["Lprime"] = point_to_json(aux.L_prime);

    try {
        Homologies h = homologies(bundle.ql, bundle.u, sel);
        d["O"] = point_to_json(h.center);
        d["Oprime"] = point_to_json(h.center_prime);
        d["Phi"] = map_to_json(h.phi);
        d["PhiPrime"] = map_to_json(h.phi_prime);
    } catch (const Error& e) {
        if (e.code() != Err::InvalidPair && e.code() != Err::DegenerateHomology) throw;
        degeneracies.push_back("Phi");
        degeneracies.push_back("PhiPrime");
    }

    d["selection"] = json::array({sel.i, sel.j, sel.k, sel.s});
    if (!degeneracies.empty()) d["degeneracies"] = degeneracies;
    return d;
}

}  // namespace sharq

#pragma once

#include "sharq/projective.hpp"

namespace sharq {

namespace detail {

inline linalg::Mat3 canonical_matrix(linalg::Mat3 m, const char* what) {
    std::array<Integer, 9> flat;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) flat[static_cast<size_t>(3 * r + c)] = m[r][c];
    if (!linalg::canonicalize(flat)) raise(Err::InvalidConfig, std::string(what) + " must be nonzero");
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = flat[static_cast<size_t>(3 * r + c)];
    return m;
}

}  // namespace detail

/// Invertible collineation of the plane, a 3x3 integer matrix up to scale
/// (canonical: coprime entries, first nonzero entry positive in row-major order).
class ProjMap {
public:
    explicit ProjMap(linalg::Mat3 m) : m_(detail::canonical_matrix(std::move(m), "collineation")) {
        if (linalg::det3(m_) == 0) raise(Err::InvalidConfig, "collineation matrix must be invertible");
    }

    static ProjMap identity() {
        return ProjMap(linalg::Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    }

    const linalg::Mat3& matrix() const { return m_; }
    bool operator==(const ProjMap&) const = default;

    HPoint apply(const HPoint& p) const { return HPoint(linalg::mul_vec(m_, p.triple())); }

    /// Lines transform by the inverse transpose; up to scale that is the
    /// cofactor matrix (transpose of the adjugate).
    HLine apply(const HLine& l) const {
        return HLine(linalg::mul_vec(linalg::transpose(linalg::adjugate(m_)), l.triple()));
    }

    ProjMap inverse() const { return ProjMap(linalg::adjugate(m_)); }

    ProjMap compose(const ProjMap& inner) const { return ProjMap(linalg::mul(m_, inner.m_)); }

private:
    linalg::Mat3 m_;
};

/// The unique collineation with the given axis fixed pointwise and center fixed
/// linewise that maps pre_image to image. Realized as I + lambda * center * axis^T,
/// which covers elations (center on axis) with the same formula.
inline ProjMap homology_from(const HPoint& center, const HLine& axis, const HPoint& pre_image,
                             const HPoint& image) {
    if (incident(pre_image, axis)) raise(Err::InvalidPair, "pre-image lies on the axis");
    if (pre_image == center) raise(Err::InvalidPair, "pre-image equals the center");
    if (image == center) raise(Err::InvalidPair, "image equals the center");
    if (incident(image, axis)) raise(Err::InvalidPair, "image lies on the axis");
    if (image != pre_image && !incident(image, join(center, pre_image)))
        raise(Err::InvalidPair, "image must lie on the line through center and pre-image");

    if (image == pre_image) return ProjMap::identity();

    // image = mu * pre_image + nu * center, solved exactly in the pencil.
    auto [mu, nu] =
        detail::pencil_coordinates(image.triple(), pre_image.triple(), center.triple());
    Integer axis_dot_pre = linalg::dot(axis.triple(), pre_image.triple());
    Rational lambda = make_rational(nu, mu * axis_dot_pre);

    linalg::Mat3 m;
    Integer den = denominator(lambda);
    Integer num = numerator(lambda);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            m[r][c] = num * center.triple()[static_cast<size_t>(r)] *
                      axis.triple()[static_cast<size_t>(c)];
            if (r == c) m[r][c] += den;
        }
    if (linalg::det3(m) == 0) raise(Err::DegenerateHomology, "solved map is singular");
    return ProjMap(std::move(m));
}

}  // namespace sharq

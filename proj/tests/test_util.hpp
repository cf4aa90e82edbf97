#pragma once

#include "azulift/algebra.hpp"
#include "azulift/random.hpp"

namespace testutil {

using namespace azulift;

inline Vec random_elem(const Tower& r, Rng& rng, int64_t h = 5) {
    Vec v = r.zero();
    for (Scalar& s : v) s = r.field().from_rational(rng.rational(h));
    return v;
}

inline Vec random_unit(const Tower& r, Rng& rng, int64_t h = 5) {
    for (;;) {
        Vec v = random_elem(r, rng, h);
        if (r.is_unit(v)) return v;
    }
}

inline Vec random_alg_elem(const StructAlgebra& a, Rng& rng, int64_t h = 3) {
    Vec v = a.zero();
    for (Scalar& s : v) s = a.ring().field().from_int(rng.range(-h, h));
    return v;
}

/// Nonsquare rational of height <= h.
inline Rational random_nonsquare(Rng& rng, int64_t h) {
    for (;;) {
        Rational q = rng.nonzero_rational(h);
        if (!Field::rationals().is_square(q)) return q;
    }
}


/// Unital, multiplicative and bijective at residue: an explicit isomorphism.
inline bool is_isomorphism(const StructAlgebra& src, const StructAlgebra& dst, const std::vector<Vec>& images) {
    if (images.size() != src.dim() || src.dim() != dst.dim()) return false;
    AlgebraMap f{src.share(), dst.share(), images, 0, nullptr};
    if (!f.is_unital() || !f.is_multiplicative()) return false;
    TMatrix m(dst.base(), dst.dim(), dst.dim());
    for (size_t j = 0; j < dst.dim(); ++j)
        for (size_t i = 0; i < dst.dim(); ++i) m.set(i, j, dst.coord(images[j], i));
    return residue_rank(m) == dst.dim();
}

/// Quaternion-shaped table with i^2 = a, j^2 = b and no unit requirement.
inline StructAlgebra quaternion_like(const TowerPtr& r, const Vec& a, const Vec& b) {
    const size_t R = r->width();
    ProductTable t = make_table(4, R, [&](size_t x, size_t y, MSpan out) {
        const size_t p1 = x & 1, q1 = x >> 1, p2 = y & 1, q2 = y >> 1;
        Vec c = r->one();
        if (q1 & p2) c = r->neg(c);
        if (p1 & p2) c = r->mul(c, a);
        if (q1 & q2) c = r->mul(c, b);
        const size_t k = (p1 ^ p2) | ((q1 ^ q2) << 1);
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(k * R));
    });
    Vec one(4 * R);
    const Vec unit = r->one();
    std::copy(unit.begin(), unit.end(), one.begin());
    return {r, std::move(t), std::move(one)};
}

}  // namespace testutil

#include "azulift/idempotents.hpp"

#include "azulift/numtheory.hpp"
#include "azulift/random.hpp"
#include "azulift/symbols.hpp"

#include <algorithm>

namespace azulift {

namespace {

using Poly = Vec;

void trim(const Field&, Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_sub(const Field& k, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = k.sub(a[i], b[i]);
    trim(k, a);
    return a;
}

Poly poly_mul(const Field& k, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) k.add_mul(r[i + j], a[i], b[j]);
    trim(k, r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Field& k, Poly a, const Poly& b) {
    trim(k, a);
    if (b.empty()) fail(ErrorKind::Precondition, "polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    Scalar lead_inv = k.inv(b.back());
    for (size_t i = a.size(); i-- >= b.size();) {
        Scalar c = k.mul(a[i], lead_inv);
        q[i - (b.size() - 1)] = c;
        for (size_t j = 0; j < b.size(); ++j) k.sub_mul(a[i - (b.size() - 1) + j], c, b[j]);
        if (i == b.size() - 1) break;
    }
    trim(k, a);
    trim(k, q);
    return {q, a};
}

// s a + t b = g, g monic
struct ExtGcd {
    Poly g, s, t;
};

ExtGcd ext_gcd(const Field& k, Poly a, Poly b) {
    Poly s0{k.from_int(1)}, s1{}, t0{}, t1{k.from_int(1)};
    trim(k, a);
    trim(k, b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(k, a, b);
        Poly s2 = poly_sub(k, s0, poly_mul(k, q, s1));
        Poly t2 = poly_sub(k, t0, poly_mul(k, q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Scalar inv = k.inv(a.back());
    for (auto* p : {&a, &s0, &t0})
        for (auto& c : *p) c = k.mul(c, inv);
    return {a, s0, t0};
}

Vec eval_poly(const StructAlgebra& a, const Poly& p, CSpan x) {
    Vec r = a.zero();
    for (size_t i = p.size(); i-- > 0;) {
        r = a.mul(r, x);
        Vec c = a.ring().from_scalar(p[i]);
        a.ring().add_into(r, a.scale(c, a.one()));
    }
    return r;
}

std::optional<Scalar> field_sqrt(const Field& k, const Scalar& v) {
    if (k.is_rationals()) return nt::rational_sqrt(v);
    if (!k.is_square(v)) return std::nullopt;
    return Scalar(static_cast<int64_t>(nt::sqrt_mod_prime(static_cast<uint64_t>(v.small_num()), k.characteristic())));
}

void require_field(const StructAlgebra& a) {
    if (!a.ring().is_field()) fail(ErrorKind::Precondition, "rank_one_idempotent needs an algebra over a field");
}

std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<mpz_class> out{1};
    for (auto [p, e] : nt::factor(n)) {
        const size_t cur = out.size();
        mpz_class pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= static_cast<unsigned long>(p);
            for (size_t j = 0; j < cur; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

bool proper_idempotent(const StructAlgebra& a, const Vec& e) {
    return !a.is_zero(e) && !a.equal(e, a.one()) && a.equal(a.mul(e, e), e);
}

// Idempotent from a singular, non-nilpotent element y: projection onto the
// part of y where its minimal polynomial does not vanish at 0.
std::optional<Vec> idempotent_from_poly_split(const StructAlgebra& a, const Vec& y) {
    const Field& k = a.ring().field();
    Poly p = min_poly(a, y);
    size_t m = 0;
    while (m < p.size() && p[m].is_zero()) ++m;
    if (m == 0 || m + 1 >= p.size()) return std::nullopt;  // invertible or nilpotent
    Poly xm(m + 1);
    xm[m] = k.from_int(1);
    Poly q(p.begin() + static_cast<std::ptrdiff_t>(m), p.end());
    ExtGcd g = ext_gcd(k, xm, q);
    if (g.g.size() != 1) return std::nullopt;
    Vec e = eval_poly(a, poly_mul(k, g.s, xm), y);
    if (!proper_idempotent(a, e)) return std::nullopt;
    return e;
}

std::optional<Vec> idempotent_from_singular(const StructAlgebra& a, const Vec& z, Rng& rng, int tries) {
    if (auto e = idempotent_from_poly_split(a, z)) return e;
    for (size_t i = 0; i < a.dim(); ++i) {
        if (auto e = idempotent_from_poly_split(a, a.mul(z, a.basis(i)))) return e;
        if (auto e = idempotent_from_poly_split(a, a.mul(a.basis(i), z))) return e;
    }
    const Field& k = a.ring().field();
    for (int t = 0; t < tries; ++t) {
        Vec w = a.zero();
        for (size_t i = 0; i < a.dim(); ++i) w[i] = k.from_int(rng.range(-3, 3));
        if (auto e = idempotent_from_poly_split(a, a.mul(z, w))) return e;
    }
    return std::nullopt;
}

size_t center_dim(const StructAlgebra& a) {
    std::vector<Vec> basis;
    for (size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis(i));
    return centralizer(a, basis).algebra.dim();
}

// (1 + x / r) / 2 for x^2 = r^2.
Vec half_plus(const StructAlgebra& a, const Vec& x, const Scalar& r) {
    const Field& k = a.ring().field();
    Scalar half = k.inv(k.from_int(2));
    Vec e = a.scale(a.ring().from_scalar(k.mul(half, k.inv(r))), x);
    a.ring().add_into(e, a.scale(a.ring().from_scalar(half), a.one()));
    return e;
}

std::optional<Vec> quaternion_route(const StructAlgebra& a, Rng& rng) {
    const Field& k = a.ring().field();
    Vec x;
    Scalar alpha;
    for (size_t i = 1; i < 4 && x.empty(); ++i) {
        Poly p = min_poly(a, a.basis(i));
        if (p.size() != 3) continue;
        Scalar half = k.inv(k.from_int(2));
        Vec cand = a.basis(i);
        a.ring().add_into(cand, a.scale(a.ring().from_scalar(k.mul(p[1], half)), a.one()));
        Vec sq = a.mul(cand, cand);
        if (!a.equal(sq, a.scale(a.ring().from_scalar(sq[0]), a.one()))) continue;
        x = cand;
        alpha = sq[0];
    }
    if (x.empty()) return std::nullopt;
    if (alpha.is_zero()) return idempotent_from_singular(a, x, rng, 50);
    if (auto r = field_sqrt(k, alpha)) return half_plus(a, x, *r);
    Vec y;
    for (size_t i = 1; i < 4 && y.empty(); ++i) {
        Vec c = a.sub(a.mul(a.basis(i), x), a.mul(x, a.basis(i)));
        if (!a.is_zero(c)) y = c;
    }
    if (y.empty()) return std::nullopt;
    Vec y2 = a.mul(y, y);
    Scalar beta = y2[0];
    if (beta.is_zero() || !a.equal(y2, a.scale(a.ring().from_scalar(beta), a.one()))) return std::nullopt;
    if (auto r = field_sqrt(k, beta)) return half_plus(a, y, *r);
    if (k.is_rationals() && !ramification_set({alpha, beta}).empty())
        fail(ErrorKind::NotSplit, "quaternion algebra is ramified at " + format_places(ramification_set({alpha, beta})));
    auto g = solve_norm(k, alpha, beta);
    if (!g) fail(ErrorKind::NotSplit, "norm equation has no solution");
    // z = u + v x + y has reduced norm u^2 - alpha v^2 - beta = 0
    Vec z = a.add(a.scale(a.ring().from_scalar(k.from_rational(g->v)), x), y);
    Scalar u = k.from_rational(g->u);
    if (u.is_zero()) return idempotent_from_singular(a, z, rng, 50);
    a.ring().add_into(z, a.scale(a.ring().from_scalar(u), a.one()));
    Vec e = a.scale(a.ring().from_scalar(k.inv(k.mul(k.from_int(2), u))), z);
    if (!proper_idempotent(a, e)) return std::nullopt;
    return e;
}

std::optional<Vec> random_route(const StructAlgebra& a, Rng& rng, const IdempotentOptions& opt) {
    const Field& k = a.ring().field();
    const size_t d = a.dim();
    for (int draw = 0; draw < opt.max_draws; ++draw) {
        Vec x = a.zero();
        const int terms = static_cast<int>(rng.range(1, 3));
        for (int t = 0; t < terms; ++t) {
            size_t i = static_cast<size_t>(rng.range(1, static_cast<int64_t>(d) - 1));
            x[i] = k.add(x[i], k.from_int(rng.nonzero(std::min(opt.height, 3))));
        }
        Poly p = min_poly(a, x);
        for (const Scalar& r : rational_roots(k, p)) {
            Vec y = a.sub(x, a.scale(a.ring().from_scalar(r), a.one()));
            if (auto e = idempotent_from_singular(a, y, rng, 20)) return e;
        }
    }
    return std::nullopt;
}

}  // namespace

Vec min_poly(const StructAlgebra& a, CSpan x) {
    if (!a.ring().is_field()) fail(ErrorKind::Precondition, "min_poly needs an algebra over a field");
    const Field& k = a.ring().field();
    const size_t d = a.dim();
    std::vector<Vec> powers{a.one()};
    for (size_t deg = 1; deg <= d; ++deg) {
        powers.push_back(a.mul(powers.back(), x));
        TMatrix m(a.base(), d, deg + 1);
        for (size_t c = 0; c <= deg; ++c)
            for (size_t r = 0; r < d; ++r) m.at(r, c)[0] = powers[c][r];
        std::vector<Vec> ker = kernel(m);
        if (ker.empty()) continue;
        Vec p = ker.front();
        trim(k, p);
        Scalar inv = k.inv(p.back());
        for (auto& c : p) c = k.mul(c, inv);
        return p;
    }
    fail(ErrorKind::Degenerate, "minimal polynomial degree exceeds dimension");
}

std::vector<Scalar> rational_roots(const Field& k, const Vec& poly) {
    Poly p = poly;
    trim(k, p);
    std::vector<Scalar> roots;
    if (p.size() < 2) return roots;
    if (!k.is_rationals()) {
        const uint64_t q = k.characteristic();
        if (q > 200000) return roots;
        for (uint64_t v = 0; v < q; ++v) {
            Scalar x(static_cast<int64_t>(v)), acc;
            for (size_t i = p.size(); i-- > 0;) acc = k.add(k.mul(acc, x), p[i]);
            if (acc.is_zero()) roots.push_back(x);
        }
        return roots;
    }
    size_t z = 0;
    while (z < p.size() && p[z].is_zero()) ++z;
    if (z > 0) roots.emplace_back(0);
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(z));
    if (p.size() < 2) return roots;
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : p) ic.push_back(c.numerator() * (l / c.denominator()));
    const mpz_class a0 = abs(ic.front()), an = abs(ic.back());
    if (mpz_sizeinbase(a0.get_mpz_t(), 2) > 62 || mpz_sizeinbase(an.get_mpz_t(), 2) > 62) return roots;
    for (const auto& num : divisors(a0)) {
        for (const auto& den : divisors(an)) {
            for (int s : {1, -1}) {
                mpq_class qv(s * num, den);
                qv.canonicalize();
                Rational x(qv);
                Rational acc;
                for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
                if (acc.is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
            }
        }
    }
    return roots;
}

Vec rank_one_idempotent(const StructAlgebra& a, const IdempotentOptions& opt) {
    require_field(a);
    if (a.dim() == 1) return a.one();
    Rng rng(opt.seed);
    std::optional<Vec> e;
    if (a.dim() == 4 && center_dim(a) == 1) e = quaternion_route(a, rng);
    if (!e) e = random_route(a, rng, opt);
    if (!e) fail(ErrorKind::SearchExhausted, "no zero divisor found within the draw bound");
    Subalgebra c1 = corner(a, *e);
    Vec other = a.sub(a.one(), *e);
    Subalgebra c2 = corner(a, other);
    Subalgebra& small = c1.algebra.dim() <= c2.algebra.dim() ? c1 : c2;
    IdempotentOptions sub = opt;
    sub.seed = rng.split();
    Vec f = small.embed(a, rank_one_idempotent(small.algebra, sub));
    if (!a.equal(a.mul(f, f), f)) fail(ErrorKind::Degenerate, "recursion produced a non-idempotent");
    return f;
}

Vec hensel_lift_idempotent(const StructAlgebra& a, CSpan e0) {
    Vec e(e0.begin(), e0.end());
    Vec sq = a.mul(e, e);
    if (residue_element(a, sq) != residue_element(a, e)) fail(ErrorKind::NotIdempotentResidue, "residue is not idempotent");
    int steps = 0;
    while ((1 << steps) < a.ring().trunc()) ++steps;
    for (int s = 0; s < steps; ++s) {
        Vec e2 = a.mul(e, e);
        Vec e3 = a.mul(e2, e);
        e = a.sub(a.scale_int(3, e2), a.scale_int(2, e3));
    }
    if (!a.equal(a.mul(e, e), e)) fail(ErrorKind::Degenerate, "Newton iteration did not converge");
    return e;
}

}  // namespace azulift

#include "azulift/semilinear.hpp"

#include "azulift/numtheory.hpp"
#include "azulift/random.hpp"
#include "azulift/symbols.hpp"

namespace azulift {

namespace {

void require_quadratic(const Tower& s) {
    if (s.num_sqrts() != 1) fail(ErrorKind::Precondition, "expected a quadratic layer over T");
}

// Copies a flat element (restricted coordinates) into column `col`.
void set_column(TMatrix& m, size_t col, CSpan v) {
    const size_t n = m.trunc();
    for (size_t r = 0; r < m.rows(); ++r) m.set(r, col, v.subspan(r * n, n));
}

}  // namespace

bool is_local_square(const Rational& q, uint64_t place) {
    if (q.is_zero()) return true;
    mpz_class c = nt::squarefree_part(q);
    if (place == 0) return c > 0;
    if (place == 2) {
        if (mpz_even_p(c.get_mpz_t())) return false;
        mpz_class r = c % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    if (mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(place))) return false;
    return nt::legendre(c, place) == 1;
}

Vec hilbert90(const Tower& s, uint32_t sigma, CSpan z, uint64_t seed) {
    if (!s.equal(s.mul(z, s.galois(sigma, z)), s.one())) fail(ErrorKind::Precondition, "hilbert90 needs z sigma(z) = 1");
    Rng rng(seed);
    std::vector<Vec> ws{s.one()};
    for (int i = 0; i < s.num_sqrts(); ++i) {
        ws.push_back(s.sqrt_gen(i));
        ws.push_back(s.add(s.one(), s.sqrt_gen(i)));
    }
    for (int attempt = 0; attempt < 32; ++attempt) {
        Vec w;
        if (static_cast<size_t>(attempt) < ws.size()) {
            w = ws[static_cast<size_t>(attempt)];
        } else {
            w = s.zero();
            for (size_t mask = 0; mask < s.rank_over_base(); ++mask)
                w[mask * static_cast<size_t>(s.trunc())] = s.field().from_int(rng.range(-5, 5));
        }
        Vec out = s.add(w, s.mul(z, s.galois(sigma, w)));
        if (s.is_unit(out)) return out;
    }
    fail(ErrorKind::Degenerate, "no unit Hilbert 90 solution in 32 attempts");
}

Vec sqrt_in_base(const Tower& t, CSpan a, const Scalar& r0) {
    const Field& k = t.field();
    if (r0.is_zero() || !(k.mul(r0, r0) == t.residue(a)[0])) fail(ErrorKind::Precondition, "bad residue square root");
    Vec s = t.from_scalar(r0);
    const Vec half = t.from_scalar(k.inv(k.from_int(2)));
    for (int step = 1; step < 2 * t.trunc(); step *= 2) s = t.mul(half, t.add(s, t.mul(a, t.inv(s))));
    if (!t.equal(t.mul(s, s), a)) fail(ErrorKind::Degenerate, "Newton square root did not converge");
    return s;
}

StructAlgebra twisted_enveloping(const StructAlgebra& b, uint32_t sigma) {
    return tensor(b, opposite(galois_twist(b, sigma)));
}

Vec enveloping_pure(const StructAlgebra& b, CSpan x, CSpan y) {
    const Tower& S = b.ring();
    const size_t R = b.rwidth(), d = b.dim();
    Vec out(d * d * R);
    for (size_t i = 0; i < d; ++i) {
        CSpan xi = b.coord(x, i);
        if (S.is_zero(xi)) continue;
        for (size_t j = 0; j < d; ++j) {
            CSpan yj = b.coord(y, j);
            if (S.is_zero(yj)) continue;
            S.mul_add(MSpan(out).subspan((i * d + j) * R, R), xi, yj);
        }
    }
    return out;
}

AlgebraMap semilinear_from_idempotent(const StructAlgebra& b, uint32_t sigma, const StructAlgebra& e, CSpan f,
                                      const SemilinearSearch& opt) {
    const Tower& S = b.ring();
    require_quadratic(S);
    if (e.dim() != b.dim() * b.dim()) fail(ErrorKind::BaseMismatch, "enveloping algebra has the wrong dimension");
    if (!e.equal(e.mul(f, f), f)) fail(ErrorKind::Precondition, "f is not idempotent");
    auto bt = std::make_shared<const StructAlgebra>(restrict_scalars(b));
    const size_t D = bt->dim(), dB = b.dim();
    const size_t rows = e.width() / static_cast<size_t>(S.trunc());
    const Vec one = b.one();
    Rng rng(opt.seed);

    for (int attempt = 0; attempt < opt.max_tries; ++attempt) {
        Vec p(f.begin(), f.end());
        if (attempt > 0) {
            Vec x = e.zero();
            for (int term = 0; term < 2 + attempt % 8; ++term) {
                const size_t idx = static_cast<size_t>(rng.range(0, static_cast<int64_t>(e.dim()) - 1));
                x[idx * e.rwidth()] = S.field().from_int(rng.nonzero(3));
            }
            p = e.mul(x, f);
        }
        TMatrix m(bt->base(), rows, D);
        for (size_t k = 0; k < D; ++k) set_column(m, k, e.mul(enveloping_pure(b, bt->basis(k), one), p));
        if (residue_rank(m) != D) continue;

        std::vector<Vec> phi(dB);
        bool ok = true;
        for (size_t mi = 0; mi < dB && ok; ++mi) {
            auto sol = solve(m, e.mul(enveloping_pure(b, one, b.basis(mi)), p));
            if (!sol) {
                ok = false;
                break;
            }
            phi[mi] = std::move(*sol);
        }
        if (!ok) continue;

        AlgebraMap alpha{bt, bt, {}, sigma, b.base()};
        const size_t r = S.rank_over_base();
        alpha.images.resize(D);
        for (size_t idx = 0; idx < D; ++idx) {
            const size_t mi = idx / r;
            const uint32_t mask = static_cast<uint32_t>(idx % r);
            Vec xm = S.zero();
            xm[mask * static_cast<size_t>(S.trunc())] = S.field().from_int(1);
            alpha.images[idx] = b.scale(S.galois(sigma, xm), phi[mi]);
        }
        if (!alpha.is_unital() || !alpha.is_semilinear() || !alpha.is_multiplicative())
            fail(ErrorKind::Degenerate, "extracted map is not a semilinear automorphism");
        return alpha;
    }
    fail(ErrorKind::SearchExhausted, "no module generator within the retry bound");
}

AlgebraMap find_semilinear_iso_quaternion(const TowerPtr& sp, CSpan a, CSpan x) {
    const Tower& S = *sp;
    require_quadratic(S);
    if (!S.in_base(a)) fail(ErrorKind::SlotNotInBase, "first slot must lie in T");
    TowerPtr tp = S.base();
    const Tower& T = *tp;
    const Field& k = S.field();
    StructAlgebra q = quaternion_algebra(sp, a, x);
    const Vec at = S.base_part(a);
    const Vec n = S.norm(x);
    const Scalar a0 = at[0], n0 = n[0];
    auto g = solve_norm(k, a0, k.inv(n0));
    if (!g) {
        const Scalar a1 = S.residue(S.radicand(0))[0];
        const PlaceSet ram = ramification_set({a0, n0});
        for (const Place& v : ram)
            if (is_local_square(a1, v.p))
                fail(ErrorKind::NotBrauerEquivalent, "classes of B and sigma(B) differ at " + v.name());
        fail(ErrorKind::Unsupported, "classes agree only after extending to L");
    }
    const Scalar u0 = k.from_rational(g->u), v0 = k.from_rational(g->v);
    const Vec ninv = T.inv(n);
    Vec u, v;
    if (!u0.is_zero()) {
        v = T.from_scalar(v0);
        u = sqrt_in_base(T, T.add(ninv, T.mul(at, T.mul(v, v))), u0);
    } else {
        u = T.zero();
        v = sqrt_in_base(T, T.mul(T.neg(ninv), T.inv(at)), v0);
    }
    // delta = u + v i, gamma = sigma(x) delta
    const size_t R = S.width();
    Vec delta = q.zero();
    Vec us = S.from_base(u), vs = S.from_base(v);
    std::copy(us.begin(), us.end(), delta.begin());
    std::copy(vs.begin(), vs.end(), delta.begin() + static_cast<std::ptrdiff_t>(R));
    Vec gamma = q.scale(S.galois(1, x), delta);
    const Vec& gi = *q.gen("i");
    const Vec& gj = *q.gen("j");
    const Vec aj = q.mul(gamma, gj);
    const std::vector<Vec> img4{q.one(), gi, aj, q.mul(gi, aj)};

    auto qt = std::make_shared<const StructAlgebra>(restrict_scalars(q));
    AlgebraMap alpha{qt, qt, {}, 1, sp};
    const Vec tneg = S.neg(S.sqrt_gen(0));
    for (size_t idx = 0; idx < qt->dim(); ++idx) {
        const Vec& im = img4[idx / 2];
        alpha.images.push_back(idx % 2 ? q.scale(tneg, im) : im);
    }
    if (!alpha.is_unital() || !alpha.is_semilinear() || !alpha.is_multiplicative())
        fail(ErrorKind::Degenerate, "quaternion twist map failed its post-check");
    return alpha;
}

Vec skolem_noether_c(const StructAlgebra& b, const AlgebraMap& alpha, uint64_t seed) {
    const StructAlgebra& bt = *alpha.source;
    const Tower& S = b.ring();
    const size_t D = bt.dim();
    std::vector<Vec> gens = generating_set(bt);
    std::vector<Vec> sq;
    for (const Vec& g : gens) sq.push_back(alpha.apply(alpha.apply(g)));
    TMatrix m(bt.base(), gens.size() * D, D);
    for (size_t j = 0; j < D; ++j) {
        const Vec ej = bt.basis(j);
        for (size_t g = 0; g < gens.size(); ++g) {
            Vec col = bt.sub(bt.mul(sq[g], ej), bt.mul(ej, gens[g]));
            for (size_t i = 0; i < D; ++i) m.set(g * D + i, j, bt.coord(col, i));
        }
    }
    std::vector<Vec> ker = kernel(m);
    if (ker.empty()) fail(ErrorKind::NoUnitSolution, "alpha^2 is not inner");
    Rng rng(seed);
    std::optional<Vec> c;
    for (int attempt = 0; attempt < 64 && !c; ++attempt) {
        Vec cand = bt.zero();
        for (size_t i = 0; i < ker.size(); ++i) {
            int64_t w = attempt == 0 ? (i == 0) : (attempt <= static_cast<int>(ker.size()) ? (i + 1 == static_cast<size_t>(attempt)) : rng.range(-3, 3));
            if (w != 0) bt.ring().add_into(cand, bt.scale_int(w, ker[i]));
        }
        if (!bt.is_zero(cand) && bt.is_unit(cand)) c = std::move(cand);
    }
    if (!c) fail(ErrorKind::NoUnitSolution, "no unit in the Skolem-Noether solution module");
    // alpha(c) = c z with z central in S and z sigma(z) = 1
    Vec zfull = bt.mul(bt.inv(*c), alpha.apply(*c));
    Vec z(zfull.begin(), zfull.begin() + static_cast<std::ptrdiff_t>(S.width()));
    if (!b.equal(b.scale(z, b.one()), zfull)) fail(ErrorKind::Degenerate, "c^-1 alpha(c) is not central");
    Vec s = hilbert90(S, alpha.sigma, z, seed);
    Vec out = b.scale(s, *c);
    if (!bt.equal(alpha.apply(out), out)) fail(ErrorKind::Degenerate, "normalized c is not fixed by alpha");
    return out;
}

}  // namespace azulift

#include "azulift/lift.hpp"

#include "azulift/kernels.hpp"
#include "azulift/semilinear.hpp"

#include <sstream>

namespace azulift {

namespace {

Scalar to_k(const Field& k, const Rational& q) { return k.from_rational(q); }

// q + seed * eps in T.
Vec perturb(const Tower& t, const Scalar& q, int64_t seed) {
    Vec v = t.from_scalar(q);
    if (t.trunc() > 1 && seed != 0) v[1] = t.field().add(v[1], t.field().from_int(seed));
    return v;
}

// (u + seed eps) + (v + seed eps) x in a quadratic layer over T.
Vec perturb_quad(const Tower& s, const Field& k, const QuadNumber& q, int64_t seed) {
    const size_t n = static_cast<size_t>(s.trunc());
    Vec u = perturb(*s.base(), to_k(k, q.u), seed), v = perturb(*s.base(), to_k(k, q.v), seed);
    Vec out = s.zero();
    std::copy(u.begin(), u.end(), out.begin());
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

std::pair<Vec, Vec> split_quad(const Tower& s, const Vec& x) {
    const auto n = static_cast<std::ptrdiff_t>(s.trunc());
    return {Vec(x.begin(), x.begin() + n), Vec(x.begin() + n, x.begin() + 2 * n)};
}

void require_unit(const Tower& r, CSpan x, const std::string& what) {
    if (!r.is_unit(x)) fail(ErrorKind::NotUnit, what + " is not a unit");
}

// x (x) y in a tensor product with basis index i * dim(b) + j.
Vec kron(const StructAlgebra& a, const StructAlgebra& b, CSpan x, CSpan y) {
    const Tower& R = a.ring();
    const size_t w = a.rwidth(), db = b.dim();
    Vec out(a.dim() * db * w);
    for (size_t i = 0; i < a.dim(); ++i) {
        CSpan xi = a.coord(x, i);
        if (R.is_zero(xi)) continue;
        for (size_t j = 0; j < db; ++j) {
            CSpan yj = b.coord(y, j);
            if (R.is_zero(yj)) continue;
            R.mul_add(MSpan(out).subspan((i * db + j) * w, w), xi, yj);
        }
    }
    return out;
}

}  // namespace

Scalar quad_norm(const Field& k, const QuadNumber& q, const Rational& n) {
    const Scalar u = to_k(k, q.u), v = to_k(k, q.v);
    return k.sub(k.mul(u, u), k.mul(to_k(k, n), k.mul(v, v)));
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < reasons.size(); ++i) os << (i ? ", " : "") << reasons[i];
    if (!cor_ramification.empty()) os << " (ramified at " << format_places(cor_ramification) << ")";
    return os.str();
}

ValidationReport validate_scenario(const LiftScenario& sc) {
    ValidationReport r;
    const Field& k = sc.field;
    auto reject = [&](const std::string& why) {
        r.ok = false;
        r.reasons.push_back(why);
    };
    const Scalar a1 = to_k(k, sc.a1);
    if (a1.is_zero() || k.is_square(a1)) reject("NonSquareSlot");
    for (const Rational* q : {&sc.a2, &sc.a3, &sc.d})
        if (to_k(k, *q).is_zero()) reject("NotUnit");
    const Scalar n2 = quad_norm(k, sc.x2, sc.a1), n3 = quad_norm(k, sc.x3, sc.a1);
    r.n2 = n2;
    r.n3 = n3;
    if (n2.is_zero() || n3.is_zero()) reject("NotUnit");
    if (!r.ok) return r;
    if (k.is_rationals()) {
        SymbolClass cor = class_of({{sc.a2, n2}, {sc.a3, n3}});
        if (!cor.is_split()) {
            r.cor_ramification = cor.ram();
            reject("CorestrictionNontrivial");
        }
    }
    return r;
}

std::vector<std::string> witness_failures(const LiftScenario& sc, const Witnesses& w) {
    const Field& k = sc.field;
    std::vector<std::string> bad;
    const Scalar n2 = quad_norm(k, sc.x2, sc.a1), n3 = quad_norm(k, sc.x3, sc.a1);
    const Scalar y = to_k(k, w.y);
    if (y.is_zero()) bad.push_back("y != 0");
    if (!(quad_norm(k, w.mu2, n2) == k.mul(to_k(k, sc.a2), y))) bad.push_back("a2 y = N(mu2)");
    if (!(quad_norm(k, w.mu23, k.mul(n2, n3)) == y)) bad.push_back("y = N(mu23)");
    if (!(quad_norm(k, w.mu3, n3) == k.mul(to_k(k, sc.a3), y))) bad.push_back("a3 y = N(mu3)");
    return bad;
}

Witnesses derive_witnesses(const LiftScenario& sc) {
    ValidationReport v = validate_scenario(sc);
    if (!v.ok) fail(ErrorKind::Precondition, "scenario rejected: " + v.summary());
    const Field& k = sc.field;
    const Scalar n2 = v.n2, n3 = v.n3;
    Witnesses w;
    try {
        w.y = find_common_slot(k, sc.a2, n2, sc.a3, n3);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SearchExhausted) fail(ErrorKind::WitnessSearchFailed, e.what());
        throw;
    }
    const Scalar y = to_k(k, w.y);
    auto norm_or_fail = [&](const Scalar& n, const Scalar& b, const char* name) {
        auto g = solve_norm(k, n, b);
        if (!g) fail(ErrorKind::WitnessSearchFailed, std::string("no solution for ") + name);
        return *g;
    };
    w.mu2 = norm_or_fail(n2, k.mul(to_k(k, sc.a2), y), "mu2");
    w.mu23 = norm_or_fail(k.mul(n2, n3), y, "mu23");
    w.mu3 = norm_or_fail(n3, k.mul(to_k(k, sc.a3), y), "mu3");
    auto bad = witness_failures(sc, w);
    if (!bad.empty()) fail(ErrorKind::WitnessSearchFailed, "witness relation failed: " + bad.front());
    return w;
}

PrimedData lift_data(const LiftScenario& sc, const Witnesses& w, const TowerPtr& tp) {
    const Tower& T = *tp;
    const Field& k = sc.field;
    PrimedData p;
    p.a1 = perturb(T, to_k(k, sc.a1), sc.seeds.a1);
    require_unit(T, p.a1, "a1'");
    TowerPtr sp = lift_extension(tp, p);
    const Tower& S = *sp;
    p.x2 = perturb_quad(S, k, sc.x2, sc.seeds.x2);
    p.x3 = perturb_quad(S, k, sc.x3, sc.seeds.x3);
    require_unit(S, p.x2, "x2'");
    require_unit(S, p.x3, "x3'");
    p.n2 = S.norm(p.x2);
    p.n3 = S.norm(p.x3);
    p.n23 = T.mul(p.n2, p.n3);
    auto lift_mu = [&](const Vec& n, const QuadNumber& mu, int64_t seed, std::pair<Vec, Vec>& out) {
        TowerPtr si = Tower::adjoin_sqrts(tp, {n});
        Vec m = perturb_quad(*si, k, mu, seed);
        require_unit(*si, m, "mu'");
        out = split_quad(*si, m);
        return si->norm(m);
    };
    p.y = lift_mu(p.n23, w.mu23, sc.seeds.mu23, p.mu23);
    require_unit(T, p.y, "y'");
    const Vec yinv = T.inv(p.y);
    p.a2 = T.mul(lift_mu(p.n2, w.mu2, sc.seeds.mu2, p.mu2), yinv);
    p.a3 = T.mul(lift_mu(p.n3, w.mu3, sc.seeds.mu3, p.mu3), yinv);
    p.d = perturb(T, to_k(k, sc.d), sc.seeds.d);
    require_unit(T, p.d, "d'");
    return p;
}

TowerPtr lift_extension(const TowerPtr& t, const PrimedData& p) { return Tower::adjoin_sqrts(t, {p.a1}); }

StructAlgebra build_b(const TowerPtr& s, const PrimedData& p) {
    return tensor(quaternion_algebra(s, s->from_base(p.a2), p.x2), quaternion_algebra(s, s->from_base(p.a3), p.x3));
}

StructAlgebra build_twist_factor(const TowerPtr& t, const PrimedData& p) { return quaternion_algebra(t, p.a1, p.d); }

Vec enveloping_idempotent(const StructAlgebra& b, const StructAlgebra& env, const PrimedData& p) {
    const Tower& S = b.ring();
    const TowerPtr tb = S.base();
    const Tower& T = *tb;
    const Vec& one = b.one();
    const Vec& i2 = *b.gen("l.i");
    const Vec& j2 = *b.gen("l.j");
    const Vec& i3 = *b.gen("r.i");
    const Vec& j3 = *b.gen("r.j");
    auto pure = [&](const Vec& x, const Vec& y) { return enveloping_pure(b, x, y); };
    auto sc = [&](const Vec& t, const Vec& x) { return env.scale(S.from_base(t), x); };
    auto lin = [&](const Vec& u, const Vec& v, const Vec& x) { return env.add(sc(u, env.one()), sc(v, x)); };
    const Vec half = T.from_scalar(T.field().inv(T.field().from_int(2)));
    auto idem = [&](const Vec& z) { return sc(half, env.add(env.one(), z)); };

    const Vec J2 = pure(j2, j2), J3 = pure(j3, j3);
    const Vec yinv = T.inv(p.y);
    // I_k = (i_k (x) 1)(u_k + v_k J_k) / a_k', with I_k^2 = y'
    const Vec I2 = sc(T.inv(p.a2), env.mul(pure(i2, one), lin(p.mu2.first, p.mu2.second, J2)));
    const Vec I3 = sc(T.inv(p.a3), env.mul(pure(i3, one), lin(p.mu3.first, p.mu3.second, J3)));
    const Vec Y = env.mul(J2, J3);
    const Vec w = sc(yinv, env.mul(lin(p.mu23.first, T.neg(p.mu23.second), Y), I2));
    const Vec f1 = idem(w);
    const Vec f2 = idem(sc(yinv, env.mul(I2, I3)));
    const Vec g2 = idem(sc(T.inv(p.a2), pure(i2, i2)));
    const Vec g3 = idem(sc(T.inv(p.a3), pure(i3, i3)));
    Vec f = env.mul(env.mul(f1, f2), env.mul(g2, g3));
    if (!env.equal(env.mul(f, f), f)) fail(ErrorKind::Degenerate, "enveloping idempotent is not idempotent");
    return f;
}

Vec twist_idempotent(const StructAlgebra& a1, const StructAlgebra& q, const StructAlgebra& app, const PrimedData& p) {
    const Tower& T = app.ring();
    const Vec* t = a1.gen("t0");
    if (!t) fail(ErrorKind::Precondition, "A' lacks the radical generator");
    const Vec half = T.from_scalar(T.field().inv(T.field().from_int(2)));
    Vec ti = app.scale(T.inv(p.a1), kron(a1, q, *t, *q.gen("i")));
    Vec e = app.scale(half, app.add(app.one(), ti));
    if (!app.equal(app.mul(e, e), e)) fail(ErrorKind::Degenerate, "split idempotent is not idempotent");
    return e;
}

StructAlgebra build_a2(const LiftCertificate& cert) { return tensor(*cert.a1, build_twist_factor(cert.t, cert.primed)); }

LiftCertificate build_lift(const LiftScenario& sc, const Witnesses& w) {
    LiftCertificate cert;
    cert.scenario = sc;
    cert.witnesses = w;
    cert.t = Tower::truncated(sc.field, sc.trunc);
    cert.primed = lift_data(sc, w, cert.t);
    cert.s = lift_extension(cert.t, cert.primed);
    const PrimedData& p = cert.primed;

    StructAlgebra b = build_b(cert.s, p);
    cert.b = b.share();
    StructAlgebra env = twisted_enveloping(b, 1);
    Vec f = enveloping_idempotent(b, env, p);
    cert.alpha = semilinear_from_idempotent(b, 1, env, f, {sc.rng_seed, 200});
    cert.c = skolem_noether_c(b, cert.alpha, sc.rng_seed);
    cert.a1 = crossed_product_quadratic(b, cert.alpha, cert.c).share();

    StructAlgebra q = build_twist_factor(cert.t, p);
    StructAlgebra app = tensor(*cert.a1, q);
    cert.e = twist_idempotent(*cert.a1, q, app, p);
    Subalgebra dsub = corner(app, cert.e);
    cert.d_basis = std::move(dsub.basis);
    cert.dprime = dsub.algebra.share();
    return cert;
}

LiftCertificate construct_lift(const LiftScenario& sc, const Witnesses& w) {
    LiftCertificate cert = build_lift(sc, w);
    cert.report = verify_certificate(cert);
    return cert;
}

bool LiftCertificate::all_pass() const {
    if (report.empty()) return false;
    for (const auto& r : report)
        if (!r.pass) return false;
    return true;
}

std::pair<uint64_t, SymbolClass> lemma3_reduce(uint64_t n, const SymbolClass& cls) {
    if (n == 0) fail(ErrorKind::Precondition, "degree must be positive");
    uint64_t two = 1;
    while (n % 2 == 0) {
        n /= 2;
        two *= 2;
    }
    return {two, cls};
}

LiftScenario random_admissible_scenario(Rng& rng, int trunc) {
    const Field k = Field::rationals();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        LiftScenario sc;
        sc.trunc = trunc;
        sc.a1 = rng.nonzero_rational(20);
        if (k.is_square(sc.a1)) continue;
        sc.x2 = {rng.rational(10), rng.rational(10)};
        sc.x3 = {rng.rational(10), rng.rational(10)};
        sc.a2 = rng.nonzero_rational(10);
        const Scalar n2 = quad_norm(k, sc.x2, sc.a1), n3 = quad_norm(k, sc.x3, sc.a1);
        if (n2.is_zero() || n3.is_zero()) continue;
        auto a3 = solve_slot({n3}, {ramification_set({sc.a2, n2})});
        if (!a3) continue;
        sc.a3 = *a3;
        sc.rng_seed = rng.next() % 1000000;
        if (validate_scenario(sc).ok) return sc;
    }
    fail(ErrorKind::SearchExhausted, "no admissible scenario generated");
}

}  // namespace azulift

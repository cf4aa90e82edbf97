#include "azulift/kernels.hpp"
#include "azulift/lift.hpp"

#include <functional>
#include <sstream>

namespace azulift {

namespace {

bool same_vecs(const std::vector<Vec>& a, const std::vector<Vec>& b) { return a == b; }

std::vector<Vec> residues(const StructAlgebra& a, const std::vector<Vec>& xs) {
    std::vector<Vec> out;
    for (const Vec& x : xs) out.push_back(residue_element(a, x));
    return out;
}

class Reporter {
public:
    void add(const std::string& name, bool pass, std::string detail = {}) {
        out_.push_back({name, pass, pass && detail.empty() ? "ok" : std::move(detail)});
    }
    // Runs a check; any exception fails it with the message as detail.
    void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
        try {
            auto [ok, detail] = f();
            add(name, ok, detail);
        } catch (const std::exception& e) {
            add(name, false, e.what());
        }
    }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::vector<CheckResult> out_;
};

std::pair<bool, std::string> verdict(bool ok, const std::string& bad) { return {ok, ok ? "" : bad}; }

}  // namespace

std::vector<CheckResult> verify_certificate(const LiftCertificate& cert) {
    Reporter rep;
    const LiftScenario& sc = cert.scenario;
    const Field& k = sc.field;
    const PrimedData& p = cert.primed;
    TowerPtr tp = Tower::truncated(k, sc.trunc);
    const Tower& T = *tp;

    // (i) relation identities
    rep.run("relations.witnesses", [&] {
        auto bad = witness_failures(sc, cert.witnesses);
        return verdict(bad.empty(), bad.empty() ? "" : bad.front());
    });
    TowerPtr sp;
    rep.run("relations.primed", [&]() -> std::pair<bool, std::string> {
        sp = lift_extension(tp, p);
        const Tower& S = *sp;
        if (!S.same_as(*cert.s)) return {false, "S differs from T(sqrt a1')"};
        if (!T.equal(S.norm(p.x2), p.n2) || !T.equal(S.norm(p.x3), p.n3) || !T.equal(T.mul(p.n2, p.n3), p.n23))
            return {false, "n' = N_S(x')"};
        auto qnorm = [&](const std::pair<Vec, Vec>& m, const Vec& n) {
            return T.sub(T.mul(m.first, m.first), T.mul(n, T.mul(m.second, m.second)));
        };
        if (!T.equal(qnorm(p.mu23, p.n23), p.y)) return {false, "y' = N(mu23')"};
        if (!T.equal(T.mul(p.a2, p.y), qnorm(p.mu2, p.n2))) return {false, "a2' y' = N(mu2')"};
        if (!T.equal(T.mul(p.a3, p.y), qnorm(p.mu3, p.n3))) return {false, "a3' y' = N(mu3')"};
        for (const Vec* v : {&p.a1, &p.y, &p.a2, &p.a3, &p.d})
            if (!T.is_unit(*v)) return {false, "primed scalar is not a unit"};
        return {true, ""};
    });
    rep.run("relations.residue", [&]() -> std::pair<bool, std::string> {
        if (!sp) return {false, "S unavailable"};
        const Tower& S = *sp;
        auto res_t = [&](const Vec& v) { return T.residue(v)[0]; };
        auto kq = [&](const Rational& q) { return k.from_rational(q); };
        auto res_q = [&](const Vec& x, const QuadNumber& q) {
            Vec r = S.residue(x);
            return r[0] == kq(q.u) && r[1] == kq(q.v);
        };
        auto res_mu = [&](const std::pair<Vec, Vec>& m, const QuadNumber& q) {
            return res_t(m.first) == kq(q.u) && res_t(m.second) == kq(q.v);
        };
        const Witnesses& w = cert.witnesses;
        bool ok = res_t(p.a1) == kq(sc.a1) && res_t(p.a2) == kq(sc.a2) && res_t(p.a3) == kq(sc.a3) &&
                  res_t(p.d) == kq(sc.d) && res_t(p.y) == kq(w.y) && res_q(p.x2, sc.x2) && res_q(p.x3, sc.x3) &&
                  res_mu(p.mu2, w.mu2) && res_mu(p.mu3, w.mu3) && res_mu(p.mu23, w.mu23);
        return verdict(ok, "a primed element does not reduce to its original");
    });

    // (ii) algebras
    std::optional<StructAlgebra> bt;
    rep.run("B.structure", [&]() -> std::pair<bool, std::string> {
        StructAlgebra b = build_b(sp ? sp : cert.s, p);
        if (!(b.table() == cert.b->table()) || !b.equal(b.one(), cert.b->one()))
            return {false, "B' differs from (a2',x2')_S (x) (a3',x3')_S"};
        bt = restrict_scalars(*cert.b);
        return {true, ""};
    });
    rep.run("B.associative", [&] { return verdict(is_associative(*cert.b), "associativity fails"); });
    rep.run("B.azumaya", [&] { return verdict(is_azumaya(*cert.b), "not Azumaya"); });
    rep.run("alpha.semilinear_automorphism", [&]() -> std::pair<bool, std::string> {
        const AlgebraMap& a = cert.alpha;
        if (!bt || a.images.size() != bt->dim()) return {false, "alpha has the wrong size"};
        if (!(a.source->table() == bt->table())) return {false, "alpha source is not B'"};
        if (!a.is_unital()) return {false, "alpha(1) != 1"};
        if (!a.is_semilinear()) return {false, "alpha is not sigma-semilinear"};
        if (!a.is_multiplicative()) return {false, "alpha is not multiplicative"};
        TMatrix m(bt->base(), bt->dim(), bt->dim());
        for (size_t j = 0; j < bt->dim(); ++j)
            for (size_t i = 0; i < bt->dim(); ++i) m.set(i, j, bt->coord(a.images[j], i));
        return verdict(residue_rank(m) == bt->dim(), "alpha is not bijective");
    });
    rep.run("c.conjugator", [&]() -> std::pair<bool, std::string> {
        if (!bt) return {false, "B' unavailable"};
        if (!bt->is_unit(cert.c)) return {false, "c is not a unit"};
        if (!bt->equal(cert.alpha.apply(cert.c), cert.c)) return {false, "alpha(c) != c"};
        Vec cinv = bt->inv(cert.c);
        for (size_t i = 0; i < bt->dim(); ++i) {
            Vec lhs = cert.alpha.apply(cert.alpha.images[i]);
            if (!bt->equal(lhs, bt->mul(bt->mul(cert.c, bt->basis(i)), cinv))) return {false, "alpha^2 != inn(c)"};
        }
        return {true, ""};
    });
    rep.run("A1.structure", [&]() -> std::pair<bool, std::string> {
        StructAlgebra a = crossed_product_quadratic(*cert.b, cert.alpha, cert.c);
        return verdict(a.table() == cert.a1->table(), "A' differs from B' + B'u");
    });
    rep.run("A1.associative", [&] { return verdict(is_associative(*cert.a1), "associativity fails"); });
    rep.run("A1.azumaya", [&] { return verdict(is_azumaya(*cert.a1), "not Azumaya"); });
    // (iv)
    rep.run("A1.centralizer_of_S", [&]() -> std::pair<bool, std::string> {
        const StructAlgebra& a = *cert.a1;
        const Vec* t = a.gen("t0");
        if (!t) return {false, "no radical generator in A'"};
        Subalgebra z = centralizer(a, {*t});
        const size_t half = a.dim() / 2;
        if (z.algebra.dim() != half) return {false, "centralizer rank " + std::to_string(z.algebra.dim())};
        for (const Vec& v : z.basis)
            for (size_t i = half; i < a.dim(); ++i)
                if (!a.ring().is_zero(a.coord(v, i))) return {false, "centralizer leaves B'"};
        return {true, ""};
    });
    std::optional<StructAlgebra> app;
    rep.run("A2.factors", [&]() -> std::pair<bool, std::string> {
        StructAlgebra q = build_twist_factor(tp, p);
        if (!is_associative(q) || !is_azumaya(q)) return {false, "(a1', d')_T is not Azumaya"};
        app = build_a2(cert);
        // tensor of associative Azumaya factors
        return verdict(app->dim() == 256, "A'' has rank " + std::to_string(app->dim()));
    });
    rep.run("e.idempotent", [&]() -> std::pair<bool, std::string> {
        if (!app) return {false, "A'' unavailable"};
        StructAlgebra q = build_twist_factor(tp, p);
        Vec e = twist_idempotent(*cert.a1, q, *app, p);
        return verdict(app->equal(e, cert.e), "e differs from (1 + (t (x) i)/a1')/2");
    });
    rep.run("D.corner", [&]() -> std::pair<bool, std::string> {
        if (!app) return {false, "A'' unavailable"};
        Subalgebra d = corner(*app, cert.e);
        if (!same_vecs(d.basis, cert.d_basis)) return {false, "basis differs from e A'' e"};
        return verdict(d.algebra.table() == cert.dprime->table() && d.algebra.equal(d.algebra.one(), cert.dprime->one()),
                       "structure constants differ from e A'' e");
    });
    // (iii)
    rep.run("D.rank", [&] { return verdict(cert.dprime->dim() == 64, "rank " + std::to_string(cert.dprime->dim())); });
    rep.run("D.associative", [&] { return verdict(is_associative(*cert.dprime), "associativity fails"); });
    rep.run("D.azumaya", [&] { return verdict(is_azumaya(*cert.dprime), "not Azumaya"); });

    // (v)
    rep.run("class.order_two", [&]() -> std::pair<bool, std::string> {
        if (!k.is_rationals()) return {true, "finite field: every class splits"};
        const Tower& S = *cert.s;
        CorRewrite r2 = cor_rewrite(S, S.from_base(p.a2), p.x2);
        CorRewrite r3 = cor_rewrite(S, S.from_base(p.a3), p.x3);
        if (!T.equal(r2.norm_b, p.n2) || !T.equal(r3.norm_b, p.n3)) return {false, "cor_rewrite norms disagree"};
        SymbolClass cor = class_of({r2.residue, r3.residue});
        if (!cor.is_split()) return {false, "Cor(B') ramified at " + format_places(cor.ram())};
        SymbolClass dcls = cor + class_of({{sc.a1, sc.d}});
        if (!(dcls + dcls).is_split()) return {false, "class is not of order dividing 2"};
        return {true, "Cor(B') trivial; class ram " + format_places(dcls.ram())};
    });

    // (vi)
    rep.run("residue.consistency", [&]() -> std::pair<bool, std::string> {
        if (!sc.seeds.all_zero()) return {true, "skipped: nonzero seeds"};
        LiftScenario base = sc;
        base.trunc = 1;
        LiftCertificate kc = build_lift(base, cert.witnesses);
        if (!(residue_algebra(*cert.b).table() == kc.b->table())) return {false, "B'"};
        if (!(residue_algebra(*cert.a1).table() == kc.a1->table())) return {false, "A'"};
        if (!(residue_algebra(*cert.dprime).table() == kc.dprime->table())) return {false, "D'"};
        if (!bt || !same_vecs(residues(*bt, cert.alpha.images), kc.alpha.images)) return {false, "alpha"};
        if (residue_element(*bt, cert.c) != kc.c) return {false, "c"};
        return {true, ""};
    });
    return rep.take();
}

}  // namespace azulift

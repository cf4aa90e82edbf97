#include "azulift/idempotents.hpp"
#include "azulift/kernels.hpp"
#include "azulift/semilinear.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace azulift;
using testutil::is_isomorphism;
using testutil::random_alg_elem;
using testutil::random_unit;

namespace {

TowerPtr Q() { return Tower::field(Field::rationals()); }
TowerPtr T3() { return Tower::truncated(Field::rationals(), 3); }

Vec tv(const TowerPtr& t, std::initializer_list<int64_t> xs) {
    Vec v = t->zero();
    size_t i = 0;
    for (int64_t x : xs)
        if (i < v.size()) v[i++] = Rational(x);
    return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::CheckFailed;
}

size_t corner_dim(const StructAlgebra& a, const Vec& e) { return corner(a, e).algebra.dim(); }

}  // namespace

TEST_SUITE("algebra") {
    TEST_CASE("quaternion examples") {
        TowerPtr q = Q();
        StructAlgebra split = quaternion_algebra(q, q->from_int(1), q->from_int(1));
        const Vec& i = *split.gen("i");
        Vec a = split.add(split.one(), i), b = split.sub(split.one(), i);
        CHECK(split.is_zero(split.mul(a, b)));

        StructAlgebra h = quaternion_algebra(q, q->from_int(-1), q->from_int(-1));
        Rng rng(1);
        for (int n = 0; n < 500; ++n) {
            Vec x = random_alg_elem(h, rng, 4);
            if (h.is_zero(x)) continue;
            CHECK(h.is_unit(x));
        }

        TowerPtr t = T3();
        StructAlgebra qt = quaternion_algebra(t, tv(t, {2, 1}), t->from_int(3));
        CHECK(is_associative(qt));
        CHECK(is_azumaya(qt));
        StructAlgebra res = residue_algebra(qt);
        CHECK(res.table() == quaternion_algebra(Q(), Q()->from_int(2), Q()->from_int(3)).table());
        CHECK(kind_of([&] { (void)quaternion_algebra(t, t->eps_power(1), t->one()); }) == ErrorKind::NotUnit);
    }

    TEST_CASE("azumaya examples") {
        TowerPtr t = T3();
        CHECK(is_azumaya(base_algebra(t)));
        CHECK(is_azumaya(quaternion_algebra(t, tv(t, {-1, 2}), tv(t, {5, 0, 1}))));
        StructAlgebra degenerate = testutil::quaternion_like(t, t->eps_power(1), t->one());
        CHECK(is_associative(degenerate));
        CHECK(!is_azumaya(degenerate));
        CHECK(!is_azumaya_determinant(degenerate));
        CHECK(!is_azumaya_trace(degenerate));
        CHECK(is_azumaya(matrix_algebra(t, 3)));
    }

    TEST_CASE("azumaya routes agree on tensor powers") {
        TowerPtr t = Tower::truncated(Field::rationals(), 2);
        StructAlgebra q = quaternion_algebra(t, tv(t, {2, 1}), tv(t, {-3}));
        StructAlgebra qq = tensor(q, q);
        CHECK(is_azumaya_determinant(qq));
        CHECK(is_azumaya_trace(qq));
        StructAlgebra bad = tensor(q, testutil::quaternion_like(t, t->eps_power(1), t->one()));
        CHECK(!is_azumaya_trace(bad));
    }

    TEST_CASE("tensor products") {
        TowerPtr t = T3();
        StructAlgebra q = quaternion_algebra(t, tv(t, {3}), tv(t, {-2, 1}));
        CHECK(tensor(q, base_algebra(t)).table() == q.table());
        StructAlgebra m = matrix_algebra(t, 2);
        StructAlgebra qm = tensor(q, m);
        CHECK(qm.dim() == 16);
        CHECK(is_associative(qm));
        TowerPtr other = Tower::truncated(Field::rationals(), 2);
        CHECK(kind_of([&] { (void)tensor(q, base_algebra(other)); }) == ErrorKind::BaseMismatch);

        TowerPtr k = Q();
        StructAlgebra h = quaternion_algebra(k, k->from_int(-1), k->from_int(-1));
        StructAlgebra hh = tensor(h, h);
        Vec e = rank_one_idempotent(hh);
        CHECK(hh.equal(hh.mul(e, e), e));
        CHECK(corner_dim(hh, e) == 1);
    }

    TEST_CASE("opposite algebras") {
        TowerPtr t = T3();
        StructAlgebra s = restrict_scalars(base_algebra(Tower::adjoin_sqrts(t, {tv(t, {2, 1})})));
        CHECK(opposite(s).table() == s.table());
        StructAlgebra q = quaternion_algebra(t, tv(t, {-1, 1}), tv(t, {7}));
        CHECK(opposite(opposite(q)).table() == q.table());
        StructAlgebra qo = opposite(q);
        std::vector<Vec> conj;
        for (size_t n = 0; n < 4; ++n) conj.push_back(n == 0 ? q.basis(0) : q.neg(q.basis(n)));
        CHECK(is_isomorphism(q, qo, conj));
    }

    TEST_CASE("quaternion identities as explicit maps") {
        Rng rng(9);
        TowerPtr k = Q();
        for (int n = 0; n < 30; ++n) {
            const Vec a = k->from_scalar(testutil::random_nonsquare(rng, 15));
            const Vec b = k->from_scalar(rng.nonzero_rational(15));
            StructAlgebra ab = quaternion_algebra(k, a, b), ba = quaternion_algebra(k, b, a);
            // i -> j, j -> i, ij -> ji = -ij
            CHECK(is_isomorphism(ab, ba, {ba.basis(0), ba.basis(2), ba.basis(1), ba.neg(ba.basis(3))}));

            // (a, N(g) b) -> (a, b): i -> i, j -> g~ j with g~ = u + v i
            const Rational u = rng.rational(6), v = rng.rational(6);
            const Rational nm = u * u - a[0] * v * v;
            if (nm.is_zero()) continue;
            StructAlgebra anb = quaternion_algebra(k, a, k->from_scalar(nm * b[0]));
            Vec g = ab.zero();
            g[0] = u;
            g[1] = v;
            const Vec gj = ab.mul(g, ab.basis(2));
            CHECK(is_isomorphism(anb, ab, {ab.basis(0), ab.basis(1), gj, ab.mul(ab.basis(1), gj)}));
        }
    }

    TEST_CASE("centralizers") {
        TowerPtr t = T3();
        StructAlgebra q = quaternion_algebra(t, tv(t, {2, 1}), tv(t, {5}));
        CHECK(centralizer(q, {q.one()}).algebra.dim() == 4);
        Subalgebra ci = centralizer(q, {*q.gen("i")});
        CHECK(ci.algebra.dim() == 2);
        for (const Vec& v : ci.basis) CHECK(q.equal(q.mul(v, *q.gen("i")), q.mul(*q.gen("i"), v)));
    }

    TEST_CASE("galois twists") {
        TowerPtr t = T3();
        TowerPtr s = Tower::adjoin_sqrts(t, {tv(t, {3, 1})});
        const Vec a = s->from_int(-1);
        const Vec x = Vec{Rational(1), Rational(0), Rational(1), Rational(2), Rational(0), Rational(0)};
        StructAlgebra b = quaternion_algebra(s, a, x);
        CHECK(galois_twist(b, 0).table() == b.table());
        CHECK(galois_twist(galois_twist(b, 1), 1).table() == b.table());
        CHECK(galois_twist(b, 1).table() == quaternion_algebra(s, a, s->galois(1, x)).table());
    }

    TEST_CASE("rank one idempotents") {
        TowerPtr k = Q();
        StructAlgebra m = matrix_algebra(k, 2);
        Vec e = rank_one_idempotent(m);
        CHECK(m.equal(m.mul(e, e), e));
        CHECK(corner_dim(m, e) == 1);

        StructAlgebra q11 = quaternion_algebra(k, k->from_int(1), k->from_int(1));
        Vec f = rank_one_idempotent(q11);
        CHECK(q11.equal(q11.mul(f, f), f));
        CHECK(corner_dim(q11, f) == 1);

        StructAlgebra h = quaternion_algebra(k, k->from_int(-1), k->from_int(-1));
        CHECK(kind_of([&] { (void)rank_one_idempotent(h); }) == ErrorKind::NotSplit);

        StructAlgebra m3 = matrix_algebra(k, 3);
        Vec g = rank_one_idempotent(m3);
        CHECK(corner_dim(m3, g) == 1);
    }

    TEST_CASE("rank one idempotents over a prime field") {
        TowerPtr k = Tower::field(Field::prime(103));
        StructAlgebra q = quaternion_algebra(k, k->from_int(5), k->from_int(6));
        Vec e = rank_one_idempotent(q);
        CHECK(q.equal(q.mul(e, e), e));
        CHECK(corner_dim(q, e) == 1);
    }

    TEST_CASE("hensel lifting") {
        TowerPtr t = T3();
        StructAlgebra m = matrix_algebra(t, 2);
        Vec e11 = m.basis(0);
        CHECK(hensel_lift_idempotent(m, e11) == e11);

        StructAlgebra q = quaternion_algebra(t, tv(t, {1, 1, -2}), tv(t, {3, 0, 1}));
        StructAlgebra qr = residue_algebra(q);
        Vec e0 = rank_one_idempotent(qr);
        Vec start = q.zero();
        for (size_t n = 0; n < 4; ++n) start[n * 3] = e0[n];
        Vec e = hensel_lift_idempotent(q, start);
        CHECK(q.equal(q.mul(e, e), e));
        CHECK(residue_element(q, e) == e0);
        CHECK(kind_of([&] { (void)hensel_lift_idempotent(q, q.scale_int(2, q.one())); }) ==
              ErrorKind::NotIdempotentResidue);
    }

    TEST_CASE("corners") {
        TowerPtr t = T3();
        StructAlgebra q = quaternion_algebra(t, tv(t, {2}), tv(t, {3, 1}));
        Subalgebra whole = corner(q, q.one());
        CHECK(whole.algebra.dim() == 4);
        CHECK(is_isomorphism(whole.algebra, q, whole.basis));
        StructAlgebra m = matrix_algebra(Q(), 2);
        CHECK(corner_dim(m, m.basis(0)) == 1);
    }

    TEST_CASE("galois split idempotent") {
        for (int n : {1, 3}) {
            TowerPtr t = Tower::truncated(Field::rationals(), n);
            TowerPtr s = Tower::adjoin_sqrts(t, {tv(t, {2, 1})});
            SplitIdempotent sp = galois_split_idempotent(s);
            CHECK(sp.algebra.equal(sp.algebra.mul(sp.e, sp.e), sp.e));
            Subalgebra c = corner(sp.algebra, sp.e);
            CHECK(c.algebra.dim() == 2);
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j)
                    CHECK(c.algebra.equal(c.algebra.mul_basis(i, j), c.algebra.mul_basis(j, i)));
            SplitIdempotent sr = galois_split_idempotent(s->residue_tower());
            CHECK(residue_element(sp.algebra, sp.e) == sr.e);
        }
    }

    TEST_CASE("residue is functorial") {
        Rng rng(4);
        TowerPtr t = T3();
        for (int n = 0; n < 5; ++n) {
            StructAlgebra a = quaternion_algebra(t, random_unit(*t, rng), random_unit(*t, rng));
            StructAlgebra b = quaternion_algebra(t, random_unit(*t, rng), random_unit(*t, rng));
            CHECK(residue_algebra(tensor(a, b)).table() == tensor(residue_algebra(a), residue_algebra(b)).table());
            CHECK(residue_algebra(opposite(a)).table() == opposite(residue_algebra(a)).table());
        }
    }

    TEST_CASE("crossed product of S is the quaternion algebra") {
        TowerPtr t = T3();
        const Vec a = tv(t, {2, 1}), b = tv(t, {-3, 0, 2});
        TowerPtr s = Tower::adjoin_sqrts(t, {a});
        StructAlgebra bs = base_algebra(s);
        auto bt = std::make_shared<const StructAlgebra>(restrict_scalars(bs));
        AlgebraMap sigma{bt, bt, {bs.one(), s->galois(1, s->sqrt_gen(0))}, 1, s};
        StructAlgebra cp = crossed_product_quadratic(bs, sigma, s->from_base(b));
        StructAlgebra q = quaternion_algebra(t, a, b);
        CHECK(is_isomorphism(q, cp, {cp.basis(0), cp.basis(1), cp.basis(2), cp.basis(3)}));
        TowerPtr l = s->residue_tower();
        StructAlgebra bl = base_algebra(l);
        auto blt = std::make_shared<const StructAlgebra>(restrict_scalars(bl));
        AlgebraMap sigma_l{blt, blt, {bl.one(), l->galois(1, l->sqrt_gen(0))}, 1, l};
        StructAlgebra cpl = crossed_product_quadratic(bl, sigma_l, l->from_base(t->residue(b)));
        CHECK(residue_algebra(cp).table() == cpl.table());

        StructAlgebra one = crossed_product_quadratic(bs, sigma, bs.one());
        Vec e = rank_one_idempotent(residue_algebra(one));
        CHECK(corner_dim(residue_algebra(one), e) == 1);

        CHECK(kind_of([&] { (void)crossed_product_quadratic(bs, sigma, s->sqrt_gen(0)); }) ==
              ErrorKind::AssociativityFailure);
    }

    TEST_CASE("semilinear isomorphisms of quaternion algebras") {
        TowerPtr t = T3();
        TowerPtr s = Tower::adjoin_sqrts(t, {tv(t, {2})});
        AlgebraMap fixed = find_semilinear_iso_quaternion(s, s->from_int(3), s->from_int(5));
        CHECK(fixed.is_unital());
        CHECK(fixed.is_multiplicative());
        CHECK(fixed.is_semilinear());

        Vec x = s->zero();
        x[0] = Rational(3);
        x[3] = Rational(1);  // 3 + sqrt 2, norm 7
        CHECK(kind_of([&] { (void)find_semilinear_iso_quaternion(s, s->from_int(3), x); }) ==
              ErrorKind::NotBrauerEquivalent);

        Vec y = s->zero();
        y[0] = Rational(1);
        y[3] = Rational(1);  // 1 + sqrt 2, norm -1; (5, -1) splits
        AlgebraMap m = find_semilinear_iso_quaternion(s, s->from_int(5), y);
        CHECK(m.is_multiplicative());
        CHECK(m.is_semilinear());
        Vec c = skolem_noether_c(quaternion_algebra(s, s->from_int(5), y), m);
        CHECK(m.source->equal(m.apply(c), c));
    }

    TEST_CASE("skolem noether recovers a planted conjugator") {
        TowerPtr t = Tower::truncated(Field::rationals(), 2);
        TowerPtr s = Tower::adjoin_sqrts(t, {tv(t, {3, 1})});
        StructAlgebra b = matrix_algebra(s, 2);
        auto bt = std::make_shared<const StructAlgebra>(restrict_scalars(b));
        Rng rng(17);
        Vec g;
        do g = random_alg_elem(b, rng, 2);
        while (!bt->is_unit(g));
        const Vec ginv = bt->inv(g);
        AlgebraMap alpha{bt, bt, {}, 1, s};
        for (size_t idx = 0; idx < bt->dim(); ++idx)
            alpha.images.push_back(bt->mul(bt->mul(g, twist_coords(b, 1, bt->basis(idx))), ginv));
        REQUIRE(alpha.is_multiplicative());
        REQUIRE(alpha.is_semilinear());
        const Vec planted = bt->mul(g, twist_coords(b, 1, g));
        const Vec c = skolem_noether_c(b, alpha);
        CHECK(bt->equal(alpha.apply(c), c));
        const Vec cinv = bt->inv(c), pinv = bt->inv(planted);
        for (size_t idx = 0; idx < bt->dim(); ++idx) {
            const Vec x = bt->basis(idx);
            CHECK(bt->equal(bt->mul(bt->mul(c, x), cinv), bt->mul(bt->mul(planted, x), pinv)));
        }
    }
}

TEST_SUITE("kernels") {
    TEST_CASE("serial and parallel kernels agree") {
        TowerPtr t = Tower::truncated(Field::rationals(), 2);
        StructAlgebra q = quaternion_algebra(t, tv(t, {-1, 1}), tv(t, {3}));
        StructAlgebra m = matrix_algebra(t, 2);
        StructAlgebra qm = tensor(q, m);
        CHECK(kernels::associative_full_serial(qm));
        CHECK(kernels::associative_full_parallel(qm));
        CHECK(kernels::tensor_table_serial(q, m) == kernels::tensor_table_parallel(q, m));
        CHECK(kernels::tensor_table_serial(q, m) == qm.table());
        const std::vector<Vec> gens = generating_set(qm);
        CHECK(kernels::left_nucleus_serial(qm, gens));
        CHECK(kernels::left_nucleus_parallel(qm, gens));
        CHECK(kernels::unit_ok(qm));
    }

    TEST_CASE("tampered tables are rejected by every associativity route") {
        TowerPtr t = Tower::truncated(Field::rationals(), 2);
        StructAlgebra q = tensor(quaternion_algebra(t, tv(t, {2}), tv(t, {3})), matrix_algebra(t, 2));
        ProductTable tab = q.table();
        size_t cell = 5 * q.dim() + 9;
        while (tab.start[cell + 1] == tab.start[cell]) ++cell;
        REQUIRE(tab.start[cell + 1] > tab.start[cell]);
        tab.coef[tab.start[cell] * tab.width + 1] += Rational(1);
        StructAlgebra bad(t, tab, q.one(), q.gens());
        CHECK(!kernels::associative_full_serial(bad));
        CHECK(!kernels::associative_full_parallel(bad));
        CHECK(!is_associative(bad));
    }
}

#include "azulift/numtheory.hpp"
#include "azulift/semilinear.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace azulift;
using testutil::random_elem;
using testutil::random_unit;

namespace {

Vec tvec(std::initializer_list<int64_t> xs) {
    Vec v;
    for (int64_t x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_SUITE("rational") {
    TEST_CASE("parse and print") {
        CHECK(Rational::parse("-6/4").str() == "-3/2");
        CHECK(Rational::parse("7").str() == "7");
        CHECK(Rational::parse("0/5").is_zero());
        CHECK_THROWS_AS((void)Rational::parse("1/0"), Error);
        CHECK_THROWS_AS((void)Rational::parse("abc"), Error);
        CHECK_THROWS_AS((void)Rational::parse(""), Error);
        CHECK_THROWS_AS((void)Rational::parse("1.5"), Error);
    }

    TEST_CASE("values near the inline limit compare equal from both paths") {
        const int64_t big = (int64_t{1} << 61) + 12345;
        Rational inline_v(big);
        Rational via_mpq(mpq_class(mpz_class(std::to_string(big))));
        CHECK(inline_v == via_mpq);
        Rational spilled = Rational(big) * Rational(4) / Rational(4);
        CHECK(spilled == inline_v);
        CHECK((spilled - inline_v).is_zero());
    }

    TEST_CASE("agrees with mpq on random arithmetic") {
        Rng rng(11);
        for (int i = 0; i < 2000; ++i) {
            const int64_t shift = rng.range(0, 61);
            Rational a(rng.range(-1000, 1000) << (shift / 2), rng.range(1, 1 << 20));
            Rational b(rng.nonzero(1 << 30), rng.range(1, 1000) << (shift / 3));
            const mpq_class qa = a.to_mpq(), qb = b.to_mpq();
            CHECK((a + b).to_mpq() == qa + qb);
            CHECK((a - b).to_mpq() == qa - qb);
            CHECK((a * b).to_mpq() == qa * qb);
            CHECK((a / b).to_mpq() == qa / qb);
            CHECK(((a * b) <=> (b * a)) == std::strong_ordering::equal);
        }
    }

    TEST_CASE("large products demote after cancellation") {
        Rational x(int64_t{1} << 40);
        Rational y = x * x * x;
        CHECK(!y.is_small());
        Rational z = y / (x * x);
        CHECK(z.is_small());
        CHECK(z == x);
    }
}

TEST_SUITE("numtheory") {
    TEST_CASE("factor and primality") {
        CHECK(nt::is_prime(2147483647ULL));
        CHECK(!nt::is_prime(2147483649ULL));
        auto f = nt::factor(uint64_t{360});
        REQUIRE(f.size() == 3);
        CHECK(f[0] == std::pair<uint64_t, int>{2, 3});
        CHECK(f[1] == std::pair<uint64_t, int>{3, 2});
        CHECK(f[2] == std::pair<uint64_t, int>{5, 1});
        const uint64_t n = 1000003ULL * 998244353ULL;
        auto g = nt::factor(n);
        REQUIRE(g.size() == 2);
        CHECK(g[0].first * g[1].first == n);
    }

    TEST_CASE("square classes") {
        CHECK(nt::squarefree_part(Rational(12)) == 3);
        CHECK(nt::squarefree_part(Rational(-8, 9)) == -2);
        CHECK(nt::squarefree_part(Rational(1, 18)) == 2);
        CHECK(nt::rational_sqrt(Rational(9, 4)) == std::optional<Rational>(Rational(3, 2)));
        CHECK(!nt::rational_sqrt(Rational(2)));
    }

    TEST_CASE("modular square roots") {
        for (uint64_t p : {3ULL, 5ULL, 13ULL, 101ULL, 1000003ULL}) {
            for (uint64_t a = 1; a < 40; ++a) {
                if (nt::legendre(mpz_class(static_cast<unsigned long>(a)), p) != 1) continue;
                const uint64_t r = nt::sqrt_mod_prime(a % p, p);
                CHECK(nt::mulmod(r, r, p) == a % p);
            }
        }
        auto t = nt::sqrt_mod_squarefree(mpz_class(2), mpz_class(7 * 17));
        REQUIRE(t);
        CHECK(((*t) * (*t) - 2) % (7 * 17) == 0);
    }
}

TEST_SUITE("rings") {
    TEST_CASE("truncated rings") {
        TowerPtr k1 = Tower::truncated(Field::rationals(), 1);
        CHECK(k1->is_field());
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        CHECK(t->is_zero(t->mul(t->eps_power(1), t->eps_power(2))));
        CHECK(!t->is_zero(t->mul(t->eps_power(1), t->eps_power(1))));
        TowerPtr f3 = Tower::truncated(Field::prime(3), 2);
        CHECK(f3->width() == 2);
        CHECK(f3->field().characteristic() == 3);
        // all 9 elements are distinct and closed under multiplication
        std::vector<Vec> elems;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) elems.push_back(tvec({a, b}));
        for (const Vec& x : elems)
            for (const Vec& y : elems) {
                Vec p = f3->mul(x, y);
                CHECK(std::find(elems.begin(), elems.end(), p) != elems.end());
            }
    }

    TEST_CASE("residue examples") {
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        CHECK(t->residue(tvec({1, 1, 0})) == tvec({1}));
        CHECK(t->residue(tvec({0, -5, 1})) == tvec({0}));
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({2, 1, 0})});
        CHECK(s->residue(tvec({2, 1, 0, 1, -1, 0})) == tvec({2, 1}));
        CHECK(s->residue_tower()->radicand(0) == tvec({2}));
    }

    TEST_CASE("inversion examples") {
        TowerPtr k = Tower::field(Field::rationals());
        CHECK(k->inv(tvec({2}))[0] == Rational(1, 2));
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        CHECK(t->inv(tvec({1, 1, 0})) == tvec({1, -1, 1}));
        CHECK(!t->is_unit(t->eps_power(1)));
        try {
            (void)t->inv(t->eps_power(1));
            FAIL("expected NotUnit");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotUnit);
        }
    }

    TEST_CASE("adjoining square roots") {
        TowerPtr k = Tower::field(Field::rationals());
        TowerPtr q2 = Tower::adjoin_sqrts(k, {tvec({2})});
        Vec r2 = q2->sqrt_gen(0);
        CHECK(q2->equal(q2->mul(r2, r2), q2->from_int(2)));
        CHECK(q2->is_unit(r2));
        // Q[x]/(x^2 - 1) is etale but not a field
        TowerPtr split = Tower::adjoin_sqrts(k, {tvec({1})});
        Vec x = split->sqrt_gen(0);
        Vec a = split->add(split->one(), x), b = split->sub(split->one(), x);
        CHECK(split->is_zero(split->mul(a, b)));
        CHECK(!split->is_unit(a));
        CHECK(split->is_unit(split->add(split->from_int(2), x)));
    }

    TEST_CASE("galois and norm examples") {
        TowerPtr k = Tower::field(Field::rationals());
        TowerPtr q2 = Tower::adjoin_sqrts(k, {tvec({2})});
        Vec g = tvec({1, 1});
        CHECK(q2->galois(1, g) == tvec({1, -1}));
        CHECK(q2->galois(0, g) == g);
        CHECK(q2->galois(1, q2->galois(1, g)) == g);
        CHECK(q2->norm(g) == tvec({-1}));
        CHECK(q2->norm(tvec({0, 1})) == tvec({-2}));
        CHECK(q2->norm(tvec({3, 0})) == tvec({9}));
    }

    TEST_CASE("hilbert90 examples") {
        TowerPtr k = Tower::field(Field::rationals());
        TowerPtr q2 = Tower::adjoin_sqrts(k, {tvec({2})});
        Vec s = hilbert90(*q2, 1, q2->one());
        CHECK(s == tvec({2, 0}));
        Vec z = q2->from_int(-1);
        Vec s2 = hilbert90(*q2, 1, z);
        CHECK(q2->equal(q2->mul(z, q2->galois(1, s2)), s2));
        CHECK(q2->is_unit(s2));
        try {
            (void)hilbert90(*q2, 1, q2->from_int(2));
            FAIL("expected Precondition");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Precondition);
        }
    }

    TEST_CASE("units invert exactly") {
        Rng rng(3);
        TowerPtr t = Tower::truncated(Field::rationals(), 4);
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({3, 1, 0, 2}), tvec({-5, 0, 1, 0})});
        for (int i = 0; i < 100; ++i) {
            Vec x = random_unit(*s, rng);
            CHECK(s->equal(s->mul(x, s->inv(x)), s->one()));
            Vec n = s->mul(s->eps_power(1), random_elem(*s, rng));
            CHECK(!s->is_unit(n));
        }
    }

    TEST_CASE("residue is a ring homomorphism") {
        Rng rng(5);
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({2, 1, 0})});
        TowerPtr l = s->residue_tower();
        for (int i = 0; i < 100; ++i) {
            Vec x = random_elem(*s, rng), y = random_elem(*s, rng);
            CHECK(s->residue(s->add(x, y)) == l->add(s->residue(x), s->residue(y)));
            CHECK(s->residue(s->mul(x, y)) == l->mul(s->residue(x), s->residue(y)));
        }
    }

    TEST_CASE("norm is multiplicative on random quadratic layers") {
        Rng rng(8);
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        for (int i = 0; i < 200; ++i) {
            TowerPtr s = Tower::adjoin_sqrts(t, {random_unit(*t, rng, 9)});
            Vec x = random_elem(*s, rng), y = random_elem(*s, rng);
            CHECK(t->equal(s->norm(s->mul(x, y)), t->mul(s->norm(x), s->norm(y))));
            CHECK(t->equal(t->residue(s->norm(x)), s->residue_tower()->norm(s->residue(x))));
            Vec b = random_elem(*t, rng);
            CHECK(t->equal(s->norm(s->from_base(b)), t->mul(b, b)));
        }
    }

    TEST_CASE("galois flips are commuting involutive automorphisms") {
        Rng rng(13);
        TowerPtr t = Tower::truncated(Field::rationals(), 2);
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({2, 1}), tvec({3, 0}), tvec({-1, 1})});
        for (int i = 0; i < 50; ++i) {
            Vec x = random_elem(*s, rng), y = random_elem(*s, rng);
            for (uint32_t g = 1; g < 8; ++g) {
                CHECK(s->equal(s->galois(g, s->mul(x, y)), s->mul(s->galois(g, x), s->galois(g, y))));
                CHECK(s->equal(s->galois(g, s->add(x, y)), s->add(s->galois(g, x), s->galois(g, y))));
                CHECK(s->equal(s->galois(g, s->galois(g, x)), x));
            }
            CHECK(s->equal(s->galois(1, s->galois(2, x)), s->galois(2, s->galois(1, x))));
            CHECK(s->equal(s->galois(1, s->galois(2, x)), s->galois(3, x)));
        }
    }

    TEST_CASE("units of L lift to units of S") {
        Rng rng(21);
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({5, 2, 1}), tvec({-3, 0, 1})});
        TowerPtr l = s->residue_tower();
        for (int i = 0; i < 100; ++i) {
            Vec u = random_unit(*l, rng);
            Vec lifted = s->lift_constant(u);
            CHECK(s->is_unit(lifted));
            CHECK(s->residue(lifted) == u);
        }
    }

    TEST_CASE("hilbert90 output satisfies z sigma(s) = s") {
        Rng rng(34);
        TowerPtr t = Tower::truncated(Field::rationals(), 3);
        TowerPtr s = Tower::adjoin_sqrts(t, {tvec({7, 1, -1})});
        for (int i = 0; i < 50; ++i) {
            Vec w = random_unit(*s, rng);
            Vec z = s->mul(w, s->inv(s->galois(1, w)));
            Vec h = hilbert90(*s, 1, z, rng.next());
            CHECK(s->equal(s->mul(z, s->galois(1, h)), h));
        }
    }

    TEST_CASE("prime fields") {
        Field f = Field::prime(101);
        CHECK(f.mul(f.from_int(50), f.from_int(2)) == f.from_int(-1));
        CHECK(f.inv(f.from_int(3)) == f.from_int(34));
        CHECK(f.from_rational(Rational(1, 2)) == f.from_int(51));
        CHECK(!f.is_square(f.from_int(2)));
        CHECK(f.is_square(f.from_int(4)));
        CHECK_THROWS_AS((void)Field::prime(2), Error);
        CHECK_THROWS_AS((void)Field::prime(91), Error);
        CHECK_THROWS_AS((void)Field::parse("Fp:99999999999999999999999"), Error);
        CHECK(Field::parse("Fp:7").name() == "Fp:7");
    }
}

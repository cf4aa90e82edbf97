#include "azulift/symbols.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace azulift;

namespace {

std::set<int64_t> as_ints(const PlaceSet& s) {
    std::set<int64_t> out;
    for (const Place& p : s) out.insert(static_cast<int64_t>(p.p));
    return out;
}

Rational norm_of(const QuadNumber& g, const Rational& n) { return g.u * g.u - n * g.v * g.v; }

}  // namespace

TEST_SUITE("symbols") {
    TEST_CASE("hilbert symbol examples") {
        CHECK(hilbert_symbol(1, 7, Place::prime(7)) == 1);
        CHECK(hilbert_symbol(1, -3, Place::real()) == 1);
        CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
        CHECK(hilbert_symbol(2, 3, Place::prime(3)) == -1);
        CHECK(oracle::hilbert(2, 3, 3) == -1);
        CHECK_THROWS_AS((void)hilbert_symbol(0, 1, Place::real()), Error);
    }

    TEST_CASE("ramification examples") {
        CHECK(ramification_set({1, 7}).empty());
        CHECK(as_ints(ramification_set({-1, -1})) == std::set<int64_t>{0, 2});
        CHECK(as_ints(ramification_set({2, 3})) == std::set<int64_t>{2, 3});
    }

    TEST_CASE("class examples") {
        CHECK(class_of({}).is_split());
        CHECK(class_of({{-1, -1}, {-1, -1}}).is_split());
        CHECK(class_of({{-1, -1}, {-1, -2}}).is_split());
        CHECK(!class_of({{-1, -1}}).is_split());
        CHECK(class_of({{3, -2}}).is_split());
        CHECK(symbols_isomorphic({2, 3}, {-1, 3}));
        CHECK(!symbols_isomorphic({-1, -1}, {1, 1}));
    }

    TEST_CASE("hilbert symbol agrees with the brute-force oracle") {
        Rng rng(101);
        for (int i = 0; i < 300; ++i) {
            const Rational a = rng.nonzero_rational(30), b = rng.nonzero_rational(30);
            CHECK(as_ints(ramification_set({a, b})) == oracle::ramification(a, b));
            for (const Place& v : relevant_places(a, b))
                CHECK(hilbert_symbol(a, b, v) == oracle::hilbert(a, b, static_cast<int64_t>(v.p)));
        }
    }

    TEST_CASE("symmetry and F2-linearity") {
        Rng rng(102);
        for (int i = 0; i < 100; ++i) {
            const Rational a = rng.nonzero_rational(25), b = rng.nonzero_rational(25);
            CHECK(symbols_isomorphic({a, b}, {b, a}));
            std::vector<SymbolPair> ps{{a, b}, {b, rng.nonzero_rational(9)}};
            std::vector<SymbolPair> doubled = ps;
            doubled.insert(doubled.end(), ps.begin(), ps.end());
            CHECK(class_of(doubled).is_split());
        }
    }

    TEST_CASE("norm solver examples") {
        auto g = solve_norm(2, -1);
        REQUIRE(g);
        CHECK(norm_of(*g, 2) == Rational(-1));
        auto h = solve_norm(2, 2);
        REQUIRE(h);
        CHECK(norm_of(*h, 2) == Rational(2));
        CHECK(!solve_norm(-1, -1));
    }

    TEST_CASE("norm solver is complete and exact") {
        Rng rng(103);
        int solved = 0;
        for (int i = 0; i < 150; ++i) {
            const Rational n = rng.nonzero_rational(40), b = rng.nonzero_rational(40);
            auto g = solve_norm(n, b);
            const bool split = class_of({{n, b}}).is_split();
            CHECK(g.has_value() == split);
            if (g) {
                CHECK(norm_of(*g, n) == b);
                ++solved;
            }
        }
        CHECK(solved > 0);
    }

    TEST_CASE("norm solver over a prime field") {
        const Field k = Field::prime(10007);
        auto g = solve_norm(k, 5, 3);
        REQUIRE(g);
        const Scalar u = k.from_rational(g->u), v = k.from_rational(g->v);
        CHECK(k.sub(k.mul(u, u), k.mul(k.from_int(5), k.mul(v, v))) == k.from_int(3));
    }

    TEST_CASE("common slot examples") {
        const Field q = Field::rationals();
        const Rational y = find_common_slot(q, -1, -1, -1, -1);
        CHECK(symbols_isomorphic({y, -1}, {-1, -1}));
        const Rational y2 = find_common_slot(q, 2, 3, -1, 3);
        CHECK(symbols_isomorphic({y2, 3}, {2, 3}));
        CHECK(symbols_isomorphic({y2, 3}, {-1, 3}));
        try {
            (void)find_common_slot(q, 1, 1, -1, -1);
            FAIL("expected Precondition");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Precondition);
        }
    }

    TEST_CASE("common slot passes both isomorphism checks") {
        Rng rng(104);
        const Field q = Field::rationals();
        int found = 0;
        for (int i = 0; i < 200 && found < 40; ++i) {
            const Rational a2 = rng.nonzero_rational(12), n2 = rng.nonzero_rational(12);
            const Rational n3 = rng.nonzero_rational(12);
            auto a3 = solve_slot({n3}, {ramification_set({a2, n2})});
            if (!a3) continue;
            const Rational y = find_common_slot(q, a2, n2, *a3, n3);
            CHECK(symbols_isomorphic({y, n2}, {a2, n2}));
            CHECK(symbols_isomorphic({y, n3}, {*a3, n3}));
            ++found;
        }
        CHECK(found >= 20);
    }

    TEST_CASE("corestriction rewrite examples") {
        TowerPtr k = Tower::field(Field::rationals());
        TowerPtr q2 = Tower::adjoin_sqrts(k, {Vec{Rational(2)}});
        CorRewrite r = cor_rewrite(*q2, q2->from_int(-1), Vec{Rational(1), Rational(1)});
        CHECK(r.residue.a == Rational(-1));
        CHECK(r.residue.b == Rational(-1));
        CorRewrite s = cor_rewrite(*q2, q2->from_int(5), q2->from_int(3));
        CHECK(s.residue.b == Rational(9));
        CHECK(class_of({s.residue}).is_split());
        try {
            (void)cor_rewrite(*q2, Vec{Rational(1), Rational(1)}, q2->one());
            FAIL("expected SlotNotInBase");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SlotNotInBase);
        }
    }
}

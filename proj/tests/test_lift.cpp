#include "azulift/kernels.hpp"
#include "azulift/lift.hpp"

#include <doctest.h>

#include <algorithm>

using namespace azulift;

namespace {

LiftScenario scenario_w(int trunc) {
    LiftScenario sc;
    sc.trunc = trunc;
    sc.a1 = 2;
    sc.a2 = -1;
    sc.a3 = -1;
    sc.x2 = {1, 1};
    sc.x3 = {0, 1};
    return sc;
}

const CheckResult* find_check(const std::vector<CheckResult>& r, const std::string& name) {
    auto it = std::find_if(r.begin(), r.end(), [&](const CheckResult& c) { return c.check == name; });
    return it == r.end() ? nullptr : &*it;
}

bool all_pass(const std::vector<CheckResult>& r) {
    return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace

TEST_SUITE("lift") {
    TEST_CASE("validation examples") {
        ValidationReport w = validate_scenario(scenario_w(3));
        CHECK(w.ok);
        CHECK(w.n2 == Rational(-1));
        CHECK(w.n3 == Rational(-2));

        LiftScenario sq = scenario_w(3);
        sq.a1 = 4;
        ValidationReport r = validate_scenario(sq);
        CHECK(!r.ok);
        CHECK(std::count(r.reasons.begin(), r.reasons.end(), "NonSquareSlot") == 1);

        LiftScenario cor = scenario_w(3);
        cor.a3 = 1;
        cor.x3 = {1, 0};
        ValidationReport c = validate_scenario(cor);
        CHECK(!c.ok);
        CHECK(std::count(c.reasons.begin(), c.reasons.end(), "CorestrictionNontrivial") == 1);
        CHECK(c.cor_ramification.size() == 2);

        LiftScenario zero = scenario_w(3);
        zero.x3 = {0, 0};
        CHECK(!validate_scenario(zero).ok);
    }

    TEST_CASE("witnesses for scenario W") {
        const LiftScenario sc = scenario_w(3);
        const Witnesses w = derive_witnesses(sc);
        CHECK(w.y == Rational(-1));
        CHECK(witness_failures(sc, w).empty());
        // N(mu23) = y in Q(sqrt 2), a2 y = N(mu2) in Q(sqrt -1), a3 y = N(mu3) in Q(sqrt -2)
        CHECK(w.mu23.u * w.mu23.u - 2 * w.mu23.v * w.mu23.v == w.y);
        CHECK(w.mu2.u * w.mu2.u + w.mu2.v * w.mu2.v == sc.a2 * w.y);
        CHECK(w.mu3.u * w.mu3.u + 2 * w.mu3.v * w.mu3.v == sc.a3 * w.y);
    }

    TEST_CASE("witnesses when every norm is a square") {
        LiftScenario sc;
        sc.trunc = 2;
        sc.a1 = 3;
        sc.x2 = {2, 0};
        sc.x3 = {5, 0};
        sc.a2 = 7;
        sc.a3 = -11;
        const Witnesses w = derive_witnesses(sc);
        CHECK(w.y == Rational(1));
        CHECK(w.mu23.v.is_zero());
        CHECK(witness_failures(sc, w).empty());
    }

    TEST_CASE("tampered witnesses are rejected") {
        const LiftScenario sc = scenario_w(2);
        Witnesses bad = derive_witnesses(sc);
        bad.mu2.u = bad.mu2.u * 3;
        bad.mu2.v = bad.mu2.v * 3;
        CHECK(!witness_failures(sc, bad).empty());

        // W has mu2 = mu3 = 1, so swap on a scenario where they differ
        Rng rng(77);
        for (;;) {
            const LiftScenario r = random_admissible_scenario(rng, 2);
            Witnesses w = derive_witnesses(r);
            if (w.mu2.u == w.mu3.u && w.mu2.v == w.mu3.v) continue;
            std::swap(w.mu2, w.mu3);
            CHECK(!witness_failures(r, w).empty());
            break;
        }
    }

    TEST_CASE("scenario W lifts at N = 3") {
        const LiftScenario sc = scenario_w(3);
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        for (const CheckResult& c : cert.report) CHECK_MESSAGE(c.pass, c.check << ": " << c.detail);
        CHECK(cert.dprime->dim() == 64);
        CHECK(cert.a1->dim() == 64);
        CHECK(cert.b->dim() == 16);
        CHECK(is_azumaya(*cert.dprime));
    }

    TEST_CASE("scenario W with unit seeds at N = 2") {
        LiftScenario sc = scenario_w(2);
        sc.seeds = {1, 1, 1, 1, 1, 1, 1};
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        CHECK(all_pass(cert.report));
        const CheckResult* res = find_check(cert.report, "relations.residue");
        REQUIRE(res);
        CHECK(res->pass);
    }

    TEST_CASE("N = 1 reduces to a construction over K") {
        const LiftScenario sc = scenario_w(1);
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        CHECK(all_pass(cert.report));
        CHECK(residue_algebra(*cert.dprime).table() == cert.dprime->table());
    }

    TEST_CASE("prime field scenario") {
        LiftScenario sc;
        sc.field = Field::prime(101);
        sc.trunc = 2;
        sc.a1 = 2;
        sc.a2 = 3;
        sc.a3 = 5;
        sc.x2 = {1, 1};
        sc.x3 = {2, 1};
        sc.d = 7;
        sc.seeds.a1 = 1;
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        CHECK(all_pass(cert.report));
    }

    TEST_CASE("tampering is detected") {
        const LiftScenario sc = scenario_w(2);
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        REQUIRE(all_pass(cert.report));

        SUBCASE("D' structure constants moved by eps") {
            LiftCertificate bad = cert;
            ProductTable t = bad.dprime->table();
            t.coef[1] += Rational(1);
            bad.dprime = StructAlgebra(bad.t, t, bad.dprime->one(), bad.dprime->gens()).share();
            const auto r = verify_certificate(bad);
            CHECK(!find_check(r, "D.corner")->pass);
            CHECK(!(find_check(r, "D.associative")->pass && find_check(r, "D.azumaya")->pass));
        }
        SUBCASE("primed mu2 moved") {
            LiftCertificate bad = cert;
            bad.primed.mu2.second = bad.t->add(bad.primed.mu2.second, bad.t->from_int(1));
            CHECK(!find_check(verify_certificate(bad), "relations.primed")->pass);
        }
        SUBCASE("alpha image altered") {
            LiftCertificate bad = cert;
            bad.alpha.images[3][0] += Rational(1);
            CHECK(!find_check(verify_certificate(bad), "alpha.semilinear_automorphism")->pass);
        }
    }

    TEST_CASE("odd part reduction of the degree") {
        const SymbolClass c = class_of({{-1, -1}});
        auto [two, cls] = lemma3_reduce(24, c);
        CHECK(two == 8);
        CHECK(cls == c);
        CHECK(lemma3_reduce(8, c).first == 8);
        auto [one, triv] = lemma3_reduce(3, class_of({}));
        CHECK(one == 1);
        CHECK(triv.is_split());
    }

    TEST_CASE("random admissible scenarios round trip") {
        Rng rng(2024);
        for (int n = 0; n < 3; ++n) {
            const LiftScenario sc = random_admissible_scenario(rng, 2);
            REQUIRE(validate_scenario(sc).ok);
            const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
            CHECK(all_pass(cert.report));
        }
    }
}

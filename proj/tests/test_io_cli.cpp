#include "azulift/cli.hpp"
#include "azulift/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unistd.h>

using namespace azulift;
namespace fs = std::filesystem;
using io::Json;

namespace {

const fs::path kScenarios = AZULIFT_SCENARIO_DIR;

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("azulift_io_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "azulift");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<ErrorKind> parse_kind(const Json& j) {
    try {
        (void)io::scenario_from_json(j);
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

Json w_json() { return io::read_json_file((kScenarios / "scenario_w.json").string()); }

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("rationals are strings") {
        CHECK(io::rational_to_json(Rational(-3, 4)) == Json("-3/4"));
        CHECK(io::rational_from_json(Json("6/8"), "$") == Rational(3, 4));
        CHECK_THROWS_AS((void)io::rational_from_json(Json(3), "$"), Error);
        CHECK_THROWS_AS((void)io::rational_from_json(Json("1/0"), "$"), Error);
        CHECK_THROWS_AS((void)io::rational_from_json(Json("0.5"), "$"), Error);
    }

    TEST_CASE("scenario round trip") {
        Rng rng(5);
        for (int i = 0; i < 20; ++i) {
            LiftScenario sc = random_admissible_scenario(rng, 1 + i % 4);
            sc.seeds.mu3 = i;
            sc.rng_seed = 100 + static_cast<uint64_t>(i);
            const LiftScenario back = io::scenario_from_json(io::scenario_to_json(sc));
            CHECK(io::dump(io::scenario_to_json(back)) == io::dump(io::scenario_to_json(sc)));
            CHECK(back.seeds == sc.seeds);
            CHECK(back.a3 == sc.a3);
        }
    }

    TEST_CASE("scenario parse errors carry the path") {
        Json j = w_json();
        CHECK(io::scenario_from_json(j).a1 == Rational(2));

        Json missing = j;
        missing.erase("a2");
        CHECK(parse_kind(missing) == ErrorKind::Parse);

        Json extra = j;
        extra["colour"] = "blue";
        CHECK(parse_kind(extra) == ErrorKind::Parse);

        Json num = j;
        num["a1"] = 2;
        CHECK(parse_kind(num) == ErrorKind::Parse);

        Json field = j;
        field["field"] = "Fp:100";
        CHECK(parse_kind(field) == ErrorKind::Parse);

        Json pair = j;
        pair["x2"] = Json::array({"1"});
        try {
            (void)io::scenario_from_json(pair);
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("x2") != std::string::npos);
        }

        Json seeds = j;
        seeds["seeds"] = {{"mu4", 1}};
        CHECK(parse_kind(seeds) == ErrorKind::Parse);

        Json trunc = j;
        trunc["trunc"] = 0;
        CHECK(parse_kind(trunc) == ErrorKind::Parse);
    }

    TEST_CASE("certificate round trip") {
        LiftScenario sc = io::scenario_from_json(w_json());
        sc.trunc = 2;
        const LiftCertificate cert = construct_lift(sc, derive_witnesses(sc));
        const Json j = io::certificate_to_json(cert);
        const LiftCertificate back = io::certificate_from_json(j);
        CHECK(io::dump(io::certificate_to_json(back)) == io::dump(j));
        for (const CheckResult& c : verify_certificate(back)) CHECK_MESSAGE(c.pass, c.check);

        Json bad = j;
        bad["D"]["algebra"]["one"][0] = "1/2/3";
        CHECK_THROWS_AS((void)io::certificate_from_json(bad), Error);
        Json narrow = j;
        narrow["c"].erase(0);
        CHECK_THROWS_AS((void)io::certificate_from_json(narrow), Error);
    }

    TEST_CASE("prime field coordinates must be reduced") {
        Json j = io::read_json_file((kScenarios / "fp_101.json").string());
        LiftScenario sc = io::scenario_from_json(j);
        CHECK(sc.field.characteristic() == 101);
        sc.trunc = 1;
        Json cert = io::certificate_to_json(construct_lift(sc, derive_witnesses(sc)));
        (void)io::certificate_from_json(cert);
        cert["c"][0] = "-1";
        CHECK_THROWS_AS((void)io::certificate_from_json(cert), Error);
    }
}

TEST_SUITE("cli") {
    TEST_CASE("symbols") {
        Run r = run({"symbols", "-1", "-1"});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.find("ramified {inf, 2}") != std::string::npos);
        CHECK(r.out.find("non-split") != std::string::npos);
        CHECK(run({"symbols", "0", "1"}).code == cli::kParse);
        CHECK(run({"symbols", "x", "1"}).code == cli::kParse);
        CHECK(run({"symbols", "1"}).code == cli::kParse);
        CHECK(run({"frobnicate"}).code == cli::kParse);
        CHECK(run({"--help"}).code == cli::kOk);
    }

    TEST_CASE("solve-norm and find-slot") {
        Run r = run({"solve-norm", "2", "-1"});
        CHECK(r.code == cli::kOk);
        CHECK(run({"solve-norm", "-1", "-1"}).code == cli::kSemantic);
        CHECK(run({"solve-norm", "--field", "Fp:10007", "5", "3"}).code == cli::kOk);
        Run s = run({"find-slot", "2", "3", "-1", "3"});
        CHECK(s.code == cli::kOk);
        CHECK(s.out.rfind("y = ", 0) == 0);
    }

    TEST_CASE("validate") {
        CHECK(run({"validate", (kScenarios / "scenario_w.json").string()}).code == cli::kOk);
        Run r = run({"validate", (kScenarios / "invalid" / "square_a1.json").string()});
        CHECK(r.code == cli::kSemantic);
        CHECK(r.out.find("NonSquareSlot") != std::string::npos);
        CHECK(run({"validate", (scratch_dir() / "absent.json").string()}).code == cli::kParse);
    }

    TEST_CASE("lift, verify and tamper") {
        const fs::path cert = scratch_dir() / "w2.cert.json";
        Run r = run({"lift", (kScenarios / "scenario_w.json").string(), "--trunc", "2", "--out", cert.string()});
        REQUIRE(r.code == cli::kOk);
        CHECK(r.out.find("FAIL") == std::string::npos);
        const std::string text = slurp(cert);

        CHECK(run({"verify", cert.string()}).code == cli::kOk);
        Run js = run({"verify", "--json", cert.string()});
        CHECK(js.code == cli::kOk);
        CHECK(Json::parse(js.out).is_array());

        SUBCASE("deterministic") {
            const fs::path again = scratch_dir() / "w2b.cert.json";
            REQUIRE(run({"lift", (kScenarios / "scenario_w.json").string(), "--trunc", "2", "--out",
                         again.string()})
                        .code == cli::kOk);
            CHECK(slurp(again) == text);
        }
        SUBCASE("edited structure constant") {
            Json j = Json::parse(text);
            Json& prods = j["D"]["algebra"]["table"]["products"];
            prods[0][3][0] = io::rational_from_json(prods[0][3][0], "$") == Rational(0) ? "1" : "0";
            const fs::path edited = scratch_dir() / "edited.cert.json";
            io::write_text_file(edited.string(), io::dump(j));
            Run v = run({"verify", edited.string()});
            CHECK(v.code == cli::kSemantic);
            CHECK(v.out.find("FAIL") != std::string::npos);
        }
        SUBCASE("truncated file") {
            const fs::path cut = scratch_dir() / "cut.cert.json";
            io::write_text_file(cut.string(), text.substr(0, text.size() / 2));
            CHECK(run({"verify", cut.string()}).code == cli::kParse);
        }
    }

    TEST_CASE("lift of an invalid scenario") {
        Run r = run({"lift", (kScenarios / "invalid" / "square_a1.json").string(), "--out",
                     (scratch_dir() / "sq.cert.json").string()});
        CHECK(r.code == cli::kSemantic);
        CHECK((r.out + r.err).find("NonSquareSlot") != std::string::npos);
        CHECK(!fs::exists(scratch_dir() / "sq.cert.json"));
        CHECK(run({"lift", (kScenarios / "scenario_w.json").string(), "--trunc", "0"}).code == cli::kParse);
    }

    TEST_CASE("seed precedence") {
        LiftScenario sc;
        sc.rng_seed = 3;
        cli::LiftOptions opt;
        ::setenv("AZULIFT_SEED", "11", 1);
        cli::apply_overrides(sc, opt);
        CHECK(sc.rng_seed == 11);
        opt.seed = 19;
        cli::apply_overrides(sc, opt);
        CHECK(sc.rng_seed == 19);
        ::unsetenv("AZULIFT_SEED");
        LiftScenario plain;
        plain.rng_seed = 3;
        cli::apply_overrides(plain, {});
        CHECK(plain.rng_seed == 3);
    }

    TEST_CASE("batch") {
        const fs::path in = scratch_dir() / "batch_in";
        const fs::path out = scratch_dir() / "batch_out";
        fs::create_directories(in);
        Json w = w_json();
        w["trunc"] = 1;
        io::write_text_file((in / "a.json").string(), io::dump(w));
        w["seeds"] = {{"a1", 1}};
        w["trunc"] = 2;
        io::write_text_file((in / "b.json").string(), io::dump(w));
        io::write_text_file((in / "old.cert.json").string(), "{}");
        Run r = run({"lift", "--batch", in.string(), "--out", out.string()});
        CHECK(r.code == cli::kOk);
        CHECK(fs::exists(out / "a.cert.json"));
        CHECK(fs::exists(out / "b.cert.json"));
        CHECK(!fs::exists(out / "old.cert.cert.json"));

        io::write_text_file((in / "c.json").string(), "{\"field\": ");
        CHECK(run({"lift", "--batch", in.string(), "--out", out.string()}).code == cli::kParse);
    }
}

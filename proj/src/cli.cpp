#include "azulift/cli.hpp"

#include "azulift/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace azulift::cli {

namespace fs = std::filesystem;

namespace {

void print_report(const std::vector<CheckResult>& report, std::ostream& out) {
    size_t w = 0;
    for (const CheckResult& r : report) w = std::max(w, r.check.size());
    for (const CheckResult& r : report)
        out << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(w)) << r.check << "  "
            << r.detail << "\n";
    const auto passed = std::count_if(report.begin(), report.end(), [](const CheckResult& r) { return r.pass; });
    out << passed << "/" << report.size() << " checks passed\n";
}

bool all_pass(const std::vector<CheckResult>& report) {
    return std::all_of(report.begin(), report.end(), [](const CheckResult& r) { return r.pass; });
}

Rational parse_nonzero(const std::string& s) {
    Rational q = Rational::parse(s);
    if (q.is_zero()) fail(ErrorKind::Parse, "expected a nonzero rational, got '" + s + "'");
    return q;
}

std::string quad_str(const QuadNumber& q, const std::string& root) { return q.u.str() + " + (" + q.v.str() + ")*sqrt(" + root + ")"; }

std::string default_out(const std::string& path) {
    fs::path p(path);
    p.replace_extension();
    return p.string() + ".cert.json";
}

// Runs a command body, mapping library errors to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kSemantic;
    }
}

}  // namespace

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Parse:
            return kParse;
        case ErrorKind::SearchExhausted:
        case ErrorKind::WitnessSearchFailed:
            return kSearch;
        default:
            return kSemantic;
    }
}

void apply_overrides(LiftScenario& sc, const LiftOptions& opt) {
    if (opt.trunc) {
        if (*opt.trunc < 1) fail(ErrorKind::Parse, "--trunc must be at least 1");
        sc.trunc = *opt.trunc;
    }
    if (const char* env = std::getenv("AZULIFT_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') fail(ErrorKind::Parse, "AZULIFT_SEED is not a non-negative integer");
        sc.rng_seed = v;
    }
    if (opt.seed) sc.rng_seed = *opt.seed;
}

int cmd_symbols(const std::string& a, const std::string& b, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Rational qa = parse_nonzero(a), qb = parse_nonzero(b);
        out << "(" << qa.str() << ", " << qb.str() << ") over Q\n";
        for (const Place& v : relevant_places(qa, qb))
            out << "  (a,b)_" << std::left << std::setw(6) << v.name() << " = " << std::showpos
                << hilbert_symbol(qa, qb, v) << std::noshowpos << "\n";
        const PlaceSet ram = ramification_set({qa, qb});
        out << "ramified " << format_places(ram) << "\n" << (ram.empty() ? "split" : "non-split") << "\n";
        return int{kOk};
    });
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LiftScenario sc = io::scenario_from_json(io::read_json_file(path));
        const ValidationReport r = validate_scenario(sc);
        out << r.summary() << "\n";
        if (!r.ok) return int{kSemantic};
        const Witnesses w = derive_witnesses(sc);
        out << "witnesses: y = " << w.y.str() << ", mu2 = " << quad_str(w.mu2, r.n2.str())
            << ", mu23 = " << quad_str(w.mu23, (r.n2 * r.n3).str()) << ", mu3 = " << quad_str(w.mu3, r.n3.str())
            << "\n";
        return int{kOk};
    });
}

int cmd_lift(const std::string& path, const LiftOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        LiftScenario sc = io::scenario_from_json(io::read_json_file(path));
        apply_overrides(sc, opt);
        const ValidationReport v = validate_scenario(sc);
        if (!v.ok) {
            err << "validation failed: " << v.summary() << "\n";
            return int{kSemantic};
        }
        const Witnesses w = derive_witnesses(sc);
        const LiftCertificate cert = construct_lift(sc, w);
        const std::string target = opt.out.empty() ? default_out(path) : opt.out;
        io::write_text_file(target, io::dump(io::certificate_to_json(cert)));
        if (!opt.quiet) {
            print_report(cert.report, out);
            out << "certificate written to " << target << "\n";
        }
        return int{cert.all_pass() ? kOk : kSemantic};
    });
}

int cmd_lift_batch(const std::string& dir, const std::string& out_dir, const LiftOptions& opt, std::ostream& out,
                   std::ostream& err) {
    std::vector<fs::path> inputs;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".json" && name.find(".cert.") == std::string::npos)
            inputs.push_back(entry.path());
    }
    if (ec) {
        err << "error: cannot list '" << dir << "': " << ec.message() << "\n";
        return kParse;
    }
    std::sort(inputs.begin(), inputs.end());
    const fs::path target = out_dir.empty() ? fs::path(dir) : fs::path(out_dir);
    fs::create_directories(target, ec);
    std::vector<int> codes(inputs.size(), kOk);
    std::vector<std::string> logs(inputs.size());
    const auto n = static_cast<int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<size_t>(i);
        std::ostringstream o, e;
        LiftOptions one = opt;
        one.quiet = true;
        fs::path dest = target / inputs[u].filename();
        dest.replace_extension(".cert.json");
        one.out = dest.string();
        codes[u] = cmd_lift(inputs[u].string(), one, o, e);
        logs[u] = inputs[u].filename().string() + ": exit " + std::to_string(codes[u]) + "\n" + e.str();
    }
    int worst = kOk;
    for (size_t i = 0; i < inputs.size(); ++i) {
        out << logs[i];
        worst = std::max(worst, codes[i]);
    }
    out << inputs.size() << " scenarios processed\n";
    return worst;
}

int cmd_verify(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LiftCertificate cert = io::certificate_from_json(io::read_json_file(path));
        const std::vector<CheckResult> report = verify_certificate(cert);
        if (json) {
            out << io::dump(io::report_to_json(report));
        } else {
            print_report(report, out);
        }
        return int{all_pass(report) ? kOk : kSemantic};
    });
}

int cmd_solve_norm(const std::string& field, const std::string& n, const std::string& b, std::ostream& out,
                   std::ostream& err) {
    return guarded(err, [&] {
        const Field k = Field::parse(field);
        const Rational qn = parse_nonzero(n), qb = parse_nonzero(b);
        auto g = solve_norm(k, qn, qb);
        if (!g) {
            out << "no solution: (" << qn.str() << ", " << qb.str() << ") is non-split\n";
            return int{kSemantic};
        }
        out << quad_str(*g, qn.str()) << "\n";
        out << "u = " << g->u.str() << "\nv = " << g->v.str() << "\n";
        return int{kOk};
    });
}

int cmd_find_slot(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (args.size() != 4) fail(ErrorKind::Parse, "find-slot expects a2 n2 a3 n3");
        std::vector<Rational> q;
        for (const std::string& s : args) q.push_back(parse_nonzero(s));
        const Rational y = find_common_slot(Field::rationals(), q[0], q[1], q[2], q[3]);
        out << "y = " << y.str() << "\n";
        out << "ram(y, n2) = " << format_places(ramification_set({y, q[1]})) << "\n";
        out << "ram(y, n3) = " << format_places(ramification_set({y, q[3]})) << "\n";
        return int{kOk};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Azumaya lifts of degree-8 algebras over truncated polynomial rings"};
    app.require_subcommand(1);

    std::string sa, sb;
    auto* symbols = app.add_subcommand("symbols", "Hilbert symbols and ramification of (a, b) over Q");
    symbols->add_option("a", sa)->required();
    symbols->add_option("b", sb)->required();

    std::string path, out_path, batch_dir;
    LiftOptions lopt;
    auto* lift = app.add_subcommand("lift", "Validate, lift and verify a scenario");
    lift->add_option("scenario", path, "scenario JSON");
    lift->add_option("--out", out_path, "certificate path (directory with --batch)");
    lift->add_option("--trunc", lopt.trunc, "truncation order N");
    lift->add_option("--seed", lopt.seed, "random seed");
    lift->add_option("--batch", batch_dir, "process every scenario in a directory");

    bool json = false;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate");
    verify->add_option("certificate", path)->required();
    verify->add_flag("--json", json, "print the report as JSON");

    auto* validate = app.add_subcommand("validate", "Check a scenario and derive witnesses");
    validate->add_option("scenario", path)->required();

    std::string field = "Q";
    auto* solve = app.add_subcommand("solve-norm", "u^2 - n v^2 = b");
    solve->add_option("n", sa)->required();
    solve->add_option("b", sb)->required();
    solve->add_option("--field", field, "Q or Fp:<p>");

    std::vector<std::string> slot_args;
    auto* slot = app.add_subcommand("find-slot", "common slot y for (a2, n2) and (a3, n3)");
    slot->add_option("args", slot_args, "a2 n2 a3 n3")->expected(4)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return kParse;
    }

    if (*symbols) return cmd_symbols(sa, sb, out, err);
    if (*lift) {
        lopt.out = out_path;
        if (!batch_dir.empty()) return cmd_lift_batch(batch_dir, out_path, lopt, out, err);
        if (path.empty()) {
            err << "error: lift needs a scenario path or --batch\n";
            return kParse;
        }
        return cmd_lift(path, lopt, out, err);
    }
    if (*verify) return cmd_verify(path, json, out, err);
    if (*validate) return cmd_validate(path, out, err);
    if (*solve) return cmd_solve_norm(field, sa, sb, out, err);
    if (*slot) return cmd_find_slot(slot_args, out, err);
    return kParse;
}

}  // namespace azulift::cli

#include "azulift/io.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace azulift::io {

namespace {

constexpr const char* kCertFormat = "azulift-certificate/1";
constexpr const char* kA2Construction = "A1 (x) (a1', d')_T";
constexpr int kMaxTrunc = 64;

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail(ErrorKind::Parse, path + ": " + what); }

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) bad(path, "expected an object");
    for (const char* k : required)
        if (!j.contains(k)) bad(path, std::string("missing key '") + k + "'");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) bad(path, "unknown key '" + key + "'");
    }
}

const Json& expect_array(const Json& j, const std::string& path, size_t n = std::numeric_limits<size_t>::max()) {
    if (!j.is_array()) bad(path, "expected an array");
    if (n != std::numeric_limits<size_t>::max() && j.size() != n)
        bad(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
    return j;
}

int64_t int_from_json(const Json& j, const std::string& path, int64_t lo, int64_t hi) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<uint64_t>() > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
        bad(path, "integer out of range");
    const int64_t v = j.get<int64_t>();
    if (v < lo || v > hi) bad(path, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

uint64_t uint_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<int64_t>() < 0))
        bad(path, "expected a non-negative integer");
    return j.get<uint64_t>();
}

std::string string_from_json(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

Json quad_to_json(const QuadNumber& q) { return Json::array({rational_to_json(q.u), rational_to_json(q.v)}); }

QuadNumber quad_from_json(const Json& j, const std::string& path) {
    expect_array(j, path, 2);
    return {rational_from_json(j[0], path + "[0]"), rational_from_json(j[1], path + "[1]")};
}

Json pair_to_json(const std::pair<Vec, Vec>& p) { return {{"u", vec_to_json(p.first)}, {"v", vec_to_json(p.second)}}; }

std::pair<Vec, Vec> pair_from_json(const Json& j, const std::string& path, size_t width) {
    expect_object(j, path, {"u", "v"});
    return {vec_from_json(j["u"], path + ".u", width), vec_from_json(j["v"], path + ".v", width)};
}

Json seeds_to_json(const ScenarioSeeds& s) {
    return {{"a1", s.a1}, {"x2", s.x2}, {"x3", s.x3}, {"mu2", s.mu2}, {"mu3", s.mu3}, {"mu23", s.mu23}, {"d", s.d}};
}

ScenarioSeeds seeds_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {}, {"a1", "x2", "x3", "mu2", "mu3", "mu23", "d"});
    ScenarioSeeds s;
    constexpr int64_t lim = int64_t{1} << 40;
    auto get = [&](const char* key, int64_t& out) {
        if (j.contains(key)) out = int_from_json(j[key], path + "." + key, -lim, lim);
    };
    get("a1", s.a1);
    get("x2", s.x2);
    get("x3", s.x3);
    get("mu2", s.mu2);
    get("mu3", s.mu3);
    get("mu23", s.mu23);
    get("d", s.d);
    return s;
}

Json primed_to_json(const PrimedData& p) {
    return {{"a1", vec_to_json(p.a1)},   {"d", vec_to_json(p.d)},      {"y", vec_to_json(p.y)},
            {"a2", vec_to_json(p.a2)},   {"a3", vec_to_json(p.a3)},    {"x2", vec_to_json(p.x2)},
            {"x3", vec_to_json(p.x3)},   {"n2", vec_to_json(p.n2)},    {"n3", vec_to_json(p.n3)},
            {"n23", vec_to_json(p.n23)}, {"mu2", pair_to_json(p.mu2)}, {"mu3", pair_to_json(p.mu3)},
            {"mu23", pair_to_json(p.mu23)}};
}

PrimedData primed_from_json(const Json& j, const std::string& path, size_t n) {
    expect_object(j, path, {"a1", "d", "y", "a2", "a3", "x2", "x3", "n2", "n3", "n23", "mu2", "mu3", "mu23"});
    PrimedData p;
    auto t = [&](const char* key) { return vec_from_json(j[key], path + "." + key, n); };
    p.a1 = t("a1");
    p.d = t("d");
    p.y = t("y");
    p.a2 = t("a2");
    p.a3 = t("a3");
    p.n2 = t("n2");
    p.n3 = t("n3");
    p.n23 = t("n23");
    p.x2 = vec_from_json(j["x2"], path + ".x2", 2 * n);
    p.x3 = vec_from_json(j["x3"], path + ".x3", 2 * n);
    p.mu2 = pair_from_json(j["mu2"], path + ".mu2", n);
    p.mu3 = pair_from_json(j["mu3"], path + ".mu3", n);
    p.mu23 = pair_from_json(j["mu23"], path + ".mu23", n);
    return p;
}

std::vector<Vec> vecs_from_json(const Json& j, const std::string& path, size_t count, size_t width) {
    expect_array(j, path, count);
    std::vector<Vec> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) out.push_back(vec_from_json(j[i], path + "[" + std::to_string(i) + "]", width));
    return out;
}

Json vecs_to_json(const std::vector<Vec>& vs) {
    Json out = Json::array();
    for (const Vec& v : vs) out.push_back(vec_to_json(v));
    return out;
}

// F_p coordinates must be reduced residues so that tables compare exactly.
void check_field(const Field& k, const Vec& v, const std::string& path) {
    if (k.is_rationals()) return;
    for (const Scalar& s : v)
        if (!(k.from_rational(s) == s)) bad(path, "coordinate " + s.str() + " is not a reduced residue");
}

}  // namespace

Json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j, const std::string& path) {
    const std::string s = string_from_json(j, path);
    try {
        return Rational::parse(s);
    } catch (const Error& e) {
        bad(path, e.what());
    }
}

Json vec_to_json(CSpan v) {
    Json out = Json::array();
    for (const Scalar& s : v) out.push_back(rational_to_json(s));
    return out;
}

Vec vec_from_json(const Json& j, const std::string& path, size_t width) {
    expect_array(j, path, width);
    Vec out;
    out.reserve(width);
    for (size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Json table_to_json(const ProductTable& t) {
    Json products = Json::array();
    for (size_t i = 0; i < t.dim; ++i)
        for (size_t jj = 0; jj < t.dim; ++jj)
            for (uint32_t e = t.start[i * t.dim + jj]; e < t.start[i * t.dim + jj + 1]; ++e)
                products.push_back(Json::array({i, jj, t.target[e], vec_to_json(t.coef_at(e))}));
    return {{"dim", t.dim}, {"width", t.width}, {"products", std::move(products)}};
}

ProductTable table_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"dim", "width", "products"});
    ProductTable t;
    t.dim = static_cast<size_t>(int_from_json(j["dim"], path + ".dim", 1, 4096));
    t.width = static_cast<size_t>(int_from_json(j["width"], path + ".width", 1, 4096));
    const Json& prods = expect_array(j["products"], path + ".products");
    t.start.assign(t.dim * t.dim + 1, 0);
    size_t last_cell = 0;
    int64_t last_target = -1;
    const auto dmax = static_cast<int64_t>(t.dim) - 1;
    for (size_t e = 0; e < prods.size(); ++e) {
        const std::string ep = path + ".products[" + std::to_string(e) + "]";
        const Json& row = expect_array(prods[e], ep, 4);
        const auto i = static_cast<size_t>(int_from_json(row[0], ep + "[0]", 0, dmax));
        const auto jj = static_cast<size_t>(int_from_json(row[1], ep + "[1]", 0, dmax));
        const int64_t k = int_from_json(row[2], ep + "[2]", 0, dmax);
        const size_t cell = i * t.dim + jj;
        if (cell < last_cell || (cell == last_cell && k <= last_target)) bad(ep, "products are not in canonical order");
        if (cell != last_cell) last_target = -1;
        for (size_t c = last_cell + 1; c <= cell; ++c) t.start[c] = static_cast<uint32_t>(t.target.size());
        last_cell = cell;
        last_target = k;
        Vec coef = vec_from_json(row[3], ep + "[3]", t.width);
        t.target.push_back(static_cast<uint32_t>(k));
        t.coef.insert(t.coef.end(), coef.begin(), coef.end());
    }
    for (size_t c = last_cell + 1; c <= t.dim * t.dim; ++c) t.start[c] = static_cast<uint32_t>(t.target.size());
    return t;
}

Json algebra_to_json(const StructAlgebra& a) {
    Json gens = Json::array();
    for (const auto& [name, v] : a.gens()) gens.push_back(Json::array({name, vec_to_json(v)}));
    return {{"table", table_to_json(a.table())}, {"one", vec_to_json(a.one())}, {"gens", std::move(gens)}};
}

StructAlgebra algebra_from_json(const Json& j, const std::string& path, const TowerPtr& base) {
    expect_object(j, path, {"table", "one"}, {"gens"});
    ProductTable t = table_from_json(j["table"], path + ".table");
    if (t.width != base->width()) bad(path + ".table.width", "does not match the ring width " + std::to_string(base->width()));
    check_field(base->field(), t.coef, path + ".table");
    Vec one = vec_from_json(j["one"], path + ".one", t.dim * t.width);
    check_field(base->field(), one, path + ".one");
    std::vector<NamedElement> gens;
    if (j.contains("gens")) {
        const Json& g = expect_array(j["gens"], path + ".gens");
        for (size_t i = 0; i < g.size(); ++i) {
            const std::string gp = path + ".gens[" + std::to_string(i) + "]";
            expect_array(g[i], gp, 2);
            gens.emplace_back(string_from_json(g[i][0], gp + "[0]"), vec_from_json(g[i][1], gp + "[1]", t.dim * t.width));
            check_field(base->field(), gens.back().second, gp + "[1]");
        }
    }
    return {base, std::move(t), std::move(one), std::move(gens)};
}

Json scenario_to_json(const LiftScenario& sc) {
    return {{"field", sc.field.name()},
            {"trunc", sc.trunc},
            {"a1", rational_to_json(sc.a1)},
            {"a2", rational_to_json(sc.a2)},
            {"a3", rational_to_json(sc.a3)},
            {"x2", quad_to_json(sc.x2)},
            {"x3", quad_to_json(sc.x3)},
            {"d", rational_to_json(sc.d)},
            {"seeds", seeds_to_json(sc.seeds)},
            {"rng_seed", sc.rng_seed}};
}

LiftScenario scenario_from_json(const Json& j) {
    const std::string p = "scenario";
    expect_object(j, p, {"field", "a1", "a2", "a3", "x2", "x3"}, {"trunc", "d", "seeds", "rng_seed"});
    LiftScenario sc;
    try {
        sc.field = Field::parse(string_from_json(j["field"], p + ".field"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        bad(p + ".field", e.what());
    } catch (const std::exception& e) {
        bad(p + ".field", e.what());
    }
    if (j.contains("trunc")) sc.trunc = static_cast<int>(int_from_json(j["trunc"], p + ".trunc", 1, kMaxTrunc));
    sc.a1 = rational_from_json(j["a1"], p + ".a1");
    sc.a2 = rational_from_json(j["a2"], p + ".a2");
    sc.a3 = rational_from_json(j["a3"], p + ".a3");
    sc.x2 = quad_from_json(j["x2"], p + ".x2");
    sc.x3 = quad_from_json(j["x3"], p + ".x3");
    if (j.contains("d")) sc.d = rational_from_json(j["d"], p + ".d");
    if (j.contains("seeds")) sc.seeds = seeds_from_json(j["seeds"], p + ".seeds");
    if (j.contains("rng_seed")) sc.rng_seed = uint_from_json(j["rng_seed"], p + ".rng_seed");
    return sc;
}

Json witnesses_to_json(const Witnesses& w) {
    return {{"y", rational_to_json(w.y)}, {"mu2", quad_to_json(w.mu2)}, {"mu3", quad_to_json(w.mu3)},
            {"mu23", quad_to_json(w.mu23)}};
}

Witnesses witnesses_from_json(const Json& j, const std::string& path) {
    expect_object(j, path, {"y", "mu2", "mu3", "mu23"});
    return {rational_from_json(j["y"], path + ".y"), quad_from_json(j["mu2"], path + ".mu2"),
            quad_from_json(j["mu3"], path + ".mu3"), quad_from_json(j["mu23"], path + ".mu23")};
}

Json report_to_json(const std::vector<CheckResult>& r) {
    Json out = Json::array();
    for (const CheckResult& c : r) out.push_back({{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

Json certificate_to_json(const LiftCertificate& cert) {
    Json j;
    j["format"] = kCertFormat;
    j["scenario"] = scenario_to_json(cert.scenario);
    j["witnesses"] = witnesses_to_json(cert.witnesses);
    j["primed"] = primed_to_json(cert.primed);
    j["S_radicand"] = vec_to_json(cert.s->radicand(0));
    j["B"] = algebra_to_json(*cert.b);
    j["alpha"] = {{"sigma", cert.alpha.sigma}, {"images", vecs_to_json(cert.alpha.images)}};
    j["c"] = vec_to_json(cert.c);
    j["A1"] = algebra_to_json(*cert.a1);
    j["A2"] = {{"construction", kA2Construction}, {"dim", cert.a1->dim() * 4}};
    j["e"] = vec_to_json(cert.e);
    j["D"] = {{"basis", vecs_to_json(cert.d_basis)}, {"algebra", algebra_to_json(*cert.dprime)}};
    j["report"] = report_to_json(cert.report);
    return j;
}

LiftCertificate certificate_from_json(const Json& j) {
    expect_object(j, "certificate",
                  {"format", "scenario", "witnesses", "primed", "S_radicand", "B", "alpha", "c", "A1", "A2", "e", "D"},
                  {"report"});
    if (string_from_json(j["format"], "format") != kCertFormat) bad("format", "unsupported certificate format");
    LiftCertificate cert;
    cert.scenario = scenario_from_json(j["scenario"]);
    const Field& k = cert.scenario.field;
    const auto n = static_cast<size_t>(cert.scenario.trunc);
    cert.witnesses = witnesses_from_json(j["witnesses"], "witnesses");
    cert.t = Tower::truncated(k, cert.scenario.trunc);
    cert.primed = primed_from_json(j["primed"], "primed", n);
    {
        const PrimedData& p = cert.primed;
        for (const Vec* v : {&p.a1, &p.d, &p.y, &p.a2, &p.a3, &p.n2, &p.n3, &p.n23, &p.x2, &p.x3, &p.mu2.first,
                             &p.mu2.second, &p.mu3.first, &p.mu3.second, &p.mu23.first, &p.mu23.second})
            check_field(k, *v, "primed");
    }
    Vec rad = vec_from_json(j["S_radicand"], "S_radicand", n);
    check_field(k, rad, "S_radicand");
    if (!cert.t->is_unit(rad)) bad("S_radicand", "not a unit of T");
    cert.s = Tower::adjoin_sqrts(cert.t, {rad});

    cert.b = algebra_from_json(j["B"], "B", cert.s).share();
    auto bt = std::make_shared<const StructAlgebra>(restrict_scalars(*cert.b));
    const Json& ja = j["alpha"];
    expect_object(ja, "alpha", {"sigma", "images"});
    const auto sigma = static_cast<uint32_t>(int_from_json(ja["sigma"], "alpha.sigma", 1, 1));
    cert.alpha = AlgebraMap{bt, bt, vecs_from_json(ja["images"], "alpha.images", bt->dim(), bt->width()), sigma, cert.s};
    for (size_t i = 0; i < cert.alpha.images.size(); ++i)
        check_field(k, cert.alpha.images[i], "alpha.images[" + std::to_string(i) + "]");
    cert.c = vec_from_json(j["c"], "c", bt->width());
    check_field(k, cert.c, "c");

    cert.a1 = algebra_from_json(j["A1"], "A1", cert.t).share();
    expect_object(j["A2"], "A2", {"construction", "dim"});
    if (string_from_json(j["A2"]["construction"], "A2.construction") != kA2Construction)
        bad("A2.construction", "unknown construction");
    const auto a2dim = static_cast<size_t>(int_from_json(j["A2"]["dim"], "A2.dim", 1, 1 << 20));
    if (a2dim != cert.a1->dim() * 4) bad("A2.dim", "inconsistent with A1");
    cert.e = vec_from_json(j["e"], "e", a2dim * n);
    check_field(k, cert.e, "e");
    expect_object(j["D"], "D", {"basis", "algebra"});
    cert.dprime = algebra_from_json(j["D"]["algebra"], "D.algebra", cert.t).share();
    cert.d_basis = vecs_from_json(j["D"]["basis"], "D.basis", cert.dprime->dim(), a2dim * n);
    for (size_t i = 0; i < cert.d_basis.size(); ++i)
        check_field(k, cert.d_basis[i], "D.basis[" + std::to_string(i) + "]");

    if (j.contains("report")) {
        const Json& r = expect_array(j["report"], "report");
        for (size_t i = 0; i < r.size(); ++i) {
            const std::string rp = "report[" + std::to_string(i) + "]";
            expect_object(r[i], rp, {"check", "pass", "detail"});
            if (!r[i]["pass"].is_boolean()) bad(rp + ".pass", "expected a boolean");
            cert.report.push_back({string_from_json(r[i]["check"], rp + ".check"), r[i]["pass"].get<bool>(),
                                   string_from_json(r[i]["detail"], rp + ".detail")});
        }
    }
    return cert;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::exception& e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Precondition, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::Precondition, "write to '" + path + "' failed");
}

}  // namespace azulift::io

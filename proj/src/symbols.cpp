#include "azulift/symbols.hpp"

#include "azulift/numtheory.hpp"

#include <algorithm>
#include <sstream>

namespace azulift {

namespace {

struct LocalParts {
    int val;        // 0 or 1 (squarefree input)
    mpz_class unit;  // input with the prime removed
};

LocalParts split_at(const mpz_class& core, uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    if (mpz_divisible_p(core.get_mpz_t(), pz.get_mpz_t())) return {1, core / pz};
    return {0, core};
}

int mod8(const mpz_class& x) {
    mpz_class r = x % 8;
    if (r < 0) r += 8;
    return static_cast<int>(r.get_si());
}

int eps2(const mpz_class& u) { return mod8(u) % 4 == 3 ? 1 : 0; }
int omega2(const mpz_class& u) {
    int r = mod8(u);
    return (r == 3 || r == 5) ? 1 : 0;
}

void require_nonzero(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) fail(ErrorKind::Precondition, "Hilbert symbol of zero");
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
    require_nonzero(a, b);
    if (v.is_real()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    const uint64_t p = v.p;
    const mpz_class A = nt::squarefree_part(a), B = nt::squarefree_part(b);
    auto [alpha, u] = split_at(A, p);
    auto [beta, w] = split_at(B, p);
    int e;
    if (p == 2) {
        e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
        return (e % 2) ? -1 : 1;
    }
    e = (alpha * beta * static_cast<int>(((p - 1) / 2) % 2)) % 2;
    int s = e ? -1 : 1;
    if (beta) s *= nt::legendre(u, p);
    if (alpha) s *= nt::legendre(w, p);
    return s;
}

PlaceSet relevant_places(const Rational& a, const Rational& b) {
    require_nonzero(a, b);
    PlaceSet out{Place::real(), Place::prime(2)};
    for (const Rational* x : {&a, &b}) {
        for (auto [p, e] : nt::factor(nt::squarefree_part(*x))) {
            (void)e;
            out.insert(Place::prime(p));
        }
    }
    return out;
}

PlaceSet ramification_set(const SymbolPair& sp) {
    PlaceSet out;
    for (Place v : relevant_places(sp.a, sp.b))
        if (hilbert_symbol(sp.a, sp.b, v) == -1) out.insert(v);
    return out;
}

SymbolClass::SymbolClass(std::vector<SymbolPair> pairs) {
    for (auto& p : pairs) {
        for (Place v : ramification_set(p)) {
            if (!ram_.erase(v)) ram_.insert(v);
        }
    }
    pairs_ = std::move(pairs);
}

SymbolClass& SymbolClass::operator+=(const SymbolClass& o) {
    pairs_.insert(pairs_.end(), o.pairs_.begin(), o.pairs_.end());
    for (Place v : o.ram_) {
        if (!ram_.erase(v)) ram_.insert(v);
    }
    return *this;
}

SymbolClass class_of(const std::vector<SymbolPair>& pairs) { return SymbolClass(pairs); }

bool symbols_isomorphic(const SymbolPair& p, const SymbolPair& q) { return ramification_set(p) == ramification_set(q); }

std::string format_places(const PlaceSet& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (Place v : s) {
        if (!first) os << ", ";
        os << v.name();
        first = false;
    }
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------- norm equations

namespace {

struct QPair {
    mpq_class x, y;
};

// x^2 - A y^2 = B with A, B squarefree integers and the equation solvable.
QPair descend(const mpz_class& A, const mpz_class& B, int depth) {
    if (depth > 400) fail(ErrorKind::SearchExhausted, "norm descent did not terminate");
    if (B == 1) return {1, 0};
    if (A == 1) return {mpq_class(B + 1, 2), mpq_class(B - 1, 2)};
    if (abs(A) > abs(B)) {
        // X^2 - B Y^2 = A gives N(X + sqrt A) = B Y^2.
        QPair r = descend(B, A, depth + 1);
        if (r.y == 0) fail(ErrorKind::Degenerate, "descent produced a square radicand");
        mpq_class x = r.x / r.y, y = 1 / r.y;
        x.canonicalize();
        y.canonicalize();
        return {x, y};
    }
    auto t = nt::sqrt_mod_squarefree(A, B);
    if (!t) fail(ErrorKind::SearchExhausted, "radicand is not a square modulo the norm");
    mpz_class k = (*t * *t - A) / B;
    if (k == 0) fail(ErrorKind::Degenerate, "descent hit a square radicand");
    auto [k0, m] = nt::squarefree_decompose(Rational(mpq_class(k)));
    QPair r = descend(A, k0, depth + 1);
    mpq_class mq = m.to_mpq();
    mpq_class x = mq * (*t * r.x + A * r.y) / k;
    mpq_class y = mq * (r.x + *t * r.y) / k;
    x.canonicalize();
    y.canonicalize();
    return {x, y};
}

std::optional<QuadNumber> small_integer_search(const Rational& n, const Rational& b, int box) {
    // Ordered by max(|u|,|v|), then |u|, then |v|, non-negative first.
    for (int h = 0; h <= box; ++h) {
        for (int au = 0; au <= h; ++au) {
            for (int av = 0; av <= h; ++av) {
                if (std::max(au, av) != h) continue;
                for (int su : {1, -1}) {
                    if (au == 0 && su < 0) continue;
                    for (int sv : {1, -1}) {
                        if (av == 0 && sv < 0) continue;
                        Rational u(su * au), v(sv * av);
                        if (u * u - n * v * v == b) return QuadNumber{u, v};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<QuadNumber> bounded_fallback(const Rational& n, const Rational& b, int height) {
    const int qmax = std::max(1, std::min(64, height));
    const int pmax = std::min(256, height);
    for (int q = 1; q <= qmax; ++q) {
        for (int p = 0; p <= pmax; ++p) {
            for (int s : {1, -1}) {
                if (p == 0 && s < 0) continue;
                Rational v(s * p, q);
                if (auto u = nt::rational_sqrt(b + n * v * v)) return QuadNumber{*u, v};
            }
        }
    }
    return std::nullopt;
}

std::optional<QuadNumber> solve_norm_fp(const Field& k, const Rational& n, const Rational& b) {
    Scalar nn = k.from_rational(n), bb = k.from_rational(b);
    if (nn.is_zero() || bb.is_zero()) fail(ErrorKind::Precondition, "norm equation with zero data");
    const uint64_t p = k.characteristic();
    for (uint64_t v = 0; v < p; ++v) {
        Scalar vs(static_cast<int64_t>(v));
        Scalar w = k.add(bb, k.mul(nn, k.mul(vs, vs)));
        if (w.is_zero()) continue;
        if (k.is_square(w)) {
            Scalar u(static_cast<int64_t>(nt::sqrt_mod_prime(static_cast<uint64_t>(w.small_num()), p)));
            return QuadNumber{u, vs};
        }
    }
    fail(ErrorKind::SearchExhausted, "no norm solution over the prime field");
}

}  // namespace

std::optional<QuadNumber> solve_norm(const Field& k, const Rational& n, const Rational& b, const NormSolverOptions& opt) {
    if (!k.is_rationals()) return solve_norm_fp(k, n, b);
    require_nonzero(n, b);
    if (auto r = nt::rational_sqrt(b)) return QuadNumber{*r, Rational(0)};
    if (auto s = nt::rational_sqrt(n)) {
        // (u - s v)(u + s v) = b with u + s v = b, u - s v = 1
        return QuadNumber{(b + Rational(1)) / Rational(2), (b - Rational(1)) / (Rational(2) * *s)};
    }
    if (!ramification_set({n, b}).empty()) return std::nullopt;
    if (auto r = small_integer_search(n, b, opt.small_search)) return r;
    try {
        auto [A, sn] = nt::squarefree_decompose(n);
        auto [B, tb] = nt::squarefree_decompose(b);
        QPair r = descend(A, B, 0);
        // n = A sn^2, b = B tb^2: u = tb x, v = tb y / sn
        Rational u = tb * Rational(r.x), v = tb * Rational(r.y) / sn;
        if (u * u - n * v * v != b) fail(ErrorKind::Degenerate, "descent produced a wrong norm");
        return QuadNumber{u, v};
    } catch (const Error&) {
        if (auto r = bounded_fallback(n, b, opt.fallback_height)) return r;
        throw;
    }
}

// ---------------------------------------------------------------- common slots

namespace {

using Bits = std::vector<uint8_t>;

// Solves M e = rhs over F_2; returns a particular solution and a kernel basis.
std::optional<std::pair<Bits, std::vector<Bits>>> solve_f2(std::vector<Bits> rows, Bits rhs, size_t nvars) {
    const size_t m = rows.size();
    std::vector<size_t> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < nvars && r < m; ++c) {
        size_t p = r;
        while (p < m && !rows[p][c]) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        for (size_t i = 0; i < m; ++i) {
            if (i != r && rows[i][c]) {
                for (size_t j = 0; j < nvars; ++j) rows[i][j] ^= rows[r][j];
                rhs[i] ^= rhs[r];
            }
        }
        pivcol.push_back(c);
        ++r;
    }
    for (size_t i = r; i < m; ++i)
        if (rhs[i]) return std::nullopt;
    Bits x(nvars, 0);
    for (size_t i = 0; i < r; ++i) x[pivcol[i]] = rhs[i];
    std::vector<bool> is_piv(nvars, false);
    for (size_t c : pivcol) is_piv[c] = true;
    std::vector<Bits> ker;
    for (size_t f = 0; f < nvars; ++f) {
        if (is_piv[f]) continue;
        Bits k(nvars, 0);
        k[f] = 1;
        for (size_t i = 0; i < r; ++i) k[pivcol[i]] = rows[i][f];
        ker.push_back(std::move(k));
    }
    return std::make_pair(x, ker);
}

std::optional<Rational> try_basis(const std::vector<Rational>& ns, const std::vector<PlaceSet>& targets,
                                  const std::vector<int64_t>& gens, const PlaceSet& places) {
    std::vector<Bits> rows;
    Bits rhs;
    for (size_t i = 0; i < ns.size(); ++i) {
        for (Place v : places) {
            Bits row(gens.size());
            for (size_t j = 0; j < gens.size(); ++j) row[j] = hilbert_symbol(Rational(gens[j]), ns[i], v) == -1;
            rows.push_back(std::move(row));
            rhs.push_back(targets[i].count(v) ? 1 : 0);
        }
    }
    auto sol = solve_f2(rows, rhs, gens.size());
    if (!sol) return std::nullopt;
    auto& [x0, ker] = *sol;
    const size_t dim = std::min<size_t>(ker.size(), 16);
    std::optional<mpz_class> best;
    for (uint64_t mask = 0; mask < (uint64_t{1} << dim); ++mask) {
        Bits x = x0;
        for (size_t k = 0; k < dim; ++k)
            if (mask >> k & 1)
                for (size_t j = 0; j < x.size(); ++j) x[j] ^= ker[k][j];
        mpz_class y = 1;
        for (size_t j = 0; j < gens.size(); ++j)
            if (x[j]) y *= gens[j];
        auto better = [](const mpz_class& a, const mpz_class& b) {
            int c = cmp(abs(a), abs(b));
            return c < 0 || (c == 0 && a > b);
        };
        if (!best || better(y, *best)) best = y;
    }
    return Rational(mpq_class(*best));
}

}  // namespace

std::optional<Rational> solve_slot(const std::vector<Rational>& ns, const std::vector<PlaceSet>& targets) {
    if (ns.size() != targets.size()) fail(ErrorKind::Precondition, "slot problem size mismatch");
    PlaceSet places{Place::real(), Place::prime(2)};
    for (size_t i = 0; i < ns.size(); ++i) {
        PlaceSet r = relevant_places(ns[i], Rational(1));
        places.insert(r.begin(), r.end());
        places.insert(targets[i].begin(), targets[i].end());
    }
    std::vector<int64_t> gens{-1};
    for (Place v : places)
        if (!v.is_real()) gens.push_back(static_cast<int64_t>(v.p));

    auto verified = [&](const Rational& y) {
        for (size_t i = 0; i < ns.size(); ++i)
            if (ramification_set({y, ns[i]}) != targets[i]) return false;
        return true;
    };

    if (auto y = try_basis(ns, targets, gens, places); y && verified(*y)) return y;
    // One auxiliary prime outside the relevant places.
    uint64_t q = 2;
    for (int attempt = 0; attempt < 2000; ++attempt) {
        q = nt::next_prime(q);
        if (places.count(Place::prime(q))) continue;
        PlaceSet aug = places;
        aug.insert(Place::prime(q));
        std::vector<int64_t> g2 = gens;
        g2.push_back(static_cast<int64_t>(q));
        if (auto y = try_basis(ns, targets, g2, aug); y && verified(*y)) return y;
    }
    return std::nullopt;
}

Rational find_common_slot(const Field& k, const Rational& a2, const Rational& n2, const Rational& a3, const Rational& n3) {
    if (!k.is_rationals()) return Rational(1);
    if (!symbols_isomorphic({a2, n2}, {a3, n3}))
        fail(ErrorKind::Precondition, "slot pairs are not isomorphic");
    auto y = solve_slot({n2, n3}, {ramification_set({a2, n2}), ramification_set({a3, n3})});
    if (!y) fail(ErrorKind::SearchExhausted, "no common slot found");
    return *y;
}

CorRewrite cor_rewrite(const Tower& s, CSpan a, CSpan b) {
    if (s.num_sqrts() != 1) fail(ErrorKind::Precondition, "cor_rewrite expects a quadratic layer");
    if (!s.in_base(a)) fail(ErrorKind::SlotNotInBase, "first slot does not lie in the base ring");
    if (!s.is_unit(b)) fail(ErrorKind::NotUnit, "second slot is not a unit");
    CorRewrite out;
    out.a = s.base_part(a);
    out.norm_b = s.norm(b);
    out.residue = {out.a[0], out.norm_b[0]};
    return out;
}

}  // namespace azulift

#include "azulift/algebra.hpp"

#include "azulift/kernels.hpp"

#include <algorithm>

namespace azulift {

namespace {

std::vector<size_t> nonzero_blocks(CSpan x, size_t w) {
    std::vector<size_t> out;
    const size_t d = x.size() / w;
    for (size_t i = 0; i < d; ++i) {
        for (size_t k = 0; k < w; ++k) {
            if (!x[i * w + k].is_zero()) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

void require_local(const StructAlgebra& a, const char* what) {
    if (!a.ring().is_local_base()) fail(ErrorKind::Precondition, std::string(what) + " needs an algebra over a field or truncated ring");
}

}  // namespace

// ---------------------------------------------------------------- StructAlgebra

StructAlgebra::StructAlgebra(TowerPtr base, ProductTable table, Vec one, std::vector<NamedElement> gens)
    : base_(std::move(base)), table_(std::move(table)), one_(std::move(one)), gens_(std::move(gens)) {
    if (table_.width != base_->width()) fail(ErrorKind::BaseMismatch, "structure constants have the wrong ring width");
    if (table_.start.size() != table_.dim * table_.dim + 1) fail(ErrorKind::Parse, "malformed product table");
    if (one_.size() != width()) fail(ErrorKind::BaseMismatch, "unit has the wrong length");
    for (const auto& [name, g] : gens_)
        if (g.size() != width()) fail(ErrorKind::BaseMismatch, "generator '" + name + "' has the wrong length");
}

const Vec* StructAlgebra::gen(const std::string& name) const {
    for (const auto& [n, g] : gens_)
        if (n == name) return &g;
    return nullptr;
}

Vec StructAlgebra::basis(size_t i) const {
    Vec v(width());
    v[i * rwidth()] = ring().field().from_int(1);
    return v;
}

void StructAlgebra::mul_add(MSpan acc, CSpan x, CSpan y) const {
    const size_t R = rwidth(), d = dim();
    const Tower& T = ring();
    std::vector<size_t> nx = nonzero_blocks(x, R), ny = nonzero_blocks(y, R);
    Vec xy(R);
    for (size_t i : nx) {
        CSpan xi = x.subspan(i * R, R);
        for (size_t j : ny) {
            const uint32_t s = table_.start[i * d + j], e = table_.start[i * d + j + 1];
            if (s == e) continue;
            std::fill(xy.begin(), xy.end(), Scalar());
            T.mul_add(xy, xi, y.subspan(j * R, R));
            for (uint32_t t = s; t < e; ++t) T.mul_add(acc.subspan(table_.target[t] * R, R), xy, table_.coef_at(t));
        }
    }
}

Vec StructAlgebra::mul(CSpan x, CSpan y) const {
    Vec out(width());
    mul_add(out, x, y);
    return out;
}

Vec StructAlgebra::mul_basis(size_t i, size_t j) const {
    Vec out(width());
    const size_t R = rwidth(), d = dim();
    for (uint32_t t = table_.start[i * d + j]; t < table_.start[i * d + j + 1]; ++t) {
        CSpan c = table_.coef_at(t);
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(table_.target[t] * R));
    }
    return out;
}

Vec StructAlgebra::scale(CSpan s, CSpan x) const {
    const size_t R = rwidth();
    Vec out(width());
    for (size_t i : nonzero_blocks(x, R)) ring().mul_add(MSpan(out).subspan(i * R, R), s, x.subspan(i * R, R));
    return out;
}

Vec StructAlgebra::scale_int(int64_t k, CSpan x) const {
    Vec out(x.begin(), x.end());
    Scalar f = ring().field().from_int(k);
    for (auto& v : out) v = ring().field().mul(v, f);
    return out;
}

Vec StructAlgebra::pow(CSpan x, unsigned k) const {
    Vec r = one_;
    for (unsigned i = 0; i < k; ++i) r = mul(r, x);
    return r;
}

TMatrix StructAlgebra::left_matrix(CSpan x) const {
    require_local(*this, "left_matrix");
    const size_t d = dim();
    TMatrix m(base_, d, d);
    for (size_t j = 0; j < d; ++j) {
        Vec col = mul(x, basis(j));
        for (size_t k = 0; k < d; ++k) m.set(k, j, coord(col, k));
    }
    return m;
}

bool StructAlgebra::is_unit(CSpan x) const { return residue_rank(left_matrix(x)) == dim(); }

Vec StructAlgebra::inv(CSpan x) const {
    auto w = solve(left_matrix(x), one_);
    if (!w) fail(ErrorKind::NotUnit, "element is not invertible");
    if (!equal(mul(*w, x), one_)) fail(ErrorKind::NotUnit, "element has no two-sided inverse");
    return *w;
}

// ---------------------------------------------------------------- Subalgebra

Vec Subalgebra::coords_of(const StructAlgebra& ambient, CSpan x) const {
    const size_t R = ambient.rwidth();
    Vec y(columns.size() * R);
    for (size_t i = 0; i < columns.size(); ++i) {
        CSpan c = x.subspan(columns[i] * R, R);
        std::copy(c.begin(), c.end(), y.begin() + static_cast<std::ptrdiff_t>(i * R));
    }
    return y;
}

Vec Subalgebra::embed(const StructAlgebra& ambient, CSpan y) const {
    const size_t R = ambient.rwidth();
    Vec x(ambient.width());
    for (size_t i = 0; i < basis.size(); ++i) {
        CSpan yi = y.subspan(i * R, R);
        if (ambient.ring().is_zero(yi)) continue;
        ambient.ring().add_into(x, ambient.scale(yi, basis[i]));
    }
    return x;
}

namespace {

Subalgebra subalgebra_from_basis(const StructAlgebra& a, std::vector<Vec> basis, std::vector<size_t> columns, CSpan unit) {
    const size_t r = basis.size();
    Subalgebra sub{base_algebra(a.base()), std::move(basis), std::move(columns)};
    std::vector<Vec> products(r * r);
#pragma omp parallel for schedule(dynamic) if (r > 16)
    for (long long ij = 0; ij < static_cast<long long>(r * r); ++ij) {
        const size_t i = static_cast<size_t>(ij) / r, j = static_cast<size_t>(ij) % r;
        products[static_cast<size_t>(ij)] = a.mul(sub.basis[i], sub.basis[j]);
    }
    for (const Vec& p : products) {
        if (!a.equal(sub.embed(a, sub.coords_of(a, p)), p)) fail(ErrorKind::NotFree, "span is not closed under multiplication");
    }
    ProductTable t = make_table(r, a.rwidth(), [&](size_t i, size_t j, MSpan out) {
        Vec c = sub.coords_of(a, products[i * r + j]);
        std::copy(c.begin(), c.end(), out.begin());
    });
    Vec one = sub.coords_of(a, unit);
    if (!a.equal(sub.embed(a, one), unit)) fail(ErrorKind::NotFree, "unit does not lie in the span");
    sub.algebra = StructAlgebra(a.base(), std::move(t), std::move(one));
    return sub;
}

}  // namespace

Subalgebra subalgebra_from_echelon(const StructAlgebra& a, const Echelon& e, Vec unit) {
    std::vector<Vec> basis;
    for (size_t i = 0; i < e.rank; ++i) {
        CSpan row = e.reduced.row(i);
        basis.emplace_back(row.begin(), row.end());
    }
    return subalgebra_from_basis(a, std::move(basis), e.pivots, unit);
}

// ---------------------------------------------------------------- constructors

StructAlgebra base_algebra(const TowerPtr& r) {
    ProductTable t = make_table(1, r->width(), [&](size_t, size_t, MSpan out) {
        Vec one = r->one();
        std::copy(one.begin(), one.end(), out.begin());
    });
    return {r, std::move(t), r->one()};
}

StructAlgebra quaternion_algebra(const TowerPtr& r, CSpan a, CSpan b) {
    if (a.size() != r->width() || b.size() != r->width()) fail(ErrorKind::BaseMismatch, "quaternion slots must lie in the base");
    if (!r->is_unit(a) || !r->is_unit(b)) fail(ErrorKind::NotUnit, "quaternion slots must be units");
    const Tower& T = *r;
    const Vec one = T.one(), ab = T.mul(a, b);
    const Vec va(a.begin(), a.end()), vb(b.begin(), b.end());
    // basis 1, i, j, k = ij
    struct Entry {
        size_t target;
        const Vec* coef;
        bool negate;
    };
    auto rule = [&](size_t x, size_t y) -> Entry {
        if (x == 0) return {y, &one, false};
        if (y == 0) return {x, &one, false};
        switch (x * 4 + y) {
            case 1 * 4 + 1: return {0, &va, false};
            case 1 * 4 + 2: return {3, &one, false};
            case 1 * 4 + 3: return {2, &va, false};
            case 2 * 4 + 1: return {3, &one, true};
            case 2 * 4 + 2: return {0, &vb, false};
            case 2 * 4 + 3: return {1, &vb, true};
            case 3 * 4 + 1: return {2, &va, true};
            case 3 * 4 + 2: return {1, &vb, false};
            default: return {0, &ab, true};
        }
    };
    const size_t R = T.width();
    ProductTable t = make_table(4, R, [&](size_t x, size_t y, MSpan out) {
        Entry e = rule(x, y);
        Vec c = e.negate ? T.neg(*e.coef) : *e.coef;
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(e.target * R));
    });
    Vec unit(4 * R), gi(4 * R), gj(4 * R);
    unit[0] = T.field().from_int(1);
    gi[R] = T.field().from_int(1);
    gj[2 * R] = T.field().from_int(1);
    return {r, std::move(t), std::move(unit), {{"i", gi}, {"j", gj}}};
}

StructAlgebra matrix_algebra(const TowerPtr& r, size_t n) {
    const size_t R = r->width();
    const Vec one = r->one();
    ProductTable t = make_table(n * n, R, [&](size_t x, size_t y, MSpan out) {
        size_t p = x / n, q = x % n, u = y / n, v = y % n;
        if (q != u) return;
        std::copy(one.begin(), one.end(), out.begin() + static_cast<std::ptrdiff_t>((p * n + v) * R));
    });
    Vec unit(n * n * R);
    for (size_t p = 0; p < n; ++p) unit[(p * n + p) * R] = r->field().from_int(1);
    return {r, std::move(t), std::move(unit)};
}

StructAlgebra tensor(const StructAlgebra& a, const StructAlgebra& b) {
    if (!a.ring().same_as(b.ring())) fail(ErrorKind::BaseMismatch, "tensor factors over different rings");
    ProductTable t = (a.dim() * b.dim() > 64) ? kernels::tensor_table_parallel(a, b) : kernels::tensor_table_serial(a, b);
    const size_t R = a.rwidth(), db = b.dim();
    auto kron = [&](CSpan x, CSpan y) {
        Vec out(a.dim() * db * R);
        for (size_t i = 0; i < a.dim(); ++i) {
            CSpan xi = a.coord(x, i);
            if (a.ring().is_zero(xi)) continue;
            for (size_t j = 0; j < db; ++j) {
                CSpan yj = b.coord(y, j);
                if (b.ring().is_zero(yj)) continue;
                a.ring().mul_add(MSpan(out).subspan((i * db + j) * R, R), xi, yj);
            }
        }
        return out;
    };
    std::vector<NamedElement> gens;
    auto ga = generating_set_named(a), gb = generating_set_named(b);
    for (auto& [n, g] : ga) gens.emplace_back("l." + n, kron(g, b.one()));
    for (auto& [n, g] : gb) gens.emplace_back("r." + n, kron(a.one(), g));
    return {a.base(), std::move(t), kron(a.one(), b.one()), std::move(gens)};
}

StructAlgebra opposite(const StructAlgebra& a) {
    ProductTable t = make_table(a.dim(), a.rwidth(), [&](size_t i, size_t j, MSpan out) {
        Vec p = a.mul_basis(j, i);
        std::copy(p.begin(), p.end(), out.begin());
    });
    return {a.base(), std::move(t), a.one(), a.gens()};
}

StructAlgebra restrict_scalars(const StructAlgebra& a) {
    const Tower& S = a.ring();
    if (S.is_local_base()) return a;
    TowerPtr T = S.base();
    const size_t r = S.rank_over_base(), n = static_cast<size_t>(S.trunc()), d = a.dim();
    auto elem = [&](size_t idx) {
        // x_mask * e_m
        size_t m = idx / r, mask = idx % r;
        Vec v(a.width());
        v[m * S.width() + mask * n] = S.field().from_int(1);
        return v;
    };
    std::vector<Vec> basis(d * r);
    for (size_t i = 0; i < d * r; ++i) basis[i] = elem(i);
    ProductTable t = make_table(d * r, n, [&](size_t i, size_t j, MSpan out) {
        Vec p = a.mul(basis[i], basis[j]);
        std::copy(p.begin(), p.end(), out.begin());
    });
    std::vector<NamedElement> gens = a.gens();
    for (int i = 0; i < S.num_sqrts(); ++i) gens.emplace_back("t" + std::to_string(i), a.scale(S.sqrt_gen(i), a.one()));
    return {T, std::move(t), a.one(), std::move(gens)};
}

Vec residue_element(const StructAlgebra& a, CSpan x) {
    const Tower& S = a.ring();
    const size_t R = a.rwidth(), r = S.rank_over_base();
    Vec out(a.dim() * r);
    for (size_t i = 0; i < a.dim(); ++i) {
        Vec c = S.residue(x.subspan(i * R, R));
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(i * r));
    }
    return out;
}

StructAlgebra residue_algebra(const StructAlgebra& a) {
    const Tower& S = a.ring();
    TowerPtr L = S.residue_tower();
    const ProductTable& src = a.table();
    ProductTable t;
    t.dim = src.dim;
    t.width = L->width();
    t.start.assign(src.start.size(), 0);
    for (size_t ij = 0; ij < src.dim * src.dim; ++ij) {
        for (uint32_t k = src.start[ij]; k < src.start[ij + 1]; ++k) {
            Vec c = S.residue(src.coef_at(k));
            if (L->is_zero(c)) continue;
            t.target.push_back(src.target[k]);
            t.coef.insert(t.coef.end(), c.begin(), c.end());
        }
        t.start[ij + 1] = static_cast<uint32_t>(t.target.size());
    }
    std::vector<NamedElement> gens;
    for (const auto& [n, g] : a.gens()) gens.emplace_back(n, residue_element(a, g));
    return {L, std::move(t), residue_element(a, a.one()), std::move(gens)};
}

Vec twist_coords(const StructAlgebra& b, uint32_t sigma, CSpan x) {
    const size_t R = b.rwidth();
    Vec out(x.size());
    for (size_t i = 0; i < b.dim(); ++i) {
        Vec c = b.ring().galois(sigma, x.subspan(i * R, R));
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(i * R));
    }
    return out;
}

StructAlgebra galois_twist(const StructAlgebra& b, uint32_t sigma) {
    ProductTable t = b.table();
    const size_t R = t.width;
    for (size_t k = 0; k < t.entries(); ++k) {
        Vec c = b.ring().galois(sigma, t.coef_at(k));
        std::copy(c.begin(), c.end(), t.coef.begin() + static_cast<std::ptrdiff_t>(k * R));
    }
    std::vector<NamedElement> gens;
    for (const auto& [n, g] : b.gens()) gens.emplace_back(n, twist_coords(b, sigma, g));
    return {b.base(), std::move(t), twist_coords(b, sigma, b.one()), std::move(gens)};
}

// ---------------------------------------------------------------- generation

namespace {

// Incremental echelon basis over a field (N = 1, no radicals).
class FieldSpan {
public:
    FieldSpan(const Field& k, size_t len) : k_(k), len_(len) {}

    // Reduces v in place; returns true and keeps it if it is new.
    bool insert(Vec v) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Scalar& f = v[piv_[r]];
            if (f.is_zero()) continue;
            Scalar fc = f;
            for (size_t c = 0; c < len_; ++c)
                if (!rows_[r][c].is_zero()) k_.sub_mul(v[c], fc, rows_[r][c]);
        }
        size_t p = 0;
        while (p < len_ && v[p].is_zero()) ++p;
        if (p == len_) return false;
        Scalar inv = k_.inv(v[p]);
        for (auto& x : v) x = k_.mul(x, inv);
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Scalar f = rows_[r][p];
            if (f.is_zero()) continue;
            for (size_t c = 0; c < len_; ++c)
                if (!v[c].is_zero()) k_.sub_mul(rows_[r][c], f, v[c]);
        }
        rows_.push_back(std::move(v));
        piv_.push_back(p);
        return true;
    }
    [[nodiscard]] size_t dim() const { return rows_.size(); }
    [[nodiscard]] const std::vector<Vec>& rows() const { return rows_; }

private:
    const Field& k_;
    size_t len_;
    std::vector<Vec> rows_;
    std::vector<size_t> piv_;
};

StructAlgebra residue_over_field(const StructAlgebra& a) {
    StructAlgebra r = residue_algebra(a);
    return restrict_scalars(r);
}

size_t closure_dim(const StructAlgebra& k_alg, const std::vector<Vec>& gens) {
    FieldSpan span(k_alg.ring().field(), k_alg.width());
    std::vector<Vec> frontier;
    if (span.insert(k_alg.one())) frontier.push_back(k_alg.one());
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& w : frontier) {
            for (const Vec& g : gens) {
                Vec p = k_alg.mul(w, g);
                if (span.insert(p)) next.push_back(std::move(p));
            }
        }
        frontier = std::move(next);
    }
    return span.dim();
}

}  // namespace

size_t generated_residue_dim(const StructAlgebra& a, const std::vector<Vec>& gens) {
    require_local(a, "generated_residue_dim");
    StructAlgebra k_alg = residue_algebra(a);
    std::vector<Vec> rg;
    for (const Vec& g : gens) rg.push_back(residue_element(a, g));
    return closure_dim(k_alg, rg);
}

std::vector<NamedElement> generating_set_named(const StructAlgebra& a) {
    if (!a.ring().is_local_base()) {
        // Named generators are taken over the radical layer; add nothing else.
        if (!a.gens().empty()) return a.gens();
        std::vector<NamedElement> all;
        for (size_t i = 1; i < a.dim(); ++i) all.emplace_back("e" + std::to_string(i), a.basis(i));
        return all;
    }
    std::vector<Vec> named;
    for (const auto& [n, g] : a.gens()) named.push_back(g);
    if (!named.empty() && generated_residue_dim(a, named) == a.dim()) return a.gens();
    std::vector<NamedElement> out = a.gens();
    StructAlgebra k_alg = residue_algebra(a);
    std::vector<Vec> rg;
    for (const auto& [n, g] : out) rg.push_back(residue_element(a, g));
    size_t have = closure_dim(k_alg, rg);
    for (size_t i = 1; i < a.dim() && have < a.dim(); ++i) {
        rg.push_back(k_alg.basis(i));
        size_t now = closure_dim(k_alg, rg);
        if (now > have) {
            out.emplace_back("e" + std::to_string(i), a.basis(i));
            have = now;
        } else {
            rg.pop_back();
        }
    }
    if (have < a.dim()) fail(ErrorKind::Degenerate, "basis does not generate at residue");
    return out;
}

std::vector<Vec> generating_set(const StructAlgebra& a) {
    std::vector<Vec> out;
    for (auto& [n, g] : generating_set_named(a)) out.push_back(std::move(g));
    return out;
}

// ---------------------------------------------------------------- Azumaya

bool is_azumaya_trace(const StructAlgebra& a) {
    StructAlgebra kal = residue_over_field(a);
    const Field& k = kal.ring().field();
    const size_t D = kal.dim();
    const size_t r = a.ring().rank_over_base();
    TowerPtr K = kal.base();
    // center
    std::vector<Vec> gens;
    for (const auto& [n, g] : generating_set_named(kal)) gens.push_back(g);
    TMatrix m(K, gens.size() * D, D);
    for (size_t j = 0; j < D; ++j) {
        Vec bj = kal.basis(j);
        for (size_t g = 0; g < gens.size(); ++g) {
            Vec c = kal.sub(kal.mul(bj, gens[g]), kal.mul(gens[g], bj));
            for (size_t i = 0; i < D; ++i) m.at(g * D + i, j)[0] = c[i];
        }
    }
    if (D - rref(std::move(m)).rank != r) return false;
    // trace form
    const ProductTable& t = kal.table();
    Vec tau(D);
    for (size_t p = 0; p < D; ++p)
        for (size_t q = 0; q < D; ++q)
            for (uint32_t e = t.start[p * D + q]; e < t.start[p * D + q + 1]; ++e)
                if (t.target[e] == q) k.add_to(tau[p], t.coef[e]);
    TMatrix gram(K, D, D);
    for (size_t i = 0; i < D; ++i)
        for (size_t j = 0; j < D; ++j)
            for (uint32_t e = t.start[i * D + j]; e < t.start[i * D + j + 1]; ++e)
                k.add_mul(gram.at(i, j)[0], t.coef[e], tau[t.target[e]]);
    return rref(std::move(gram)).rank == D;
}

bool is_azumaya_determinant(const StructAlgebra& a) {
    StructAlgebra res = residue_algebra(a);
    const Tower& L = res.ring();
    const size_t d = res.dim(), r = L.rank_over_base();
    TowerPtr K = Tower::field(L.field());
    const size_t n = d * d * r;
    TMatrix m(K, n, n);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            for (size_t lam = 0; lam < r; ++lam) {
                Vec lv(r);
                lv[lam] = L.field().from_int(1);
                const size_t col = (i * d + j) * r + lam;
                for (size_t mm = 0; mm < d; ++mm) {
                    Vec img = res.scale(lv, res.mul(res.mul_basis(i, mm), res.basis(j)));
                    for (size_t q = 0; q < d * r; ++q) m.at(mm * d * r + q, col)[0] = img[q];
                }
            }
        }
    }
    return rref(std::move(m)).rank == n;
}

bool is_azumaya(const StructAlgebra& a) { return a.dim() <= 8 ? is_azumaya_determinant(a) : is_azumaya_trace(a); }

// ---------------------------------------------------------------- centralizer, corner

Subalgebra centralizer(const StructAlgebra& a, const std::vector<Vec>& elems) {
    require_local(a, "centralizer");
    const size_t d = a.dim();
    TMatrix m(a.base(), std::max<size_t>(elems.size(), 1) * d, d);
    for (size_t j = 0; j < d; ++j) {
        Vec bj = a.basis(j);
        for (size_t g = 0; g < elems.size(); ++g) {
            Vec c = a.sub(a.mul(bj, elems[g]), a.mul(elems[g], bj));
            for (size_t i = 0; i < d; ++i) m.set(g * d + i, j, a.coord(c, i));
        }
    }
    std::vector<Vec> ker = kernel(m);
    // kernel() puts a 1 at each free column and 0 at the others
    std::vector<size_t> cols;
    {
        Echelon e = rref(m);
        std::vector<bool> piv(d, false);
        for (size_t p : e.pivots) piv[p] = true;
        for (size_t c = 0; c < d; ++c)
            if (!piv[c]) cols.push_back(c);
    }
    return subalgebra_from_basis(a, std::move(ker), std::move(cols), a.one());
}

Subalgebra corner(const StructAlgebra& a, CSpan e) {
    require_local(a, "corner");
    if (!a.equal(a.mul(e, e), e)) fail(ErrorKind::Precondition, "corner needs an idempotent");
    const size_t d = a.dim();
    std::vector<Vec> cands(d);
#pragma omp parallel for schedule(dynamic) if (d > 16)
    for (long long i = 0; i < static_cast<long long>(d); ++i) {
        const size_t k = static_cast<size_t>(i);
        cands[k] = a.mul(a.mul(e, a.basis(k)), e);
    }
    Echelon ech = span_basis(a.base(), cands, d);
    return subalgebra_from_echelon(a, ech, Vec(e.begin(), e.end()));
}

// ---------------------------------------------------------------- maps

Vec AlgebraMap::apply(CSpan x) const {
    const StructAlgebra& s = *source;
    const StructAlgebra& t = *target;
    Vec out(t.width());
    for (size_t m = 0; m < s.dim(); ++m) {
        CSpan xm = s.coord(x, m);
        if (s.ring().is_zero(xm)) continue;
        t.ring().add_into(out, t.scale(xm, images[m]));
    }
    return out;
}

bool AlgebraMap::is_unital() const { return target->equal(apply(source->one()), target->one()); }

bool AlgebraMap::is_multiplicative() const {
    const StructAlgebra& s = *source;
    const StructAlgebra& t = *target;
    const size_t d = s.dim();
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok) if (d > 16)
    for (long long i = 0; i < static_cast<long long>(d); ++i) {
        const size_t a = static_cast<size_t>(i);
        for (size_t b = 0; b < d && ok; ++b) {
            Vec lhs = apply(s.mul_basis(a, b));
            Vec rhs = t.mul(images[a], images[b]);
            if (!t.equal(lhs, rhs)) ok = false;
        }
    }
    return ok;
}

bool AlgebraMap::is_semilinear() const {
    if (!layer) return sigma == 0;
    for (int i = 0; i < layer->num_sqrts(); ++i) {
        const std::string name = "t" + std::to_string(i);
        const Vec* xs = source->gen(name);
        const Vec* xt = target->gen(name);
        if (!xs || !xt) return false;
        Vec expect = (sigma >> i & 1) ? target->neg(*xt) : *xt;
        if (!target->equal(apply(*xs), expect)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- crossed product

StructAlgebra crossed_product_quadratic(const StructAlgebra& b, const AlgebraMap& alpha, CSpan c) {
    if (b.ring().num_sqrts() != 1) fail(ErrorKind::Precondition, "crossed product needs a quadratic layer");
    StructAlgebra bt = restrict_scalars(b);
    const size_t D = bt.dim(), R = bt.rwidth();
    if (alpha.images.size() != D) fail(ErrorKind::BaseMismatch, "alpha has the wrong size");
    const std::vector<Vec>& img = alpha.images;
    if (!bt.equal(alpha.apply(c), c)) fail(ErrorKind::AssociativityFailure, "alpha(c) != c");
    Vec cinv = bt.inv(c);
    for (size_t i = 0; i < D; ++i) {
        Vec lhs = alpha.apply(img[i]);
        Vec rhs = bt.mul(bt.mul(c, bt.basis(i)), cinv);
        if (!bt.equal(lhs, rhs)) fail(ErrorKind::AssociativityFailure, "alpha^2 is not conjugation by c");
    }
    auto place = [&](MSpan out, const Vec& v, size_t half) {
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(half * D * R));
    };
    ProductTable t = make_table(2 * D, R, [&](size_t i, size_t j, MSpan out) {
        const bool iu = i >= D, ju = j >= D;
        const size_t bi = i % D, bj = j % D;
        if (!iu && !ju) {
            place(out, bt.mul_basis(bi, bj), 0);
        } else if (!iu && ju) {
            place(out, bt.mul_basis(bi, bj), 1);
        } else if (iu && !ju) {
            place(out, bt.mul(bt.basis(bi), img[bj]), 1);
        } else {
            place(out, bt.mul(bt.mul(bt.basis(bi), img[bj]), c), 0);
        }
    });
    auto lift = [&](const Vec& v, size_t half) {
        Vec out(2 * D * R);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(half * D * R));
        return out;
    };
    std::vector<NamedElement> gens;
    for (const auto& [n, g] : bt.gens()) gens.emplace_back(n, lift(g, 0));
    gens.emplace_back("u", lift(bt.one(), 1));
    StructAlgebra out(bt.base(), std::move(t), lift(bt.one(), 0), std::move(gens));
    if (!is_associative(out)) fail(ErrorKind::AssociativityFailure, "crossed product is not associative");
    return out;
}

SplitIdempotent galois_split_idempotent(const TowerPtr& s) {
    if (s->num_sqrts() != 1) fail(ErrorKind::Precondition, "galois_split_idempotent needs a quadratic layer");
    StructAlgebra st = restrict_scalars(base_algebra(s));
    StructAlgebra ss = tensor(st, st);
    const Tower& T = ss.ring();
    const size_t n = static_cast<size_t>(T.trunc());
    Vec e = ss.zero();
    Scalar half = T.field().inv(T.field().from_int(2));
    e[0] = half;
    Vec ainv = T.inv(s->radicand(0));
    for (size_t k = 0; k < n; ++k) e[3 * n + k] = T.field().mul(half, ainv[k]);
    if (!ss.equal(ss.mul(e, e), e)) fail(ErrorKind::Degenerate, "split idempotent is not idempotent");
    return {std::move(ss), std::move(e)};
}

}  // namespace azulift

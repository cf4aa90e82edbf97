#include "azulift/kernels.hpp"

namespace azulift {
namespace kernels {

bool unit_ok(const StructAlgebra& a) {
    for (size_t i = 0; i < a.dim(); ++i) {
        Vec b = a.basis(i);
        if (!a.equal(a.mul(a.one(), b), b) || !a.equal(a.mul(b, a.one()), b)) return false;
    }
    return true;
}

namespace {

bool triple_ok(const StructAlgebra& a, size_t i, size_t j, const std::vector<Vec>& row_products) {
    // row_products[j*d + k] = e_j e_k
    const size_t d = a.dim();
    Vec ij = a.mul_basis(i, j);
    for (size_t k = 0; k < d; ++k) {
        Vec lhs = a.mul(ij, a.basis(k));
        Vec rhs = a.mul(a.basis(i), row_products[j * d + k]);
        if (!a.equal(lhs, rhs)) return false;
    }
    return true;
}

std::vector<Vec> all_products(const StructAlgebra& a) {
    const size_t d = a.dim();
    std::vector<Vec> p(d * d);
    for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k) p[j * d + k] = a.mul_basis(j, k);
    return p;
}

}  // namespace

bool associative_full_serial(const StructAlgebra& a) {
    const size_t d = a.dim();
    std::vector<Vec> prods = all_products(a);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            if (!triple_ok(a, i, j, prods)) return false;
    return true;
}

bool associative_full_parallel(const StructAlgebra& a) {
    const size_t d = a.dim();
    std::vector<Vec> prods = all_products(a);
    bool ok = true;
    const long long total = static_cast<long long>(d * d);
#pragma omp parallel for schedule(dynamic, 4) reduction(&& : ok)
    for (long long ij = 0; ij < total; ++ij) {
        if (!ok) continue;
        ok = triple_ok(a, static_cast<size_t>(ij) / d, static_cast<size_t>(ij) % d, prods);
    }
    return ok;
}

namespace {

bool nucleus_row_ok(const StructAlgebra& a, const Vec& g, size_t y, const std::vector<Vec>& prods) {
    const size_t d = a.dim();
    Vec gy = a.mul(g, a.basis(y));
    for (size_t z = 0; z < d; ++z) {
        Vec lhs = a.mul(gy, a.basis(z));
        Vec rhs = a.mul(g, prods[y * d + z]);
        if (!a.equal(lhs, rhs)) return false;
    }
    return true;
}

}  // namespace

bool left_nucleus_serial(const StructAlgebra& a, const std::vector<Vec>& gens) {
    std::vector<Vec> prods = all_products(a);
    for (const Vec& g : gens)
        for (size_t y = 0; y < a.dim(); ++y)
            if (!nucleus_row_ok(a, g, y, prods)) return false;
    return true;
}

bool left_nucleus_parallel(const StructAlgebra& a, const std::vector<Vec>& gens) {
    std::vector<Vec> prods = all_products(a);
    const size_t d = a.dim();
    const long long total = static_cast<long long>(gens.size() * d);
    bool ok = true;
#pragma omp parallel for schedule(dynamic, 2) reduction(&& : ok)
    for (long long gy = 0; gy < total; ++gy) {
        if (!ok) continue;
        ok = nucleus_row_ok(a, gens[static_cast<size_t>(gy) / d], static_cast<size_t>(gy) % d, prods);
    }
    return ok;
}

namespace {

// Entries of row I = (i, j) of the tensor table, in target order.
void tensor_row(const StructAlgebra& a, const StructAlgebra& b, size_t I, size_t K, std::vector<uint32_t>& tgt, Vec& coef) {
    const ProductTable& ta = a.table();
    const ProductTable& tb = b.table();
    const size_t da = a.dim(), db = b.dim();
    const size_t i = I / db, j = I % db, k = K / db, l = K % db;
    const Tower& R = a.ring();
    const size_t w = R.width();
    Vec c(w);
    for (uint32_t p = ta.start[i * da + k]; p < ta.start[i * da + k + 1]; ++p) {
        for (uint32_t q = tb.start[j * db + l]; q < tb.start[j * db + l + 1]; ++q) {
            std::fill(c.begin(), c.end(), Scalar());
            R.mul_add(c, ta.coef_at(p), tb.coef_at(q));
            if (R.is_zero(c)) continue;
            tgt.push_back(ta.target[p] * static_cast<uint32_t>(db) + tb.target[q]);
            coef.insert(coef.end(), c.begin(), c.end());
        }
    }
}

ProductTable assemble(size_t dim, size_t width, std::vector<std::vector<uint32_t>>& counts,
                      std::vector<std::vector<uint32_t>>& tgts, std::vector<Vec>& coefs) {
    ProductTable t;
    t.dim = dim;
    t.width = width;
    t.start.assign(dim * dim + 1, 0);
    size_t total = 0;
    for (auto& v : tgts) total += v.size();
    t.target.reserve(total);
    t.coef.reserve(total * width);
    for (size_t I = 0; I < dim; ++I) {
        size_t off = 0;
        for (size_t K = 0; K < dim; ++K) {
            const uint32_t n = counts[I][K];
            t.target.insert(t.target.end(), tgts[I].begin() + static_cast<std::ptrdiff_t>(off),
                            tgts[I].begin() + static_cast<std::ptrdiff_t>(off + n));
            t.start[I * dim + K + 1] = static_cast<uint32_t>(t.target.size());
            off += n;
        }
        t.coef.insert(t.coef.end(), coefs[I].begin(), coefs[I].end());
        tgts[I].clear();
        coefs[I].clear();
    }
    return t;
}

void check_same(const StructAlgebra& a, const StructAlgebra& b) {
    if (!a.ring().same_as(b.ring())) fail(ErrorKind::BaseMismatch, "tensor factors over different rings");
}

}  // namespace

ProductTable tensor_table_serial(const StructAlgebra& a, const StructAlgebra& b) {
    check_same(a, b);
    const size_t dim = a.dim() * b.dim();
    std::vector<std::vector<uint32_t>> counts(dim, std::vector<uint32_t>(dim)), tgts(dim);
    std::vector<Vec> coefs(dim);
    for (size_t I = 0; I < dim; ++I) {
        for (size_t K = 0; K < dim; ++K) {
            const size_t before = tgts[I].size();
            tensor_row(a, b, I, K, tgts[I], coefs[I]);
            counts[I][K] = static_cast<uint32_t>(tgts[I].size() - before);
        }
    }
    return assemble(dim, a.rwidth(), counts, tgts, coefs);
}

ProductTable tensor_table_parallel(const StructAlgebra& a, const StructAlgebra& b) {
    check_same(a, b);
    const size_t dim = a.dim() * b.dim();
    std::vector<std::vector<uint32_t>> counts(dim, std::vector<uint32_t>(dim)), tgts(dim);
    std::vector<Vec> coefs(dim);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long II = 0; II < static_cast<long long>(dim); ++II) {
        const size_t I = static_cast<size_t>(II);
        for (size_t K = 0; K < dim; ++K) {
            const size_t before = tgts[I].size();
            tensor_row(a, b, I, K, tgts[I], coefs[I]);
            counts[I][K] = static_cast<uint32_t>(tgts[I].size() - before);
        }
    }
    return assemble(dim, a.rwidth(), counts, tgts, coefs);
}

}  // namespace kernels

bool is_associative(const StructAlgebra& a) {
    if (!a.ring().is_local_base()) return is_associative(restrict_scalars(a));
    if (!kernels::unit_ok(a)) return false;
    std::vector<Vec> gens;
    try {
        gens = generating_set(a);
    } catch (const Error&) {
        return kernels::associative_full_parallel(a);
    }
    return kernels::left_nucleus_parallel(a, gens);
}

}  // namespace azulift

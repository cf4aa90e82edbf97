#include "azulift/linalg.hpp"

#include <algorithm>

namespace azulift {

TMatrix::TMatrix(TowerPtr ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), n_(static_cast<size_t>(ring_->trunc())) {
    if (!ring_->is_local_base()) fail(ErrorKind::Precondition, "matrices live over a field or truncated ring");
    data_.resize(rows_ * cols_ * n_);
}

void TMatrix::set(size_t r, size_t c, CSpan v) {
    if (v.size() != n_) fail(ErrorKind::BaseMismatch, "matrix entry has wrong width");
    std::copy(v.begin(), v.end(), at(r, c).begin());
}

TMatrix TMatrix::residue() const {
    TMatrix out(ring_->residue_tower(), rows_, cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(r, c)[0] = at(r, c)[0];
    return out;
}

namespace {

bool entry_zero(CSpan e) {
    return std::all_of(e.begin(), e.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace

Echelon rref(TMatrix m, size_t pivot_cols_limit) {
    const Tower& T = *m.ring();
    const size_t rows = m.rows(), cols = m.cols(), n = m.trunc();
    const size_t limit = std::min(cols, pivot_cols_limit);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < limit && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m.at(p, c)[0].is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(r).begin());
        Vec inv = T.inv(m.at(r, c));
        for (size_t cc = 0; cc < cols; ++cc) {
            if (entry_zero(m.at(r, cc))) continue;
            Vec v = T.mul(inv, m.at(r, cc));
            std::copy(v.begin(), v.end(), m.at(r, cc).begin());
        }
        const long long nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(dynamic, 8) if (rows * cols * n > 4096)
        for (long long ii = 0; ii < nrows; ++ii) {
            const size_t i = static_cast<size_t>(ii);
            if (i == r || entry_zero(m.at(i, c))) continue;
            Vec negf = T.neg(m.at(i, c));
            for (size_t cc = 0; cc < cols; ++cc) {
                if (entry_zero(m.at(r, cc))) continue;
                T.mul_add(m.at(i, cc), negf, m.at(r, cc));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    Echelon e{std::move(m), std::move(pivots), r, true};
    for (size_t i = r; i < rows && e.residual_zero; ++i)
        if (!T.is_zero(e.reduced.row(i))) e.residual_zero = false;
    return e;
}

size_t residue_rank(const TMatrix& m) { return rref(m.residue()).rank; }

std::vector<Vec> kernel(const TMatrix& m) {
    Echelon e = rref(m);
    if (!e.residual_zero) fail(ErrorKind::NotFree, "kernel is not a free module");
    const Tower& T = *m.ring();
    const size_t n = m.trunc(), cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec x(cols * n);
        x[f * n] = T.field().from_int(1);
        for (size_t i = 0; i < e.rank; ++i) {
            Vec v = T.neg(e.reduced.at(i, f));
            std::copy(v.begin(), v.end(), x.begin() + static_cast<std::ptrdiff_t>(e.pivots[i] * n));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vec> solve(const TMatrix& m, CSpan b) {
    const size_t n = m.trunc(), rows = m.rows(), cols = m.cols();
    if (b.size() != rows * n) fail(ErrorKind::BaseMismatch, "right-hand side has wrong length");
    TMatrix aug(m.ring(), rows, cols + 1);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) aug.set(r, c, m.at(r, c));
        aug.set(r, cols, b.subspan(r * n, n));
    }
    Echelon e = rref(std::move(aug), cols);
    for (size_t i = e.rank; i < rows; ++i) {
        for (size_t c = 0; c < cols; ++c)
            if (!entry_zero(e.reduced.at(i, c))) fail(ErrorKind::NotFree, "system not resolvable by unit pivots");
        if (!entry_zero(e.reduced.at(i, cols))) return std::nullopt;
    }
    Vec x(cols * n);
    for (size_t i = 0; i < e.rank; ++i) {
        CSpan v = e.reduced.at(i, cols);
        std::copy(v.begin(), v.end(), x.begin() + static_cast<std::ptrdiff_t>(e.pivots[i] * n));
    }
    return x;
}

Echelon span_basis(const TowerPtr& ring, const std::vector<Vec>& vectors, size_t len) {
    const size_t n = static_cast<size_t>(ring->trunc());
    TMatrix m(ring, vectors.size(), len);
    for (size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != len * n) fail(ErrorKind::BaseMismatch, "vector has wrong length");
        std::copy(vectors[r].begin(), vectors[r].end(), m.row(r).begin());
    }
    Echelon e = rref(std::move(m));
    if (!e.residual_zero) fail(ErrorKind::NotFree, "span is not a free direct summand");
    return e;
}

}  // namespace azulift

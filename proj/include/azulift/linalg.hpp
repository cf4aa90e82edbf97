#pragma once

#include "azulift/tower.hpp"

#include <optional>
#include <vector>

namespace azulift {

/// Dense matrix over a local base ring T = K[eps]/(eps^N) (N = 1 is a field).
/// Entry (r, c) occupies N consecutive scalars.
class TMatrix {
public:
    TMatrix(TowerPtr ring, size_t rows, size_t cols);

    [[nodiscard]] const TowerPtr& ring() const noexcept { return ring_; }
    [[nodiscard]] size_t rows() const noexcept { return rows_; }
    [[nodiscard]] size_t cols() const noexcept { return cols_; }
    [[nodiscard]] size_t trunc() const noexcept { return n_; }

    [[nodiscard]] CSpan at(size_t r, size_t c) const { return {data_.data() + (r * cols_ + c) * n_, n_}; }
    [[nodiscard]] MSpan at(size_t r, size_t c) { return {data_.data() + (r * cols_ + c) * n_, n_}; }
    [[nodiscard]] CSpan row(size_t r) const { return {data_.data() + r * cols_ * n_, cols_ * n_}; }
    [[nodiscard]] MSpan row(size_t r) { return {data_.data() + r * cols_ * n_, cols_ * n_}; }
    void set(size_t r, size_t c, CSpan v);

    [[nodiscard]] TMatrix residue() const;
    [[nodiscard]] bool operator==(const TMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    TowerPtr ring_;
    size_t rows_, cols_, n_;
    Vec data_;
};

/// Reduced row echelon form with unit pivots. Pivot search takes the first
/// row (in order) whose entry is a unit, so the result commutes with the
/// residue map whenever the input does.
struct Echelon {
    TMatrix reduced;
    std::vector<size_t> pivots;  // pivot column of row i, for i < rank
    size_t rank = 0;
    /// Rows past `rank` that are nonzero (entries all in the maximal ideal).
    bool residual_zero = true;
};

[[nodiscard]] Echelon rref(TMatrix m, size_t pivot_cols_limit = static_cast<size_t>(-1));
/// Rank of the residue matrix over K.
[[nodiscard]] size_t residue_rank(const TMatrix& m);
/// Basis of the right kernel {x : m x = 0}; throws NotFree when it is not free.
[[nodiscard]] std::vector<Vec> kernel(const TMatrix& m);
/// A solution of m x = b (b flat, rows * N scalars), or nullopt when inconsistent.
/// Throws NotFree when the system is not resolvable by unit pivots.
[[nodiscard]] std::optional<Vec> solve(const TMatrix& m, CSpan b);
/// Echelon basis of the T-span of the given vectors (rows). Throws NotFree if
/// the span is not a free direct summand.
[[nodiscard]] Echelon span_basis(const TowerPtr& ring, const std::vector<Vec>& vectors, size_t len);

}  // namespace azulift

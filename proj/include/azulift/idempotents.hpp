#pragma once

#include "azulift/algebra.hpp"

#include <cstdint>

namespace azulift {

/// Minimal polynomial of x over the base field (coefficients low to high, monic).
[[nodiscard]] Vec min_poly(const StructAlgebra& a, CSpan x);
/// Rational roots of a polynomial over K (over F_p by exhaustive search for small p).
[[nodiscard]] std::vector<Scalar> rational_roots(const Field& k, const Vec& poly);

struct IdempotentOptions {
    uint64_t seed = 1;
    int max_draws = 1000;
    int height = 20;
};

/// e with e^2 = e and eAe of rank 1, for a split central simple algebra over a field.
/// Throws NotSplit when certified non-split, SearchExhausted past the draw bound.
[[nodiscard]] Vec rank_one_idempotent(const StructAlgebra& a, const IdempotentOptions& opt = {});

/// Newton iteration e <- 3e^2 - 2e^3, ceil(log2 N) times, from an element whose
/// residue is idempotent. Throws NotIdempotentResidue.
[[nodiscard]] Vec hensel_lift_idempotent(const StructAlgebra& a, CSpan e0);

}  // namespace azulift

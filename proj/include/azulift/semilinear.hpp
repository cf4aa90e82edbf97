#pragma once

#include "azulift/algebra.hpp"

#include <cstdint>
#include <optional>

namespace azulift {

/// s = w + z sigma(w) for the first w in a fixed list followed by random draws
/// that makes s a unit; then z sigma(s) = s. Requires z sigma(z) = 1.
/// Throws Precondition on the norm, Degenerate after 32 attempts.
[[nodiscard]] Vec hilbert90(const Tower& s, uint32_t sigma, CSpan z, uint64_t seed = 1);

/// Square root in T of an element whose residue is r0^2 with r0 != 0, congruent to r0.
[[nodiscard]] Vec sqrt_in_base(const Tower& t, CSpan a, const Scalar& r0);

/// E = B (x) sigma(B)^op over S; (b (x) c)(b' (x) c') = bb' (x) c'c.
[[nodiscard]] StructAlgebra twisted_enveloping(const StructAlgebra& b, uint32_t sigma);
/// Pure tensor b (x) c in E.
[[nodiscard]] Vec enveloping_pure(const StructAlgebra& b, CSpan x, CSpan y);

struct SemilinearSearch {
    uint64_t seed = 1;
    int max_tries = 200;
};

/// sigma-semilinear automorphism of B from an idempotent f of E with Ef free
/// of rank dim B over S: find a generator p of Ef as a left B-module, solve
/// (phi(c) (x) 1) p = (1 (x) c) p and set alpha(s b_m) = sigma(s) phi(c_m).
/// The map acts on restrict_scalars(B). Throws SearchExhausted, Degenerate.
[[nodiscard]] AlgebraMap semilinear_from_idempotent(const StructAlgebra& b, uint32_t sigma, const StructAlgebra& e,
                                                    CSpan f, const SemilinearSearch& opt = {});

/// For Q = (a, x)_S with a in T: alpha(i) = i, alpha(j) = sigma(x) delta j where
/// delta = u + v i has norm 1/N(x). Throws NotBrauerEquivalent when the residue
/// classes of Q and sigma(Q) differ, Unsupported when they agree only over L.
[[nodiscard]] AlgebraMap find_semilinear_iso_quaternion(const TowerPtr& s, CSpan a, CSpan x);

/// c in B* with alpha^2 = inn(c) and alpha(c) = c. Throws NoUnitSolution.
[[nodiscard]] Vec skolem_noether_c(const StructAlgebra& b, const AlgebraMap& alpha, uint64_t seed = 1);

/// Whether q is a square in the completion of Q at v.
[[nodiscard]] bool is_local_square(const Rational& q, uint64_t place);

}  // namespace azulift

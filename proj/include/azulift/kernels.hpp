#pragma once

#include "azulift/algebra.hpp"

#include <vector>

namespace azulift {

// Hot loops with a serial reference and an OpenMP variant of each.
namespace kernels {

/// 1 * e_i = e_i = e_i * 1 for every basis element.
[[nodiscard]] bool unit_ok(const StructAlgebra& a);

/// (e_i e_j) e_k = e_i (e_j e_k) over all basis triples.
[[nodiscard]] bool associative_full_serial(const StructAlgebra& a);
[[nodiscard]] bool associative_full_parallel(const StructAlgebra& a);

/// (g y) z = g (y z) for g in gens and y, z basis elements: every g lies in the left nucleus.
[[nodiscard]] bool left_nucleus_serial(const StructAlgebra& a, const std::vector<Vec>& gens);
[[nodiscard]] bool left_nucleus_parallel(const StructAlgebra& a, const std::vector<Vec>& gens);

/// Structure constants of A (x) B, basis index i * dim B + j.
[[nodiscard]] ProductTable tensor_table_serial(const StructAlgebra& a, const StructAlgebra& b);
[[nodiscard]] ProductTable tensor_table_parallel(const StructAlgebra& a, const StructAlgebra& b);

}  // namespace kernels

/// Exact associativity and unit check. The left nucleus is a subalgebra, so it
/// contains the whole algebra once it contains a generating set; generation is
/// verified at residue and lifts by Nakayama.
[[nodiscard]] bool is_associative(const StructAlgebra& a);

}  // namespace azulift

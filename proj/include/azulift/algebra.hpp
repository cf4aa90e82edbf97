#pragma once

#include "azulift/linalg.hpp"
#include "azulift/tower.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace azulift {

/// Sparse structure constants: the product of basis elements i and j is
/// sum over t in [start[i*dim+j], start[i*dim+j+1]) of coef[t] * e_{target[t]},
/// each coef a ring element of `width` scalars.
struct ProductTable {
    size_t dim = 0;
    size_t width = 0;
    std::vector<uint32_t> start;
    std::vector<uint32_t> target;
    Vec coef;

    [[nodiscard]] size_t entries() const noexcept { return target.size(); }
    [[nodiscard]] CSpan coef_at(size_t t) const { return {coef.data() + t * width, width}; }
    bool operator==(const ProductTable&) const = default;
};

using NamedElement = std::pair<std::string, Vec>;

/// A finite free algebra over a ring tower, by structure constants.
/// Elements are flat vectors: coordinate of basis i occupies ring-width scalars at i*width.
class StructAlgebra {
public:
    StructAlgebra(TowerPtr base, ProductTable table, Vec one, std::vector<NamedElement> gens = {});

    [[nodiscard]] const TowerPtr& base() const noexcept { return base_; }
    [[nodiscard]] const Tower& ring() const noexcept { return *base_; }
    [[nodiscard]] size_t dim() const noexcept { return table_.dim; }
    [[nodiscard]] size_t rwidth() const noexcept { return table_.width; }
    [[nodiscard]] size_t width() const noexcept { return table_.dim * table_.width; }
    [[nodiscard]] const ProductTable& table() const noexcept { return table_; }
    [[nodiscard]] const std::vector<NamedElement>& gens() const noexcept { return gens_; }
    [[nodiscard]] const Vec* gen(const std::string& name) const;

    [[nodiscard]] Vec zero() const { return Vec(width()); }
    [[nodiscard]] const Vec& one() const noexcept { return one_; }
    [[nodiscard]] Vec basis(size_t i) const;
    [[nodiscard]] CSpan coord(CSpan x, size_t i) const { return x.subspan(i * rwidth(), rwidth()); }
    /// Embeds a base-ring element as a multiple of the unit.
    [[nodiscard]] Vec scalar(CSpan s) const { return scale(s, one_); }

    [[nodiscard]] Vec mul(CSpan x, CSpan y) const;
    void mul_add(MSpan acc, CSpan x, CSpan y) const;
    [[nodiscard]] Vec mul_basis(size_t i, size_t j) const;
    [[nodiscard]] Vec add(CSpan x, CSpan y) const { return base_->add(x, y); }
    [[nodiscard]] Vec sub(CSpan x, CSpan y) const { return base_->sub(x, y); }
    [[nodiscard]] Vec neg(CSpan x) const { return base_->neg(x); }
    /// s * x for a base-ring element s.
    [[nodiscard]] Vec scale(CSpan s, CSpan x) const;
    [[nodiscard]] Vec scale_int(int64_t k, CSpan x) const;
    [[nodiscard]] bool is_zero(CSpan x) const { return base_->is_zero(x); }
    [[nodiscard]] bool equal(CSpan x, CSpan y) const { return base_->equal(x, y); }
    [[nodiscard]] Vec pow(CSpan x, unsigned k) const;

    /// Left multiplication by x as a matrix over the base T (requires a local base).
    [[nodiscard]] TMatrix left_matrix(CSpan x) const;
    /// Unit test via the residue rank of left multiplication (local base only).
    [[nodiscard]] bool is_unit(CSpan x) const;
    /// Two-sided inverse via a linear solve (local base only). Throws NotUnit.
    [[nodiscard]] Vec inv(CSpan x) const;

    [[nodiscard]] std::shared_ptr<const StructAlgebra> share() const { return std::make_shared<const StructAlgebra>(*this); }

private:
    TowerPtr base_;
    ProductTable table_;
    Vec one_;
    std::vector<NamedElement> gens_;
};

using AlgebraPtr = std::shared_ptr<const StructAlgebra>;

/// A subalgebra presented by a basis in the ambient algebra.
struct Subalgebra {
    StructAlgebra algebra;
    std::vector<Vec> basis;       // ambient coordinates of each basis element
    std::vector<size_t> columns;  // basis[i] has a 1 at columns[i] and 0 at the other columns
    /// Coordinates in `algebra` of an ambient element lying in the subalgebra.
    [[nodiscard]] Vec coords_of(const StructAlgebra& ambient, CSpan x) const;
    [[nodiscard]] Vec embed(const StructAlgebra& ambient, CSpan y) const;
};

/// Builds a table from a dense product callback: fill(i, j, out) writes e_i e_j
/// into a zeroed buffer of dim*width scalars.
template <class Fill>
ProductTable make_table(size_t dim, size_t width, Fill&& fill);

// Constructors.
[[nodiscard]] StructAlgebra base_algebra(const TowerPtr& r);
[[nodiscard]] StructAlgebra quaternion_algebra(const TowerPtr& r, CSpan a, CSpan b);
[[nodiscard]] StructAlgebra matrix_algebra(const TowerPtr& r, size_t n);
[[nodiscard]] StructAlgebra tensor(const StructAlgebra& a, const StructAlgebra& b);
[[nodiscard]] StructAlgebra opposite(const StructAlgebra& a);
/// Views an algebra over R(sqrt b_1..b_s) as an algebra over R; basis m*2^s + mask is x_mask * e_m.
/// Element vectors are unchanged by this reinterpretation.
[[nodiscard]] StructAlgebra restrict_scalars(const StructAlgebra& a);
[[nodiscard]] StructAlgebra residue_algebra(const StructAlgebra& a);
/// Coordinatewise residue of an element.
[[nodiscard]] Vec residue_element(const StructAlgebra& a, CSpan x);
[[nodiscard]] StructAlgebra galois_twist(const StructAlgebra& b, uint32_t sigma);
/// Applies sigma to every coordinate of an element (the identity map B -> sigma(B)).
[[nodiscard]] Vec twist_coords(const StructAlgebra& b, uint32_t sigma, CSpan x);

// Structure.
/// Center dimension over the residue field and trace-form nondegeneracy at residue.
[[nodiscard]] bool is_azumaya_trace(const StructAlgebra& a);
/// A (x) A^op -> End(A) has unit determinant, decided by the residue rank over K.
[[nodiscard]] bool is_azumaya_determinant(const StructAlgebra& a);
/// Determinant route for small algebras, trace route otherwise.
[[nodiscard]] bool is_azumaya(const StructAlgebra& a);

/// Residue dimension over K of the subalgebra generated by the given elements.
[[nodiscard]] size_t generated_residue_dim(const StructAlgebra& a, const std::vector<Vec>& gens);
/// Generators: the named ones when they generate, otherwise a greedy choice at residue.
[[nodiscard]] std::vector<Vec> generating_set(const StructAlgebra& a);
[[nodiscard]] std::vector<NamedElement> generating_set_named(const StructAlgebra& a);

/// Elements commuting with every given element (local base only). Throws NotFree.
[[nodiscard]] Subalgebra centralizer(const StructAlgebra& a, const std::vector<Vec>& elems);
/// Subalgebra spanned by the rows of an echelon form (unit pivots).
[[nodiscard]] Subalgebra subalgebra_from_echelon(const StructAlgebra& a, const Echelon& e, Vec unit);
/// eAe for an idempotent e (local base only).
[[nodiscard]] Subalgebra corner(const StructAlgebra& a, CSpan e);

/// A map between algebras over a local base given by images of basis elements.
/// With sigma != 0 the source and target are restrictions of algebras over a
/// radical layer, and the map is sigma-semilinear for that layer.
struct AlgebraMap {
    AlgebraPtr source, target;
    std::vector<Vec> images;
    uint32_t sigma = 0;
    TowerPtr layer;  // the radical layer when sigma != 0

    [[nodiscard]] Vec apply(CSpan x) const;
    [[nodiscard]] bool is_unital() const;
    [[nodiscard]] bool is_multiplicative() const;
    /// f(x_i * 1) = sigma(x_i) * 1 for the radical generators.
    [[nodiscard]] bool is_semilinear() const;
};

/// B (+) B u with u b = alpha(b) u and u^2 = c, over the base T of B's layer.
/// alpha is given on restrict_scalars(B). Basis: restricted B, then restricted B times u.
[[nodiscard]] StructAlgebra crossed_product_quadratic(const StructAlgebra& b, const AlgebraMap& alpha, CSpan c);

/// S (x)_T S for S = T(sqrt a) with basis 1, 1(x)t, t(x)1, t(x)t, and e = (1 + (t(x)t)/a)/2.
struct SplitIdempotent {
    StructAlgebra algebra;
    Vec e;
};
[[nodiscard]] SplitIdempotent galois_split_idempotent(const TowerPtr& s);

// ---------------------------------------------------------------- template impl

template <class Fill>
ProductTable make_table(size_t dim, size_t width, Fill&& fill) {
    ProductTable t;
    t.dim = dim;
    t.width = width;
    t.start.assign(dim * dim + 1, 0);
    Vec buf(dim * width);
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) {
            std::fill(buf.begin(), buf.end(), Scalar());
            fill(i, j, MSpan(buf));
            for (size_t k = 0; k < dim; ++k) {
                bool nz = false;
                for (size_t w = 0; w < width && !nz; ++w) nz = !buf[k * width + w].is_zero();
                if (!nz) continue;
                t.target.push_back(static_cast<uint32_t>(k));
                t.coef.insert(t.coef.end(), buf.begin() + static_cast<std::ptrdiff_t>(k * width),
                              buf.begin() + static_cast<std::ptrdiff_t>((k + 1) * width));
            }
            t.start[i * dim + j + 1] = static_cast<uint32_t>(t.target.size());
        }
    }
    return t;
}

}  // namespace azulift

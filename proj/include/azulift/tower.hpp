#pragma once

#include "azulift/field.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace azulift {

using Vec = std::vector<Scalar>;
using CSpan = std::span<const Scalar>;
using MSpan = std::span<Scalar>;

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// The ring tower K -> T = K[eps]/(eps^N) -> S = T[x_1..x_s]/(x_i^2 - b_i).
///
/// Elements are dense coordinate vectors over K of length width() = N * 2^s:
/// block `mask` (a subset of the generators) holds the eps-expansion of the
/// coefficient of prod_{i in mask} x_i. N = 1 is the field itself and s = 0
/// is the truncated ring T.
class Tower {
public:
    static TowerPtr field(const Field& k);
    /// T = K[eps]/(eps^N); N = 1 gives K. Throws Precondition for N < 1.
    static TowerPtr truncated(const Field& k, int n);
    /// R(sqrt b_1, ..., sqrt b_s) for units b_i of R, where R has no radicals yet.
    static TowerPtr adjoin_sqrts(const TowerPtr& base, const std::vector<Vec>& radicands);

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] int trunc() const noexcept { return n_; }
    [[nodiscard]] int num_sqrts() const noexcept { return static_cast<int>(radicands_.size()); }
    [[nodiscard]] size_t width() const noexcept { return static_cast<size_t>(n_) << radicands_.size(); }
    [[nodiscard]] size_t rank_over_base() const noexcept { return size_t{1} << radicands_.size(); }
    [[nodiscard]] const Vec& radicand(int i) const { return radicands_.at(static_cast<size_t>(i)); }
    [[nodiscard]] bool is_field() const noexcept { return n_ == 1 && radicands_.empty(); }
    [[nodiscard]] bool is_local_base() const noexcept { return radicands_.empty(); }
    [[nodiscard]] std::string describe() const;

    /// T (same K and N, no radicals).
    [[nodiscard]] TowerPtr base() const;
    /// Residue tower: eps -> 0, radicands reduced.
    [[nodiscard]] TowerPtr residue_tower() const;
    /// Same radicals' layer with the last generator removed.
    [[nodiscard]] TowerPtr drop_last_sqrt() const;

    [[nodiscard]] bool same_as(const Tower& o) const;

    // Construction helpers.
    [[nodiscard]] Vec zero() const { return Vec(width()); }
    [[nodiscard]] Vec one() const;
    [[nodiscard]] Vec from_scalar(const Scalar& s) const;
    [[nodiscard]] Vec from_int(int64_t v) const { return from_scalar(field_.from_int(v)); }
    /// Element of the base T embedded as the coefficient of 1.
    [[nodiscard]] Vec from_base(CSpan t) const;
    /// eps^k as an element.
    [[nodiscard]] Vec eps_power(int k) const;
    /// The generator x_i.
    [[nodiscard]] Vec sqrt_gen(int i) const;

    // Arithmetic.
    [[nodiscard]] bool is_zero(CSpan a) const;
    [[nodiscard]] bool equal(CSpan a, CSpan b) const;
    void add_into(MSpan acc, CSpan a) const;
    void sub_into(MSpan acc, CSpan a) const;
    /// acc += a * b
    void mul_add(MSpan acc, CSpan a, CSpan b) const;
    [[nodiscard]] Vec add(CSpan a, CSpan b) const;
    [[nodiscard]] Vec sub(CSpan a, CSpan b) const;
    [[nodiscard]] Vec neg(CSpan a) const;
    [[nodiscard]] Vec mul(CSpan a, CSpan b) const;
    [[nodiscard]] Vec scale(CSpan a, const Scalar& s) const;

    /// Unit test: over T the eps^0 coefficient is nonzero; over S the norm to T is a unit
    /// (equivalently, the residue is a unit in every summand of the residue algebra).
    [[nodiscard]] bool is_unit(CSpan a) const;
    /// Throws Error(NotUnit).
    [[nodiscard]] Vec inv(CSpan a) const;

    /// Residue map into residue_tower().
    [[nodiscard]] Vec residue(CSpan a) const;
    /// Embeds a residue-tower element as an eps-constant element.
    [[nodiscard]] Vec lift_constant(CSpan r) const;

    /// Galois action: sign vector given as a bitmask of flipped generators.
    [[nodiscard]] Vec galois(uint32_t sigma, CSpan a) const;
    /// Norm down to T (product of all conjugates). For s = 1 this is x * sigma(x).
    [[nodiscard]] Vec norm(CSpan a) const;
    /// Whether a lies in the base T (all radical blocks vanish).
    [[nodiscard]] bool in_base(CSpan a) const;
    /// The T-coordinates of an element known to lie in the base.
    [[nodiscard]] Vec base_part(CSpan a) const { return Vec(a.begin(), a.begin() + n_); }

private:
    Tower(Field k, int n, std::vector<Vec> radicands);

    // Truncated-polynomial kernels on T-blocks (length n_).
    void tmul_add(Scalar* acc, const Scalar* a, const Scalar* b) const;
    void tmul(Scalar* out, const Scalar* a, const Scalar* b) const;
    [[nodiscard]] Vec tinv(CSpan a) const;

    Field field_;
    int n_;
    std::vector<Vec> radicands_;
    // prod_{i in A & B} b_i for every mask pair, as T-blocks (empty when A & B == 0).
    std::vector<Vec> pair_coef_;
};

/// A ring element bound to its tower. Mixing towers requires an explicit embedding.
class RingElement {
public:
    RingElement(TowerPtr ring, Vec coords);
    static RingElement zero(const TowerPtr& r) { return {r, r->zero()}; }
    static RingElement one(const TowerPtr& r) { return {r, r->one()}; }
    static RingElement from_int(const TowerPtr& r, int64_t v) { return {r, r->from_int(v)}; }

    [[nodiscard]] const TowerPtr& ring() const noexcept { return ring_; }
    [[nodiscard]] const Vec& coords() const noexcept { return c_; }

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement operator-() const { return {ring_, ring_->neg(c_)}; }
    friend bool operator==(const RingElement& a, const RingElement& b);

    [[nodiscard]] bool is_unit() const { return ring_->is_unit(c_); }
    [[nodiscard]] RingElement inv() const { return {ring_, ring_->inv(c_)}; }
    [[nodiscard]] RingElement residue() const { return {ring_->residue_tower(), ring_->residue(c_)}; }
    [[nodiscard]] RingElement galois(uint32_t sigma) const { return {ring_, ring_->galois(sigma, c_)}; }
    /// Norm into T, returned as an element of T.
    [[nodiscard]] RingElement norm() const { return {ring_->base(), ring_->norm(c_)}; }

private:
    TowerPtr ring_;
    Vec c_;
};

}  // namespace azulift

#pragma once

#include "azulift/field.hpp"
#include "azulift/tower.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace azulift {

/// A place of Q: the real place (p == 0) or a prime.
struct Place {
    uint64_t p = 0;

    static Place real() { return {0}; }
    static Place prime(uint64_t q) { return {q}; }
    [[nodiscard]] bool is_real() const noexcept { return p == 0; }
    [[nodiscard]] std::string name() const { return p == 0 ? "inf" : std::to_string(p); }
    auto operator<=>(const Place&) const = default;
};

using PlaceSet = std::set<Place>;

/// Quaternion symbol (a, b) over Q.
struct SymbolPair {
    Rational a, b;
};

/// +1 or -1. Throws Precondition on zero arguments.
[[nodiscard]] int hilbert_symbol(const Rational& a, const Rational& b, Place v);
/// Places dividing 2ab together with the real place.
[[nodiscard]] PlaceSet relevant_places(const Rational& a, const Rational& b);
[[nodiscard]] PlaceSet ramification_set(const SymbolPair& p);

/// A 2-torsion Brauer class over Q as a sum of quaternion symbols.
class SymbolClass {
public:
    SymbolClass() = default;
    explicit SymbolClass(std::vector<SymbolPair> pairs);

    [[nodiscard]] const std::vector<SymbolPair>& pairs() const noexcept { return pairs_; }
    [[nodiscard]] const PlaceSet& ram() const noexcept { return ram_; }
    [[nodiscard]] bool is_split() const noexcept { return ram_.empty(); }

    SymbolClass& operator+=(const SymbolClass& o);
    friend SymbolClass operator+(SymbolClass a, const SymbolClass& b) { return a += b; }
    friend bool operator==(const SymbolClass& a, const SymbolClass& b) { return a.ram_ == b.ram_; }

private:
    std::vector<SymbolPair> pairs_;
    PlaceSet ram_;
};

[[nodiscard]] SymbolClass class_of(const std::vector<SymbolPair>& pairs);
[[nodiscard]] inline bool is_split(const SymbolClass& c) { return c.is_split(); }
[[nodiscard]] bool symbols_isomorphic(const SymbolPair& p, const SymbolPair& q);
[[nodiscard]] std::string format_places(const PlaceSet& s);

/// u + v sqrt(n).
struct QuadNumber {
    Rational u, v;
};

struct NormSolverOptions {
    int small_search = 24;  // integer search box before descent
    int fallback_height = 10000;
};

/// gamma with u^2 - n v^2 = b, or nullopt exactly when (n, b) is non-split.
/// Over F_p the equation is always solvable.
[[nodiscard]] std::optional<QuadNumber> solve_norm(const Field& k, const Rational& n, const Rational& b,
                                                   const NormSolverOptions& opt = {});
[[nodiscard]] inline std::optional<QuadNumber> solve_norm(const Rational& n, const Rational& b) {
    return solve_norm(Field::rationals(), n, b);
}

/// y in Q* with ram(y, n_i) = targets[i] for every i, smallest |y| first
/// (positive before negative). nullopt if none is found within the search bound.
[[nodiscard]] std::optional<Rational> solve_slot(const std::vector<Rational>& ns, const std::vector<PlaceSet>& targets);

/// y with (y, n2) ~ (a2, n2) and (y, n3) ~ (a3, n3). Over F_p returns 1.
/// Throws Precondition if (a2, n2) and (a3, n3) are not isomorphic.
[[nodiscard]] Rational find_common_slot(const Field& k, const Rational& a2, const Rational& n2, const Rational& a3,
                                        const Rational& n3);

/// (a, b)_S with a in the base R rewritten as (a, N_S(b))_R.
struct CorRewrite {
    Vec a;       // T-coordinates
    Vec norm_b;  // T-coordinates
    SymbolPair residue;
};

/// S must be a quadratic layer. Throws SlotNotInBase if a is not in R, NotUnit if b is not a unit.
[[nodiscard]] CorRewrite cor_rewrite(const Tower& s, CSpan a, CSpan b);

}  // namespace azulift

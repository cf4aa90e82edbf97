#pragma once

#include "azulift/error.hpp"
#include "azulift/rational.hpp"

#include <cstdint>
#include <string>

namespace azulift {

using Scalar = Rational;

/// Base field K: the rationals, or a prime field F_p with p odd.
///
/// F_p elements are stored as Rationals holding their least non-negative
/// residue, so both kinds share one scalar type.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(uint64_t p);
    /// "Q" or "Fp:<p>".
    static Field parse(const std::string& text);

    [[nodiscard]] bool is_rationals() const noexcept { return p_ == 0; }
    [[nodiscard]] uint64_t characteristic() const noexcept { return p_; }
    [[nodiscard]] std::string name() const;

    [[nodiscard]] Scalar from_int(int64_t v) const;
    /// Maps a rational into K; for F_p the denominator must be prime to p.
    [[nodiscard]] Scalar from_rational(const Rational& q) const;

    [[nodiscard]] Scalar add(const Scalar& a, const Scalar& b) const {
        if (p_ == 0) return a + b;
        int64_t s = a.small_num() + b.small_num();
        if (s >= static_cast<int64_t>(p_)) s -= static_cast<int64_t>(p_);
        return Scalar(s);
    }
    [[nodiscard]] Scalar sub(const Scalar& a, const Scalar& b) const {
        if (p_ == 0) return a - b;
        int64_t s = a.small_num() - b.small_num();
        if (s < 0) s += static_cast<int64_t>(p_);
        return Scalar(s);
    }
    [[nodiscard]] Scalar neg(const Scalar& a) const {
        if (p_ == 0) return -a;
        return a.small_num() == 0 ? a : Scalar(static_cast<int64_t>(p_) - a.small_num());
    }
    [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const {
        if (p_ == 0) return a * b;
        return Scalar(static_cast<int64_t>(static_cast<unsigned __int128>(a.small_num()) * b.small_num() % p_));
    }
    void add_to(Scalar& acc, const Scalar& v) const {
        if (p_ == 0) {
            acc += v;
        } else {
            acc = add(acc, v);
        }
    }
    /// acc += a*b
    void add_mul(Scalar& acc, const Scalar& a, const Scalar& b) const {
        if (p_ == 0) {
            if (a.is_zero() || b.is_zero()) return;
            acc += a * b;
        } else {
            acc = add(acc, mul(a, b));
        }
    }
    /// acc -= a*b
    void sub_mul(Scalar& acc, const Scalar& a, const Scalar& b) const {
        if (p_ == 0) {
            if (a.is_zero() || b.is_zero()) return;
            acc -= a * b;
        } else {
            acc = sub(acc, mul(a, b));
        }
    }
    [[nodiscard]] Scalar inv(const Scalar& a) const;
    [[nodiscard]] Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// Euler criterion over F_p; over Q, whether the rational is a square.
    [[nodiscard]] bool is_square(const Scalar& a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

private:
    explicit Field(uint64_t p) : p_(p) {}
    uint64_t p_;
};

}  // namespace azulift

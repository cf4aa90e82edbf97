#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace azulift {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 62 bits are stored inline and
/// use 128-bit intermediate arithmetic; anything larger spills into a heap
/// allocated mpq_class and is demoted back as soon as it fits again. Almost
/// all coefficients met in practice stay small, so the GMP path is the
/// exception rather than the rule.
class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}
    Rational(int64_t v);  // NOLINT(google-explicit-constructor)
    Rational(int64_t num, int64_t den);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& o);
    Rational(Rational&& o) noexcept;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept;
    ~Rational();

    [[nodiscard]] bool is_zero() const noexcept { return den_ != 0 && num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return den_ == 1 && num_ == 1; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] int sign() const;
    [[nodiscard]] bool is_small() const noexcept { return den_ != 0; }

    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;
    [[nodiscard]] std::string str() const;

    /// Parses "n", "-n" or "n/d" (d != 0). Throws ParseError.
    static Rational parse(std::string_view text);

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Small-path accessors; only valid when is_small().
    [[nodiscard]] int64_t small_num() const noexcept { return num_; }
    [[nodiscard]] int64_t small_den() const noexcept { return den_; }

private:
    void assign_big(mpq_class&& q);
    void set_from_i128(__int128 num, __int128 den);  // den > 0, already reduced
    void normalize_small(int64_t num, int64_t den);

    // den_ == 0 marks the big representation, with big_ owning the value.
    union {
        int64_t num_;
        mpq_class* big_;
    };
    int64_t den_;
};

}  // namespace azulift

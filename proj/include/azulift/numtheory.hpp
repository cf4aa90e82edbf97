#pragma once

#include "azulift/rational.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace azulift::nt {

/// Inputs to factorization must stay below this bound.
inline constexpr unsigned kFactorBits = 63;

[[nodiscard]] uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
[[nodiscard]] uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);
[[nodiscard]] uint64_t invmod(uint64_t a, uint64_t m);

/// Deterministic Miller-Rabin for 64-bit inputs.
[[nodiscard]] bool is_prime(uint64_t n);
[[nodiscard]] uint64_t next_prime(uint64_t n);

/// Prime factorization (Pollard rho), sorted by prime.
[[nodiscard]] std::vector<std::pair<uint64_t, int>> factor(uint64_t n);
/// |n| must be below 2^63; throws Error(Parse) otherwise.
[[nodiscard]] std::vector<std::pair<uint64_t, int>> factor(const mpz_class& n);

/// Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}.
[[nodiscard]] int legendre(const mpz_class& a, uint64_t p);
/// Square root of a modulo an odd prime p (a must be a square).
[[nodiscard]] uint64_t sqrt_mod_prime(uint64_t a, uint64_t p);
/// t with t^2 = a mod |m| for squarefree m, or nullopt. Result in (-|m|/2, |m|/2].
[[nodiscard]] std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& m);
/// t with t^2 = a mod p^k for an odd prime p and a unit mod p that is a square.
[[nodiscard]] mpz_class sqrt_mod_prime_power(const mpz_class& a, uint64_t p, unsigned k);

/// p-adic valuation of a nonzero integer.
[[nodiscard]] int valuation(const mpz_class& n, uint64_t p);
[[nodiscard]] int valuation(const Rational& q, uint64_t p);

/// Square class of q in Q*/Q*^2 as a squarefree integer (sign included).
[[nodiscard]] mpz_class squarefree_part(const Rational& q);
/// q = core * s^2 with core squarefree; returns {core, s}.
[[nodiscard]] std::pair<mpz_class, Rational> squarefree_decompose(const Rational& q);
/// Exact rational square root, if q is a square.
[[nodiscard]] std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace azulift::nt

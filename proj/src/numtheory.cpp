#include "azulift/numtheory.hpp"

#include "azulift/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace azulift::nt {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t m) {
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) fail(ErrorKind::NotUnit, "not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<uint64_t>(t);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t next_prime(uint64_t n) {
    uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

namespace {

uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(uint64_t n, std::map<uint64_t, int>& out) {
    if (n == 1) return;
    for (uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factor(uint64_t n) {
    std::map<uint64_t, int> m;
    factor_into(n, m);
    return {m.begin(), m.end()};
}

std::vector<std::pair<uint64_t, int>> factor(const mpz_class& n) {
    mpz_class a = abs(n);
    if (a == 0) fail(ErrorKind::Precondition, "factor(0)");
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > kFactorBits) fail(ErrorKind::Parse, "integer exceeds factorization bound: " + a.get_str());
    return factor(static_cast<uint64_t>(mpz_get_ui(a.get_mpz_t())));
}

int legendre(const mpz_class& a, uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    return mpz_legendre(mpz_class(a % pz + pz).get_mpz_t(), pz.get_mpz_t());
}

uint64_t sqrt_mod_prime(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) fail(ErrorKind::Precondition, "not a square modulo p");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = static_cast<uint64_t>(s);
    uint64_t c = powmod(z, q, p);
    uint64_t t = powmod(a, q, p);
    uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

mpz_class sqrt_mod_prime_power(const mpz_class& a, uint64_t p, unsigned k) {
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class am = ((a % pz) + pz) % pz;
    mpz_class r(static_cast<unsigned long>(sqrt_mod_prime(mpz_get_ui(am.get_mpz_t()), p)));
    mpz_class mod = pz;
    for (unsigned e = 1; e < k; ++e) {
        mod *= pz;
        // Newton step: r <- r - (r^2 - a) / (2r) mod p^(e+1)
        mpz_class two_r = 2 * r;
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), mod.get_mpz_t());
        r = r - (r * r - a) * inv;
        r = ((r % mod) + mod) % mod;
    }
    return r;
}

std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& m) {
    mpz_class mod = abs(m);
    if (mod == 1) return mpz_class(0);
    mpz_class result = 0, acc = 1;
    for (auto [p, e] : factor(mod)) {
        if (e != 1) fail(ErrorKind::Precondition, "modulus not squarefree");
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class am = ((a % pz) + pz) % pz;
        uint64_t r;
        if (p == 2) {
            r = mpz_get_ui(am.get_mpz_t());
        } else {
            if (am != 0 && legendre(am, p) != 1) return std::nullopt;
            r = sqrt_mod_prime(mpz_get_ui(am.get_mpz_t()), p);
        }
        // CRT merge
        mpz_class rz(static_cast<unsigned long>(r));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), acc.get_mpz_t(), pz.get_mpz_t());
        mpz_class k = ((rz - result) * inv) % pz;
        if (k < 0) k += pz;
        result += acc * k;
        acc *= pz;
    }
    result %= acc;
    if (result < 0) result += acc;
    if (2 * result > acc) result -= acc;
    return result;
}

int valuation(const mpz_class& n, uint64_t p) {
    if (n == 0) fail(ErrorKind::Precondition, "valuation of zero");
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class v = n;
    int e = 0;
    while (mpz_divisible_p(v.get_mpz_t(), pz.get_mpz_t())) {
        v /= pz;
        ++e;
    }
    return e;
}

int valuation(const Rational& q, uint64_t p) { return valuation(q.numerator(), p) - valuation(q.denominator(), p); }

std::pair<mpz_class, Rational> squarefree_decompose(const Rational& q) {
    if (q.is_zero()) fail(ErrorKind::Precondition, "square class of zero");
    std::map<uint64_t, int> exps;
    for (auto [p, e] : factor(q.numerator())) exps[p] += e;
    for (auto [p, e] : factor(q.denominator())) exps[p] -= e;
    mpz_class core = q.sign() < 0 ? -1 : 1;
    mpq_class s = 1;
    for (auto [p, e] : exps) {
        mpz_class pz(static_cast<unsigned long>(p));
        int odd = ((e % 2) + 2) % 2;
        if (odd) core *= pz;
        int half = (e - odd) / 2;
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(half >= 0 ? half : -half));
        if (half >= 0) {
            s *= pw;
        } else {
            s /= pw;
        }
    }
    s.canonicalize();
    return {core, Rational(s)};
}

mpz_class squarefree_part(const Rational& q) { return squarefree_decompose(q).first; }

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    if (q.is_zero()) return Rational(0);
    mpz_class n = q.numerator(), d = q.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(rn, rd));
}

}  // namespace azulift::nt

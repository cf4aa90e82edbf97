#include "azulift/rational.hpp"

#include "azulift/error.hpp"

#include <cctype>
#include <numeric>
#include <utility>

namespace azulift {

namespace {

constexpr int64_t kSmallLimit = int64_t{1} << 62;

inline bool fits(__int128 v) { return v > -static_cast<__int128>(kSmallLimit) && v < kSmallLimit; }

inline uint64_t abs64(int64_t v) { return v < 0 ? static_cast<uint64_t>(-v) : static_cast<uint64_t>(v); }

inline uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) return gcd_u64(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(int64_t v) : num_(0), den_(1) {
    if (fits(v)) {
        num_ = v;
    } else {
        den_ = 1;
        assign_big(mpq_class(static_cast<long>(v)));
    }
}

Rational::Rational(int64_t num, int64_t den) : num_(0), den_(1) {
    if (den == 0) fail(ErrorKind::Parse, "zero denominator");
    set_from_i128(num, den);
}

Rational::Rational(const mpq_class& q) : num_(0), den_(1) { assign_big(mpq_class(q)); }

Rational::Rational(const Rational& o) : num_(0), den_(1) {
    if (o.den_ == 0) {
        den_ = 0;
        big_ = new mpq_class(*o.big_);
    } else {
        num_ = o.num_;
        den_ = o.den_;
    }
}

Rational::Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_) {
    if (o.den_ == 0) {
        big_ = o.big_;
        o.den_ = 1;
        o.num_ = 0;
    }
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    if (o.den_ == 0) {
        if (den_ == 0) {
            *big_ = *o.big_;
        } else {
            big_ = new mpq_class(*o.big_);
            den_ = 0;
        }
    } else {
        if (den_ == 0) delete big_;
        num_ = o.num_;
        den_ = o.den_;
    }
    return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
    if (this == &o) return *this;
    if (den_ == 0) delete big_;
    den_ = o.den_;
    if (o.den_ == 0) {
        big_ = o.big_;
        o.den_ = 1;
        o.num_ = 0;
    } else {
        num_ = o.num_;
    }
    return *this;
}

Rational::~Rational() {
    if (den_ == 0) delete big_;
}

void Rational::assign_big(mpq_class&& q) {
    q.canonicalize();
    if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 62 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 62) {
        int64_t n = mpz_get_si(q.get_num_mpz_t());
        int64_t d = mpz_get_si(q.get_den_mpz_t());
        if (den_ == 0) delete big_;
        num_ = n;
        den_ = d;
        return;
    }
    if (den_ == 0) {
        *big_ = std::move(q);
    } else {
        big_ = new mpq_class(std::move(q));
        den_ = 0;
    }
}

void Rational::set_from_i128(__int128 num, __int128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    unsigned __int128 un = num < 0 ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
    unsigned __int128 g = gcd_u128(un, static_cast<unsigned __int128>(den));
    if (g > 1) {
        num /= static_cast<__int128>(g);
        den /= static_cast<__int128>(g);
    }
    if (num == 0) den = 1;
    if (fits(num) && fits(den)) {
        if (den_ == 0) delete big_;
        num_ = static_cast<int64_t>(num);
        den_ = static_cast<int64_t>(den);
        return;
    }
    mpq_class q;
    q.get_num() = from_i128(num);
    q.get_den() = from_i128(den);
    assign_big(std::move(q));
}

mpq_class Rational::to_mpq() const {
    if (den_ == 0) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
}

mpz_class Rational::numerator() const { return to_mpq().get_num(); }
mpz_class Rational::denominator() const { return to_mpq().get_den(); }

bool Rational::is_integer() const {
    if (den_ != 0) return den_ == 1;
    return big_->get_den() == 1;
}

int Rational::sign() const {
    if (den_ != 0) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
}

std::string Rational::str() const {
    if (den_ != 0) {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    return big_->get_str();
}

Rational Rational::parse(std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view ns = text.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(ns) || !valid_int(ds) || ds[0] == '-' ) fail(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
    std::string nstr(ns[0] == '+' ? ns.substr(1) : ns);
    std::string dstr(ds[0] == '+' ? ds.substr(1) : ds);
    mpq_class q;
    q.get_num().set_str(nstr, 10);
    q.get_den().set_str(dstr, 10);
    if (q.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational r;
    r.assign_big(std::move(q));
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ != 0 && o.den_ != 0) {
        if (den_ == o.den_) {
            __int128 n = static_cast<__int128>(num_) + o.num_;
            if (den_ == 1) {
                if (fits(n)) {
                    num_ = static_cast<int64_t>(n);
                    return *this;
                }
                set_from_i128(n, 1);
                return *this;
            }
            set_from_i128(n, den_);
            return *this;
        }
        // Knuth's reduced-input addition.
        uint64_t g = gcd_u64(static_cast<uint64_t>(den_), static_cast<uint64_t>(o.den_));
        __int128 t = static_cast<__int128>(num_) * (o.den_ / static_cast<int64_t>(g)) +
                     static_cast<__int128>(o.num_) * (den_ / static_cast<int64_t>(g));
        if (g == 1) {
            __int128 d = static_cast<__int128>(den_) * o.den_;
            if (t == 0) {
                num_ = 0;
                den_ = 1;
                return *this;
            }
            if (fits(t) && fits(d)) {
                num_ = static_cast<int64_t>(t);
                den_ = static_cast<int64_t>(d);
                return *this;
            }
            set_from_i128(t, d);
            return *this;
        }
        unsigned __int128 ut = t < 0 ? static_cast<unsigned __int128>(-t) : static_cast<unsigned __int128>(t);
        uint64_t g2 = gcd_u64(static_cast<uint64_t>(ut % g), g);
        if (t == 0) g2 = g;
        __int128 d = static_cast<__int128>(den_ / static_cast<int64_t>(g)) * (o.den_ / static_cast<int64_t>(g2));
        t /= static_cast<__int128>(g2);
        if (t == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (fits(t) && fits(d)) {
            num_ = static_cast<int64_t>(t);
            den_ = static_cast<int64_t>(d);
            return *this;
        }
        set_from_i128(t, d);
        return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational Rational::operator-() const {
    if (den_ != 0) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return Rational(mpq_class(-*big_));
}

Rational& Rational::operator-=(const Rational& o) {
    if (o.den_ != 0) {
        Rational neg;
        neg.num_ = -o.num_;
        neg.den_ = o.den_;
        return *this += neg;
    }
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    if (den_ != 0 && o.den_ != 0) {
        if (num_ == 0) return *this;
        if (o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && o.den_ == 1) {
            __int128 n = static_cast<__int128>(num_) * o.num_;
            if (fits(n)) {
                num_ = static_cast<int64_t>(n);
                return *this;
            }
            set_from_i128(n, 1);
            return *this;
        }
        int64_t g1 = static_cast<int64_t>(gcd_u64(abs64(num_), static_cast<uint64_t>(o.den_)));
        int64_t g2 = static_cast<int64_t>(gcd_u64(abs64(o.num_), static_cast<uint64_t>(den_)));
        __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
        __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<int64_t>(n);
            den_ = static_cast<int64_t>(d);
            return *this;
        }
        set_from_i128(n, d);
        return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorKind::NotUnit, "division by zero");
    if (o.den_ != 0) {
        Rational inv;
        if (o.num_ < 0) {
            inv.num_ = -o.den_;
            inv.den_ = -o.num_;
        } else {
            inv.num_ = o.den_;
            inv.den_ = o.num_;
        }
        return *this *= inv;
    }
    assign_big(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.den_ != 0 || b.den_ != 0) return false;  // canonical forms differ in size
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ != 0 && b.den_ != 0) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

}  // namespace azulift

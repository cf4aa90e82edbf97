#include "azulift/tower.hpp"

#include "azulift/numtheory.hpp"

#include <bit>
#include <sstream>

namespace azulift {

// ---------------------------------------------------------------- Field

Field Field::prime(uint64_t p) {
    if (p == 2 || !nt::is_prime(p)) fail(ErrorKind::Parse, "characteristic must be an odd prime, got " + std::to_string(p));
    if (p >= (uint64_t{1} << 31)) fail(ErrorKind::Parse, "prime field characteristic too large");
    return Field(p);
}

Field Field::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.rfind("Fp:", 0) == 0) {
        std::string digits = text.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::Parse, "bad field '" + text + "'");
        if (digits.size() > 12) fail(ErrorKind::Parse, "prime field characteristic too large");
        return prime(std::stoull(digits));
    }
    fail(ErrorKind::Parse, "unknown field '" + text + "' (expected Q or Fp:<p>)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar Field::from_int(int64_t v) const {
    if (p_ == 0) return Scalar(v);
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0) m += static_cast<int64_t>(p_);
    return Scalar(m);
}

Scalar Field::from_rational(const Rational& q) const {
    if (p_ == 0) return q;
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class n = q.numerator() % pz, d = q.denominator() % pz;
    if (d == 0) fail(ErrorKind::NotUnit, "denominator divisible by the characteristic");
    if (n < 0) n += pz;
    uint64_t r = nt::mulmod(mpz_get_ui(n.get_mpz_t()), nt::invmod(mpz_get_ui(d.get_mpz_t()), p_), p_);
    return Scalar(static_cast<int64_t>(r));
}

Scalar Field::inv(const Scalar& a) const {
    if (a.is_zero()) fail(ErrorKind::NotUnit, "inverse of zero");
    if (p_ == 0) return Scalar(1) / a;
    return Scalar(static_cast<int64_t>(nt::invmod(static_cast<uint64_t>(a.small_num()), p_)));
}

bool Field::is_square(const Scalar& a) const {
    if (a.is_zero()) return true;
    if (p_ == 0) return nt::rational_sqrt(a).has_value();
    return nt::powmod(static_cast<uint64_t>(a.small_num()), (p_ - 1) / 2, p_) == 1;
}

// ---------------------------------------------------------------- Tower

Tower::Tower(Field k, int n, std::vector<Vec> radicands) : field_(k), n_(n), radicands_(std::move(radicands)) {
    const size_t masks = rank_over_base();
    pair_coef_.resize(masks * masks);
    for (size_t a = 0; a < masks; ++a) {
        for (size_t b = 0; b < masks; ++b) {
            size_t common = a & b;
            if (common == 0) continue;
            Vec acc(static_cast<size_t>(n_));
            acc[0] = field_.from_int(1);
            for (size_t i = 0; i < radicands_.size(); ++i) {
                if (!(common >> i & 1)) continue;
                Vec next(static_cast<size_t>(n_));
                tmul(next.data(), acc.data(), radicands_[i].data());
                acc = std::move(next);
            }
            pair_coef_[a * masks + b] = std::move(acc);
        }
    }
}

TowerPtr Tower::field(const Field& k) { return TowerPtr(new Tower(k, 1, {})); }

TowerPtr Tower::truncated(const Field& k, int n) {
    if (n < 1) fail(ErrorKind::Precondition, "truncation order must be >= 1");
    return TowerPtr(new Tower(k, n, {}));
}

TowerPtr Tower::adjoin_sqrts(const TowerPtr& base, const std::vector<Vec>& radicands) {
    if (!base->is_local_base()) fail(ErrorKind::Precondition, "adjoin_sqrts expects a field or truncated ring as base");
    if (radicands.size() > 8) fail(ErrorKind::Precondition, "too many radicals");
    for (const Vec& r : radicands) {
        if (r.size() != base->width()) fail(ErrorKind::BaseMismatch, "radicand not an element of the base");
        if (!base->is_unit(r)) fail(ErrorKind::NotUnit, "radicand is not a unit");
    }
    return TowerPtr(new Tower(base->field_, base->n_, radicands));
}

std::string Tower::describe() const {
    std::ostringstream os;
    os << field_.name();
    if (n_ > 1) os << "[eps]/(eps^" << n_ << ")";
    if (!radicands_.empty()) os << "(" << radicands_.size() << " sqrts)";
    return os.str();
}

TowerPtr Tower::base() const { return TowerPtr(new Tower(field_, n_, {})); }

TowerPtr Tower::residue_tower() const {
    std::vector<Vec> res;
    for (const Vec& r : radicands_) res.push_back(Vec{r[0]});
    return TowerPtr(new Tower(field_, 1, std::move(res)));
}

TowerPtr Tower::drop_last_sqrt() const {
    if (radicands_.empty()) fail(ErrorKind::Precondition, "no radical to drop");
    std::vector<Vec> res(radicands_.begin(), radicands_.end() - 1);
    return TowerPtr(new Tower(field_, n_, std::move(res)));
}

bool Tower::same_as(const Tower& o) const {
    return this == &o || (field_ == o.field_ && n_ == o.n_ && radicands_ == o.radicands_);
}

Vec Tower::one() const { return from_scalar(field_.from_int(1)); }

Vec Tower::from_scalar(const Scalar& s) const {
    Vec v(width());
    v[0] = s;
    return v;
}

Vec Tower::from_base(CSpan t) const {
    if (t.size() != static_cast<size_t>(n_)) fail(ErrorKind::BaseMismatch, "not an element of T");
    Vec v(width());
    std::copy(t.begin(), t.end(), v.begin());
    return v;
}

Vec Tower::eps_power(int k) const {
    Vec v(width());
    if (k < n_) v[static_cast<size_t>(k)] = field_.from_int(1);
    return v;
}

Vec Tower::sqrt_gen(int i) const {
    Vec v(width());
    v[(size_t{1} << i) * static_cast<size_t>(n_)] = field_.from_int(1);
    return v;
}

bool Tower::is_zero(CSpan a) const {
    for (const Scalar& s : a)
        if (!s.is_zero()) return false;
    return true;
}

bool Tower::equal(CSpan a, CSpan b) const { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }

void Tower::add_into(MSpan acc, CSpan a) const {
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) field_.add_to(acc[i], a[i]);
}

void Tower::sub_into(MSpan acc, CSpan a) const {
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) acc[i] = field_.sub(acc[i], a[i]);
}

void Tower::tmul_add(Scalar* acc, const Scalar* a, const Scalar* b) const {
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j < n_; ++j) field_.add_mul(acc[i + j], a[i], b[j]);
    }
}

void Tower::tmul(Scalar* out, const Scalar* a, const Scalar* b) const {
    for (int i = 0; i < n_; ++i) out[i] = Scalar();
    tmul_add(out, a, b);
}

void Tower::mul_add(MSpan acc, CSpan a, CSpan b) const {
    if (radicands_.empty()) {
        tmul_add(acc.data(), a.data(), b.data());
        return;
    }
    const size_t masks = rank_over_base();
    const size_t n = static_cast<size_t>(n_);
    Vec tmp(n);
    for (size_t ma = 0; ma < masks; ++ma) {
        const Scalar* pa = a.data() + ma * n;
        bool za = true;
        for (size_t k = 0; k < n; ++k)
            if (!pa[k].is_zero()) {
                za = false;
                break;
            }
        if (za) continue;
        for (size_t mb = 0; mb < masks; ++mb) {
            const Scalar* pb = b.data() + mb * n;
            Scalar* out = acc.data() + (ma ^ mb) * n;
            const Vec& coef = pair_coef_[ma * masks + mb];
            if (coef.empty()) {
                tmul_add(out, pa, pb);
            } else {
                tmul(tmp.data(), pa, pb);
                tmul_add(out, tmp.data(), coef.data());
            }
        }
    }
}

Vec Tower::add(CSpan a, CSpan b) const {
    Vec r(a.begin(), a.end());
    add_into(r, b);
    return r;
}

Vec Tower::sub(CSpan a, CSpan b) const {
    Vec r(a.begin(), a.end());
    sub_into(r, b);
    return r;
}

Vec Tower::neg(CSpan a) const {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = field_.neg(a[i]);
    return r;
}

Vec Tower::mul(CSpan a, CSpan b) const {
    Vec r(width());
    mul_add(r, a, b);
    return r;
}

Vec Tower::scale(CSpan a, const Scalar& s) const {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = field_.mul(a[i], s);
    return r;
}

Vec Tower::tinv(CSpan a) const {
    if (a[0].is_zero()) fail(ErrorKind::NotUnit, "residue is zero");
    const size_t n = static_cast<size_t>(n_);
    Scalar a0inv = field_.inv(a[0]);
    // a = a0 (1 + m), m nilpotent; a^{-1} = a0^{-1} sum_k (-m)^k
    Vec negm(n);
    for (size_t k = 1; k < n; ++k) negm[k] = field_.neg(field_.mul(a[k], a0inv));
    Vec sum(n), power(n);
    sum[0] = field_.from_int(1);
    power[0] = field_.from_int(1);
    for (size_t k = 1; k < n; ++k) {
        Vec next(n);
        tmul(next.data(), power.data(), negm.data());
        power = std::move(next);
        for (size_t i = 0; i < n; ++i) field_.add_to(sum[i], power[i]);
    }
    for (auto& s : sum) s = field_.mul(s, a0inv);
    return sum;
}

bool Tower::is_unit(CSpan a) const {
    if (radicands_.empty()) return !a[0].is_zero();
    Vec nrm = norm(a);
    return !nrm[0].is_zero();
}

Vec Tower::inv(CSpan a) const {
    if (radicands_.empty()) return tinv(a);
    // y_0 = a, y_i = y_{i-1} sigma_i(y_{i-1}); a^{-1} = y_s^{-1} prod_i sigma_i(y_{i-1}).
    Vec y(a.begin(), a.end());
    Vec cofactor = one();
    for (size_t i = 0; i < radicands_.size(); ++i) {
        Vec conj = galois(uint32_t{1} << i, y);
        cofactor = mul(cofactor, conj);
        y = mul(y, conj);
    }
    if (!in_base(y)) fail(ErrorKind::Degenerate, "norm left the base ring");
    Vec ninv = from_base(tinv(base_part(y)));
    return mul(cofactor, ninv);
}

Vec Tower::residue(CSpan a) const {
    const size_t masks = rank_over_base();
    Vec r(masks);
    for (size_t m = 0; m < masks; ++m) r[m] = a[m * static_cast<size_t>(n_)];
    return r;
}

Vec Tower::lift_constant(CSpan r) const {
    const size_t masks = rank_over_base();
    if (r.size() != masks) fail(ErrorKind::BaseMismatch, "not a residue element of this tower");
    Vec v(width());
    for (size_t m = 0; m < masks; ++m) v[m * static_cast<size_t>(n_)] = r[m];
    return v;
}

Vec Tower::galois(uint32_t sigma, CSpan a) const {
    Vec r(a.begin(), a.end());
    const size_t masks = rank_over_base();
    const size_t n = static_cast<size_t>(n_);
    for (size_t m = 0; m < masks; ++m) {
        if (std::popcount(static_cast<uint32_t>(m) & sigma) % 2 == 0) continue;
        for (size_t k = 0; k < n; ++k) r[m * n + k] = field_.neg(r[m * n + k]);
    }
    return r;
}

Vec Tower::norm(CSpan a) const {
    Vec y(a.begin(), a.end());
    for (size_t i = 0; i < radicands_.size(); ++i) y = mul(y, galois(uint32_t{1} << i, y));
    if (!in_base(y)) fail(ErrorKind::Degenerate, "norm left the base ring");
    return base_part(y);
}

bool Tower::in_base(CSpan a) const {
    for (size_t i = static_cast<size_t>(n_); i < a.size(); ++i)
        if (!a[i].is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- RingElement

RingElement::RingElement(TowerPtr ring, Vec coords) : ring_(std::move(ring)), c_(std::move(coords)) {
    if (c_.size() != ring_->width()) fail(ErrorKind::BaseMismatch, "coordinate vector has wrong length");
}

namespace {
void require_same(const RingElement& a, const RingElement& b) {
    if (!a.ring()->same_as(*b.ring())) fail(ErrorKind::BaseMismatch, "elements live in different towers");
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return {a.ring_, a.ring_->add(a.c_, b.c_)};
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return {a.ring_, a.ring_->sub(a.c_, b.c_)};
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return {a.ring_, a.ring_->mul(a.c_, b.c_)};
}

bool operator==(const RingElement& a, const RingElement& b) { return a.ring_->same_as(*b.ring_) && a.c_ == b.c_; }

}  // namespace azulift

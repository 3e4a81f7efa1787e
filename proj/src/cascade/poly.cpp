#include "barrierlab/cascade/poly.hpp"

#include <algorithm>
#include <sstream>

namespace barrierlab::cascade {

// ---------- KPoly ----------

void KPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

KPoly KPoly::from_coeffs(std::vector<BigInt> c) {
    KPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

KPoly& KPoly::operator+=(const KPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

KPoly& KPoly::operator-=(const KPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

KPoly KPoly::operator*(const KPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return from_coeffs(std::move(r));
}

KPoly KPoly::operator-() const {
    KPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

KPoly& KPoly::operator*=(const BigInt& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= c;
    return *this;
}

BigInt KPoly::eval_int(long k) const {
    BigInt r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * k + c_[i];
    return r;
}

Rational KPoly::eval(const Rational& k) const {
    Rational r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * k + Rational(c_[i]);
    return r;
}

KPoly KPoly::shifted(long m) const {
    // Horner in (k + m)
    KPoly shift = linear(BigInt(m), BigInt(1));
    KPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) {
        r = r * shift;
        r += KPoly(c_[i]);
    }
    return r;
}

bool KPoly::coeffs_nonneg() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& c) { return c >= 0; });
}

std::string KPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        BigInt c = c_[i];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        BigInt a = scalar_abs(c);
        if (a != 1 || i == 0) os << a.str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

// ---------- GammaPoly ----------

void GammaPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

GammaPoly GammaPoly::from_coeffs(std::vector<BigInt> c) {
    GammaPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

GammaPoly GammaPoly::monomial(BigInt c, long e) {
    GammaPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<std::size_t>(e) + 1, BigInt(0));
        p.c_.back() = std::move(c);
    }
    return p;
}

GammaPoly& GammaPoly::operator+=(const GammaPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

GammaPoly GammaPoly::operator-(const GammaPoly& o) const {
    GammaPoly r = *this;
    if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
    r.trim();
    return r;
}

GammaPoly GammaPoly::operator*(const GammaPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return from_coeffs(std::move(r));
}

GammaPoly GammaPoly::pow(long e) const {
    GammaPoly r = monomial(BigInt(1), 0);
    GammaPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

GammaPoly GammaPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return from_coeffs(std::move(r));
}

Rational GammaPoly::eval(const Rational& g) const {
    Rational r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + Rational(c_[i]);
    return r;
}

std::string GammaPoly::str() const {
    KPoly tmp = KPoly::from_coeffs(c_);
    return tmp.str("gamma");
}

Rational rat_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw Error("zero to a negative power");
        return Rational(1) / rat_pow(base, -e);
    }
    Rational r(1), b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// ---------- ExpPoly ----------

ExpPoly ExpPoly::term(KPoly c, int a, int b) {
    ExpPoly p;
    p.add_term(std::move(c), a, b);
    return p;
}

void ExpPoly::add_term(KPoly c, int a, int b) {
    if (a < -8 || a > 8) throw Error("exponent multiplier out of range: a=" + std::to_string(a));
    if (c.is_zero()) return;
    auto it = terms_.find({a, b});
    if (it == terms_.end()) {
        terms_.emplace(ExpKey{a, b}, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
    ExpPoly r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(c, key.a, key.b);
    return r;
}

ExpPoly ExpPoly::operator-(const ExpPoly& o) const {
    ExpPoly r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(-c, key.a, key.b);
    return r;
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly r;
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
    ExpPoly r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) r.add_term(c1 * c2, k1.a + k2.a, k1.b + k2.b);
    return r;
}

ExpPoly ExpPoly::times_monomial(const KPoly& c, int a, int b) const {
    ExpPoly r;
    for (const auto& [key, cc] : terms_) r.add_term(c * cc, key.a + a, key.b + b);
    return r;
}

ExpPoly ExpPoly::differentiate() const {
    ExpPoly r;
    for (const auto& [key, c] : terms_) {
        KPoly expo = KPoly::linear(BigInt(key.b), BigInt(key.a));
        r.add_term(expo * c, key.a, key.b - 1);
    }
    return r;
}

KPoly ExpPoly::at_gamma1() const {
    KPoly r;
    for (const auto& [key, c] : terms_) r += c;
    return r;
}

GammaPoly ExpPoly::collapse(long k) const {
    GammaPoly r;
    for (const auto& [key, c] : terms_) {
        long e = key.a * k + key.b;
        if (e < 0) throw Error("collapse would produce a negative exponent");
        r += GammaPoly::monomial(c.eval_int(k), e);
    }
    return r;
}

Rational ExpPoly::eval(const Rational& gamma, long k) const {
    Rational r(0);
    for (const auto& [key, c] : terms_)
        r += Rational(c.eval_int(k)) * rat_pow(gamma, key.a * k + key.b);
    return r;
}

std::string ExpPoly::first_difference(const ExpPoly& o) const {
    ExpPoly d = *this - o;
    if (d.is_zero()) return "";
    const auto& [key, c] = *d.terms_.begin();
    std::ostringstream os;
    os << "residual term (" << c.str() << ") * gamma^(" << key.a << "k"
       << (key.b >= 0 ? "+" : "") << key.b << ")";
    return os.str();
}

std::string ExpPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        os << "(" << it->second.str() << ")*gamma^(" << it->first.a << "k"
           << (it->first.b >= 0 ? "+" : "") << it->first.b << ")";
        first = false;
    }
    return os.str();
}

// ---------- XiPoly ----------

void XiPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

XiPoly XiPoly::term(KPoly c, int gamma_pow, int xi_pow) {
    XiPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::make_pair(gamma_pow, xi_pow), std::move(c));
    return p;
}

XiPoly XiPoly::operator+(const XiPoly& o) const {
    XiPoly r = *this;
    for (const auto& [key, c] : o.terms_) {
        auto it = r.terms_.find(key);
        if (it == r.terms_.end())
            r.terms_.emplace(key, c);
        else
            it->second += c;
    }
    r.prune();
    return r;
}

XiPoly XiPoly::operator-(const XiPoly& o) const {
    XiPoly r = *this;
    for (const auto& [key, c] : o.terms_) {
        auto it = r.terms_.find(key);
        if (it == r.terms_.end())
            r.terms_.emplace(key, -c);
        else
            it->second -= c;
    }
    r.prune();
    return r;
}

XiPoly XiPoly::operator*(const XiPoly& o) const {
    XiPoly r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            auto key = std::make_pair(k1.first + k2.first, k1.second + k2.second);
            auto it = r.terms_.find(key);
            if (it == r.terms_.end())
                r.terms_.emplace(key, c1 * c2);
            else
                it->second += c1 * c2;
        }
    r.prune();
    return r;
}

XiPoly XiPoly::times(const KPoly& c) const {
    XiPoly r;
    for (const auto& [key, cc] : terms_) {
        KPoly p = cc * c;
        if (!p.is_zero()) r.terms_.emplace(key, std::move(p));
    }
    return r;
}

ExpPoly XiPoly::substitute_xi() const {
    ExpPoly r;
    for (const auto& [key, c] : terms_) r.add_term(c, key.second, key.first);
    return r;
}

Rational XiPoly::eval(const Rational& gamma, const Rational& xi, long k) const {
    Rational r(0);
    for (const auto& [key, c] : terms_)
        r += c.eval(Rational(k)) * rat_pow(gamma, key.first) * rat_pow(xi, key.second);
    return r;
}

} // namespace barrierlab::cascade

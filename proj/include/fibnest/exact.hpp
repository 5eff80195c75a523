#pragma once

// Exact rational scalars, distance to the nearest integer, and closed
// rational-endpoint subintervals of [0, 1].

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace fibnest {

/// Arbitrary-precision integer.
using Int = mpz_class;

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nonnegative remainder of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int pow10(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

/// Parses a base-10 integer; rejects anything but an optional sign and digits.
inline Int parse_int(std::string_view text) {
    std::string s(text);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("empty integer: '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer: '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Int(s, 10);
}

/// Exact rational in lowest terms with positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(int v) : v_(v) {}
    Rat(long v) : v_(v) {}
    Rat(const Int& v) : v_(v) {}
    template <class Op>
    Rat(const __gmp_expr<mpz_t, Op>& e) : v_(Int(e)) {}
    Rat(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Accepts "p/q" or a bare integer "p".
    static Rat parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rat(parse_int(text));
        return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    const mpq_class& mpq() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Int floor() const { return floor_div(v_.get_num(), v_.get_den()); }
    Int ceil() const { return ceil_div(v_.get_num(), v_.get_den()); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Always "p/q", including integers ("3/1").
    std::string str() const { return num().get_str() + "/" + den().get_str(); }

    /// Fixed-point rendering with `digits` places, round-half-even.
    std::string decimal(unsigned digits) const {
        Int n = num();
        const Int d = den();
        const bool negative = n < 0;
        if (negative) n = -n;
        Int scaled = n * pow10(digits);
        Int q = floor_div(scaled, d);
        Int r = scaled - q * d;
        Int twice = 2 * r;
        if (twice > d || (twice == d && mpz_odd_p(q.get_mpz_t()))) q += 1;
        return format_fixed(q, digits, negative && q != 0);
    }

    /// Renders q / 10^digits as a decimal string.
    static std::string format_fixed(const Int& q, unsigned digits, bool negative) {
        std::string s = q.get_str();
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        std::string out = negative ? "-" : "";
        out += s.substr(0, s.size() - digits);
        if (digits > 0) {
            out += '.';
            out += s.substr(s.size() - digits);
        }
        return out;
    }

private:
    mpq_class v_;
};

inline Rat abs(const Rat& q) { return q.sign() < 0 ? -q : q; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// q - floor(q), in [0, 1).
inline std::ostream& operator<<(std::ostream& os, const Rat& q) { return os << q.str(); }

inline Rat frac(const Rat& q) { return q - Rat(q.floor()); }

/// ||q||: distance to the nearest integer, in [0, 1/2].
inline Rat dist_int(const Rat& q) {
    Rat f = frac(q);
    Rat g = Rat(1) - f;
    return g < f ? g : f;
}

/// Closed interval [lo, hi] with 0 <= lo <= hi <= 1.
class UnitInterval {
public:
    UnitInterval() : lo_(0), hi_(1) {}
    UnitInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ < Rat(0) || hi_ > Rat(1) || hi_ < lo_) {
            throw std::invalid_argument("UnitInterval: need 0 <= lo <= hi <= 1, got [" + lo_.str() +
                                        ", " + hi_.str() + "]");
        }
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    Rat length() const { return hi_ - lo_; }

    bool contains(const Rat& q) const { return lo_ <= q && q <= hi_; }
    bool contains(const UnitInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    friend bool operator==(const UnitInterval&, const UnitInterval&) = default;

private:
    Rat lo_;
    Rat hi_;
};

enum class Anchor { left, middle };

/// Subinterval of `in` with length keep_fraction * len(in), placed at the
/// left end or centered.
inline UnitInterval trim(const UnitInterval& in, const Rat& keep_fraction, Anchor anchor) {
    if (keep_fraction <= Rat(0) || keep_fraction > Rat(1)) {
        throw std::invalid_argument("trim: keep_fraction must lie in (0, 1], got " + keep_fraction.str());
    }
    const Rat kept = keep_fraction * in.length();
    Rat lo = in.lo();
    if (anchor == Anchor::middle) lo += (in.length() - kept) / Rat(2);
    return UnitInterval(lo, lo + kept);
}

}  // namespace fibnest

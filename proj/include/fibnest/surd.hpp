#pragma once

// Numbers a + b*sqrt(5) with rational a, b. Every threshold in the
// verification layer (phi, phi^2, 2/(3+sqrt5)) lives in this field, so
// comparisons against it are decided by integer arithmetic alone.

#include "fibnest/exact.hpp"

#include <string>

namespace fibnest {

class Sqrt5Surd {
public:
    Sqrt5Surd() = default;
    Sqrt5Surd(Rat rational) : a_(std::move(rational)), b_(0) {}
    Sqrt5Surd(Rat rational, Rat sqrt5_coeff) : a_(std::move(rational)), b_(std::move(sqrt5_coeff)) {}

    const Rat& rational_part() const { return a_; }
    const Rat& sqrt5_part() const { return b_; }
    bool is_rational() const { return b_.sign() == 0; }

    /// Exact sign. a + b*sqrt5 = 0 only when a = b = 0.
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // Opposite signs: the larger of a^2 and 5 b^2 wins.
        return (a_ * a_ > Rat(5) * b_ * b_) ? sa : sb;
    }

    Sqrt5Surd operator-() const { return {-a_, -b_}; }
    friend Sqrt5Surd operator+(const Sqrt5Surd& x, const Sqrt5Surd& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend Sqrt5Surd operator-(const Sqrt5Surd& x, const Sqrt5Surd& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend Sqrt5Surd operator*(const Sqrt5Surd& x, const Sqrt5Surd& y) {
        return {x.a_ * y.a_ + Rat(5) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    /// Division via the conjugate a - b*sqrt5.
    friend Sqrt5Surd operator/(const Sqrt5Surd& x, const Sqrt5Surd& y) {
        const Rat norm = y.a_ * y.a_ - Rat(5) * y.b_ * y.b_;
        if (norm.sign() == 0) throw std::domain_error("Sqrt5Surd: division by zero");
        const Sqrt5Surd num = x * Sqrt5Surd(y.a_, -y.b_);
        return {num.a_ / norm, num.b_ / norm};
    }

    friend bool operator==(const Sqrt5Surd& x, const Sqrt5Surd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend std::strong_ordering operator<=>(const Sqrt5Surd& x, const Sqrt5Surd& y) {
        const int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Round-half-even fixed-point rendering. Ties can only occur for a
    /// rational value, which defers to Rat::decimal.
    std::string decimal(unsigned digits) const {
        if (is_rational()) return a_.decimal(digits);
        if (sign() < 0) return "-" + (-*this).decimal(digits);
        const Int scale = pow10(digits);
        const Sqrt5Surd scaled(a_ * Rat(scale), b_ * Rat(scale));
        Int n = estimate_floor(scaled);
        while ((scaled - Sqrt5Surd(Rat(n))).sign() < 0) n -= 1;
        while ((scaled - Sqrt5Surd(Rat(n + 1))).sign() >= 0) n += 1;
        if ((scaled - Sqrt5Surd(Rat(n) + Rat(1, 2))).sign() > 0) n += 1;
        return Rat::format_fixed(n, digits, false);
    }

    std::string str() const {
        if (is_rational()) return a_.str();
        return a_.str() + (b_.sign() < 0 ? " - " : " + ") + abs(b_).str() + "*sqrt5";
    }

private:
    // Within a couple of units of floor(x); decimal() fixes it up exactly.
    static Int estimate_floor(const Sqrt5Surd& x) {
        const Rat& b = x.b_;
        Int radicand = 5 * b.num() * b.num();
        Int root;
        mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
        Int part = floor_div(root, b.den());
        if (b.sign() < 0) part = -part;
        return x.a_.floor() + part;
    }

    Rat a_;
    Rat b_;
};

/// phi = (1 + sqrt5)/2.
inline Sqrt5Surd golden_ratio() { return {Rat(1, 2), Rat(1, 2)}; }

/// phi^2 = phi + 1 = (3 + sqrt5)/2.
inline Sqrt5Surd golden_ratio_squared() { return {Rat(3, 2), Rat(1, 2)}; }

/// 2/(3 + sqrt5) = phi^-2 = (3 - sqrt5)/2 = 0.381966...
inline Sqrt5Surd littlewood_constant() { return {Rat(3, 2), Rat(-1, 2)}; }

inline constexpr const char* kLittlewoodConstantLabel = "2/(3+sqrt5)";

}  // namespace fibnest

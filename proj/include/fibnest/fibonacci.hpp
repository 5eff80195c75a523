#pragma once

// Fibonacci numbers (F_1 = F_2 = 1), the golden convergents F_{n-1}/F_n,
// continued fraction expansion, and Zeckendorf digits.

#include "fibnest/exact.hpp"

#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibnest {

namespace detail {

// Growable memo of F_0, F_1, ..., shared by all callers.
class FibTable {
public:
    static FibTable& instance() {
        static FibTable table;
        return table;
    }

    Int get(int k) {
        {
            std::shared_lock lock(mutex_);
            if (static_cast<std::size_t>(k) < values_.size()) return values_[k];
        }
        std::unique_lock lock(mutex_);
        while (values_.size() <= static_cast<std::size_t>(k)) {
            const std::size_t s = values_.size();
            values_.push_back(values_[s - 1] + values_[s - 2]);
        }
        return values_[k];
    }

private:
    FibTable() : values_{Int(0), Int(1)} {}

    std::shared_mutex mutex_;
    std::vector<Int> values_;
};

}  // namespace detail

/// F_k for k >= 1. k = 0 is rejected so that indices never drift.
inline Int fib(int k) {
    if (k < 1) throw std::invalid_argument("fib: index must be >= 1, got " + std::to_string(k));
    return detail::FibTable::instance().get(k);
}

/// Smallest k with F_k >= bound.
inline int fib_index_at_least(const Int& bound) {
    if (bound < 1) throw std::invalid_argument("fib_index_at_least: bound must be >= 1");
    int k = 1;
    while (fib(k) < bound) ++k;
    return k;
}

/// F_{n-1}/F_n = [0; 1, ..., 1] (n - 1 ones).
inline Rat golden_convergent(int n) {
    if (n < 2) throw std::invalid_argument("golden_convergent: n must be >= 2");
    return Rat(fib(n - 1), fib(n));
}

/// Canonical continued fraction [0; a_1, ..., a_m] of q in (0, 1), with the
/// leading 0 included and a_m >= 2 whenever m > 1.
inline std::vector<Int> cf_expand(const Rat& q) {
    if (q <= Rat(0) || q >= Rat(1)) {
        throw std::invalid_argument("cf_expand: value must lie in (0, 1), got " + q.str());
    }
    std::vector<Int> quotients;
    Int p = q.num();
    Int d = q.den();
    while (d != 0) {
        Int a = floor_div(p, d);
        quotients.push_back(a);
        Int r = p - a * d;
        p = d;
        d = r;
    }
    return quotients;
}

/// Rebuilds [a_0; a_1, ..., a_m].
inline Rat cf_value(const std::vector<Int>& quotients) {
    if (quotients.empty()) throw std::invalid_argument("cf_value: empty expansion");
    Rat v(quotients.back());
    for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) v = Rat(*it) + Rat(1) / v;
    return v;
}

/// Zeckendorf digits: strictly decreasing Fibonacci indices >= 2, no two adjacent.
struct ZeckendorfRep {
    std::vector<int> indices;

    Int value() const {
        Int s = 0;
        for (int i : indices) s += fib(i);
        return s;
    }

    bool well_formed() const {
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] < 2) return false;
            if (i > 0 && indices[i - 1] <= indices[i] + 1) return false;
        }
        return true;
    }

    friend bool operator==(const ZeckendorfRep&, const ZeckendorfRep&) = default;
};

inline ZeckendorfRep zeckendorf(Int m) {
    if (m < 0) throw std::invalid_argument("zeckendorf: negative input");
    ZeckendorfRep rep;
    if (m == 0) return rep;
    int k = 2;
    while (fib(k + 1) <= m) ++k;
    for (; k >= 2 && m > 0; --k) {
        Int f = fib(k);
        if (f <= m) {
            rep.indices.push_back(k);
            m -= f;
            --k;  // skip the neighbour
        }
    }
    return rep;
}

/// gcd(F_m, F_n), computed from the values. Equals F_{gcd(m, n)}.
inline Int fib_gcd(int m, int n) { return gcd(fib(m), fib(n)); }

}  // namespace fibnest

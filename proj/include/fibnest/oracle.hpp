#pragma once

// Exhaustive exact checks of the inequalities behind the Littlewood lower
// bound for the constructed pair: residue min-products, the non-convergent
// gap, the convergent gap, the certified bound for (alpha, beta) with an
// explicit error budget, and star discrepancy of {F_{n-1} x / F_n}.

#include "fibnest/exact.hpp"
#include "fibnest/fibonacci.hpp"
#include "fibnest/nest_builder.hpp"
#include "fibnest/report.hpp"
#include "fibnest/surd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fibnest {

struct ScanOptions {
    /// Largest F_n (residue count) a scan accepts.
    std::int64_t cap = 1'000'000;
    /// Worker count; results do not depend on it.
    unsigned threads = 1;
};

namespace detail {

inline std::int64_t checked_modulus(int n, const ScanOptions& opts, const char* who) {
    if (opts.cap > (std::int64_t{1} << 31)) throw std::invalid_argument(std::string(who) + ": scan cap above 2^31");
    const Int fn = fib(n);
    if (fn > opts.cap) {
        throw std::invalid_argument(std::string(who) + ": F_" + std::to_string(n) + " = " + fn.get_str() +
                                    " exceeds the scan cap " + std::to_string(opts.cap));
    }
    return fn.get_si();
}

// Minimum of key(x) over x in [first, last), ties to the smallest x. Each
// worker takes a contiguous block and blocks are reduced in order, so the
// result is independent of the thread count.
template <class Key, class KeyFn>
std::pair<Key, std::int64_t> argmin_scan(std::int64_t first, std::int64_t last, unsigned threads, KeyFn key) {
    if (first >= last) throw std::invalid_argument("argmin_scan: empty range");
    const std::int64_t count = last - first;
    const std::int64_t workers = std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count));
    std::vector<std::pair<Key, std::int64_t>> best(static_cast<std::size_t>(workers));

    auto scan_block = [&](std::int64_t w) {
        const std::int64_t lo = first + count * w / workers;
        const std::int64_t hi = first + count * (w + 1) / workers;
        Key best_key = key(lo);
        std::int64_t best_x = lo;
        for (std::int64_t x = lo + 1; x < hi; ++x) {
            Key k = key(x);
            if (k < best_key) {
                best_key = std::move(k);
                best_x = x;
            }
        }
        best[static_cast<std::size_t>(w)] = {std::move(best_key), best_x};
    };

    if (workers == 1) {
        scan_block(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(scan_block, w);
    }
    std::size_t pick = 0;
    for (std::size_t w = 1; w < best.size(); ++w) {
        if (best[w].first < best[pick].first) pick = w;
    }
    return best[pick];
}

inline std::int64_t residue_distance(std::int64_t r, std::int64_t m) { return std::min(r, m - r); }

}  // namespace detail

/// Minimizer of ||a x/F_n|| * ||a F_{n-1} x/F_n|| over 1 <= x < F_n.
struct MinRecord {
    int n = 0;
    Int a;
    Int x_min;
    /// The minimum product.
    Rat value;
    /// F_n * value.
    Rat scaled;
};

inline MinRecord min_product(int n, const Int& a, const ScanOptions& opts = {}) {
    if (n < 3) throw std::invalid_argument("min_product: n must be >= 3");
    const std::int64_t m = detail::checked_modulus(n, opts, "min_product");
    if (a < 1 || a >= m) throw std::invalid_argument("min_product: need 1 <= a < F_n");
    if (gcd(a, Int(m)) != 1) throw std::invalid_argument("min_product: a = " + a.get_str() + " is not coprime to F_n");
    const std::int64_t ai = a.get_si();
    const std::int64_t bi = (fib(n - 1).get_si() % m) * ai % m;

    // ||r/m|| = min(r, m - r)/m, so the product is an integer over m^2.
    auto key = [&](std::int64_t x) {
        return static_cast<std::uint64_t>(detail::residue_distance(ai * x % m, m)) *
               static_cast<std::uint64_t>(detail::residue_distance(bi * x % m, m));
    };
    const auto [num, x] = detail::argmin_scan<std::uint64_t>(1, m, opts.threads, key);
    MinRecord rec;
    rec.n = n;
    rec.a = a;
    rec.x_min = Int(static_cast<long>(x));
    rec.value = Rat(Int(static_cast<unsigned long>(num)), Int(m) * Int(m));
    rec.scaled = rec.value * Rat(Int(m));
    return rec;
}

/// epsilon with min = 1/(F_n (phi^2 + epsilon)), i.e. 1/scaled - phi^2.
inline Sqrt5Surd implied_q5_epsilon(const Rat& scaled) {
    return Sqrt5Surd(Rat(1) / scaled) - golden_ratio_squared();
}

/// Compares F_n * min against 2/(3+sqrt5) exactly.
inline BoundReport check_q5(const MinRecord& rec) {
    const Sqrt5Surd eps = implied_q5_epsilon(rec.scaled);
    const Sqrt5Surd required = eps.sign() > 0 ? eps : Sqrt5Surd(Rat(0));
    return BoundReport::make("q5 n=" + std::to_string(rec.n) + " a=" + rec.a.get_str(), rec.scaled,
                             littlewood_constant(), kLittlewoodConstantLabel, {rec.x_min},
                             "min product " + rec.value.str() + "; required epsilon " +
                                 required.decimal(kReportDigits));
}

inline BoundReport check_q5(int n, const Int& a, const ScanOptions& opts = {}) {
    return check_q5(min_product(n, a, opts));
}

/// min of x^2 |F_{n-1}/F_n - y/x| over reduced y/x with x <= x_max and
/// 0 <= y <= x, excluding {F_{k-1}/F_k : 1 <= k <= n} (which contains 0/1).
/// Passes when the minimum is at least 1/2. Witness is (y, x).
inline BoundReport check_q1(int n, std::int64_t x_max) {
    if (n < 3) throw std::invalid_argument("check_q1: n must be >= 3");
    const Int fn = fib(n);
    if (x_max < 2) throw std::invalid_argument("check_q1: x_max must be >= 2");
    if (fn <= x_max) throw std::invalid_argument("check_q1: x_max must be < F_n");
    const Int theta = fib(n - 1);

    std::vector<std::pair<std::int64_t, std::int64_t>> family;  // (x, y) = (F_k, F_{k-1})
    family.emplace_back(1, 0);
    for (int k = 2; k <= n; ++k) {
        const Int fk = fib(k);
        if (fk > x_max) break;
        family.emplace_back(fk.get_si(), fib(k - 1).get_si());
    }
    auto in_family = [&](std::int64_t x, std::int64_t y) {
        return std::find(family.begin(), family.end(), std::make_pair(x, y)) != family.end();
    };

    // x^2 |theta/F_n - y/x| = x |theta x - y F_n| / F_n; compare numerators.
    std::optional<Int> best;
    std::int64_t best_x = 0, best_y = 0;
    for (std::int64_t x = 1; x <= x_max; ++x) {
        const Int tx = theta * Int(static_cast<long>(x));
        for (std::int64_t y = 0; y <= x; ++y) {
            if (std::gcd(x, y) != 1 || in_family(x, y)) continue;
            Int v = tx - Int(static_cast<long>(y)) * fn;
            if (v < 0) v = -v;
            v *= static_cast<long>(x);
            if (!best || v < *best) {
                best = v;
                best_x = x;
                best_y = y;
            }
        }
    }
    if (!best) throw std::logic_error("check_q1: no candidate fraction");
    return BoundReport::make("q1 n=" + std::to_string(n) + " x_max=" + std::to_string(x_max), Rat(*best, fn),
                             Sqrt5Surd(Rat(1, 2)), "1/2", {Int(static_cast<long>(best_y)), Int(static_cast<long>(best_x))},
                             "minimizer " + std::to_string(best_y) + "/" + std::to_string(best_x));
}

struct GapRecord {
    int n = 0;
    int k = 0;
    /// |F_{n-1}/F_n - F_{k-1}/F_k| by subtraction.
    Rat gap;
    /// F_{n-k}/(F_n F_k).
    Rat closed_form;
    bool identity_holds = false;
    /// epsilon with gap = 1/(F_k^2 (phi + 1 + epsilon)).
    Sqrt5Surd implied_epsilon;
    /// gap >= 1/(F_k^2 (phi + 1)).
    BoundReport bound;
};

inline GapRecord gap_convergents(int n, int k) {
    if (k < 2 || k >= n) throw std::invalid_argument("gap_convergents: need 2 <= k < n");
    GapRecord g;
    g.n = n;
    g.k = k;
    g.gap = abs(golden_convergent(n) - golden_convergent(k));
    const Int fk = fib(k);
    g.closed_form = Rat(fib(n - k), fib(n) * fk);
    g.identity_holds = g.gap == g.closed_form;
    const Rat fk2(fk * fk);
    g.implied_epsilon = Sqrt5Surd(Rat(1) / (g.gap * fk2)) - golden_ratio_squared();
    g.bound = BoundReport::make("q2 n=" + std::to_string(n) + " k=" + std::to_string(k), g.gap,
                                littlewood_constant() * Sqrt5Surd(Rat(1) / fk2),
                                "1/(F_k^2 (phi+1)) with F_k = " + fk.get_str(), {},
                                "gap " + g.gap.str() + "; closed form " + g.closed_form.str() +
                                    (g.identity_holds ? " (equal)" : " (MISMATCH)") + "; implied epsilon " +
                                    g.implied_epsilon.decimal(kReportDigits));
    return g;
}

/// Worst-case deviations used to certify the bound for the true (alpha, beta).
struct ErrorBudget {
    Int x_max;
    /// (Q - 1) * err: bound on |x alpha - x p_alpha| (and for beta).
    Rat per_x_error;
    /// Bound on the change of the product; ||.|| <= 1/2 makes it per_x_error.
    Rat product_error;
};

struct LittlewoodBound {
    BoundReport report;
    ErrorBudget budget;
    Int q;
    Int x_min;
    /// Q * min over x of the product lower bounds.
    Rat lhs;
};

/// Certified lower bound for Q * min_{1<=x<Q} ||alpha x|| ||beta x||, where
/// |alpha - p_alpha| <= err and |beta - p_beta| <= err. For each x,
/// ||alpha x|| >= max(0, ||p_alpha x|| - x err), likewise for beta.
inline LittlewoodBound littlewood_lower_bound(const Int& q, const Rat& p_alpha, const Rat& p_beta, const Rat& err,
                                              const ScanOptions& opts = {}) {
    if (q < 2) throw std::invalid_argument("littlewood_lower_bound: Q must be >= 2");
    if (q > opts.cap) throw std::invalid_argument("littlewood_lower_bound: Q = " + q.get_str() + " exceeds the scan cap");
    if (err.sign() < 0) throw std::invalid_argument("littlewood_lower_bound: negative error");
    const Rat per_x = Rat(q - 1) * err;
    if (per_x >= Rat(1, 2)) {
        throw std::invalid_argument("littlewood_lower_bound: proxy too shallow, (Q-1)*err = " + per_x.str() +
                                    " >= 1/2");
    }

    const Int an = p_alpha.num(), ad = p_alpha.den();
    const Int bn = p_beta.num(), bd = p_beta.den();
    auto lower = [&](const Int& num, const Int& den, std::int64_t x) {
        const Int r = mod_floor(num * Int(static_cast<long>(x)), den);
        const Int d = std::min<Int>(r, den - r);
        Rat v = Rat(d, den) - Rat(Int(static_cast<long>(x))) * err;
        return v.sign() < 0 ? Rat(0) : v;
    };
    auto key = [&](std::int64_t x) { return lower(an, ad, x) * lower(bn, bd, x); };
    const auto [best, x] = detail::argmin_scan<Rat>(1, q.get_si(), opts.threads, key);

    LittlewoodBound out;
    out.q = q;
    out.x_min = Int(static_cast<long>(x));
    out.lhs = Rat(q) * best;
    out.budget = {q - 1, per_x, per_x};
    out.report = BoundReport::make("littlewood Q=" + q.get_str(), out.lhs, littlewood_constant(),
                                   kLittlewoodConstantLabel, {out.x_min},
                                   "err " + err.str() + "; per-x error " + per_x.str() + "; Q*product error " +
                                       (Rat(q) * per_x).decimal(kReportDigits));
    return out;
}

/// Same bound for the certificate's (alpha, beta) at Q = F_{n_level}, with
/// the level-`proxy_level` stage standing in for the limit point.
inline LittlewoodBound littlewood_lower_bound(const Certificate& cert, int level, int proxy_level,
                                              const ScanOptions& opts = {}) {
    if (proxy_level <= level) throw std::invalid_argument("littlewood_lower_bound: proxy level must exceed level");
    if (level < 1) throw std::out_of_range("littlewood_lower_bound: level must be >= 1");
    const Approximant proxy = approximants(cert, proxy_level);
    LittlewoodBound b =
        littlewood_lower_bound(fib(cert.stages[level].n), proxy.alpha, proxy.beta, proxy.err, opts);
    b.report.name = "littlewood level=" + std::to_string(level) + " proxy=" + std::to_string(proxy_level) +
                    " Q=F_" + std::to_string(cert.stages[level].n);
    return b;
}

/// D*_N = max_i max(x_(i) - (i-1)/N, i/N - x_(i)) over the sorted points.
inline Rat star_discrepancy_of(std::span<const Rat> points) {
    if (points.empty()) throw std::invalid_argument("star_discrepancy_of: no points");
    std::vector<Rat> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    const Rat count(static_cast<long>(sorted.size()));
    Rat worst(0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Rat below = abs(sorted[i] - Rat(static_cast<long>(i)) / count);
        const Rat above = abs(Rat(static_cast<long>(i + 1)) / count - sorted[i]);
        worst = max(worst, max(below, above));
    }
    return worst;
}

struct DiscrepancyRecord {
    int n = 0;
    std::int64_t count = 0;
    Rat d_star;
    /// N * D*_N.
    Rat scaled;
    /// N * D*_N / ln(N + 1), in floating point.
    double log_normalized = 0;
};

/// Star discrepancy of {F_{n-1} x / F_n}, x = 1..N. All points share the
/// denominator F_n, so the sorted-points formula runs on integers.
inline DiscrepancyRecord star_discrepancy(int n, std::int64_t count, const ScanOptions& opts = {}) {
    if (n < 2) throw std::invalid_argument("star_discrepancy: n must be >= 2");
    const std::int64_t m = detail::checked_modulus(n, opts, "star_discrepancy");
    if (count < 1 || count >= m) throw std::invalid_argument("star_discrepancy: need 1 <= N < F_n");
    const std::int64_t theta = fib(n - 1).get_si();
    std::vector<std::int64_t> residues(static_cast<std::size_t>(count));
    for (std::int64_t x = 1; x <= count; ++x) residues[static_cast<std::size_t>(x - 1)] = theta * x % m;
    std::sort(residues.begin(), residues.end());

    // Over the common denominator N * F_n.
    std::int64_t worst = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        const std::int64_t scaled_point = count * residues[static_cast<std::size_t>(i)];
        worst = std::max({worst, scaled_point - i * m, (i + 1) * m - scaled_point});
    }
    DiscrepancyRecord rec;
    rec.n = n;
    rec.count = count;
    rec.d_star = Rat(Int(static_cast<long>(worst)), Int(static_cast<long>(count)) * Int(static_cast<long>(m)));
    rec.scaled = rec.d_star * Rat(static_cast<long>(count));
    rec.log_normalized = rec.scaled.mpq().get_d() / std::log(static_cast<double>(count) + 1.0);
    return rec;
}

/// N D*_N / ln(N+1) <= cap. The logarithm is floating point, so lhs is the
/// exact binary value of cap - normalized.
inline BoundReport check_log_discrepancy(const DiscrepancyRecord& rec, const Rat& cap) {
    const Rat normalized{mpq_class(rec.log_normalized)};
    return BoundReport::make("log-discrepancy n=" + std::to_string(rec.n) + " N=" + std::to_string(rec.count),
                             cap - normalized, Sqrt5Surd(Rat(0)), "0", {},
                             "D* = " + rec.d_star.str() + "; N D*/ln(N+1) = " + normalized.decimal(12) +
                                 "; cap " + cap.str());
}

}  // namespace fibnest

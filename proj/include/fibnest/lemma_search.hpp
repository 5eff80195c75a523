#pragma once

// Effective search for a numerator a with
//   a/F_n in I,   {F_{n-1} a / F_n} in J,   1 <= a < F_n,   gcd(a, F_n) = 1.
//
// Two strategies: an exhaustive scan of the position range, and a two-scale
// construction. The latter first places a_0 in the left half of the position
// range with its fractional part in the middle third of J, then shifts by
// multiples of F_{k*} (gcd(k*, n) = 1) until the result is coprime to F_n.

#include "fibnest/exact.hpp"
#include "fibnest/fibonacci.hpp"
#include "fibnest/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>

namespace fibnest {

enum class Strategy { brute, two_scale, automatic };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::brute: return "brute";
        case Strategy::two_scale: return "two_scale";
        case Strategy::automatic: return "auto";
    }
    return "?";
}

inline Strategy strategy_from_string(const std::string& s) {
    if (s == "brute") return Strategy::brute;
    if (s == "two_scale") return Strategy::two_scale;
    if (s == "auto") return Strategy::automatic;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

struct SearchConfig {
    Strategy strategy = Strategy::automatic;
    /// Largest candidate count the exhaustive scan accepts.
    std::int64_t brute_cap = 10'000'000;
    /// Coprimality adjustment range for the two-scale search.
    std::int64_t j_max = 64;
    /// When positive, caps j_max at ceil(F_n^sigma).
    Rat sigma_hint = Rat(0);

    void validate() const {
        if (brute_cap < 1) throw std::invalid_argument("SearchConfig: brute_cap must be >= 1");
        if (j_max < 0) throw std::invalid_argument("SearchConfig: j_max must be >= 0");
        if (sigma_hint < Rat(0)) throw std::invalid_argument("SearchConfig: sigma_hint must be >= 0");
    }

    std::int64_t effective_j_max(const Int& fn) const {
        if (sigma_hint.sign() == 0) return j_max;
        long exponent = 0;
        const double mantissa = mpz_get_d_2exp(&exponent, fn.get_mpz_t());
        const double log2_fn = std::log2(mantissa) + static_cast<double>(exponent);
        const double sigma = sigma_hint.mpq().get_d();
        const double bound = std::ceil(std::exp2(std::min(60.0, sigma * log2_fn)));
        return std::min<std::int64_t>(j_max, std::max<std::int64_t>(1, static_cast<std::int64_t>(bound)));
    }
};

struct LemmaWitness {
    int n = 0;
    Int a;
    Rat alpha_n;
    Rat beta_n;
    Strategy strategy_used = Strategy::brute;
};

enum class SearchStatus {
    found,
    not_found,
    /// Exhaustive scan refused: more candidates than brute_cap.
    range_too_large,
    /// No a_0 + j F_{k*} with j <= j_max is coprime to F_n.
    stage2_exhausted,
    /// The coprime shift left I or J.
    drift_escaped,
};

inline std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::not_found: return "not_found";
        case SearchStatus::range_too_large: return "range_too_large";
        case SearchStatus::stage2_exhausted: return "stage2_exhausted";
        case SearchStatus::drift_escaped: return "drift_escaped";
    }
    return "?";
}

struct SearchResult {
    SearchStatus status = SearchStatus::not_found;
    std::optional<LemmaWitness> witness;
    /// Candidates the brute scan would cover (after clamping to [1, F_n)).
    Int candidates = 0;

    bool found() const { return witness.has_value(); }
};

inline LemmaWitness make_witness(int n, const Int& a, Strategy used) {
    const Int fn = fib(n);
    return LemmaWitness{n, a, Rat(a, fn), frac(Rat(fib(n - 1) * a, fn)), used};
}

/// k in [2, n) with gcd(k, n) = 1 and |k - n/2| minimal, ties to the larger k.
inline int select_kstar(int n) {
    if (n < 4) throw std::invalid_argument("select_kstar: n must be >= 4");
    int best = -1;
    int best_dist = 0;
    for (int k = 2; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        const int dist = std::abs(2 * k - n);
        if (best < 0 || dist < best_dist || (dist == best_dist && k > best)) {
            best = k;
            best_dist = dist;
        }
    }
    return best;
}

namespace detail {

// Smallest x >= 0 with lo <= (mult * x mod modulus) <= hi, where
// 0 <= lo <= hi < modulus. If no multiple of `mult` lands in [lo, hi]
// before the first wrap, then [lo, hi] holds no multiple of mult and the
// question reduces to the wrap count y, governed by (modulus mod mult)
// against the window [mult - hi % mult, mult - lo % mult] modulo mult.
// The reduction is the Euclidean step (modulus, mult) -> (mult, modulus mod mult).
inline std::optional<Int> first_multiple_in_window(Int mult, const Int& modulus, const Int& lo, const Int& hi) {
    if (lo == 0) return Int(0);
    mult = mod_floor(mult, modulus);
    if (mult == 0) return std::nullopt;
    Int x = ceil_div(lo, mult);
    if (mult * x <= hi) return x;
    const Int lo_next = mult - mod_floor(hi, mult);
    const Int hi_next = mult - mod_floor(lo, mult);
    auto wraps = first_multiple_in_window(mod_floor(modulus, mult), mult, lo_next, hi_next);
    if (!wraps) return std::nullopt;
    return ceil_div(lo + modulus * *wraps, mult);
}

}  // namespace detail

/// Smallest d >= 0 with lo <= (start + step*d) mod modulus <= hi.
/// For step = F_{n-1}, modulus = F_n the recursion walks the Fibonacci
/// ladder (F_n, F_{n-1}) -> (F_{n-1}, F_{n-2}) -> ..., so the answer is
/// assembled from steps of size F_k instead of a linear scan.
inline std::optional<Int> first_rotation_hit(const Int& step, const Int& start, const Int& modulus, const Int& lo,
                                             const Int& hi) {
    if (modulus <= 0 || lo < 0 || hi < lo || hi >= modulus) {
        throw std::invalid_argument("first_rotation_hit: need 0 <= lo <= hi < modulus");
    }
    const Int s = mod_floor(start, modulus);
    if (lo <= s && s <= hi) return Int(0);
    if (s < lo) return detail::first_multiple_in_window(step, modulus, lo - s, hi - s);
    return detail::first_multiple_in_window(step, modulus, lo - s + modulus, hi - s + modulus);
}

namespace detail {

// Residues r with r/F_n in `in`.
inline std::pair<Int, Int> residue_window(const UnitInterval& in, const Int& fn) {
    return {(in.lo() * Rat(fn)).ceil(), (in.hi() * Rat(fn)).floor()};
}

}  // namespace detail

/// Exhaustive scan of a in [ceil(I.lo F_n), floor(I.hi F_n)] clamped to
/// [1, F_n); returns the smallest qualifying a.
inline SearchResult find_brute(int n, const UnitInterval& I, const UnitInterval& J, const SearchConfig& cfg = {}) {
    cfg.validate();
    if (n < 2) throw std::invalid_argument("find_brute: n must be >= 2");
    const Int fn = fib(n);
    const Int theta = fib(n - 1);
    auto [lo, hi] = detail::residue_window(I, fn);
    if (lo < 1) lo = 1;
    if (hi > fn - 1) hi = fn - 1;

    SearchResult result;
    result.candidates = hi >= lo ? Int(hi - lo + 1) : Int(0);
    if (result.candidates == 0) return result;
    if (result.candidates > cfg.brute_cap) {
        result.status = SearchStatus::range_too_large;
        return result;
    }

    const auto [jlo, jhi] = detail::residue_window(J, fn);
    Int residue = mod_floor(theta * lo, fn);
    for (Int a = lo; a <= hi; ++a) {
        if (jlo <= residue && residue <= jhi && gcd(a, fn) == 1) {
            result.status = SearchStatus::found;
            result.witness = make_witness(n, a, Strategy::brute);
            return result;
        }
        residue += theta;
        if (residue >= fn) residue -= fn;
    }
    return result;
}

/// Witness conditions for (n, a) against I and J, re-derived from scratch.
inline Report verify_witness(const LemmaWitness& w, const UnitInterval& I, const UnitInterval& J) {
    Report r;
    r.title = "lemma-witness n=" + std::to_string(w.n) + " a=" + w.a.get_str();
    if (w.n < 2) {
        r.add(BoundReport::predicate("index n >= 2", false));
        return r;
    }
    const Int fn = fib(w.n);
    const Rat alpha(w.a, fn);
    const Rat beta = frac(Rat(fib(w.n - 1) * w.a, fn));
    r.add(BoundReport::membership("alpha_n = a/F_n in I", alpha, I));
    r.add(BoundReport::membership("beta_n = {F_{n-1} a/F_n} in J", beta, J));
    r.add(BoundReport::predicate("1 <= a < F_n", w.a >= 1 && w.a < fn, "F_n = " + fn.get_str()));
    const Int g = gcd(w.a, fn);
    r.add(BoundReport::make("gcd(a, F_n) = 1", Rat(Int(1 - g)), Sqrt5Surd(Rat(0)), "0", {g},
                            "lhs is 1 - gcd(a, F_n)"));
    r.add(BoundReport::equality("stored alpha_n", w.alpha_n, alpha));
    r.add(BoundReport::equality("stored beta_n", w.beta_n, beta));
    return r;
}

/// Two-scale search. Stage 1 takes the smallest a_0 in
/// [u F_n, (u + eta/2) F_n] whose fractional part lies in the middle third
/// of J; stage 2 moves to a_0 + j F_{k*} for the first j <= j_max that is
/// coprime to F_n. Every witness condition is re-checked before returning.
inline SearchResult find_two_scale(int n, const UnitInterval& I, const UnitInterval& J,
                                   const SearchConfig& cfg = {}) {
    cfg.validate();
    if (n < 2) throw std::invalid_argument("find_two_scale: n must be >= 2");
    const Int fn = fib(n);
    const Int theta = fib(n - 1);
    SearchResult result;

    const Rat eta = I.length();
    Int lo = (I.lo() * Rat(fn)).ceil();
    Int hi = ((I.lo() + eta / Rat(2)) * Rat(fn)).floor();
    if (lo < 1) lo = 1;
    if (hi > fn - 1) hi = fn - 1;
    result.candidates = hi >= lo ? Int(hi - lo + 1) : Int(0);
    if (hi < lo) return result;

    const UnitInterval middle = trim(J, Rat(1, 3), Anchor::middle);
    const auto [rlo, rhi] = detail::residue_window(middle, fn);
    if (rhi < rlo) return result;

    const auto offset = first_rotation_hit(theta, theta * lo, fn, rlo, rhi);
    if (!offset || lo + *offset > hi) return result;
    const Int a0 = lo + *offset;

    Int a = a0;
    if (gcd(a, fn) != 1) {
        if (n < 4) {
            result.status = SearchStatus::stage2_exhausted;
            return result;
        }
        const Int shift = fib(select_kstar(n));
        const std::int64_t j_max = cfg.effective_j_max(fn);
        bool coprime = false;
        for (std::int64_t j = 1; j <= j_max && !coprime; ++j) {
            a = a0 + Int(static_cast<long>(j)) * shift;
            coprime = gcd(a, fn) == 1;
        }
        if (!coprime) {
            result.status = SearchStatus::stage2_exhausted;
            return result;
        }
    }

    LemmaWitness w = make_witness(n, a, Strategy::two_scale);
    if (!verify_witness(w, I, J).pass()) {
        result.status = SearchStatus::drift_escaped;
        return result;
    }
    result.status = SearchStatus::found;
    result.witness = std::move(w);
    return result;
}

/// Dispatch on cfg.strategy. `automatic` scans exhaustively while the
/// position range fits brute_cap and switches to two_scale beyond it.
inline SearchResult find_witness(int n, const UnitInterval& I, const UnitInterval& J, const SearchConfig& cfg = {}) {
    switch (cfg.strategy) {
        case Strategy::brute: return find_brute(n, I, J, cfg);
        case Strategy::two_scale: return find_two_scale(n, I, J, cfg);
        case Strategy::automatic: {
            SearchResult r = find_brute(n, I, J, cfg);
            if (r.status == SearchStatus::range_too_large) return find_two_scale(n, I, J, cfg);
            return r;
        }
    }
    return {};
}

}  // namespace fibnest

#pragma once

// Nested Fibonacci-interval construction of the pair (alpha, beta).
//
// Stage nu carries (n_nu, a_nu, delta_nu) and the closed windows
//   I_nu = [a_nu/F_n, a_nu/F_n + delta_nu/F_n^2],
//   J_nu = [{F_{n-1} a_nu/F_n}, {F_{n-1} a_nu/F_n} + delta_nu/F_n^2].
// Each new stage is found by applying the witness search to the left halves
// of the previous windows, so the right halves absorb the new window length.
// alpha and beta are the points common to every I_nu and J_nu respectively.

#include "fibnest/exact.hpp"
#include "fibnest/fibonacci.hpp"
#include "fibnest/lemma_search.hpp"
#include "fibnest/report.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibnest {

struct Stage {
    int nu = 0;
    int n = 1;
    Int a = 0;
    Rat delta = Rat(1);
    Rat alpha = Rat(0);
    Rat beta = Rat(0);
    UnitInterval I;
    UnitInterval J;

    /// delta / F_n^2, the common window length.
    Rat radius() const {
        const Int fn = fib(n);
        return delta / Rat(fn * fn);
    }

    friend bool operator==(const Stage&, const Stage&) = default;
};

struct Certificate {
    std::vector<Stage> stages;
    std::string schedule_name;
    std::string policy;

    int depth() const { return static_cast<int>(stages.size()) - 1; }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// nu -> delta_nu with delta_0 = 1, positive and strictly decreasing.
struct DeltaSchedule {
    std::string name;
    std::function<Rat(int)> rule;

    Rat operator()(int nu) const { return rule(nu); }

    /// delta_nu = 2^-nu.
    static DeltaSchedule pow2() {
        return {"pow2", [](int nu) {
                    Int p;
                    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(nu));
                    return Rat(Int(1), p);
                }};
    }

    /// delta_nu = 1/(nu + 1).
    static DeltaSchedule harmonic() {
        return {"harmonic", [](int nu) { return Rat(Int(1), Int(nu + 1)); }};
    }

    static DeltaSchedule from_name(const std::string& name) {
        if (name == "pow2") return pow2();
        if (name == "harmonic") return harmonic();
        throw std::invalid_argument("unknown delta schedule '" + name + "'");
    }
};

/// The synthetic level-0 stage: n = 1, a = 0, I_0 = J_0 = [0, 1].
inline Stage seed_stage() { return Stage{}; }

struct BuildOptions {
    /// How many successive n to try per stage before giving up.
    int max_n_steps = 512;
};

class DepthUnreachable : public std::runtime_error {
public:
    DepthUnreachable(int nu, int last_n, const std::string& why)
        : std::runtime_error("construction stuck at level " + std::to_string(nu) + " (last n tried " +
                             std::to_string(last_n) + "): " + why),
          nu(nu), last_n(last_n) {}

    int nu;
    int last_n;
};

inline std::string policy_tag(const SearchConfig& cfg) { return "left-half;" + to_string(cfg.strategy); }

namespace detail {

// Stage for witness w, if its windows fit inside prev with room to spare:
// the new length may use at most half of what is left to the right.
inline std::optional<Stage> stage_from_witness(const Stage& prev, const LemmaWitness& w, const Rat& delta) {
    Stage s;
    s.nu = prev.nu + 1;
    s.n = w.n;
    s.a = w.a;
    s.delta = delta;
    s.alpha = w.alpha_n;
    s.beta = w.beta_n;
    const Rat r = s.radius();
    const bool fits = s.alpha >= prev.I.lo() && r * Rat(2) <= prev.I.hi() - s.alpha &&
                      s.beta >= prev.J.lo() && r * Rat(2) <= prev.J.hi() - s.beta;
    if (!fits) return std::nullopt;
    s.I = UnitInterval(s.alpha, s.alpha + r);
    s.J = UnitInterval(s.beta, s.beta + r);
    return s;
}

}  // namespace detail

/// Runs the construction to `depth` levels beyond the seed.
inline Certificate build(int depth, const DeltaSchedule& schedule, int n0, const SearchConfig& cfg = {},
                         const BuildOptions& opts = {}) {
    if (depth < 0) throw std::invalid_argument("build: depth must be >= 0");
    if (n0 < 4) throw std::invalid_argument("build: n0 must be >= 4");
    cfg.validate();

    Certificate cert;
    cert.schedule_name = schedule.name;
    cert.policy = policy_tag(cfg);
    Stage seed = seed_stage();
    seed.delta = schedule(0);
    if (seed.delta != Rat(1)) throw std::invalid_argument("build: schedule must start at delta_0 = 1");
    cert.stages.push_back(seed);

    for (int nu = 0; nu < depth; ++nu) {
        const Stage& prev = cert.stages.back();
        const Rat delta = schedule(nu + 1);
        if (delta.sign() <= 0 || delta >= prev.delta) {
            throw std::invalid_argument("build: schedule must be positive and strictly decreasing");
        }
        const UnitInterval I_target = trim(prev.I, Rat(1, 2), Anchor::left);
        const UnitInterval J_target = trim(prev.J, Rat(1, 2), Anchor::left);

        // The trimmed target has length delta/(2 F^2); F_n >= 2 F^2/delta
        // guarantees it holds at least one integer position.
        const Int fprev = fib(prev.n);
        const int n_floor = fib_index_at_least((Rat(2 * fprev * fprev) / prev.delta).ceil());
        int n = std::max(nu == 0 ? n0 : prev.n + 1, n_floor);
        n = std::max(n, prev.n + 1);

        std::optional<Stage> next;
        std::string last_status = "no n tried";
        for (int step = 0; step < opts.max_n_steps && !next; ++step, ++n) {
            SearchResult found = find_witness(n, I_target, J_target, cfg);
            last_status = to_string(found.status);
            if (found.status == SearchStatus::range_too_large && cfg.strategy == Strategy::brute) {
                throw DepthUnreachable(nu + 1, n, "candidate range exceeds brute_cap");
            }
            if (found.found()) next = detail::stage_from_witness(prev, *found.witness, delta);
        }
        if (!next) throw DepthUnreachable(nu + 1, n - 1, "search exhausted (" + last_status + ")");
        cert.stages.push_back(*next);
    }
    return cert;
}

struct Approximant {
    Rat alpha;
    Rat beta;
    /// alpha and beta lie within err of the returned values.
    Rat err;
};

inline Approximant approximants(const Certificate& cert, int level) {
    if (level < 1 || level >= static_cast<int>(cert.stages.size())) {
        throw std::out_of_range("approximants: level " + std::to_string(level) + " outside [1, " +
                                std::to_string(cert.depth()) + "]");
    }
    const Stage& s = cert.stages[level];
    return {s.alpha, s.beta, s.radius()};
}

/// Re-checks every stage and every pair of levels exactly.
inline Report verify_certificate(const Certificate& cert) {
    Report r;
    r.title = "certificate (" + std::to_string(cert.stages.size()) + " stages, schedule " + cert.schedule_name + ")";
    if (cert.stages.empty()) {
        r.add(BoundReport::predicate("seed stage present", false));
        return r;
    }
    const Stage& seed = cert.stages.front();
    r.add(BoundReport::predicate("seed I_0 = J_0 = [0,1], delta_0 = 1",
                                 seed.nu == 0 && seed.I == UnitInterval() && seed.J == UnitInterval() &&
                                     seed.delta == Rat(1) && seed.n == 1 && seed.a == 0));

    std::optional<DeltaSchedule> schedule;
    try {
        schedule = DeltaSchedule::from_name(cert.schedule_name);
    } catch (const std::invalid_argument&) {
    }

    for (std::size_t v = 1; v < cert.stages.size(); ++v) {
        const Stage& s = cert.stages[v];
        const Stage& prev = cert.stages[v - 1];
        const std::string tag = "stage " + std::to_string(v) + ": ";
        r.add(BoundReport::predicate(tag + "level index", s.nu == static_cast<int>(v)));
        if (s.n < 2) {
            r.add(BoundReport::predicate(tag + "n >= 2", false));
            continue;
        }
        const Int fn = fib(s.n);
        const Rat radius = s.delta / Rat(fn * fn);
        r.add(BoundReport::predicate(tag + "n strictly increasing", s.n > prev.n));
        r.add(BoundReport::predicate(tag + "1 <= a < F_n", s.a >= 1 && s.a < fn));
        const Int g = gcd(s.a, fn);
        r.add(BoundReport::make(tag + "gcd(a, F_n) = 1", Rat(Int(1 - g)), Sqrt5Surd(Rat(0)), "0", {g},
                                "lhs is 1 - gcd(a, F_n)"));
        r.add(BoundReport::equality(tag + "alpha = a/F_n", s.alpha, Rat(s.a, fn)));
        r.add(BoundReport::equality(tag + "beta = {F_{n-1} a/F_n}", s.beta, frac(Rat(fib(s.n - 1) * s.a, fn))));
        r.add(BoundReport::equality(tag + "I.lo = alpha", s.I.lo(), s.alpha));
        r.add(BoundReport::equality(tag + "I.hi = alpha + delta/F_n^2", s.I.hi(), s.alpha + radius));
        r.add(BoundReport::equality(tag + "J.lo = beta", s.J.lo(), s.beta));
        r.add(BoundReport::equality(tag + "J.hi = beta + delta/F_n^2", s.J.hi(), s.beta + radius));
        r.add(BoundReport::predicate(tag + "0 < delta < delta_prev", s.delta.sign() > 0 && s.delta < prev.delta,
                                     "delta = " + s.delta.str() + ", delta_prev = " + prev.delta.str()));
        if (schedule) r.add(BoundReport::equality(tag + "delta matches schedule", s.delta, (*schedule)(s.nu)));

        for (std::size_t mu = 0; mu < v; ++mu) {
            const Stage& outer = cert.stages[mu];
            const std::string pair = "levels " + std::to_string(mu) + " < " + std::to_string(v) + ": ";
            r.add(BoundReport::predicate(pair + "I nested", outer.I.contains(s.I)));
            r.add(BoundReport::predicate(pair + "J nested", outer.J.contains(s.J)));
            // |alpha - alpha_mu|, |beta - beta_mu| <= delta_mu/F_{n_mu}^2 with
            // the level-v point standing in for (alpha, beta).
            const Rat drift = max(abs(s.alpha - outer.alpha), abs(s.beta - outer.beta));
            r.add(BoundReport::make(pair + "approximation bound", outer.radius() - drift, Sqrt5Surd(Rat(0)), "0", {},
                                    "lhs is delta_mu/F^2 - max(|alpha_v - alpha_mu|, |beta_v - beta_mu|)"));
        }
    }
    return r;
}

// Serialization. Rationals are exact "p/q" strings, a is a decimal string.

inline Json interval_to_json(const UnitInterval& in) { return Json::array({in.lo().str(), in.hi().str()}); }

inline UnitInterval interval_from_json(const Json& j) {
    return UnitInterval(Rat::parse(j.at(0).get<std::string>()), Rat::parse(j.at(1).get<std::string>()));
}

inline Json to_json(const Certificate& cert) {
    Json stages = Json::array();
    for (const auto& s : cert.stages) {
        Json js;
        js["nu"] = s.nu;
        js["n"] = s.n;
        js["a"] = s.a.get_str();
        js["delta"] = s.delta.str();
        js["alpha"] = s.alpha.str();
        js["beta"] = s.beta.str();
        js["I"] = interval_to_json(s.I);
        js["J"] = interval_to_json(s.J);
        stages.push_back(std::move(js));
    }
    Json j;
    j["schedule"] = cert.schedule_name;
    j["policy"] = cert.policy;
    j["stages"] = std::move(stages);
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    Certificate cert;
    cert.schedule_name = j.at("schedule").get<std::string>();
    cert.policy = j.at("policy").get<std::string>();
    for (const auto& js : j.at("stages")) {
        Stage s;
        s.nu = js.at("nu").get<int>();
        s.n = js.at("n").get<int>();
        s.a = parse_int(js.at("a").get<std::string>());
        s.delta = Rat::parse(js.at("delta").get<std::string>());
        s.alpha = Rat::parse(js.at("alpha").get<std::string>());
        s.beta = Rat::parse(js.at("beta").get<std::string>());
        s.I = interval_from_json(js.at("I"));
        s.J = interval_from_json(js.at("J"));
        cert.stages.push_back(std::move(s));
    }
    return cert;
}

/// Canonical text: two-space indented JSON with a trailing newline.
inline std::string dump_certificate(const Certificate& cert) { return to_json(cert).dump(2) + "\n"; }

}  // namespace fibnest

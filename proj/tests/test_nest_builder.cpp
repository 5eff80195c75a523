#include "fibnest/nest_builder.hpp"

#include <gtest/gtest.h>

using namespace fibnest;

namespace {

Rat r(long p, long q) { return Rat(Int(p), Int(q)); }

const Certificate& depth3() {
    static const Certificate cert = build(3, DeltaSchedule::pow2(), 5);
    return cert;
}

}  // namespace

TEST(Build, DepthZeroIsSeedOnly) {
    const Certificate cert = build(0, DeltaSchedule::pow2(), 5);
    ASSERT_EQ(cert.stages.size(), 1u);
    EXPECT_EQ(cert.stages[0].I, UnitInterval());
    EXPECT_EQ(cert.stages[0].J, UnitInterval());
    EXPECT_EQ(cert.stages[0].delta, Rat(1));
    EXPECT_TRUE(verify_certificate(cert).pass());
}

TEST(Build, DepthOneMatchesFirstBruteSuccess) {
    // Direct scan for n = 5, 6, ...: the first (n, a) with a/F_n and
    // {F_{n-1} a/F_n} in [0, 1/2] and gcd(a, F_n) = 1.
    const UnitInterval half(Rat(0), r(1, 2));
    int n1 = 0;
    Int a1;
    for (int n = 5; n1 == 0; ++n) {
        const Int fn = fib(n);
        for (Int a = 1; a < fn; ++a) {
            if (half.contains(Rat(a, fn)) && half.contains(frac(Rat(fib(n - 1) * a, fn))) && gcd(a, fn) == 1) {
                n1 = n;
                a1 = a;
                break;
            }
        }
    }
    EXPECT_EQ(n1, 5);
    EXPECT_EQ(a1, 2);

    const Certificate cert = build(1, DeltaSchedule::pow2(), 5);
    ASSERT_EQ(cert.stages.size(), 2u);
    const Stage& s = cert.stages[1];
    EXPECT_EQ(s.n, n1);
    EXPECT_EQ(s.a, a1);
    EXPECT_EQ(s.alpha, r(2, 5));
    EXPECT_EQ(s.beta, r(1, 5));
    EXPECT_EQ(s.delta, r(1, 2));
    EXPECT_EQ(s.I, UnitInterval(r(2, 5), r(2, 5) + r(1, 50)));
}

TEST(Build, Pow2Deltas) {
    const Certificate& cert = depth3();
    ASSERT_EQ(cert.stages.size(), 4u);
    EXPECT_EQ(cert.stages[0].delta, Rat(1));
    EXPECT_EQ(cert.stages[1].delta, r(1, 2));
    EXPECT_EQ(cert.stages[2].delta, r(1, 4));
    EXPECT_EQ(cert.stages[3].delta, r(1, 8));
    EXPECT_EQ(cert.schedule_name, "pow2");
}

TEST(Build, NestedAndMonotone) {
    const Certificate& cert = depth3();
    for (std::size_t v = 1; v < cert.stages.size(); ++v) {
        EXPECT_GT(cert.stages[v].n, cert.stages[v - 1].n);
        for (std::size_t mu = 0; mu < v; ++mu) {
            EXPECT_TRUE(cert.stages[mu].I.contains(cert.stages[v].I));
            EXPECT_TRUE(cert.stages[mu].J.contains(cert.stages[v].J));
        }
    }
}

TEST(Build, ApproximationBoundAgainstDeepestStage) {
    const Certificate& cert = depth3();
    const Stage& deepest = cert.stages.back();
    for (std::size_t mu = 1; mu + 1 < cert.stages.size(); ++mu) {
        const Stage& s = cert.stages[mu];
        EXPECT_LE(abs(deepest.alpha - s.alpha), s.radius());
        EXPECT_LE(abs(deepest.beta - s.beta), s.radius());
    }
}

TEST(Build, Deterministic) {
    const Certificate again = build(3, DeltaSchedule::pow2(), 5);
    EXPECT_EQ(again, depth3());
    EXPECT_EQ(dump_certificate(again), dump_certificate(depth3()));
}

TEST(Build, HarmonicScheduleAlsoVerifies) {
    const Certificate cert = build(2, DeltaSchedule::harmonic(), 6);
    EXPECT_EQ(cert.stages[2].delta, r(1, 3));
    EXPECT_TRUE(verify_certificate(cert).pass());
}

TEST(Build, RejectsBadArguments) {
    EXPECT_THROW(build(-1, DeltaSchedule::pow2(), 5), std::invalid_argument);
    EXPECT_THROW(build(1, DeltaSchedule::pow2(), 3), std::invalid_argument);
    DeltaSchedule flat{"flat", [](int) { return Rat(1); }};
    EXPECT_THROW(build(1, flat, 5), std::invalid_argument);
}

TEST(Build, BruteCapMakesDepthUnreachable) {
    SearchConfig cfg;
    cfg.strategy = Strategy::brute;
    cfg.brute_cap = 1000;
    try {
        build(3, DeltaSchedule::pow2(), 5, cfg);
        FAIL() << "expected DepthUnreachable";
    } catch (const DepthUnreachable& e) {
        EXPECT_GE(e.nu, 2);
        EXPECT_GT(e.last_n, 5);
    }
}

TEST(Approximants, Examples) {
    const Certificate& cert = depth3();
    const Approximant deep = approximants(cert, 3);
    EXPECT_EQ(deep.err, cert.stages[3].delta / Rat(fib(cert.stages[3].n) * fib(cert.stages[3].n)));
    const Approximant one = approximants(cert, 1), two = approximants(cert, 2);
    EXPECT_LE(abs(one.alpha - two.alpha), one.err);
    EXPECT_LE(abs(one.beta - two.beta), one.err);
    EXPECT_THROW(approximants(build(0, DeltaSchedule::pow2(), 5), 1), std::out_of_range);
    EXPECT_THROW(approximants(cert, 0), std::out_of_range);
    EXPECT_THROW(approximants(cert, 4), std::out_of_range);
}

TEST(VerifyCertificate, FreshCertificatePasses) {
    const Report report = verify_certificate(depth3());
    EXPECT_TRUE(report.pass());
    EXPECT_GT(report.checks.size(), 30u);
}

TEST(VerifyCertificate, MutatedNumeratorFails) {
    Certificate bad = depth3();
    bad.stages[2].a += 1;
    const Report report = verify_certificate(bad);
    EXPECT_FALSE(report.pass());
}

TEST(VerifyCertificate, ConsistentButMisplacedStageFailsNesting) {
    // Rebuild stage 2 around a+1 so its own fields agree; nesting must catch it.
    Certificate bad = depth3();
    Stage& s = bad.stages[2];
    s.a += 1;
    const Int fn = fib(s.n);
    s.alpha = Rat(s.a, fn);
    s.beta = frac(Rat(fib(s.n - 1) * s.a, fn));
    s.I = UnitInterval(s.alpha, s.alpha + s.radius());
    s.J = UnitInterval(s.beta, s.beta + s.radius());
    const Report report = verify_certificate(bad);
    EXPECT_FALSE(report.pass());
    bool nesting_failed = false;
    for (const auto* f : report.failures()) nesting_failed |= f->name.find("nested") != std::string::npos;
    EXPECT_TRUE(nesting_failed);
}

TEST(VerifyCertificate, DeltaMustDecrease) {
    Certificate bad = build(2, DeltaSchedule::pow2(), 5);
    bad.stages[2].delta = bad.stages[1].delta;
    EXPECT_FALSE(verify_certificate(bad).pass());
}

TEST(VerifyCertificate, SeedOnlyPassesVacuously) {
    Certificate cert;
    cert.schedule_name = "pow2";
    cert.stages.push_back(seed_stage());
    EXPECT_TRUE(verify_certificate(cert).pass());
}

TEST(CertificateJson, RoundTripIsLossless) {
    const Certificate& cert = depth3();
    const std::string text = dump_certificate(cert);
    const Certificate back = certificate_from_json(Json::parse(text));
    EXPECT_EQ(back, cert);
    EXPECT_EQ(dump_certificate(back), text);
}

TEST(CertificateJson, Layout) {
    const Json j = to_json(build(1, DeltaSchedule::pow2(), 5));
    EXPECT_EQ(j.begin().key(), "schedule");
    EXPECT_EQ(j["policy"], "left-half;auto");
    const Json& s = j["stages"][1];
    EXPECT_EQ(s["nu"], 1);
    EXPECT_EQ(s["n"], 5);
    EXPECT_EQ(s["a"], "2");
    EXPECT_EQ(s["delta"], "1/2");
    EXPECT_EQ(s["alpha"], "2/5");
    EXPECT_EQ(s["beta"], "1/5");
    EXPECT_EQ(s["I"], Json::array({"2/5", "21/50"}));
    EXPECT_EQ(s["J"], Json::array({"1/5", "11/50"}));
}

TEST(CertificateJson, RejectsMalformed) {
    Json j = to_json(build(1, DeltaSchedule::pow2(), 5));
    j["stages"][1]["I"] = Json::array({"1/2", "3/2"});
    EXPECT_THROW(certificate_from_json(j), std::invalid_argument);
    j = to_json(build(1, DeltaSchedule::pow2(), 5));
    j["stages"][1]["alpha"] = "two fifths";
    EXPECT_THROW(certificate_from_json(j), std::invalid_argument);
}

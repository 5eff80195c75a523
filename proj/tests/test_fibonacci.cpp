#include "fibnest/fibonacci.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

using namespace fibnest;

namespace {

// Plain uint64 recurrence, independent of the memo table.
std::vector<std::uint64_t> reference_fib(int upto) {
    std::vector<std::uint64_t> f{0, 1};
    while (static_cast<int>(f.size()) <= upto) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    return f;
}

}  // namespace

TEST(Fib, Examples) {
    EXPECT_EQ(fib(1), 1);
    EXPECT_EQ(fib(2), 1);
    EXPECT_EQ(fib(10), 55);
    EXPECT_EQ(fib(20), 6765);
    EXPECT_THROW(fib(0), std::invalid_argument);
    EXPECT_THROW(fib(-3), std::invalid_argument);
}

TEST(Fib, MatchesRecurrenceAndGrowsPast64Bits) {
    const auto ref = reference_fib(93);
    for (int k = 1; k <= 93; ++k) EXPECT_EQ(fib(k).get_str(), std::to_string(ref[k])) << k;
    EXPECT_EQ(fib(100).get_str(), "354224848179261915075");
}

TEST(Fib, ConcurrentReadsAgree) {
    std::vector<std::string> seen(8);
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < 8; ++t) pool.emplace_back([&seen, t] { seen[t] = fib(300 + t % 2).get_str(); });
    }
    for (int t = 0; t < 8; ++t) EXPECT_EQ(seen[t], fib(300 + t % 2).get_str());
}

TEST(Fib, Cassini) {
    for (int k = 2; k <= 40; ++k) {
        const Int lhs = fib(k + 1) * fib(k - 1) - fib(k) * fib(k);
        EXPECT_EQ(lhs, k % 2 == 0 ? 1 : -1) << k;
    }
}

TEST(FibIndexAtLeast, Examples) {
    EXPECT_EQ(fib_index_at_least(1), 1);
    EXPECT_EQ(fib_index_at_least(56), 11);
    EXPECT_EQ(fib_index_at_least(6765), 20);
    EXPECT_EQ(fib_index_at_least(6766), 21);
    EXPECT_THROW(fib_index_at_least(0), std::invalid_argument);
}

TEST(GoldenConvergent, Examples) {
    EXPECT_EQ(golden_convergent(2), Rat(1));
    EXPECT_EQ(golden_convergent(6), Rat(Int(5), Int(8)));
    EXPECT_EQ(golden_convergent(20), Rat(Int(4181), Int(6765)));
    EXPECT_THROW(golden_convergent(1), std::invalid_argument);
}

TEST(CfExpand, Examples) {
    EXPECT_EQ(cf_expand(Rat(Int(1), Int(2))), (std::vector<Int>{0, 2}));
    EXPECT_EQ(cf_expand(Rat(Int(5), Int(8))), (std::vector<Int>{0, 1, 1, 1, 2}));
    std::vector<Int> expected{0};
    for (int i = 0; i < 17; ++i) expected.push_back(1);
    expected.push_back(2);
    EXPECT_EQ(cf_expand(Rat(Int(4181), Int(6765))), expected);
    EXPECT_THROW(cf_expand(Rat(0)), std::invalid_argument);
    EXPECT_THROW(cf_expand(Rat(1)), std::invalid_argument);
}

TEST(CfExpand, GoldenConvergentsHaveAllOnesPattern) {
    for (int n = 3; n <= 40; ++n) {
        const Rat g = golden_convergent(n);
        EXPECT_EQ(gcd(g.num(), g.den()), 1);
        EXPECT_EQ(g.num(), fib(n - 1));
        const auto cf = cf_expand(g);
        ASSERT_EQ(cf.size(), static_cast<std::size_t>(n - 1)) << n;
        EXPECT_EQ(cf.front(), 0);
        for (std::size_t i = 1; i + 1 < cf.size(); ++i) EXPECT_EQ(cf[i], 1) << n;
        EXPECT_EQ(cf.back(), 2) << n;
        EXPECT_EQ(cf_value(cf), g);
    }
}

TEST(Zeckendorf, Examples) {
    EXPECT_TRUE(zeckendorf(0).indices.empty());
    EXPECT_EQ(zeckendorf(100).indices, (std::vector<int>{11, 6, 4}));
    EXPECT_EQ(zeckendorf(55).indices, (std::vector<int>{10}));
    EXPECT_THROW(zeckendorf(-1), std::invalid_argument);
}

TEST(Zeckendorf, RoundTripAndNonAdjacent) {
    const auto ref = reference_fib(40);
    for (std::uint64_t m = 0; m <= 100000; ++m) {
        const ZeckendorfRep rep = zeckendorf(Int(static_cast<unsigned long>(m)));
        std::uint64_t sum = 0;
        for (int i : rep.indices) sum += ref[i];
        ASSERT_EQ(sum, m);
        ASSERT_TRUE(rep.well_formed()) << m;
    }
}

TEST(FibGcd, Examples) {
    EXPECT_EQ(fib_gcd(10, 15), 5);
    EXPECT_EQ(fib_gcd(7, 11), 1);
    EXPECT_EQ(fib_gcd(6, 6), 8);
}

TEST(FibGcd, EqualsFibOfIndexGcd) {
    const auto ref = reference_fib(40);
    for (int m = 1; m <= 40; ++m) {
        for (int n = 1; n <= 40; ++n) {
            EXPECT_EQ(fib_gcd(m, n).get_str(), std::to_string(std::gcd(ref[m], ref[n])));
            EXPECT_EQ(fib_gcd(m, n), fib(std::gcd(m, n)));
        }
    }
}

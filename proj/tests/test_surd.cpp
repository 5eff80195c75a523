#include "fibnest/surd.hpp"

#include <gtest/gtest.h>

using namespace fibnest;

TEST(Sqrt5Surd, SignOfMixedTerms) {
    EXPECT_EQ(Sqrt5Surd(Rat(3), Rat(-1)).sign(), 1);   // 3 > sqrt5
    EXPECT_EQ(Sqrt5Surd(Rat(2), Rat(-1)).sign(), -1);  // 2 < sqrt5
    EXPECT_EQ(Sqrt5Surd(Rat(-3), Rat(1)).sign(), -1);
    EXPECT_EQ(Sqrt5Surd(Rat(0), Rat(0)).sign(), 0);
    EXPECT_EQ(Sqrt5Surd(Rat(0), Rat(-2)).sign(), -1);
}

TEST(Sqrt5Surd, GoldenIdentities) {
    const Sqrt5Surd phi = golden_ratio();
    EXPECT_EQ(phi * phi, golden_ratio_squared());
    EXPECT_EQ(phi + Sqrt5Surd(Rat(1)), golden_ratio_squared());
    EXPECT_EQ(Sqrt5Surd(Rat(2)) / Sqrt5Surd(Rat(3), Rat(1)), littlewood_constant());
    EXPECT_EQ(littlewood_constant() * golden_ratio_squared(), Sqrt5Surd(Rat(1)));
}

TEST(Sqrt5Surd, ComparesAgainstRationals) {
    const Sqrt5Surd c = littlewood_constant();
    EXPECT_LT(Sqrt5Surd(Rat(Int(3), Int(8))), c);
    EXPECT_GT(Sqrt5Surd(Rat(Int(5), Int(13))), c);
    EXPECT_LT(Sqrt5Surd(Rat(Int(2584), Int(6765))), c);
    EXPECT_GT(Sqrt5Surd(Rat(Int(4181), Int(10946))), c);
}

TEST(Sqrt5Surd, FiftyDigitRendering) {
    EXPECT_EQ(littlewood_constant().decimal(50), "0.38196601125010515179541316563436188227969082019424");
    EXPECT_EQ(golden_ratio().decimal(50), "1.61803398874989484820458683436563811772030917980576");
    EXPECT_EQ((Sqrt5Surd(Rat(Int(8), Int(3))) - golden_ratio_squared()).decimal(50),
              "0.04863267791677181846207983230102854894635748686090");
    EXPECT_EQ((-golden_ratio()).decimal(3), "-1.618");
    EXPECT_EQ(littlewood_constant().decimal(6), "0.381966");
}

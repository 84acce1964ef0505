#include "otd/generators.hpp"

#include "otd/driver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace otd;

TEST(Generators, DeterministicGivenSeed) {
    const Tensor3 a = gen_random(6, 123);
    const Tensor3 b = gen_random(6, 123);
    const Tensor3 c = gen_random(6, 124);
    ASSERT_EQ(a.data().size(), b.data().size());
    for (std::size_t i = 0; i < a.data().size(); ++i) EXPECT_EQ(a.data()[i], b.data()[i]);
    bool all_equal = true;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        all_equal = all_equal && a.data()[i] == c.data()[i];
    EXPECT_FALSE(all_equal);
}

TEST(Generators, RejectTinySizes) {
    EXPECT_THROW(gen_random(1, 0), std::invalid_argument);
    EXPECT_THROW(gen_diagonalizable(0, 0), std::invalid_argument);
    EXPECT_THROW(gen_symmetric(1, 0), std::invalid_argument);
    EXPECT_THROW(gen_antisymmetric(1, 0), std::invalid_argument);
}

TEST(Generators, NormalSamplerMomentsAreSane) {
    NormalSampler s(2024);
    double sum = 0.0, sum2 = 0.0;
    const int count = 200000;
    for (int i = 0; i < count; ++i) {
        const double x = s();
        sum += x;
        sum2 += x * x;
    }
    EXPECT_NEAR(sum / count, 0.0, 0.02);
    EXPECT_NEAR(sum2 / count, 1.0, 0.03);
}

TEST(Generators, PaperTensorMatricizationIsBitExact) {
    const Tensor3 t = gen_paper_t();
    int ones = 0;
    for (double x : t.data()) {
        EXPECT_TRUE(x == 0.0 || x == 1.0);
        ones += x == 1.0;
    }
    EXPECT_EQ(ones, 6);
    EXPECT_EQ(t.at(1, 2, 3), 1.0);
    EXPECT_EQ(t.at(3, 2, 1), 1.0);
    EXPECT_EQ(t.at(1, 1, 1), 0.0);
}

TEST(Generators, AntisymmetricHasExactZeroDiagonal) {
    const Tensor3 t = gen_antisymmetric(6, 5);
    EXPECT_EQ(diag_sq_sum(t), 0.0);
    EXPECT_TRUE(is_antisymmetric(t, 0.0));
    // entries with any repeated index are exactly zero
    for (int i = 1; i <= 6; ++i)
        for (int k = 1; k <= 6; ++k) {
            EXPECT_EQ(t.at(i, i, k), 0.0);
            EXPECT_EQ(t.at(i, k, i), 0.0);
            EXPECT_EQ(t.at(k, i, i), 0.0);
        }
}

TEST(Generators, SymmetricIsBitExactlySymmetric) {
    const Tensor3 t = gen_symmetric(5, 77);
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j)
            for (int k = 1; k <= 5; ++k) {
                EXPECT_EQ(t.at(i, j, k), t.at(i, k, j));
                EXPECT_EQ(t.at(i, j, k), t.at(j, i, k));
                EXPECT_EQ(t.at(i, j, k), t.at(k, j, i));
            }
}

TEST(Generators, DiagonalizableSolvesToZeroOffNorm) {
    const Tensor3 a = gen_diagonalizable(8, 42);
    RunConfig cfg;
    cfg.eta_over_n = 1.0 / 20.0;
    cfg.max_sweeps = 60;
    cfg.trace_every = TraceGranularity::Sweep;
    const RunResult res = run(a, cfg);
    EXPECT_LT(res.off_rel_final, 1e-6);
}

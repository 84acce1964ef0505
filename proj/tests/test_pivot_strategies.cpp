#include "otd/pivot_strategies.hpp"

#include <gtest/gtest.h>

using namespace otd;

using Pairs = std::vector<std::pair<int, int>>;

TEST(Cycle, RowTopDown) {
    EXPECT_EQ(cycle(Ordering::RowTopDown, 3), (Pairs{{1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(cycle(Ordering::RowTopDown, 4),
              (Pairs{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
}

TEST(Cycle, ColLeftRight) {
    EXPECT_EQ(cycle(Ordering::ColLeftRight, 4),
              (Pairs{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}));
}

TEST(Cycle, RowBottomUp) {
    // rows n-1 down to 1, left to right within each row
    EXPECT_EQ(cycle(Ordering::RowBottomUp, 4),
              (Pairs{{3, 4}, {2, 3}, {2, 4}, {1, 2}, {1, 3}, {1, 4}}));
    EXPECT_EQ(cycle(Ordering::RowBottomUp, 3), (Pairs{{2, 3}, {1, 2}, {1, 3}}));
}

TEST(Cycle, ColRightLeft) {
    EXPECT_EQ(cycle(Ordering::ColRightLeft, 3), (Pairs{{1, 3}, {2, 3}, {1, 2}}));
    EXPECT_EQ(cycle(Ordering::ColRightLeft, 4),
              (Pairs{{1, 4}, {2, 4}, {3, 4}, {1, 3}, {2, 3}, {1, 2}}));
}

TEST(Cycle, Diagonal) {
    EXPECT_EQ(cycle(Ordering::Diagonal, 4),
              (Pairs{{1, 2}, {2, 3}, {3, 4}, {1, 3}, {2, 4}, {1, 4}}));
    EXPECT_EQ(cycle(Ordering::Diagonal, 5),
              (Pairs{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}, {2, 4}, {3, 5}, {1, 4},
                     {2, 5}, {1, 5}}));
}

TEST(Cycle, EveryOrderingIsAPermutationOfAllPairs) {
    const Ordering all[] = {Ordering::RowTopDown, Ordering::ColLeftRight,
                            Ordering::RowBottomUp, Ordering::ColRightLeft,
                            Ordering::Diagonal};
    for (Ordering ord : all)
        for (int n = 2; n <= 8; ++n) EXPECT_NO_THROW(check_cycle(cycle(ord, n), n));
    EXPECT_THROW(cycle(Ordering::RowTopDown, 1), std::invalid_argument);
}

TEST(Cycle, SizeTwoDegeneratesToSinglePair) {
    const Ordering all[] = {Ordering::RowTopDown, Ordering::ColLeftRight,
                            Ordering::RowBottomUp, Ordering::ColRightLeft,
                            Ordering::Diagonal};
    for (Ordering ord : all) EXPECT_EQ(cycle(ord, 2), (Pairs{{1, 2}}));
}

TEST(CheckCycle, RejectsBadCycles) {
    EXPECT_THROW(check_cycle({{1, 2}}, 3), std::invalid_argument);                      // short
    EXPECT_THROW(check_cycle({{1, 2}, {1, 2}, {2, 3}}, 3), std::invalid_argument);      // dup
    EXPECT_THROW(check_cycle({{1, 2}, {3, 1}, {2, 3}}, 3), std::invalid_argument);      // i >= j
    EXPECT_THROW(check_cycle({{1, 2}, {1, 4}, {2, 3}}, 3), std::invalid_argument);      // range
    EXPECT_NO_THROW(check_cycle({{2, 3}, {1, 3}, {1, 2}}, 3));
}

TEST(OrderingNames, RoundTrip) {
    for (const char* name : {"row", "col", "row-rev", "col-rev", "diag"})
        EXPECT_EQ(ordering_name(ordering_from_name(name)), name);
    EXPECT_THROW(ordering_from_name("zigzag"), std::invalid_argument);
}

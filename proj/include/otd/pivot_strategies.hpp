#pragma once

#include <string>
#include <utility>
#include <vector>

namespace otd {

/// Cyclic pivot orderings. Every cycle enumerates each pair (i,j), i < j,
/// exactly once.
enum class Ordering {
    RowTopDown,   // (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n)
    ColLeftRight, // (1,2),(1,3),(2,3),(1,4),...,(n-1,n)
    RowBottomUp,  // rows n-1 down to 1, each row left to right
    ColRightLeft, // columns n down to 2, each column top to bottom
    Diagonal,     // superdiagonals: (1,2),(2,3),...,(n-1,n),(1,3),(2,4),...
};

std::vector<std::pair<int, int>> cycle(Ordering ordering, int n);

/// CLI names: row, col, row-rev, col-rev, diag.
Ordering ordering_from_name(const std::string& name);
std::string ordering_name(Ordering ordering);

/// Checks that pairs form a permutation of all (i,j), 1 <= i < j <= n;
/// throws with a description otherwise.
void check_cycle(const std::vector<std::pair<int, int>>& pairs, int n);

}  // namespace otd

#include "otd/pivot_strategies.hpp"

#include <set>
#include <stdexcept>

namespace otd {

std::vector<std::pair<int, int>> cycle(Ordering ordering, int n) {
    if (n < 2) throw std::invalid_argument("cycle: n must be >= 2");
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    switch (ordering) {
        case Ordering::RowTopDown:
            for (int i = 1; i < n; ++i)
                for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
            break;
        case Ordering::ColLeftRight:
            for (int j = 2; j <= n; ++j)
                for (int i = 1; i < j; ++i) out.emplace_back(i, j);
            break;
        case Ordering::RowBottomUp:
            for (int i = n - 1; i >= 1; --i)
                for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
            break;
        case Ordering::ColRightLeft:
            for (int j = n; j >= 2; --j)
                for (int i = 1; i < j; ++i) out.emplace_back(i, j);
            break;
        case Ordering::Diagonal:
            for (int d = 1; d < n; ++d)
                for (int i = 1; i + d <= n; ++i) out.emplace_back(i, i + d);
            break;
    }
    return out;
}

Ordering ordering_from_name(const std::string& name) {
    if (name == "row") return Ordering::RowTopDown;
    if (name == "col") return Ordering::ColLeftRight;
    if (name == "row-rev") return Ordering::RowBottomUp;
    if (name == "col-rev") return Ordering::ColRightLeft;
    if (name == "diag") return Ordering::Diagonal;
    throw std::invalid_argument("unknown ordering '" + name +
                                "' (expected row, col, row-rev, col-rev or diag)");
}

std::string ordering_name(Ordering ordering) {
    switch (ordering) {
        case Ordering::RowTopDown: return "row";
        case Ordering::ColLeftRight: return "col";
        case Ordering::RowBottomUp: return "row-rev";
        case Ordering::ColRightLeft: return "col-rev";
        case Ordering::Diagonal: return "diag";
    }
    return "?";
}

void check_cycle(const std::vector<std::pair<int, int>>& pairs, int n) {
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (pairs.size() != expected)
        throw std::invalid_argument("pivot cycle has " + std::to_string(pairs.size()) +
                                    " pairs, expected " + std::to_string(expected));
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : pairs) {
        if (i < 1 || j <= i || j > n)
            throw std::invalid_argument("pivot pair (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") out of range");
        if (!seen.insert({i, j}).second)
            throw std::invalid_argument("duplicate pivot pair (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
    }
}

}  // namespace otd

#pragma once

#include "otd/driver.hpp"
#include "otd/matrix.hpp"
#include "otd/tensor3.hpp"

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace otd {

/// Parse failure with the offending location baked into what().
class ParseError : public std::runtime_error {
public:
    ParseError(const std::filesystem::path& path, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Decimal rendering with 17 significant digits; round-trips doubles exactly.
std::string format_real(double v);

// Tensor file: "otd-tensor3 v1", then n, then n^3 whitespace-separated reals
// in storage order (first index fastest).
void write_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 read_tensor(const std::filesystem::path& path);

// Matrix file: "otd-matrix v1", then "rows cols", then rows*cols reals in
// column-major order.
void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(const std::filesystem::path& path);

// Trace CSV with header
// sweep,step,i,j,mode,angle,f,off_rel,grad_norm,skipped,degenerate
void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRecord> trace);

/// Pivot cycle file: one "i j" pair per line; '#' starts a comment. The pairs
/// must form a permutation of all pairs for the given n.
std::vector<std::pair<int, int>> read_order_file(const std::filesystem::path& path, int n);

}  // namespace otd

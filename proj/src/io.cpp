#include "otd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace otd {

namespace {

// Token stream over a text file that remembers line numbers for error
// reporting.
class TokenReader {
public:
    TokenReader(const std::filesystem::path& path) : path_(path), in_(path) {
        if (!in_) throw ParseError(path, 0, "cannot open file");
    }

    // Next whitespace-separated token; empty optional at end of input.
    bool next(std::string& token) {
        while (true) {
            if (pos_ >= line_.size()) {
                if (!std::getline(in_, line_)) return false;
                ++line_no_;
                pos_ = 0;
                continue;
            }
            const std::size_t start = line_.find_first_not_of(" \t\r", pos_);
            if (start == std::string::npos) {
                pos_ = line_.size();
                continue;
            }
            std::size_t end = line_.find_first_of(" \t\r", start);
            if (end == std::string::npos) end = line_.size();
            token = line_.substr(start, end - start);
            pos_ = end;
            return true;
        }
    }

    std::string expect(const std::string& what) {
        std::string token;
        if (!next(token)) fail("unexpected end of file, expected " + what);
        return token;
    }

    double expect_real(const std::string& what) {
        const std::string token = expect(what);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            fail("expected " + what + ", got '" + token + "'");
        if (!std::isfinite(v)) fail(what + " is not finite: '" + token + "'");
        return v;
    }

    long expect_integer(const std::string& what) {
        const std::string token = expect(what);
        long v = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            fail("expected " + what + ", got '" + token + "'");
        return v;
    }

    void expect_header(const std::string& header) {
        std::string got;
        std::istringstream want(header);
        std::string piece;
        while (want >> piece) {
            const std::string token = expect("header '" + header + "'");
            if (token != piece)
                fail("bad header token '" + token + "', expected '" + piece + "'");
        }
    }

    void expect_end() {
        std::string token;
        if (next(token)) fail("trailing data '" + token + "'");
    }

    [[noreturn]] void fail(const std::string& message) {
        throw ParseError(path_, line_no_, message);
    }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::string line_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

}  // namespace

ParseError::ParseError(const std::filesystem::path& path, int line, const std::string& message)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_real failed");
    return std::string(buf, ptr);
}

void write_tensor(const std::filesystem::path& path, const Tensor3& t) {
    std::ofstream out = open_out(path);
    const int n = t.size();
    out << "otd-tensor3 v1\n" << n << "\n";
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j) {
            for (int i = 1; i <= n; ++i)
                out << format_real(t.at(i, j, k)) << (i == n ? "\n" : " ");
        }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Tensor3 read_tensor(const std::filesystem::path& path) {
    TokenReader reader(path);
    reader.expect_header("otd-tensor3 v1");
    const long n = reader.expect_integer("tensor size n");
    if (n < 1 || n > 4096) reader.fail("tensor size out of range: " + std::to_string(n));
    Tensor3 t(static_cast<int>(n));
    for (double& x : t.data()) x = reader.expect_real("tensor entry");
    reader.expect_end();
    return t;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out = open_out(path);
    out << "otd-matrix v1\n" << m.rows() << " " << m.cols() << "\n";
    for (int c = 1; c <= m.cols(); ++c)
        for (int r = 1; r <= m.rows(); ++r)
            out << format_real(m.at(r, c)) << (r == m.rows() ? "\n" : " ");
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Matrix read_matrix(const std::filesystem::path& path) {
    TokenReader reader(path);
    reader.expect_header("otd-matrix v1");
    const long rows = reader.expect_integer("row count");
    const long cols = reader.expect_integer("column count");
    if (rows < 1 || cols < 1 || rows > 65536 || cols > 65536)
        reader.fail("matrix dimensions out of range");
    Matrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (int c = 1; c <= m.cols(); ++c)
        for (int r = 1; r <= m.rows(); ++r) m.at(r, c) = reader.expect_real("matrix entry");
    reader.expect_end();
    return m;
}

void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRecord> trace) {
    std::ofstream out = open_out(path);
    out << "sweep,step,i,j,mode,angle,f,off_rel,grad_norm,skipped,degenerate\n";
    for (const TraceRecord& r : trace) {
        out << r.sweep << ',' << r.step << ',' << r.i << ',' << r.j << ',' << r.mode << ','
            << format_real(r.angle) << ',' << format_real(r.f) << ','
            << format_real(r.off_rel) << ',' << format_real(r.grad_norm) << ','
            << (r.skipped ? 1 : 0) << ',' << (r.degenerate ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<std::pair<int, int>> read_order_file(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::vector<std::pair<int, int>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i)) continue;  // blank line
        if (!(ls >> j)) throw ParseError(path, line_no, "expected two indices per line");
        std::string extra;
        if (ls >> extra) throw ParseError(path, line_no, "trailing data '" + extra + "'");
        pairs.emplace_back(i, j);
    }
    try {
        check_cycle(pairs, n);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, line_no, e.what());
    }
    return pairs;
}

}  // namespace otd

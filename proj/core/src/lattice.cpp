#include "spherelab/lattice.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

namespace spherelab::lattice {

RepCountTable build_rep_table(int n, std::int64_t maxLambda) {
    if (n < 1) throw std::invalid_argument("build_rep_table: dimension must be >= 1");
    if (maxLambda < 0) throw RangeExceeded("build_rep_table: negative maxLambda");

    const auto size = static_cast<std::size_t>(maxLambda) + 1;
    std::vector<std::uint64_t> cur(size, 0);
    cur[0] = 1;  // r_0
    std::vector<std::uint64_t> next(size);
    for (int k = 0; k < n; ++k) {
        std::fill(next.begin(), next.end(), std::uint64_t{0});
        for (std::int64_t x = 0; x * x <= maxLambda; ++x) {
            const std::uint64_t w = (x == 0) ? 1 : 2;
            const auto off = static_cast<std::size_t>(x * x);
            for (std::size_t m = off; m < size; ++m) {
                std::uint64_t add = w * cur[m - off];
                if (__builtin_add_overflow(next[m], add, &next[m]))
                    throw RangeExceeded("representation count overflows 64 bits");
            }
        }
        std::swap(cur, next);
    }
    return RepCountTable{n, maxLambda, std::move(cur)};
}

std::uint64_t count_representations(std::int64_t lambda, int n, std::int64_t maxLambda) {
    if (lambda < 0) throw std::invalid_argument("count_representations: lambda must be >= 0");
    if (lambda > maxLambda)
        throw RangeExceeded("lambda " + std::to_string(lambda) + " above configured maximum " +
                            std::to_string(maxLambda));
    return build_rep_table(n, lambda).counts.back();
}

SpherePointSet enumerate_sphere(std::int64_t lambda, int n, std::uint64_t pointBudget) {
    if (lambda < 0 || n < 1) throw std::invalid_argument("enumerate_sphere: bad arguments");
    const std::uint64_t r = count_representations(lambda, n, lambda);
    if (r > pointBudget)
        throw BudgetExceeded("sphere has " + std::to_string(r) + " points, budget " +
                             std::to_string(pointBudget));
    SpherePointSet out;
    out.lambda = lambda;
    out.n = n;
    out.count = r;
    out.coords.reserve(r * static_cast<std::size_t>(n));
    visit_sphere(lambda, n, [&](std::span<const std::int32_t> p) {
        out.coords.insert(out.coords.end(), p.begin(), p.end());
    });
    return out;
}

std::vector<std::int32_t> enumerate_nonneg(std::int64_t lambda, int n,
                                           std::uint64_t pointBudget) {
    std::vector<std::int32_t> coords;
    std::uint64_t count = 0;
    visit_nonneg_sphere(lambda, n, [&](std::span<const std::int32_t> p) {
        if (++count > pointBudget)
            throw BudgetExceeded("nonnegative enumeration exceeds budget " +
                                 std::to_string(pointBudget));
        coords.insert(coords.end(), p.begin(), p.end());
    });
    return coords;
}

void save_table(const RepCountTable& table, const std::filesystem::path& path) {
    if (table.counts.size() != static_cast<std::size_t>(table.maxLambda) + 1)
        throw FormatError("table size does not match its maxLambda");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << "spherelab-rep-v1,n=" << table.n << ",max=" << table.maxLambda << "\n";
        for (std::int64_t lam = 0; lam <= table.maxLambda; ++lam)
            out << lam << "," << table.counts[static_cast<std::size_t>(lam)] << "\n";
        out.flush();
        if (!out) throw IoError("write failure on " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError(std::string("bad ") + what + " field: '" + std::string(s) + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError(std::string("bad ") + what + " field: '" + std::string(s) + "'");
    return v;
}

}  // namespace

RepCountTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw FormatError("missing header line");
    constexpr std::string_view magic = "spherelab-rep-v1,n=";
    if (header.rfind(magic, 0) != 0) throw FormatError("bad magic in header: '" + header + "'");
    const auto comma = header.find(',', magic.size());
    if (comma == std::string::npos || header.compare(comma, 5, ",max=") != 0)
        throw FormatError("bad header: '" + header + "'");
    RepCountTable table;
    table.n = static_cast<int>(
        parse_int(std::string_view(header).substr(magic.size(), comma - magic.size()), "n"));
    table.maxLambda = parse_int(std::string_view(header).substr(comma + 5), "max");
    if (table.n < 1 || table.maxLambda < 0) throw FormatError("header values out of range");

    table.counts.reserve(static_cast<std::size_t>(table.maxLambda) + 1);
    std::string line;
    for (std::int64_t lam = 0; lam <= table.maxLambda; ++lam) {
        if (!std::getline(in, line))
            throw FormatError("truncated table: expected row for lambda=" + std::to_string(lam));
        const auto c = line.find(',');
        if (c == std::string::npos) throw FormatError("missing comma in row: '" + line + "'");
        if (parse_int(std::string_view(line).substr(0, c), "lambda") != lam)
            throw FormatError("row out of order at lambda=" + std::to_string(lam));
        table.counts.push_back(parse_uint(std::string_view(line).substr(c + 1), "count"));
    }
    if (std::getline(in, line)) throw FormatError("trailing content after last row");
    if (table.counts[0] != 1) throw FormatError("count mismatch: r(0) must be 1");
    return table;
}

}  // namespace spherelab::lattice

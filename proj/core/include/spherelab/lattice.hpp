// Lattice points on spheres |x|^2 = lambda in Z^n: representation-number
// tables by convolution, exact enumeration by pruned recursive descent, and a
// versioned CSV cache for the count tables.
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "spherelab/errors.hpp"

namespace spherelab::lattice {

inline constexpr std::int64_t kDefaultMaxLambda = 100000;
inline constexpr std::uint64_t kDefaultPointBudget = 100000000;

// r_n(lambda) for 0 <= lambda <= maxLambda.
struct RepCountTable {
    int n = 0;
    std::int64_t maxLambda = 0;
    std::vector<std::uint64_t> counts;  // indexed by lambda
};

// All solutions of x_1^2 + ... + x_n^2 = lambda, lexicographically sorted,
// stored as a flat row-major coordinate array.
struct SpherePointSet {
    std::int64_t lambda = 0;
    int n = 0;
    std::size_t count = 0;
    std::vector<std::int32_t> coords;  // count * n entries

    std::span<const std::int32_t> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
};

// Convolution recurrence r_k(m) = sum_{x^2 <= m} r_{k-1}(m - x^2) with
// r_0(m) = [m = 0]. Throws RangeExceeded if a count overflows 64 bits.
RepCountTable build_rep_table(int n, std::int64_t maxLambda);

// r_n(lambda); throws RangeExceeded above maxLambda.
std::uint64_t count_representations(std::int64_t lambda, int n,
                                    std::int64_t maxLambda = kDefaultMaxLambda);

// Full enumeration; throws BudgetExceeded when r(lambda) > pointBudget.
SpherePointSet enumerate_sphere(std::int64_t lambda, int n,
                                std::uint64_t pointBudget = kDefaultPointBudget);

// Solutions with every coordinate >= 0, flat row-major. Each such point
// stands for the 2^{#nonzero coords} sign patterns of a full solution;
// callers fold symmetric sums (e.g. Fourier sums via cosine weights).
std::vector<std::int32_t> enumerate_nonneg(std::int64_t lambda, int n,
                                           std::uint64_t pointBudget = kDefaultPointBudget);

namespace detail {

inline std::int64_t isqrt(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

template <typename Fn>
void visit_rec(std::int64_t remaining, int k, int n, std::int32_t* x, bool nonneg, Fn&& fn) {
    if (k == n - 1) {
        const std::int64_t r = isqrt(remaining);
        if (r * r == remaining) {
            if (r > 0 && !nonneg) {
                x[k] = static_cast<std::int32_t>(-r);
                fn(std::span<const std::int32_t>(x, static_cast<std::size_t>(n)));
            }
            x[k] = static_cast<std::int32_t>(r);
            fn(std::span<const std::int32_t>(x, static_cast<std::size_t>(n)));
        }
        return;
    }
    const std::int64_t r = isqrt(remaining);
    for (std::int64_t v = nonneg ? 0 : -r; v <= r; ++v) {
        x[k] = static_cast<std::int32_t>(v);
        visit_rec(remaining - v * v, k + 1, n, x, nonneg, fn);
    }
}

}  // namespace detail

// Stream every lattice point of the sphere in lexicographic order.
// fn receives a span valid only for the duration of the call.
template <typename Fn>
void visit_sphere(std::int64_t lambda, int n, Fn&& fn) {
    if (lambda < 0 || n < 1) throw std::invalid_argument("visit_sphere: bad arguments");
    std::vector<std::int32_t> x(static_cast<std::size_t>(n));
    detail::visit_rec(lambda, 0, n, x.data(), false, fn);
}

// Stream the points with all coordinates >= 0, lexicographic order.
template <typename Fn>
void visit_nonneg_sphere(std::int64_t lambda, int n, Fn&& fn) {
    if (lambda < 0 || n < 1) throw std::invalid_argument("visit_nonneg_sphere: bad arguments");
    std::vector<std::int32_t> x(static_cast<std::size_t>(n));
    detail::visit_rec(lambda, 0, n, x.data(), true, fn);
}

// Versioned CSV cache:
//   spherelab-rep-v1,n=<n>,max=<maxLambda>
//   <lambda>,<count>            (one row per lambda = 0..maxLambda)
// Written atomically (temp file + rename). Throws IoError / FormatError.
void save_table(const RepCountTable& table, const std::filesystem::path& path);
RepCountTable load_table(const std::filesystem::path& path);

}  // namespace spherelab::lattice

// Spatial side: sparse complex-valued functions on Z^n, normalized spherical
// averages A_lambda, finite maximal functions over radius lists, l^p norms,
// and empirical operator-norm tables over structured test families.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "spherelab/errors.hpp"

namespace spherelab::averaging {

using cplx = std::complex<double>;
using Point = std::vector<std::int32_t>;

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over coordinate bytes
        for (std::int32_t c : p) {
            auto u = static_cast<std::uint32_t>(c);
            for (int i = 0; i < 4; ++i) {
                h ^= (u >> (8 * i)) & 0xffu;
                h *= 1099511628211ull;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

// Finitely supported f : Z^n -> C in canonical sparse form (no stored zeros).
class GridFunction {
public:
    explicit GridFunction(int n);

    int dim() const { return n_; }
    std::size_t support_size() const { return vals_.size(); }
    bool empty() const { return vals_.empty(); }

    cplx at(std::span<const std::int32_t> p) const;
    void set(std::span<const std::int32_t> p, cplx v);  // v == 0 erases
    void add(std::span<const std::int32_t> p, cplx v);

    const std::unordered_map<Point, cplx, PointHash>& values() const { return vals_; }

    // Componentwise support bounding box [lo, hi]; empty function gives an
    // empty box (lo > hi).
    std::pair<Point, Point> bounding_box() const;

private:
    int n_;
    std::unordered_map<Point, cplx, PointHash> vals_;
};

GridFunction delta(int n);  // unit mass at the origin

// A_lambda f(y) = r(lambda)^{-1} sum_{|x|^2 = lambda} f(y - x), exact sparse
// convolution. Throws EmptySphere when r(lambda) = 0.
GridFunction apply_average(const GridFunction& f, std::int64_t lambda);

// Pointwise max of |A_lambda f| over the list (real nonnegative values).
GridFunction maximal_function(const GridFunction& f, std::span<const std::int64_t> lambdas);

// (sum |f|^p)^{1/p}; p = infinity (std::numeric_limits<double>::infinity())
// gives the sup norm.
double lp_norm(const GridFunction& f, double p);

// || max_lambda |A_lambda f| ||_p computed without materializing the big
// convolutions: spheres with more than materializeCap points are streamed,
// with exact per-point values and multiplicity-corrected accumulation.
// Throws BudgetExceeded when the streaming cost estimate is infeasible.
double maximal_lp_norm(const GridFunction& f, std::span<const std::int64_t> lambdas, double p,
                       std::uint64_t materializeCap = 2000000);

// Number of sequence elements inside [n0, n0^2]. For any sequence with
// lambda^2 < next-lambda the answer is at most 1. Input must be ascending.
int sup_window_count(std::span<const std::int64_t> sortedLambdas, std::int64_t n0);

// ---- structured test families ----
struct TestFamilySpec {
    enum class Kind { Delta, RandomSigns, ResidueIndicator };
    Kind kind = Kind::Delta;
    std::int32_t boxRadius = 4;  // RandomSigns / ResidueIndicator
    double density = 0.1;        // RandomSigns
    std::int64_t q = 2;          // ResidueIndicator: support {x = 0 mod q, |x|_inf <= R}
};

// Deterministic given (spec, seed, itemIndex); never returns the zero function.
GridFunction make_family_item(const TestFamilySpec& spec, int n, std::uint64_t seed,
                              int itemIndex);

struct OpNormReport {
    double p = 1.0;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::int64_t> lambdas;
    std::vector<std::pair<int, double>> perFunction;  // (item index, ratio)
    double maxRatio = 0.0;
};

// Ratios || max_lambda |A_lambda f_i| ||_p / || f_i ||_p over `count` family
// items. Reported, not asserted; the only hard ceiling is |lambdas| by the
// triangle inequality.
OpNormReport op_norm_estimate(double p, std::span<const std::int64_t> lambdas,
                              const TestFamilySpec& family, int count, std::uint64_t seed,
                              int n = 5);

}  // namespace spherelab::averaging

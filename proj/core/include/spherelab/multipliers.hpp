// Fourier-side objects of the circle-method decomposition: the smooth cutoff
// zeta, the continuous sphere-measure transform, the exact normalized
// exponential sum over a lattice sphere, the major-arc multipliers built from
// Gauss sums, their dyadic blocks, the two error terms of the decomposition
// identity, and the numerical decay experiments.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "spherelab/arithmetic.hpp"
#include "spherelab/errors.hpp"

namespace spherelab::multipliers {

using cplx = std::complex<double>;

// ---- smooth cutoff ----
// Product of identical even 1-D factors: 1 on [-1/10,1/10], 0 outside
// [-1/5,1/5], in between the C^infinity step
//   s(t) = g(u2) / (g(u1) + g(u2)),  u1 = (|t|-1/10)*10,  u2 = (1/5-|t|)*10,
// with g(u) = exp(-1/u) for u > 0 and 0 otherwise.
struct CutoffSpec {
    static constexpr double innerHalfWidth = 0.1;
    static constexpr double outerHalfWidth = 0.2;
};
double zeta1(double t);
double zeta(std::span<const double> x);

// Fourier transform of the normalized surface measure of the unit sphere in
// R^n, as a function of the radius t = |xi|; normalized so the value at 0 is
// 1. Closed forms for odd n (for n = 5: 3(sin z - z cos z)/z^3 with z = 2 pi t,
// Taylor series below z = 1e-3), Bessel evaluation for even n.
double sphere_ft(int n, double t);

// ---- frequency points ----
// A point of the torus, coordinates folded into [0,1).
struct FrequencyPoint {
    std::vector<double> xi;

    FrequencyPoint() = default;
    explicit FrequencyPoint(std::vector<double> coords);
    int dim() const { return static_cast<int>(xi.size()); }
};

// Sampling helpers (deterministic given the seed).
std::vector<FrequencyPoint> uniform_points(int n, int count, std::uint64_t seed);

// ---- reports ----
struct DecompositionReport {
    unsigned l = 0, j = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<FrequencyPoint, double>> samples;
    double maxResidual = 0.0;
};

struct DecayFitReport {
    struct Entry {
        std::int64_t lambda = 0;
        int truncation = 0;       // H actually used for this lambda
        double supResidual = 0.0;
        bool excluded = false;    // exactly-zero residual, dropped from the fit
    };
    std::vector<Entry> pairs;
    double fittedDelta = 0.0;  // -slope of log(supResidual) against log(lambda)
    bool anyExcluded = false;
};

// Least-squares fit of log(supResidual) against log(lambda) over the given
// pairs. Exactly-zero residuals are excluded and flagged; fewer than three
// usable pairs throws DegenerateFit.
DecayFitReport fit_decay_pairs(std::vector<DecayFitReport::Entry> pairs);

// ---- evaluator ----
// Holds the ambient dimension and the shared Gauss-sum tables. All evaluation
// methods are pure given the constructor arguments and safe to call
// concurrently (tables are built once and then read-only).
class MultiplierLab {
public:
    explicit MultiplierLab(int n = 5);

    int dimension() const { return n_; }

    // Exact normalized exponential sum r(lambda)^{-1} sum_{|x|^2=lambda}
    // e(x.xi), evaluated by folding sign symmetry into cosine weights over
    // the nonnegative orthant (hence an exactly real result).
    cplx omega_hat(std::int64_t lambda, const FrequencyPoint& xi) const;
    std::vector<double> omega_hat_grid(std::int64_t lambda,
                                       std::span<const FrequencyPoint> grid) const;

    // Major-arc multiplier at modulus q:
    //   sum_{a in Z_q} sum_{avec in Z_q^n} e(-lambda a/q) F_q(a,avec)
    //     zeta(q^2(xi-avec/q)) dsigma~(lambda^{1/2}(xi-avec/q)).
    // The cutoff supports over avec are disjoint, so the unique candidate is
    // located by rounding and only the a-sum is taken: O(q n) per point.
    cplx omega_eval(std::int64_t lambda, std::int64_t q, const FrequencyPoint& xi) const;

    // Dyadic block over q in I_h = [2^h, 2^{h+1}), a in U_q, cutoff scale
    // 10^h. Throws SupportOverlap if the support-disjointness precondition
    // 2q <= 5*10^h fails for the requested h.
    cplx m_eval(std::int64_t lambda, int h, const FrequencyPoint& xi) const;

    // Error terms of the decomposition identity at sequence index l and
    // window index j (Q_j = (2^j)!):
    //   E1: blocks h < j with cutoff difference zeta(Q_j^2 .) - zeta(10^h .),
    //   E2: divisors q | Q_j with q >= 2^j at cutoff scale Q_j^2.
    cplx e1_eval(unsigned l, unsigned j, const FrequencyPoint& xi) const;
    cplx e2_eval(unsigned l, unsigned j, const FrequencyPoint& xi) const;

    // Factorization pieces: omega_eval(lambda_l, Q_i, .) splits as
    // U_i(xi) * V_{lambda_l, i}(xi) once the characters are trivial.
    cplx u_eval(unsigned i, const FrequencyPoint& xi) const;
    cplx v_eval(std::int64_t lambda, unsigned i, const FrequencyPoint& xi) const;

    // Residual |Omega_{l,j} - sum_{h<j} M_{lambda_l,h} - E1 - E2| over mixed
    // uniform and boundary-adversarial samples. The identity is algebraic;
    // residuals are pure rounding noise.
    DecompositionReport decomposition_check(unsigned l, unsigned j, int sampleCount,
                                            std::uint64_t seed) const;

    // sup over the grid of |omega_hat(lambda,.) - sum_{h<=H} M_{lambda,h}(.)|.
    double approx_residual(std::int64_t lambda, int truncation,
                           std::span<const FrequencyPoint> grid) const;

    // Least-squares decay exponent of the approximation residuals over a
    // fixed grid. truncation: per-lambda default when not given. Throws
    // DegenerateFit when fewer than three usable pairs remain.
    DecayFitReport decay_fit(std::span<const std::int64_t> lambdas,
                             std::span<const FrequencyPoint> grid,
                             std::optional<int> truncation = std::nullopt) const;

    // floor(log2 sqrt(lambda)): the default dyadic truncation level.
    static int default_truncation(std::int64_t lambda);

    // Point sample used by decomposition_check: uniform points mixed with
    // points at controlled distances {0, 1e-4, 1/(5q^2), 1/(2q)} from
    // rationals a/q with q <= 2^j.
    std::vector<FrequencyPoint> decomposition_samples(unsigned j, int count,
                                                      std::uint64_t seed) const;

private:
    struct Located;
    Located locate(const FrequencyPoint& xi, std::int64_t q) const;
    std::uint64_t rep_count(std::int64_t lambda) const;
    double lambda_as_double(unsigned l) const;
    std::int64_t window_modulus(unsigned j) const;  // Q_j = (2^j)! in machine range

    int n_;
    mutable arithmetic::GaussTableCache gauss_;
    mutable std::mutex repMu_;
    mutable std::map<std::int64_t, std::uint64_t> repCounts_;
};

}  // namespace spherelab::multipliers

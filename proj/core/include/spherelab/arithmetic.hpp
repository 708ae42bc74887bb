// Exponential-sum arithmetic: one-dimensional quadratic Gauss sums
// G(a,b;q) = sum_{s mod q} e((a s^2 + b s)/q), the separable normalized sums
// F_q(a, avec) = q^{-n} prod_i G(a, avec_i; q), completed-sum counting
// identities, and zero-count normalizations N(Q,n) = #{s in Z_Q^n : |s|^2 = 0}.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spherelab/errors.hpp"

namespace spherelab::arithmetic {

using cplx = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

// Direct O(q) summation of G(a,b;q); the reference path every table column is
// checked against.
cplx quad_gauss_1d(std::int64_t a, std::int64_t b, std::int64_t q);

// U_q as residues; U_1 = {0}.
std::vector<std::int64_t> units_mod(std::int64_t q);

// Per-modulus table of G(a,b;q). Columns (all a for a fixed b) are built on
// demand with one length-q DFT of the bucketed vector
//   W_b[r] = sum_{s : s^2 = r mod q} e(b s / q),
// since G(a,b;q) = sum_r W_b[r] e(a r / q). Built once, then shared read-only.
class GaussSumTable {
public:
    explicit GaussSumTable(std::int64_t q);
    ~GaussSumTable();
    GaussSumTable(const GaussSumTable&) = delete;
    GaussSumTable& operator=(const GaussSumTable&) = delete;

    std::int64_t modulus() const { return q_; }

    // e(k/q), k reduced mod q (negative k allowed).
    cplx unit(std::int64_t k) const;

    // G(a,b;q) for all a in Z_q. Reference stays valid for the table lifetime.
    const std::vector<cplx>& column(std::int64_t b) const;

    cplx one_dim(std::int64_t a, std::int64_t b) const;

    // F_q(a, avec) = q^{-n} prod_i G(a, avec_i; q).
    cplx F(std::int64_t a, std::span<const std::int64_t> avec) const;

private:
    struct Fft;
    std::int64_t q_;
    double qPowNegCache_ = 0.0;
    std::vector<cplx> roots_;
    std::unique_ptr<Fft> fft_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<std::int64_t, std::vector<cplx>> columns_;
};

// Shared collection of tables keyed by modulus.
class GaussTableCache {
public:
    const GaussSumTable& table(std::int64_t q);

private:
    std::shared_mutex mu_;
    std::unordered_map<std::int64_t, std::unique_ptr<GaussSumTable>> tables_;
};

// F_q(a, avec) through a process-wide shared table cache.
cplx gauss_F(std::int64_t q, std::int64_t a, std::span<const std::int64_t> avec);

// Scan of the normalized magnitudes |F_q(a,avec)| q^{n/2} over q <= qmax,
// a in U_q, avec = 0 plus random samples. Records the attaining triple.
struct GaussBoundReport {
    int n = 0;
    std::int64_t qmax = 0;
    int samplesPerPair = 0;
    std::uint64_t seed = 0;
    double maxNormalized = 0.0;
    std::int64_t argQ = 0;
    std::int64_t argA = 0;
    std::vector<std::int64_t> argAvec;
};
GaussBoundReport gauss_bound_check(std::int64_t qmax, int n, int samplesPerPair = 10,
                                   std::uint64_t seed = 0);

// counts[r] = #{s in Z_q^n : |s|^2 = r mod q}, exact.
std::vector<std::uint64_t> squares_distribution(std::int64_t q, int n);

// N(Q,n) = #{s in Z_Q^n : |s|^2 = 0 mod Q} per prime power (squares
// distribution convolved n times), multiplied across prime powers by CRT.
// normalized = Q^{1-n} N(Q,n) as an exact reduced rational num/den.
struct ZeroCountReport {
    std::int64_t Q = 0;
    int n = 0;
    BigInt count;
    BigInt num, den;
    double normalized() const;
};
ZeroCountReport zero_count(std::int64_t Q, int n);

// | sum_{a in Z_q} F_q(a,0) e(-lambda a/q)  -  q^{1-n} #{s : |s|^2 = lambda mod q} |
double completed_sum_identity(std::int64_t q, std::int64_t lambda, int n);

}  // namespace spherelab::arithmetic

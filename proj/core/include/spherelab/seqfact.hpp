// Exact arithmetic for the sparse radius sequence lambda_l = (2^l)! and the
// l! surrogate: divisibility, Legendre valuations, sparsity, character
// values e(-lambda a/q), and the doubly-exponential window index j0.
//
// Large factorials are never materialized unless they fit a configured digit
// budget; everything else routes through prime valuations and CRT residues.
#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spherelab/errors.hpp"

namespace spherelab::seqfact {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultDigitBudget = 10000;

// Trial-division limit; every modulus used by the experiments factors below
// it or leaves a single prime cofactor.
inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

enum class SequenceKind {
    Factorial2L,  // lambda_l = (2^l)!
    FactorialL,   // lambda_l = l!
    Lacunary2L,   // lambda_l = 2^l (contrast sequence, no factorial structure)
};

// One element of a factorial-type sequence: lambda = m!.
class FactorialIndex {
public:
    static FactorialIndex power2(unsigned l);  // m = 2^l
    static FactorialIndex plain(unsigned l);   // m = l

    unsigned index() const { return l_; }
    const BigInt& base() const { return m_; }  // m with lambda = m!

    // Exact decimal digit count of m! (computed without materializing).
    std::size_t digit_count() const;
    bool materializable(std::size_t digitBudget = kDefaultDigitBudget) const;

    // m! exactly; throws BudgetExceeded beyond the digit budget. Backed by a
    // process-wide write-once cache, safe to call concurrently.
    const BigInt& value(std::size_t digitBudget = kDefaultDigitBudget) const;

    // v_p(m!) by Legendre's formula; throws NotPrime for composite p.
    BigInt valuation(std::uint64_t p) const;

private:
    FactorialIndex(unsigned l, BigInt m) : l_(l), m_(std::move(m)) {}
    unsigned l_ = 0;
    BigInt m_;
};

// ---- sequence operations (paper sequence lambda_l = (2^l)! unless noted) ----

// (2^l)! exactly. Throws BudgetExceeded when the digit budget is hit.
BigInt lambda_value(unsigned l, std::size_t digitBudget = kDefaultDigitBudget);

// v_p((2^l)!). Throws NotPrime for composite p.
BigInt lambda_valuation(unsigned l, std::uint64_t p);

// q | (2^l)!, decided from prime valuations of q (factored by trial division
// with an optional prime cofactor). Works for q far above any materialization
// budget, e.g. q itself a factorial.
bool divides_lambda(const BigInt& q, unsigned l);
bool divides_lambda(std::uint64_t q, unsigned l);

// lambda_l^2 < lambda_{l+1}. Exact below the digit budget, Stirling-based
// log comparison above it. The 2^l! sequence satisfies it for every l; the
// l! surrogate stops satisfying it at l = 3.
bool check_sparsity(unsigned l, SequenceKind kind = SequenceKind::Factorial2L);

// e(-lambda_l a / q) with e(z) = exp(2 pi i z). Exactly 1 whenever
// q | lambda_l (no rounding), otherwise computed from lambda_l mod q.
std::complex<double> character_value(unsigned l, std::int64_t a, const BigInt& q);
std::complex<double> character_value(unsigned l, std::int64_t a, std::uint64_t q);

// lambda_l mod q via CRT over the prime powers of q. Used by the multiplier
// evaluators for phase tables.
std::uint64_t lambda_mod(unsigned l, std::uint64_t q);

// Windows H_j = [2^(2^(c(j-1))), 2^(2^(cj))), j >= 1: pairwise disjoint and
// covering [2, inf).
struct WindowConfig {
    unsigned exponent = 16;  // c
};

// The unique j with lambda in H_j. Requires lambda >= 2.
unsigned j0_for(const BigInt& lambda, const WindowConfig& w);
unsigned j0_for(std::uint64_t lambda, const WindowConfig& w);

// ---- prime utilities shared with the exponential-sum module ----

bool is_prime(std::uint64_t p);

// Prime factorization (p, multiplicity), p ascending. Trial division up to
// kTrialDivisionLimit; a remaining cofactor must be prime or the call throws
// FactorizationFailed.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t q);

// All divisors of q, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t q);

}  // namespace spherelab::seqfact

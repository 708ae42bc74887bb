// Factorial sequence arithmetic: Legendre valuations, CRT residues,
// divisibility and sparsity without materializing huge factorials.

#include "spherelab/seqfact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/miller_rabin.hpp>

namespace spherelab::seqfact {

namespace {

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint64_t i = 2; i <= kTrialDivisionLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kTrialDivisionLimit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin(const BigInt& n) {
    return boost::multiprecision::miller_rabin_test(n, 25);
}

// v_p(m!) = sum_{k>=1} floor(m / p^k)   (Legendre's formula)
BigInt legendre_valuation(const BigInt& m, const BigInt& p) {
    BigInt v = 0;
    BigInt pk = p;
    while (pk <= m) {
        v += m / pk;
        if (pk > m / p) break;  // next power would exceed m
        pk *= p;
    }
    return v;
}

struct BigFactor {
    BigInt p;
    unsigned k;
};

// Factor an arbitrary-precision modulus by trial division; a leftover
// cofactor must be prime. Throws FactorizationFailed otherwise.
std::vector<BigFactor> factorize_big(const BigInt& q) {
    if (q <= 0) throw std::invalid_argument("factorize_big: modulus must be positive");
    std::vector<BigFactor> out;
    BigInt rest = q;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1) break;
        if (BigInt(p) * p > rest) break;  // rest is prime or 1
        if (rest % p != 0) continue;
        unsigned k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        out.push_back({BigInt(p), k});
    }
    if (rest > 1) {
        if (rest > BigInt(kTrialDivisionLimit) * kTrialDivisionLimit && !miller_rabin(rest))
            throw FactorizationFailed("composite cofactor above trial-division range: " +
                                      rest.str());
        out.push_back({rest, 1});
    }
    return out;
}

// (2^l)! mod m by running the product directly. Only reachable when the
// valuation route does not settle the residue, which forces 2^l below ~2^26
// (otherwise every admissible prime power already divides the factorial).
BigInt factorial_mod_direct(unsigned l, const BigInt& mod) {
    if (l > 26)
        throw std::logic_error("factorial_mod_direct: index out of the reachable range");
    std::uint64_t m = std::uint64_t{1} << l;
    BigInt acc = 1;
    for (std::uint64_t t = 2; t <= m; ++t) {
        acc *= t;
        acc %= mod;
        if (acc == 0) break;
    }
    return acc;
}

// Residue of (2^l)! modulo a prime power.
BigInt lambda_mod_prime_power(unsigned l, const BigInt& p, unsigned k) {
    BigInt pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    BigInt m = BigInt(1) << l;
    if (legendre_valuation(m, p) >= k) return 0;
    return factorial_mod_direct(l, pk);
}

BigInt lambda_mod_big(unsigned l, const BigInt& q) {
    FactorialIndex fi = FactorialIndex::power2(l);
    if (fi.materializable()) return fi.value() % q;
    // CRT over the prime powers of q.
    BigInt result = 0, modulus = 1;
    for (const auto& [p, k] : factorize_big(q)) {
        BigInt pk = 1;
        for (unsigned i = 0; i < k; ++i) pk *= p;
        BigInt r = lambda_mod_prime_power(l, p, k);
        // Combine x = result (mod modulus), x = r (mod pk).
        BigInt inv;
        {
            // Extended gcd for modulus^{-1} mod pk (moduli are coprime).
            BigInt a = modulus % pk, b = pk, x0 = 1, x1 = 0;
            while (b != 0) {
                BigInt t = a / b;
                a -= t * b;
                std::swap(a, b);
                x0 -= t * x1;
                std::swap(x0, x1);
            }
            inv = x0 % pk;
            if (inv < 0) inv += pk;
        }
        BigInt diff = (r - result) % pk;
        if (diff < 0) diff += pk;
        result += modulus * ((diff * inv) % pk);
        modulus *= pk;
    }
    return result % q;
}

}  // namespace

// ---- FactorialIndex ----

FactorialIndex FactorialIndex::power2(unsigned l) {
    if (l == 0) throw std::invalid_argument("sequence index must be >= 1");
    return FactorialIndex(l, BigInt(1) << l);
}

FactorialIndex FactorialIndex::plain(unsigned l) {
    if (l == 0) throw std::invalid_argument("sequence index must be >= 1");
    return FactorialIndex(l, BigInt(l));
}

std::size_t FactorialIndex::digit_count() const {
    if (m_ <= 1) return 1;
    long double md;
    try {
        md = m_.convert_to<long double>();
    } catch (...) {
        return std::numeric_limits<std::size_t>::max();
    }
    if (!std::isfinite(static_cast<double>(md)) && md > 1e300L)
        return std::numeric_limits<std::size_t>::max();
    long double lg = std::lgamma(md + 1.0L) / std::numbers::ln10_v<long double>;
    if (lg > 1e15L) return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(lg) + 1;
}

bool FactorialIndex::materializable(std::size_t digitBudget) const {
    return digit_count() <= digitBudget;
}

const BigInt& FactorialIndex::value(std::size_t digitBudget) const {
    if (!materializable(digitBudget))
        throw BudgetExceeded("factorial of " + m_.str() + " exceeds the digit budget of " +
                             std::to_string(digitBudget));
    static std::mutex mu;
    static std::map<BigInt, std::unique_ptr<const BigInt>> cache;  // write-once cells
    std::scoped_lock lock(mu);
    auto it = cache.find(m_);
    if (it == cache.end()) {
        BigInt f = 1;
        for (BigInt t = 2; t <= m_; ++t) f *= t;
        it = cache.emplace(m_, std::make_unique<const BigInt>(std::move(f))).first;
    }
    return *it->second;
}

BigInt FactorialIndex::valuation(std::uint64_t p) const {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    return legendre_valuation(m_, BigInt(p));
}

// ---- sequence operations ----

BigInt lambda_value(unsigned l, std::size_t digitBudget) {
    return FactorialIndex::power2(l).value(digitBudget);
}

BigInt lambda_valuation(unsigned l, std::uint64_t p) {
    return FactorialIndex::power2(l).valuation(p);
}

bool divides_lambda(const BigInt& q, unsigned l) {
    if (q <= 0) throw std::invalid_argument("divides_lambda: q must be positive");
    if (q == 1) return true;
    const BigInt m = BigInt(1) << l;

    BigInt rest = q;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1) return true;
        if (BigInt(p) * p > rest) {
            // rest itself is prime.
            if (legendre_valuation(m, rest) < 1) return false;
            return true;
        }
        if (rest % p != 0) continue;
        unsigned k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if (legendre_valuation(m, BigInt(p)) < k) return false;
    }
    if (rest == 1) return true;

    // Every remaining prime factor exceeds the trial-division limit.
    if (m < kTrialDivisionLimit) return false;  // those primes exceed m, valuation 0
    if (miller_rabin(rest)) return legendre_valuation(m, rest) >= 1;

    // Composite cofactor with all factors above the limit. Settle by direct
    // residue when the factorial is short enough to iterate, otherwise by a
    // sufficiency bound on the worst-case factor.
    if (l <= 26) return factorial_mod_direct(l, rest) == 0;
    BigInt largestPossibleFactor = rest / kTrialDivisionLimit;
    if (largestPossibleFactor <= m) {
        BigInt vLow = m / largestPossibleFactor;  // lower bound for every valuation
        long double bits = static_cast<long double>(boost::multiprecision::msb(rest) + 1);
        auto kHigh = static_cast<std::uint64_t>(bits / std::log2(1.0e6L)) + 1;
        if (vLow >= kHigh) return true;
    }
    throw FactorizationFailed("cannot settle divisibility for cofactor " + rest.str());
}

bool divides_lambda(std::uint64_t q, unsigned l) { return divides_lambda(BigInt(q), l); }

bool check_sparsity(unsigned l, SequenceKind kind) {
    if (l == 0) throw std::invalid_argument("sequence index must be >= 1");
    if (kind == SequenceKind::Lacunary2L) return 2 * l < l + 1;  // false for all l >= 1

    FactorialIndex a = (kind == SequenceKind::Factorial2L) ? FactorialIndex::power2(l)
                                                           : FactorialIndex::plain(l);
    FactorialIndex b = (kind == SequenceKind::Factorial2L) ? FactorialIndex::power2(l + 1)
                                                           : FactorialIndex::plain(l + 1);
    if (a.materializable() && b.materializable()) {
        const BigInt& va = a.value();
        return va * va < b.value();
    }
    if (kind == SequenceKind::Factorial2L && l >= 16000) {
        // (m!)^2 < (2m)! exactly: the ratio is the central binomial coefficient.
        return true;
    }
    long double ma = a.base().convert_to<long double>();
    long double mb = b.base().convert_to<long double>();
    long double la = std::lgamma(ma + 1.0L);
    long double lb = std::lgamma(mb + 1.0L);
    long double diff = lb - 2.0L * la;
    long double margin = 64 * std::numeric_limits<long double>::epsilon() *
                         (std::abs(lb) + 2.0L * std::abs(la));
    if (std::abs(diff) <= margin)
        throw RangeExceeded("sparsity comparison ambiguous at index " + std::to_string(l));
    return diff > 0;
}

std::complex<double> character_value(unsigned l, std::int64_t a, const BigInt& q) {
    if (q <= 0) throw std::invalid_argument("character_value: q must be positive");
    if (q == 1) return {1.0, 0.0};
    BigInt aq = BigInt(a) % q;
    if (aq < 0) aq += q;
    if (aq == 0) return {1.0, 0.0};
    if (divides_lambda(q, l)) return {1.0, 0.0};
    BigInt t = (lambda_mod_big(l, q) * aq) % q;
    if (t == 0) return {1.0, 0.0};
    double frac = t.convert_to<double>() / q.convert_to<double>();
    return std::polar(1.0, -2.0 * std::numbers::pi * frac);
}

std::complex<double> character_value(unsigned l, std::int64_t a, std::uint64_t q) {
    return character_value(l, a, BigInt(q));
}

std::uint64_t lambda_mod(unsigned l, std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("lambda_mod: q must be positive");
    return lambda_mod_big(l, BigInt(q)).convert_to<std::uint64_t>();
}

unsigned j0_for(const BigInt& lambda, const WindowConfig& w) {
    if (lambda < 2) throw std::invalid_argument("j0_for: lambda must be >= 2");
    if (w.exponent == 0) throw std::invalid_argument("window exponent must be >= 1");
    // lambda < 2^(2^(c j))  <=>  bitlength(lambda) <= 2^(c j)
    const std::uint64_t bits = boost::multiprecision::msb(lambda) + 1;
    unsigned j = 1;
    while (true) {
        const std::uint64_t shift = std::uint64_t{w.exponent} * j;
        if (shift >= 63) return j;  // threshold 2^63 exceeds any practical bitlength
        if (bits <= (std::uint64_t{1} << shift)) return j;
        ++j;
    }
}

unsigned j0_for(std::uint64_t lambda, const WindowConfig& w) {
    return j0_for(BigInt(lambda), w);
}

// ---- prime utilities ----

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint32_t q : small_primes()) {
        if (std::uint64_t{q} * q > p) return true;
        if (p % q == 0) return p == q;
    }
    // No factor below 1e6; p <= 1e12 would already be settled, use a
    // probabilistic certificate beyond that.
    return miller_rabin(BigInt(p));
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("factorize: q must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    std::uint64_t rest = q;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1) return out;
        if (std::uint64_t{p} * p > rest) break;
        if (rest % p != 0) continue;
        unsigned k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (rest > 1) {
        if (!is_prime(rest))
            throw FactorizationFailed("composite cofactor " + std::to_string(rest) +
                                      " above trial-division range");
        out.emplace_back(rest, 1);
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t q) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, k] : factorize(q)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= k; ++i) {
            pk *= p;
            for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spherelab::seqfact

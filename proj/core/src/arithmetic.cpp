#include "spherelab/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "spherelab/rng.hpp"
#include "spherelab/seqfact.hpp"

namespace spherelab::arithmetic {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t q) {
    std::int64_t r = v % q;
    return r < 0 ? r + q : r;
}

// (a*b) mod q without overflow for q up to ~9e18.
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
    return static_cast<std::int64_t>(
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) *
            static_cast<std::uint64_t>(b) %
        static_cast<std::uint64_t>(q));
}

std::mutex& fftw_plan_mutex() {
    static std::mutex mu;  // FFTW planning is not thread-safe
    return mu;
}

}  // namespace

cplx quad_gauss_1d(std::int64_t a, std::int64_t b, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("quad_gauss_1d: q must be >= 1");
    const std::int64_t ar = mod_reduce(a, q), br = mod_reduce(b, q);
    cplx sum{0.0, 0.0};
    for (std::int64_t s = 0; s < q; ++s) {
        const std::int64_t t = mod_reduce(mulmod(ar, mulmod(s, s, q), q) + mulmod(br, s, q), q);
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(q);
        sum += cplx{std::cos(phase), std::sin(phase)};
    }
    return sum;
}

std::vector<std::int64_t> units_mod(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("units_mod: q must be >= 1");
    if (q == 1) return {0};
    std::vector<std::int64_t> out;
    for (std::int64_t a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) out.push_back(a);
    return out;
}

struct GaussSumTable::Fft {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;

    explicit Fft(std::int64_t q) {
        in = fftw_alloc_complex(static_cast<std::size_t>(q));
        out = fftw_alloc_complex(static_cast<std::size_t>(q));
        std::scoped_lock lock(fftw_plan_mutex());
        // BACKWARD sign convention gives sum_r in[r] e(+a r / q).
        plan = fftw_plan_dft_1d(static_cast<int>(q), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::scoped_lock lock(fftw_plan_mutex());
        if (plan) fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
};

GaussSumTable::GaussSumTable(std::int64_t q) : q_(q) {
    if (q < 1) throw std::invalid_argument("GaussSumTable: q must be >= 1");
    if (q > (std::int64_t{1} << 26))
        throw RangeExceeded("Gauss table modulus too large: " + std::to_string(q));
    roots_.resize(static_cast<std::size_t>(q));
    for (std::int64_t t = 0; t < q; ++t) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(q);
        roots_[static_cast<std::size_t>(t)] = cplx{std::cos(phase), std::sin(phase)};
    }
    fft_ = std::make_unique<Fft>(q);
}

GaussSumTable::~GaussSumTable() = default;

cplx GaussSumTable::unit(std::int64_t k) const {
    return roots_[static_cast<std::size_t>(mod_reduce(k, q_))];
}

const std::vector<cplx>& GaussSumTable::column(std::int64_t b) const {
    const std::int64_t br = mod_reduce(b, q_);
    {
        std::shared_lock lock(mu_);
        auto it = columns_.find(br);
        if (it != columns_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = columns_.find(br);
    if (it != columns_.end()) return it->second;

    // Bucket W_b[r] = sum over s with s^2 = r of e(b s / q), then one DFT.
    const auto nq = static_cast<std::size_t>(q_);
    for (std::size_t r = 0; r < nq; ++r) fft_->in[r][0] = fft_->in[r][1] = 0.0;
    for (std::int64_t s = 0; s < q_; ++s) {
        const auto r = static_cast<std::size_t>(mulmod(s, s, q_));
        const cplx w = roots_[static_cast<std::size_t>(mulmod(br, s, q_))];
        fft_->in[r][0] += w.real();
        fft_->in[r][1] += w.imag();
    }
    fftw_execute(fft_->plan);
    std::vector<cplx> col(nq);
    for (std::size_t a = 0; a < nq; ++a) col[a] = cplx{fft_->out[a][0], fft_->out[a][1]};
    return columns_.emplace(br, std::move(col)).first->second;
}

cplx GaussSumTable::one_dim(std::int64_t a, std::int64_t b) const {
    return column(b)[static_cast<std::size_t>(mod_reduce(a, q_))];
}

cplx GaussSumTable::F(std::int64_t a, std::span<const std::int64_t> avec) const {
    const auto ar = static_cast<std::size_t>(mod_reduce(a, q_));
    cplx prod{1.0, 0.0};
    for (std::int64_t b : avec) prod *= column(b)[ar];
    return prod * std::pow(static_cast<double>(q_), -static_cast<double>(avec.size()));
}

const GaussSumTable& GaussTableCache::table(std::int64_t q) {
    {
        std::shared_lock lock(mu_);
        auto it = tables_.find(q);
        if (it != tables_.end()) return *it->second;
    }
    std::unique_lock lock(mu_);
    auto it = tables_.find(q);
    if (it == tables_.end())
        it = tables_.emplace(q, std::make_unique<GaussSumTable>(q)).first;
    return *it->second;
}

namespace {

GaussTableCache& shared_cache() {
    static GaussTableCache cache;
    return cache;
}

}  // namespace

cplx gauss_F(std::int64_t q, std::int64_t a, std::span<const std::int64_t> avec) {
    return shared_cache().table(q).F(a, avec);
}

GaussBoundReport gauss_bound_check(std::int64_t qmax, int n, int samplesPerPair,
                                   std::uint64_t seed) {
    if (qmax < 2) throw std::invalid_argument("gauss_bound_check: qmax must be >= 2");
    if (n < 1) throw std::invalid_argument("gauss_bound_check: n must be >= 1");
    GaussBoundReport rep;
    rep.n = n;
    rep.qmax = qmax;
    rep.samplesPerPair = samplesPerPair;
    rep.seed = seed;
    Rng rng(seed);
    std::vector<std::int64_t> avec(static_cast<std::size_t>(n), 0);
    for (std::int64_t q = 1; q <= qmax; ++q) {
        const GaussSumTable& table = shared_cache().table(q);
        const double scale = std::pow(static_cast<double>(q), 0.5 * n);
        for (std::int64_t a : units_mod(q)) {
            for (int s = 0; s <= samplesPerPair; ++s) {
                if (s == 0) {
                    std::fill(avec.begin(), avec.end(), 0);
                } else {
                    for (auto& c : avec) c = static_cast<std::int64_t>(rng.below(
                        static_cast<std::uint64_t>(q)));
                }
                const double v = std::abs(table.F(a, avec)) * scale;
                if (v > rep.maxNormalized) {
                    rep.maxNormalized = v;
                    rep.argQ = q;
                    rep.argA = a;
                    rep.argAvec = avec;
                }
            }
        }
    }
    return rep;
}

std::vector<std::uint64_t> squares_distribution(std::int64_t q, int n) {
    if (q < 1 || n < 1) throw std::invalid_argument("squares_distribution: bad arguments");
    const auto nq = static_cast<std::size_t>(q);
    if (nq > 200000)
        throw RangeExceeded("squares distribution DP infeasible for modulus " +
                            std::to_string(q));
    std::vector<unsigned __int128> one(nq, 0), cur(nq, 0), next(nq);
    for (std::int64_t s = 0; s < q; ++s) ++one[static_cast<std::size_t>(mulmod(s, s, q))];
    cur = one;
    for (int k = 1; k < n; ++k) {
        std::fill(next.begin(), next.end(), static_cast<unsigned __int128>(0));
        for (std::size_t r = 0; r < nq; ++r) {
            if (one[r] == 0) continue;
            const unsigned __int128 w = one[r];
            for (std::size_t t = 0; t < nq; ++t) {
                std::size_t dst = r + t;
                if (dst >= nq) dst -= nq;
                next[dst] += w * cur[t];
            }
        }
        std::swap(cur, next);
    }
    std::vector<std::uint64_t> out(nq);
    for (std::size_t r = 0; r < nq; ++r) {
        if (cur[r] > std::numeric_limits<std::uint64_t>::max())
            throw RangeExceeded("squares distribution count overflows 64 bits");
        out[r] = static_cast<std::uint64_t>(cur[r]);
    }
    return out;
}

double ZeroCountReport::normalized() const {
    return num.convert_to<double>() / den.convert_to<double>();
}

ZeroCountReport zero_count(std::int64_t Q, int n) {
    if (Q < 1 || n < 1) throw std::invalid_argument("zero_count: bad arguments");
    ZeroCountReport rep;
    rep.Q = Q;
    rep.n = n;
    rep.count = 1;
    for (const auto& [p, k] : seqfact::factorize(static_cast<std::uint64_t>(Q))) {
        std::int64_t pk = 1;
        for (unsigned i = 0; i < k; ++i) pk *= static_cast<std::int64_t>(p);
        rep.count *= BigInt(squares_distribution(pk, n)[0]);
    }
    BigInt den = 1;
    for (int i = 0; i + 1 < n; ++i) den *= Q;
    BigInt g = boost::multiprecision::gcd(rep.count, den);
    rep.num = rep.count / g;
    rep.den = den / g;
    return rep;
}

double completed_sum_identity(std::int64_t q, std::int64_t lambda, int n) {
    if (q < 1 || n < 1) throw std::invalid_argument("completed_sum_identity: bad arguments");
    const GaussSumTable& table = shared_cache().table(q);
    const std::vector<cplx>& col0 = table.column(0);
    const std::int64_t lr = mod_reduce(lambda, q);
    const double qn = std::pow(static_cast<double>(q), -static_cast<double>(n));
    cplx left{0.0, 0.0};
    for (std::int64_t a = 0; a < q; ++a) {
        cplx g{1.0, 0.0};
        for (int i = 0; i < n; ++i) g *= col0[static_cast<std::size_t>(a)];
        left += g * qn * table.unit(-mulmod(lr, a, q));
    }
    const auto dist = squares_distribution(q, n);
    const double right = static_cast<double>(dist[static_cast<std::size_t>(lr)]) *
                         std::pow(static_cast<double>(q), 1.0 - n);
    return std::abs(left - right);
}

}  // namespace spherelab::arithmetic

#include "spherelab/multipliers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spherelab/lattice.hpp"
#include "spherelab/rng.hpp"
#include "spherelab/seqfact.hpp"

namespace spherelab::multipliers {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t mod_reduce(std::int64_t v, std::int64_t q) {
    std::int64_t r = v % q;
    return r < 0 ? r + q : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
    return static_cast<std::int64_t>(
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) *
            static_cast<std::uint64_t>(b) %
        static_cast<std::uint64_t>(q));
}

double smooth_g(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double zeta1(double t) {
    const double a = std::abs(t);
    if (a <= CutoffSpec::innerHalfWidth) return 1.0;
    if (a >= CutoffSpec::outerHalfWidth) return 0.0;
    const double u1 = (a - CutoffSpec::innerHalfWidth) * 10.0;
    const double u2 = (CutoffSpec::outerHalfWidth - a) * 10.0;
    const double g1 = smooth_g(u1), g2 = smooth_g(u2);
    return g2 / (g1 + g2);
}

double zeta(std::span<const double> x) {
    double prod = 1.0;
    for (double c : x) {
        prod *= zeta1(c);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

namespace {

// Power series of Gamma(n/2) (z/2)^{-nu} J_nu(z), nu = (n-2)/2; converges
// for moderate z, used below z = 30.
double sphere_ft_series(int n, double z) {
    const double x = -0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < 256; ++m) {
        term *= x / ((m + 1.0) * (m + 0.5 * n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

// Spherical Bessel j_k by upward recurrence; stable here since callers only
// use it for z well above the order.
double spherical_bessel(int k, double z) {
    double jm = std::sin(z) / z;  // j_0
    if (k == 0) return jm;
    double j = std::sin(z) / (z * z) - std::cos(z) / z;  // j_1
    for (int i = 1; i < k; ++i) {
        const double jn = (2.0 * i + 1.0) / z * j - jm;
        jm = j;
        j = jn;
    }
    return j;
}

}  // namespace

double sphere_ft(int n, double t) {
    if (n < 2) throw UnsupportedDimension("sphere transform needs dimension >= 2");
    if (t < 0.0 || !std::isfinite(t))
        throw std::invalid_argument("sphere_ft: radius must be finite and >= 0");
    const double z = 2.0 * kPi * t;
    if (n == 5) {
        if (z < 1e-3) {
            const double z2 = z * z;
            return 1.0 - z2 / 10.0 + z2 * z2 / 280.0 - z2 * z2 * z2 / 15120.0;
        }
        return 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
    }
    if (n == 3) {
        if (z < 1e-3) {
            const double z2 = z * z;
            return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
        }
        return std::sin(z) / z;
    }
    if (z <= 30.0) return sphere_ft_series(n, z);
    const double nu = 0.5 * (n - 2);
    const double front = std::tgamma(0.5 * n) * std::pow(0.5 * z, -nu);
    if (n % 2 == 1) {
        const int k = (n - 3) / 2;
        return front * std::sqrt(2.0 * z / kPi) * spherical_bessel(k, z);
    }
    return front * std::cyl_bessel_j(nu, z);
}

FrequencyPoint::FrequencyPoint(std::vector<double> coords) : xi(std::move(coords)) {
    for (double& c : xi) {
        c -= std::floor(c);
        if (c >= 1.0) c = 0.0;  // guard against floor rounding at the seam
    }
}

std::vector<FrequencyPoint> uniform_points(int n, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FrequencyPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> c(static_cast<std::size_t>(n));
        for (double& v : c) v = rng.uniform01();
        out.emplace_back(std::move(c));
    }
    return out;
}

// ---- MultiplierLab ----

MultiplierLab::MultiplierLab(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("MultiplierLab: dimension must be >= 1");
}

struct MultiplierLab::Located {
    std::vector<std::int64_t> b;  // nearest residue per coordinate
    std::vector<double> d;        // xi - b/q folded, |d_i| <= 1/(2q)
    double dist = 0.0;            // |d|_2
};

MultiplierLab::Located MultiplierLab::locate(const FrequencyPoint& xi, std::int64_t q) const {
    Located loc;
    loc.b.resize(xi.xi.size());
    loc.d.resize(xi.xi.size());
    double s2 = 0.0;
    for (std::size_t i = 0; i < xi.xi.size(); ++i) {
        const double y = xi.xi[i] * static_cast<double>(q);
        const auto b = static_cast<std::int64_t>(std::llround(y));
        const double d = xi.xi[i] - static_cast<double>(b) / static_cast<double>(q);
        loc.b[i] = mod_reduce(b, q);
        loc.d[i] = d;
        s2 += d * d;
    }
    loc.dist = std::sqrt(s2);
    return loc;
}

std::uint64_t MultiplierLab::rep_count(std::int64_t lambda) const {
    std::scoped_lock lock(repMu_);
    auto it = repCounts_.find(lambda);
    if (it == repCounts_.end())
        it = repCounts_.emplace(lambda, lattice::count_representations(lambda, n_, lambda))
                 .first;
    return it->second;
}

double MultiplierLab::lambda_as_double(unsigned l) const {
    const auto& v = seqfact::lambda_value(l);
    const double d = v.convert_to<double>();
    if (!std::isfinite(d))
        throw BudgetExceeded("sequence element at index " + std::to_string(l) +
                             " exceeds double range");
    return d;
}

std::int64_t MultiplierLab::window_modulus(unsigned j) const {
    const auto& v = seqfact::lambda_value(j);
    if (v > (seqfact::BigInt(1) << 62))
        throw RangeExceeded("window modulus (2^" + std::to_string(j) +
                            ")! exceeds machine range");
    return v.convert_to<std::int64_t>();
}

cplx MultiplierLab::omega_hat(std::int64_t lambda, const FrequencyPoint& xi) const {
    if (xi.dim() != n_) throw std::invalid_argument("omega_hat: dimension mismatch");
    const std::uint64_t r = rep_count(lambda);
    if (r == 0) throw EmptySphere("no lattice points with |x|^2 = " + std::to_string(lambda));
    const auto m = static_cast<std::size_t>(lattice::detail::isqrt(lambda));
    std::vector<double> wt(static_cast<std::size_t>(n_) * (m + 1));
    for (int i = 0; i < n_; ++i) {
        wt[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
        for (std::size_t v = 1; v <= m; ++v)
            wt[static_cast<std::size_t>(i) * (m + 1) + v] =
                2.0 * std::cos(2.0 * kPi * static_cast<double>(v) * xi.xi[static_cast<std::size_t>(i)]);
    }
    double sum = 0.0;
    lattice::visit_nonneg_sphere(lambda, n_, [&](std::span<const std::int32_t> p) {
        double prod = 1.0;
        for (int i = 0; i < n_; ++i)
            prod *= wt[static_cast<std::size_t>(i) * (m + 1) + static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
        sum += prod;
    });
    return {sum / static_cast<double>(r), 0.0};
}

std::vector<double> MultiplierLab::omega_hat_grid(std::int64_t lambda,
                                                  std::span<const FrequencyPoint> grid) const {
    const std::uint64_t r = rep_count(lambda);
    if (r == 0) throw EmptySphere("no lattice points with |x|^2 = " + std::to_string(lambda));
    const std::vector<std::int32_t> coords = lattice::enumerate_nonneg(lambda, n_);
    const std::size_t npts = coords.size() / static_cast<std::size_t>(n_);
    const auto m = static_cast<std::size_t>(lattice::detail::isqrt(lambda));
    std::vector<double> out(grid.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const FrequencyPoint& xi = grid[g];
        std::vector<double> wt(static_cast<std::size_t>(n_) * (m + 1));
        for (int i = 0; i < n_; ++i) {
            wt[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
            for (std::size_t v = 1; v <= m; ++v)
                wt[static_cast<std::size_t>(i) * (m + 1) + v] =
                    2.0 * std::cos(2.0 * kPi * static_cast<double>(v) *
                                   xi.xi[static_cast<std::size_t>(i)]);
        }
        double sum = 0.0;
        const std::int32_t* c = coords.data();
        for (std::size_t p = 0; p < npts; ++p, c += n_) {
            double prod = wt[static_cast<std::size_t>(c[0])];
            for (int i = 1; i < n_; ++i)
                prod *= wt[static_cast<std::size_t>(i) * (m + 1) + static_cast<std::size_t>(c[i])];
            sum += prod;
        }
        out[g] = sum / static_cast<double>(r);
    }
    return out;
}

cplx MultiplierLab::omega_eval(std::int64_t lambda, std::int64_t q,
                               const FrequencyPoint& xi) const {
    if (lambda < 1 || q < 1) throw std::invalid_argument("omega_eval: bad arguments");
    if (xi.dim() != n_) throw std::invalid_argument("omega_eval: dimension mismatch");
    const Located loc = locate(xi, q);
    const double qsq = static_cast<double>(q) * static_cast<double>(q);
    double zcut = 1.0;
    for (double d : loc.d) {
        zcut *= zeta1(qsq * d);
        if (zcut == 0.0) return {0.0, 0.0};
    }
    const double ds = sphere_ft(n_, std::sqrt(static_cast<double>(lambda)) * loc.dist);
    const arithmetic::GaussSumTable& table = gauss_.table(q);
    std::vector<const std::vector<cplx>*> cols(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) cols[static_cast<std::size_t>(i)] = &table.column(loc.b[static_cast<std::size_t>(i)]);
    const std::int64_t lr = mod_reduce(lambda, q);
    cplx sum{0.0, 0.0};
    for (std::int64_t a = 0; a < q; ++a) {
        cplx prod = (*cols[0])[static_cast<std::size_t>(a)];
        for (int i = 1; i < n_; ++i) prod *= (*cols[static_cast<std::size_t>(i)])[static_cast<std::size_t>(a)];
        sum += prod * table.unit(-mulmod(lr, a, q));
    }
    const double qn = std::pow(static_cast<double>(q), -static_cast<double>(n_));
    return sum * (qn * zcut * ds);
}

cplx MultiplierLab::m_eval(std::int64_t lambda, int h, const FrequencyPoint& xi) const {
    if (lambda < 1 || h < 0) throw std::invalid_argument("m_eval: bad arguments");
    if (xi.dim() != n_) throw std::invalid_argument("m_eval: dimension mismatch");
    if (h > 60) throw SupportOverlap("dyadic level " + std::to_string(h) + " out of range");
    const double scale = std::pow(10.0, h);
    const std::int64_t qlo = std::int64_t{1} << h;
    const std::int64_t qhi = (std::int64_t{1} << (h + 1)) - 1;
    // Disjointness of the cutoff supports around distinct avec/q requires the
    // support radius 1/(5 * 10^h) to stay below the half-spacing 1/(2q).
    if (!(2.0 * static_cast<double>(qhi) <= 5.0 * scale))
        throw SupportOverlap("cutoff supports overlap at dyadic level " + std::to_string(h));

    const double sqlam = std::sqrt(static_cast<double>(lambda));
    cplx accum{0.0, 0.0};
    for (std::int64_t q = qlo; q <= qhi; ++q) {
        const Located loc = locate(xi, q);
        double zcut = 1.0;
        for (double d : loc.d) {
            zcut *= zeta1(scale * d);
            if (zcut == 0.0) break;
        }
        if (zcut == 0.0) continue;
        const double ds = sphere_ft(n_, sqlam * loc.dist);
        const arithmetic::GaussSumTable& table = gauss_.table(q);
        std::vector<const std::vector<cplx>*> cols(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            cols[static_cast<std::size_t>(i)] = &table.column(loc.b[static_cast<std::size_t>(i)]);
        const std::int64_t lr = mod_reduce(lambda, q);
        const double qn = std::pow(static_cast<double>(q), -static_cast<double>(n_));
        cplx inner{0.0, 0.0};
        if (q == 1) {
            // U_1 = {0}: single term, all factors G(0,0;1) = 1.
            cplx prod = (*cols[0])[0];
            for (int i = 1; i < n_; ++i)
                prod *= (*cols[static_cast<std::size_t>(i)])[0];
            inner = prod;
        } else {
            for (std::int64_t a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                cplx prod = (*cols[0])[static_cast<std::size_t>(a)];
                for (int i = 1; i < n_; ++i)
                    prod *= (*cols[static_cast<std::size_t>(i)])[static_cast<std::size_t>(a)];
                inner += prod * table.unit(-mulmod(lr, a, q));
            }
        }
        accum += inner * (qn * zcut * ds);
    }
    return accum;
}

cplx MultiplierLab::e1_eval(unsigned l, unsigned j, const FrequencyPoint& xi) const {
    if (j < 1) throw std::invalid_argument("e1_eval: j must be >= 1");
    if (xi.dim() != n_) throw std::invalid_argument("e1_eval: dimension mismatch");
    const double lam = lambda_as_double(l);
    const std::int64_t Qj = window_modulus(j);
    const double QjSq = static_cast<double>(Qj) * static_cast<double>(Qj);
    const double sqlam = std::sqrt(lam);

    cplx accum{0.0, 0.0};
    for (unsigned h = 0; h < j; ++h) {
        const double scale = std::pow(10.0, h);
        const std::int64_t qlo = std::int64_t{1} << h;
        const std::int64_t qhi = (std::int64_t{1} << (h + 1)) - 1;
        for (std::int64_t q = qlo; q <= qhi; ++q) {
            const Located loc = locate(xi, q);
            double zOuter = 1.0, zInner = 1.0;
            for (double d : loc.d) {
                zOuter *= zeta1(QjSq * d);
                zInner *= zeta1(scale * d);
            }
            const double w = zOuter - zInner;
            if (w == 0.0) continue;
            const double ds = sphere_ft(n_, sqlam * loc.dist);
            const arithmetic::GaussSumTable& table = gauss_.table(q);
            std::vector<const std::vector<cplx>*> cols(static_cast<std::size_t>(n_));
            for (int i = 0; i < n_; ++i)
                cols[static_cast<std::size_t>(i)] = &table.column(loc.b[static_cast<std::size_t>(i)]);
            const auto lr = static_cast<std::int64_t>(seqfact::lambda_mod(l, static_cast<std::uint64_t>(q)));
            const double qn = std::pow(static_cast<double>(q), -static_cast<double>(n_));
            cplx inner{0.0, 0.0};
            if (q == 1) {
                cplx prod = (*cols[0])[0];
                for (int i = 1; i < n_; ++i)
                    prod *= (*cols[static_cast<std::size_t>(i)])[0];
                inner = prod;
            } else {
                for (std::int64_t a = 1; a < q; ++a) {
                    if (std::gcd(a, q) != 1) continue;
                    cplx prod = (*cols[0])[static_cast<std::size_t>(a)];
                    for (int i = 1; i < n_; ++i)
                        prod *= (*cols[static_cast<std::size_t>(i)])[static_cast<std::size_t>(a)];
                    inner += prod * table.unit(-mulmod(lr, a, q));
                }
            }
            accum += inner * (qn * w * ds);
        }
    }
    return accum;
}

cplx MultiplierLab::e2_eval(unsigned l, unsigned j, const FrequencyPoint& xi) const {
    if (j < 1) throw std::invalid_argument("e2_eval: j must be >= 1");
    if (xi.dim() != n_) throw std::invalid_argument("e2_eval: dimension mismatch");
    const double lam = lambda_as_double(l);
    const std::int64_t Qj = window_modulus(j);
    const double QjSq = static_cast<double>(Qj) * static_cast<double>(Qj);
    const double sqlam = std::sqrt(lam);
    const std::int64_t qmin = std::int64_t{1} << j;

    cplx accum{0.0, 0.0};
    for (std::uint64_t qd : seqfact::divisors(static_cast<std::uint64_t>(Qj))) {
        const auto q = static_cast<std::int64_t>(qd);
        if (q < qmin) continue;
        const Located loc = locate(xi, q);
        double zcut = 1.0;
        for (double d : loc.d) {
            zcut *= zeta1(QjSq * d);
            if (zcut == 0.0) break;
        }
        if (zcut == 0.0) continue;
        const double ds = sphere_ft(n_, sqlam * loc.dist);
        const arithmetic::GaussSumTable& table = gauss_.table(q);
        std::vector<const std::vector<cplx>*> cols(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            cols[static_cast<std::size_t>(i)] = &table.column(loc.b[static_cast<std::size_t>(i)]);
        const auto lr = static_cast<std::int64_t>(seqfact::lambda_mod(l, static_cast<std::uint64_t>(q)));
        const double qn = std::pow(static_cast<double>(q), -static_cast<double>(n_));
        cplx inner{0.0, 0.0};
        for (std::int64_t a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            cplx prod = (*cols[0])[static_cast<std::size_t>(a)];
            for (int i = 1; i < n_; ++i)
                prod *= (*cols[static_cast<std::size_t>(i)])[static_cast<std::size_t>(a)];
            inner += prod * table.unit(-mulmod(lr, a, q));
        }
        accum += inner * (qn * zcut * ds);
    }
    return accum;
}

cplx MultiplierLab::u_eval(unsigned i, const FrequencyPoint& xi) const {
    if (xi.dim() != n_) throw std::invalid_argument("u_eval: dimension mismatch");
    const std::int64_t Q = window_modulus(i);
    const double QSq = static_cast<double>(Q) * static_cast<double>(Q);
    const Located loc = locate(xi, Q);
    double zcut = 1.0;
    for (double d : loc.d) {
        zcut *= zeta1(QSq * d);
        if (zcut == 0.0) return {0.0, 0.0};
    }
    const arithmetic::GaussSumTable& table = gauss_.table(Q);
    std::vector<const std::vector<cplx>*> cols(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k)
        cols[static_cast<std::size_t>(k)] = &table.column(loc.b[static_cast<std::size_t>(k)]);
    cplx sum{0.0, 0.0};
    for (std::int64_t a = 0; a < Q; ++a) {
        cplx prod = (*cols[0])[static_cast<std::size_t>(a)];
        for (int k = 1; k < n_; ++k)
            prod *= (*cols[static_cast<std::size_t>(k)])[static_cast<std::size_t>(a)];
        sum += prod;
    }
    return sum * (std::pow(static_cast<double>(Q), -static_cast<double>(n_)) * zcut);
}

cplx MultiplierLab::v_eval(std::int64_t lambda, unsigned i, const FrequencyPoint& xi) const {
    if (lambda < 1) throw std::invalid_argument("v_eval: lambda must be >= 1");
    if (xi.dim() != n_) throw std::invalid_argument("v_eval: dimension mismatch");
    const std::int64_t Q = window_modulus(i);
    const Located loc = locate(xi, Q);
    double zcut = 1.0;
    for (double d : loc.d) {
        zcut *= zeta1(static_cast<double>(Q) * d);
        if (zcut == 0.0) return {0.0, 0.0};
    }
    return {zcut * sphere_ft(n_, std::sqrt(static_cast<double>(lambda)) * loc.dist), 0.0};
}

std::vector<FrequencyPoint> MultiplierLab::decomposition_samples(unsigned j, int count,
                                                                 std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<FrequencyPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const int uniformCount = count / 2;
    for (int i = 0; i < uniformCount; ++i) {
        std::vector<double> c(static_cast<std::size_t>(n_));
        for (double& v : c) v = rng.uniform01();
        pts.emplace_back(std::move(c));
    }
    // Residual extremes sit at cutoff boundaries: sample exact rationals a/q
    // and points at controlled distances from them.
    const std::int64_t qmax = std::int64_t{1} << j;
    std::int64_t q = 1;
    int dIdx = 0;
    while (pts.size() < static_cast<std::size_t>(count)) {
        const double qd = static_cast<double>(q);
        const double dists[4] = {0.0, 1e-4, 1.0 / (5.0 * qd * qd), 1.0 / (2.0 * qd)};
        const double dist = dists[dIdx];
        std::vector<double> c(static_cast<std::size_t>(n_));
        for (double& v : c) {
            const auto a = static_cast<double>(rng.below(static_cast<std::uint64_t>(q)));
            v = a / qd + (rng.coin() ? dist : -dist);
        }
        pts.emplace_back(std::move(c));
        dIdx = (dIdx + 1) % 4;
        if (dIdx == 0) q = (q >= qmax) ? 1 : q + 1;
    }
    return pts;
}

DecompositionReport MultiplierLab::decomposition_check(unsigned l, unsigned j, int sampleCount,
                                                       std::uint64_t seed) const {
    if (l < j) throw std::invalid_argument("decomposition_check: requires l >= j");
    if (sampleCount < 1) throw std::invalid_argument("decomposition_check: empty sample");
    const std::int64_t lam = window_modulus(l);  // lambda_l, machine range required here
    const std::int64_t Qj = window_modulus(j);

    DecompositionReport rep;
    rep.l = l;
    rep.j = j;
    rep.seed = seed;
    std::vector<FrequencyPoint> pts = decomposition_samples(j, sampleCount, seed);
    rep.samples.resize(pts.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
        const FrequencyPoint& xi = pts[idx];
        cplx lhs = omega_eval(lam, Qj, xi);
        cplx rhs = e1_eval(l, j, xi) + e2_eval(l, j, xi);
        for (unsigned h = 0; h < j; ++h) rhs += m_eval(lam, static_cast<int>(h), xi);
        rep.samples[idx] = {xi, std::abs(lhs - rhs)};
    }
    for (const auto& [xi, r] : rep.samples) rep.maxResidual = std::max(rep.maxResidual, r);
    return rep;
}

int MultiplierLab::default_truncation(std::int64_t lambda) {
    if (lambda < 1) throw std::invalid_argument("default_truncation: lambda must be >= 1");
    return (std::bit_width(static_cast<std::uint64_t>(lambda)) - 1) / 2;
}

double MultiplierLab::approx_residual(std::int64_t lambda, int truncation,
                                      std::span<const FrequencyPoint> grid) const {
    if (truncation < 0) throw std::invalid_argument("approx_residual: truncation must be >= 0");
    const std::vector<double> omega = omega_hat_grid(lambda, grid);
    double maxRes = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : maxRes)
    for (std::size_t g = 0; g < grid.size(); ++g) {
        cplx sum{0.0, 0.0};
        for (int h = 0; h <= truncation; ++h) sum += m_eval(lambda, h, grid[g]);
        maxRes = std::max(maxRes, std::abs(cplx{omega[g], 0.0} - sum));
    }
    return maxRes;
}

DecayFitReport fit_decay_pairs(std::vector<DecayFitReport::Entry> pairs) {
    DecayFitReport rep;
    rep.pairs = std::move(pairs);
    std::vector<double> xs, ys;
    for (auto& e : rep.pairs) {
        e.excluded = (e.supResidual == 0.0);
        if (e.excluded) {
            rep.anyExcluded = true;
            continue;
        }
        xs.push_back(std::log(static_cast<double>(e.lambda)));
        ys.push_back(std::log(e.supResidual));
    }
    if (xs.size() < 3)
        throw DegenerateFit("fewer than 3 nonzero residuals available for the decay fit");
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        var += (xs[i] - mx) * (xs[i] - mx);
    }
    if (var == 0.0) throw DegenerateFit("decay fit has no spread in lambda");
    rep.fittedDelta = -cov / var;
    return rep;
}

DecayFitReport MultiplierLab::decay_fit(std::span<const std::int64_t> lambdas,
                                        std::span<const FrequencyPoint> grid,
                                        std::optional<int> truncation) const {
    if (lambdas.size() < 3)
        throw DegenerateFit("decay fit needs at least 3 lambda values, got " +
                            std::to_string(lambdas.size()));
    std::vector<DecayFitReport::Entry> entries;
    for (std::int64_t lam : lambdas) {
        const int H = truncation.value_or(default_truncation(lam));
        entries.push_back({lam, H, approx_residual(lam, H, grid), false});
    }
    return fit_decay_pairs(std::move(entries));
}

}  // namespace spherelab::multipliers

// Independent reference implementations used by the unit and acceptance
// suites. Everything here is deliberately brute force and shares no code
// with the library paths it checks.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

inline cplx e_of(double z) { return std::polar(1.0, 2.0 * std::numbers::pi * z); }

// #{x in Z^n : |x|^2 = lambda} by nested box loops.
inline std::uint64_t brute_count(std::int64_t lambda, int n) {
    const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(lambda))) + 1;
    std::uint64_t count = 0;
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), -r);
    while (true) {
        std::int64_t s = 0;
        for (std::int64_t c : x) s += c * c;
        if (s == lambda) ++count;
        int i = 0;
        for (; i < n; ++i) {
            if (x[static_cast<std::size_t>(i)] < r) {
                ++x[static_cast<std::size_t>(i)];
                break;
            }
            x[static_cast<std::size_t>(i)] = -r;
        }
        if (i == n) break;
    }
    return count;
}

// F_q(a, avec) by the defining n-dimensional sum (odometer over Z_q^n).
inline cplx brute_gauss_F(std::int64_t q, std::int64_t a, std::span<const std::int64_t> avec) {
    const int n = static_cast<int>(avec.size());
    cplx sum{0.0, 0.0};
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 0);
    while (true) {
        std::int64_t norm = 0, dot = 0;
        for (int i = 0; i < n; ++i) {
            norm += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
            dot += s[static_cast<std::size_t>(i)] * avec[static_cast<std::size_t>(i)];
        }
        sum += e_of(static_cast<double>(((norm % q) * (a % q) % q + (dot % q) + 2 * q) % q) /
                    static_cast<double>(q));
        int i = 0;
        for (; i < n; ++i) {
            if (s[static_cast<std::size_t>(i)] < q - 1) {
                ++s[static_cast<std::size_t>(i)];
                break;
            }
            s[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return sum / std::pow(static_cast<double>(q), n);
}

// #{s in Z_q^n : |s|^2 = target mod q} by odometer.
inline std::uint64_t brute_norm_count(std::int64_t q, int n, std::int64_t target) {
    std::uint64_t count = 0;
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 0);
    while (true) {
        std::int64_t norm = 0;
        for (std::int64_t c : s) norm += c * c;
        if (norm % q == target % q) ++count;
        int i = 0;
        for (; i < n; ++i) {
            if (s[static_cast<std::size_t>(i)] < q - 1) {
                ++s[static_cast<std::size_t>(i)];
                break;
            }
            s[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return count;
}

// Fourier transform of the normalized unit-sphere surface measure at radius
// t, by quadrature of the defining integral: with xi = t e_1,
//   integral over S^{n-1} of e(x . xi) dsigma(x)
//     = c_n int_0^pi cos(2 pi t cos(theta)) sin(theta)^{n-2} dtheta,
// c_n normalizing the measure. Composite Gauss-Legendre with enough panels
// for the oscillation at the largest t in use.
inline double sphere_ft_quadrature(int n, double t, int panels = 400) {
    // 5-point Gauss-Legendre nodes/weights on [-1, 1].
    static const double nodes[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                    0.538469310105683, 0.906179845938664};
    static const double weights[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                      0.478628670499366, 0.236926885056189};
    auto integrate = [&](auto&& f) {
        const double a = 0.0, b = std::numbers::pi;
        const double hw = (b - a) / (2.0 * panels);
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (2 * p + 1) * hw;
            for (int k = 0; k < 5; ++k) total += weights[k] * f(mid + hw * nodes[k]);
        }
        return total * hw;
    };
    const double num = integrate([&](double th) {
        return std::cos(2.0 * std::numbers::pi * t * std::cos(th)) *
               std::pow(std::sin(th), n - 2);
    });
    const double den = integrate([&](double th) { return std::pow(std::sin(th), n - 2); });
    return num / den;
}

}  // namespace oracles

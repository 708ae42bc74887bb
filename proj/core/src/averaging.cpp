#include "spherelab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spherelab/lattice.hpp"
#include "spherelab/rng.hpp"

namespace spherelab::averaging {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t rep_count(std::int64_t lambda, int n) {
    return lattice::count_representations(lambda, n, lambda);
}

std::int64_t dist_sq(std::span<const std::int32_t> a, const Point& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

GridFunction::GridFunction(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("GridFunction: dimension must be >= 1");
}

cplx GridFunction::at(std::span<const std::int32_t> p) const {
    Point key(p.begin(), p.end());
    auto it = vals_.find(key);
    return it == vals_.end() ? cplx{0.0, 0.0} : it->second;
}

void GridFunction::set(std::span<const std::int32_t> p, cplx v) {
    Point key(p.begin(), p.end());
    if (key.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("GridFunction: point dimension mismatch");
    if (v == cplx{0.0, 0.0})
        vals_.erase(key);
    else
        vals_[std::move(key)] = v;
}

void GridFunction::add(std::span<const std::int32_t> p, cplx v) {
    Point key(p.begin(), p.end());
    if (key.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("GridFunction: point dimension mismatch");
    auto [it, inserted] = vals_.try_emplace(std::move(key), v);
    if (!inserted) {
        it->second += v;
        if (it->second == cplx{0.0, 0.0}) vals_.erase(it);
    }
}

std::pair<Point, Point> GridFunction::bounding_box() const {
    Point lo(static_cast<std::size_t>(n_), 1), hi(static_cast<std::size_t>(n_), 0);
    bool first = true;
    for (const auto& [p, v] : vals_) {
        if (first) {
            lo = p;
            hi = p;
            first = false;
            continue;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    return {lo, hi};
}

GridFunction delta(int n) {
    GridFunction f(n);
    Point origin(static_cast<std::size_t>(n), 0);
    f.set(origin, cplx{1.0, 0.0});
    return f;
}

GridFunction apply_average(const GridFunction& f, std::int64_t lambda) {
    const int n = f.dim();
    const std::uint64_t r = rep_count(lambda, n);
    if (r == 0)
        throw EmptySphere("cannot average over empty sphere |x|^2 = " + std::to_string(lambda));
    if (r * static_cast<std::uint64_t>(std::max<std::size_t>(f.support_size(), 1)) > 200000000ull)
        throw BudgetExceeded("materialized average would need " + std::to_string(r) + " x " +
                             std::to_string(f.support_size()) +
                             " updates; use the streaming norm evaluator");
    const double inv = 1.0 / static_cast<double>(r);
    GridFunction out(n);
    Point y(static_cast<std::size_t>(n));
    lattice::visit_sphere(lambda, n, [&](std::span<const std::int32_t> x) {
        for (const auto& [y0, v] : f.values()) {
            for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = y0[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)];
            out.add(y, v * inv);
        }
    });
    return out;
}

GridFunction maximal_function(const GridFunction& f, std::span<const std::int64_t> lambdas) {
    if (lambdas.empty()) throw std::invalid_argument("maximal_function: empty radius list");
    GridFunction out(f.dim());
    for (std::int64_t lam : lambdas) {
        GridFunction g = apply_average(f, lam);
        for (const auto& [y, v] : g.values()) {
            const double m = std::abs(v);
            const double cur = out.at(y).real();
            if (m > cur) out.set(y, cplx{m, 0.0});
        }
    }
    return out;
}

double lp_norm(const GridFunction& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1 (or infinity)");
    if (p == kInf) {
        double m = 0.0;
        for (const auto& [y, v] : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& [y, v] : f.values()) {
        const double a = std::abs(v);
        if (p == 1.0)
            s += a;
        else if (p == 2.0)
            s += a * a;
        else
            s += std::pow(a, p);
    }
    return (p == 1.0) ? s : ((p == 2.0) ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double maximal_lp_norm(const GridFunction& f, std::span<const std::int64_t> lambdas, double p,
                       std::uint64_t materializeCap) {
    if (lambdas.empty()) throw std::invalid_argument("maximal_lp_norm: empty radius list");
    if (p < 1.0) throw std::invalid_argument("maximal_lp_norm: p must be >= 1 (or infinity)");
    const int n = f.dim();

    std::vector<std::int64_t> uniq(lambdas.begin(), lambdas.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    std::vector<std::int64_t> small, big;
    std::vector<std::uint64_t> bigCounts;
    const std::size_t k = f.support_size();
    for (std::int64_t lam : uniq) {
        const std::uint64_t r = rep_count(lam, n);
        if (r == 0)
            throw EmptySphere("empty sphere |x|^2 = " + std::to_string(lam));
        if (r <= materializeCap && r * std::max<std::uint64_t>(k, 1) <= 50000000ull) {
            small.push_back(lam);
        } else {
            big.push_back(lam);
            bigCounts.push_back(r);
        }
    }

    GridFunction M(n);
    if (!small.empty()) M = maximal_function(f, small);
    if (big.empty()) return lp_norm(M, p);

    // Streaming cost: every candidate point of every big sphere shifted by
    // every support point, with O(k) work per candidate and per big radius.
    {
        unsigned __int128 cand = 0;
        for (std::uint64_t r : bigCounts) cand += static_cast<unsigned __int128>(r) * k;
        const unsigned __int128 ops = cand * (k * (big.size() + 1) + 1);
        if (ops > static_cast<unsigned __int128>(50000000000ull))
            throw BudgetExceeded("streaming maximal norm infeasible for this support size");
    }

    // Support as a flat list for the inner membership loops.
    std::vector<std::pair<Point, cplx>> supp(f.values().begin(), f.values().end());

    // |A_lambda f(y)| given the sphere count r.
    auto avg_at = [&](std::span<const std::int32_t> y, std::int64_t lam,
                      std::uint64_t r) -> double {
        cplx s{0.0, 0.0};
        for (const auto& [y0, v] : supp)
            if (dist_sq(y, y0) == lam) s += v;
        return std::abs(s) / static_cast<double>(r);
    };

    const bool supNorm = (p == kInf);
    double acc = 0.0;  // p-th power sum, or running max for p = infinity

    // Points already covered by the materialized part: max against the big
    // radii here, then never revisit them in the streams.
    for (const auto& [y, v] : M.values()) {
        double val = v.real();
        for (std::size_t bi = 0; bi < big.size(); ++bi)
            val = std::max(val, avg_at(y, big[bi], bigCounts[bi]));
        if (supNorm)
            acc = std::max(acc, val);
        else
            acc += (p == 1.0) ? val : ((p == 2.0) ? val * val : std::pow(val, p));
    }

    const auto& Mvals = M.values();
    Point y(static_cast<std::size_t>(n));
    for (std::size_t bi = 0; bi < big.size(); ++bi) {
        const std::int64_t lam = big[bi];
        lattice::visit_sphere(lam, n, [&](std::span<const std::int32_t> x) {
            for (const auto& [y0, v0] : supp) {
                for (int i = 0; i < n; ++i)
                    y[static_cast<std::size_t>(i)] =
                        y0[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)];
                if (!Mvals.empty() && Mvals.find(y) != Mvals.end()) continue;  // handled above
                // Count each candidate once: skip if an earlier big sphere
                // already reached it, divide by its multiplicity within this
                // sphere's stream.
                bool earlier = false;
                for (std::size_t bj = 0; bj < bi && !earlier; ++bj)
                    for (const auto& [y1, v1] : supp)
                        if (dist_sq(y, y1) == big[bj]) {
                            earlier = true;
                            break;
                        }
                if (earlier) continue;
                std::uint64_t mult = 0;
                for (const auto& [y1, v1] : supp)
                    if (dist_sq(y, y1) == lam) ++mult;
                double val = 0.0;
                for (std::size_t bj = 0; bj < big.size(); ++bj)
                    val = std::max(val, avg_at(y, big[bj], bigCounts[bj]));
                if (supNorm) {
                    acc = std::max(acc, val);
                } else {
                    const double vp = (p == 1.0) ? val : ((p == 2.0) ? val * val
                                                                     : std::pow(val, p));
                    acc += vp / static_cast<double>(mult);
                }
            }
        });
    }
    if (supNorm) return acc;
    return (p == 1.0) ? acc : ((p == 2.0) ? std::sqrt(acc) : std::pow(acc, 1.0 / p));
}

int sup_window_count(std::span<const std::int64_t> sortedLambdas, std::int64_t n0) {
    if (n0 < 0) throw std::invalid_argument("sup_window_count: n0 must be >= 0");
    if (!std::is_sorted(sortedLambdas.begin(), sortedLambdas.end()))
        throw std::invalid_argument("sup_window_count: radius list must be ascending");
    const auto lo = static_cast<__int128>(n0);
    const __int128 hi = lo * lo;
    int count = 0;
    for (std::int64_t lam : sortedLambdas)
        if (static_cast<__int128>(lam) >= lo && static_cast<__int128>(lam) <= hi) ++count;
    return count;
}

GridFunction make_family_item(const TestFamilySpec& spec, int n, std::uint64_t seed,
                              int itemIndex) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(itemIndex + 1)));
    GridFunction f(n);
    Point origin(static_cast<std::size_t>(n), 0);
    switch (spec.kind) {
        case TestFamilySpec::Kind::Delta:
            f.set(origin, cplx{1.0, 0.0});
            return f;
        case TestFamilySpec::Kind::RandomSigns: {
            const std::int32_t R = spec.boxRadius;
            if (R < 0) throw std::invalid_argument("randomSigns: boxRadius must be >= 0");
            Point p(static_cast<std::size_t>(n), -R);
            while (true) {
                if (rng.uniform01() < spec.density)
                    f.set(p, cplx{rng.coin() ? 1.0 : -1.0, 0.0});
                int i = 0;
                for (; i < n; ++i) {
                    if (p[static_cast<std::size_t>(i)] < R) {
                        ++p[static_cast<std::size_t>(i)];
                        break;
                    }
                    p[static_cast<std::size_t>(i)] = -R;
                }
                if (i == n) break;
            }
            if (f.empty()) f.set(origin, cplx{1.0, 0.0});
            return f;
        }
        case TestFamilySpec::Kind::ResidueIndicator: {
            if (spec.q < 1) throw std::invalid_argument("residueIndicator: q must be >= 1");
            const auto R = static_cast<std::int32_t>(spec.boxRadius / spec.q);
            Point p(static_cast<std::size_t>(n), -R);
            Point scaled(static_cast<std::size_t>(n));
            while (true) {
                for (int i = 0; i < n; ++i)
                    scaled[static_cast<std::size_t>(i)] =
                        p[static_cast<std::size_t>(i)] * static_cast<std::int32_t>(spec.q);
                f.set(scaled, cplx{1.0, 0.0});
                int i = 0;
                for (; i < n; ++i) {
                    if (p[static_cast<std::size_t>(i)] < R) {
                        ++p[static_cast<std::size_t>(i)];
                        break;
                    }
                    p[static_cast<std::size_t>(i)] = -R;
                }
                if (i == n) break;
            }
            return f;
        }
    }
    throw std::logic_error("unknown family kind");
}

OpNormReport op_norm_estimate(double p, std::span<const std::int64_t> lambdas,
                              const TestFamilySpec& family, int count, std::uint64_t seed,
                              int n) {
    if (p < 1.0) throw std::invalid_argument("op_norm_estimate: p must be >= 1");
    if (lambdas.empty()) throw std::invalid_argument("op_norm_estimate: empty radius list");
    if (count < 1) throw std::invalid_argument("op_norm_estimate: count must be >= 1");
    OpNormReport rep;
    rep.p = p;
    rep.n = n;
    rep.seed = seed;
    rep.lambdas.assign(lambdas.begin(), lambdas.end());
    for (int i = 0; i < count; ++i) {
        GridFunction f = make_family_item(family, n, seed, i);
        const double denom = lp_norm(f, p);
        const double ratio = maximal_lp_norm(f, lambdas, p) / denom;
        rep.perFunction.emplace_back(i, ratio);
        rep.maxRatio = std::max(rep.maxRatio, ratio);
    }
    return rep;
}

}  // namespace spherelab::averaging

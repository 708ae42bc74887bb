// spherelab: reproducible experiment driver for the lattice-sphere averaging
// laboratory. Subcommands: count, enumerate, average, maximal, arith,
// decompose, decay, opnorm.
//
// Exit codes: 0 success, 2 usage/config error, 3 verification failure.
// Reports are deterministic given config + seed; wall-clock timing and file
// lists go to the side-car manifest, never into the report.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spherelab/arithmetic.hpp"
#include "spherelab/averaging.hpp"
#include "spherelab/errors.hpp"
#include "spherelab/lattice.hpp"
#include "spherelab/multipliers.hpp"
#include "spherelab/report_json.hpp"
#include "spherelab/seqfact.hpp"
#include "spherelab/version.hpp"

namespace fs = std::filesystem;
using spherelab::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

struct GlobalOpts {
    int n = 5;
    std::uint64_t seed = 0;
    std::string cacheDir;
    std::string out;
    std::string format = "json";
    unsigned windowExponent = 16;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw spherelab::IoError("cannot open " + tmp.string());
        out << content;
        if (!out.good()) throw spherelab::IoError("write failure on " + tmp.string());
    }
    fs::rename(tmp, path);
}

// Side-car manifest: config echo, tool version, wall clock, the pass/fail
// map (each executed check exactly once), written artifacts.
struct Manifest {
    std::string command;
    Json config = Json::object();
    Json checks = Json::object();
    std::vector<std::string> artifacts;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const fs::path& outPath) const {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        Json m{{"tool", "spherelab"},
               {"version", SPHERELAB_VERSION},
               {"command", command},
               {"config", config},
               {"wallClockMs", ms},
               {"checks", checks},
               {"artifacts", artifacts}};
        fs::path p = outPath;
        p += ".manifest.json";
        write_text_atomic(p, m.dump(2) + "\n");
    }
};

fs::path resolve_cache_dir(const GlobalOpts& g) {
    if (!g.cacheDir.empty()) return g.cacheDir;
    if (const char* env = std::getenv("SPHERELAB_CACHE")) return env;
    return ".spherelab-cache";
}

fs::path default_out(const GlobalOpts& g, const std::string& name) {
    return g.out.empty() ? fs::path(name) : fs::path(g.out);
}

std::vector<std::int64_t> parse_lambda_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!tok.empty()) out.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw UsageError("empty radius list: '" + csv + "'");
    return out;
}

spherelab::averaging::TestFamilySpec parse_family(const std::string& s) {
    using Spec = spherelab::averaging::TestFamilySpec;
    Spec spec;
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = s.find(':', pos);
        parts.push_back(s.substr(pos, colon == std::string::npos ? colon : colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts[0] == "delta") {
        spec.kind = Spec::Kind::Delta;
    } else if (parts[0] == "residue") {
        spec.kind = Spec::Kind::ResidueIndicator;
        if (parts.size() > 1) spec.q = std::stoll(parts[1]);
        if (parts.size() > 2) spec.boxRadius = std::stoi(parts[2]);
        if (spec.q < 1) throw UsageError("residue family needs q >= 1");
    } else if (parts[0] == "signs") {
        spec.kind = Spec::Kind::RandomSigns;
        if (parts.size() > 1) spec.boxRadius = std::stoi(parts[1]);
        if (parts.size() > 2) spec.density = std::stod(parts[2]);
        if (spec.boxRadius < 0 || spec.density <= 0.0 || spec.density > 1.0)
            throw UsageError("signs family needs boxRadius >= 0 and density in (0,1]");
    } else {
        throw UsageError("unknown family '" + parts[0] + "' (delta|residue:q[:R]|signs[:R[:d]])");
    }
    return spec;
}

std::vector<std::int64_t> sequence_terms(const std::string& kind, unsigned lmax) {
    std::vector<std::int64_t> out;
    if (kind == "factorial2l") {
        for (unsigned l = 1; l <= lmax; ++l)
            out.push_back(spherelab::seqfact::lambda_value(l).convert_to<std::int64_t>());
    } else if (kind == "factoriall") {
        for (unsigned l = 2; l <= std::max(2u, lmax); ++l) {
            std::int64_t f = 1;
            for (unsigned t = 2; t <= l; ++t) f *= t;
            out.push_back(f);
        }
    } else if (kind == "lacunary2l") {
        for (unsigned l = 1; l <= lmax; ++l) out.push_back(std::int64_t{1} << l);
    } else if (kind.rfind("list:", 0) == 0) {
        out = parse_lambda_list(kind.substr(5));
    } else {
        throw UsageError("unknown sequence '" + kind +
                         "' (factorial2l|factoriall|lacunary2l|list:a,b,c)");
    }
    return out;
}

Json grid_function_summary(const spherelab::averaging::GridFunction& f,
                           const std::vector<double>& ps) {
    namespace avg = spherelab::averaging;
    Json norms = Json::object();
    for (double p : ps) {
        const std::string key =
            std::isinf(p) ? "inf" : std::to_string(static_cast<long long>(p));
        norms["l" + key] = avg::lp_norm(f, p);
    }
    return Json{{"supportSize", f.support_size()}, {"norms", norms}};
}

void warn_dimension(const GlobalOpts& g) {
    if (g.n < 5)
        std::cerr << "warning: dimension " << g.n
                  << " is below 5; boundedness phenomena need n >= 5, proceeding for "
                     "oracle-scale experiments only\n";
}

// ---- subcommands ----

int cmd_count(const GlobalOpts& g, std::int64_t maxLambda, Manifest& man) {
    namespace lat = spherelab::lattice;
    warn_dimension(g);
    const fs::path cacheDir = resolve_cache_dir(g);
    fs::create_directories(cacheDir);
    const std::string cacheName =
        "rep-n" + std::to_string(g.n) + "-max" + std::to_string(maxLambda) + ".csv";
    const fs::path cachePath = cacheDir / cacheName;

    lat::RepCountTable table;
    bool hit = false;
    if (fs::exists(cachePath)) {
        table = lat::load_table(cachePath);
        hit = true;
    } else {
        // A longer cached table also serves, sliced down to the request.
        const std::string prefix = "rep-n" + std::to_string(g.n) + "-max";
        for (const auto& entry : fs::directory_iterator(cacheDir)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".csv") continue;
            try {
                lat::RepCountTable t = lat::load_table(entry.path());
                if (t.n == g.n && t.maxLambda >= maxLambda) {
                    t.counts.resize(static_cast<std::size_t>(maxLambda) + 1);
                    t.maxLambda = maxLambda;
                    table = std::move(t);
                    hit = true;
                    break;
                }
            } catch (const std::exception&) {
                continue;  // ignore unrelated or damaged files
            }
        }
    }
    if (hit) {
        std::cerr << "cache hit for n=" << g.n << " max=" << maxLambda << "\n";
    } else {
        std::cerr << "cache miss, computing table\n";
        table = lat::build_rep_table(g.n, maxLambda);
        lat::save_table(table, cachePath);
        man.artifacts.push_back(cachePath.string());
    }

    const fs::path outPath = default_out(g, cacheName);
    if (g.format == "csv") {
        lat::save_table(table, outPath);
    } else {
        Json rep{{"type", "rep-count"},
                 {"n", table.n},
                 {"max", table.maxLambda},
                 {"counts", table.counts}};
        write_text_atomic(outPath, rep.dump(2) + "\n");
    }
    man.artifacts.push_back(outPath.string());
    man.checks["cache_hit"] = hit;
    man.checks["completed"] = true;
    std::cout << "rows=" << table.counts.size() << " r(0)=" << table.counts[0];
    if (table.maxLambda >= 1) std::cout << " r(1)=" << table.counts[1];
    std::cout << "\n";
    man.write(outPath);
    return kExitOk;
}

int cmd_enumerate(const GlobalOpts& g, std::int64_t lambda, Manifest& man) {
    namespace lat = spherelab::lattice;
    warn_dimension(g);
    lat::SpherePointSet set = lat::enumerate_sphere(lambda, g.n);
    const fs::path outPath =
        default_out(g, "sphere-n" + std::to_string(g.n) + "-l" + std::to_string(lambda) +
                           (g.format == "csv" ? ".csv" : ".json"));
    if (g.format == "csv") {
        std::string body;
        for (std::size_t i = 0; i < set.count; ++i) {
            auto pt = set.point(i);
            for (int k = 0; k < set.n; ++k) {
                body += std::to_string(pt[static_cast<std::size_t>(k)]);
                body += (k + 1 < set.n) ? ',' : '\n';
            }
        }
        write_text_atomic(outPath, body);
    } else {
        Json pts = Json::array();
        for (std::size_t i = 0; i < set.count; ++i) {
            auto pt = set.point(i);
            pts.push_back(std::vector<std::int32_t>(pt.begin(), pt.end()));
        }
        Json rep{{"type", "sphere"},
                 {"lambda", lambda},
                 {"n", g.n},
                 {"count", set.count},
                 {"points", pts}};
        write_text_atomic(outPath, rep.dump(2) + "\n");
    }
    man.artifacts.push_back(outPath.string());
    man.checks["completed"] = true;
    std::cout << "r(" << lambda << ") = " << set.count << "\n";
    man.write(outPath);
    return kExitOk;
}

int cmd_average(const GlobalOpts& g, std::int64_t lambda, const std::string& family,
                Manifest& man) {
    namespace avg = spherelab::averaging;
    warn_dimension(g);
    const auto spec = parse_family(family);
    avg::GridFunction f = avg::make_family_item(spec, g.n, g.seed, 0);
    avg::GridFunction out = avg::apply_average(f, lambda);
    const std::vector<double> ps{1.0, 2.0, std::numeric_limits<double>::infinity()};
    Json rep{{"type", "average"},
             {"lambda", lambda},
             {"n", g.n},
             {"family", family},
             {"seed", g.seed},
             {"input", grid_function_summary(f, ps)},
             {"output", grid_function_summary(out, ps)}};
    const fs::path outPath = default_out(g, "average-report.json");
    write_text_atomic(outPath, rep.dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    man.checks["completed"] = true;
    std::cout << "support " << f.support_size() << " -> " << out.support_size() << "\n";
    man.write(outPath);
    return kExitOk;
}

int cmd_maximal(const GlobalOpts& g, const std::string& lambdasCsv, const std::string& family,
                double p, Manifest& man) {
    namespace avg = spherelab::averaging;
    warn_dimension(g);
    if (p < 1.0) throw UsageError("maximal requires p >= 1");
    const auto lambdas = parse_lambda_list(lambdasCsv);
    const auto spec = parse_family(family);
    avg::GridFunction f = avg::make_family_item(spec, g.n, g.seed, 0);
    const double fNorm = avg::lp_norm(f, p);
    const double mNorm = avg::maximal_lp_norm(f, lambdas, p);
    const double ceiling = static_cast<double>(lambdas.size()) * fNorm;
    Json rep{{"type", "maximal"},
             {"lambdas", lambdas},
             {"n", g.n},
             {"family", family},
             {"seed", g.seed},
             {"p", p},
             {"inputNorm", fNorm},
             {"maximalNorm", mNorm},
             {"ratio", mNorm / fNorm}};
    const fs::path outPath = default_out(g, "maximal-report.json");
    write_text_atomic(outPath, rep.dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    const bool ok = mNorm <= ceiling * (1.0 + 1e-9);
    man.checks["triangle_ceiling"] = ok;
    std::cout << "||sup|Af|||_p = " << mNorm << " (input " << fNorm << ")\n";
    man.write(outPath);
    return ok ? kExitOk : kExitVerification;
}

int cmd_arith(const GlobalOpts& g, std::int64_t qmax, const std::string& qListCsv, int samples,
              Manifest& man) {
    namespace arith = spherelab::arithmetic;
    warn_dimension(g);
    const auto Qs = parse_lambda_list(qListCsv);

    const arith::GaussBoundReport bound = arith::gauss_bound_check(qmax, g.n, samples, g.seed);

    double worstResidual = 0.0;
    std::int64_t worstQ = 0, worstLambda = 0;
    const std::int64_t identityQmax = std::min<std::int64_t>(qmax, 50);
    for (std::int64_t q = 1; q <= identityQmax; ++q) {
        for (std::int64_t lam = 0; lam < q; ++lam) {
            const double r = arith::completed_sum_identity(q, lam, g.n);
            if (r > worstResidual) {
                worstResidual = r;
                worstQ = q;
                worstLambda = lam;
            }
        }
    }
    const bool identityOk = worstResidual <= 1e-6;

    Json zeros = Json::array();
    for (std::int64_t Q : Qs) zeros.push_back(spherelab::to_json(arith::zero_count(Q, g.n)));

    Json rep{{"type", "arith"},
             {"n", g.n},
             {"qmax", qmax},
             {"gaussBound", spherelab::to_json(bound)},
             {"completedSum", Json{{"qmax", identityQmax},
                                   {"maxResidual", worstResidual},
                                   {"argQ", worstQ},
                                   {"argLambda", worstLambda}}},
             {"zeroCounts", zeros}};
    const fs::path outPath = default_out(g, "arith-report.json");
    write_text_atomic(outPath, rep.dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    man.checks["completed_sum_identity"] = identityOk;
    man.checks["gauss_bound_finite"] = std::isfinite(bound.maxNormalized);
    std::cout << "gauss bound max " << bound.maxNormalized << " at q=" << bound.argQ
              << "; completed-sum max residual " << worstResidual << "\n";
    for (const auto& z : zeros)
        std::cout << "zero count Q=" << z["Q"] << ": normalized " << z["normalized"] << "\n";
    man.write(outPath);
    return identityOk ? kExitOk : kExitVerification;
}

int cmd_decompose(const GlobalOpts& g, unsigned l, unsigned j, int samples, Manifest& man) {
    namespace mult = spherelab::multipliers;
    warn_dimension(g);
    mult::MultiplierLab lab(g.n);
    const mult::DecompositionReport rep = lab.decomposition_check(l, j, samples, g.seed);
    const fs::path outPath = default_out(g, "decompose-report.json");
    write_text_atomic(outPath, spherelab::to_json(rep).dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    const bool ok = rep.maxResidual <= 1e-9;
    man.checks["decomposition_residual"] = ok;
    std::cout << "l=" << l << " j=" << j << " samples=" << rep.samples.size()
              << " maxResidual=" << rep.maxResidual << (ok ? " PASS" : " FAIL") << "\n";
    man.write(outPath);
    return ok ? kExitOk : kExitVerification;
}

int cmd_decay(const GlobalOpts& g, const std::string& lambdasCsv, int gridSize, bool zeroGrid,
              std::optional<int> truncation, Manifest& man) {
    namespace mult = spherelab::multipliers;
    warn_dimension(g);
    const auto lambdas = parse_lambda_list(lambdasCsv);
    if (lambdas.size() < 3) throw UsageError("decay fit needs at least 3 radii");
    if (gridSize < 1) throw UsageError("grid must have at least 1 point");

    mult::MultiplierLab lab(g.n);
    std::vector<mult::FrequencyPoint> grid;
    if (zeroGrid)
        grid.emplace_back(std::vector<double>(static_cast<std::size_t>(g.n), 0.0));
    else
        grid = mult::uniform_points(g.n, gridSize, g.seed);

    spherelab::seqfact::WindowConfig window{g.windowExponent};
    mult::DecayFitReport rep;
    bool degenerate = false;
    std::string degenerateWhy;
    try {
        rep = lab.decay_fit(lambdas, grid, truncation);
    } catch (const spherelab::DegenerateFit& e) {
        degenerate = true;
        degenerateWhy = e.what();
    }

    Json j = degenerate
                 ? Json{{"type", "decay-fit"}, {"degenerate", true}, {"reason", degenerateWhy}}
                 : spherelab::to_json(rep);
    // Window placements of each radius under the configured exponent.
    Json windows = Json::array();
    for (std::int64_t lam : lambdas)
        windows.push_back(Json{
            {"lambda", lam},
            {"j0", spherelab::seqfact::j0_for(static_cast<std::uint64_t>(lam), window)}});
    j["windowExponent"] = g.windowExponent;
    j["windows"] = windows;

    const fs::path outPath = default_out(g, "decay-report.json");
    write_text_atomic(outPath, j.dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    const bool ok = !degenerate && rep.fittedDelta > 0.0;
    man.checks["positive_fitted_delta"] = ok;
    if (degenerate)
        std::cout << "degenerate fit: " << degenerateWhy << "\n";
    else
        std::cout << "fittedDelta = " << rep.fittedDelta << (ok ? " PASS" : " FAIL") << "\n";
    man.write(outPath);
    return ok ? kExitOk : kExitVerification;
}

int cmd_opnorm(const GlobalOpts& g, double p, const std::string& sequence, unsigned lmax,
               const std::string& family, int count, bool injectCeilingViolation,
               Manifest& man) {
    namespace avg = spherelab::averaging;
    warn_dimension(g);
    if (p < 1.0) throw UsageError("opnorm requires p >= 1");
    const auto lambdas = sequence_terms(sequence, lmax);
    const auto spec = parse_family(family);
    avg::OpNormReport rep = avg::op_norm_estimate(p, lambdas, spec, count, g.seed, g.n);
    if (injectCeilingViolation) rep.maxRatio = static_cast<double>(lambdas.size()) + 1.0;
    const fs::path outPath = default_out(g, "opnorm-report.json");
    write_text_atomic(outPath, spherelab::to_json(rep).dump(2) + "\n");
    man.artifacts.push_back(outPath.string());
    const bool ok = rep.maxRatio <= static_cast<double>(lambdas.size()) * (1.0 + 1e-9);
    man.checks["triangle_ceiling"] = ok;
    std::cout << "maxRatio = " << rep.maxRatio << " over " << lambdas.size() << " radii"
              << (ok ? "" : " CEILING VIOLATION") << "\n";
    man.write(outPath);
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherelab: discrete spherical averaging laboratory"};
    app.set_version_flag("--version", SPHERELAB_VERSION);
    app.set_config("--config", "", "flat key=value config file; flags override");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--n", g.n, "ambient dimension")->capture_default_str();
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--cache-dir", g.cacheDir, "cache directory (env SPHERELAB_CACHE)");
    app.add_option("--out", g.out, "output path for the report");
    app.add_option("--format", g.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--window-exponent", g.windowExponent, "window exponent c in H_j")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // count
    auto* count = app.add_subcommand("count", "representation-number table r(lambda)");
    std::int64_t countMax = 100;
    count->add_option("--max", countMax, "inclusive maximum lambda")
        ->required()
        ->check(CLI::NonNegativeNumber);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "lattice points with |x|^2 = lambda");
    std::int64_t enumLambda = 0;
    enumerate->add_option("--lambda", enumLambda, "radius squared")
        ->required()
        ->check(CLI::NonNegativeNumber);

    // average
    auto* average = app.add_subcommand("average", "apply one spherical average");
    std::int64_t avgLambda = 0;
    std::string avgFamily = "delta";
    average->add_option("--lambda", avgLambda, "radius squared")
        ->required()
        ->check(CLI::NonNegativeNumber);
    average->add_option("--family", avgFamily, "delta|residue:q[:R]|signs[:R[:density]]")
        ->capture_default_str();

    // maximal
    auto* maximal = app.add_subcommand("maximal", "maximal function over a radius list");
    std::string maxLambdas = "2,24";
    std::string maxFamily = "delta";
    double maxP = 2.0;
    maximal->add_option("--lambdas", maxLambdas, "comma-separated radii")->capture_default_str();
    maximal->add_option("--family", maxFamily, "test family")->capture_default_str();
    maximal->add_option("--p", maxP, "exponent (>= 1)")->capture_default_str();

    // arith
    auto* arith = app.add_subcommand("arith", "Gauss-sum scan, completed sums, zero counts");
    std::int64_t arithQmax = 50;
    std::string arithQs = "2,24,40320";
    int arithSamples = 10;
    arith->add_option("--qmax", arithQmax, "modulus range for the scans")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{100000}))
        ->capture_default_str();
    arith->add_option("--Q", arithQs, "comma-separated moduli for zero counts")
        ->capture_default_str();
    arith->add_option("--samples", arithSamples, "random avec samples per (q,a)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    // decompose
    auto* decompose = app.add_subcommand("decompose", "multiplier decomposition residual");
    unsigned decL = 0, decJ = 0;
    int decSamples = 200;
    decompose->add_option("--l", decL, "sequence index l")
        ->required()
        ->check(CLI::PositiveNumber);
    decompose->add_option("--j", decJ, "window index j")
        ->required()
        ->check(CLI::PositiveNumber);
    decompose->add_option("--samples", decSamples, "sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // decay
    auto* decay = app.add_subcommand("decay", "approximation residual decay fit");
    std::string decayLambdas = "24,120,720,5040,40320";
    int decayGrid = 500;
    bool decayZeroGrid = false;
    int decayTrunc = -1;
    decay->add_option("--lambdas", decayLambdas, "comma-separated radii (>= 3)")
        ->capture_default_str();
    decay->add_option("--grid", decayGrid, "number of grid points")->capture_default_str();
    decay->add_flag("--zero-grid", decayZeroGrid,
                    "evaluate on the single point xi = 0 (degenerate-fit exercise)");
    decay->add_option("--truncation", decayTrunc,
                      "fixed dyadic truncation H (default: per-lambda floor(log2 sqrt(lambda)))");

    // opnorm
    auto* opnorm = app.add_subcommand("opnorm", "empirical operator-norm ratios");
    double opP = 2.0;
    std::string opSequence = "factorial2l";
    unsigned opLmax = 2;
    std::string opFamily = "delta";
    int opCount = 20;
    bool opInject = false;
    opnorm->add_option("--p", opP, "exponent (>= 1)")->required();
    opnorm->add_option("--sequence", opSequence, "factorial2l|factoriall|lacunary2l|list:a,b,c")
        ->capture_default_str();
    opnorm->add_option("--lmax", opLmax, "largest sequence index")->capture_default_str();
    opnorm->add_option("--family", opFamily, "test family")->capture_default_str();
    opnorm->add_option("--count", opCount, "family items")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    opnorm->add_flag("--inject-ceiling-violation", opInject)->group("");  // fault injection

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    Manifest man;
    man.config = Json{{"n", g.n},
                      {"seed", g.seed},
                      {"cacheDir", resolve_cache_dir(g).string()},
                      {"out", g.out},
                      {"format", g.format},
                      {"windowExponent", g.windowExponent}};
    try {
        if (count->parsed()) {
            man.command = "count";
            man.config["max"] = countMax;
            return cmd_count(g, countMax, man);
        }
        if (enumerate->parsed()) {
            man.command = "enumerate";
            man.config["lambda"] = enumLambda;
            return cmd_enumerate(g, enumLambda, man);
        }
        if (average->parsed()) {
            man.command = "average";
            man.config["lambda"] = avgLambda;
            man.config["family"] = avgFamily;
            return cmd_average(g, avgLambda, avgFamily, man);
        }
        if (maximal->parsed()) {
            man.command = "maximal";
            man.config["lambdas"] = maxLambdas;
            man.config["family"] = maxFamily;
            man.config["p"] = maxP;
            return cmd_maximal(g, maxLambdas, maxFamily, maxP, man);
        }
        if (arith->parsed()) {
            man.command = "arith";
            man.config["qmax"] = arithQmax;
            man.config["Q"] = arithQs;
            man.config["samples"] = arithSamples;
            return cmd_arith(g, arithQmax, arithQs, arithSamples, man);
        }
        if (decompose->parsed()) {
            man.command = "decompose";
            man.config["l"] = decL;
            man.config["j"] = decJ;
            man.config["samples"] = decSamples;
            return cmd_decompose(g, decL, decJ, decSamples, man);
        }
        if (decay->parsed()) {
            man.command = "decay";
            man.config["lambdas"] = decayLambdas;
            man.config["grid"] = decayGrid;
            man.config["zeroGrid"] = decayZeroGrid;
            man.config["truncation"] = decayTrunc;
            return cmd_decay(g, decayLambdas, decayGrid, decayZeroGrid,
                             decayTrunc < 0 ? std::nullopt : std::optional<int>(decayTrunc),
                             man);
        }
        if (opnorm->parsed()) {
            man.command = "opnorm";
            man.config["p"] = opP;
            man.config["sequence"] = opSequence;
            man.config["lmax"] = opLmax;
            man.config["family"] = opFamily;
            man.config["count"] = opCount;
            return cmd_opnorm(g, opP, opSequence, opLmax, opFamily, opCount, opInject, man);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::RangeExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::FactorizationFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::EmptySphere& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spherelab::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

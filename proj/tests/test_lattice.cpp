#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "spherelab/lattice.hpp"

using namespace spherelab;
namespace fs = std::filesystem;

TEST_CASE("count_representations basics") {
    CHECK(lattice::count_representations(0, 5) == 1);
    CHECK(lattice::count_representations(1, 5) == 10);
    CHECK(lattice::count_representations(2, 5) == 40);
    CHECK(lattice::count_representations(4, 5) == 90);
    CHECK_THROWS_AS(lattice::count_representations(200000, 5), RangeExceeded);
}

TEST_CASE("count matches brute force for n <= 5, lambda <= 200") {
    for (int n = 1; n <= 5; ++n) {
        const auto table = lattice::build_rep_table(n, 200);
        for (std::int64_t lam = 0; lam <= 200; ++lam)
            CHECK(table.counts[static_cast<std::size_t>(lam)] == oracles::brute_count(lam, n));
    }
}

TEST_CASE("enumerate_sphere examples") {
    SUBCASE("lambda=1, n=2") {
        const auto set = lattice::enumerate_sphere(1, 2);
        REQUIRE(set.count == 4);
        const std::vector<std::int32_t> expect{-1, 0, 0, -1, 0, 1, 1, 0};
        CHECK(set.coords == expect);  // lexicographic
    }
    SUBCASE("lambda=4, n=5") { CHECK(lattice::enumerate_sphere(4, 5).count == 90); }
    SUBCASE("lambda=3, n=2 is empty") {
        const auto set = lattice::enumerate_sphere(3, 2);
        CHECK(set.count == 0);
        CHECK(set.coords.empty());
    }
    SUBCASE("budget enforced") {
        CHECK_THROWS_AS(lattice::enumerate_sphere(24, 5, 100), BudgetExceeded);
    }
}

TEST_CASE("enumeration is consistent, sorted, and symmetric") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const std::int64_t lam = static_cast<std::int64_t>(rng() % 150);
        const auto set = lattice::enumerate_sphere(lam, n);
        CHECK(set.count == lattice::count_representations(lam, n));

        std::set<std::vector<std::int32_t>> points;
        for (std::size_t i = 0; i < set.count; ++i) {
            auto p = set.point(i);
            std::int64_t s = 0;
            for (auto c : p) s += std::int64_t{c} * c;
            CHECK(s == lam);
            points.insert(std::vector<std::int32_t>(p.begin(), p.end()));
        }
        CHECK(points.size() == set.count);  // pairwise distinct

        // lexicographic order of the flat array
        for (std::size_t i = 0; i + 1 < set.count; ++i) {
            auto a = set.point(i), b = set.point(i + 1);
            CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
        }

        // closed under sign flips and a coordinate rotation
        for (const auto& p : points) {
            std::vector<std::int32_t> flipped(p);
            for (auto& c : flipped) c = -c;
            CHECK(points.count(flipped) == 1);
            std::vector<std::int32_t> rotated(p.begin() + 1, p.end());
            rotated.push_back(p.front());
            CHECK(points.count(rotated) == 1);
        }
    }
}

TEST_CASE("every positive integer up to 1e4 is a sum of five squares") {
    const auto table = lattice::build_rep_table(5, 10000);
    for (std::int64_t lam = 1; lam <= 10000; ++lam)
        CHECK(table.counts[static_cast<std::size_t>(lam)] > 0);
}

TEST_CASE("nonnegative enumeration folds to the full count") {
    // Each nonnegative point stands for 2^{#nonzero} signed points.
    for (std::int64_t lam : {0, 1, 2, 24, 90}) {
        const auto coords = lattice::enumerate_nonneg(lam, 5);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < coords.size(); i += 5) {
            unsigned nonzero = 0;
            for (std::size_t k = 0; k < 5; ++k)
                if (coords[i + k] != 0) ++nonzero;
            total += std::uint64_t{1} << nonzero;
        }
        CHECK(total == lattice::count_representations(lam, 5));
    }
}

TEST_CASE("table save/load round trip") {
    const fs::path dir = fs::temp_directory_path() / "spherelab-test-tables";
    fs::create_directories(dir);
    const fs::path path = dir / "round-trip.csv";

    const auto table = lattice::build_rep_table(5, 100);
    lattice::save_table(table, path);
    const auto loaded = lattice::load_table(path);
    CHECK(loaded.n == table.n);
    CHECK(loaded.maxLambda == table.maxLambda);
    CHECK(loaded.counts == table.counts);

    SUBCASE("wrong magic") {
        const fs::path bad = dir / "bad-magic.csv";
        std::ofstream(bad) << "spherelab-rep-v2,n=5,max=1\n0,1\n1,10\n";
        CHECK_THROWS_AS(lattice::load_table(bad), FormatError);
    }
    SUBCASE("truncated file") {
        const fs::path bad = dir / "truncated.csv";
        std::ofstream(bad) << "spherelab-rep-v1,n=5,max=100\n0,1\n1,10\n";
        CHECK_THROWS_AS(lattice::load_table(bad), FormatError);
    }
    SUBCASE("trailing content") {
        const fs::path bad = dir / "trailing.csv";
        std::ofstream(bad) << "spherelab-rep-v1,n=5,max=1\n0,1\n1,10\n\n";
        CHECK_THROWS_AS(lattice::load_table(bad), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(lattice::load_table(dir / "nope.csv"), IoError);
    }
}

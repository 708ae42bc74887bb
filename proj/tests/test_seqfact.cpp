#include <doctest.h>

#include <complex>

#include "spherelab/seqfact.hpp"

using namespace spherelab;
using seqfact::BigInt;

TEST_CASE("lambda_value small indices") {
    CHECK(seqfact::lambda_value(1) == 2);
    CHECK(seqfact::lambda_value(2) == 24);
    CHECK(seqfact::lambda_value(3) == 40320);  // 1*2*...*8
    // 16! = 20922789888000
    CHECK(seqfact::lambda_value(4) == BigInt("20922789888000"));
}

TEST_CASE("lambda_value digit budget") {
    CHECK_THROWS_AS(seqfact::lambda_value(12), BudgetExceeded);  // 4096! has ~1.3e4 digits
    CHECK_THROWS_AS(seqfact::lambda_value(3, 2), BudgetExceeded);
}

TEST_CASE("lambda_valuation via Legendre") {
    CHECK(seqfact::lambda_valuation(2, 2) == 3);  // 24 = 2^3 * 3
    CHECK(seqfact::lambda_valuation(2, 3) == 1);
    CHECK(seqfact::lambda_valuation(2, 5) == 0);  // 5 > 4
    CHECK(seqfact::lambda_valuation(3, 7) == 1);  // floor(8/7)
    CHECK_THROWS_AS(seqfact::lambda_valuation(2, 6), NotPrime);
}

TEST_CASE("lambda_valuation matches factoring the materialized value") {
    for (unsigned l = 1; l <= 5; ++l) {
        BigInt v = seqfact::lambda_value(l);
        const std::uint64_t m = std::uint64_t{1} << l;
        for (std::uint64_t p = 2; p <= m; ++p) {
            if (!seqfact::is_prime(p)) continue;
            BigInt rest = v;
            BigInt expect = 0;
            while (rest % p == 0) {
                rest /= p;
                ++expect;
            }
            CHECK(seqfact::lambda_valuation(l, p) == expect);
        }
    }
}

TEST_CASE("divides_lambda examples") {
    CHECK(seqfact::divides_lambda(std::uint64_t{24}, 3));  // 40320 / 24 = 1680
    CHECK(seqfact::divides_lambda(std::uint64_t{1}, 1));
    CHECK_FALSE(seqfact::divides_lambda(std::uint64_t{11}, 2));  // prime 11 > 4
}

TEST_CASE("divides_lambda nested factorials without materializing") {
    // (2^i)! | (2^l)! for i <= l, settled through valuations even when the
    // divisor itself is far beyond machine range.
    for (unsigned i = 1; i <= 8; ++i) {
        BigInt q = seqfact::lambda_value(i);
        for (unsigned l = i; l <= 8; ++l) CHECK(seqfact::divides_lambda(q, l));
        // and the converse fails: lambda_{i} does not divide lambda_{i-1}
        if (i >= 2) CHECK_FALSE(seqfact::divides_lambda(q, i - 1));
    }
}

TEST_CASE("check_sparsity") {
    SUBCASE("paper sequence: exact path") {
        CHECK(seqfact::check_sparsity(1));  // 4 < 24
        CHECK(seqfact::check_sparsity(2));  // 576 < 40320
        CHECK(seqfact::check_sparsity(3));  // 40320^2 < 16!
    }
    SUBCASE("paper sequence: logarithmic path up to l = 20") {
        for (unsigned l = 1; l <= 20; ++l) CHECK(seqfact::check_sparsity(l));
    }
    SUBCASE("l! surrogate loses sparsity at l = 3") {
        CHECK(seqfact::check_sparsity(1, seqfact::SequenceKind::FactorialL));
        CHECK(seqfact::check_sparsity(2, seqfact::SequenceKind::FactorialL));
        CHECK_FALSE(seqfact::check_sparsity(3, seqfact::SequenceKind::FactorialL));
        CHECK_FALSE(seqfact::check_sparsity(10, seqfact::SequenceKind::FactorialL));
    }
    SUBCASE("plain lacunary sequence is never this sparse") {
        CHECK_FALSE(seqfact::check_sparsity(1, seqfact::SequenceKind::Lacunary2L));
        CHECK_FALSE(seqfact::check_sparsity(7, seqfact::SequenceKind::Lacunary2L));
    }
}

TEST_CASE("character_value") {
    const std::complex<double> one{1.0, 0.0};
    SUBCASE("exactly one when q divides lambda") {
        CHECK(seqfact::character_value(3, 1, std::uint64_t{24}) == one);
        CHECK(seqfact::character_value(1, 0, std::uint64_t{7}) == one);
    }
    SUBCASE("e(-2/3) for lambda_1 = 2 mod 3") {
        const auto v = seqfact::character_value(1, 1, std::uint64_t{3});
        CHECK(v.real() == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(v.imag() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    }
    SUBCASE("triviality across the nested divisibility structure") {
        for (unsigned i = 1; i <= 3; ++i) {
            BigInt q = seqfact::lambda_value(i);
            for (unsigned l = i; l <= 8; ++l)
                for (std::int64_t a = -3; a <= 3; ++a)
                    CHECK(seqfact::character_value(l, a, q) == one);
        }
    }
    SUBCASE("agrees with the materialized residue for machine cases") {
        // lambda_2 = 24, q = 7: 24 mod 7 = 3, a = 2 -> e(-6/7)
        const auto v = seqfact::character_value(2, 2, std::uint64_t{7});
        const auto expect = std::polar(1.0, -2.0 * std::numbers::pi * 6.0 / 7.0);
        CHECK(std::abs(v - expect) < 1e-12);
    }
}

TEST_CASE("lambda_mod routes through CRT when not materializable") {
    // l = 13 is beyond the default digit budget. (2^13)! is divisible by
    // every prime power p^k with p <= 8192 and modest k.
    CHECK(seqfact::lambda_mod(13, 720) == 0);
    CHECK(seqfact::lambda_mod(13, 97 * 89) == 0);
    // Against a prime above 2^13: valuation 0, residue from the direct
    // product. Cross-check with Wilson's theorem (p-1)! = -1 mod p at the
    // materializable index l = 3 against prime 11 first.
    CHECK(seqfact::lambda_mod(3, 11) ==
          (seqfact::lambda_value(3) % 11).convert_to<std::uint64_t>());
}

TEST_CASE("j0_for windows") {
    seqfact::WindowConfig c1{1}, c2{2}, c16{16};
    CHECK(seqfact::j0_for(std::uint64_t{2}, c1) == 1);      // H_1 = [2,4)
    CHECK(seqfact::j0_for(std::uint64_t{24}, c1) == 3);     // H_3 = [16,256)
    CHECK(seqfact::j0_for(std::uint64_t{40320}, c16) == 1); // below 2^(2^16)
    SUBCASE("window boundaries tile") {
        for (const auto& cfg : {c1, c2}) {
            for (unsigned j = 1; j <= 3; ++j) {
                const unsigned shift = 1u << (cfg.exponent * j);
                const BigInt edge = BigInt(1) << shift;  // 2^(2^(c j))
                CHECK(seqfact::j0_for(BigInt(edge - 1), cfg) == j);
                CHECK(seqfact::j0_for(edge, cfg) == j + 1);
            }
        }
    }
    SUBCASE("monotone in lambda") {
        unsigned prev = 1;
        for (std::uint64_t lam = 2; lam < 5000; ++lam) {
            const unsigned j = seqfact::j0_for(lam, c1);
            CHECK(j >= prev);
            prev = j;
        }
    }
}

TEST_CASE("prime utilities") {
    CHECK(seqfact::is_prime(2));
    CHECK(seqfact::is_prime(999983));
    CHECK_FALSE(seqfact::is_prime(1));
    CHECK_FALSE(seqfact::is_prime(999983ull * 999983ull));
    const auto f = seqfact::factorize(40320);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 7});
    CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
    CHECK(f[3] == std::pair<std::uint64_t, unsigned>{7, 1});
    CHECK(seqfact::divisors(24) ==
          std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 12, 24});
    CHECK(seqfact::divisors(40320).size() == 96);
}

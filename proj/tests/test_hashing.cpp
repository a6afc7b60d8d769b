#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <map>
#include <set>

#include "wtc/hashing.hpp"
#include "wtc/rng.hpp"

using namespace wtc;

TEST_CASE("apply: linearity, identity hash, 3-bit hand example") {
    auto rng = make_rng(5);
    const ToeplitzHash f = random_toeplitz(6, 3, rng);
    CHECK(f.apply(0) == 0);

    const ToeplitzHash id = make_toeplitz(4, 4, 0);
    for (BitWord x = 0; x < 16; ++x) CHECK(id.apply(x) == x);

    // l=3, k=1, diag=(1,0): matrix [1 1 0].
    const ToeplitzHash h = make_toeplitz(3, 1, 0b01);
    CHECK(h.row(0) == 0b011);
    CHECK(h.apply(0b011) == 0); // x=(1,1,0)
    CHECK(h.apply(0b101) == 1); // x=(1,0,1)
    CHECK_THROWS_AS(h.apply(0b1000), std::invalid_argument);
}

TEST_CASE("sample_preimage correctness and exhaustiveness") {
    auto rng = make_rng(8);
    SUBCASE("l == k returns m itself") {
        const ToeplitzHash id = make_toeplitz(3, 3, 0);
        for (BitWord m = 0; m < 8; ++m) CHECK(id.sample_preimage(m, rng) == m);
    }
    SUBCASE("apply(sample_preimage(m)) == m always") {
        for (int trial = 0; trial < 200; ++trial) {
            const ToeplitzHash f = random_toeplitz(8, 3, rng);
            const BitWord m = static_cast<BitWord>(rng() & 7);
            CHECK(f.apply(f.sample_preimage(m, rng)) == m);
        }
    }
    SUBCASE("l=4,k=2: exactly 4 distinct preimages per m, enumeration matches") {
        const ToeplitzHash f = make_toeplitz(4, 2, 0b101);
        for (BitWord m = 0; m < 4; ++m) {
            std::set<BitWord> enumerated;
            for (BitWord x = 0; x < 16; ++x)
                if (f.apply(x) == m) enumerated.insert(x);
            CHECK(enumerated.size() == 4);
            std::set<BitWord> sampled;
            for (int i = 0; i < 200; ++i) sampled.insert(f.sample_preimage(m, rng));
            CHECK(sampled == enumerated);
        }
    }
    SUBCASE("preimage draw is uniform (chi-square)") {
        const ToeplitzHash f = make_toeplitz(5, 2, 0b1011);
        std::map<BitWord, int> counts;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) ++counts[f.sample_preimage(1, rng)];
        CHECK(counts.size() == 8);
        double chi2 = 0.0;
        for (const auto& [x, c] : counts) {
            const double expd = trials / 8.0;
            chi2 += (c - expd) * (c - expd) / expd;
        }
        CHECK(chi2 < 18.5); // 99% quantile, 7 dof
    }
}

TEST_CASE("uniform preimage sizes, exhaustive for l <= 6") {
    for (int l = 1; l <= 6; ++l)
        for (int k = 1; k <= l; ++k)
            for (BitWord d = 0; d < (BitWord{1} << (l - 1)); ++d) {
                const ToeplitzHash f = make_toeplitz(l, k, d);
                std::vector<int> sizes(std::size_t{1} << k, 0);
                for (BitWord x = 0; x < (BitWord{1} << l); ++x) ++sizes[f.apply(x)];
                for (int s : sizes) CHECK(s == (1 << (l - k)));
            }
}

TEST_CASE("toeplitz collision structure: 0 or exactly 2^-k per difference") {
    for (int l = 2; l <= 6; ++l) {
        const int k = l / 2 + 1;
        const HashFamily fam{HashFamilyKind::toeplitz, l, k};
        const auto members = enumerate_family(fam);
        for (BitWord d = 1; d < (BitWord{1} << l); ++d) {
            int hits = 0;
            for (const auto& f : members)
                if (f.apply(d) == 0) ++hits;
            const bool zero_tail = (d >> k) == 0;
            if (zero_tail)
                CHECK(hits == 0); // head-only difference never collides
            else
                CHECK(hits * (1 << k) == static_cast<int>(members.size()));
        }
    }
}

TEST_CASE("verify_two_universal") {
    SUBCASE("all linear surjections F2^2 -> F2 give exactly 1/3") {
        const HashFamily fam{HashFamilyKind::all_linear_surjections, 2, 1};
        CHECK(enumerate_family(fam).size() == 3);
        CHECK(verify_two_universal(fam) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("toeplitz l=4,k=2 max <= 1/4") {
        CHECK(verify_two_universal({HashFamilyKind::toeplitz, 4, 2}) <= 0.25);
    }
    SUBCASE("singleton identity family has no collisions") {
        CHECK(verify_two_universal({HashFamilyKind::toeplitz, 4, 4}) == 0.0);
    }
}

TEST_CASE("hex round trip is MSB-first") {
    CHECK(bits_to_hex(0b1, 8) == "80");
    CHECK(bits_to_hex(0b0000'0011, 8) == "c0");
    for (int len : {3, 7, 8, 12}) {
        auto rng = make_rng(len);
        for (int i = 0; i < 20; ++i) {
            const BitWord w = static_cast<BitWord>(rng() & ((BitWord{1} << len) - 1));
            CHECK(hex_to_bits(bits_to_hex(w, len), len) == w);
        }
    }
}

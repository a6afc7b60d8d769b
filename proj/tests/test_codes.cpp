#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "wtc/codes.hpp"
#include "wtc/rng.hpp"

using namespace wtc;

TEST_CASE("hamming74 structure") {
    const LinearCode code = hamming74();
    CHECK(code.n == 7);
    CHECK(code.k == 4);
    CHECK(code.parity_check.size() == 3);
    for (BitWord l = 0; l < 16; ++l)
        CHECK(code.syndrome(code.encode_message(l)) == 0);
    // Minimum distance 3.
    int min_w = 7;
    for (BitWord l = 1; l < 16; ++l)
        min_w = std::min(min_w, std::popcount(code.encode_message(l)));
    CHECK(min_w == 3);
}

TEST_CASE("coset encode basics") {
    const CosetEncoderFamily fam = make_coset_family(hamming74());
    CHECK(fam.encode(0, 0) == 0);
    // g = 0 images are exactly the 16 codewords.
    std::set<BitWord> codewords;
    for (BitWord l = 0; l < 16; ++l) codewords.insert(fam.encode(0, l));
    CHECK(codewords.size() == 16);
    for (BitWord w : codewords) CHECK(fam.code.syndrome(w) == 0);
}

TEST_CASE("disjoint union of coset images covers the whole space") {
    for (auto [n, k, seed] : {std::tuple{4, 2, 1ull}, {6, 3, 2ull}, {10, 5, 3ull}}) {
        auto rng = make_rng(seed);
        const CosetEncoderFamily fam = make_coset_family(random_linear_code(n, k, rng));
        std::set<BitWord> all;
        for (BitWord g = 0; g < (BitWord{1} << (n - k)); ++g)
            for (BitWord l = 0; l < (BitWord{1} << k); ++l)
                all.insert(fam.encode(g, l));
        CHECK(all.size() == (std::size_t{1} << n));
    }
}

TEST_CASE("decode: noiseless round trip on every coset") {
    const CosetEncoderFamily fam = make_coset_family(hamming74());
    for (BitWord g = 0; g < 8; ++g)
        for (BitWord l = 0; l < 16; ++l)
            CHECK(fam.decode(g, fam.encode(g, l)) == l);
}

TEST_CASE("decode: single bit flips corrected, double flips sometimes not") {
    const CosetEncoderFamily fam = make_coset_family(hamming74());
    for (BitWord g = 0; g < 8; ++g)
        for (BitWord l = 0; l < 16; ++l)
            for (int bit = 0; bit < 7; ++bit)
                CHECK(fam.decode(g, fam.encode(g, l) ^ (BitWord{1} << bit)) == l);

    int failures = 0;
    for (int b1 = 0; b1 < 7; ++b1)
        for (int b2 = b1 + 1; b2 < 7; ++b2)
            if (fam.decode(0, (BitWord{1} << b1) ^ (BitWord{1} << b2)) != 0) ++failures;
    CHECK(failures > 0); // distance 3: two flips exceed the correction radius
    // Determinism of tie-breaks.
    for (int rep = 0; rep < 3; ++rep)
        CHECK(fam.decode(0, 0b0000011) == fam.decode(0, 0b0000011));
}

TEST_CASE("soft decode matches hard decode on clean BPSK points") {
    const CosetEncoderFamily fam = make_coset_family(hamming74());
    const std::vector<double> constellation{-1.0, 1.0};
    for (BitWord l = 0; l < 16; ++l) {
        const BitWord w = fam.encode(3, l);
        std::vector<double> y(7);
        for (int i = 0; i < 7; ++i) y[i] = constellation[(w >> i) & 1u];
        CHECK(fam.decode(3, y, constellation) == l);
    }
}

TEST_CASE("random_linear_code invariants") {
    SUBCASE("k == n gives the whole space") {
        auto rng = make_rng(4);
        const LinearCode code = random_linear_code(5, 5, rng);
        std::set<BitWord> words;
        for (BitWord l = 0; l < 32; ++l) words.insert(code.encode_message(l));
        CHECK(words.size() == 32);
        CHECK(code.parity_check.empty());
    }
    SUBCASE("fixed seed reproduces the same code") {
        auto r1 = make_rng(77), r2 = make_rng(77);
        CHECK(random_linear_code(8, 4, r1).generator == random_linear_code(8, 4, r2).generator);
    }
    SUBCASE("G H^T = 0 over 100 seeds") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto rng = make_rng(seed);
            const LinearCode code = random_linear_code(10, 5, rng);
            CHECK(code.parity_check.size() == 5);
            for (BitWord row : code.generator)
                CHECK(code.syndrome(row) == 0);
        }
    }
}

TEST_CASE("coset leaders have minimum weight") {
    auto rng = make_rng(9);
    const CosetEncoderFamily fam = make_coset_family(random_linear_code(8, 4, rng));
    for (BitWord g = 0; g < 16; ++g) {
        const int lw = std::popcount(fam.leaders[g]);
        for (BitWord w = 0; w < 256; ++w)
            if (fam.code.syndrome(w) == g) CHECK(std::popcount(w) >= lw);
    }
}

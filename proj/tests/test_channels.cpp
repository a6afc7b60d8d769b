#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wtc/channels.hpp"
#include "wtc/infofunc.hpp"
#include "wtc/rng.hpp"

using namespace wtc;

TEST_CASE("make_bsc endpoints and definition") {
    CHECK(make_bsc(0.0).matrix == Matrix{{1.0, 0.0}, {0.0, 1.0}});
    CHECK(make_bsc(0.5).matrix == Matrix{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(make_bsc(0.1).matrix == Matrix{{0.9, 0.1}, {0.1, 0.9}});
    CHECK_THROWS_AS(make_bsc(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(make_bsc(1.01), std::invalid_argument);
}

TEST_CASE("concatenate_prefix identity and BSC composition") {
    const DiscreteChannel ch = make_bsc(0.2);
    const DiscreteChannel same = concatenate_prefix(identity_prefix(2), ch);
    for (int t = 0; t < 2; ++t)
        for (int z = 0; z < 2; ++z)
            CHECK(same.matrix[t][z] == doctest::Approx(ch.matrix[t][z]).epsilon(1e-15));

    // BSC(p1) o BSC(p2) = BSC(p1 + p2 - 2 p1 p2)
    const double p1 = 0.1, p2 = 0.25;
    const PrefixChannel pre{make_bsc(p1).matrix};
    const DiscreteChannel composed = concatenate_prefix(pre, make_bsc(p2));
    const double pc = p1 + p2 - 2 * p1 * p2;
    CHECK(composed.matrix[0][1] == doctest::Approx(pc).epsilon(1e-14));
    CHECK(composed.matrix[1][0] == doctest::Approx(pc).epsilon(1e-14));
    validate_stochastic(composed.matrix);
}

TEST_CASE("concatenate_prefix constant row replication") {
    const PrefixChannel pre{{{1.0, 0.0}, {1.0, 0.0}}}; // both inputs map to x=0
    const DiscreteChannel ch = make_bsc(0.3);
    const DiscreteChannel out = concatenate_prefix(pre, ch);
    CHECK(out.matrix[0] == out.matrix[1]);
    CHECK(out.matrix[0] == ch.matrix[0]);
}

TEST_CASE("concatenate_prefix dimension mismatch") {
    const PrefixChannel pre{{{0.5, 0.3, 0.2}}};
    CHECK_THROWS_AS(concatenate_prefix(pre, make_bsc(0.1)), std::invalid_argument);
}

TEST_CASE("sample identity and flip channels") {
    auto rng = make_rng(7);
    const std::vector<int> word{0, 1, 1, 0, 1};
    CHECK(sample(identity_channel(2), word, rng) == word);
    const std::vector<int> flipped = sample(make_bsc(1.0), word, rng);
    for (std::size_t i = 0; i < word.size(); ++i) CHECK(flipped[i] == 1 - word[i]);
    CHECK_THROWS_AS(sample(make_bsc(0.1), std::vector<int>{2}, rng), std::invalid_argument);
}

TEST_CASE("gaussian sample empirical mean") {
    const GaussianChannel ch = make_awgn({-1.0, 1.0}, 1.0);
    auto rng = make_rng(99);
    const int trials = 1000000;
    double mean = 0.0;
    const std::vector<int> word{1};
    for (int i = 0; i < trials; ++i) mean += sample(ch, word, rng)[0];
    mean /= trials;
    CHECK(std::abs(mean - 1.0) < 4.0 * ch.sigma / 1e3 * std::sqrt(1e6 / trials));
}

TEST_CASE("discrete sample chi-square sanity") {
    const DiscreteChannel ch = make_dmc({{0.5, 0.3, 0.2}});
    auto rng = make_rng(3);
    const int trials = 100000;
    std::vector<int> counts(3, 0);
    const std::vector<int> word{0};
    for (int i = 0; i < trials; ++i) ++counts[sample(ch, word, rng)[0]];
    double chi2 = 0.0;
    for (int z = 0; z < 3; ++z) {
        const double expd = trials * ch.matrix[0][z];
        chi2 += (counts[z] - expd) * (counts[z] - expd) / expd;
    }
    CHECK(chi2 < 13.8); // 99.9% quantile, 2 dof
}

TEST_CASE("discretize basic properties") {
    // Very wide noise, 2 bins centered on the point: each bin ~ 1/2.
    const GaussianChannel wide = make_awgn({0.0}, 100.0);
    const DiscreteChannel two = discretize(wide, -1.0, 1.0, 2);
    CHECK(two.matrix[0][0] == doctest::Approx(0.5).epsilon(1e-2));
    CHECK(two.matrix[0][1] == doctest::Approx(0.5).epsilon(1e-2));

    const GaussianChannel ch = make_awgn({0.5}, 1.0);
    for (int bins : {2, 8, 64, 256}) {
        const DiscreteChannel d = discretize(ch, -5.0, 6.0, bins);
        CHECK(d.output_size() == bins);
        double sum = 0.0;
        for (double p : d.matrix[0]) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(discretize(ch, 1.0, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(discretize(ch, -1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("discretize refinement: mutual information nondecreasing toward quadrature") {
    const GaussianChannel ch = make_awgn({-1.0, 1.0}, 1.0);
    const Distribution u = uniform_distribution(2);
    const double continuous = mutual_information(u, ch);
    double prev = 0.0;
    for (int bins : {8, 32, 128, 512, 2048}) {
        const double mi = mutual_information(u, discretize(ch, -9.0, 9.0, bins));
        CHECK(mi >= prev - 1e-12);
        CHECK(mi <= continuous + 1e-9);
        prev = mi;
    }
    CHECK(prev == doctest::Approx(continuous).epsilon(1e-5));
}

TEST_CASE("product channel is row-stochastic and has product rows") {
    const DiscreteChannel prod = product_channel(make_bsc(0.1), make_bec(0.2));
    validate_stochastic(prod.matrix);
    CHECK(prod.input_size() == 4);
    CHECK(prod.output_size() == 6);
    CHECK(prod.matrix[0][0] == doctest::Approx(0.9 * 0.8).epsilon(1e-15));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wtc/infofunc.hpp"
#include "wtc/oracle.hpp"
#include "wtc/rng.hpp"

using namespace wtc;

namespace {

CosetEncoderFamily small_code(int n, int k, std::uint64_t seed) {
    auto rng = make_rng(seed);
    return make_coset_family(random_linear_code(n, k, rng));
}

// Independent direct-summation leakage: joint distribution first, then
// I(M;Z) = H(M) + H(Z) - H(M,Z). Cross-checks the conditional-law path.
double leakage_by_joint_entropies(const CosetEncoderFamily& fam, const LinearHash& f,
                                  BitWord g, const DiscreteChannel& qz) {
    const int n = fam.code.n;
    const int nz = qz.output_size();
    const std::size_t nm = std::size_t{1} << f.k_dim;
    std::size_t zwords = 1;
    for (int i = 0; i < n; ++i) zwords *= nz;
    std::vector<std::vector<double>> joint(nm, std::vector<double>(zwords, 0.0));
    for (BitWord l = 0; l < (BitWord{1} << f.l_dim); ++l) {
        const BitWord m = f.apply(l);
        const BitWord t = fam.encode(g, l);
        for (std::size_t zi = 0; zi < zwords; ++zi) {
            double p = 1.0;
            std::size_t rem = zi;
            for (int i = 0; i < n; ++i) {
                p *= qz.matrix[(t >> i) & 1u][rem % nz];
                rem /= nz;
            }
            joint[m][zi] += p / std::ldexp(1.0, f.l_dim);
        }
    }
    auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
    double hm = 0.0, hz = 0.0, hmz = 0.0;
    std::vector<double> pz(zwords, 0.0);
    for (std::size_t m = 0; m < nm; ++m) {
        double pm = 0.0;
        for (std::size_t zi = 0; zi < zwords; ++zi) {
            pm += joint[m][zi];
            pz[zi] += joint[m][zi];
            hmz += h(joint[m][zi]);
        }
        hm += h(pm);
    }
    for (double p : pz) hz += h(p);
    return hm + hz - hmz;
}

} // namespace

TEST_CASE("exact_leakage trivial cases") {
    const CosetEncoderFamily fam = small_code(4, 2, 1);
    const LinearHash f = make_toeplitz(2, 1, 0b1).to_matrix();
    const PrefixChannel id = identity_prefix(2);

    SUBCASE("input-independent eavesdropper leaks nothing") {
        CHECK(exact_leakage(fam, f, 0, id, make_bsc(0.5)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("identity hash + noiseless eavesdropper leaks ln|M|") {
        const LinearHash idhash = make_toeplitz(2, 2, 0).to_matrix();
        CHECK(exact_leakage(fam, idhash, 0, id, identity_channel(2)) ==
              doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("exact_leakage cross-checked against an independent summation") {
    const PrefixChannel id = identity_prefix(2);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const CosetEncoderFamily fam = small_code(4, 2, seed);
        for (BitWord d = 0; d < 2; ++d) {
            const LinearHash f = make_toeplitz(2, 1, d).to_matrix();
            const DiscreteChannel qz = make_bsc(0.2);
            const double a = exact_leakage(fam, f, 0, id, qz);
            const double b = leakage_by_joint_entropies(fam, f, 0, qz);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact_leakage invariances") {
    const CosetEncoderFamily fam = small_code(3, 2, 7);
    const LinearHash f = make_toeplitz(2, 1, 0b1).to_matrix();
    const PrefixChannel id = identity_prefix(2);
    const DiscreteChannel qz{{{0.6, 0.3, 0.1}, {0.1, 0.2, 0.7}}};
    const DiscreteChannel perm{{{0.3, 0.1, 0.6}, {0.2, 0.7, 0.1}}};
    CHECK(exact_leakage(fam, f, 0, id, qz) ==
          doctest::Approx(exact_leakage(fam, f, 0, id, perm)).epsilon(1e-12));

    // Data processing: merging two output columns never increases leakage.
    const DiscreteChannel merged{{{0.9, 0.1}, {0.3, 0.7}}};
    CHECK(exact_leakage(fam, f, 0, id, merged) <=
          exact_leakage(fam, f, 0, id, qz) + 1e-12);
}

TEST_CASE("family_average_leakage") {
    const PrefixChannel id = identity_prefix(2);
    SUBCASE("all linear surjections F2^2 -> F2: average of 3 values") {
        const CosetEncoderFamily fam = small_code(4, 2, 5);
        const HashFamily hf{HashFamilyKind::all_linear_surjections, 2, 1};
        const auto members = enumerate_family(hf);
        CHECK(members.size() == 3);
        double manual = 0.0;
        for (const auto& f : members) manual += exact_leakage(fam, f, 0, id, make_bsc(0.2));
        CHECK(family_average_leakage(fam, hf, false, id, make_bsc(0.2)) ==
              doctest::Approx(manual / 3.0).epsilon(1e-14));
    }
    SUBCASE("toeplitz l=3,k=1: average over 4 seeds") {
        const CosetEncoderFamily fam = small_code(4, 3, 6);
        const HashFamily hf{HashFamilyKind::toeplitz, 3, 1};
        CHECK(enumerate_family(hf).size() == 4);
        const double avg = family_average_leakage(fam, hf, false, id, make_bsc(0.3));
        CHECK(avg >= 0.0);
        CHECK(avg <= std::log(2.0));
    }
    SUBCASE("independent eavesdropper: zero for every seed") {
        const CosetEncoderFamily fam = small_code(4, 2, 5);
        const HashFamily hf{HashFamilyKind::toeplitz, 2, 1};
        CHECK(family_average_leakage(fam, hf, true, id, make_bsc(0.5)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("bound checks hold with positive slack") {
    const PrefixChannel id = identity_prefix(2);
    const CosetEncoderFamily fam = small_code(4, 2, 13);
    const HashFamily hf{HashFamilyKind::toeplitz, 2, 1};
    const BoundVerdict det =
        check_deterministic_bound(fam, hf, 0, id, make_bsc(0.1), "det");
    CHECK(det.pass);
    CHECK(det.slack > 0.0);
    const BoundVerdict rnd = check_randomized_bound(fam, hf, id, make_bsc(0.1), "rnd");
    CHECK(rnd.pass);
    CHECK(rnd.slack > 0.0);
}

TEST_CASE("designed-to-fail sanity: zeroed RHS is detected") {
    const PrefixChannel id = identity_prefix(2);
    const CosetEncoderFamily fam = small_code(4, 2, 13);
    const HashFamily hf{HashFamilyKind::toeplitz, 2, 1};
    const double lhs = family_average_leakage(fam, hf, false, id, make_bsc(0.1));
    CHECK(lhs > 0.0);
    // A bound multiplied by zero must be flagged as violated.
    CHECK_FALSE(lhs <= 0.0 * std::exp(phi_bar_exact_code(0.25, fam, 0, id, make_bsc(0.1))));
}

TEST_CASE("identity-hash instance: bound may exceed ln|M| but still holds") {
    const PrefixChannel id = identity_prefix(2);
    const CosetEncoderFamily fam = small_code(3, 2, 21);
    const HashFamily hf{HashFamilyKind::toeplitz, 2, 2};
    const BoundVerdict v =
        check_deterministic_bound(fam, hf, 0, id, make_bsc(0.1), "identity-hash");
    CHECK(v.pass);
}

TEST_CASE("standard small suite passes") {
    for (const auto& v : standard_verification_suite(false)) {
        INFO(v.name, " slack=", v.slack);
        CHECK(v.pass);
    }
}

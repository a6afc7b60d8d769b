#include "wtc/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wtc/infofunc.hpp"

namespace wtc {

namespace {

constexpr double kInstanceCap = 1e7;
constexpr std::size_t kSeedCap = std::size_t{1} << 20;

DiscreteChannel effective_channel(const PrefixChannel& prefix, const DiscreteChannel& qz) {
    if (prefix.is_identity() && prefix.input_size() == qz.input_size())
        return qz;
    return concatenate_prefix(prefix, qz);
}

std::size_t pow_sz(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// P(z-word | t-word) for every output word, odometer over Z^n.
double word_prob(const DiscreteChannel& q, BitWord t, const std::vector<int>& z, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= q.matrix[(t >> i) & 1u][z[i]];
    return p;
}

bool next_word(std::vector<int>& z, int radix) {
    for (auto& d : z) {
        if (++d < radix) return true;
        d = 0;
    }
    return false;
}

void check_cap(int m_bits, int nz, int n) {
    const double size = std::ldexp(1.0, m_bits) * std::pow(static_cast<double>(nz), n);
    if (size > kInstanceCap)
        throw std::invalid_argument("oracle instance too large to enumerate");
}

} // namespace

double exact_leakage(const CosetEncoderFamily& family, const LinearHash& f, BitWord g,
                     const PrefixChannel& prefix, const DiscreteChannel& qz) {
    const int n = family.code.n;
    const int kc = family.code.k;
    if (f.l_dim != kc)
        throw std::invalid_argument("hash input bits must equal the code dimension");
    const DiscreteChannel q = effective_channel(prefix, qz);
    const int nz = q.output_size();
    check_cap(f.k_dim, nz, n);

    const std::size_t nm = pow_sz(2, f.k_dim);
    // Preimage t-words for each message.
    std::vector<std::vector<BitWord>> preimages(nm);
    for (BitWord l = 0; l < (BitWord{1} << kc); ++l)
        preimages[f.apply(l)].push_back(family.encode(g, l));
    for (const auto& pre : preimages)
        if (pre.empty())
            throw std::invalid_argument("hash is not surjective on this instance");

    double mi = 0.0;
    std::vector<int> z(n, 0);
    do {
        std::vector<double> pzm(nm, 0.0);
        double pz = 0.0;
        for (std::size_t m = 0; m < nm; ++m) {
            for (BitWord t : preimages[m]) pzm[m] += word_prob(q, t, z, n);
            pzm[m] /= static_cast<double>(preimages[m].size());
            pz += pzm[m] / static_cast<double>(nm);
        }
        if (pz == 0.0) continue;
        for (std::size_t m = 0; m < nm; ++m) {
            if (pzm[m] == 0.0) continue;
            mi += pzm[m] / static_cast<double>(nm) * std::log(pzm[m] / pz);
        }
    } while (next_word(z, nz));
    return std::max(0.0, mi);
}

double family_average_leakage(const CosetEncoderFamily& family, const HashFamily& hashes,
                              bool average_over_cosets, const PrefixChannel& prefix,
                              const DiscreteChannel& qz) {
    if (hashes.seed_count() > kSeedCap)
        throw std::invalid_argument("hash seed space too large to enumerate");
    const auto members = enumerate_family(hashes);
    const int ng = average_over_cosets ? family.coset_count() : 1;
    double acc = 0.0;
    for (const auto& f : members)
        for (int g = 0; g < ng; ++g)
            acc += exact_leakage(family, f, static_cast<BitWord>(g), prefix, qz);
    return acc / (static_cast<double>(members.size()) * ng);
}

double phi_bar_exact_code(double s, const CosetEncoderFamily& family, BitWord g,
                          const PrefixChannel& prefix, const DiscreteChannel& qz) {
    if (!(s > 0.0 && s <= 0.5))
        throw std::invalid_argument("phi_bar requires 0 < s <= 1/2");
    const int n = family.code.n;
    const int kc = family.code.k;
    const DiscreteChannel q = effective_channel(prefix, qz);
    const int nz = q.output_size();
    check_cap(kc, nz, n);
    const double alpha = 1.0 / (1.0 - s);
    const std::size_t nl = pow_sz(2, kc);

    std::vector<BitWord> t_words(nl);
    for (std::size_t l = 0; l < nl; ++l)
        t_words[l] = family.encode(g, static_cast<BitWord>(l));

    double total = 0.0;
    std::vector<int> z(n, 0);
    do {
        double inner = 0.0;
        for (BitWord t : t_words) {
            const double p = word_prob(q, t, z, n);
            if (p > 0.0) inner += std::pow(p, alpha) / static_cast<double>(nl);
        }
        if (inner > 0.0) total += std::pow(inner, 1.0 - s);
    } while (next_word(z, nz));
    return std::log(total);
}

namespace {

BoundVerdict grid_check(double lhs, const std::vector<double>& s_grid,
                        const std::vector<double>& rhs, const std::string& name) {
    BoundVerdict v;
    v.name = name;
    v.lhs = lhs;
    v.rhs_min = rhs.front();
    v.s_at_min = s_grid.front();
    for (std::size_t i = 1; i < rhs.size(); ++i)
        if (rhs[i] < v.rhs_min) { v.rhs_min = rhs[i]; v.s_at_min = s_grid[i]; }
    v.slack = v.rhs_min - lhs;
    v.pass = v.slack >= -1e-9;
    return v;
}

} // namespace

BoundVerdict check_randomized_bound(const CosetEncoderFamily& family, const HashFamily& hashes,
                                    const PrefixChannel& prefix, const DiscreteChannel& qz,
                                    const std::string& name) {
    const double lhs = family_average_leakage(family, hashes, true, prefix, qz);
    const DiscreteChannel q = effective_channel(prefix, qz);
    const Distribution uniform = uniform_distribution(q.input_size());
    const int n = family.code.n;
    const double ln_ratio = (hashes.k_dim - hashes.l_dim) * std::log(2.0);
    std::vector<double> s_grid, rhs;
    for (int i = 1; i <= 200; ++i) {
        const double s = static_cast<double>(i) / 200.0;
        s_grid.push_back(s);
        rhs.push_back(std::exp(s * ln_ratio + n * psi(s, uniform, q) - std::log(s)));
    }
    return grid_check(lhs, s_grid, rhs, name);
}

BoundVerdict check_deterministic_bound(const CosetEncoderFamily& family, const HashFamily& hashes,
                                       BitWord g, const PrefixChannel& prefix,
                                       const DiscreteChannel& qz, const std::string& name) {
    double lhs = 0.0;
    {
        const auto members = enumerate_family(hashes);
        for (const auto& f : members) lhs += exact_leakage(family, f, g, prefix, qz);
        lhs /= static_cast<double>(members.size());
    }
    const double ln_ratio = (hashes.k_dim - hashes.l_dim) * std::log(2.0);
    std::vector<double> s_grid, rhs;
    for (int i = 1; i <= 200; ++i) {
        const double s = 0.5 * static_cast<double>(i) / 200.0;
        s_grid.push_back(s);
        rhs.push_back(std::exp(s * ln_ratio + phi_bar_exact_code(s, family, g, prefix, qz) -
                               std::log(s)));
    }
    return grid_check(lhs, s_grid, rhs, name);
}

std::vector<BoundVerdict> standard_verification_suite(bool full) {
    std::vector<BoundVerdict> out;
    const DiscreteChannel bsc01 = make_bsc(0.1);
    const DiscreteChannel bsc03 = make_bsc(0.3);
    const DiscreteChannel bec02 = make_bec(0.2);
    const DiscreteChannel asym = make_dmc({{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}});
    const std::vector<std::pair<std::string, const DiscreteChannel*>> eves = {
        {"bsc(0.1)", &bsc01}, {"bsc(0.3)", &bsc03}, {"bec(0.2)", &bec02}, {"asym", &asym}};

    struct CodeSpec { int n, k; std::uint64_t seed; };
    std::vector<CodeSpec> codes = {{2, 2, 11}, {3, 2, 12}, {4, 2, 13}, {4, 3, 14}, {3, 3, 15}};
    if (!full) codes.resize(2);

    const PrefixChannel id2 = identity_prefix(2);
    for (const auto& cs : codes) {
        auto rng = std::mt19937_64(cs.seed);
        const CosetEncoderFamily family = make_coset_family(random_linear_code(cs.n, cs.k, rng));
        for (const auto& [ename, eve] : eves) {
            for (int kh = 1; kh < cs.k; ++kh) {
                const HashFamily hashes{HashFamilyKind::toeplitz, cs.k, kh};
                const std::string name = "det[" + std::to_string(cs.n) + "," +
                                         std::to_string(cs.k) + "]->k" + std::to_string(kh) +
                                         " vs " + ename;
                out.push_back(check_deterministic_bound(family, hashes, 0, id2, *eve, name));
            }
        }
    }

    // Randomized construction: [4,2] code, all cosets and seeds averaged.
    {
        auto rng = std::mt19937_64(42);
        const CosetEncoderFamily family = make_coset_family(random_linear_code(4, 2, rng));
        const HashFamily hashes{HashFamilyKind::toeplitz, 2, 1};
        for (const auto& [ename, eve] : eves) {
            out.push_back(check_randomized_bound(family, hashes, id2, *eve,
                                                 std::string("rand[4,2]->k1 vs ") + ename));
            if (!full) break;
        }
    }
    return out;
}

} // namespace wtc

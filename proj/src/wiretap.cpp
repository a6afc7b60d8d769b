#include "wtc/wiretap.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "wtc/rng.hpp"

namespace wtc {

WiretapCode make_wiretap_code(std::string construction, CosetEncoderFamily family,
                              ToeplitzHash hash, PrefixChannel prefix,
                              std::mt19937_64& g_rng) {
    if (construction != "randomized" && construction != "deterministic")
        throw std::invalid_argument("construction must be randomized or deterministic");
    if (hash.l_dim != family.code.k)
        throw std::invalid_argument("hash input bits must equal the code dimension");
    if (prefix.input_size() != 2)
        throw std::invalid_argument("prefix input alphabet must be binary");
    BitWord g = 0;
    if (construction == "randomized") {
        const int ns = family.code.n - family.code.k;
        g = ns > 0 ? static_cast<BitWord>(g_rng() & ((BitWord{1} << ns) - 1)) : 0;
    }
    return WiretapCode{std::move(construction), std::move(family), hash, std::move(prefix), g};
}

std::pair<double, double> wilson_interval(long long successes, long long trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054; // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<int> wiretap_encode(const WiretapCode& wt, BitWord m, std::mt19937_64& rng) {
    if (m >> wt.hash.k_dim)
        throw std::invalid_argument("message longer than hash output");
    const BitWord l = wt.hash.sample_preimage(m, rng);
    const BitWord t = wt.family.encode(wt.fixed_g, l);
    const int n = wt.block_length();
    std::vector<int> t_word(n);
    for (int i = 0; i < n; ++i) t_word[i] = (t >> i) & 1;
    if (wt.prefix.is_identity()) return t_word;
    const DiscreteChannel prefix_ch{wt.prefix.matrix};
    return sample(prefix_ch, t_word, rng);
}

BitWord wiretap_decode(const WiretapCode& wt, const std::vector<int>& y) {
    BitWord yw = 0;
    if (static_cast<int>(y.size()) != wt.block_length())
        throw std::invalid_argument("received word length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i]) yw |= BitWord{1} << i;
    return wt.hash.apply(wt.family.decode(wt.fixed_g, yw));
}

BitWord wiretap_decode(const WiretapCode& wt, const std::vector<double>& y,
                       const std::vector<double>& constellation) {
    return wt.hash.apply(wt.family.decode(wt.fixed_g, y, constellation));
}

namespace {

struct TrialCounts {
    long long wiretap = 0;
    long long channel = 0;
};

TrialCounts run_trial(const WiretapCode& wt, const Channel& qy, std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    const BitWord m =
        wt.hash.k_dim > 0 ? static_cast<BitWord>(rng() & ((BitWord{1} << wt.hash.k_dim) - 1)) : 0;
    const BitWord l = wt.hash.sample_preimage(m, rng);
    const BitWord t = wt.family.encode(wt.fixed_g, l);
    const int n = wt.block_length();
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = (t >> i) & 1;
    if (!wt.prefix.is_identity()) {
        const DiscreteChannel prefix_ch{wt.prefix.matrix};
        x = sample(prefix_ch, x, rng);
    }
    BitWord l_hat;
    if (const auto* dch = std::get_if<DiscreteChannel>(&qy)) {
        const std::vector<int> y = sample(*dch, x, rng);
        BitWord yw = 0;
        for (int i = 0; i < n; ++i)
            if (y[i]) yw |= BitWord{1} << i;
        l_hat = wt.family.decode(wt.fixed_g, yw);
    } else {
        const auto& gch = std::get<GaussianChannel>(qy);
        const std::vector<double> y = sample(gch, x, rng);
        l_hat = wt.family.decode(wt.fixed_g, y, gch.constellation);
    }
    TrialCounts c;
    if (l_hat != l) c.channel = 1;
    if (wt.hash.apply(l_hat) != m) c.wiretap = 1;
    return c;
}

} // namespace

SimulationReport simulate(const WiretapCode& wt, const Channel& qy, long long trials,
                          std::uint64_t master_seed, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    threads = std::max(1, threads);
    const std::uint64_t noise_seed = derive_seed(master_seed, "noise");
    std::vector<TrialCounts> partial(threads);
    auto worker = [&](int w) {
        TrialCounts acc;
        // Per-trial substreams make the totals independent of the split.
        for (long long i = w; i < trials; i += threads) {
            const TrialCounts c =
                run_trial(wt, qy, derive_seed(noise_seed, static_cast<std::uint64_t>(i)));
            acc.wiretap += c.wiretap;
            acc.channel += c.channel;
        }
        partial[w] = acc;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    SimulationReport rep;
    rep.trials = trials;
    rep.master_seed = master_seed;
    for (const auto& c : partial) {
        rep.wiretap_errors += c.wiretap;
        rep.channel_code_errors += c.channel;
    }
    std::tie(rep.wiretap_ci_lo, rep.wiretap_ci_hi) =
        wilson_interval(rep.wiretap_errors, trials);
    std::tie(rep.channel_ci_lo, rep.channel_ci_hi) =
        wilson_interval(rep.channel_code_errors, trials);
    return rep;
}

LeakageReport leakage_report(const WiretapCode& wt, const Channel& qz, int n_scale,
                             double epsilon) {
    Channel effective = qz;
    if (!wt.prefix.is_identity()) {
        const auto* dch = std::get_if<DiscreteChannel>(&qz);
        if (!dch)
            throw std::invalid_argument("non-identity prefix requires a discrete eavesdropper");
        effective = concatenate_prefix(wt.prefix, *dch);
    }
    const double ln2 = std::log(2.0);
    const double ln_L = wt.hash.l_dim * ln2;
    const double ln_M = wt.hash.k_dim * ln2;
    RatePlan plan;
    if (wt.construction == "randomized") {
        plan = min_log_bound_over_s(ExponentKind::psi, effective,
                                    uniform_distribution(channel_input_size(effective)),
                                    ln_L, ln_M, n_scale);
    } else {
        plan = min_log_bound_over_s(ExponentKind::phi, effective, std::nullopt,
                                    ln_L, ln_M, n_scale);
    }
    LeakageReport rep;
    rep.construction = wt.construction;
    rep.n = n_scale;
    rep.ln_L = ln_L;
    rep.ln_M = ln_M;
    rep.s_star = plan.s_star;
    rep.exponent = plan.exponent;
    rep.log_bound = plan.log_bound;
    rep.bound = std::exp(plan.log_bound);
    rep.epsilon = epsilon;
    rep.meets_epsilon = rep.bound <= epsilon;
    return rep;
}

} // namespace wtc

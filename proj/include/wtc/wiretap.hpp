#pragma once

#include <cstdint>
#include <string>

#include "wtc/channels.hpp"
#include "wtc/codes.hpp"
#include "wtc/hashing.hpp"
#include "wtc/optimize.hpp"

namespace wtc {

// Channel code + hash + prefix channel assembled into one of the two
// wiretap constructions. The deterministic construction fixes g = 0; the
// randomized one draws g at assembly time and records it.
struct WiretapCode {
    std::string construction; // "randomized" | "deterministic"
    CosetEncoderFamily family;
    ToeplitzHash hash;   // hash.l_dim == family.code.k
    PrefixChannel prefix;
    BitWord fixed_g = 0;

    int block_length() const { return family.code.n; }
    int message_bits() const { return hash.k_dim; }
};

WiretapCode make_wiretap_code(std::string construction, CosetEncoderFamily family,
                              ToeplitzHash hash, PrefixChannel prefix,
                              std::mt19937_64& g_rng);

struct LeakageReport {
    std::string construction;
    int n = 0;           // scale used for the exponent
    double ln_L = 0.0;   // nats
    double ln_M = 0.0;   // nats
    double s_star = 0.0;
    double exponent = 0.0;   // single-letter exponent value, nats
    double log_bound = 0.0;  // nats
    double bound = 0.0;      // leakage bound, nats
    double epsilon = 0.0;
    bool meets_epsilon = false;
};

struct SimulationReport {
    long long trials = 0;
    long long wiretap_errors = 0;
    long long channel_code_errors = 0;
    double wiretap_ci_lo = 0.0, wiretap_ci_hi = 0.0;  // Wilson 95%
    double channel_ci_lo = 0.0, channel_ci_hi = 0.0;
    std::uint64_t master_seed = 0;
};

// Wilson score interval for x successes out of n at 95% confidence.
std::pair<double, double> wilson_interval(long long successes, long long trials);

// l = preimage(m), t = coset encode, then each symbol of t through the
// prefix channel.
std::vector<int> wiretap_encode(const WiretapCode& wt, BitWord m, std::mt19937_64& rng);

BitWord wiretap_decode(const WiretapCode& wt, const std::vector<int>& y);
BitWord wiretap_decode(const WiretapCode& wt, const std::vector<double>& y,
                       const std::vector<double>& constellation);

// Coupled Monte Carlo trials: the same noise realization feeds the bare
// channel-code decode of l and the wiretap decode of m, so wiretap errors
// can never exceed channel-code errors. Deterministic in (seed, trials)
// regardless of thread count.
SimulationReport simulate(const WiretapCode& wt, const Channel& qy, long long trials,
                          std::uint64_t master_seed, int threads = 1);

// Leakage bound for eavesdropper channel qz, with the prefix folded in and
// the exponent scaled by n_scale (may exceed the code's block length).
LeakageReport leakage_report(const WiretapCode& wt, const Channel& qz, int n_scale,
                             double epsilon);

} // namespace wtc

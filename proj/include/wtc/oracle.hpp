#pragma once

#include <optional>
#include <string>

#include "wtc/channels.hpp"
#include "wtc/codes.hpp"
#include "wtc/hashing.hpp"

namespace wtc {

// Exact eavesdropped information on an enumerable instance.
struct ExactLeakage {
    double value = 0.0;                  // I(M;Z) in nats, fixed hash and coset
    std::optional<double> family_average; // averaged over hash seeds (and cosets)
    int n = 0;
    int l_bits = 0;
    int m_bits = 0;
};

// I(M;Z) for a fixed linear hash f and coset g, by enumeration of all
// messages, preimages and eavesdropper output words. The prefix channel is
// folded into qz per symbol. Throws if |M| * |Z|^n exceeds 1e7.
double exact_leakage(const CosetEncoderFamily& family, const LinearHash& f, BitWord g,
                     const PrefixChannel& prefix, const DiscreteChannel& qz);

// Exact average of exact_leakage over every member of the hash family, and
// over every coset too when average_over_cosets is set (randomized
// construction). Seed space capped at 2^20.
double family_average_leakage(const CosetEncoderFamily& family, const HashFamily& hashes,
                              bool average_over_cosets, const PrefixChannel& prefix,
                              const DiscreteChannel& qz);

// n-letter phi_bar of the code-induced channel L -> Z^n (uniform L, coset g).
double phi_bar_exact_code(double s, const CosetEncoderFamily& family, BitWord g,
                          const PrefixChannel& prefix, const DiscreteChannel& qz);

struct BoundVerdict {
    std::string name;
    bool pass = false;
    double lhs = 0.0;     // exact leakage, nats
    double rhs_min = 0.0; // minimum of the bound over the s-grid, nats
    double slack = 0.0;   // rhs_min - lhs
    double s_at_min = 0.0;
};

// Randomized-construction bound: I(M;Z|F,G) against
// (|M|/|L|)^s exp(n psi(s, Uniform, Qz))/s over a 200-point grid on (0,1].
BoundVerdict check_randomized_bound(const CosetEncoderFamily& family, const HashFamily& hashes,
                                    const PrefixChannel& prefix, const DiscreteChannel& qz,
                                    const std::string& name);

// Deterministic-construction bound: E_F I(F(L);Z) for the fixed coset g
// against (|M|/|L|)^s exp(phi_bar_exact)/s over a 200-point grid on (0,1/2].
BoundVerdict check_deterministic_bound(const CosetEncoderFamily& family, const HashFamily& hashes,
                                       BitWord g, const PrefixChannel& prefix,
                                       const DiscreteChannel& qz, const std::string& name);

// Fixed battery of tiny instances: deterministic-construction checks over
// n in {2,3,4} with all hash seeds enumerated, plus the randomized [4,2]
// all-coset check. full=false runs a reduced subset.
std::vector<BoundVerdict> standard_verification_suite(bool full);

} // namespace wtc

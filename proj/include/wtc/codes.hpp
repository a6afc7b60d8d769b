#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wtc/hashing.hpp" // BitWord

namespace wtc {

// Binary [n,k] linear code. Generator rows and parity-check rows are bit
// words with component j at bit j.
struct LinearCode {
    int n = 0;
    int k = 0;
    std::vector<BitWord> generator;    // k rows
    std::vector<BitWord> parity_check; // n-k rows, G H^T = 0

    BitWord encode_message(BitWord l) const;   // l * G
    BitWord syndrome(BitWord word) const;      // word * H^T
};

LinearCode make_linear_code(int n, int k, std::vector<BitWord> generator_rows);
LinearCode hamming74();
LinearCode full_space_code(int n); // k = n, G = I

// Uniformly random full-rank generator (rejection sampling); parity check
// derived from the null space. Deterministic for a fixed rng state.
LinearCode random_linear_code(int n, int k, std::mt19937_64& rng);

// Syndrome-indexed coset encoders partitioning {0,1}^n; leaders are
// minimum-weight words per coset (ties: smallest word value).
struct CosetEncoderFamily {
    LinearCode code;
    std::vector<BitWord> leaders; // indexed by syndrome

    int coset_count() const { return static_cast<int>(leaders.size()); }
    BitWord encode(BitWord g, BitWord l) const; // l*G xor leader(g)
    // Nearest-codeword (ML) decode relative to coset g; ties broken by the
    // smallest message value.
    BitWord decode(BitWord g, BitWord y) const;
    // Minimum Euclidean distance decode for real-valued input, bits mapped
    // through the given 2-point constellation.
    BitWord decode(BitWord g, const std::vector<double>& y,
                   const std::vector<double>& constellation) const;
};

CosetEncoderFamily make_coset_family(LinearCode code);

// F2 null space basis of the span of the given rows (words of length n).
std::vector<BitWord> f2_null_space(const std::vector<BitWord>& rows, int n);

} // namespace wtc

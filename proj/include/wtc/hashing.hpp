#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace wtc {

// Bit vectors are stored in a machine word, component j at bit j.
// Serialized forms (hex) are packed most-significant-bit-first, i.e.
// component 0 occupies the top bit of the first byte.
using BitWord = std::uint32_t;

std::string bits_to_hex(BitWord w, int len);
BitWord hex_to_bits(const std::string& hex, int len);

// Generic linear map F2^l -> F2^k given by k row words.
struct LinearHash {
    int l_dim = 0;
    int k_dim = 0;
    std::vector<BitWord> rows;

    BitWord apply(BitWord x) const;
};

// Seeded [I_k | T] linear surjection with Toeplitz block T built from
// l_dim - 1 diagonal bits; full row rank by the identity block, so every
// preimage has exactly 2^(l-k) elements.
struct ToeplitzHash {
    int l_dim = 0;
    int k_dim = 0;
    BitWord diag_bits = 0; // l_dim - 1 bits

    BitWord row(int i) const;       // row i of [I_k | T]
    BitWord apply(BitWord x) const;
    // Uniform preimage draw: x = (m xor T r, r), r uniform on F2^(l-k).
    BitWord sample_preimage(BitWord m, std::mt19937_64& rng) const;
    LinearHash to_matrix() const;
};

ToeplitzHash make_toeplitz(int l_dim, int k_dim, BitWord diag_bits);
ToeplitzHash random_toeplitz(int l_dim, int k_dim, std::mt19937_64& rng);

enum class HashFamilyKind { toeplitz, all_linear_surjections };

struct HashFamily {
    HashFamilyKind kind = HashFamilyKind::toeplitz;
    int l_dim = 0;
    int k_dim = 0;

    bool enumerable() const;
    std::size_t seed_count() const;
};

// All members of an enumerable family, in seed order.
std::vector<LinearHash> enumerate_family(const HashFamily& family);

// Exact maximum over all distinct input pairs of the seed-averaged
// collision probability. Requires an enumerable family.
double verify_two_universal(const HashFamily& family);

} // namespace wtc

#include "wtc/hashing.hpp"

#include <bit>
#include <stdexcept>

namespace wtc {

namespace {

int parity(BitWord w) { return std::popcount(w) & 1; }

void check_dims(int l, int k) {
    if (l < 1 || k < 0 || k > l || l > 31)
        throw std::invalid_argument("hash dimensions must satisfy 0 <= k <= l <= 31");
}

// Rank of a set of row words over F2.
int f2_rank(std::vector<BitWord> rows) {
    int rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] == 0) continue;
        const int pivot = std::countr_zero(rows[i]);
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && ((rows[j] >> pivot) & 1u)) rows[j] ^= rows[i];
        ++rank;
    }
    return rank;
}

} // namespace

std::string bits_to_hex(BitWord w, int len) {
    const int nbytes = (len + 7) / 8;
    std::string out;
    out.reserve(2 * nbytes);
    static const char digits[] = "0123456789abcdef";
    for (int b = 0; b < nbytes; ++b) {
        unsigned byte = 0;
        for (int i = 0; i < 8; ++i) {
            const int comp = b * 8 + i;
            if (comp < len && ((w >> comp) & 1u)) byte |= 0x80u >> i;
        }
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

BitWord hex_to_bits(const std::string& hex, int len) {
    const int nbytes = (len + 7) / 8;
    if (static_cast<int>(hex.size()) != 2 * nbytes)
        throw std::invalid_argument("hex string length does not match bit count");
    BitWord w = 0;
    for (int b = 0; b < nbytes; ++b) {
        unsigned byte = std::stoul(hex.substr(2 * b, 2), nullptr, 16);
        for (int i = 0; i < 8; ++i) {
            const int comp = b * 8 + i;
            if (comp < len && (byte & (0x80u >> i))) w |= BitWord{1} << comp;
        }
    }
    return w;
}

BitWord LinearHash::apply(BitWord x) const {
    BitWord m = 0;
    for (int i = 0; i < k_dim; ++i)
        if (parity(rows[i] & x)) m |= BitWord{1} << i;
    return m;
}

BitWord ToeplitzHash::row(int i) const {
    BitWord r = BitWord{1} << i;
    for (int j = 0; j < l_dim - k_dim; ++j) {
        // T[i][j] = diag_bits[k-1-i+j]
        if ((diag_bits >> (k_dim - 1 - i + j)) & 1u) r |= BitWord{1} << (k_dim + j);
    }
    return r;
}

BitWord ToeplitzHash::apply(BitWord x) const {
    if (x >> l_dim)
        throw std::invalid_argument("hash input longer than l_dim");
    BitWord m = 0;
    for (int i = 0; i < k_dim; ++i)
        if (parity(row(i) & x)) m |= BitWord{1} << i;
    return m;
}

BitWord ToeplitzHash::sample_preimage(BitWord m, std::mt19937_64& rng) const {
    if (m >> k_dim)
        throw std::invalid_argument("hash output longer than k_dim");
    const int tail = l_dim - k_dim;
    BitWord r = tail > 0 ? static_cast<BitWord>(rng() & ((BitWord{1} << tail) - 1)) : 0;
    BitWord head = m;
    for (int i = 0; i < k_dim; ++i) {
        const BitWord trow = row(i) >> k_dim;
        if (parity(trow & r)) head ^= BitWord{1} << i;
    }
    return head | (r << k_dim);
}

LinearHash ToeplitzHash::to_matrix() const {
    LinearHash h{l_dim, k_dim, {}};
    h.rows.reserve(k_dim);
    for (int i = 0; i < k_dim; ++i) h.rows.push_back(row(i));
    return h;
}

ToeplitzHash make_toeplitz(int l_dim, int k_dim, BitWord diag_bits) {
    check_dims(l_dim, k_dim);
    if (l_dim > 1 && (diag_bits >> (l_dim - 1)))
        throw std::invalid_argument("diag_bits longer than l_dim - 1");
    return ToeplitzHash{l_dim, k_dim, diag_bits};
}

ToeplitzHash random_toeplitz(int l_dim, int k_dim, std::mt19937_64& rng) {
    check_dims(l_dim, k_dim);
    const int nbits = l_dim - 1;
    BitWord d = nbits > 0 ? static_cast<BitWord>(rng() & ((BitWord{1} << nbits) - 1)) : 0;
    return ToeplitzHash{l_dim, k_dim, d};
}

bool HashFamily::enumerable() const { return seed_count() <= (std::size_t{1} << 24); }

std::size_t HashFamily::seed_count() const {
    if (kind == HashFamilyKind::toeplitz)
        return std::size_t{1} << (l_dim - 1);
    // all k x l matrices, filtered to full rank during enumeration
    if (static_cast<std::size_t>(k_dim) * l_dim > 24)
        throw std::invalid_argument("all-linear-surjections family too large");
    return std::size_t{1} << (static_cast<std::size_t>(k_dim) * l_dim);
}

std::vector<LinearHash> enumerate_family(const HashFamily& family) {
    check_dims(family.l_dim, family.k_dim);
    if (!family.enumerable())
        throw std::invalid_argument("hash family too large to enumerate");
    std::vector<LinearHash> out;
    if (family.kind == HashFamilyKind::toeplitz) {
        const std::size_t nseeds = std::size_t{1} << (family.l_dim - 1);
        out.reserve(nseeds);
        for (std::size_t d = 0; d < nseeds; ++d)
            out.push_back(make_toeplitz(family.l_dim, family.k_dim,
                                        static_cast<BitWord>(d)).to_matrix());
        return out;
    }
    const std::size_t total = family.seed_count();
    for (std::size_t bits = 0; bits < total; ++bits) {
        LinearHash h{family.l_dim, family.k_dim, {}};
        for (int i = 0; i < family.k_dim; ++i) {
            const BitWord row = static_cast<BitWord>(
                (bits >> (static_cast<std::size_t>(i) * family.l_dim)) &
                ((std::size_t{1} << family.l_dim) - 1));
            h.rows.push_back(row);
        }
        if (f2_rank(h.rows) == family.k_dim) out.push_back(std::move(h));
    }
    return out;
}

double verify_two_universal(const HashFamily& family) {
    const auto members = enumerate_family(family);
    const std::size_t space = std::size_t{1} << family.l_dim;
    std::size_t max_collisions = 0;
    for (std::size_t x1 = 0; x1 < space; ++x1) {
        for (std::size_t x2 = x1 + 1; x2 < space; ++x2) {
            std::size_t hits = 0;
            for (const auto& f : members)
                if (f.apply(static_cast<BitWord>(x1)) == f.apply(static_cast<BitWord>(x2)))
                    ++hits;
            max_collisions = std::max(max_collisions, hits);
        }
    }
    return static_cast<double>(max_collisions) / static_cast<double>(members.size());
}

} // namespace wtc

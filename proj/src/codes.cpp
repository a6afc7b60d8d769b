#include "wtc/codes.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wtc {

namespace {

constexpr int kMaxBlockLength = 20;

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

std::vector<BitWord> f2_null_space(const std::vector<BitWord>& rows, int n) {
    // Reduce to row echelon form, tracking pivot columns.
    std::vector<BitWord> re(rows);
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < n && r < re.size(); ++c) {
        std::size_t sel = r;
        while (sel < re.size() && !((re[sel] >> c) & 1u)) ++sel;
        if (sel == re.size()) continue;
        std::swap(re[r], re[sel]);
        for (std::size_t j = 0; j < re.size(); ++j)
            if (j != r && ((re[j] >> c) & 1u)) re[j] ^= re[r];
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<BitWord> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitWord v = BitWord{1} << f;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if ((re[i] >> f) & 1u) v |= BitWord{1} << pivot_col[i];
        basis.push_back(v);
    }
    return basis;
}

BitWord LinearCode::encode_message(BitWord l) const {
    BitWord w = 0;
    for (int i = 0; i < k; ++i)
        if ((l >> i) & 1u) w ^= generator[i];
    return w;
}

BitWord LinearCode::syndrome(BitWord word) const {
    BitWord s = 0;
    for (std::size_t i = 0; i < parity_check.size(); ++i)
        if (std::popcount(parity_check[i] & word) & 1) s |= BitWord{1} << i;
    return s;
}

LinearCode make_linear_code(int n, int k, std::vector<BitWord> generator_rows) {
    if (n < 1 || k < 1 || k > n || n > kMaxBlockLength)
        throw std::invalid_argument("code dimensions out of supported range");
    if (static_cast<int>(generator_rows.size()) != k)
        throw std::invalid_argument("generator row count does not match k");
    if (f2_rank(generator_rows) != k)
        throw std::invalid_argument("generator matrix is rank deficient");
    LinearCode code{n, k, std::move(generator_rows), {}};
    code.parity_check = f2_null_space(code.generator, n);
    return code;
}

LinearCode hamming74() {
    // G = [I4 | A], component j at bit j.
    return make_linear_code(7, 4, {
        49u,  // [1 0 0 0 | 1 1 0]
        82u,  // [0 1 0 0 | 1 0 1]
        100u, // [0 0 1 0 | 0 1 1]
        120u, // [0 0 0 1 | 1 1 1]
    });
}

LinearCode full_space_code(int n) {
    std::vector<BitWord> rows;
    for (int i = 0; i < n; ++i) rows.push_back(BitWord{1} << i);
    return make_linear_code(n, n, std::move(rows));
}

LinearCode random_linear_code(int n, int k, std::mt19937_64& rng) {
    if (n < 1 || k < 1 || k > n || n > kMaxBlockLength)
        throw std::invalid_argument("code dimensions out of supported range");
    const BitWord mask = (n == 31) ? ~BitWord{0} >> 1 : (BitWord{1} << n) - 1;
    std::vector<BitWord> rows(k);
    for (;;) {
        for (auto& r : rows) r = static_cast<BitWord>(rng()) & mask;
        if (f2_rank(rows) == k) break;
    }
    return make_linear_code(n, k, std::move(rows));
}

CosetEncoderFamily make_coset_family(LinearCode code) {
    const int n = code.n;
    const int ns = n - code.k;
    std::vector<BitWord> leaders(std::size_t{1} << ns,
                                 std::numeric_limits<BitWord>::max());
    std::vector<int> best_weight(std::size_t{1} << ns, n + 1);
    for (BitWord w = 0; w < (BitWord{1} << n); ++w) {
        const BitWord s = code.syndrome(w);
        const int wt = std::popcount(w);
        if (wt < best_weight[s] || (wt == best_weight[s] && w < leaders[s])) {
            best_weight[s] = wt;
            leaders[s] = w;
        }
    }
    return CosetEncoderFamily{std::move(code), std::move(leaders)};
}

BitWord CosetEncoderFamily::encode(BitWord g, BitWord l) const {
    if (g >= leaders.size() || (l >> code.k))
        throw std::invalid_argument("coset or message index out of range");
    return code.encode_message(l) ^ leaders[g];
}

BitWord CosetEncoderFamily::decode(BitWord g, BitWord y) const {
    if (g >= leaders.size() || (y >> code.n))
        throw std::invalid_argument("coset or word out of range");
    const BitWord shifted = y ^ leaders[g];
    BitWord best_l = 0;
    int best_d = code.n + 1;
    for (BitWord l = 0; l < (BitWord{1} << code.k); ++l) {
        const int d = std::popcount(shifted ^ code.encode_message(l));
        if (d < best_d) { best_d = d; best_l = l; }
    }
    return best_l;
}

BitWord CosetEncoderFamily::decode(BitWord g, const std::vector<double>& y,
                                   const std::vector<double>& constellation) const {
    if (g >= leaders.size() || static_cast<int>(y.size()) != code.n)
        throw std::invalid_argument("coset or word out of range");
    if (constellation.size() != 2)
        throw std::invalid_argument("soft decode expects a 2-point constellation");
    BitWord best_l = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (BitWord l = 0; l < (BitWord{1} << code.k); ++l) {
        const BitWord word = code.encode_message(l) ^ leaders[g];
        double d = 0.0;
        for (int i = 0; i < code.n; ++i) {
            const double x = constellation[(word >> i) & 1u];
            d += (y[i] - x) * (y[i] - x);
        }
        if (d < best_d) { best_d = d; best_l = l; }
    }
    return best_l;
}

} // namespace wtc

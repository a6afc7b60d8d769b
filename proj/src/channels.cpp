#include "wtc/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace wtc {

bool PrefixChannel::is_identity() const {
    if (input_size() != output_size()) return false;
    for (int i = 0; i < input_size(); ++i)
        for (int j = 0; j < output_size(); ++j)
            if (matrix[i][j] != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

int channel_input_size(const Channel& ch) {
    if (const auto* d = std::get_if<DiscreteChannel>(&ch)) return d->input_size();
    return static_cast<int>(std::get<GaussianChannel>(ch).constellation.size());
}

void validate_stochastic(const Matrix& m) {
    if (m.empty() || m.front().empty())
        throw std::invalid_argument("channel matrix must be nonempty");
    const std::size_t cols = m.front().size();
    for (const auto& row : m) {
        if (row.size() != cols)
            throw std::invalid_argument("channel matrix rows have unequal length");
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("channel probability outside [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("channel matrix row does not sum to 1");
    }
}

DiscreteChannel make_dmc(Matrix m) {
    validate_stochastic(m);
    return DiscreteChannel{std::move(m)};
}

DiscreteChannel make_bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("BSC crossover probability outside [0,1]");
    return DiscreteChannel{{{1.0 - p, p}, {p, 1.0 - p}}};
}

DiscreteChannel make_bec(double e) {
    if (!(e >= 0.0 && e <= 1.0))
        throw std::invalid_argument("BEC erasure probability outside [0,1]");
    // Output alphabet {0, erasure, 1}.
    return DiscreteChannel{{{1.0 - e, e, 0.0}, {0.0, e, 1.0 - e}}};
}

DiscreteChannel identity_channel(int q) {
    if (q < 1) throw std::invalid_argument("alphabet size must be positive");
    Matrix m(q, std::vector<double>(q, 0.0));
    for (int i = 0; i < q; ++i) m[i][i] = 1.0;
    return DiscreteChannel{std::move(m)};
}

PrefixChannel identity_prefix(int q) {
    return PrefixChannel{identity_channel(q).matrix};
}

GaussianChannel make_awgn(std::vector<double> constellation, double sigma) {
    if (constellation.empty())
        throw std::invalid_argument("constellation must be nonempty");
    for (std::size_t i = 0; i < constellation.size(); ++i)
        for (std::size_t j = i + 1; j < constellation.size(); ++j)
            if (constellation[i] == constellation[j])
                throw std::invalid_argument("constellation points must be distinct");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    return GaussianChannel{std::move(constellation), sigma};
}

DiscreteChannel concatenate_prefix(const PrefixChannel& prefix, const DiscreteChannel& ch) {
    validate_stochastic(prefix.matrix);
    if (prefix.output_size() != ch.input_size())
        throw std::invalid_argument("prefix output alphabet does not match channel input");
    const int nt = prefix.input_size();
    const int nz = ch.output_size();
    const int nx = ch.input_size();
    Matrix out(nt, std::vector<double>(nz, 0.0));
    for (int t = 0; t < nt; ++t)
        for (int x = 0; x < nx; ++x) {
            const double w = prefix.matrix[t][x];
            if (w == 0.0) continue;
            for (int z = 0; z < nz; ++z) out[t][z] += w * ch.matrix[x][z];
        }
    validate_stochastic(out);
    return DiscreteChannel{std::move(out)};
}

DiscreteChannel product_channel(const DiscreteChannel& a, const DiscreteChannel& b) {
    const int ta = a.input_size(), za = a.output_size();
    const int tb = b.input_size(), zb = b.output_size();
    Matrix out(ta * tb, std::vector<double>(za * zb, 0.0));
    for (int i = 0; i < ta; ++i)
        for (int j = 0; j < tb; ++j)
            for (int u = 0; u < za; ++u)
                for (int v = 0; v < zb; ++v)
                    out[i * tb + j][u * zb + v] = a.matrix[i][u] * b.matrix[j][v];
    return DiscreteChannel{std::move(out)};
}

std::vector<int> sample(const DiscreteChannel& ch, const std::vector<int>& word,
                        std::mt19937_64& rng) {
    std::vector<int> out;
    out.reserve(word.size());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t : word) {
        if (t < 0 || t >= ch.input_size())
            throw std::invalid_argument("input symbol outside channel alphabet");
        const double u = unif(rng);
        double acc = 0.0;
        int z = ch.output_size() - 1;
        for (int j = 0; j < ch.output_size(); ++j) {
            acc += ch.matrix[t][j];
            if (u < acc) { z = j; break; }
        }
        out.push_back(z);
    }
    return out;
}

std::vector<double> sample(const GaussianChannel& ch, const std::vector<int>& word,
                           std::mt19937_64& rng) {
    std::vector<double> out;
    out.reserve(word.size());
    std::normal_distribution<double> noise(0.0, ch.sigma);
    for (int t : word) {
        if (t < 0 || t >= static_cast<int>(ch.constellation.size()))
            throw std::invalid_argument("input symbol outside constellation");
        out.push_back(ch.constellation[t] + noise(rng));
    }
    return out;
}

namespace {
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
} // namespace

DiscreteChannel discretize(const GaussianChannel& ch, double grid_min, double grid_max, int bins) {
    if (!(grid_min < grid_max) || bins < 2)
        throw std::invalid_argument("invalid discretization grid");
    const int nt = static_cast<int>(ch.constellation.size());
    const double width = (grid_max - grid_min) / bins;
    Matrix out(nt, std::vector<double>(bins, 0.0));
    for (int t = 0; t < nt; ++t) {
        const double mu = ch.constellation[t];
        double prev = 0.0; // CDF at grid_min, tail folded into bin 0
        for (int b = 0; b < bins; ++b) {
            const double hi = (b == bins - 1) ? 1.0
                                              : normal_cdf((grid_min + width * (b + 1) - mu) / ch.sigma);
            out[t][b] = hi - prev;
            prev = hi;
        }
        // Fold the lower tail into the first bin so the row sums to 1 exactly.
        double sum = 0.0;
        for (double p : out[t]) sum += p;
        out[t][0] += 1.0 - sum;
    }
    return DiscreteChannel{std::move(out)};
}

} // namespace wtc

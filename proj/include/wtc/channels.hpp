#pragma once

#include <random>
#include <variant>
#include <vector>

namespace wtc {

using Matrix = std::vector<std::vector<double>>;

// Memoryless discrete channel given by a row-stochastic matrix,
// matrix[t][z] = Q(z|t).
struct DiscreteChannel {
    Matrix matrix;

    int input_size() const { return static_cast<int>(matrix.size()); }
    int output_size() const { return matrix.empty() ? 0 : static_cast<int>(matrix.front().size()); }
};

// Additive Gaussian channel with a finite input constellation.
struct GaussianChannel {
    std::vector<double> constellation;
    double sigma = 1.0;
};

// Artificial memoryless channel applied by the encoder (input alphabet T,
// output alphabet X).
struct PrefixChannel {
    Matrix matrix;

    int input_size() const { return static_cast<int>(matrix.size()); }
    int output_size() const { return matrix.empty() ? 0 : static_cast<int>(matrix.front().size()); }
    bool is_identity() const;
};

using Channel = std::variant<DiscreteChannel, GaussianChannel>;

int channel_input_size(const Channel& ch);

// Throws std::invalid_argument unless every row sums to 1 within 1e-12 and
// all entries lie in [0,1].
void validate_stochastic(const Matrix& m);

DiscreteChannel make_dmc(Matrix m);
DiscreteChannel make_bsc(double p);
DiscreteChannel make_bec(double e);
DiscreteChannel identity_channel(int q);
PrefixChannel identity_prefix(int q);
GaussianChannel make_awgn(std::vector<double> constellation, double sigma);

// Single-letter composition Q(z|t) = sum_x prefix(x|t) ch(z|x).
DiscreteChannel concatenate_prefix(const PrefixChannel& prefix, const DiscreteChannel& ch);

// Two-fold product channel on the product alphabets, row index t1*|T2|+t2.
DiscreteChannel product_channel(const DiscreteChannel& a, const DiscreteChannel& b);

std::vector<int> sample(const DiscreteChannel& ch, const std::vector<int>& word,
                        std::mt19937_64& rng);
std::vector<double> sample(const GaussianChannel& ch, const std::vector<int>& word,
                           std::mt19937_64& rng);

// Bin probabilities from Gaussian CDF differences; tail mass is folded into
// the edge bins so every row sums to 1 exactly.
DiscreteChannel discretize(const GaussianChannel& ch, double grid_min, double grid_max, int bins);

} // namespace wtc

#pragma once

#include <utility>
#include <vector>

#include "wtc/channels.hpp"

namespace wtc {

struct Distribution {
    std::vector<double> probs;

    int size() const { return static_cast<int>(probs.size()); }
};

// Entries >= 0, sum = 1 within 1e-12; throws otherwise.
void validate_distribution(const Distribution& p);
Distribution uniform_distribution(int n);

enum class ExponentKind { psi, phi };

// Valid s-interval right endpoint: 1 for psi, 1/2 for phi.
double s_max_for(ExponentKind kind);

struct ExponentValue {
    double s;
    double value; // nats
    ExponentKind kind;
};

ExponentValue make_exponent_value(double s, double value, ExponentKind kind);

inline constexpr int kDefaultQuadratureNodes = 128;

// Gauss-Hermite nodes/weights for integral e^{-u^2} g(u) du (cached per n).
const std::pair<std::vector<double>, std::vector<double>>& gauss_hermite(int n);

double mutual_information(const Distribution& p, const DiscreteChannel& q);
double mutual_information(const Distribution& p, const GaussianChannel& q,
                          int nodes = kDefaultQuadratureNodes);
double mutual_information(const Distribution& p, const Channel& q);

// psi(s, P, Q) = ln sum_z [sum_t P(t) Q(z|t)^{1+s}] / P_Z(z)^s, 0 < s <= 1.
double psi(double s, const Distribution& p, const DiscreteChannel& q);
double psi(double s, const Distribution& p, const GaussianChannel& q,
           int nodes = kDefaultQuadratureNodes);
double psi(double s, const Distribution& p, const Channel& q);

// phi(s, Q, P) = ln sum_z (sum_t P(t) Q(z|t)^{1/(1-s)})^{1-s}, 0 < s <= 1/2.
double phi(double s, const DiscreteChannel& q, const Distribution& p);
double phi(double s, const GaussianChannel& q, const Distribution& p,
           int nodes = kDefaultQuadratureNodes);
double phi(double s, const Channel& q, const Distribution& p);

// phi with the uniform input distribution.
double phi_bar(double s, const Channel& q);

// E0(rho, P) = -ln sum_z (sum_t P(t) Q(z|t)^{1/(1+rho)})^{1+rho};
// phi(s, Q, P) = -E0(-s, P, Q).
double gallager_e0(double rho, const Distribution& p, const DiscreteChannel& q);

// Two-point Richardson extrapolation of psi(s)/s (resp. phi(s)/s) toward
// s -> 0, evaluated at s = 1e-4 and s = 5e-5; both limits equal I(P, Q).
double psi_rate_limit(const Distribution& p, const Channel& q);
double phi_rate_limit(const Channel& q, const Distribution& p);

} // namespace wtc

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "wtc/channels.hpp"
#include "wtc/infofunc.hpp"

namespace wtc {

struct RatePlan {
    int n = 0;
    double ln_L = 0.0;     // nats
    double ln_M = 0.0;     // nats
    double s_star = 0.0;
    double exponent = 0.0; // xi(s*) in nats (single-letter)
    double log_bound = 0.0; // nats, ln of the leakage bound
    std::string construction; // "randomized" | "deterministic"
    bool feasible = true;
};

struct MaximizerResult {
    Distribution P_opt;
    double value = 0.0; // phi(s, Q, P_opt) in nats
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

// Objective of the bound minimization: s(ln_M - ln_L) + n*xi(s) - ln s.
double log_bound_objective(double s, double ln_L, double ln_M, int n, double xi_value);

// Maximize the concave exp(phi(s, Q, .)) over the probability simplex by
// projected gradient ascent. Terminates at KKT residual <= 1e-9 or 1e5
// iterations.
MaximizerResult max_phi_over_P(double s, const Channel& q,
                               std::optional<Distribution> warm_start = std::nullopt);

// Minimize the log of the leakage bound over s by bisection on the
// derivative. P empty means "maximize over P" (phi kind only; psi defaults
// to uniform). Convexity over s is verified on the returned neighborhood;
// a detected non-convexity falls back to dense grid search and is logged.
RatePlan min_log_bound_over_s(ExponentKind kind, const Channel& q,
                              std::optional<Distribution> p,
                              double ln_L, double ln_M, int n);

// Restricted secrecy capacity max_P [I(P,Qy) - I(P,Qz)] with T = X,
// clamped at 0. Grid search (1e-3 resolution) plus local refinement;
// input alphabets up to size 3.
double secrecy_capacity(const Channel& qy, const Channel& qz);

// Largest ln_M on a 0.01-nat grid (with ln_L itself included as a
// candidate) whose minimized bound is <= epsilon.
RatePlan plan_rates(const std::string& construction, const Channel& qz_t,
                    double rate_l, int n, double epsilon);

} // namespace wtc

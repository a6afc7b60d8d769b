#include "wtc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wtc {

namespace {

constexpr double kBisectionTol = 1e-9;
constexpr int kBisectionMaxSteps = 200;
constexpr double kAscentTol = 1e-9;
constexpr int kAscentMaxIters = 100000;

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (int i = 0; i < static_cast<int>(u.size()); ++i) {
        css += u[i];
        const double t = (css - 1.0) / (i + 1);
        if (u[i] - t > 0.0) { rho = i + 1; theta = t; }
    }
    (void)rho;
    for (auto& x : v) x = std::max(0.0, x - theta);
    return v;
}

struct PhiObjective {
    double value;               // exp(phi)
    std::vector<double> grad;   // d exp(phi) / d P_t
};

PhiObjective eval_exp_phi(double s, const DiscreteChannel& q, const std::vector<double>& p) {
    const int nt = q.input_size(), nz = q.output_size();
    const double alpha = 1.0 / (1.0 - s);
    PhiObjective out{0.0, std::vector<double>(nt, 0.0)};
    for (int z = 0; z < nz; ++z) {
        double inner = 0.0;
        std::vector<double> a(nt, 0.0);
        for (int t = 0; t < nt; ++t) {
            if (q.matrix[t][z] == 0.0) continue;
            a[t] = std::pow(q.matrix[t][z], alpha);
            inner += p[t] * a[t];
        }
        if (inner <= 0.0) continue;
        const double pow_term = std::pow(inner, 1.0 - s);
        out.value += pow_term;
        const double dfac = (1.0 - s) * pow_term / inner;
        for (int t = 0; t < nt; ++t) out.grad[t] += dfac * a[t];
    }
    return out;
}

double log_normal_pdf(double z, double mu, double sigma) {
    const double d = (z - mu) / sigma;
    return -0.5 * d * d - std::log(sigma) - 0.5 * std::log(2.0 * M_PI);
}

PhiObjective eval_exp_phi(double s, const GaussianChannel& q, const std::vector<double>& p) {
    const int nt = static_cast<int>(q.constellation.size());
    const double alpha = 1.0 / (1.0 - s);
    const auto& [u, w] = gauss_hermite(kDefaultQuadratureNodes);
    const double scale = std::sqrt(2.0) * q.sigma;
    PhiObjective out{0.0, std::vector<double>(nt, 0.0)};
    // Importance quadrature against the uniform constellation mixture.
    for (int j = 0; j < nt; ++j) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double z = q.constellation[j] + scale * u[i];
            double mix = 0.0, inner = 0.0;
            std::vector<double> a(nt, 0.0);
            for (int t = 0; t < nt; ++t) {
                const double qd = std::exp(log_normal_pdf(z, q.constellation[t], q.sigma));
                mix += qd / nt;
                a[t] = std::pow(qd, alpha);
                inner += p[t] * a[t];
            }
            if (inner <= 0.0 || mix <= 0.0) continue;
            const double common = w[i] / (std::sqrt(M_PI) * nt * mix);
            const double pow_term = std::pow(inner, 1.0 - s);
            out.value += common * pow_term;
            const double dfac = (1.0 - s) * pow_term / inner;
            for (int t = 0; t < nt; ++t) out.grad[t] += common * dfac * a[t];
        }
    }
    return out;
}

PhiObjective eval_exp_phi(double s, const Channel& q, const std::vector<double>& p) {
    return std::visit([&](const auto& ch) { return eval_exp_phi(s, ch, p); }, q);
}

} // namespace

double log_bound_objective(double s, double ln_L, double ln_M, int n, double xi_value) {
    return s * (ln_M - ln_L) + n * xi_value - std::log(s);
}

MaximizerResult max_phi_over_P(double s, const Channel& q,
                               std::optional<Distribution> warm_start) {
    if (!(s > 0.0 && s <= 0.5))
        throw std::invalid_argument("max_phi_over_P requires 0 < s <= 1/2");
    const int nt = channel_input_size(q);
    std::vector<double> p = warm_start ? warm_start->probs
                                       : std::vector<double>(nt, 1.0 / nt);
    if (static_cast<int>(p.size()) != nt)
        throw std::invalid_argument("warm start dimension mismatch");

    PhiObjective cur = eval_exp_phi(s, q, p);
    double step = 1.0;
    int iters = 0;
    double residual = 0.0;
    for (; iters < kAscentMaxIters; ++iters) {
        // KKT residual on the simplex: gradient equal on the support,
        // no ascent direction from the boundary.
        const double lambda = std::inner_product(p.begin(), p.end(), cur.grad.begin(), 0.0);
        residual = 0.0;
        for (int t = 0; t < nt; ++t) {
            const double dev = cur.grad[t] - lambda;
            residual = std::max(residual, p[t] > 1e-15 ? std::abs(dev) : std::max(0.0, dev));
        }
        if (residual <= kAscentTol) break;

        bool moved = false;
        while (step > 1e-18) {
            std::vector<double> cand(p);
            for (int t = 0; t < nt; ++t) cand[t] += step * cur.grad[t];
            cand = project_simplex(std::move(cand));
            const PhiObjective next = eval_exp_phi(s, q, cand);
            if (next.value >= cur.value) {
                p = std::move(cand);
                cur = next;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break; // step underflow: at numerical optimum
    }
    MaximizerResult res;
    res.P_opt = Distribution{std::move(p)};
    res.value = std::log(cur.value);
    res.iterations = iters;
    res.residual = residual;
    res.converged = residual <= kAscentTol || res.residual < 1e-7;
    return res;
}

namespace {

// xi(s): single-letter exponent for the bound, memoized because the phi
// branch re-runs the inner maximization.
struct XiEvaluator {
    ExponentKind kind;
    const Channel& q;
    std::optional<Distribution> p;
    std::optional<Distribution> warm;

    double operator()(double s) {
        if (kind == ExponentKind::psi) {
            const Distribution& dist = p ? *p : uniform();
            return psi(s, dist, q);
        }
        if (p) return phi(s, q, *p);
        MaximizerResult r = max_phi_over_P(s, q, warm);
        warm = r.P_opt;
        return r.value;
    }

    const Distribution& uniform() {
        if (!cached_uniform) cached_uniform = uniform_distribution(channel_input_size(q));
        return *cached_uniform;
    }

    std::optional<Distribution> cached_uniform;
};

} // namespace

RatePlan min_log_bound_over_s(ExponentKind kind, const Channel& q,
                              std::optional<Distribution> p,
                              double ln_L, double ln_M, int n) {
    if (ln_M > ln_L + 1e-12)
        throw std::invalid_argument("ln_M must not exceed ln_L");
    if (n < 1) throw std::invalid_argument("block length must be positive");
    const double s_hi = s_max_for(kind);
    XiEvaluator xi{kind, q, std::move(p), std::nullopt, std::nullopt};
    auto f = [&](double s) { return log_bound_objective(s, ln_L, ln_M, n, xi(s)); };
    auto deriv = [&](double s) {
        const double h = std::min({1e-6 * std::max(s, 1e-3), s * 0.5, (s_hi - s) * 0.5 + 1e-12});
        if (s + h > s_hi) return (f(s) - f(s - h)) / h;
        if (s - h <= 0.0) return (f(s + h) - f(s)) / h;
        return (f(s + h) - f(s - h)) / (2.0 * h);
    };

    double lo = 1e-9, hi = s_hi;
    double s_star;
    if (deriv(s_hi) <= 0.0) {
        s_star = s_hi; // minimum at the right endpoint
    } else if (deriv(lo) >= 0.0) {
        s_star = lo;
    } else {
        for (int i = 0; i < kBisectionMaxSteps && hi - lo > kBisectionTol; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (deriv(mid) < 0.0) lo = mid; else hi = mid;
        }
        s_star = 0.5 * (lo + hi);
    }

    // Convexity spot check around the solution; fall back to grid search if
    // second differences go negative beyond tolerance.
    {
        const double d = std::max(1e-4, kBisectionTol * 10);
        std::vector<double> pts;
        for (int i = -2; i <= 2; ++i) {
            const double sv = std::clamp(s_star + i * d, 1e-6, s_hi);
            pts.push_back(sv);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        bool convex = true;
        if (pts.size() >= 3) {
            std::vector<double> fv;
            for (double sv : pts) fv.push_back(f(sv));
            for (std::size_t i = 1; i + 1 < pts.size(); ++i)
                if (fv[i + 1] - 2.0 * fv[i] + fv[i - 1] < -1e-9) convex = false;
        }
        if (!convex) {
            std::cerr << "min_log_bound_over_s: non-convexity detected, "
                         "falling back to grid search\n";
            double best_s = s_hi, best_f = f(s_hi);
            const int grid = 10000;
            for (int i = 1; i <= grid; ++i) {
                const double sv = s_hi * i / grid;
                const double fv = f(sv);
                if (fv < best_f - 1e-15) { best_f = fv; best_s = sv; }
            }
            s_star = best_s;
        }
    }

    RatePlan plan;
    plan.n = n;
    plan.ln_L = ln_L;
    plan.ln_M = ln_M;
    plan.s_star = s_star;
    plan.exponent = xi(s_star);
    plan.log_bound = log_bound_objective(s_star, ln_L, ln_M, n, plan.exponent);
    plan.construction = kind == ExponentKind::psi ? "randomized" : "deterministic";
    if (!std::isfinite(plan.log_bound))
        throw std::runtime_error("leakage bound objective is non-finite");
    return plan;
}

namespace {

double capacity_objective(const std::vector<double>& p, const Channel& qy, const Channel& qz) {
    Distribution d{p};
    return mutual_information(d, qy) - mutual_information(d, qz);
}

// Local pattern search along simplex-preserving directions e_i - e_j.
std::vector<double> refine_simplex_point(std::vector<double> p, double init_step,
                                         const std::function<double(const std::vector<double>&)>& obj) {
    const int nt = static_cast<int>(p.size());
    double best = obj(p);
    for (double step = init_step; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < nt; ++i) {
                for (int j = 0; j < nt; ++j) {
                    if (i == j || p[j] < step) continue;
                    std::vector<double> cand(p);
                    cand[i] += step;
                    cand[j] -= step;
                    const double v = obj(cand);
                    if (v > best + 1e-15) {
                        best = v;
                        p = std::move(cand);
                        improved = true;
                    }
                }
            }
        }
    }
    return p;
}

} // namespace

double secrecy_capacity(const Channel& qy, const Channel& qz) {
    const int nt = channel_input_size(qy);
    if (channel_input_size(qz) != nt)
        throw std::invalid_argument("channels must share the input alphabet");
    if (nt > 3)
        throw std::invalid_argument("secrecy_capacity supports input alphabets up to size 3");
    auto obj = [&](const std::vector<double>& p) { return capacity_objective(p, qy, qz); };
    std::vector<double> best_p(nt, 1.0 / nt);
    double best = obj(best_p);
    const int grid = 1000;
    if (nt == 2) {
        for (int i = 0; i <= grid; ++i) {
            const std::vector<double> p{static_cast<double>(i) / grid,
                                        1.0 - static_cast<double>(i) / grid};
            const double v = obj(p);
            if (v > best) { best = v; best_p = p; }
        }
    } else if (nt == 3) {
        for (int i = 0; i <= grid; ++i)
            for (int j = 0; j <= grid - i; ++j) {
                const std::vector<double> p{static_cast<double>(i) / grid,
                                            static_cast<double>(j) / grid,
                                            static_cast<double>(grid - i - j) / grid};
                const double v = obj(p);
                if (v > best) { best = v; best_p = p; }
            }
    }
    best_p = refine_simplex_point(std::move(best_p), 1.0 / grid, obj);
    return std::max(0.0, obj(best_p));
}

RatePlan plan_rates(const std::string& construction, const Channel& qz_t,
                    double rate_l, int n, double epsilon) {
    if (construction != "randomized" && construction != "deterministic")
        throw std::invalid_argument("construction must be randomized or deterministic");
    if (!(rate_l * n > 0.0)) throw std::invalid_argument("ln_L must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const ExponentKind kind =
        construction == "randomized" ? ExponentKind::psi : ExponentKind::phi;
    const double ln_L = rate_l * n;

    // Candidate ln_M values: the 0.01-nat grid plus ln_L itself.
    std::vector<double> candidates;
    for (double m = 0.01; m < ln_L - 1e-12; m += 0.01) candidates.push_back(m);
    candidates.push_back(ln_L);

    auto eval = [&](double ln_M) {
        std::optional<Distribution> p;
        if (kind == ExponentKind::psi)
            p = uniform_distribution(channel_input_size(qz_t));
        return min_log_bound_over_s(kind, qz_t, p, ln_L, ln_M, n);
    };
    auto is_feasible = [&](double ln_M) {
        return std::exp(eval(ln_M).log_bound) <= epsilon;
    };

    // The bound is monotone in ln_M, so binary search for the largest
    // feasible candidate.
    if (!is_feasible(candidates.front())) {
        RatePlan plan;
        plan.n = n;
        plan.ln_L = ln_L;
        plan.ln_M = 0.0;
        plan.construction = construction;
        plan.feasible = false;
        return plan;
    }
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (is_feasible(candidates[hi])) {
        lo = hi;
    } else {
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (is_feasible(candidates[mid])) lo = mid; else hi = mid;
        }
    }
    RatePlan plan = eval(candidates[lo]);
    plan.construction = construction;
    plan.feasible = true;
    return plan;
}

} // namespace wtc

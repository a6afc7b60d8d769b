#include "wtc/infofunc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wtc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - m);
    return m + std::log(acc);
}

void check_dims(const Distribution& p, const DiscreteChannel& q) {
    if (p.size() != q.input_size())
        throw std::invalid_argument("distribution dimension does not match channel input");
}

void check_dims(const Distribution& p, const GaussianChannel& q) {
    if (p.size() != static_cast<int>(q.constellation.size()))
        throw std::invalid_argument("distribution dimension does not match constellation");
}

void check_psi_range(double s) {
    if (!(s > 0.0 && s <= 1.0))
        throw std::invalid_argument("psi requires 0 < s <= 1");
}

void check_phi_range(double s) {
    if (!(s > 0.0 && s <= 0.5))
        throw std::invalid_argument("phi requires 0 < s <= 1/2");
}

double log_normal_pdf(double z, double mu, double sigma) {
    const double d = (z - mu) / sigma;
    return -0.5 * d * d - std::log(sigma) - 0.5 * std::log(2.0 * M_PI);
}

// ln of uniform-weight mixture of the per-point output densities; strictly
// positive everywhere, used as the importance density for quadrature.
double log_mixture_pdf(double z, const GaussianChannel& q) {
    std::vector<double> terms;
    terms.reserve(q.constellation.size());
    for (double x : q.constellation)
        terms.push_back(log_normal_pdf(z, x, q.sigma));
    return logsumexp(terms) - std::log(static_cast<double>(q.constellation.size()));
}

// integral of exp(log_f(z)) dz over the real line, via Gauss-Hermite around
// each constellation point against the uniform mixture density.
template <class LogF>
double integrate_mixture(LogF&& log_f, const GaussianChannel& q, int nodes) {
    const auto& [u, w] = gauss_hermite(nodes);
    const double scale = std::sqrt(2.0) * q.sigma;
    const int npts = static_cast<int>(q.constellation.size());
    double total = 0.0;
    for (int j = 0; j < npts; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double z = q.constellation[j] + scale * u[i];
            const double lf = log_f(z);
            if (lf == kNegInf) continue;
            acc += w[i] * std::exp(lf - log_mixture_pdf(z, q));
        }
        total += acc / std::sqrt(M_PI);
    }
    return total / npts;
}

} // namespace

void validate_distribution(const Distribution& p) {
    if (p.probs.empty())
        throw std::invalid_argument("distribution must be nonempty");
    double sum = 0.0;
    for (double x : p.probs) {
        if (!(x >= 0.0))
            throw std::invalid_argument("distribution entry negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution does not sum to 1");
}

Distribution uniform_distribution(int n) {
    if (n < 1) throw std::invalid_argument("alphabet size must be positive");
    return Distribution{std::vector<double>(n, 1.0 / n)};
}

double s_max_for(ExponentKind kind) {
    return kind == ExponentKind::psi ? 1.0 : 0.5;
}

ExponentValue make_exponent_value(double s, double value, ExponentKind kind) {
    if (kind == ExponentKind::psi) check_psi_range(s);
    else check_phi_range(s);
    return ExponentValue{s, value, kind};
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_hermite(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
    // from the first components of its eigenvectors.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = std::sqrt(i / 2.0);
        jac(i, i - 1) = b;
        jac(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> nodes(n), weights(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = std::sqrt(M_PI) * v0 * v0;
    }
    return cache.emplace(n, std::make_pair(std::move(nodes), std::move(weights))).first->second;
}

double mutual_information(const Distribution& p, const DiscreteChannel& q) {
    validate_distribution(p);
    check_dims(p, q);
    const int nt = q.input_size(), nz = q.output_size();
    std::vector<double> pz(nz, 0.0);
    for (int t = 0; t < nt; ++t)
        for (int z = 0; z < nz; ++z) pz[z] += p.probs[t] * q.matrix[t][z];
    double mi = 0.0;
    for (int t = 0; t < nt; ++t) {
        if (p.probs[t] == 0.0) continue;
        for (int z = 0; z < nz; ++z) {
            const double qz = q.matrix[t][z];
            if (qz == 0.0) continue;
            mi += p.probs[t] * qz * std::log(qz / pz[z]);
        }
    }
    return mi;
}

double mutual_information(const Distribution& p, const GaussianChannel& q, int nodes) {
    validate_distribution(p);
    check_dims(p, q);
    const auto& [u, w] = gauss_hermite(nodes);
    const double scale = std::sqrt(2.0) * q.sigma;
    const int nt = static_cast<int>(q.constellation.size());
    auto log_pz = [&](double z) {
        std::vector<double> terms;
        for (int t = 0; t < nt; ++t) {
            if (p.probs[t] == 0.0) continue;
            terms.push_back(std::log(p.probs[t]) + log_normal_pdf(z, q.constellation[t], q.sigma));
        }
        return logsumexp(terms);
    };
    double mi = 0.0;
    for (int t = 0; t < nt; ++t) {
        if (p.probs[t] == 0.0) continue;
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double z = q.constellation[t] + scale * u[i];
            acc += w[i] * (log_normal_pdf(z, q.constellation[t], q.sigma) - log_pz(z));
        }
        mi += p.probs[t] * acc / std::sqrt(M_PI);
    }
    return mi;
}

double mutual_information(const Distribution& p, const Channel& q) {
    return std::visit([&](const auto& ch) { return mutual_information(p, ch); }, q);
}

double psi(double s, const Distribution& p, const DiscreteChannel& q) {
    check_psi_range(s);
    validate_distribution(p);
    check_dims(p, q);
    const int nt = q.input_size(), nz = q.output_size();
    std::vector<double> log_terms;
    log_terms.reserve(nz);
    for (int z = 0; z < nz; ++z) {
        std::vector<double> num;
        double pz = 0.0;
        for (int t = 0; t < nt; ++t) {
            const double pt = p.probs[t], qz = q.matrix[t][z];
            if (pt == 0.0 || qz == 0.0) continue;
            pz += pt * qz;
            num.push_back(std::log(pt) + (1.0 + s) * std::log(qz));
        }
        if (num.empty()) continue; // numerator 0: term contributes 0
        if (pz == 0.0)
            throw std::logic_error("psi: positive numerator with zero output marginal");
        log_terms.push_back(logsumexp(num) - s * std::log(pz));
    }
    return logsumexp(log_terms);
}

double psi(double s, const Distribution& p, const GaussianChannel& q, int nodes) {
    check_psi_range(s);
    validate_distribution(p);
    check_dims(p, q);
    const int nt = static_cast<int>(q.constellation.size());
    auto log_integrand = [&](double z) {
        std::vector<double> num, marg;
        for (int t = 0; t < nt; ++t) {
            if (p.probs[t] == 0.0) continue;
            const double lq = log_normal_pdf(z, q.constellation[t], q.sigma);
            num.push_back(std::log(p.probs[t]) + (1.0 + s) * lq);
            marg.push_back(std::log(p.probs[t]) + lq);
        }
        return logsumexp(num) - s * logsumexp(marg);
    };
    return std::log(integrate_mixture(log_integrand, q, nodes));
}

double psi(double s, const Distribution& p, const Channel& q) {
    return std::visit([&](const auto& ch) { return psi(s, p, ch); }, q);
}

double phi(double s, const DiscreteChannel& q, const Distribution& p) {
    check_phi_range(s);
    validate_distribution(p);
    check_dims(p, q);
    const int nt = q.input_size(), nz = q.output_size();
    const double alpha = 1.0 / (1.0 - s);
    std::vector<double> log_terms;
    log_terms.reserve(nz);
    for (int z = 0; z < nz; ++z) {
        std::vector<double> inner;
        for (int t = 0; t < nt; ++t) {
            const double pt = p.probs[t], qz = q.matrix[t][z];
            if (pt == 0.0 || qz == 0.0) continue;
            inner.push_back(std::log(pt) + alpha * std::log(qz));
        }
        if (inner.empty()) continue;
        log_terms.push_back((1.0 - s) * logsumexp(inner));
    }
    return logsumexp(log_terms);
}

double phi(double s, const GaussianChannel& q, const Distribution& p, int nodes) {
    check_phi_range(s);
    validate_distribution(p);
    check_dims(p, q);
    const int nt = static_cast<int>(q.constellation.size());
    const double alpha = 1.0 / (1.0 - s);
    auto log_integrand = [&](double z) {
        std::vector<double> inner;
        for (int t = 0; t < nt; ++t) {
            if (p.probs[t] == 0.0) continue;
            inner.push_back(std::log(p.probs[t]) +
                            alpha * log_normal_pdf(z, q.constellation[t], q.sigma));
        }
        return (1.0 - s) * logsumexp(inner);
    };
    return std::log(integrate_mixture(log_integrand, q, nodes));
}

double phi(double s, const Channel& q, const Distribution& p) {
    return std::visit([&](const auto& ch) { return phi(s, ch, p); }, q);
}

double phi_bar(double s, const Channel& q) {
    return phi(s, q, uniform_distribution(channel_input_size(q)));
}

double gallager_e0(double rho, const Distribution& p, const DiscreteChannel& q) {
    validate_distribution(p);
    check_dims(p, q);
    const int nt = q.input_size(), nz = q.output_size();
    const double alpha = 1.0 / (1.0 + rho);
    std::vector<double> log_terms;
    for (int z = 0; z < nz; ++z) {
        std::vector<double> inner;
        for (int t = 0; t < nt; ++t) {
            const double pt = p.probs[t], qz = q.matrix[t][z];
            if (pt == 0.0 || qz == 0.0) continue;
            inner.push_back(std::log(pt) + alpha * std::log(qz));
        }
        if (inner.empty()) continue;
        log_terms.push_back((1.0 + rho) * logsumexp(inner));
    }
    return -logsumexp(log_terms);
}

double psi_rate_limit(const Distribution& p, const Channel& q) {
    const double s0 = 1e-4;
    const double f1 = psi(s0, p, q) / s0;
    const double f2 = psi(s0 / 2.0, p, q) / (s0 / 2.0);
    return 2.0 * f2 - f1;
}

double phi_rate_limit(const Channel& q, const Distribution& p) {
    const double s0 = 1e-4;
    const double f1 = phi(s0, q, p) / s0;
    const double f2 = phi(s0 / 2.0, q, p) / (s0 / 2.0);
    return 2.0 * f2 - f1;
}

} // namespace wtc

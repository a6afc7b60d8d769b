#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "wtc/oracle.hpp"
#include "wtc/rng.hpp"
#include "wtc/specio.hpp"

namespace {

using wtc::Json;

struct SweepRange {
    int start = 0, stop = 0, step = 0;
    bool is_sweep = false;
};

SweepRange parse_n(const std::string& text) {
    SweepRange r;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.start = r.stop = std::stoi(text);
        r.step = 1;
        return r;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("--n sweep must be START:STOP:STEP");
    r.start = std::stoi(text.substr(0, c1));
    r.stop = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
    r.step = std::stoi(text.substr(c2 + 1));
    r.is_sweep = true;
    if (r.step <= 0 || r.stop < r.start)
        throw std::invalid_argument("invalid --n sweep range");
    return r;
}

std::uint64_t parse_seed(const std::string& hex) {
    return std::stoull(hex, nullptr, 16);
}

wtc::Channel fold_prefix(const wtc::Channel& ch, const std::optional<wtc::PrefixChannel>& prefix) {
    if (!prefix) return ch;
    const auto* d = std::get_if<wtc::DiscreteChannel>(&ch);
    if (!d) throw std::invalid_argument("a prefix channel requires a discrete channel");
    return wtc::concatenate_prefix(*prefix, *d);
}

int cmd_bound(const std::string& channel_file, const std::string& prefix_file,
              const std::string& construction, double ln_l, double ln_m,
              double rate_l, double rate_m, const std::string& n_text,
              const std::string& out_fmt, bool bits, double epsilon, double confidence) {
    wtc::Channel ch = wtc::parse_channel_spec(wtc::load_json_file(channel_file));
    std::optional<wtc::PrefixChannel> prefix;
    if (!prefix_file.empty())
        prefix = wtc::parse_prefix_spec(wtc::load_json_file(prefix_file));
    ch = fold_prefix(ch, prefix);

    const wtc::ExponentKind kind = construction == "randomized"
                                       ? wtc::ExponentKind::psi
                                       : wtc::ExponentKind::phi;
    auto solve = [&](int n) {
        const double ll = rate_l > 0.0 ? rate_l * n : ln_l;
        const double lm = rate_l > 0.0 ? rate_m * n : ln_m;
        std::optional<wtc::Distribution> p;
        if (kind == wtc::ExponentKind::psi)
            p = wtc::uniform_distribution(wtc::channel_input_size(ch));
        return wtc::min_log_bound_over_s(kind, ch, p, ll, lm, n);
    };

    const SweepRange range = parse_n(n_text);
    if (range.is_sweep && out_fmt == "csv") {
        std::cout.precision(17);
        std::cout << "n,s_star,exponent_nats,log_bound_nats,feasible\n";
        for (int n = range.start; n <= range.stop; n += range.step) {
            const wtc::RatePlan plan = solve(n);
            std::cout << n << "," << plan.s_star << "," << plan.exponent << ","
                      << plan.log_bound << "," << (plan.log_bound <= std::log(epsilon) ? 1 : 0)
                      << "\n";
        }
        return 0;
    }
    Json out = Json::array();
    for (int n = range.start; n <= range.stop; n += range.step) {
        const wtc::RatePlan plan = solve(n);
        wtc::LeakageReport rep;
        rep.construction = construction;
        rep.n = n;
        rep.ln_L = plan.ln_L;
        rep.ln_M = plan.ln_M;
        rep.s_star = plan.s_star;
        rep.exponent = plan.exponent;
        rep.log_bound = plan.log_bound;
        rep.bound = std::exp(plan.log_bound);
        rep.epsilon = epsilon;
        rep.meets_epsilon = rep.bound <= epsilon;
        Json j = wtc::leakage_report_json(rep, bits);
        if (confidence > 0.0 && confidence < 1.0) {
            // Markov selection guarantee: all but a confidence fraction of
            // hash choices keep the leakage below bound / confidence.
            j["confidence"] = confidence;
            j["per_selection_bound_nats"] = rep.bound / confidence;
        }
        out.push_back(std::move(j));
    }
    std::cout << (out.size() == 1 ? out.front().dump(2) : out.dump(2)) << "\n";
    return 0;
}

int cmd_plan(const std::string& channel_file, const std::string& construction,
             double rate_l, int n, double epsilon, bool bits) {
    const wtc::Channel ch = wtc::parse_channel_spec(wtc::load_json_file(channel_file));
    const wtc::RatePlan plan = wtc::plan_rates(construction, ch, rate_l, n, epsilon);
    std::cout << wtc::rate_plan_json(plan, bits).dump(2) << "\n";
    return 0;
}

int cmd_optimize(const std::string& task, const std::string& channel_file,
                 const std::string& eve_file, double s) {
    if (task == "phimax") {
        const wtc::Channel ch = wtc::parse_channel_spec(wtc::load_json_file(channel_file));
        const wtc::MaximizerResult res = wtc::max_phi_over_P(s, ch);
        Json j;
        j["task"] = "phimax";
        j["s"] = s;
        j["P_opt"] = res.P_opt.probs;
        j["units"] = "nats";
        j["phi_value"] = res.value;
        j["iterations"] = res.iterations;
        j["residual"] = res.residual;
        j["converged"] = res.converged;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (task == "capacity") {
        const wtc::Channel bob = wtc::parse_channel_spec(wtc::load_json_file(channel_file));
        const wtc::Channel eve = wtc::parse_channel_spec(wtc::load_json_file(eve_file));
        Json j;
        j["task"] = "capacity";
        j["units"] = "nats";
        j["secrecy_capacity"] = wtc::secrecy_capacity(bob, eve);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown optimize task: " + task);
}

wtc::WiretapCode build_wiretap(const std::string& code_file, const std::string& hash_file,
                               const std::string& construction, std::uint64_t seed) {
    wtc::LinearCode code = wtc::parse_code_spec(wtc::load_json_file(code_file));
    const wtc::ToeplitzHash hash =
        wtc::parse_hash_spec(wtc::load_json_file(hash_file), seed);
    auto g_rng = wtc::make_rng(wtc::derive_seed(seed, "coset"));
    return wtc::make_wiretap_code(construction, wtc::make_coset_family(std::move(code)), hash,
                                  wtc::identity_prefix(2), g_rng);
}

int cmd_construct(const std::string& code_file, const std::string& hash_file,
                  const std::string& construction, std::uint64_t seed) {
    const wtc::WiretapCode wt = build_wiretap(code_file, hash_file, construction, seed);
    Json j;
    j["construction"] = wt.construction;
    j["n"] = wt.block_length();
    j["code_k"] = wt.family.code.k;
    j["hash"] = Json{{"kind", "toeplitz"},
                     {"l", wt.hash.l_dim},
                     {"k", wt.hash.k_dim},
                     {"seed_hex", wtc::bits_to_hex(wt.hash.diag_bits,
                                                   std::max(0, wt.hash.l_dim - 1))}};
    j["coset_g"] = wt.fixed_g;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const std::string& code_file, const std::string& hash_file,
                 const std::string& bob_file, const std::string& eve_file,
                 const std::string& construction, long long trials, std::uint64_t seed,
                 int threads, int n_scale, double epsilon, bool bits) {
    const wtc::WiretapCode wt = build_wiretap(code_file, hash_file, construction, seed);
    const wtc::Channel bob = wtc::parse_channel_spec(wtc::load_json_file(bob_file));
    const wtc::SimulationReport rep = wtc::simulate(wt, bob, trials, seed, threads);
    Json j = wtc::simulation_report_json(rep, wt, bits);
    if (!eve_file.empty()) {
        const wtc::Channel eve = wtc::parse_channel_spec(wtc::load_json_file(eve_file));
        const int scale = n_scale > 0 ? n_scale : wt.block_length();
        const wtc::LeakageReport leak = wtc::leakage_report(wt, eve, scale, epsilon);
        j["leakage"] = wtc::leakage_report_json(leak, bits);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite) {
    if (suite != "small" && suite != "full")
        throw std::invalid_argument("suite must be small or full");
    const auto verdicts = wtc::standard_verification_suite(suite == "full");
    Json out = Json::array();
    bool all_pass = true;
    for (const auto& v : verdicts) {
        out.push_back(Json{{"name", v.name},
                           {"pass", v.pass},
                           {"units", "nats"},
                           {"exact_leakage", v.lhs},
                           {"bound_min", v.rhs_min},
                           {"slack", v.slack},
                           {"s_at_min", v.s_at_min}});
        all_pass = all_pass && v.pass;
    }
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiretap code construction, leakage bounds and verification"};
    app.require_subcommand(1);

    std::string channel_file, prefix_file, code_file, hash_file, eve_file, bob_file;
    std::string construction = "randomized";
    std::string n_text = "1";
    std::string out_fmt = "json";
    std::string seed_hex = "1";
    std::string task = "phimax";
    std::string suite = "small";
    double ln_l = 0.0, ln_m = 0.0, rate_l = 0.0, rate_m = 0.0;
    double epsilon = 1e-6, s_value = 0.25, confidence = 0.0;
    long long trials = 10000;
    int n_single = 1, threads = 1, n_scale = 0;
    bool bits = false;

    auto* bound = app.add_subcommand("bound", "Leakage bound for given rates");
    bound->add_option("--channel", channel_file, "eavesdropper channel spec JSON")->required();
    bound->add_option("--prefix", prefix_file, "prefix channel spec JSON");
    bound->add_option("--construction", construction)
        ->check(CLI::IsMember({"randomized", "deterministic"}));
    bound->add_option("--ln-L", ln_l, "total ln|L| in nats");
    bound->add_option("--ln-M", ln_m, "total ln|M| in nats");
    bound->add_option("--rate-L", rate_l, "ln|L|/n in nats per symbol (sweep mode)");
    bound->add_option("--rate-M", rate_m, "ln|M|/n in nats per symbol (sweep mode)");
    bound->add_option("--n", n_text, "block length, INT or START:STOP:STEP");
    bound->add_option("--epsilon", epsilon, "leakage target in nats");
    bound->add_option("--confidence", confidence, "selection fraction eps1");
    bound->add_option("--out", out_fmt)->check(CLI::IsMember({"json", "csv"}));
    bound->add_flag("--bits", bits, "display information quantities in bits");

    auto* plan = app.add_subcommand("plan", "Largest achievable secret rate");
    plan->add_option("--channel", channel_file)->required();
    plan->add_option("--construction", construction)
        ->check(CLI::IsMember({"randomized", "deterministic"}));
    plan->add_option("--rate-L", rate_l, "ln|L|/n in nats per symbol")->required();
    plan->add_option("--n", n_single)->required();
    plan->add_option("--epsilon", epsilon)->required();
    plan->add_flag("--bits", bits);

    auto* optimize = app.add_subcommand("optimize", "Input-distribution optimization");
    optimize->add_option("--task", task)->check(CLI::IsMember({"phimax", "capacity"}));
    optimize->add_option("--channel", channel_file)->required();
    optimize->add_option("--eve", eve_file, "eavesdropper channel (capacity task)");
    optimize->add_option("--s", s_value);

    auto* construct = app.add_subcommand("construct", "Assemble a wiretap code");
    construct->add_option("--code", code_file)->required();
    construct->add_option("--hash", hash_file)->required();
    construct->add_option("--construction", construction)
        ->check(CLI::IsMember({"randomized", "deterministic"}));
    construct->add_option("--seed", seed_hex, "master seed, hex");

    auto* simulate = app.add_subcommand("simulate", "Coupled Monte Carlo simulation");
    simulate->add_option("--code", code_file)->required();
    simulate->add_option("--hash", hash_file)->required();
    simulate->add_option("--bob", bob_file, "Bob channel spec JSON")->required();
    simulate->add_option("--eve", eve_file, "optional eavesdropper spec for leakage report");
    simulate->add_option("--construction", construction)
        ->check(CLI::IsMember({"randomized", "deterministic"}));
    simulate->add_option("--trials", trials);
    simulate->add_option("--seed", seed_hex, "master seed, hex");
    simulate->add_option("--threads", threads);
    simulate->add_option("--n-scale", n_scale, "exponent scale for the leakage report");
    simulate->add_option("--epsilon", epsilon);
    simulate->add_flag("--bits", bits);

    auto* verify = app.add_subcommand("verify", "Brute-force bound verification");
    verify->add_option("suite", suite)->check(CLI::IsMember({"small", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed())
            return cmd_bound(channel_file, prefix_file, construction, ln_l, ln_m, rate_l,
                             rate_m, n_text, out_fmt, bits, epsilon, confidence);
        if (plan->parsed())
            return cmd_plan(channel_file, construction, rate_l, n_single, epsilon, bits);
        if (optimize->parsed())
            return cmd_optimize(task, channel_file, eve_file, s_value);
        if (construct->parsed())
            return cmd_construct(code_file, hash_file, construction, parse_seed(seed_hex));
        if (simulate->parsed())
            return cmd_simulate(code_file, hash_file, bob_file, eve_file, construction, trials,
                                parse_seed(seed_hex), threads, n_scale, epsilon, bits);
        if (verify->parsed())
            return cmd_verify(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

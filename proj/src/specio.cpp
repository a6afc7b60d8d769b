#include "wtc/specio.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "wtc/rng.hpp"

namespace wtc {

namespace {

Matrix parse_matrix(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix must be a nonempty array of rows");
    Matrix m;
    for (const auto& row : j) {
        if (!row.is_array())
            throw std::invalid_argument("matrix row must be an array");
        m.push_back(row.get<std::vector<double>>());
    }
    return m;
}

double maybe_bits(double nats, bool bits) {
    return bits ? nats / std::log(2.0) : nats;
}

const char* unit_name(bool bits) { return bits ? "bits" : "nats"; }

} // namespace

Channel parse_channel_spec(const Json& spec) {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "dmc") return make_dmc(parse_matrix(spec.at("matrix")));
    if (type == "bsc") return make_bsc(spec.at("p").get<double>());
    if (type == "bec") return make_bec(spec.at("e").get<double>());
    if (type == "awgn")
        return make_awgn(spec.at("constellation").get<std::vector<double>>(),
                         spec.at("sigma").get<double>());
    throw std::invalid_argument("unknown channel type: " + type);
}

PrefixChannel parse_prefix_spec(const Json& spec) {
    if (spec.at("type").get<std::string>() != "prefix")
        throw std::invalid_argument("prefix spec must have type \"prefix\"");
    Matrix m = parse_matrix(spec.at("matrix"));
    validate_stochastic(m);
    return PrefixChannel{std::move(m)};
}

LinearCode parse_code_spec(const Json& spec) {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "hamming74") return hamming74();
    if (type == "random") {
        const int n = spec.at("n").get<int>();
        const int k = spec.at("k").get<int>();
        const std::uint64_t seed =
            std::stoull(spec.at("seed_hex").get<std::string>(), nullptr, 16);
        auto rng = make_rng(seed);
        return random_linear_code(n, k, rng);
    }
    if (type == "explicit") {
        const int n = spec.at("n").get<int>();
        std::vector<BitWord> rows;
        for (const auto& h : spec.at("generator_rows_hex"))
            rows.push_back(hex_to_bits(h.get<std::string>(), n));
        return make_linear_code(n, static_cast<int>(rows.size()), std::move(rows));
    }
    throw std::invalid_argument("unknown code type: " + type);
}

ToeplitzHash parse_hash_spec(const Json& spec, std::uint64_t master_seed) {
    if (spec.at("kind").get<std::string>() != "toeplitz")
        throw std::invalid_argument("hash spec must have kind \"toeplitz\"");
    const int l = spec.at("l").get<int>();
    const int k = spec.at("k").get<int>();
    if (spec.contains("seed_hex"))
        return make_toeplitz(l, k, hex_to_bits(spec.at("seed_hex").get<std::string>(),
                                               std::max(0, l - 1)));
    auto rng = make_rng(derive_seed(master_seed, "hash"));
    return random_toeplitz(l, k, rng);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    Json j;
    in >> j;
    return j;
}

Json leakage_report_json(const LeakageReport& rep, bool bits) {
    Json j;
    j["construction"] = rep.construction;
    j["n"] = rep.n;
    j["units"] = unit_name(bits);
    j["ln_L"] = maybe_bits(rep.ln_L, bits);
    j["ln_M"] = maybe_bits(rep.ln_M, bits);
    j["s_star"] = rep.s_star;
    j["exponent"] = maybe_bits(rep.exponent, bits);
    j["log_bound_nats"] = rep.log_bound;
    j["bound_nats"] = rep.bound;
    j["epsilon"] = rep.epsilon;
    j["meets_epsilon"] = rep.meets_epsilon;
    return j;
}

Json simulation_report_json(const SimulationReport& rep, const WiretapCode& wt, bool bits) {
    Json j;
    j["construction"] = wt.construction;
    j["n"] = wt.block_length();
    j["units"] = unit_name(bits);
    j["ln_L"] = maybe_bits(wt.hash.l_dim * std::log(2.0), bits);
    j["ln_M"] = maybe_bits(wt.hash.k_dim * std::log(2.0), bits);
    j["seeds"] = Json{{"hash_diag_hex", bits_to_hex(wt.hash.diag_bits,
                                                    std::max(0, wt.hash.l_dim - 1))},
                      {"coset_g", wt.fixed_g},
                      {"noise", rep.master_seed}};
    j["trials"] = rep.trials;
    j["errors"] = Json{{"wiretap", rep.wiretap_errors},
                       {"channel", rep.channel_code_errors}};
    j["ci95"] = Json{{"wiretap", Json::array({rep.wiretap_ci_lo, rep.wiretap_ci_hi})},
                     {"channel", Json::array({rep.channel_ci_lo, rep.channel_ci_hi})}};
    return j;
}

Json rate_plan_json(const RatePlan& plan, bool bits) {
    Json j;
    j["construction"] = plan.construction;
    j["feasible"] = plan.feasible;
    j["n"] = plan.n;
    j["units"] = unit_name(bits);
    j["ln_L"] = maybe_bits(plan.ln_L, bits);
    j["ln_M"] = maybe_bits(plan.ln_M, bits);
    if (plan.feasible) {
        j["s_star"] = plan.s_star;
        j["exponent"] = maybe_bits(plan.exponent, bits);
        j["log_bound_nats"] = plan.log_bound;
        j["bound_nats"] = std::exp(plan.log_bound);
    }
    return j;
}

} // namespace wtc

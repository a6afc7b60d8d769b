#pragma once

#include <string>

#include <json.hpp>

#include "wtc/channels.hpp"
#include "wtc/codes.hpp"
#include "wtc/hashing.hpp"
#include "wtc/wiretap.hpp"

namespace wtc {

using Json = nlohmann::ordered_json;

// Channel spec: {"type":"dmc","matrix":[[..]]} | {"type":"bsc","p":..} |
// {"type":"bec","e":..} | {"type":"awgn","constellation":[..],"sigma":..}
Channel parse_channel_spec(const Json& spec);

// {"type":"prefix","matrix":[[..]]}
PrefixChannel parse_prefix_spec(const Json& spec);

// {"type":"hamming74"} | {"type":"random","n":..,"k":..,"seed_hex":".."} |
// {"type":"explicit","n":..,"generator_rows_hex":[..]}
LinearCode parse_code_spec(const Json& spec);

// {"kind":"toeplitz","l":..,"k":..,"seed_hex":".."}; seed omitted means
// "draw from the run's master seed".
ToeplitzHash parse_hash_spec(const Json& spec, std::uint64_t master_seed);

Json load_json_file(const std::string& path);

Json leakage_report_json(const LeakageReport& rep, bool bits);
Json simulation_report_json(const SimulationReport& rep, const WiretapCode& wt, bool bits);
Json rate_plan_json(const RatePlan& plan, bool bits);

} // namespace wtc

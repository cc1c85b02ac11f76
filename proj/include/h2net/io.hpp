#pragma once

// JSON network files, gas-constant files and run reports.

#include <optional>
#include <string>

#include <json.hpp>

#include "h2net/errors.hpp"
#include "h2net/network.hpp"
#include "h2net/solve.hpp"

namespace h2net {

/// Malformed file or schema violation; the message names the line or the
/// JSON field path.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Reads {sigma2_h2, sigma2_ng, diameter, friction} (all optional) on top of
/// `base`.
GasConstants parse_gas(const nlohmann::json& j, const GasConstants& base = {}, const std::string& path = "gas");
GasConstants load_gas_file(const std::string& file);

/// `defaults` seeds the gas block before the file's own `gas` entries apply.
Network parse_network(const std::string& text, const GasConstants& defaults = {});
Network load_network(const std::string& file, const GasConstants& defaults = {});

/// Writes every field, including per-edge diameter and friction, so that
/// parse_network(dump_network(n)) == n.
nlohmann::json network_to_json(const Network& network);
std::string dump_network(const Network& network);

nlohmann::json report_to_json(const Network& network, const RunReport& report);

}  // namespace h2net

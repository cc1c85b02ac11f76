#include "h2net/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace h2net {

namespace {

using nlohmann::json;

std::string read_file(const std::string& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + file + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError("JSON syntax error at line " + std::to_string(line) + ": " + e.what());
    }
}

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
            allowed.end()) {
            throw ParseError(path + "." + key + ": unknown field");
        }
    }
}

double get_number(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key)) {
        throw ParseError(path + "." + key + ": missing field");
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        throw ParseError(path + "." + key + ": expected a number");
    }
    return v.get<double>();
}

std::optional<double> get_optional_number(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key)) {
        return std::nullopt;
    }
    return get_number(j, key, path);
}

std::string get_string(const json& j, const char* key, const std::string& path)
{
    if (!j.contains(key)) {
        throw ParseError(path + "." + key + ": missing field");
    }
    const json& v = j.at(key);
    if (!v.is_string()) {
        throw ParseError(path + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

json finite_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

}  // namespace

GasConstants parse_gas(const json& j, const GasConstants& base, const std::string& path)
{
    require_object(j, path, {"sigma2_h2", "sigma2_ng", "diameter", "friction"});
    GasConstants gas = base;
    gas.sigma2_h2 = get_optional_number(j, "sigma2_h2", path).value_or(gas.sigma2_h2);
    gas.sigma2_ng = get_optional_number(j, "sigma2_ng", path).value_or(gas.sigma2_ng);
    gas.diameter = get_optional_number(j, "diameter", path).value_or(gas.diameter);
    gas.friction = get_optional_number(j, "friction", path).value_or(gas.friction);
    return gas;
}

GasConstants load_gas_file(const std::string& file)
{
    return parse_gas(parse_text(read_file(file)), {}, file);
}

Network parse_network(const std::string& text, const GasConstants& defaults)
{
    const json j = parse_text(text);
    require_object(j, "$", {"gas", "nodes", "edges"});
    const GasConstants gas = j.contains("gas") ? parse_gas(j.at("gas"), defaults, "gas") : defaults;

    if (!j.contains("nodes") || !j.at("nodes").is_array()) {
        throw ParseError("nodes: expected an array");
    }
    if (!j.contains("edges") || !j.at("edges").is_array()) {
        throw ParseError("edges: expected an array");
    }

    std::vector<Node> nodes;
    for (std::size_t i = 0; i < j.at("nodes").size(); ++i) {
        const json& n = j.at("nodes")[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        require_object(n, path, {"id", "load", "zeta", "pressure_anchor"});
        nodes.push_back({get_string(n, "id", path), get_number(n, "load", path), get_optional_number(n, "zeta", path),
                         get_optional_number(n, "pressure_anchor", path)});
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < j.at("edges").size(); ++i) {
        const json& e = j.at("edges")[i];
        const std::string path = "edges[" + std::to_string(i) + "]";
        require_object(e, path, {"id", "foot", "head", "length", "diameter", "friction"});
        edges.push_back({get_string(e, "id", path), get_string(e, "foot", path), get_string(e, "head", path),
                         get_number(e, "length", path),
                         get_optional_number(e, "diameter", path).value_or(gas.diameter),
                         get_optional_number(e, "friction", path).value_or(gas.friction)});
    }
    try {
        return Network(std::move(nodes), std::move(edges), gas);
    } catch (const InvalidNetworkError& e) {
        throw ParseError(e.what());
    }
}

Network load_network(const std::string& file, const GasConstants& defaults)
{
    try {
        return parse_network(read_file(file), defaults);
    } catch (const ParseError& e) {
        throw ParseError(file + ": " + e.what());
    }
}

json network_to_json(const Network& network)
{
    const GasConstants& g = network.gas();
    json out;
    out["gas"] = {{"sigma2_h2", g.sigma2_h2}, {"sigma2_ng", g.sigma2_ng}, {"diameter", g.diameter},
                  {"friction", g.friction}};
    out["nodes"] = json::array();
    for (const Node& n : network.nodes()) {
        json jn = {{"id", n.id}, {"load", n.load}};
        if (n.zeta) {
            jn["zeta"] = *n.zeta;
        }
        if (n.pressure_anchor) {
            jn["pressure_anchor"] = *n.pressure_anchor;
        }
        out["nodes"].push_back(std::move(jn));
    }
    out["edges"] = json::array();
    for (const Edge& e : network.edges()) {
        out["edges"].push_back({{"id", e.id},
                                {"foot", e.foot},
                                {"head", e.head},
                                {"length", e.length},
                                {"diameter", e.diameter},
                                {"friction", e.friction}});
    }
    return out;
}

std::string dump_network(const Network& network)
{
    return network_to_json(network).dump(2) + "\n";
}

json report_to_json(const Network& network, const RunReport& report)
{
    const Solution& s = report.solution;
    json out;
    out["solver_used"] = to_string(report.solver_used);
    out["residual_max"] = report.residual_max;
    out["iterations"] = report.iterations;
    out["warnings"] = report.warnings;
    if (report.cut_edge) {
        out["cut_edge"] = *report.cut_edge;
        out["lambda_star"] = *report.lambda_star;
        out["mu_star"] = *report.mu_star;
    }
    json edges = json::array();
    for (Index e = 0; e < network.edge_count(); ++e) {
        edges.push_back({{"id", network.edge(e).id}, {"q", s.q[e]}, {"eta", s.eta_edge[e]}});
    }
    json nodes = json::array();
    for (Index v = 0; v < network.node_count(); ++v) {
        nodes.push_back({{"id", network.node(v).id},
                         {"eta", s.eta_node[v]},
                         {"p", finite_or_null(std::sqrt(s.p2[v]))},
                         {"p2", s.p2[v]}});
    }
    out["solution"] = {{"edges", edges}, {"nodes", nodes}};
    return out;
}

}  // namespace h2net

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "bloxorz/engine.hpp"
#include "bloxorz/ncl.hpp"
#include "bloxorz/sat.hpp"

namespace blox {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line = 0, std::string field = {})
        : std::runtime_error(format(msg, line, field)), line(line), field(std::move(field)) {}
    int line;
    std::string field;

private:
    static std::string format(const std::string& msg, int line, const std::string& field) {
        std::string s;
        if (line > 0) s += "line " + std::to_string(line) + ": ";
        if (!field.empty()) s += field + ": ";
        return s + msg;
    }
};

inline constexpr int kFormatVersion = 1;

// All parsers throw ParseError. Semantic checks are left to validate_level /
// validate_graph.
Level parse_level(const std::string& text);
std::string serialize_level(const Level& level);

struct GraphDocument {
    ncl::Graph graph;
    ncl::Configuration initial;
};
GraphDocument parse_graph(const std::string& text);
std::string serialize_graph(const ncl::Graph& g, const ncl::Configuration& c);

CnfFormula parse_dimacs(const std::string& text);
std::string serialize_dimacs(const CnfFormula& f);

std::string render_ascii(const Level& level, const std::optional<GameState>& state = std::nullopt);

std::string read_file(const std::string& path);  // throws std::runtime_error
void write_file(const std::string& path, const std::string& text);

}  // namespace blox

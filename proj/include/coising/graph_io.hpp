#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coising/errors.hpp"
#include "coising/graph.hpp"

namespace coising {

namespace detail {

inline Graph make_graph_or_parse_error(int n, std::vector<Edge> edges, const std::string& where) {
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw parse_error(where + ": " + e.what());
    }
}

inline int inferred_n(const std::vector<Edge>& edges) {
    int n = 1;
    for (auto [i, j] : edges) n = std::max({n, i, j});
    return n;
}

inline Graph parse_graph_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("graph json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
        throw parse_error("graph json: expected object with an \"edges\" array");
    std::vector<Edge> edges;
    for (const auto& item : doc["edges"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
            throw parse_error("graph json: each edge must be a pair of integers");
        edges.emplace_back(item[0].get<int>(), item[1].get<int>());
    }
    const int n = doc.contains("n") ? doc["n"].get<int>() : inferred_n(edges);
    return make_graph_or_parse_error(n, std::move(edges), "graph json");
}

/// "[(1, 8), (1, 10), ...]" — the appendix-listing mirror format.
inline Graph parse_graph_tuples(const std::string& text) {
    std::vector<Edge> edges;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (std::isspace((unsigned char)text[pos]) || text[pos] == ',')) ++pos;
    };
    auto read_int = [&](const char* what) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit((unsigned char)text[pos]) || text[pos] == '-')) ++pos;
        if (pos == start) throw parse_error(std::string("graph list: expected ") + what);
        return std::stoi(text.substr(start, pos - start));
    };
    skip_ws();
    if (pos >= text.size() || text[pos] != '[') throw parse_error("graph list: expected '['");
    ++pos;
    for (;;) {
        skip_ws();
        if (pos >= text.size()) throw parse_error("graph list: unterminated list");
        if (text[pos] == ']') break;
        if (text[pos] != '(') throw parse_error("graph list: expected '(' in pair");
        ++pos;
        int i = read_int("first vertex");
        int j = read_int("second vertex");
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') throw parse_error("graph list: expected ')' closing pair");
        ++pos;
        edges.emplace_back(i, j);
    }
    const int n = inferred_n(edges);
    return make_graph_or_parse_error(n, std::move(edges), "graph list");
}

inline Graph parse_graph_lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        if (first == "n") {
            if (n != -1) throw parse_error("graph line " + std::to_string(lineno) + ": duplicate n header");
            if (!(fields >> n) || n < 1)
                throw parse_error("graph line " + std::to_string(lineno) + ": malformed vertex count");
            continue;
        }
        int i = 0, j = 0;
        try {
            i = std::stoi(first);
        } catch (const std::exception&) {
            throw parse_error("graph line " + std::to_string(lineno) + ": malformed edge");
        }
        if (!(fields >> j)) throw parse_error("graph line " + std::to_string(lineno) + ": malformed edge");
        std::string extra;
        if (fields >> extra) throw parse_error("graph line " + std::to_string(lineno) + ": trailing tokens");
        edges.emplace_back(i, j);
    }
    if (edges.empty() && n == -1) throw parse_error("graph: empty document");
    if (n == -1) n = inferred_n(edges);
    return make_graph_or_parse_error(n, std::move(edges), "graph");
}

} // namespace detail

/// Parses any of the accepted graph documents: "n <count>" + "i j" lines,
/// JSON {"n":int,"edges":[[i,j],...]}, or a "[(i, j), ...]" tuple list.
inline Graph parse_graph(const std::string& text) {
    for (char c : text) {
        if (std::isspace((unsigned char)c)) continue;
        if (c == '{') return detail::parse_graph_json(text);
        if (c == '[') return detail::parse_graph_tuples(text);
        break;
    }
    return detail::parse_graph_lines(text);
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.n() << "\n";
    for (auto [i, j] : g.edges()) out << i << " " << j << "\n";
    return out.str();
}

inline nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json doc;
    doc["n"] = g.n();
    auto edges = nlohmann::ordered_json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i, j});
    doc["edges"] = std::move(edges);
    return doc;
}

} // namespace coising

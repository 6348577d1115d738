#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coising/chimera.hpp"
#include "coising/errors.hpp"
#include "coising/experiment.hpp"
#include "coising/version.hpp"

namespace coising {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

inline std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

/// Round-trippable, locale-independent double formatting for CSV output.
inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string curves_to_csv(const std::vector<ObservableCurve>& curves) {
    std::string out = "graph,observable,s_p,mean,ci_low,ci_high,embedding_id\n";
    for (const auto& curve : curves) {
        const std::string embedding =
            curve.embedding_id.has_value() ? std::to_string(*curve.embedding_id) : "";
        for (const auto& pt : curve.points) {
            out += curve.graph_name + "," + curve.observable_name + "," + fmt_double(pt.s) + "," +
                   fmt_double(pt.mean) + "," + fmt_double(pt.ci_low) + "," + fmt_double(pt.ci_high) + "," +
                   embedding + "\n";
        }
    }
    return out;
}

inline nlohmann::ordered_json verdict_to_json(const Verdict& v) {
    nlohmann::ordered_json doc;
    doc["pair"] = {v.pair.first, v.pair.second};
    doc["distinguishable"] = v.distinguishable;
    doc["best_sp"] = v.best_sp;
    doc["best_observable"] = v.best_observable;
    doc["separation"] = v.separation;
    return doc;
}

inline nlohmann::ordered_json embedding_to_json(const std::string& graph_name, int chimera_m,
                                                const EmbeddingMap& e) {
    nlohmann::ordered_json doc;
    doc["graph"] = graph_name;
    doc["chimera_m"] = chimera_m;
    nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
    for (const auto& [vertex, qubit] : e.assignment) assignment[std::to_string(vertex)] = qubit;
    doc["assignment"] = std::move(assignment);
    return doc;
}

inline nlohmann::ordered_json observables_to_json(const ObservableSet& obs) {
    nlohmann::ordered_json doc;
    doc["energy"] = obs.energy;
    doc["energy_stderr"] = obs.energy_err;
    doc["magnetization"] = obs.magnetization;
    doc["magnetization_stderr"] = obs.magnetization_err;
    doc["q2"] = obs.q2;
    doc["q2_stderr"] = obs.q2_err;
    doc["omega2"] = obs.omega2;
    doc["omega2_stderr"] = obs.omega2_err;
    return doc;
}

/// Reproducibility sidecar written next to every output artifact.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_digests; // label -> fnv1a64
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json doc;
        doc["command"] = command;
        doc["config"] = config;
        doc["seed"] = seed;
        doc["version"] = kVersion;
        nlohmann::ordered_json digests = nlohmann::ordered_json::object();
        for (const auto& [label, digest] : input_digests) digests[label] = digest;
        doc["input_digests"] = std::move(digests);
        doc["outputs"] = outputs;
        doc["wall_seconds"] = wall_seconds;
        return doc;
    }
};

} // namespace coising

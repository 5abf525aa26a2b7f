#pragma once

#include "lindyn/config.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace lindyn {

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

// Provenance block embedded in every verdict artifact: equal manifests give
// byte-identical verdict outputs.
struct RunManifest {
    std::string command_line;
    std::string version;
    std::map<std::string, std::string> input_hashes;  // path -> content hash
    unsigned long long seed = 0;
    long long window = 0;
    long long horizon = 0;
    std::vector<std::string> eps_ladder;
    std::map<std::string, std::string> tolerances;

    static RunManifest from_config(const Config& cfg, std::string command_line);
    void add_input_file(const std::string& path);
    nlohmann::ordered_json to_json() const;
};

// Atomic file write (temp + rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace lindyn

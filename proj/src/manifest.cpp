#include "lindyn/manifest.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lindyn {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& data) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

Config Config::load() {
    Config cfg;
    const char* path = std::getenv("LINDYN_CONFIG");
    if (!path) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("LINDYN_CONFIG points at an unreadable file: ") + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("window")) cfg.window = j["window"].get<long long>();
    if (j.contains("horizon")) cfg.horizon = j["horizon"].get<long long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    if (j.contains("eps_ladder_lo")) cfg.eps_ladder_lo = j["eps_ladder_lo"].get<int>();
    if (j.contains("eps_ladder_hi")) cfg.eps_ladder_hi = j["eps_ladder_hi"].get<int>();
    return cfg;
}

RunManifest RunManifest::from_config(const Config& cfg, std::string command_line) {
    RunManifest m;
    m.command_line = std::move(command_line);
    m.version = cfg.version;
    m.seed = cfg.seed;
    m.window = cfg.window;
    m.horizon = cfg.horizon;
    for (const auto& e : cfg.eps_ladder()) m.eps_ladder.push_back(to_string(e));
    return m;
}

void RunManifest::add_input_file(const std::string& path) {
    input_hashes[path] = fnv1a64_hex(read_file(path));
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command_line"] = command_line;
    j["version"] = version;
    j["input_hashes"] = input_hashes;
    j["seed"] = seed;
    j["window"] = window;
    j["horizon"] = horizon;
    j["eps_ladder"] = eps_ladder;
    j["tolerances"] = tolerances;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

}  // namespace lindyn

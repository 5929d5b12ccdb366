#include "fingersense/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fingersense/errors.hpp"

namespace fingersense {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("config key '" + key + "': malformed number '" + value + "'");
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << file.rdbuf();
    return from_string(buf.str(), path.string());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    cfg.raw_ = text;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        cfg.values_[key] = value;
        cfg.consumed_[key] = false;
    }
    return cfg;
}

const std::string* KeyValueConfig::find(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    consumed_[key] = true;
    return &it->second;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string KeyValueConfig::get_string(const std::string& key) {
    const std::string* v = find(key);
    if (!v) throw ConfigError(origin_ + ": missing required config key '" + key + "'");
    return *v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key) {
    return parse_double(key, get_string(key));
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
    const std::string* v = find(key);
    return v ? parse_double(key, *v) : fallback;
}

long long KeyValueConfig::get_int(const std::string& key) {
    const std::string v = get_string(key);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config key '" + key + "': malformed integer '" + v + "'");
    return out;
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) {
    const std::string* v = find(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size())
        throw ConfigError("config key '" + key + "': malformed unsigned integer '" + *v + "'");
    return out;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
    const std::string* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::vector<std::string> KeyValueConfig::get_string_list(const std::string& key) {
    const std::string v = get_string(key);
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (begin <= v.size()) {
        const std::size_t comma = v.find(',', begin);
        const std::size_t end = comma == std::string::npos ? v.size() : comma;
        out.push_back(trim(std::string_view(v).substr(begin, end - begin)));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : get_string_list(key)) out.push_back(parse_double(key, item));
    return out;
}

void KeyValueConfig::reject_unknown() const {
    std::string unknown;
    for (const auto& [key, used] : consumed_)
        if (!used) unknown += (unknown.empty() ? "" : ", ") + key;
    if (!unknown.empty())
        throw ConfigError(origin_ + ": unknown config keys: " + unknown);
}

}  // namespace fingersense

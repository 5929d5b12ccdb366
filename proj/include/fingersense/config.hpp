#pragma once

// Flat key = value configuration files: one assignment per line, '#'
// comments, no nesting. Every key must be consumed by the command that
// loads the file; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fingersense {

class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::filesystem::path& path);
    static KeyValueConfig from_string(const std::string& text,
                                      const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    long long get_int(const std::string& key);
    long long get_int(const std::string& key, long long fallback);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    bool get_bool(const std::string& key, bool fallback);

    /// Comma-separated list of doubles, e.g. "0.2,0.3,0.5".
    std::vector<double> get_double_list(const std::string& key);
    std::vector<std::string> get_string_list(const std::string& key);

    /// Raise ConfigError if any key was never consumed by a getter.
    void reject_unknown() const;

    /// Raw file bytes, for the provenance hash.
    const std::string& raw_text() const { return raw_; }

private:
    std::string origin_;
    std::string raw_;
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;

    const std::string* find(const std::string& key) const;
};

}  // namespace fingersense

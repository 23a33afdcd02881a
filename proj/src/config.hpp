#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace discrimlab {

// Flat key = value configuration. One assignment per line, '#' starts a
// comment, later assignments win (the CLI appends flag overrides after the
// config-file text). Typed getters throw std::invalid_argument with the key
// name on missing or malformed values.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::optional<double> maybe_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // comma-separated list of exactly `count` numbers
    std::vector<double> get_doubles(const std::string& key, std::size_t count) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace discrimlab

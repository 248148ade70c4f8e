#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asearch {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Flat sectioned key-value configuration. Section and key names are
// lower-case identifiers; '#' and ';' start comments.
class RawConfig {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static RawConfig parse_file(const std::string& path);
    static RawConfig parse_string(const std::string& text);

    void set(const std::string& section, const std::string& key, const std::string& value);
    bool has(const std::string& section, const std::string& key) const;
    std::optional<Entry> get(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, Entry>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

// Typed accessor that records every key it reads; finish() fails on keys the
// schema never consumed, so unknown keys are hard errors with line numbers.
class ConfigReader {
public:
    explicit ConfigReader(const RawConfig& raw) : raw_(raw) {}

    double number(const std::string& section, const std::string& key);
    double number_or(const std::string& section, const std::string& key, double fallback);
    long integer_or(const std::string& section, const std::string& key, long fallback);
    bool flag_or(const std::string& section, const std::string& key, bool fallback);
    std::string text(const std::string& section, const std::string& key);
    std::string text_or(const std::string& section, const std::string& key,
                        const std::string& fallback);
    bool has(const std::string& section, const std::string& key) const {
        return raw_.has(section, key);
    }

    void finish() const;  // throws ConfigError on unconsumed keys

private:
    const RawConfig& raw_;
    mutable std::set<std::pair<std::string, std::string>> consumed_;
};

// Shortest round-trip decimal formatting and exact parsing.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace asearch

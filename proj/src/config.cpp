#include "asearch/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace asearch {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RawConfig RawConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

RawConfig RawConfig::parse_string(const std::string& text) {
    RawConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", lineno);
            cfg.sections_[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
        if (section.empty()) throw ConfigError("key outside any section", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        auto [it, inserted] = cfg.sections_[section].emplace(key, Entry{value, lineno});
        if (!inserted) throw ConfigError("duplicate key '" + key + "'", lineno);
    }
    return cfg;
}

void RawConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = Entry{value, 0};
}

bool RawConfig::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::optional<RawConfig::Entry> RawConfig::get(const std::string& section,
                                               const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

double ConfigReader::number(const std::string& section, const std::string& key) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    if (!e) throw ConfigError("missing required key [" + section + "] " + key);
    try {
        return parse_double(e->value);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + e->value + "'", e->line);
    }
}

double ConfigReader::number_or(const std::string& section, const std::string& key,
                               double fallback) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    if (!e) return fallback;
    try {
        return parse_double(e->value);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + e->value + "'", e->line);
    }
}

long ConfigReader::integer_or(const std::string& section, const std::string& key, long fallback) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    if (!e) return fallback;
    long out = 0;
    auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), out);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size())
        throw ConfigError("cannot parse integer '" + e->value + "'", e->line);
    return out;
}

bool ConfigReader::flag_or(const std::string& section, const std::string& key, bool fallback) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1") return true;
    if (e->value == "false" || e->value == "0") return false;
    throw ConfigError("cannot parse flag '" + e->value + "'", e->line);
}

std::string ConfigReader::text(const std::string& section, const std::string& key) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    if (!e) throw ConfigError("missing required key [" + section + "] " + key);
    return e->value;
}

std::string ConfigReader::text_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) {
    consumed_.insert({section, key});
    auto e = raw_.get(section, key);
    return e ? e->value : fallback;
}

void ConfigReader::finish() const {
    for (const auto& [section, keys] : raw_.sections())
        for (const auto& [key, entry] : keys)
            if (!consumed_.count({section, key}))
                throw ConfigError("unknown key [" + section + "] " + key, entry.line);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad float: " + s);
    return out;
}

}  // namespace asearch

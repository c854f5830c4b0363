#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace secsym::runner {

/// Config or usage problem; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

namespace toml {

/// Strict subset of TOML: [tables], key = value with string / bool / integer /
/// float / homogeneous (possibly multi-line) arrays, and # comments.
struct Value {
    std::variant<std::int64_t, double, bool, std::string, std::vector<Value>> v;
    int line = 0;

    bool is_array() const { return std::holds_alternative<std::vector<Value>>(v); }
    std::int64_t as_int() const;
    double as_float() const; // accepts integers
    bool as_bool() const;
    const std::string& as_string() const;
    const std::vector<Value>& as_array() const;
    std::vector<std::int64_t> as_int_array() const;
    std::vector<double> as_float_array() const;
};

class Table {
public:
    bool contains(const std::string& key) const { return entries_.count(key) > 0; }
    const Value& at(const std::string& key) const;
    const Value* find(const std::string& key) const;
    void insert(const std::string& key, Value value, int line);
    const std::map<std::string, Value>& entries() const { return entries_; }

    // typed lookups with defaults
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_float(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

private:
    std::map<std::string, Value> entries_;
};

struct Document {
    Table root;
    std::map<std::string, Table> sections;

    const Table& section(const std::string& name) const; // empty table when absent
    bool has_section(const std::string& name) const { return sections.count(name) > 0; }
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

} // namespace toml
} // namespace secsym::runner

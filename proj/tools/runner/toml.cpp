#include "toml.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace secsym::runner::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) { throw ConfigError(line, msg); }

std::string type_name(const Value& v) {
    switch (v.v.index()) {
        case 0: return "integer";
        case 1: return "float";
        case 2: return "boolean";
        case 3: return "string";
        default: return "array";
    }
}

} // namespace

std::int64_t Value::as_int() const {
    if (!std::holds_alternative<std::int64_t>(v))
        fail(line, "expected an integer, found " + type_name(*this));
    return std::get<std::int64_t>(v);
}

double Value::as_float() const {
    if (std::holds_alternative<std::int64_t>(v))
        return static_cast<double>(std::get<std::int64_t>(v));
    if (!std::holds_alternative<double>(v))
        fail(line, "expected a number, found " + type_name(*this));
    return std::get<double>(v);
}

bool Value::as_bool() const {
    if (!std::holds_alternative<bool>(v))
        fail(line, "expected a boolean, found " + type_name(*this));
    return std::get<bool>(v);
}

const std::string& Value::as_string() const {
    if (!std::holds_alternative<std::string>(v))
        fail(line, "expected a string, found " + type_name(*this));
    return std::get<std::string>(v);
}

const std::vector<Value>& Value::as_array() const {
    if (!is_array()) fail(line, "expected an array, found " + type_name(*this));
    return std::get<std::vector<Value>>(v);
}

std::vector<std::int64_t> Value::as_int_array() const {
    std::vector<std::int64_t> out;
    for (const auto& e : as_array()) out.push_back(e.as_int());
    return out;
}

std::vector<double> Value::as_float_array() const {
    std::vector<double> out;
    for (const auto& e : as_array()) out.push_back(e.as_float());
    return out;
}

const Value& Table::at(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

const Value* Table::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void Table::insert(const std::string& key, Value value, int line) {
    if (entries_.count(key)) fail(line, "duplicate key '" + key + "'");
    entries_.emplace(key, std::move(value));
}

std::int64_t Table::get_int(const std::string& key, std::int64_t fallback) const {
    const Value* v = find(key);
    return v ? v->as_int() : fallback;
}
double Table::get_float(const std::string& key, double fallback) const {
    const Value* v = find(key);
    return v ? v->as_float() : fallback;
}
bool Table::get_bool(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    return v ? v->as_bool() : fallback;
}
std::string Table::get_string(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    return v ? v->as_string() : fallback;
}

const Table& Document::section(const std::string& name) const {
    static const Table empty;
    const auto it = sections.find(name);
    return it == sections.end() ? empty : it->second;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }
    /// skip spaces/tabs and comments; newlines too when crossing_lines
    void skip(bool crossing_lines) {
        while (!done()) {
            const char c = peek();
            if (c == '#') {
                while (!done() && peek() != '\n') ++pos;
            } else if (c == '\n') {
                if (!crossing_lines) return;
                advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else {
                return;
            }
        }
    }
};

bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string parse_key(Cursor& cur) {
    std::string key;
    while (!cur.done() && key_char(cur.peek())) {
        key.push_back(cur.peek());
        cur.advance();
    }
    if (key.empty()) fail(cur.line, "expected a key");
    return key;
}

std::string parse_string(Cursor& cur) {
    const int start = cur.line;
    cur.advance(); // opening quote
    std::string out;
    while (true) {
        if (cur.done() || cur.peek() == '\n') fail(start, "unterminated string");
        const char c = cur.peek();
        cur.advance();
        if (c == '"') return out;
        if (c == '\\') {
            if (cur.done()) fail(start, "unterminated escape");
            const char e = cur.peek();
            cur.advance();
            switch (e) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                default: fail(start, std::string("unsupported escape '\\") + e + "'");
            }
        } else {
            out.push_back(c);
        }
    }
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
    Value out;
    out.line = cur.line;
    std::vector<Value> items;
    cur.advance(); // '['
    while (true) {
        cur.skip(true); // arrays may span lines
        if (cur.done()) fail(out.line, "unterminated array");
        if (cur.peek() == ']') {
            cur.advance();
            break;
        }
        items.push_back(parse_value(cur));
        cur.skip(true);
        if (cur.done()) fail(out.line, "unterminated array");
        if (cur.peek() == ',') {
            cur.advance();
        } else if (cur.peek() != ']') {
            fail(cur.line, "expected ',' or ']' in array");
        }
    }
    if (!items.empty()) {
        const bool numeric0 = items[0].v.index() <= 1;
        for (const auto& it : items) {
            const bool numeric = it.v.index() <= 1;
            if (numeric != numeric0 || (!numeric && it.v.index() != items[0].v.index()))
                fail(out.line, "arrays must be homogeneous");
        }
    }
    out.v = std::move(items);
    return out;
}

Value parse_scalar(Cursor& cur) {
    Value out;
    out.line = cur.line;
    std::string tok;
    while (!cur.done()) {
        const char c = cur.peek();
        if (c == '\n' || c == '#' || c == ',' || c == ']' || c == ' ' || c == '\t' || c == '\r')
            break;
        tok.push_back(c);
        cur.advance();
    }
    if (tok.empty()) fail(out.line, "expected a value");
    if (tok == "true") {
        out.v = true;
        return out;
    }
    if (tok == "false") {
        out.v = false;
        return out;
    }
    // integer?
    {
        std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
        bool all_digits = i < tok.size();
        for (; i < tok.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
                all_digits = false;
                break;
            }
        if (all_digits) {
            errno = 0;
            char* end = nullptr;
            const long long n = std::strtoll(tok.c_str(), &end, 10);
            if (errno != 0 || end != tok.c_str() + tok.size())
                fail(out.line, "integer out of range: '" + tok + "'");
            out.v = static_cast<std::int64_t>(n);
            return out;
        }
    }
    // float
    {
        char* end = nullptr;
        errno = 0;
        const double d = std::strtod(tok.c_str(), &end);
        if (errno == 0 && end == tok.c_str() + tok.size()) {
            out.v = d;
            return out;
        }
    }
    fail(out.line, "cannot parse value '" + tok + "'");
}

Value parse_value(Cursor& cur) {
    if (cur.peek() == '"') {
        Value out;
        out.line = cur.line;
        out.v = parse_string(cur);
        return out;
    }
    if (cur.peek() == '[') return parse_array(cur);
    return parse_scalar(cur);
}

} // namespace

Document parse(const std::string& text) {
    Document doc;
    Cursor cur{text};
    Table* current = &doc.root;

    while (true) {
        cur.skip(true);
        if (cur.done()) break;
        const int line = cur.line;
        if (cur.peek() == '[') {
            cur.advance();
            cur.skip(false);
            const std::string name = parse_key(cur);
            cur.skip(false);
            if (cur.done() || cur.peek() != ']') fail(line, "expected ']' after table name");
            cur.advance();
            cur.skip(false);
            if (!cur.done() && cur.peek() != '\n') fail(line, "unexpected text after table header");
            if (doc.sections.count(name)) fail(line, "duplicate table [" + name + "]");
            current = &doc.sections[name];
            continue;
        }
        const std::string key = parse_key(cur);
        cur.skip(false);
        if (cur.done() || cur.peek() != '=') fail(line, "expected '=' after key '" + key + "'");
        cur.advance();
        cur.skip(false);
        if (cur.done() || cur.peek() == '\n') fail(line, "missing value for key '" + key + "'");
        Value value = parse_value(cur);
        cur.skip(false);
        if (!cur.done() && cur.peek() != '\n')
            fail(line, "unexpected trailing text after value for '" + key + "'");
        current->insert(key, std::move(value), line);
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace secsym::runner::toml

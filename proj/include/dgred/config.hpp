#pragma once

#include "dgred/examples.hpp"
#include "dgred/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace dgred {

/// Parse error with the line and field that caused it.
struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& field, const std::string& what)
        : std::runtime_error("config error at line " + std::to_string(line) +
                             (field.empty() ? "" : " (field '" + field + "')") + ": " + what) {}
};

namespace cfg {

struct Value {
    enum class Kind { scalar, string, array } kind = Kind::scalar;
    Rational rat;
    std::string str;
    std::vector<Value> arr;
    int line = 0;
};

using Table = std::map<std::string, Value>;
using Document = std::map<std::string, Table>;  // section -> entries ("" is the root)

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string drop_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

inline Value parse_value(const std::string& text, std::size_t& pos, int line);

inline void skip_spaces(const std::string& text, std::size_t& pos) {
    while (pos < text.size() && (std::isspace((unsigned char)text[pos]) || text[pos] == '\n'))
        ++pos;
}

inline Value parse_value(const std::string& text, std::size_t& pos, int line) {
    skip_spaces(text, pos);
    if (pos >= text.size()) throw ConfigError(line, "", "missing value");
    Value v;
    v.line = line;
    char c = text[pos];
    if (c == '"') {
        ++pos;
        std::size_t end = text.find('"', pos);
        if (end == std::string::npos) throw ConfigError(line, "", "unterminated string");
        v.kind = Value::Kind::string;
        v.str = text.substr(pos, end - pos);
        pos = end + 1;
        return v;
    }
    if (c == '[') {
        ++pos;
        v.kind = Value::Kind::array;
        skip_spaces(text, pos);
        while (pos < text.size() && text[pos] != ']') {
            v.arr.push_back(parse_value(text, pos, line));
            skip_spaces(text, pos);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                skip_spaces(text, pos);
            }
        }
        if (pos >= text.size()) throw ConfigError(line, "", "unterminated array");
        ++pos;  // ']'
        return v;
    }
    // bare scalar token: a rational like -3, 5/7
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '-' ||
                                 text[pos] == '+' || text[pos] == '/' || text[pos] == '.' ||
                                 text[pos] == '_'))
        ++pos;
    std::string tok = text.substr(start, pos - start);
    if (tok.empty()) throw ConfigError(line, "", std::string("unexpected character '") + c + "'");
    try {
        v.rat = rational_from_string(tok);
    } catch (const std::invalid_argument&) {
        throw ConfigError(line, "", "cannot parse scalar '" + tok +
                                        "' (strings need double quotes, rationals look like -2/3)");
    }
    v.kind = Value::Kind::scalar;
    return v;
}

/// Line-oriented key/value format with [section] tables and multi-line
/// arrays (continuation until brackets balance).
inline Document parse_document(const std::string& text) {
    Document doc;
    doc[""];
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, "", "malformed section header");
            section = strip(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(lineno, "", "empty section name");
            doc[section];
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "", "expected 'key = value', got '" + line + "'");
        std::string key = strip(line.substr(0, eq));
        if (key.empty()) throw ConfigError(lineno, "", "empty key");
        std::string value = strip(line.substr(eq + 1));
        int start_line = lineno;
        auto depth = [](const std::string& s) {
            long d = 0;
            bool quoted = false;
            for (char ch : s) {
                if (ch == '"') quoted = !quoted;
                if (quoted) continue;
                if (ch == '[') ++d;
                if (ch == ']') --d;
            }
            return d;
        };
        long d = depth(value);
        while (d > 0 && std::getline(in, raw)) {
            ++lineno;
            std::string more = strip(drop_comment(raw));
            value += " " + more;
            d = depth(value);
        }
        if (d != 0) throw ConfigError(start_line, key, "unbalanced brackets in value");
        std::size_t pos = 0;
        Value v = parse_value(value, pos, start_line);
        skip_spaces(value, pos);
        if (pos != value.size())
            throw ConfigError(start_line, key, "trailing characters after value");
        if (!doc[section].emplace(key, std::move(v)).second)
            throw ConfigError(start_line, key, "duplicate key");
    }
    return doc;
}

}  // namespace cfg

namespace detail {

inline Rational as_rational(const cfg::Value& v, const std::string& field) {
    if (v.kind != cfg::Value::Kind::scalar)
        throw ConfigError(v.line, field, "expected a rational scalar");
    return v.rat;
}
inline std::size_t as_index(const cfg::Value& v, const std::string& field) {
    Rational r = as_rational(v, field);
    if (denominator(r) != 1 || r < 0)
        throw ConfigError(v.line, field, "expected a non-negative integer");
    return numerator(r).convert_to<std::size_t>();
}
inline std::string as_string(const cfg::Value& v, const std::string& field) {
    if (v.kind != cfg::Value::Kind::string)
        throw ConfigError(v.line, field, "expected a quoted string");
    return v.str;
}
inline const std::vector<cfg::Value>& as_array(const cfg::Value& v, const std::string& field) {
    if (v.kind != cfg::Value::Kind::array)
        throw ConfigError(v.line, field, "expected an array");
    return v.arr;
}

inline RatMat as_matrix(const cfg::Value& v, const std::string& field, std::size_t rows,
                        std::size_t cols) {
    const auto& outer = as_array(v, field);
    if (outer.size() != rows)
        throw ConfigError(v.line, field,
                          "expected " + std::to_string(rows) + " rows, got " +
                              std::to_string(outer.size()));
    RatMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = as_array(outer[r], field);
        if (row.size() != cols)
            throw ConfigError(outer[r].line, field,
                              "row " + std::to_string(r + 1) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_rational(row[c], field);
    }
    return m;
}

}  // namespace detail

/// Builds a Hamiltonian space plus its labeled points from configuration
/// text. Structural validation only; the mathematical identities are suite
/// checks.
inline ExampleSpace parse_space_config(const std::string& text, const std::string& fallback_name) {
    cfg::Document doc = cfg::parse_document(text);
    const cfg::Table& root = doc.at("");

    ExampleSpace ex;
    HamiltonianSpace& h = ex.space;

    auto root_field = [&](const char* f) -> const cfg::Value& {
        auto it = root.find(f);
        if (it == root.end()) throw ConfigError(0, f, "missing required field");
        return it->second;
    };

    h.name = root.count("name") ? detail::as_string(root.at("name"), "name") : fallback_name;
    std::size_t n = detail::as_index(root_field("n"), "n");
    h.z.n = n;

    for (const auto& v : detail::as_array(root_field("variables"), "variables"))
        h.z.variables.push_back(detail::as_string(v, "variables"));
    if (h.z.variables.size() != n)
        throw ConfigError(root_field("variables").line, "variables",
                          "expected " + std::to_string(n) + " names");

    {
        const cfg::Value& v = root_field("omega");
        const auto& rows = detail::as_array(v, "omega");
        if (rows.size() != n)
            throw ConfigError(v.line, "omega", "omega must be square (" + std::to_string(n) +
                                                   " rows expected, got " +
                                                   std::to_string(rows.size()) + ")");
        h.omega = detail::as_matrix(v, "omega", n, n);
    }

    std::size_t dim = 0;
    if (doc.count("lie")) {
        const cfg::Table& lie = doc.at("lie");
        auto lie_field = [&](const char* f) -> const cfg::Value& {
            auto it = lie.find(f);
            if (it == lie.end()) throw ConfigError(0, std::string("lie.") + f, "missing field");
            return it->second;
        };
        dim = detail::as_index(lie_field("dim"), "lie.dim");
        h.z.lie = LieAlgebra::abelian(dim);
        h.z.lie.tag = GroupTag::none;
        if (lie.count("group_tag")) {
            std::string tag = detail::as_string(lie.at("group_tag"), "lie.group_tag");
            if (tag == "orthogonal") h.z.lie.tag = GroupTag::orthogonal;
            else if (tag == "unitary-real-form") h.z.lie.tag = GroupTag::unitary_real_form;
            else if (tag == "abelian") h.z.lie.tag = GroupTag::abelian;
            else if (tag != "none")
                throw ConfigError(lie.at("group_tag").line, "lie.group_tag",
                                  "unknown tag '" + tag + "'");
        }
        if (lie.count("structure_constants")) {
            for (const auto& e :
                 detail::as_array(lie.at("structure_constants"), "lie.structure_constants")) {
                const auto& quad = detail::as_array(e, "lie.structure_constants");
                if (quad.size() != 4)
                    throw ConfigError(e.line, "lie.structure_constants",
                                      "each entry is (k, i, j, value)");
                std::size_t k = detail::as_index(quad[0], "lie.structure_constants");
                std::size_t i = detail::as_index(quad[1], "lie.structure_constants");
                std::size_t j = detail::as_index(quad[2], "lie.structure_constants");
                if (k < 1 || k > dim || i < 1 || i > dim || j < 1 || j > dim)
                    throw ConfigError(e.line, "lie.structure_constants",
                                      "index out of range (1-based)");
                h.z.lie.structure(k - 1, i - 1, j - 1) =
                    detail::as_rational(quad[3], "lie.structure_constants");
            }
        }
        if (lie.count("rep")) {
            const auto& mats = detail::as_array(lie.at("rep"), "lie.rep");
            if (mats.size() != dim)
                throw ConfigError(lie.at("rep").line, "lie.rep",
                                  "expected one matrix per generator");
            for (const auto& flat : mats) {
                const auto& vals = detail::as_array(flat, "lie.rep");
                if (vals.size() != n * n)
                    throw ConfigError(flat.line, "lie.rep",
                                      "row-major matrix needs " + std::to_string(n * n) +
                                          " entries, got " + std::to_string(vals.size()));
                RatMat a(n, n);
                for (std::size_t idx = 0; idx < n * n; ++idx)
                    a(idx / n, idx % n) = detail::as_rational(vals[idx], "lie.rep");
                h.z.lie.rep.push_back(std::move(a));
            }
        }
    } else {
        h.z.lie = LieAlgebra::abelian(0);
    }

    if (root.count("mu")) {
        for (const auto& v : detail::as_array(root.at("mu"), "mu")) {
            std::string s = detail::as_string(v, "mu");
            try {
                h.z.mu.push_back(parse_polynomial(s, h.z.variables));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(v.line, "mu", e.what());
            }
        }
    }
    if (h.z.mu.size() != dim)
        throw ConfigError(0, "mu",
                          "expected " + std::to_string(dim) + " moment components, got " +
                              std::to_string(h.z.mu.size()));

    if (doc.count("points")) {
        for (const auto& [label, v] : doc.at("points")) {
            LabeledPoint p;
            p.label = label;
            for (const auto& c : detail::as_array(v, "points." + label))
                p.coords.push_back(detail::as_rational(c, "points." + label));
            if (p.coords.size() != n)
                throw ConfigError(v.line, "points." + label,
                                  "expected " + std::to_string(n) + " coordinates");
            ex.points.push_back(std::move(p));
        }
    }
    return ex;
}

struct LoadedSpace {
    ExampleSpace example;
    std::string config_hash;
};

/// Resolves a builtin name or reads and parses a configuration file.
inline LoadedSpace load_space(const std::string& name_or_path) {
    auto names = builtin_example_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end())
        return {builtin_example(name_or_path), fnv1a_hex("builtin:" + name_or_path)};
    std::ifstream in(name_or_path);
    if (!in) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
        throw std::invalid_argument("cannot open '" + name_or_path +
                                    "' (not a file, and not one of the builtins: " + all + ")");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string stem = name_or_path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return {parse_space_config(text, stem), fnv1a_hex(text)};
}

}  // namespace dgred

#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dgred {

enum class CheckStatus { pass, fail, skipped };
enum class CheckKind { exact, numeric };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "skipped";
    }
}
inline std::string to_string(CheckKind k) {
    return k == CheckKind::exact ? "exact" : "numeric";
}

/// One verification row. Exact checks carry no tolerance or residual;
/// numeric checks carry both.
struct CheckRow {
    std::string check_id;
    CheckStatus status = CheckStatus::pass;
    CheckKind kind = CheckKind::exact;
    std::optional<double> residual;
    std::optional<double> tolerance;
    std::optional<std::string> witness;
    std::string identity;  // the identity being verified, as in docs/identities.md

    static CheckRow exact(std::string id, bool ok, std::string identity,
                          std::string witness = "") {
        CheckRow r;
        r.check_id = std::move(id);
        r.status = ok ? CheckStatus::pass : CheckStatus::fail;
        r.kind = CheckKind::exact;
        r.identity = std::move(identity);
        if (!ok && !witness.empty()) r.witness = std::move(witness);
        return r;
    }
    static CheckRow numeric(std::string id, double residual, double tol, std::string identity) {
        CheckRow r;
        r.check_id = std::move(id);
        r.kind = CheckKind::numeric;
        r.status = residual < tol ? CheckStatus::pass : CheckStatus::fail;
        r.residual = residual;
        r.tolerance = tol;
        r.identity = std::move(identity);
        return r;
    }
    static CheckRow skipped(std::string id, CheckKind kind, std::string reason,
                            std::string identity) {
        CheckRow r;
        r.check_id = std::move(id);
        r.kind = kind;
        r.status = CheckStatus::skipped;
        r.witness = std::move(reason);
        r.identity = std::move(identity);
        return r;
    }
};

/// Whole-run document. JSON serialization is byte-stable for fixed inputs
/// and seed, so wall time is reported only in the text rendering.
struct ReportDocument {
    std::string tool_version;
    std::string example;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double tolerance = 0.0;
    std::map<std::string, std::string> sign_conventions;
    std::vector<CheckRow> rows;
    double wall_seconds = 0.0;

    bool all_passed() const {
        for (const auto& r : rows)
            if (r.status == CheckStatus::fail) return false;
        return true;
    }
    std::size_t count(CheckStatus s) const {
        std::size_t n = 0;
        for (const auto& r : rows)
            if (r.status == s) ++n;
        return n;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["tool"] = "dgred";
        j["tool_version"] = tool_version;
        j["example"] = example;
        j["config_hash"] = config_hash;
        j["options"] = {{"seed", seed}, {"samples", samples}, {"tolerance", tolerance}};
        nlohmann::ordered_json conv;
        for (const auto& [k, v] : sign_conventions) conv[k] = v;
        j["sign_conventions"] = conv;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json c;
            c["check_id"] = r.check_id;
            c["status"] = to_string(r.status);
            c["kind"] = to_string(r.kind);
            if (r.residual) c["residual"] = *r.residual;
            if (r.tolerance) c["tolerance"] = *r.tolerance;
            if (r.witness) c["witness"] = *r.witness;
            c["identity"] = r.identity;
            checks.push_back(c);
        }
        j["checks"] = checks;
        j["summary"] = {{"pass", count(CheckStatus::pass)},
                        {"fail", count(CheckStatus::fail)},
                        {"skipped", count(CheckStatus::skipped)}};
        return j;
    }

    std::string to_text() const {
        std::string out;
        out += "example: " + example + "  (config " + config_hash + ")\n";
        out += "options: seed=" + std::to_string(seed) + " samples=" + std::to_string(samples) +
               " tol=" + format_double(tolerance) + "\n";
        for (const auto& r : rows) {
            std::string line = "  [" + to_string(r.status) + "] ";
            line += r.check_id;
            while (line.size() < 52) line += ' ';
            line += to_string(r.kind);
            if (r.residual) line += "  residual=" + format_double(*r.residual);
            if (r.witness && r.status != CheckStatus::pass) line += "  (" + *r.witness + ")";
            out += line + "\n";
        }
        out += "summary: " + std::to_string(count(CheckStatus::pass)) + " passed, " +
               std::to_string(count(CheckStatus::fail)) + " failed, " +
               std::to_string(count(CheckStatus::skipped)) + " skipped  [" +
               format_double(wall_seconds) + " s]\n";
        return out;
    }

  private:
    static std::string format_double(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        return buf;
    }
};

/// FNV-1a over raw bytes; used to pin the configuration a report belongs to.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

}  // namespace dgred

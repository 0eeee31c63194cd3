#pragma once

#include "covkit/covers.hpp"

#include "json.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace covkit {

using Json = nlohmann::ordered_json;

// One statement of a scenario: the section it appears in, the declared name
// (left of '=', empty for bare lines), and the words to the right.
struct Statement {
    std::string section;
    std::string name;
    std::vector<std::string> words;
    // Raw right-hand side, for bracket lists, forms and golden values.
    std::string rest;
    int line = 0;
    int column = 1;
};

struct Golden {
    std::string provenance;
    std::string check;
    Json value;
    int line = 0;
};

struct Assumption {
    std::string key;
    std::string target;
    int line = 0;
};

struct Scenario {
    std::string name;
    // Source text; the cache key is its hash.
    std::string text;
    std::vector<Statement> statements;
    std::vector<Golden> goldens;
    std::vector<Assumption> assumptions;
};

// Throws ParseError "line:column: message".
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
std::vector<std::string> builtin_scenarios();
// Throws ValidationError for unknown names.
Scenario builtin_scenario(const std::string& name);
const std::string& builtin_text(const std::string& name);

// The assumptions a scenario may acknowledge, with their statements.
const std::vector<std::pair<std::string, std::string>>& known_assumptions();

enum class Status { pass, fail, assumed, skipped };
std::string to_string(Status s);
Status parse_status(const std::string& s);

struct CheckRecord {
    std::string name;
    Status status = Status::skipped;
    Json computed;
    std::optional<Json> expected;
    std::string provenance;
    std::string detail;
    double elapsed_ms = 0;

    bool operator==(const CheckRecord& o) const;
};

struct DegreeLedger {
    std::string base;
    std::string top;
    long base_degree = 0;
    long factor = 0;
    long degree = 0;

    bool operator==(const DegreeLedger&) const = default;
};

struct VerificationReport {
    std::string scenario;
    std::vector<CheckRecord> checks;
    std::optional<DegreeLedger> ledger;
    // Diagnostics, left out of comparisons.
    std::vector<std::string> cache_hits;
    std::vector<std::string> warnings;
    std::vector<std::string> operations;

    bool pass() const;
    std::vector<std::string> assumed() const;
    // Checks carrying a golden value that never produced one.
    std::vector<std::string> missing() const;
    const CheckRecord* find(const std::string& name) const;

    bool operator==(const VerificationReport& o) const;
};

struct RunOptions {
    // Empty: no cache I/O.
    std::filesystem::path cache_dir;
    bool timings = false;
    std::function<void(const std::string&)> warn;
    std::function<void(const std::string&)> progress;
};

// Validates goldens and assumptions first (ValidationError), then runs every
// check in declaration order.
VerificationReport run_scenario(const Scenario& scenario, const RunOptions& options = {});
// Check names and value kinds the scenario produces, without computing.
std::vector<std::pair<std::string, std::string>> plan_scenario(const Scenario& scenario);
// Resolved objects: points, curves, centers, catalog and branch classes.
std::string describe_scenario(const Scenario& scenario, const RunOptions& options = {});

enum class Format { text, structured };
struct EmitOptions {
    bool timings = false;
    bool only_goldens = false;
};
std::string emit(const VerificationReport& report, Format format, const EmitOptions& options = {});
Json to_json(const VerificationReport& report, bool timings = false);
VerificationReport report_from_json(const Json& j);

std::uint64_t fnv1a(std::string_view data);

// Linear-system results keyed by scenario hash.  Entries map a condition
// key to canonical forms.
class SolutionCache {
public:
    SolutionCache() = default;
    SolutionCache(std::filesystem::path dir, const std::string& scenario_text,
                  std::function<void(const std::string&)> warn = {});

    bool enabled() const { return !dir_.empty(); }
    std::filesystem::path file() const;
    std::optional<std::vector<std::string>> lookup(const std::string& key) const;
    void store(const std::string& key, const std::vector<std::string>& forms);
    // Writes when something new was stored.
    void flush();

private:
    std::filesystem::path dir_;
    std::string hash_;
    Json entries_ = Json::object();
    bool dirty_ = false;
    std::function<void(const std::string&)> warn_;
};

} // namespace covkit

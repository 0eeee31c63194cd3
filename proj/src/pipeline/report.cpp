#include "covkit/errors.hpp"
#include "covkit/pipeline.hpp"
#include "covkit/trace.hpp"

#include <sstream>

namespace covkit {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::assumed:
        return "assumed";
    case Status::skipped:
        break;
    }
    return "skipped";
}

Status parse_status(const std::string& s)
{
    for (auto st : {Status::pass, Status::fail, Status::assumed, Status::skipped})
        if (to_string(st) == s)
            return st;
    throw ParseError("unknown status " + s);
}

bool CheckRecord::operator==(const CheckRecord& o) const
{
    return name == o.name && status == o.status && computed == o.computed && expected == o.expected &&
           provenance == o.provenance && detail == o.detail;
}

bool VerificationReport::pass() const
{
    for (const auto& c : checks)
        if (c.status == Status::fail)
            return false;
    return missing().empty();
}

std::vector<std::string> VerificationReport::assumed() const
{
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.status == Status::assumed)
            out.push_back(c.name);
    return out;
}

std::vector<std::string> VerificationReport::missing() const
{
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.expected && c.status == Status::skipped)
            out.push_back(c.name);
    return out;
}

const CheckRecord* VerificationReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

bool VerificationReport::operator==(const VerificationReport& o) const
{
    return scenario == o.scenario && checks == o.checks && ledger == o.ledger;
}

namespace {

Json string_list(const std::vector<std::string>& v)
{
    Json a = Json::array();
    for (const auto& s : v)
        a.push_back(s);
    return a;
}

std::vector<std::string> strings(const Json& j)
{
    std::vector<std::string> out;
    for (const auto& s : j)
        out.push_back(s.get<std::string>());
    return out;
}

} // namespace

Json to_json(const VerificationReport& r, bool timings)
{
    Json j = Json::object();
    j["scenario"] = r.scenario;
    j["verdict"] = r.pass() ? "pass" : "fail";
    Json counts = Json::object();
    counts["checks"] = r.checks.size();
    for (auto st : {Status::pass, Status::fail, Status::assumed, Status::skipped}) {
        std::size_t n = 0;
        for (const auto& c : r.checks)
            n += c.status == st;
        counts[to_string(st)] = n;
    }
    j["summary"] = counts;
    Json checks = Json::object();
    for (const auto& c : r.checks) {
        Json e = Json::object();
        e["status"] = to_string(c.status);
        e["computed"] = c.computed;
        if (c.expected)
            e["expected"] = *c.expected;
        if (!c.provenance.empty())
            e["provenance"] = c.provenance;
        if (!c.detail.empty())
            e["detail"] = c.detail;
        if (timings)
            e["elapsed_ms"] = c.elapsed_ms;
        checks[c.name] = e;
    }
    j["checks"] = checks;
    j["assumed"] = string_list(r.assumed());
    j["missing"] = string_list(r.missing());
    if (r.ledger) {
        Json l = Json::object();
        l["base"] = r.ledger->base;
        l["top"] = r.ledger->top;
        l["base_degree"] = r.ledger->base_degree;
        l["factor"] = r.ledger->factor;
        l["degree"] = r.ledger->degree;
        j["ledger"] = l;
    } else {
        j["ledger"] = nullptr;
    }
    if (timings) {
        Json d = Json::object();
        d["cache_hits"] = string_list(r.cache_hits);
        d["warnings"] = string_list(r.warnings);
        d["operations"] = string_list(r.operations);
        j["diagnostics"] = d;
    }
    return j;
}

VerificationReport report_from_json(const Json& j)
{
    VerificationReport r;
    try {
        r.scenario = j.at("scenario").get<std::string>();
        for (const auto& [name, e] : j.at("checks").items()) {
            CheckRecord c;
            c.name = name;
            c.status = parse_status(e.at("status").get<std::string>());
            c.computed = e.at("computed");
            if (e.contains("expected"))
                c.expected = e.at("expected");
            c.provenance = e.value("provenance", "");
            c.detail = e.value("detail", "");
            c.elapsed_ms = e.value("elapsed_ms", 0.0);
            r.checks.push_back(std::move(c));
        }
        if (const auto& l = j.at("ledger"); !l.is_null())
            r.ledger = DegreeLedger{l.at("base").get<std::string>(), l.at("top").get<std::string>(),
                                    l.at("base_degree").get<long>(), l.at("factor").get<long>(),
                                    l.at("degree").get<long>()};
        if (j.contains("diagnostics")) {
            const auto& d = j.at("diagnostics");
            r.cache_hits = strings(d.at("cache_hits"));
            r.warnings = strings(d.at("warnings"));
            r.operations = strings(d.at("operations"));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::string emit(const VerificationReport& r, Format format, const EmitOptions& options)
{
    note(Op::emit);
    if (format == Format::structured)
        return to_json(r, options.timings).dump(2) + "\n";
    std::ostringstream out;
    out << "scenario " << r.scenario << "\n";
    std::size_t counts[4] = {};
    for (const auto& c : r.checks) {
        ++counts[static_cast<int>(c.status)];
        if (options.only_goldens && !c.expected && c.status != Status::assumed)
            continue;
        std::string tag = to_string(c.status);
        for (auto& ch : tag)
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out << tag << std::string(9 - tag.size(), ' ') << c.name;
        if (!c.computed.is_null())
            out << " = " << c.computed.dump();
        if (c.expected && (c.status != Status::pass || c.computed.is_null()))
            out << "  expected " << c.expected->dump();
        if (!c.provenance.empty())
            out << "  [" << c.provenance << "]";
        if (!c.detail.empty())
            out << "  (" << c.detail << ")";
        if (options.timings)
            out << "  " << static_cast<long>(c.elapsed_ms) << " ms";
        out << "\n";
    }
    if (r.ledger)
        out << "degree ledger: canonical map of " << r.ledger->base << " has degree " << r.ledger->base_degree
            << "; of " << r.ledger->top << ", " << r.ledger->factor << " x " << r.ledger->base_degree << " = "
            << r.ledger->degree << "\n";
    for (const auto& m : r.missing())
        out << "missing required check " << m << "\n";
    if (options.timings) {
        for (const auto& h : r.cache_hits)
            out << "cache hit: " << h << "\n";
        for (const auto& w : r.warnings)
            out << "warning: " << w << "\n";
    }
    out << "verdict: " << (r.pass() ? "pass" : "fail") << " (" << r.checks.size() << " checks: " << counts[0]
        << " pass, " << counts[1] << " fail, " << counts[2] << " assumed, " << counts[3] << " skipped)\n";
    return out.str();
}

} // namespace covkit

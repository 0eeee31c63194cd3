#include "covkit/errors.hpp"
#include "covkit/pipeline.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace covkit {

namespace detail {
extern const char* const deg24_text;
}

namespace {

const std::set<std::string> sections = {"points",   "conditions", "curves",   "checks", "blowups", "catalog",
                                        "cover",    "handles",    "families", "audit",  "assume",  "expect"};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

[[noreturn]] void fail(int line, std::size_t column, const std::string& msg)
{
    throw ParseError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
}

} // namespace

Scenario parse_scenario(const std::string& text)
{
    Scenario sc;
    sc.text = text;
    std::istringstream in(text);
    std::string raw, section;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#')
            continue;
        std::size_t col = first + 1;
        if (raw[first] == '[') {
            auto close = raw.find(']', first);
            if (close == std::string::npos || !trim(raw.substr(close + 1)).empty())
                fail(number, col, "malformed section header");
            section = trim(raw.substr(first + 1, close - first - 1));
            if (!sections.count(section))
                fail(number, col + 1, "unknown section '" + section + "'");
            continue;
        }
        Statement st;
        st.section = section;
        st.line = number;
        st.column = static_cast<int>(col);
        auto eq = raw.find('=');
        std::string lhs = eq == std::string::npos ? raw : raw.substr(0, eq);
        if (eq != std::string::npos) {
            st.rest = trim(raw.substr(eq + 1));
            if (st.rest.empty())
                fail(number, eq + 2, "missing value after '='");
            st.words = split(st.rest);
        }
        auto left = split(lhs);
        if (section.empty()) {
            if (left.size() != 1 || left[0] != "name" || st.words.size() != 1)
                fail(number, col, "expected 'name = <word>' before the first section");
            sc.name = st.words[0];
            continue;
        }
        if (section == "expect") {
            if (eq == std::string::npos || left.size() != 2)
                fail(number, col, "expected '<provenance> <check> = <value>'");
            Golden g;
            g.provenance = left[0];
            g.check = left[1];
            g.line = number;
            if (g.provenance != "reference" && g.provenance != "derived")
                fail(number, col, "provenance must be 'reference' or 'derived'");
            try {
                g.value = Json::parse(st.rest);
            } catch (const nlohmann::json::parse_error& e) {
                fail(number, raw.find_first_not_of(" \t", eq + 1) + 1, "bad value: " + std::string(e.what()));
            }
            sc.goldens.push_back(std::move(g));
            continue;
        }
        if (section == "assume") {
            if (eq == std::string::npos || left.size() != 1 || st.words.size() != 1)
                fail(number, col, "expected '<assumption> = <target>'");
            sc.assumptions.push_back({left[0], st.words[0], number});
            continue;
        }
        if (eq == std::string::npos) {
            st.words = left;
        } else {
            if (left.size() != 1)
                fail(number, col, "expected a single name before '='");
            st.name = left[0];
        }
        sc.statements.push_back(std::move(st));
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read scenario " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    auto sc = parse_scenario(s.str());
    if (sc.name.empty())
        sc.name = path.stem().string();
    return sc;
}

std::vector<std::string> builtin_scenarios() { return {"deg24"}; }

const std::string& builtin_text(const std::string& name)
{
    static const std::map<std::string, std::string> texts = {{"deg24", detail::deg24_text}};
    auto it = texts.find(name);
    if (it == texts.end())
        throw ValidationError("no built-in scenario '" + name + "'");
    return it->second;
}

Scenario builtin_scenario(const std::string& name) { return parse_scenario(builtin_text(name)); }

const std::vector<std::pair<std::string, std::string>>& known_assumptions()
{
    static const std::vector<std::pair<std::string, std::string>> a = {
        {"nef-pullback", "the pullback of an irreducible curve with self-intersection 0 is nef"},
        {"isolated-fixed-points", "the quotient group acts on the minimal model with only isolated fixed points"},
    };
    return a;
}

} // namespace covkit

#include "covkit/errors.hpp"
#include "covkit/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

using namespace covkit;

namespace {

struct Flags {
    std::string scenario = "deg24";
    std::string emit = "text";
    bool no_cache = false;
    std::string cache_dir;
    bool verbose = false;
    bool timings = false;
};

void add_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--scenario", f.scenario, "built-in scenario name or scenario file")->capture_default_str();
    cmd->add_option("--emit", f.emit, "report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    cmd->add_flag("--no-cache", f.no_cache, "do not read or write the solution cache");
    cmd->add_option("--cache-dir", f.cache_dir, "cache directory");
    cmd->add_flag("--verbose", f.verbose, "print each check as it runs");
    cmd->add_flag("--timings", f.timings, "include timings and cache diagnostics");
}

std::filesystem::path default_cache_dir()
{
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::filesystem::path(x) / "covkit";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::filesystem::path(h) / ".cache" / "covkit";
    return ".covkit-cache";
}

Scenario resolve(const std::string& s)
{
    if (std::filesystem::is_regular_file(s))
        return load_scenario(s);
    for (const auto& n : builtin_scenarios())
        if (n == s)
            return builtin_scenario(s);
    throw ValidationError("no scenario file or built-in scenario named '" + s + "'");
}

RunOptions options(const Flags& f)
{
    RunOptions o;
    if (!f.no_cache)
        o.cache_dir = f.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(f.cache_dir);
    o.timings = f.timings;
    o.warn = [](const std::string& w) { std::cerr << "warning: " << w << "\n"; };
    if (f.verbose)
        o.progress = [](const std::string& c) { std::cerr << "running " << c << "\n"; };
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verify abelian-cover constructions from a scenario file"};
    app.require_subcommand(1);
    Flags run_f, show_f, check_f;
    auto* run = app.add_subcommand("run", "run every check and print the report");
    auto* show = app.add_subcommand("show", "print the resolved objects of a scenario");
    auto* check = app.add_subcommand("check", "run and compare against the golden values only");
    add_flags(run, run_f);
    add_flags(show, show_f);
    add_flags(check, check_f);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (show->parsed()) {
            std::cout << describe_scenario(resolve(show_f.scenario), options(show_f));
            return 0;
        }
        const Flags& f = run->parsed() ? run_f : check_f;
        auto report = run_scenario(resolve(f.scenario), options(f));
        EmitOptions eo;
        eo.timings = f.timings;
        eo.only_goldens = check->parsed();
        std::cout << emit(report, f.emit == "structured" ? Format::structured : Format::text, eo);
        return report.pass() ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

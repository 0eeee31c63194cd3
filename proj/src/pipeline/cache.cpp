#include "covkit/pipeline.hpp"
#include "covkit/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace covkit {

std::uint64_t fnv1a(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SolutionCache::SolutionCache(std::filesystem::path dir, const std::string& scenario_text,
                             std::function<void(const std::string&)> warn)
    : dir_(std::move(dir)), warn_(std::move(warn))
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(scenario_text)));
    hash_ = buf;
    std::ifstream in(file(), std::ios::binary);
    if (!in)
        return;
    note(Op::cache);
    try {
        auto j = Json::parse(in);
        if (j.at("scenario").get<std::string>() != hash_)
            throw std::runtime_error("scenario hash differs");
        for (const auto& [k, v] : j.at("entries").items()) {
            if (!v.is_array())
                throw std::runtime_error("entry " + k + " is not a list");
            for (const auto& f : v)
                if (!f.is_string())
                    throw std::runtime_error("entry " + k + " holds a non-string");
        }
        entries_ = j.at("entries");
    } catch (const std::exception& e) {
        if (warn_)
            warn_("ignoring corrupt cache file " + file().string() + ": " + e.what());
        entries_ = Json::object();
        dirty_ = true;
    }
}

std::filesystem::path SolutionCache::file() const { return dir_ / (hash_ + ".json"); }

std::optional<std::vector<std::string>> SolutionCache::lookup(const std::string& key) const
{
    note(Op::cache);
    auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->get<std::vector<std::string>>();
}

void SolutionCache::store(const std::string& key, const std::vector<std::string>& forms)
{
    note(Op::cache);
    entries_[key] = forms;
    dirty_ = true;
}

void SolutionCache::flush()
{
    if (!enabled() || !dirty_)
        return;
    try {
        std::filesystem::create_directories(dir_);
        Json j = Json::object();
        j["scenario"] = hash_;
        j["entries"] = entries_;
        auto tmp = file();
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << j.dump(1) << "\n";
            if (!out)
                throw std::runtime_error("write failed");
        }
        std::filesystem::rename(tmp, file());
        dirty_ = false;
    } catch (const std::exception& e) {
        if (warn_)
            warn_("cannot write cache " + file().string() + ": " + e.what());
    }
}

} // namespace covkit

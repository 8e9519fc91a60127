#pragma once

// Class-number cache: header line "tcm-cache-v1", then one "D,h,w" line per
// fundamental discriminant, sorted by |D|.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcm/parallel.hpp"
#include "tcm/quad_core.hpp"

namespace tcm::io {

inline constexpr const char* kCacheHeader = "tcm-cache-v1";
inline constexpr u64 kDefaultCacheDisc = 10000;

class cache_corrupt : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parsed cache disagrees with recomputation.
class cache_integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CacheEntry {
    u64 h;
    int w;
    friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

class ClassNumberCache {
public:
    using Map = std::map<i64, CacheEntry>;

    static ClassNumberCache build(u64 max_disc, unsigned workers = thread_count()) {
        const auto discs = fundamental_discriminants(max_disc);
        std::vector<CacheEntry> values(discs.size());
        parallel_stripes(discs.size(), workers, [&](unsigned, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) values[i] = {class_number(discs[i]), unit_count(discs[i])};
        });
        ClassNumberCache c;
        for (std::size_t i = 0; i < discs.size(); ++i) c.entries_[discs[i].value()] = values[i];
        return c;
    }

    static ClassNumberCache parse(std::istream& in) {
        std::string line;
        if (!std::getline(in, line) || line != kCacheHeader) throw cache_corrupt("missing cache header");
        ClassNumberCache c;
        u64 last = 0;
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::istringstream ss(line);
            long long D = 0;
            unsigned long long h = 0;
            int w = 0;
            char c1 = 0, c2 = 0;
            if (!(ss >> D >> c1 >> h >> c2 >> w) || c1 != ',' || c2 != ',' || !(ss >> std::ws).eof())
                throw cache_corrupt("malformed cache line " + std::to_string(lineno));
            if (D >= 0 || static_cast<u64>(-D) <= last)
                throw cache_corrupt("cache line " + std::to_string(lineno) + " out of order");
            last = static_cast<u64>(-D);
            c.entries_[D] = {h, w};
        }
        return c;
    }

    static ClassNumberCache load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw cache_corrupt("cannot open " + path.string());
        return parse(in);
    }

    void write(std::ostream& os) const {
        os << kCacheHeader << '\n';
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)  // ascending |D|
            os << it->first << ',' << it->second.h << ',' << it->second.w << '\n';
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        write(out);
        if (!out) throw std::runtime_error("cannot write cache " + path.string());
    }

    // Every entry must be a fundamental discriminant whose h and w match
    // recomputation; a seeded 1% sample (at least one entry) is also checked
    // against the Dirichlet class number sum. Returns the sample size.
    std::size_t validate(unsigned seed = 20240101) const {
        for (const auto& [D, e] : entries_) {
            bool fundamental = false;
            try {
                fundamental = is_fundamental(D);
            } catch (const invalid_discriminant&) {
            }
            if (!fundamental) throw cache_integrity_error(std::to_string(D) + " is not a fundamental discriminant");
            const Discriminant disc(D);
            if (e.w != unit_count(disc))
                throw cache_integrity_error("w mismatch at " + std::to_string(D));
            if (e.h != class_number(disc))
                throw cache_integrity_error("h mismatch at " + std::to_string(D) + ": cached " +
                                            std::to_string(e.h) + ", forms give " +
                                            std::to_string(class_number(disc)));
        }
        if (entries_.empty()) return 0;
        std::vector<i64> keys;
        for (const auto& [D, _] : entries_) keys.push_back(D);
        std::mt19937_64 rng(seed);
        std::shuffle(keys.begin(), keys.end(), rng);
        keys.resize(std::max<std::size_t>(1, keys.size() / 100));
        for (i64 D : keys)
            if (entries_.at(D).h != class_number_dirichlet(Discriminant(D)))
                throw cache_integrity_error("Dirichlet oracle disagrees at " + std::to_string(D));
        return keys.size();
    }

    // Largest |D| the cache is complete up to.
    u64 max_disc() const noexcept { return entries_.empty() ? 0 : static_cast<u64>(-entries_.begin()->first); }
    const Map& entries() const noexcept { return entries_; }
    Map& entries() noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    // Cached h, falling back to recomputation outside the cached range.
    u64 class_number_of(const Discriminant& d) const {
        if (auto it = entries_.find(d.value()); it != entries_.end()) return it->second.h;
        return class_number(d);
    }

private:
    Map entries_;
};

enum class CacheStatus { Loaded, Built, Rebuilt };

inline const char* to_string(CacheStatus s) {
    switch (s) {
        case CacheStatus::Loaded: return "loaded";
        case CacheStatus::Built: return "built";
        case CacheStatus::Rebuilt: return "rebuilt";
    }
    return "?";
}

struct CacheLoad {
    ClassNumberCache cache;
    CacheStatus status;
    std::size_t dirichlet_sample;
};

// Missing file: build and save. Corrupt file or too small a range: rebuild
// with a warning on `diag`. Validation mismatch: cache_integrity_error.
inline CacheLoad load_or_build(const std::filesystem::path& path, u64 max_disc, std::ostream& diag = std::cerr) {
    if (!std::filesystem::exists(path)) {
        auto c = ClassNumberCache::build(max_disc);
        c.save(path);
        return {std::move(c), CacheStatus::Built, 0};
    }
    try {
        auto c = ClassNumberCache::load(path);
        const auto sample = c.validate();
        if (!fundamental_discriminants(max_disc, c.max_disc() + 1).empty()) {
            diag << "warning: cache " << path.string() << " covers |D| <= " << c.max_disc()
                 << ", rebuilding to " << max_disc << '\n';
            auto fresh = ClassNumberCache::build(max_disc);
            fresh.save(path);
            return {std::move(fresh), CacheStatus::Rebuilt, sample};
        }
        return {std::move(c), CacheStatus::Loaded, sample};
    } catch (const cache_corrupt& e) {
        diag << "warning: cache " << path.string() << " is corrupt (" << e.what() << "), rebuilding\n";
        auto c = ClassNumberCache::build(max_disc);
        c.save(path);
        return {std::move(c), CacheStatus::Rebuilt, 0};
    }
}

}  // namespace tcm::io

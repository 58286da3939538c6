#pragma once

// File-backed point-count cache. Each scheme gets one file in the cache
// directory, named by the hex digest of its canonical serialization, holding
// one "n count" record per line with the count in decimal. Records that fail
// to parse are skipped and recomputed; on duplicate n the last record wins.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zel/variety.hpp"

namespace zel::cache {

std::string digest_hex(std::uint64_t digest);

class CountCache : public variety::CountCacheHook {
  public:
    // creates the directory when missing; the file itself appears on first put
    CountCache(const std::string& dir, std::uint64_t digest);

    std::optional<Int> get(int n) override;
    void put(int n, const Int& count) override;

    // extensions n that were answered from disk, ascending, deduplicated
    const std::vector<int>& hits() const { return hits_; }

    // smallest record already on disk, if any; the --verify-cache spot check
    // recomputes it before the rest of the file is trusted
    std::optional<std::pair<int, Int>> first_record();

    const std::string& path() const { return path_; }

  private:
    void load();
    std::string path_;
    std::map<int, Int> records_;
    std::vector<int> hits_;
    bool loaded_ = false;
};

} // namespace zel::cache

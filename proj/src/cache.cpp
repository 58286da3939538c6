#include "zel/cache.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace zel::cache {

std::string digest_hex(std::uint64_t digest) {
    static const char* hexdig = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = hexdig[digest & 0xf];
        digest >>= 4;
    }
    return s;
}

CountCache::CountCache(const std::string& dir, std::uint64_t digest) {
    std::filesystem::create_directories(dir);
    path_ = (std::filesystem::path(dir) / (digest_hex(digest) + ".counts")).string();
}

void CountCache::load() {
    loaded_ = true;
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long n = 0;
        std::string count;
        if (!(ls >> n >> count)) continue;
        std::string rest;
        if (ls >> rest) continue;
        if (n < 1 || n > 1'000'000) continue;
        if (count.empty() || !std::all_of(count.begin(), count.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            continue;
        records_[static_cast<int>(n)] = Int(count);
    }
}

std::optional<std::pair<int, Int>> CountCache::first_record() {
    if (!loaded_) load();
    if (records_.empty()) return std::nullopt;
    return *records_.begin();
}

std::optional<Int> CountCache::get(int n) {
    if (!loaded_) load();
    auto it = records_.find(n);
    if (it == records_.end()) return std::nullopt;
    if (hits_.empty() || hits_.back() != n) {
        hits_.push_back(n);
        std::sort(hits_.begin(), hits_.end());
        hits_.erase(std::unique(hits_.begin(), hits_.end()), hits_.end());
    }
    return it->second;
}

void CountCache::put(int n, const Int& count) {
    if (!loaded_) load();
    records_[n] = count;
    std::ofstream out(path_, std::ios::app);
    out << n << ' ' << to_dec(count) << '\n';
}

} // namespace zel::cache

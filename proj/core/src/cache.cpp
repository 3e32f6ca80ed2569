#include "brinkstab/cache.hpp"

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brinkstab/errors.hpp"

namespace fs = std::filesystem;

namespace brinkstab {

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) {
    if (const char* env = std::getenv("BRINKSTAB_CACHE_DIR")) dir_ = env;
  }
  if (!dir_.empty()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw UsageError("cache: cannot create directory '" + dir_ + "': " + ec.message());
  }
}

std::string ResultCache::digest(const std::string& key_text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> ResultCache::lookup(const std::string& key_text) const {
  if (!enabled()) return std::nullopt;
  const fs::path p = fs::path(dir_) / (digest(key_text) + ".json");
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void ResultCache::store(const std::string& key_text, const std::string& payload) const {
  if (!enabled()) return;
  const fs::path final_path = fs::path(dir_) / (digest(key_text) + ".json");
  const fs::path tmp = final_path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cache: cannot write '" + tmp.string() + "'");
    f << payload;
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
  }
}

}  // namespace brinkstab

#pragma once

#include <optional>
#include <string>

namespace brinkstab {

/// On-disk result cache keyed by the canonical config text. Writes are
/// atomic (temp file + rename), so concurrent sweeps can share a directory;
/// the first writer wins. The directory comes from the constructor argument
/// or, when empty, the BRINKSTAB_CACHE_DIR environment variable.
class ResultCache {
 public:
  explicit ResultCache(std::string dir = "");

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }

  std::optional<std::string> lookup(const std::string& key_text) const;
  void store(const std::string& key_text, const std::string& payload) const;

  /// Stable hex digest of the canonical key text (FNV-1a 64).
  static std::string digest(const std::string& key_text);

 private:
  std::string dir_;
};

}  // namespace brinkstab

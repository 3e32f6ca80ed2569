#pragma once

#include <map>
#include <string>
#include <vector>

namespace brinkstab {

/// Flat key-value configuration: one `key = value` per line, `#` comments,
/// comma-separated arrays. Later assignments (e.g. command-line overrides)
/// replace earlier ones.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;  ///< empty if absent

  /// Deterministic canonical text (sorted keys), used for cache keys.
  std::string canonical() const;

  const std::map<std::string, std::string>& items() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace brinkstab

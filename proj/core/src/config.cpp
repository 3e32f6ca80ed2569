#include "brinkstab/config.hpp"

#include <fstream>
#include <sstream>

#include "brinkstab/errors.hpp"

namespace brinkstab {

namespace {
std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return from_text(os.str());
}

Config Config::from_text(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config: line " + std::to_string(lineno) + " is not `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw UsageError("config: empty key on line " + std::to_string(lineno));
    }
    c.kv_[key] = value;
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    throw UsageError("config: key '" + key + "' is not a number: " + it->second);
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (...) {
    throw UsageError("config: key '" + key + "' is not an integer: " + it->second);
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw UsageError("config: key '" + key + "' is not a boolean: " + it->second);
}

std::vector<double> Config::get_list(const std::string& key) const {
  auto it = kv_.find(key);
  std::vector<double> out;
  if (it == kv_.end()) return out;
  std::istringstream is(it->second);
  std::string cell;
  while (std::getline(is, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    try {
      out.push_back(std::stod(cell));
    } catch (...) {
      throw UsageError("config: key '" + key + "' has a non-numeric entry: " + cell);
    }
  }
  return out;
}

std::string Config::canonical() const {
  std::ostringstream os;
  for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';
  return os.str();
}

}  // namespace brinkstab

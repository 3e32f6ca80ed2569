#include "brinkstab/jsonio.hpp"

#include <cstdlib>
#include <ctime>

#include <json.hpp>

#include "brinkstab/csvio.hpp"
#include "brinkstab/linstab.hpp"

namespace brinkstab::jsonio {

using nlohmann::json;

std::string timestamp_utc() {
  std::time_t t;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string result_record(const std::string& kind, const std::string& config_json,
                          const std::string& payload_json) {
  json rec;
  rec["schema_version"] = 1;
  rec["timestamp"] = timestamp_utc();
  rec["kind"] = kind;
  rec["config"] = json::parse(config_json);
  rec["payload"] = json::parse(payload_json);
  return rec.dump(2) + "\n";
}

std::string critical_point_json(const CriticalPoint& cp) {
  json j;
  j["kind"] = to_string(cp.kind);
  j["M"] = cp.M;
  j["a_c"] = cp.a_c;
  j["R_c"] = cp.R_c;
  j["N"] = cp.grid_order;
  j["convergence"] = cp.convergence;
  j["converged"] = cp.converged;
  return j.dump();
}

namespace {

bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

std::string check(const json& v, const json& schema, const std::string& path) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    if (!type_matches(v, t)) {
      return path + ": expected " + t;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || (e == v);
    if (!ok) return path + ": value not in enum";
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema["required"]) {
        if (!v.contains(r.get<std::string>())) {
          return path + ": missing required key '" + r.get<std::string>() + "'";
        }
      }
    }
    const json props = schema.value("properties", json::object());
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props.contains(it.key())) {
        const std::string msg = check(it.value(), props[it.key()], path + "/" + it.key());
        if (!msg.empty()) return msg;
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_boolean() &&
                 !schema["additionalProperties"].get<bool>()) {
        return path + ": unexpected key '" + it.key() + "'";
      }
    }
  }
  if (v.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string msg = check(v[i], schema["items"], path + "[" + std::to_string(i) + "]");
      if (!msg.empty()) return msg;
    }
  }
  return {};
}

}  // namespace

std::string schema_violations(const std::string& document_json,
                              const std::string& schema_json) {
  json doc, schema;
  try {
    doc = json::parse(document_json);
  } catch (const std::exception& e) {
    return std::string("document is not valid JSON: ") + e.what();
  }
  try {
    schema = json::parse(schema_json);
  } catch (const std::exception& e) {
    return std::string("schema is not valid JSON: ") + e.what();
  }
  return check(doc, schema, "$");
}

}  // namespace brinkstab::jsonio

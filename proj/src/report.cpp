#include <sstream>

#include <json.hpp>

#include "rank2/job.hpp"

namespace rank2 {

namespace {

using json = nlohmann::ordered_json;

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void fields(std::ostringstream& os, const json& obj, const std::string& indent) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.key() == "check" || it.key() == "status") continue;
    if (it.value().is_object()) {
      os << indent << it.key() << ":\n";
      fields(os, it.value(), indent + "  ");
    } else if (it.value().is_array()) {
      os << indent << it.key() << ":";
      for (const auto& e : it.value()) os << " " << scalar_text(e);
      os << "\n";
    } else {
      os << indent << it.key() << ": " << scalar_text(it.value()) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const std::string& text) {
  json r = json::parse(text);
  std::ostringstream os;
  os << "job " << scalar_text(r["job"]) << " (genus " << r["genus"].dump() << ")\n";
  if (r.contains("potential")) os << "potential: " << scalar_text(r["potential"]) << "\n";
  if (r.contains("error")) os << "error: " << scalar_text(r["error"]) << "\n";
  for (const auto& v : r["verdicts"]) {
    os << "[" << scalar_text(v["status"]) << "] " << scalar_text(v["check"]) << "\n";
    fields(os, v, "  ");
  }
  if (!r["constants"].empty()) {
    os << "constants:";
    for (auto it = r["constants"].begin(); it != r["constants"].end(); ++it) {
      os << " " << it.key() << " = " << scalar_text(it.value());
    }
    os << "\n";
  }
  if (!r["curve"].is_null()) {
    os << "curve: w^2 = " << scalar_text(r["curve"]["polynomial"]) << "\n";
    os << "discriminant: " << scalar_text(r["curve"]["discriminant"]) << "\n";
  }
  for (const auto& f : r["frobenius"]) {
    os << "frobenius " << scalar_text(f["pole"]) << " lambda=" << scalar_text(f["lambda"]) << " "
       << scalar_text(f["branch"]) << ": " << scalar_text(f["status"]);
    if (!f["obstruction"].is_null()) os << " (obstruction " << scalar_text(f["obstruction"]) << ")";
    os << "\n";
  }
  if (!r["truncation"].empty()) {
    os << "truncation:";
    for (auto it = r["truncation"].begin(); it != r["truncation"].end(); ++it) {
      os << " " << it.key() << "=" << scalar_text(it.value());
    }
    os << "\n";
  }
  for (const auto& o : r["obstructions"]) {
    os << "obstruction:";
    for (auto it = o.begin(); it != o.end(); ++it) os << " " << it.key() << "=" << scalar_text(it.value());
    os << "\n";
  }
  for (const auto& n : r["notes"]) os << "note: " << scalar_text(n) << "\n";
  if (r.contains("timing_ms")) os << "timing_ms: " << r["timing_ms"].dump() << "\n";
  os << "exit code " << r["exit_code"].dump() << "\n";
  return os.str();
}

}  // namespace rank2

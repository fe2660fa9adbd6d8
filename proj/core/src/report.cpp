#include "nichols/report.hpp"

#include <sstream>

#include "nichols/sha256.hpp"

namespace nichols {

using json = nlohmann::ordered_json;

std::string codeVersion() { return "nichols-0.1.0"; }

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json Report::canonicalJson() const {
  json j;
  j["name"] = name;
  j["codeVersion"] = codeVersion();
  j["inputDigest"] = inputDigest;
  j["engine"] = engine;
  j["hilbert"] = hilbert;
  if (bigraded) j["bigraded"] = *bigraded;
  j["finiteness"] = finiteness;
  json cs = json::array();
  for (const auto& c : checks) {
    json cj;
    cj["name"] = c.name;
    if (!c.paperAnchor.empty()) cj["paperAnchor"] = c.paperAnchor;
    cj["pass"] = c.pass;
    if (!c.details.empty()) cj["details"] = c.details;
    cs.push_back(std::move(cj));
  }
  j["checks"] = cs;
  if (!extra.is_null()) j["extra"] = extra;
  j["pass"] = pass();
  return j;
}

json Report::fullJson() const {
  json j = canonicalJson();
  json t;
  t["seconds"] = seconds;
  t["cacheHit"] = cacheHit;
  j["timings"] = t;
  return j;
}

std::string Report::digest() const { return sha256Hex(canonicalJson().dump()); }

std::string Report::table() const {
  std::ostringstream os;
  os << "== " << name << " ==\n";
  os << "engine: " << engine << "   finiteness: " << finiteness.dump() << "\n";
  os << "hilbert:";
  for (auto d : hilbert) os << " " << d;
  os << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.details.empty()) os << "  -- " << c.details;
    if (!c.paperAnchor.empty()) os << "  {" << c.paperAnchor << "}";
    os << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << "  (" << seconds << "s" << (cacheHit ? ", cache hit" : "")
     << ")\n";
  return os.str();
}

}  // namespace nichols

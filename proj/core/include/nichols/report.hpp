#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace nichols {

/// Deterministic run report: identical inputs and code version give
/// byte-identical canonical JSON (timings are segregated and excluded from
/// the digest).
struct Report {
  std::string name;
  std::string inputDigest;
  std::string engine;
  std::vector<uint64_t> hilbert;
  std::optional<nlohmann::ordered_json> bigraded;
  nlohmann::ordered_json finiteness;
  struct Check {
    std::string name;
    std::string paperAnchor;
    bool pass = false;
    std::string details;
  };
  std::vector<Check> checks;
  nlohmann::ordered_json extra;  // per-report structured payload
  double seconds = 0.0;
  bool cacheHit = false;

  bool pass() const;
  /// Canonical JSON without timings.
  nlohmann::ordered_json canonicalJson() const;
  /// Canonical JSON plus the timing sidecar.
  nlohmann::ordered_json fullJson() const;
  std::string digest() const;
  /// Human-readable table derived from the JSON.
  std::string table() const;
};

std::string codeVersion();

}  // namespace nichols

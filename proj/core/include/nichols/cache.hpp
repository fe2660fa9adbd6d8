#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nichols/engine.hpp"

namespace nichols {

/// Content-addressed model cache: `<dir>/<digest>/model.bin` plus
/// `<dir>/<digest>/meta.json`. Corruption (content hash mismatch) is treated
/// as a miss; entries from other code versions are ignored.
class ModelCache {
 public:
  /// Resolution order: explicit path, NICHOLS_CACHE_DIR, ".nichols-cache".
  explicit ModelCache(std::string dir = "");

  const std::string& dir() const { return dir_; }

  /// Digest for (field, braiding spec, cutoff, engine path, code version).
  static std::string keyDigest(const std::string& braidingSpecCanonical, uint32_t cutoff,
                               EnginePath path);

  std::shared_ptr<NicholsModel> get(const std::string& digest,
                                    std::shared_ptr<const BraidedSpace> space) const;
  void put(const std::string& digest, const NicholsModel& model) const;

  struct Entry {
    std::string digest;
    uint64_t bytes = 0;
    bool valid = false;
  };
  std::vector<Entry> list() const;
  void clear() const;
  /// Drop corrupt or version-mismatched entries; returns the number removed.
  std::size_t gc() const;

 private:
  std::string dir_;
};

}  // namespace nichols

#include "nichols/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nichols/report.hpp"
#include "nichols/sha256.hpp"

namespace nichols {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

ModelCache::ModelCache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) {
    if (const char* env = std::getenv("NICHOLS_CACHE_DIR")) dir_ = env;
    else dir_ = ".nichols-cache";
  }
}

std::string ModelCache::keyDigest(const std::string& braidingSpecCanonical, uint32_t cutoff,
                                  EnginePath path) {
  json key;
  key["spec"] = braidingSpecCanonical;
  key["cutoff"] = cutoff;
  key["engine"] = path == EnginePath::Derivation ? "derivation" : "symmetrizer";
  key["codeVersion"] = codeVersion();
  return sha256Hex(key.dump());
}

std::shared_ptr<NicholsModel> ModelCache::get(const std::string& digest,
                                              std::shared_ptr<const BraidedSpace> space) const {
  fs::path base = fs::path(dir_) / digest;
  std::error_code ec;
  if (!fs::exists(base / "model.bin", ec) || !fs::exists(base / "meta.json", ec)) return nullptr;
  try {
    std::ifstream metaIn(base / "meta.json");
    json meta = json::parse(metaIn);
    if (meta.at("codeVersion") != codeVersion()) return nullptr;
    std::ifstream in(base / "model.bin", std::ios::binary);
    std::stringstream body;
    body << in.rdbuf();
    if (sha256Hex(body.str()) != meta.at("contentSha").get<std::string>()) return nullptr;
    return NicholsModel::deserialize(body, std::move(space));
  } catch (...) {
    return nullptr;  // corruption is a miss
  }
}

void ModelCache::put(const std::string& digest, const NicholsModel& model) const {
  fs::path base = fs::path(dir_) / digest;
  std::error_code ec;
  fs::create_directories(base, ec);
  std::stringstream body;
  model.serialize(body);
  {
    std::ofstream out(base / "model.bin", std::ios::binary | std::ios::trunc);
    out << body.str();
  }
  json meta;
  meta["digest"] = digest;
  meta["codeVersion"] = codeVersion();
  meta["contentSha"] = sha256Hex(body.str());
  std::ofstream metaOut(base / "meta.json", std::ios::trunc);
  metaOut << meta.dump(2);
}

std::vector<ModelCache::Entry> ModelCache::list() const {
  std::vector<Entry> out;
  std::error_code ec;
  if (!fs::exists(dir_, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir_, ec)) {
    if (!e.is_directory()) continue;
    Entry entry;
    entry.digest = e.path().filename().string();
    std::error_code ec2;
    entry.bytes = fs::exists(e.path() / "model.bin", ec2)
                      ? fs::file_size(e.path() / "model.bin", ec2)
                      : 0;
    entry.valid = false;
    try {
      std::ifstream metaIn(e.path() / "meta.json");
      if (metaIn) {
        json meta = json::parse(metaIn);
        std::ifstream in(e.path() / "model.bin", std::ios::binary);
        std::stringstream body;
        body << in.rdbuf();
        entry.valid = meta.at("codeVersion") == codeVersion() &&
                      sha256Hex(body.str()) == meta.at("contentSha").get<std::string>();
      }
    } catch (...) {
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.digest < b.digest; });
  return out;
}

void ModelCache::clear() const {
  std::error_code ec;
  fs::remove_all(dir_, ec);
}

std::size_t ModelCache::gc() const {
  std::size_t removed = 0;
  for (const auto& e : list()) {
    if (!e.valid) {
      std::error_code ec;
      fs::remove_all(fs::path(dir_) / e.digest, ec);
      ++removed;
    }
  }
  return removed;
}

}  // namespace nichols

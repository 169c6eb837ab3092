#include "gl2p/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gl2p/report.hpp"

namespace gl2p {

Cache::Cache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(version.empty() ? kVersion : std::move(version)) {}

Cache Cache::from_env() {
  if (const char* d = std::getenv("GL2P_CACHE_DIR"); d && *d) return Cache(d);
  if (const char* h = std::getenv("HOME"); h && *h) return Cache(std::filesystem::path(h) / ".cache" / "gl2p");
  return Cache(".gl2p-cache");
}

std::string Cache::full_key(const std::string& key) const { return version_ + "|" + key; }

std::filesystem::path Cache::file_for(const std::string& key) const {
  return dir_ / (hex64(fnv1a64(full_key(key))) + ".json");
}

std::optional<std::string> Cache::get(const std::string& key) const {
  auto path = file_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(buf.str());
    if (j.at("key").get<std::string>() != full_key(key)) return std::nullopt;  // hash collision
    return j.at("value").get<std::string>();
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring corrupt cache entry " << path << "\n";
    return std::nullopt;
  }
}

void Cache::put(const std::string& key, const std::string& value) const {
  if (auto old = get(key); old && *old == value) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    std::cerr << "warning: cache directory " << dir_ << " unavailable: " << ec.message() << "\n";
    return;
  }
  nlohmann::json j = {{"key", full_key(key)}, {"value", value}};
  try {
    write_file_atomic(file_for(key).string(), j.dump());
  } catch (const std::exception& e) {
    std::cerr << "warning: cache write failed: " << e.what() << "\n";
  }
}

}  // namespace gl2p

#pragma once

// Persistent memo of exact values, one JSON file per key. Keys are canonical
// strings "operation|inputs"; the version is folded in, so a version bump
// misses. Writes go through a temporary file and rename, so concurrent
// processes never observe partial entries.

#include <filesystem>
#include <optional>
#include <string>

namespace gl2p {

class Cache {
 public:
  explicit Cache(std::filesystem::path dir, std::string version = "");
  /// GL2P_CACHE_DIR, else $HOME/.cache/gl2p, else ./.gl2p-cache.
  static Cache from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<std::string> get(const std::string& key) const;
  /// No-op if an equal value is already stored.
  void put(const std::string& key, const std::string& value) const;

 private:
  std::filesystem::path file_for(const std::string& key) const;
  std::string full_key(const std::string& key) const;
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace gl2p

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gkf/exact_linalg.hpp"
#include "gkf/poly_dual.hpp"

namespace gkf {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

/// Content-addressed store for heavy intermediates. Entries are immutable:
/// a key embeds the format version, so a format change never rewrites old
/// files, it just stops finding them. A default-constructed cache is off.
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::filesystem::path dir);

  /// GKF_CACHE_DIR if set, otherwise ".gkf-cache" in the working directory.
  static std::filesystem::path default_dir();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  /// Canonical key text, e.g. "v1|maxvec|n=3|L2 S5|0,0,0".
  static std::string key(std::string_view kind, int n, std::string_view spec, const std::vector<int>& weight = {});

  std::optional<std::vector<WedgeVector>> load_vectors(const std::string& key) const;
  void store_vectors(const std::string& key, const std::vector<WedgeVector>& vectors) const;

  std::optional<std::string> load_text(const std::string& key) const;
  void store_text(const std::string& key, const std::string& text) const;

  std::optional<SparseRationalMatrix> load_matrix(const std::string& key) const;
  void store_matrix(const std::string& key, const SparseRationalMatrix& m) const;

  /// File name for a key: 16 hex digits of its 64-bit FNV-1a hash plus ".bin".
  static std::string file_name(const std::string& key);

 private:
  std::optional<std::string> read_payload(const std::string& key, std::uint32_t kind) const;
  void write_payload(const std::string& key, std::uint32_t kind, const std::string& payload) const;

  std::filesystem::path dir_;
};

}  // namespace gkf

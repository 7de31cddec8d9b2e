#include "gkf/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace gkf {

namespace {

constexpr char kMagic[8] = {'G', 'K', 'F', 'C', 'A', 'C', 'H', 'E'};
constexpr std::uint32_t kKindVectors = 1;
constexpr std::uint32_t kKindText = 2;
constexpr std::uint32_t kKindMatrix = 3;

void put_u32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((x >> (8 * i)) & 0xFF);
}

void put_u64(std::string& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((x >> (8 * i)) & 0xFF);
}

void put_bytes(std::string& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out += s;
}

void put_rational(std::string& out, const Rational& q) { put_bytes(out, q.get_str()); }

struct Reader {
  const std::string& data;
  std::size_t pos = 0;

  void need(std::size_t k) const {
    if (pos + k > data.size()) throw std::runtime_error("truncated cache entry");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    return x;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    return x;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data[pos++]);
  }
  std::string bytes() {
    const std::uint32_t len = u32();
    need(len);
    std::string s = data.substr(pos, len);
    pos += len;
    return s;
  }
  Rational rational() { return parse_rational(bytes()); }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path Cache::default_dir() {
  if (const char* env = std::getenv("GKF_CACHE_DIR"); env && *env) return env;
  return ".gkf-cache";
}

std::string Cache::key(std::string_view kind, int n, std::string_view spec, const std::vector<int>& weight) {
  std::string k = "v" + std::to_string(kCacheFormatVersion) + "|" + std::string(kind) + "|n=" + std::to_string(n) + "|" + std::string(spec) + "|";
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (i) k += ',';
    k += std::to_string(weight[i]);
  }
  return k;
}

std::string Cache::file_name(const std::string& key) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
  return std::string(buf) + ".bin";
}

std::optional<std::string> Cache::read_payload(const std::string& key, std::uint32_t kind) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / file_name(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  try {
    Reader r{data};
    r.need(sizeof kMagic);
    if (data.compare(0, sizeof kMagic, std::string(kMagic, sizeof kMagic)) != 0) return std::nullopt;
    r.pos = sizeof kMagic;
    if (r.u32() != kCacheFormatVersion) return std::nullopt;
    if (r.u32() != kind) return std::nullopt;
    if (r.bytes() != key) return std::nullopt;
    return r.bytes();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::write_payload(const std::string& key, std::uint32_t kind, const std::string& payload) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::string data(kMagic, sizeof kMagic);
  put_u32(data, kCacheFormatVersion);
  put_u32(data, kind);
  put_bytes(data, key);
  put_bytes(data, payload);
  const auto final_path = dir_ / file_name(key);
  auto tmp = final_path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) return;
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::optional<std::vector<WedgeVector>> Cache::load_vectors(const std::string& key) const {
  auto payload = read_payload(key, kKindVectors);
  if (!payload) return std::nullopt;
  try {
    Reader r{*payload};
    std::vector<WedgeVector> out;
    const std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
      const int n = static_cast<int>(r.u32());
      const std::uint32_t mask = r.u32();
      const std::uint64_t terms = r.u64();
      std::vector<WedgeVector::Term> t;
      t.reserve(terms);
      for (std::uint64_t k = 0; k < terms; ++k) {
        WedgeMonomial m;
        const std::uint8_t size = r.u8();
        for (std::uint8_t f = 0; f < size; ++f) m.push_back(r.u32());
        t.emplace_back(m, r.rational());
      }
      out.push_back(WedgeVector::from_sorted(n, mask, std::move(t)));
    }
    return out;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store_vectors(const std::string& key, const std::vector<WedgeVector>& vectors) const {
  if (!enabled()) return;
  std::string p;
  put_u32(p, static_cast<std::uint32_t>(vectors.size()));
  for (const auto& v : vectors) {
    put_u32(p, static_cast<std::uint32_t>(v.rank()));
    put_u32(p, v.symmetric_degrees());
    put_u64(p, v.size());
    for (const auto& [m, c] : v.terms()) {
      p += static_cast<char>(m.size);
      for (GenId g : m.factors()) put_u32(p, g);
      put_rational(p, c);
    }
  }
  write_payload(key, kKindVectors, p);
}

std::optional<std::string> Cache::load_text(const std::string& key) const { return read_payload(key, kKindText); }

void Cache::store_text(const std::string& key, const std::string& text) const { write_payload(key, kKindText, text); }

std::optional<SparseRationalMatrix> Cache::load_matrix(const std::string& key) const {
  auto payload = read_payload(key, kKindMatrix);
  if (!payload) return std::nullopt;
  try {
    Reader r{*payload};
    const std::uint64_t rows = r.u64();
    const std::uint64_t cols = r.u64();
    SparseRationalMatrix m(0, cols);
    for (std::uint64_t i = 0; i < rows; ++i) {
      const std::uint64_t k = r.u64();
      std::vector<std::pair<std::uint32_t, Rational>> row;
      for (std::uint64_t e = 0; e < k; ++e) {
        const std::uint32_t c = r.u32();
        row.emplace_back(c, r.rational());
      }
      m.add_row(std::move(row));
    }
    return m;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store_matrix(const std::string& key, const SparseRationalMatrix& m) const {
  if (!enabled()) return;
  std::string p;
  put_u64(p, m.rows());
  put_u64(p, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    put_u64(p, m.row(i).size());
    for (const auto& [c, v] : m.row(i)) {
      put_u32(p, c);
      put_rational(p, v);
    }
  }
  write_payload(key, kKindMatrix, p);
}

}  // namespace gkf

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>

#include <unistd.h>

#include "wallkit/io.hpp"

namespace wallkit {

inline constexpr int kCacheSchemaVersion = 1;

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Content-addressed JSON store. Writes go to a private temp file that is
// renamed into place, so readers only ever see complete entries.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path root, int schema = kCacheSchemaVersion)
      : root_(std::move(root)), schema_(schema) {}

  // Root from WALLKIT_CACHE, if set.
  static std::optional<ResultCache> from_env() {
    const char* p = std::getenv("WALLKIT_CACHE");
    if (!p || !*p) return std::nullopt;
    return ResultCache(p);
  }

  const std::filesystem::path& root() const { return root_; }

  std::string full_key(const std::string& request) const {
    return "v" + std::to_string(schema_) + "|" + request;
  }

  std::filesystem::path path_for(const std::string& request) const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(full_key(request))));
    return root_ / (std::string(buf) + ".json");
  }

  std::optional<io::json> load(const std::string& request) const {
    std::ifstream in(path_for(request));
    if (!in) return std::nullopt;
    try {
      io::json j = io::json::parse(in);
      if (j.at("schema").get<int>() != schema_ || j.at("key").get<std::string>() != full_key(request))
        return std::nullopt;
      return j.at("value");
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  bool store(const std::string& request, const io::json& value) const {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    const auto target = path_for(request);
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmpname;
    tmpname << target.filename().string() << ".tmp." << ::getpid() << "."
            << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    const auto tmp = root_ / tmpname.str();
    {
      std::ofstream out(tmp);
      if (!out) return false;
      out << io::json{{"schema", schema_}, {"key", full_key(request)}, {"value", value}}.dump() << "\n";
      if (!out) return false;
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      return false;
    }
    return true;
  }

 private:
  std::filesystem::path root_;
  int schema_;
};

inline std::string dim_request_key(const AffineType& t, Convention conv, const RootVec& beta) {
  std::string s = "dim|" + t.name() + "|" + std::string(convention_name(conv)) + "|";
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
  return s;
}

// graded_dim_total through the cache; corrupt or stale entries are recomputed.
inline DimReport cached_graded_dim_total(const std::optional<ResultCache>& cache, const CartanData& cd,
                                         const RootVec& beta, Convention conv, unsigned threads = 1,
                                         int cap = kDefaultEnumerationCap) {
  const std::string key = dim_request_key(cd.type(), conv, beta);
  if (cache) {
    if (auto hit = cache->load(key)) {
      try {
        auto r = io::dim_report_from_json(*hit);
        if (r.beta == beta && r.convention == conv) return r;
      } catch (const std::exception&) {
      }
    }
  }
  auto r = graded_dim_total(cd, beta, conv, threads, cap);
  if (cache) cache->store(key, io::to_json(r, cd.type()));
  return r;
}

}  // namespace wallkit

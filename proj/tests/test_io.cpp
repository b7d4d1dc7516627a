#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <thread>

#include "wallkit/cache.hpp"
#include "wallkit/dot.hpp"
#include "wallkit/io.hpp"
#include "wallkit/wallkit.hpp"

using namespace wallkit;

namespace {

const AffineType A2(Family::A2even, 2);
constexpr Convention kCal = Convention::offset_occupied;

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("wallkit-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    std::filesystem::remove_all(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST(Io, LaurentRoundTrip) {
  const LaurentPoly p = LaurentPoly({{-2, 9}, {0, 18}, {2, 9}}) + LaurentPoly::monomial(5, Int("123456789012345678901234567890"));
  const auto j = io::to_json(p);
  EXPECT_EQ(j["-2"], 9);
  EXPECT_TRUE(j["5"].is_string());
  EXPECT_EQ(io::laurent_from_json(j), p);
  EXPECT_THROW(io::laurent_from_json(io::json::parse(R"({"x": 1})")), InvalidInput);
  EXPECT_THROW(io::laurent_from_json(io::json::parse(R"({"1": 1.5})")), InvalidInput);
}

TEST(Io, WallAndRootRoundTrip) {
  const Wall y(A2, {5, 2, 1});
  EXPECT_EQ(io::to_json(y).dump(), R"({"family":"a2even","ell":2,"parts":[5,2,1]})");
  EXPECT_EQ(io::wall_from_json(io::to_json(y)), y);
  EXPECT_THROW(io::wall_from_json(io::json::parse(R"({"family":"a2even","ell":2,"parts":[2,2,1]})")), InvalidInput);
  const RootVec b(std::vector<std::int64_t>{2, 0, 1});
  EXPECT_EQ(io::to_json(b).dump(), R"({"0":2,"2":1})");
  EXPECT_EQ(io::root_from_json(io::to_json(b), 3), b);
  EXPECT_THROW(io::root_from_json(io::json::parse(R"({"7":1})"), 3), InvalidInput);
}

TEST(Io, DimReportRoundTrip) {
  const CartanData cd(A2);
  const auto rep = graded_dim_total(cd, cd.null_root(), kCal);
  const auto j = io::to_json(rep, A2);
  EXPECT_EQ(j["convention"], "offset-occupied");
  EXPECT_EQ(j["per_wall"].size(), 3u);
  const auto back = io::dim_report_from_json(j);
  EXPECT_EQ(io::to_json(back, A2).dump(), j.dump());
  auto broken = j;
  broken["total"] = io::json::parse(R"({"0": 1})");
  EXPECT_THROW(io::dim_report_from_json(broken), InvalidInput);
}

TEST(Io, DotOutput) {
  const Poset P = weak_order_poset(Wall(A2, {5, 1}));
  const std::string dot = to_dot(P);
  EXPECT_EQ(dot.rfind("digraph weak_order {", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
  EXPECT_NE(dot.find("n0 -> n1 [label=\"s5\"];"), std::string::npos);
  EXPECT_NE(dot.find("n0 [label=\"(123456)\", style=bold];"), std::string::npos);
  const std::regex edge(R"(n\d+ -> n\d+ \[label="s\d+"\];)");
  long edges = std::distance(std::sregex_iterator(dot.begin(), dot.end(), edge), std::sregex_iterator());
  EXPECT_EQ(edges, static_cast<long>(P.covers.size()));
}

TEST(Cache, StoreThenLoad) {
  TempDir dir;
  const ResultCache cache(dir.path());
  const CartanData cd(A2);
  const std::string key = dim_request_key(A2, kCal, cd.null_root());
  EXPECT_FALSE(cache.load(key));
  const auto rep = graded_dim_total(cd, cd.null_root(), kCal);
  ASSERT_TRUE(cache.store(key, io::to_json(rep, A2)));
  const auto hit = cache.load(key);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->dump(), io::to_json(rep, A2).dump());
  const auto via = cached_graded_dim_total(cache, cd, cd.null_root(), kCal);
  EXPECT_EQ(via.total(), rep.total());
}

TEST(Cache, SchemaBumpIgnoresOldEntries) {
  TempDir dir;
  const ResultCache v1(dir.path(), 1);
  const ResultCache v2(dir.path(), 2);
  ASSERT_TRUE(v1.store("k", io::json{{"x", 1}}));
  EXPECT_TRUE(v1.load("k"));
  EXPECT_FALSE(v2.load("k"));
  // Even a file at the new path written under the old schema is rejected.
  std::filesystem::copy_file(v1.path_for("k"), v2.path_for("k"));
  EXPECT_FALSE(v2.load("k"));
}

TEST(Cache, CorruptEntriesAreRecomputed) {
  TempDir dir;
  const ResultCache cache(dir.path());
  const CartanData cd(A2);
  const std::string key = dim_request_key(A2, kCal, cd.null_root());
  std::filesystem::create_directories(dir.path());
  {
    std::ofstream out(cache.path_for(key));
    out << "{ not json";
  }
  EXPECT_FALSE(cache.load(key));
  const auto rep = cached_graded_dim_total(cache, cd, cd.null_root(), kCal);
  EXPECT_EQ(rep.total().eval_q1(), 15);
  EXPECT_TRUE(cache.load(key));
  // A structurally valid entry with a wrong total is also discarded.
  auto j = io::to_json(rep, A2);
  j["total"] = io::json::parse(R"({"0": 2})");
  ASSERT_TRUE(cache.store(key, j));
  EXPECT_EQ(cached_graded_dim_total(cache, cd, cd.null_root(), kCal).total(), rep.total());
}

TEST(Cache, ConcurrentWriters) {
  TempDir dir;
  const ResultCache cache(dir.path());
  const std::string key = "same-key";
  std::vector<std::thread> threads;
  std::atomic<int> bad_reads{0};
  for (int w = 0; w < 8; ++w)
    threads.emplace_back([&, w] {
      for (int r = 0; r < 50; ++r) {
        cache.store(key, io::json{{"writer", w}, {"payload", std::string(2000, static_cast<char>('a' + w))}});
        if (auto v = cache.load(key)) {
          const int who = (*v)["writer"].get<int>();
          if ((*v)["payload"].get<std::string>() != std::string(2000, static_cast<char>('a' + who))) ++bad_reads;
        }
      }
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(bad_reads.load(), 0);
  const auto final = cache.load(key);
  ASSERT_TRUE(final);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 1u);
}

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gkf/cli.hpp"
#include "gkf/partition.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gkf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gkf::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("gkf-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("crystal count") {
  const auto r = run({"crystal", "--n", "2", "--shape", "2,2", "--count", "--no-cache"});
  CHECK(r.code == 0);
  CHECK(r.out == "14\n");
}

TEST_CASE("crystal listing") {
  const auto r = run({"crystal", "--n", "2", "--shape", "1,1", "--no-cache"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  const auto j = nlohmann::json::parse(run({"crystal", "--n", "2", "--shape", "1,1", "--format", "json", "--no-cache"}).out);
  CHECK(j["count"] == 5);
  CHECK(j["tableaux"].size() == 5);
}

TEST_CASE("dim") {
  CHECK(run({"dim", "--n", "3", "--shape", "4,0,0", "--no-cache"}).out == "dim V[4,0,0] = 126\n");
  CHECK(run({"dim", "--n", "3", "--degree", "3", "--no-cache"}).out == "dim S3 = 56\n");
  const auto j = nlohmann::json::parse(run({"dim", "--n", "3", "--shape", "2,2", "--format", "json", "--no-cache"}).out);
  CHECK(j["dim"] == 90);
}

TEST_CASE("tensor") {
  const auto r = run({"tensor", "--n", "3", "--shape", "1", "--shape", "1", "--no-cache"});
  CHECK(r.code == 0);
  CHECK(r.out == "V[2,0,0] + V[1,1,0] + V[0,0,0]\n");
}

TEST_CASE("decompose emits json by default") {
  const auto r = run({"decompose", "--n", "3", "--space", "L2 S3", "--no-cache", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_object());
  std::uint64_t total = 0;
  for (const auto& item : j["summands"])
    total += item["mult"].get<std::uint64_t>() * gkf::weyl_dim(3, item["lambda"].get<std::vector<int>>());
  CHECK(total == 56 * 55 / 2);
  const auto text = run({"decompose", "--n", "3", "--space", "L2 S3", "--format", "text", "--no-cache", "--quiet"});
  CHECK(text.out == "V[5,1,0] + V[4,0,0] + V[3,3,0] + V[2,2,0] + V[1,1,0] + V[0,0,0]\n");
}

TEST_CASE("betti at weight 4") {
  const auto r = run({"betti", "--n", "3", "--w", "4", "--no-cache", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("  4  3  0  2\n") != std::string::npos);
  CHECK(r.out.find("euler 2") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"betti", "--n", "3", "--w", "4", "--format", "json", "--no-cache", "--quiet"}).out);
  CHECK(j["rows"][4]["betti"] == 2);
  CHECK(j["rows"][3]["rank"] == 1);
}

TEST_CASE("cochain dims") {
  const auto r = run({"cochain-dims", "--n", "3", "--w", "4", "--format", "tsv", "--no-cache", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("4\t3\tk3=2,k4=1\tL2 S3 * L1 S4\t1\tpairing\n") != std::string::npos);
}

TEST_CASE("progress goes to stderr unless quiet") {
  const auto loud = run({"betti", "--n", "3", "--w", "2", "--no-cache"});
  CHECK(loud.err.find("[gkf] ") != std::string::npos);
  CHECK(loud.out == run({"betti", "--n", "3", "--w", "2", "--no-cache", "--quiet"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({"betti", "--n", "3", "--w", "3", "--no-cache"}).code == 2);
  CHECK(run({"betti", "--n", "3", "--w", "12", "--no-cache"}).code == 2);
  CHECK(run({"betti", "--n", "2", "--w", "2", "--no-cache"}).code == 2);
  CHECK(run({"crystal", "--n", "3", "--shape", "1,2", "--no-cache"}).code == 2);
  CHECK(run({"crystal", "--n", "2", "--shape", "1,1,1", "--no-cache"}).code == 2);
  CHECK(run({"decompose", "--space", "L2 S3 * L1 S3", "--no-cache"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"dim", "--format", "xml"}).code == 2);
  // Binomial(100005, 100000) does not fit in 64 bits.
  const auto big = run({"dim", "--n", "3", "--degree", "100000", "--no-cache"});
  CHECK(big.code == 3);
  CHECK_FALSE(big.err.empty());
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("warm cache output is byte-identical to an uncached run") {
  const auto dir = fresh_dir("warm");
  const std::vector<std::string> base{"decompose", "--n", "3", "--space", "L3 S3", "--quiet"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return run(a);
  };
  const auto cold = with({"--cache-dir", dir.string()});
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 1);
  const auto warm = with({"--cache-dir", dir.string()});
  const auto none = with({"--no-cache"});
  CHECK(cold.out == none.out);
  CHECK(warm.out == none.out);

  const std::vector<std::string> betti{"betti", "--n", "3", "--w", "4", "--quiet", "--format", "json"};
  auto b = betti;
  b.insert(b.end(), {"--cache-dir", dir.string()});
  const auto b1 = run(b);
  const auto b2 = run(b);
  auto nb = betti;
  nb.push_back("--no-cache");
  CHECK(b1.out == run(nb).out);
  CHECK(b2.out == b1.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("thread count does not change results") {
  const auto one = run({"report", "--n", "3", "--w", "2", "--w", "4", "--threads", "1", "--no-cache", "--quiet"});
  const auto four = run({"report", "--n", "3", "--w", "2", "--w", "4", "--threads", "4", "--no-cache", "--quiet"});
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  const auto d1 = run({"decompose", "--space", "L3 S3", "--threads", "1", "--no-cache", "--quiet"});
  const auto d4 = run({"decompose", "--space", "L3 S3", "--threads", "4", "--no-cache", "--quiet"});
  CHECK(d1.out == d4.out);
}

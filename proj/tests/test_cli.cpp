#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fusionlab/cli.hpp"
#include "helpers.hpp"

using namespace fusionlab;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("fusionlab-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("loading groups") {
  CHECK(load_group("cat:S4")->order() == 24);
  auto dir = fresh_dir("load");
  std::ofstream(dir / "d8.grp") << "group D8\nperm 4\n(1 2)\n(1 3 2 4)\n";
  CHECK(load_group((dir / "d8.grp").string())->order() == 8);
  CHECK(code_of([] { load_group("cat:nope"); }) == ErrorCode::ParseError);
  CHECK_THROWS(load_group((dir / "missing.grp").string()));
}

TEST_CASE("descriptions") {
  auto G = catalog_group("S4");
  auto V4n = from_cycles(G, {"(1 2)(3 4)", "(1 3)(2 4)"});
  auto d = describe_subgroup(V4n);
  CHECK(d.find("order 4") != std::string::npos);
  CHECK(describe_subgroup(trivial_subgroup(G)).find("order 1") != std::string::npos);
}

TEST_CASE("config") {
  RunConfig c;
  c.order_cap = 0;
  CHECK(code_of([&] { apply_limits(c); }) == ErrorCode::ParseError);
  apply_limits(RunConfig{});
  CHECK(limits().order == 1000);
}

TEST_CASE("cache round trip") {
  auto dir = fresh_dir("cache");
  ResultCache cache(dir);
  auto G = catalog_group("GL23");
  CHECK_FALSE(cache.load(G, 2).has_value());
  auto F = FusionSystem::realize(G, 2);
  cache.store(G, F);
  CHECK(fs::exists(cache.file_for(*G, 2)));
  auto back = cache.load(G, 2);
  REQUIRE(back);
  CHECK(back->S() == F.S());
  CHECK_FALSE(back->first_difference(F).has_value());
  CHECK(cache.file_for(*G, 2) != cache.file_for(*G, 3));
}

TEST_CASE("corrupt cache entries are reported and ignored") {
  auto dir = fresh_dir("corrupt");
  ResultCache cache(dir);
  auto G = catalog_group("S4");
  const auto clean = run_instance(G, 2).format(OutputFormat::Tsv);
  std::vector<std::string> warnings;
  CHECK(run_instance(G, 2, &cache, &warnings).format(OutputFormat::Tsv) == clean);
  CHECK(warnings.empty());
  CHECK(run_instance(G, 2, &cache, &warnings).format(OutputFormat::Tsv) == clean);  // warm

  for (const char* junk : {"not json", "{\"version\": 1}", "{}"}) {
    std::ofstream(cache.file_for(*G, 2)) << junk;
    CHECK(code_of([&] { cache.load(G, 2); }) == ErrorCode::CacheCorrupt);
    warnings.clear();
    CHECK(run_instance(G, 2, &cache, &warnings).format(OutputFormat::Tsv) == clean);
    CHECK(warnings.size() == 1);
  }
}

TEST_CASE("atomic writes leave no temporary files") {
  auto dir = fresh_dir("atomic");
  write_atomically(dir / "a.txt", "one\n");
  write_atomically(dir / "a.txt", "two\n");
  CHECK(slurp(dir / "a.txt") == "two\n");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
  CHECK(files == 1);
}

TEST_CASE("instance reports") {
  auto r = run_instance(catalog_group("SL23"), 2);
  CHECK_FALSE(r.hard_failure);
  CHECK_FALSE(r.contradiction);
  CHECK(r.file_stem() == "SL23_p2");
  auto text = r.format(OutputFormat::Text);
  CHECK(text.rfind("# SL23 p=2\n", 0) == 0);
  auto tsv = r.format(OutputFormat::Tsv);
  CHECK(tsv.find("axioms\tok\n") != std::string::npos);
  CHECK(tsv.find("essential\tnone") != std::string::npos);
  CHECK(tsv.find("status\tok\n") != std::string::npos);
}

TEST_CASE("suite scope") {
  auto dir = fresh_dir("suite");
  RunConfig c;
  c.cache_dir = dir / "cache";
  c.report_dir = dir / "reports";
  c.output_format = OutputFormat::Tsv;

  SUBCASE("empty") {
    auto s = run_suite(c, false, {});
    CHECK(s.instances == 0);
    CHECK(s.exit_code() == 0);
    CHECK(fs::exists(c.report_dir / "summary.tsv"));
  }
  SUBCASE("files, with one above the cap") {
    std::ofstream(dir / "d8.grp") << "group D8\nperm 4\n(1 2)\n(1 3 2 4)\n";
    std::ofstream(dir / "s5.grp") << "group S5\nperm 5\n(1 2)\n(1 2 3 4 5)\n";
    c.order_cap = 100;
    auto s = run_suite(c, false, {(dir / "d8.grp").string(), (dir / "s5.grp").string()});
    CHECK(s.instances == 1);
    CHECK(s.passed == 1);
    CHECK(s.skipped == 1);
    CHECK(fs::exists(c.report_dir / "D8_p2.tsv"));
    apply_limits(RunConfig{});
  }
  SUBCASE("catalog under a small cap skips the large entries") {
    c.order_cap = 40;
    auto s = run_suite(c, true, {});
    CHECK(s.failed == 0);
    std::size_t by_entry = 0;
    for (const auto& r : s.reports)
      if (r.p == 0) {
        ++by_entry;
        CHECK(r.skipped.find("exceeds cap 40") != std::string::npos);
      }
    CHECK(by_entry == 2);  // GL23 and Qd3
    CHECK(s.passed + s.skipped == s.reports.size());
    apply_limits(RunConfig{});
  }
}

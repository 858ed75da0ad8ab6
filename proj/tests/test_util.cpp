#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <map>
#include <set>

#include "homcheck/util.hpp"
#include "temp.hpp"

using namespace homcheck;

TEST_CASE("split and trim") {
  CHECK(split("a\tb\tc", '\t') == std::vector<std::string>{"a", "b", "c"});
  CHECK(split("a\t\tb", '\t') == std::vector<std::string>{"a", "", "b"});
  CHECK(split("", '\t') == std::vector<std::string>{""});
  CHECK(trim("  x \t") == "x");
  CHECK(trim("") == "");
  CHECK(trim(" \t ") == "");
  CHECK(join({"a", "b"}, ",") == "a,b");
  CHECK(join({}, ",") == "");
}

TEST_CASE("tsv row iteration skips blanks and routes comments") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.tsv", "# head\na\tb\n\n  \nc\td\n# tail\n");
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
  for_each_tsv_row(
      path, [&](const std::vector<std::string>& f, std::size_t) { rows.push_back(f); },
      [&](const std::string& c, std::size_t) { comments.push_back(c); });
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b"});
  CHECK(rows[1] == std::vector<std::string>{"c", "d"});
  CHECK(comments == std::vector<std::string>{"# head", "# tail"});
}

TEST_CASE("tsv row numbers are 1-based file lines") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.tsv", "# c\nx\n\ny\n");
  std::vector<std::size_t> lines;
  for_each_tsv_row(path,
                   [&](const std::vector<std::string>&, std::size_t line) {
                     lines.push_back(line);
                   });
  CHECK(lines == std::vector<std::size_t>{2, 4});
}

TEST_CASE("rng is reproducible and uniform-bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t x = a.below(17);
    CHECK(x == b.below(17));
    CHECK(x < 17);
  }
  Rng c(7);
  bool all_same = true;
  std::uint64_t first = c.below(1000);
  for (int i = 0; i < 50; ++i) all_same = all_same && (c.below(1000) == first);
  CHECK_FALSE(all_same);
}

TEST_CASE("rng sample returns k sorted distinct elements") {
  std::vector<int> v{5, 1, 9, 3, 7, 2, 8};
  Rng rng(3);
  auto s = rng.sample(v, 4);
  REQUIRE(s.size() == 4);
  CHECK(std::is_sorted(s.begin(), s.end()));
  std::set<int> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 4);
  for (int x : s) CHECK(std::count(v.begin(), v.end(), x) == 1);
  // whole-vector sample is a permutation restored by sorting
  Rng rng2(3);
  auto all = rng2.sample(v, v.size());
  auto sorted_v = v;
  std::sort(sorted_v.begin(), sorted_v.end());
  CHECK(all == sorted_v);
}

TEST_CASE("rng shuffle permutes in place") {
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  auto orig = v;
  Rng rng(11);
  rng.shuffle(v);
  auto sorted_v = v;
  std::sort(sorted_v.begin(), sorted_v.end());
  CHECK(sorted_v == orig);
}

TEST_CASE("parallel_map preserves index order at any thread count") {
  auto square = [](std::size_t i) { return i * i; };
  auto serial = parallel_map<std::size_t>(100, 1, square);
  auto parallel = parallel_map<std::size_t>(100, 8, square);
  CHECK(serial == parallel);
  for (std::size_t i = 0; i < 100; ++i) CHECK(serial[i] == i * i);
  CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("thread_cap reads HOMCHECK_THREADS") {
  const char* old = std::getenv("HOMCHECK_THREADS");
  std::string saved = old ? old : "";
  setenv("HOMCHECK_THREADS", "3", 1);
  CHECK(thread_cap() == 3);
  setenv("HOMCHECK_THREADS", "1", 1);
  CHECK(thread_cap() == 1);
  setenv("HOMCHECK_THREADS", "0", 1);
  CHECK(thread_cap() >= 1);  // invalid values fall back, never zero
  setenv("HOMCHECK_THREADS", "garbage", 1);
  CHECK(thread_cap() >= 1);
  unsetenv("HOMCHECK_THREADS");
  CHECK(thread_cap() >= 1);
  if (old)
    setenv("HOMCHECK_THREADS", saved.c_str(), 1);
  else
    unsetenv("HOMCHECK_THREADS");
}

TEST_CASE("read and write round-trip bytes") {
  testutil::TempDir tmp;
  std::string content = "line1\nline2\t tab\n";
  auto path = tmp.write("f.txt", "");
  write_file(path, content);
  CHECK(read_file(path) == content);
}

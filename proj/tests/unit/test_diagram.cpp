#include <doctest.h>

#include <algorithm>
#include <set>

#include "diagram.hpp"
#include "error.hpp"

using namespace bratspec;

namespace {

// Walks over vertex sequences, weighting each step by the number of parallel edges.
long brute_count(const IntMatrix& a, int g, int n) {
  if (n == 0) return 1;
  const int r = static_cast<int>(a.size());
  long total = 0;
  std::vector<int> seq(n);
  auto rec = [&](auto&& self, int k, long weight) -> void {
    if (k == n) {
      total += weight;
      return;
    }
    for (int v = 0; v < r; ++v) {
      if (k == 0) {
        seq[0] = v;
        self(self, 1, g);
      } else if (a[seq[k - 1]][v] > 0) {
        seq[k] = v;
        self(self, k + 1, weight * a[seq[k - 1]][v]);
      }
    }
  };
  rec(rec, 0, 1);
  return total;
}

}  // namespace

TEST_CASE("abelianization counts occurrences") {
  auto fib = SubstitutionRule::from_strings({{'a', "ab"}, {'b', "a"}});
  CHECK(abelianize(fib) == IntMatrix{{1, 1}, {1, 0}});
  auto conj = SubstitutionRule::from_strings({{'a', "baa"}, {'b', "ba"}});
  CHECK(abelianize(conj) == IntMatrix{{2, 1}, {1, 1}});
  auto skew = SubstitutionRule::from_strings({{'a', "aab"}, {'b', "a"}});
  CHECK(abelianize(skew) == IntMatrix{{2, 1}, {1, 0}});
}

TEST_CASE("matrix validation") {
  CHECK(is_primitive({{1, 1}, {1, 0}}));
  CHECK_FALSE(is_primitive({{1, 0}, {0, 1}}));
  CHECK_FALSE(is_primitive({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(BratteliDiagram::build({{1}}, 1), Error);
  CHECK_THROWS_AS(BratteliDiagram::build({{1, 0}, {1, 1}}, 1), Error);
  CHECK_THROWS_AS(BratteliDiagram::build({{1, -1}, {1, 1}}, 1), Error);
  CHECK_THROWS_AS(BratteliDiagram::build({{1, 1}, {1}}, 1), Error);
  CHECK_NOTHROW(BratteliDiagram::build({{2}}, 1));
}

TEST_CASE("path enumeration matches a brute-force count") {
  const std::vector<std::pair<IntMatrix, int>> cases{
      {{{1, 1}, {1, 0}}, 1}, {{{2, 1}, {1, 1}}, 20}, {{{1, 1}, {1, 1}}, 1}, {{{2}}, 1}, {{{0, 1, 1}, {1, 0, 1}, {2, 1, 0}}, 3}};
  for (const auto& [a, g] : cases) {
    auto d = BratteliDiagram::build(a, g);
    for (int n = 1; n <= 7; ++n) {
      PathTable t = enumerate_paths(d, n);
      CHECK(static_cast<long>(t.paths.size()) == brute_count(a, g, n));
      CHECK(predicted_path_count(d, n) == brute_count(a, g, n));
      CHECK(std::is_sorted(t.paths.begin(), t.paths.end()));
      CHECK(std::set<Path>(t.paths.begin(), t.paths.end()).size() == t.paths.size());
      for (const auto& p : t.paths) {
        CHECK(p.length() == n);
        CHECK(is_valid(d, p));
      }
    }
  }
}

TEST_CASE("path cap") {
  auto d = BratteliDiagram::build({{2, 1}, {1, 1}}, 20);
  CHECK_THROWS_AS(enumerate_paths(d, 6, 1000), Error);
}

TEST_CASE("edges sorted by source, range, occurrence") {
  auto d = BratteliDiagram::build({{2, 1}, {1, 1}}, 1);
  const auto& e = d.edges();
  REQUIRE(e.size() == 5);
  for (std::size_t i = 1; i < e.size(); ++i)
    CHECK(std::tie(e[i - 1].source, e[i - 1].range, e[i - 1].occurrence) <
          std::tie(e[i].source, e[i].range, e[i].occurrence));
  CHECK(d.edge_label(0) == "a>a#1");
  CHECK(d.edge_label(1) == "a>a#2");
  CHECK(d.edge_label(2) == "a>b");
}

TEST_CASE("dual diagram is edge composability") {
  auto d = BratteliDiagram::build({{1, 1}, {1, 0}}, 1);
  auto dual = dual_diagram(d);
  CHECK(dual.matrix() == IntMatrix{{1, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  // Generation-n dual paths are generation-(n+1) paths of the original, minus the root edge label.
  for (int n = 1; n <= 8; ++n) CHECK(predicted_path_count(dual, n) == predicted_path_count(d, n + 1));
}

TEST_CASE("path ids and prefixes") {
  auto d = BratteliDiagram::build({{1, 1}, {1, 0}}, 1);
  PathTable t = enumerate_paths(d, 3);
  std::set<std::string> ids;
  for (const auto& p : t.paths) ids.insert(path_id(d, p));
  CHECK(ids == std::set<std::string>{"a.a.a", "a.a.b", "a.b.a", "b.a.a", "b.a.b"});
  CHECK(path_id(d, Path{}) == "o");
  Path lcp = longest_common_prefix(t.paths[0], t.paths[1]);
  CHECK(lcp.length() == 2);
  CHECK(t.paths[0].prefix(2) == lcp);
}

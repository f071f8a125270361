#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "cambrian/coxeter.hpp"
#include "doctest.h"

using namespace cambrian;

namespace {

// independent oracle: closure of the simple roots under both reflections,
// straight from the cosine matrix, no CoxeterSystem machinery
int dihedral_positive_roots_bruteforce(int m) {
  double b = -std::cos(3.14159265358979323846 / m);
  auto reflect = [&](int s, std::array<double, 2> v) {
    double bx = (s == 0) ? v[0] + b * v[1] : b * v[0] + v[1];
    v[s] -= 2 * bx;
    return v;
  };
  std::vector<std::array<double, 2>> roots{{1, 0}, {0, 1}};
  auto find = [&](std::array<double, 2> v) {
    for (auto& r : roots)
      if (std::fabs(r[0] - v[0]) < 1e-9 && std::fabs(r[1] - v[1]) < 1e-9) return true;
    return false;
  };
  for (std::size_t h = 0; h < roots.size(); ++h)
    for (int s = 0; s < 2; ++s) {
      auto img = reflect(s, roots[h]);
      bool positive = img[0] > 1e-9 || (std::fabs(img[0]) < 1e-9 && img[1] > 1e-9);
      if (positive && !find(img)) roots.push_back(img);
    }
  return static_cast<int>(roots.size());
}

// prefix-of-a-reduced-word order, computed from the word definition alone
std::map<std::vector<std::int32_t>, std::set<std::vector<std::int32_t>>> g_prefix_memo;

std::set<std::vector<std::int32_t>> prefix_set(const CoxeterSystem& sys, const Element& w) {
  auto it = g_prefix_memo.find(w.table());
  if (it != g_prefix_memo.end()) return it->second;
  std::set<std::vector<std::int32_t>> out{w.table()};
  for (int s : sys.descents_right(w)) {
    auto sub = prefix_set(sys, sys.right_multiply(w, s));
    out.insert(sub.begin(), sub.end());
  }
  g_prefix_memo[w.table()] = out;
  return out;
}

}  // namespace

TEST_CASE("build_system from labels") {
  CHECK(enumerate_group(CoxeterSystem::build("A3")).order() == 24);
  CHECK(enumerate_group(CoxeterSystem::build("B2")).order() == 8);

  CoxeterSystem i23 = CoxeterSystem::build("I2(3)");
  CHECK(enumerate_group(i23).order() == 6);
  CHECK(i23.num_positive_roots() == 3);
  CHECK(i23.num_positive_roots() == dihedral_positive_roots_bruteforce(3));
  for (int m = 4; m <= 8; ++m)
    CHECK(CoxeterSystem::build("I2(" + std::to_string(m) + ")").num_positive_roots() ==
          dihedral_positive_roots_bruteforce(m));
}

TEST_CASE("B2 element list") {
  CoxeterSystem sys = CoxeterSystem::build("B2");
  EnumeratedGroup g = enumerate_group(sys);
  std::set<std::string> labels(g.lattice.labels.begin(), g.lattice.labels.end());
  std::set<std::string> expect{"e", "s1", "s2", "s1s2", "s2s1", "s1s2s1", "s2s1s2", "s1s2s1s2"};
  CHECK(labels == expect);
  CHECK(sys.product_of_word({0, 1, 0, 1}) == sys.product_of_word({1, 0, 1, 0}));
}

TEST_CASE("matrix validation and infinite type") {
  CoxeterMatrix bad;
  bad.rank = 2;
  bad.m = {{1, 3}, {2, 1}};
  CHECK_THROWS_AS(CoxeterSystem::build(bad), BadMatrix);

  // affine A~2: every pair braided, infinitely many roots
  CoxeterMatrix affine;
  affine.rank = 3;
  affine.m = {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  Caps caps;
  caps.max_positive_roots = 500;
  CHECK_THROWS_AS(CoxeterSystem::build(affine, caps), InfiniteType);
}

TEST_CASE("multiplication laws") {
  CoxeterSystem a2 = CoxeterSystem::build("A2");
  CHECK(a2.multiply(a2.generator(0), a2.generator(0)).is_identity());
  CHECK(a2.product_of_word({0, 1, 0}) == a2.product_of_word({1, 0, 1}));

  CoxeterSystem b2 = CoxeterSystem::build("B2");
  CHECK(b2.product_of_word({0, 1, 0}) != b2.product_of_word({1, 0, 1}));

  CHECK_THROWS_AS(a2.multiply(a2.generator(0), b2.generator(0)), SystemMismatch);

  // associativity and identity over all of B2
  EnumeratedGroup g = enumerate_group(b2);
  for (const auto& x : g.elements) {
    CHECK(b2.multiply(b2.identity(), x) == x);
    for (const auto& y : g.elements)
      CHECK(b2.multiply(b2.inverse(y), b2.multiply(y, x)) == x);
  }
}

TEST_CASE("length and descents") {
  CoxeterSystem a3 = CoxeterSystem::build("A3");
  CHECK(a3.identity().length() == 0);
  CHECK(a3.descents_left(a3.identity()).empty());
  CHECK(a3.descents_right(a3.identity()).empty());
  CHECK(a3.descents_left(a3.generator(1)) == std::vector<int>{1});

  CoxeterSystem b2 = CoxeterSystem::build("B2");
  CHECK(b2.product_of_word({0, 1, 0, 1}).length() == 4);
}

TEST_CASE("length equals Cayley distance in rank 2") {
  for (const char* label : {"A2", "B2", "I2(5)"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    // BFS over plain multiplication, no length() involved
    std::map<std::vector<std::int32_t>, int> dist;
    std::deque<Element> queue{sys.identity()};
    dist[sys.identity().table()] = 0;
    while (!queue.empty()) {
      Element w = queue.front();
      queue.pop_front();
      for (int s = 0; s < sys.rank(); ++s) {
        Element ws = sys.right_multiply(w, s);
        if (!dist.count(ws.table())) {
          dist[ws.table()] = dist[w.table()] + 1;
          queue.push_back(ws);
        }
      }
    }
    for (auto& [table, d] : dist) {
      Element w;
      for (const auto& x : enumerate_group(sys).elements)
        if (x.table() == table) w = x;
      CHECK(w.length() == d);
    }
  }
}

TEST_CASE("reduced words") {
  CoxeterSystem b2 = CoxeterSystem::build("B2");
  CHECK(b2.reduced_word(b2.identity()).empty());

  Element w = b2.product_of_word({1, 0, 1});
  CHECK_FALSE(b2.is_left_descent(0, w));  // s1 cannot start a reduced word
  CHECK(b2.lex_min_reduced_word(w) == std::vector<int>{1, 0, 1});

  CoxeterSystem a3 = CoxeterSystem::build("A3");
  EnumeratedGroup g = enumerate_group(a3);
  const Element& top = g.elements.back();
  CHECK(top.length() == 6);
  CHECK(a3.num_positive_roots() == 6);
  CHECK(static_cast<int>(a3.reduced_word(top).size()) == 6);
  CHECK(a3.product_of_word(a3.reduced_word(top)) == top);

  // lex_min really is lexicographically first among all reduced words
  for (const auto& x : enumerate_group(b2).elements) {
    auto words = b2.all_reduced_words(x);
    std::sort(words.begin(), words.end());
    CHECK(b2.lex_min_reduced_word(x) == words.front());
    for (auto& word : words) CHECK(b2.product_of_word(word) == x);
  }
}

TEST_CASE("weak order agrees with the word-prefix oracle") {
  for (const char* label : {"A2", "B2", "A3", "I2(6)"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    EnumeratedGroup g = enumerate_group(sys);
    g_prefix_memo.clear();
    for (const auto& u : g.elements)
      for (const auto& w : g.elements) {
        bool oracle = prefix_set(sys, w).count(u.table()) > 0;
        CHECK(sys.weak_le(u, w) == oracle);
      }
  }
}

TEST_CASE("B2 prefix facts") {
  CoxeterSystem b2 = CoxeterSystem::build("B2");
  Element s1 = b2.generator(0), s2 = b2.generator(1);
  Element s1s2s1 = b2.product_of_word({0, 1, 0});
  CHECK(b2.weak_le(s1, s1s2s1));
  CHECK_FALSE(b2.weak_le(s2, s1s2s1));
  for (const auto& w : enumerate_group(b2).elements) CHECK(b2.weak_le(b2.identity(), w));
}

TEST_CASE("weak covers") {
  CoxeterSystem a3 = CoxeterSystem::build("A3");
  auto covers = a3.weak_covers(a3.identity());
  REQUIRE(covers.size() == 3);
  for (int s = 0; s < 3; ++s) CHECK(covers[s] == a3.generator(s));

  // cover law: one new inversion per cover
  CoxeterSystem b3 = CoxeterSystem::build("B3");
  for (const auto& w : enumerate_group(b3).elements)
    for (const auto& ws : b3.weak_covers(w)) {
      Bits a = b3.inversion_set(w), b = b3.inversion_set(ws);
      CHECK(b.contains(a));
      CHECK(b.count() == a.count() + 1);
    }
}

TEST_CASE("braid relations hold in the representation") {
  for (const char* label : {"B3", "H3", "A2xA1"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    for (int i = 0; i < sys.rank(); ++i)
      for (int j = i + 1; j < sys.rank(); ++j) {
        Element p = sys.multiply(sys.generator(i), sys.generator(j));
        Element x = p;
        int order = 1;
        while (!x.is_identity()) {
          x = sys.multiply(x, p);
          ++order;
        }
        CHECK(order == sys.matrix().m[i][j]);
      }
  }
}

TEST_CASE("enumerate_group") {
  EnumeratedGroup b2 = enumerate_group(CoxeterSystem::build("B2"));
  CHECK(b2.order() == 8);
  // the weak order on B2 is an 8-cycle
  std::vector<int> deg(8, 0);
  for (auto& [lo, hi] : b2.lattice.covers) {
    deg[lo]++;
    deg[hi]++;
  }
  for (int d : deg) CHECK(d == 2);
  CHECK(b2.lattice.num_edges() == 8);

  CoxeterSystem h3 = CoxeterSystem::build("H3");
  EnumeratedGroup gh = enumerate_group(h3);
  CHECK(gh.order() == 120);
  CHECK(h3.num_positive_roots() == 15);
  CHECK(gh.elements.back().length() == 15);

  Caps tiny;
  tiny.max_elements = 10;
  CHECK_THROWS_AS(enumerate_group(CoxeterSystem::build("A3"), tiny), CapExceeded);

  // deterministic re-enumeration
  EnumeratedGroup again = enumerate_group(CoxeterSystem::build("H3"));
  CHECK(again.lattice.labels == gh.lattice.labels);
  CHECK(again.lattice.covers == gh.lattice.covers);
}

TEST_CASE("label parsing") {
  CHECK(CoxeterLabel::parse("a2xa1").str() == "A2xA1");
  CHECK(CoxeterLabel::parse("A2xA1").rank() == 3);
  CHECK(CoxeterLabel::parse("I2(7)").rank() == 2);
  CHECK(CoxeterLabel::parse("h3").str() == "H3");
  CHECK_THROWS_AS(CoxeterLabel::parse("Z3"), BadInput);
  CHECK_THROWS_AS(CoxeterLabel::parse("D3"), BadInput);
  CHECK_THROWS_AS(CoxeterLabel::parse("A0"), BadInput);
  CHECK_THROWS_AS(CoxeterLabel::parse("I2(1)"), BadInput);
  CHECK_THROWS_AS(CoxeterLabel::parse("A2x"), BadInput);

  CHECK(enumerate_group(CoxeterSystem::build("A2xA1")).order() == 12);
}

TEST_CASE("root counts for larger types") {
  CHECK(CoxeterSystem::build("D4").num_positive_roots() == 12);
  CHECK(CoxeterSystem::build("F4").num_positive_roots() == 24);
  CHECK(CoxeterSystem::build("H4").num_positive_roots() == 60);
  CHECK(CoxeterSystem::build("E6").num_positive_roots() == 36);
}

TEST_CASE("system json") {
  CoxeterSystem b2 = CoxeterSystem::build("B2");
  std::string j = system_json(b2, 8);
  CHECK(j.find("\"rank\": 2") != std::string::npos);
  CHECK(j.find("\"positive_root_count\": 4") != std::string::npos);
  CHECK(j.find("\"order\": 8") != std::string::npos);
}

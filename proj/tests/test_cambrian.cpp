#include <Eigen/Dense>
#include <algorithm>
#include <set>

#include "cambrian/cambrian.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/typea.hpp"
#include "doctest.h"

using namespace cambrian;

TEST_CASE("coxeter elements and orientations") {
  CoxeterSystem a3 = CoxeterSystem::build("A3");
  Orientation o = Orientation::parse("1>2,3>2", a3.matrix());
  CoxeterElement c = coxeter_element(a3, o);
  CHECK(c.word == std::vector<int>{0, 2, 1});  // s1 s3 s2
  CHECK(c.elem == a3.product_of_word({2, 0, 1}));  // = s3 s1 s2

  CoxeterSystem b2 = CoxeterSystem::build("B2");
  CoxeterElement cb = coxeter_element(b2, Orientation::parse("1>2", b2.matrix()));
  CHECK(cb.word == std::vector<int>{0, 1});

  CoxeterSystem a1 = CoxeterSystem::build("A1");
  CoxeterElement c1 = coxeter_element(a1, Orientation{});
  CHECK(c1.word == std::vector<int>{0});

  // round trip on every acyclic orientation of A3 and B3
  for (const char* label : {"A3", "B3"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    for (const auto& ori : all_acyclic_orientations(sys.matrix())) {
      Orientation back = orientation_of(sys, coxeter_element(sys, ori));
      REQUIRE(back.edges.size() == ori.edges.size());
      for (std::size_t k = 0; k < ori.edges.size(); ++k)
        CHECK(back.edges[k].a_before_b == ori.edges[k].a_before_b);
    }
  }

  // a directed 3-cycle on a triangle diagram is rejected
  CoxeterMatrix tri;
  tri.rank = 3;
  tri.m = {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  CHECK(all_acyclic_orientations(tri).size() == 6);  // 8 assignments minus 2 cycles

  CHECK_THROWS_AS(coxeter_element_from_word(a3, {0, 1}), BadInput);
  CHECK_THROWS_AS(coxeter_element_from_word(a3, {0, 1, 1}), BadInput);
}

TEST_CASE("Cambrian generating edges") {
  WeakOrder a3 = WeakOrder::build(CoxeterSystem::build("A3"));
  const CoxeterSystem& sys = a3.sys();
  CoxeterElement c = coxeter_element_from_word(sys, {0, 1, 2});
  Bits edges = cambrian_generating_edges(a3, c);
  CHECK(edges.count() == 2);  // one edge per diagram edge when m = 3
  // the S4 edges are 1324 ⋖ 3124 and 1243 ⋖ 1423
  std::set<std::pair<std::string, std::string>> expect{{"1324", "3124"}, {"1243", "1423"}};
  std::set<std::pair<std::string, std::string>> got;
  for (int e : edges.members()) {
    auto [lo, hi] = a3.lattice().covers[e];
    got.insert({typea::perm_str(typea::element_to_perm(sys, a3.element(lo))),
                typea::perm_str(typea::element_to_perm(sys, a3.element(hi)))});
  }
  CHECK(got == expect);

  WeakOrder b2 = WeakOrder::build(CoxeterSystem::build("B2"));
  CoxeterElement cb = coxeter_element_from_word(b2.sys(), {0, 1});
  Bits bedges = cambrian_generating_edges(b2, cb);
  CHECK(bedges.count() == 2);  // chain s2 ⋖ s2s1 ⋖ s2s1s2
  std::set<int> lows;
  for (int e : bedges.members()) lows.insert(b2.lattice().covers[e].first);
  CHECK(lows.count(b2.index_of(b2.sys().generator(1))) == 1);
}

TEST_CASE("B2 sorting words match the worked example") {
  CoxeterSystem b2 = CoxeterSystem::build("B2");
  EnumeratedGroup g = enumerate_group(b2);
  std::set<std::string> words;
  for (const auto& w : g.elements) words.insert(sorting_word(b2, w, {0, 1}).str());
  std::set<std::string> expect{"e",       "s1",      "s1s2",   "s1s2|s1",
                               "s1s2|s1s2", "s2",      "s2|s1",  "s2|s1s2"};
  CHECK(words == expect);

  // the two non-sortable elements
  CoxeterElement c = coxeter_element_from_word(b2, {0, 1});
  int sortable = 0;
  for (const auto& w : g.elements)
    if (is_sortable(b2, w, c)) ++sortable;
  CHECK(sortable == 6);
  CHECK_FALSE(is_sortable(b2, b2.product_of_word({1, 0}), c));
  CHECK_FALSE(is_sortable(b2, b2.product_of_word({1, 0, 1}), c));
  CHECK(is_sortable(b2, b2.identity(), c));
}

TEST_CASE("sorting word structure") {
  CoxeterSystem a3 = CoxeterSystem::build("A3");
  EnumeratedGroup g = enumerate_group(a3);

  // identity: empty word, every generator skipped at position 0
  SortingWord empty = sorting_word(a3, a3.identity(), {0, 1, 2});
  CHECK(empty.letters.empty());
  CHECK(empty.skip == std::vector<int>{0, 0, 0});

  // longest element of S4
  SortingWord w0 = sorting_word(a3, g.elements.back(), {0, 1, 2});
  CHECK(w0.str() == "s1s2s3|s1s2|s1");
  REQUIRE(w0.subsets.size() == 3);
  CHECK(w0.subsets[0] == std::vector<int>{0, 1, 2});
  CHECK(w0.subsets[1] == std::vector<int>{0, 1});
  CHECK(w0.subsets[2] == std::vector<int>{0});

  // sorting words are reduced words for their element
  for (const auto& w : g.elements) {
    SortingWord sw = sorting_word(a3, w, {0, 1, 2});
    CHECK(static_cast<int>(sw.letters.size()) == w.length());
    CHECK(a3.product_of_word(sw.letters) == w);
  }
}

TEST_CASE("sortability does not depend on the reduced word for c") {
  for (const char* label : {"A3", "B3"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    EnumeratedGroup g = enumerate_group(sys);
    for (const auto& o : all_acyclic_orientations(sys.matrix())) {
      CoxeterElement c = coxeter_element(sys, o);
      auto words = sys.all_reduced_words(c.elem);
      for (const auto& w : g.elements) {
        bool first = sorting_word(sys, w, words[0]).sortable();
        for (std::size_t k = 1; k < words.size(); ++k)
          CHECK(sorting_word(sys, w, words[k]).sortable() == first);
      }
    }
  }
}

TEST_CASE("recursive sortability agrees with the direct definition") {
  for (const char* label : {"B2", "A3", "I2(5)"}) {
    CoxeterSystem sys = CoxeterSystem::build(label);
    EnumeratedGroup g = enumerate_group(sys);
    for (const auto& o : all_acyclic_orientations(sys.matrix())) {
      CoxeterElement c = coxeter_element(sys, o);
      for (const auto& w : g.elements)
        CHECK(is_sortable(sys, w, c) == is_sortable_recursive(sys, w, c));
    }
  }
}

TEST_CASE("search tree enumerates the sortables") {
  WeakOrder a3 = WeakOrder::build(CoxeterSystem::build("A3"));
  CoxeterElement c = coxeter_element_from_word(a3.sys(), {0, 1, 2});
  SearchTree tree = sortable_search_tree(a3, c);
  CHECK(tree.nodes.size() == 14);
  CHECK(tree.parent[0] == -1);
  CHECK(tree.nodes[0] == 0);

  // parent = sorting word minus its last letter
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    SortingWord sw = sorting_word(a3.sys(), a3.element(tree.nodes[i]), c.word);
    std::vector<int> head(sw.letters.begin(), sw.letters.end() - 1);
    CHECK(a3.sys().product_of_word(head) == a3.element(tree.nodes[tree.parent[i]]));
  }

  WeakOrder b3 = WeakOrder::build(CoxeterSystem::build("B3"));
  for (const auto& o : all_acyclic_orientations(b3.sys().matrix())) {
    SearchTree t = sortable_search_tree(b3, coxeter_element(b3.sys(), o));
    CHECK(t.nodes.size() == 20);
  }
  WeakOrder h3 = WeakOrder::build(CoxeterSystem::build("H3"));
  CoxeterElement ch = coxeter_element_from_word(h3.sys(), {0, 1, 2});
  CHECK(sortable_search_tree(h3, ch).nodes.size() == 32);
  // brute-force cross-check
  int count = 0;
  for (int v = 0; v < h3.size(); ++v)
    if (is_sortable(h3.sys(), h3.element(v), ch)) ++count;
  CHECK(count == 32);
}

TEST_CASE("Cambrian lattice") {
  WeakOrder b2 = WeakOrder::build(CoxeterSystem::build("B2"));
  CoxeterElement c = coxeter_element_from_word(b2.sys(), {0, 1});
  CambrianLattice camb = cambrian_lattice(b2, c);
  CHECK(camb.lattice.n == 6);
  // hexagonal Hasse diagram: 2-regular
  std::vector<int> deg(6, 0);
  for (auto& [lo, hi] : camb.lattice.covers) {
    deg[lo]++;
    deg[hi]++;
  }
  for (int d : deg) CHECK(d == 2);

  WeakOrder a3 = WeakOrder::build(CoxeterSystem::build("A3"));
  CambrianLattice tam = cambrian_lattice(a3, coxeter_element_from_word(a3.sys(), {0, 1, 2}));
  CHECK(tam.lattice.n == 14);
  CHECK(tam.lattice.num_edges() == 21);  // 3-regular on 14 vertices
}

TEST_CASE("c-vectors") {
  CoxeterSystem b2 = CoxeterSystem::build("B2");
  CoxeterElement c = coxeter_element_from_word(b2, {0, 1});

  CVectorSet id_cv = c_vectors(b2, b2.identity(), c);
  CHECK(id_cv.signed_roots == std::vector<int>{1, 2});  // the simple roots

  CVectorSet s2_cv = c_vectors(b2, b2.generator(1), c);
  CHECK(s2_cv.signed_roots[0] == 1);   // alpha_1
  CHECK(s2_cv.signed_roots[1] == -2);  // -alpha_2

  Element s1s2 = b2.product_of_word({0, 1});
  CVectorSet cv = c_vectors(b2, s1s2, c);
  CHECK(cv.signed_roots[0] == b2.apply_to_root(s1s2, 1));
  CHECK(cv.signed_roots[1] == b2.apply_to_root(s1s2, 2));

  CHECK_THROWS_AS(c_vectors(b2, b2.product_of_word({1, 0}), c), NotSortable);

  // per-generator independence from the word for c, and linear independence
  CoxeterSystem a3 = CoxeterSystem::build("A3");
  EnumeratedGroup g = enumerate_group(a3);
  for (const auto& o : all_acyclic_orientations(a3.matrix())) {
    CoxeterElement ca = coxeter_element(a3, o);
    auto words = a3.all_reduced_words(ca.elem);
    for (const auto& v : g.elements) {
      if (!is_sortable(a3, v, ca)) continue;
      CVectorSet base = c_vectors(a3, v, ca);
      for (std::size_t k = 1; k < words.size(); ++k) {
        CoxeterElement alt{words[k], ca.elem};
        CHECK(c_vectors(a3, v, alt).signed_roots == base.signed_roots);
      }
      Eigen::Matrix3d M;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = base.vectors[i][j];
      CHECK(std::fabs(M.determinant()) > 1e-9);
    }
  }
}

TEST_CASE("counts on larger types") {
  // vertex counts of the generalized associahedra: D4 = 50, F4 = 105, H4 = 280
  for (auto [label, expected] : {std::pair<const char*, int>{"D4", 50}, {"F4", 105}}) {
    WeakOrder w = WeakOrder::build(CoxeterSystem::build(label));
    CoxeterElement c = coxeter_element_from_word(w.sys(), {0, 1, 2, 3});
    Congruence theta = cambrian_congruence(w, c);
    CHECK(theta.num_classes() == expected);
    int count = 0;
    for (int v = 0; v < w.size(); ++v)
      if (is_sortable(w.sys(), w.element(v), c)) ++count;
    CHECK(count == expected);
  }
  CoxeterSystem h4 = CoxeterSystem::build("H4");
  EnumeratedGroup g = enumerate_group(h4);
  CoxeterElement c = coxeter_element_from_word(h4, {0, 1, 2, 3});
  int count = 0;
  for (const auto& v : g.elements)
    if (is_sortable(h4, v, c)) ++count;
  CHECK(count == 280);
}

TEST_CASE("exports") {
  WeakOrder b2 = WeakOrder::build(CoxeterSystem::build("B2"));
  CoxeterElement c = coxeter_element_from_word(b2.sys(), {0, 1});
  std::string dot = search_tree_dot(b2, sortable_search_tree(b2, c));
  CHECK(dot.find("digraph") != std::string::npos);
  std::string json = sortable_records_json(b2, c);
  CHECK(json.find("\"sorting_word\"") != std::string::npos);
  CHECK(json.find("\"skip_table\"") != std::string::npos);
  CHECK(json.find("\"c_vectors\"") != std::string::npos);
  CHECK(json == sortable_records_json(b2, c));
}

#include "cambrian/verify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cambrian/cambrian.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/fan.hpp"
#include "cambrian/kernels.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/typea.hpp"

namespace cambrian {

namespace {

struct Suite {
  std::ostringstream report;
  int pass = 0, fail = 0;

  void check(const std::string& name, bool ok, const std::string& witness = "") {
    if (ok) {
      report << "PASS " << name << "\n";
      ++pass;
    } else {
      report << "FAIL " << name << (witness.empty() ? "" : ": " + witness) << "\n";
      ++fail;
    }
  }

  void run(const std::string& name, const std::function<std::string()>& body) {
    try {
      std::string witness = body();
      check(name, witness.empty(), witness);
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }
};

// word-definition oracle for the weak order: u <= w iff u is reachable from w
// by peeling right descents
std::vector<Bits> prefix_down_sets(const WeakOrder& w) {
  int n = w.size();
  std::vector<Bits> down(n, Bits(n));
  // elements are BFS-ordered by length, so peeled elements come earlier
  for (int v = 0; v < n; ++v) {
    down[v].set(v);
    for (int s : w.sys().descents_right(w.element(v))) {
      int u = w.index_of(w.sys().right_multiply(w.element(v), s));
      down[v] |= down[u];
    }
  }
  return down;
}

// smallest equivalence containing the seed pairs and closed under meet/join
// substitution
std::vector<int> congruence_closure(const kern::MeetJoinTables& t,
                                    std::vector<std::pair<int, int>> seeds) {
  int n = t.n;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::deque<std::pair<int, int>> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[ra] = rb;
    for (int z = 0; z < n; ++z) {
      if (find(t.m(a, z)) != find(t.m(b, z))) work.push_back({t.m(a, z), t.m(b, z)});
      if (find(t.j(a, z)) != find(t.j(b, z))) work.push_back({t.j(a, z), t.j(b, z)});
    }
  }
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = find(i);
  return cls;
}

Bits contracted_of_partition(const HasseLattice& L, const std::vector<int>& cls) {
  Bits out(L.num_edges());
  for (int e = 0; e < L.num_edges(); ++e)
    if (cls[L.covers[e].first] == cls[L.covers[e].second]) out.set(e);
  return out;
}

std::string check_group(Suite& suite, const std::string& label, const WeakOrder& w,
                        const VerifyOptions& opt) {
  const CoxeterSystem& sys = w.sys();
  const HasseLattice& L = w.lattice();

  suite.run("orders:" + label, [&] {
    EnumeratedGroup again = enumerate_group(sys);
    if (again.order() != w.group.order()) return std::string("re-enumeration disagrees");
    int top = L.max_element();
    if (w.element(top).length() != sys.num_positive_roots())
      return std::string("longest length != positive root count");
    if (L.min_element() != 0) return std::string("identity is not the minimum");
    return std::string();
  });

  suite.run("braid:" + label, [&] {
    for (int i = 0; i < sys.rank(); ++i)
      for (int j = i + 1; j < sys.rank(); ++j) {
        Element p = sys.multiply(sys.generator(i), sys.generator(j));
        Element x = p;
        int order = 1;
        while (!x.is_identity() && order <= 2 * sys.matrix().m[i][j]) {
          x = sys.multiply(x, p);
          ++order;
        }
        if (order != sys.matrix().m[i][j])
          return "order of s" + std::to_string(i + 1) + "s" + std::to_string(j + 1) + " is " +
                 std::to_string(order);
      }
    return std::string();
  });

  if (w.size() <= 250) {
    suite.run("containment-law:" + label, [&] {
      auto down = prefix_down_sets(w);
      for (int u = 0; u < w.size(); ++u)
        for (int v = 0; v < w.size(); ++v) {
          bool by_words = down[v].test(u);
          bool by_inversions = sys.weak_le(w.element(u), w.element(v));
          if (by_words != by_inversions)
            return "word/inversion order disagree at (" + L.labels[u] + "," + L.labels[v] + ")";
        }
      return std::string();
    });
  }

  suite.run("cover-law:" + label, [&] {
    for (auto& [lo, hi] : L.covers) {
      Bits a = sys.inversion_set(w.element(lo));
      Bits b = sys.inversion_set(w.element(hi));
      if (!b.contains(a) || b.count() != a.count() + 1)
        return "cover (" + L.labels[lo] + "," + L.labels[hi] + ") does not add one inversion";
    }
    return std::string();
  });

  suite.run("polygons:" + label, [&] {
    for (const auto& poly : w.forcing->polygons()) {
      int m = poly.half_length();
      if (m < 2) return std::string("degenerate polygon");
      if (sys.label() && sys.label()->single_type_a() && m != 2 && m != 3)
        return std::string("type-A polygon that is neither quadrilateral nor hexagon");
    }
    return std::string();
  });

  suite.run("closure-props:" + label, [&] {
    int ne = L.num_edges();
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    for (int e = 0; e < ne; ++e) {
      Bits seed(ne);
      seed.set(e);
      Bits c1 = w.forcing->closure(seed);
      if (!c1.contains(seed)) return std::string("closure not extensive");
      if (!(w.forcing->closure(c1) == c1)) return std::string("closure not idempotent");
      int e2 = static_cast<int>(rng() % ne);
      Bits seed2 = seed;
      seed2.set(e2);
      Bits c2 = w.forcing->closure(seed2);
      if (!c2.contains(c1)) return std::string("closure not monotone");
      congruence_from_edges(L, w.reach, c2);  // must not throw
    }
    return std::string();
  });

  if (w.size() <= 48) {
    suite.run("congruence-oracle:" + label, [&] {
      auto tabs = kern::meet_join_tables(L, w.reach);
      if (!tabs.ok) return "not a lattice: " + tabs.witness;
      int ne = L.num_edges();
      auto run_seed = [&](std::vector<int> edges) {
        Bits seed(ne);
        std::vector<std::pair<int, int>> pairs;
        for (int e : edges) {
          seed.set(e);
          pairs.push_back(L.covers[e]);
        }
        Bits closed = w.forcing->closure(seed);
        auto cls = congruence_closure(tabs.tables, pairs);
        return closed == contracted_of_partition(L, cls);
      };
      for (int e = 0; e < ne; ++e)
        if (!run_seed({e})) return "forcing closure != algebraic closure at edge " + std::to_string(e);
      for (int e = 0; e < ne; ++e)
        for (int g = e + 1; g < ne; ++g)
          if (!run_seed({e, g}))
            return "forcing closure != algebraic closure at edges " + std::to_string(e) + "," +
                   std::to_string(g);
      return std::string();
    });
  }

  suite.run("cambrian:" + label, [&] {
    auto tabs = kern::meet_join_tables(L, w.reach);
    if (!tabs.ok) return "weak order is not a lattice: " + tabs.witness;
    for (const auto& o : all_acyclic_orientations(sys.matrix())) {
      CoxeterElement c = coxeter_element(sys, o);
      Congruence theta = cambrian_congruence(w, c);
      auto sortable_flags =
          kern::filter(w.size(), [&](int v) { return is_sortable(sys, w.element(v), c); });
      std::vector<int> sortables;
      for (int v = 0; v < w.size(); ++v)
        if (sortable_flags[v]) sortables.push_back(v);
      std::set<int> bottoms(theta.bottom.begin(), theta.bottom.end());
      if (bottoms != std::set<int>(sortables.begin(), sortables.end()))
        return "class bottoms != sortables for c=" + sys.word_str(c.word);
      CambrianLattice camb = cambrian_lattice(w, c);
      if (static_cast<int>(camb.sortables.size()) != theta.num_classes())
        return "lattice size != class count for c=" + sys.word_str(c.word);
      // direct and recursive sortability agree everywhere
      for (int v = 0; v < w.size(); ++v)
        if (sortable_flags[v] != (is_sortable_recursive(sys, w.element(v), c) ? 1 : 0))
          return "recursive sortability disagrees at " + L.labels[v];
      // sortables form a sublattice of the weak order
      for (std::size_t a = 0; a < sortables.size(); ++a)
        for (std::size_t b = a + 1; b < sortables.size(); ++b) {
          if (!sortable_flags[tabs.tables.m(sortables[a], sortables[b])])
            return "meet of sortables not sortable for c=" + sys.word_str(c.word);
          if (!sortable_flags[tabs.tables.j(sortables[a], sortables[b])])
            return "join of sortables not sortable for c=" + sys.word_str(c.word);
        }
      // Hasse diagram of the Cambrian lattice is n-regular
      std::vector<int> deg(camb.lattice.n, 0);
      for (auto& [lo, hi] : camb.lattice.covers) {
        deg[lo]++;
        deg[hi]++;
      }
      for (int d : deg)
        if (d != sys.rank()) return std::string("Cambrian Hasse diagram is not rank-regular");
      // search tree visits each sortable exactly once
      SearchTree tree = sortable_search_tree(w, c);
      std::set<int> visited(tree.nodes.begin(), tree.nodes.end());
      if (tree.nodes.size() != sortables.size() ||
          visited != std::set<int>(sortables.begin(), sortables.end()))
        return std::string("search tree does not visit the sortables exactly once");
    }
    return std::string();
  });

  suite.run("fan:" + label, [&] {
    Fan coxfan = coxeter_fan(w);
    if (static_cast<int>(coxfan.cones.size()) != w.size())
      return std::string("region count != group order");
    std::string witness;
    if (!region_adjacency_matches_weak_order(w, coxfan, &witness)) return witness;
    for (const auto& o : all_acyclic_orientations(sys.matrix())) {
      CoxeterElement c = coxeter_element(sys, o);
      Congruence theta = cambrian_congruence(w, c);
      CambrianLattice camb = cambrian_lattice(w, c);
      Fan classfan = cambrian_fan_by_classes(w, coxfan, theta);
      Fan cvecfan = cambrian_fan_by_cvectors(w, c, camb.sortables);
      if (classfan.cones.size() != cvecfan.cones.size())
        return std::string("class fan and C-vector fan sizes differ");
      FanCheckReport rep = check_fans(w, coxfan, theta, cvecfan, opt.samples, opt.seed);
      if (!rep.ok()) return "fan sampling failed: " + rep.witness;
      if (!fan_adjacency_matches_cambrian_covers(cvecfan, camb.lattice, &witness)) return witness;
      std::set<std::pair<int, int>> class_adj(classfan.adjacencies.begin(), classfan.adjacencies.end());
      std::set<std::pair<int, int>> cvec_adj(cvecfan.adjacencies.begin(), cvecfan.adjacencies.end());
      if (class_adj != cvec_adj) return std::string("class fan and C-vector fan adjacency differ");
    }
    return std::string();
  });

  return std::string();
}

void check_hexagon(Suite& suite) {
  suite.run("hexagon-forcing", [&] {
    WeakOrder w = WeakOrder::build(CoxeterSystem::build("A2"));
    const HasseLattice& L = w.lattice();
    if (w.forcing->polygons().size() != 1) return std::string("A2 should have one polygonal interval");
    const PolygonalInterval& hex = w.forcing->polygons()[0];
    if (hex.half_length() != 3) return std::string("A2 interval is not a hexagon");
    int ne = L.num_edges();
    for (int e : hex.side_edges()) {
      Bits seed(ne);
      seed.set(e);
      if (w.forcing->closure(seed).count() != 1)
        return std::string("side-edge closure must be the edge alone");
    }
    for (int e : {hex.chain_a.front(), hex.chain_a.back(), hex.chain_b.front(), hex.chain_b.back()}) {
      Bits seed(ne);
      seed.set(e);
      Bits closed = w.forcing->closure(seed);
      Bits expect(ne);
      expect.set(e);
      expect.set(hex.opposite(e));
      for (int s : hex.side_edges()) expect.set(s);
      if (!(closed == expect)) return std::string("bottom/top-edge closure wrong");
    }
    return std::string();
  });
}

void check_tamari_s4(Suite& suite) {
  suite.run("tamari-s4", [&] {
    CoxeterSystem sys = CoxeterSystem::build("A3");
    WeakOrder w = WeakOrder::build(sys);
    const HasseLattice& L = w.lattice();
    // seed edges 1324 ⋖ 3124 and 1243 ⋖ 1423
    auto edge_of = [&](const typea::Perm& lo, const typea::Perm& hi) {
      int a = w.index_of(typea::perm_to_element(sys, lo));
      int b = w.index_of(typea::perm_to_element(sys, hi));
      for (int e = 0; e < L.num_edges(); ++e)
        if (L.covers[e] == std::make_pair(a, b)) return e;
      return -1;
    };
    int e1 = edge_of({1, 3, 2, 4}, {3, 1, 2, 4});
    int e2 = edge_of({1, 2, 4, 3}, {1, 4, 2, 3});
    if (e1 < 0 || e2 < 0) return std::string("seed covers not found");
    Bits seed(L.num_edges());
    seed.set(e1);
    seed.set(e2);
    Congruence theta = congruence_from_edges(L, w.reach, w.forcing->closure(seed));
    if (theta.num_classes() != 14)
      return "Tamari congruence has " + std::to_string(theta.num_classes()) + " classes";
    // the Cambrian congruence for c = s1s2s3 contracts the same edges
    CoxeterElement c = coxeter_element_from_word(sys, {0, 1, 2});
    Congruence camb = cambrian_congruence(w, c);
    if (!(camb.contracted == theta.contracted))
      return std::string("Tamari congruence differs from s1s2s3-Cambrian congruence");
    // quotient isomorphic to the flip lattice under the eta labeling
    typea::PolygonQ q = typea::build_polygon(3, typea::Barring::all_down(3));
    typea::FlipLattice fl = typea::tamari_like_lattice(q);
    if (fl.lattice.n != 14) return std::string("flip lattice size is not 14");
    std::vector<int> f(w.size());
    for (int v = 0; v < w.size(); ++v)
      f[v] = fl.index_of(typea::eta(typea::element_to_perm(sys, w.element(v)), q));
    HasseLattice quot = quotient(L, theta);
    std::set<std::pair<int, int>> qcov, fcov;
    for (auto& [lo, hi] : quot.covers) qcov.insert({f[theta.bottom[lo]], f[theta.bottom[hi]]});
    for (auto& [lo, hi] : fl.lattice.covers) fcov.insert({lo, hi});
    if (qcov != fcov) return std::string("quotient and flip lattice are not isomorphic");
    // eta is a lattice homomorphism over all 24^2 pairs
    Reachability rf(fl.lattice);
    auto tabs = kern::meet_join_tables(fl.lattice, rf);
    if (!tabs.ok) return std::string("flip order not a lattice");
    auto pf = kern::hom_check(f, L, w.reach, tabs.tables);
    if (!pf.ok) return std::string("eta not a homomorphism");
    return std::string();
  });
}

void check_typea_patterns(Suite& suite, const VerifyOptions& opt) {
  suite.run("typea-patterns", [&] {
    using namespace typea;
    Perm x{4, 2, 1, 3};
    if (!contains_pattern(x, Pattern::P312, Barring::all_down(3)))
      return std::string("4213 must contain 312");
    if (contains_pattern(x, Pattern::P132, Barring::all_down(3)))
      return std::string("4213 must avoid 132");
    int max_n = opt.all ? 5 : 4;
    for (int n = 1; n <= max_n; ++n) {
      for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
        Barring b = Barring::all_down(n);
        for (int i = 1; i <= n + 1; ++i)
          if (mask >> (i - 1) & 1) b.up[i] = 1;
        FiberReport rep = fiber_extremes_check(build_polygon(n, b));
        if (!rep.ok) return "n=" + std::to_string(n) + " barring " + b.str() + ": " + rep.witness;
      }
    }
    return std::string();
  });
}

void check_eta_quotient(Suite& suite, const VerifyOptions& opt) {
  suite.run("eta-quotient", [&] {
    int max_n = opt.all ? 4 : 3;
    for (int n = 2; n <= max_n; ++n) {
      CoxeterSystem sys = CoxeterSystem::build("A" + std::to_string(n));
      WeakOrder w = WeakOrder::build(sys);
      for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
        typea::Barring b = typea::Barring::all_down(n);
        for (int i = 1; i <= n + 1; ++i)
          if (mask >> (i - 1) & 1) b.up[i] = 1;
        typea::PolygonQ q = typea::build_polygon(n, b);
        std::string witness;
        if (!typea::verify_eta_is_quotient_map(w, q, &witness))
          return "n=" + std::to_string(n) + " barring " + b.str() + ": " + witness;
      }
    }
    return std::string();
  });
}

void check_determinism(Suite& suite, const VerifyOptions& opt) {
  suite.run("determinism", [&] {
    CoxeterSystem sys = CoxeterSystem::build("A3");
    WeakOrder w = WeakOrder::build(sys);
    CoxeterElement c = coxeter_element_from_word(sys, {0, 1, 2});
    Congruence theta = cambrian_congruence(w, c);
    std::string dot1 = lattice_dot(w.lattice(), &theta.contracted);
    std::string dot2 = lattice_dot(w.lattice(), &theta.contracted);
    if (dot1 != dot2) return std::string("DOT output not reproducible");
    CambrianLattice camb = cambrian_lattice(w, c);
    Fan f1 = cambrian_fan_by_cvectors(w, c, camb.sortables);
    Fan f2 = cambrian_fan_by_cvectors(w, c, camb.sortables);
    std::string svg1 = render_stereographic_svg(f1, sys.weight_sum());
    std::string svg2 = render_stereographic_svg(f2, sys.weight_sum());
    if (svg1 != svg2) return std::string("SVG output not reproducible");
    auto s1 = kern::draw_valid_samples(3, 512, opt.seed, 1e-9, {});
    auto s2 = kern::draw_valid_samples(3, 512, opt.seed, 1e-9, {});
    if (s1.pts != s2.pts) return std::string("sampling not reproducible");
    return std::string();
  });
}

}  // namespace

VerifyResult run_verify(const VerifyOptions& opt) {
  Suite suite;
  std::vector<std::string> labels;
  for (const char* l : {"A1", "A2", "B2", "I2(5)", "I2(6)", "I2(7)", "A3", "B3", "H3"}) {
    CoxeterLabel parsed = CoxeterLabel::parse(l);
    if (parsed.rank() <= opt.max_rank) labels.push_back(l);
  }
  if (opt.all || opt.max_rank >= 4) {
    labels.push_back("A4");
    labels.push_back("A2xA1");
  }
  for (const auto& label : labels) {
    WeakOrder w = WeakOrder::build(CoxeterSystem::build(label));
    check_group(suite, label, w, opt);
  }
  check_hexagon(suite);
  check_tamari_s4(suite);
  check_typea_patterns(suite, opt);
  check_eta_quotient(suite, opt);
  check_determinism(suite, opt);

  VerifyResult res;
  res.ok = (suite.fail == 0);
  suite.report << "SUMMARY pass=" << suite.pass << " fail=" << suite.fail << "\n";
  res.report = suite.report.str();
  return res;
}

}  // namespace cambrian

// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// --cli <path> points at the command-line binary for the determinism checks.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cambrian/cambrian.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/fan.hpp"
#include "cambrian/kernels.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/typea.hpp"

using namespace cambrian;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& witness = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!ok && !witness.empty()) std::cout << " (" << witness << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

struct GroupData {
  WeakOrder w;
  kern::MeetJoinTables tables;
};

std::map<std::string, GroupData>& groups() {
  static std::map<std::string, GroupData> cache;
  return cache;
}

GroupData& group(const std::string& label) {
  auto it = groups().find(label);
  if (it != groups().end()) return it->second;
  WeakOrder w = WeakOrder::build(CoxeterSystem::build(label));
  auto tabs = kern::meet_join_tables(w.lattice(), w.reach);
  if (!tabs.ok) throw NotALattice(tabs.witness);
  auto [pos, inserted] =
      groups().emplace(label, GroupData{std::move(w), std::move(tabs.tables)});
  return pos->second;
}

const std::vector<std::pair<std::string, int>> kCountedGroups = {
    {"A2", 5},  {"B2", 6},  {"I2(5)", 7}, {"I2(6)", 8}, {"I2(7)", 9},
    {"A3", 14}, {"B3", 20}, {"H3", 32},  {"A4", 42}};

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string witness;
  auto expect_order = [&](const std::string& label, long long expected) {
    long long got = enumerate_group(CoxeterSystem::build(label)).order();
    if (got != expected) {
      ok = false;
      witness = label + " order " + std::to_string(got) + " != " + std::to_string(expected);
    }
  };
  expect_order("A3", 24);
  expect_order("B2", 8);
  expect_order("B3", 48);
  expect_order("H3", 120);
  for (int m = 3; m <= 8; ++m) expect_order("I2(" + std::to_string(m) + ")", 2 * m);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 1.0) {
    ok = false;
    witness = "took " + std::to_string(secs) + "s";
  }
  report(1, "group orders (A3=24, B2=8, B3=48, H3=120, I2(m)=2m) in under 1s", ok, witness);
}

void criterion2() {
  bool ok = true;
  std::string witness;
  try {
    GroupData& g = group("A2");
    const auto& polys = g.w.forcing->polygons();
    if (polys.size() != 1 || polys[0].half_length() != 3) {
      ok = false;
      witness = "weak order S3 is not a single hexagon";
    } else {
      const PolygonalInterval& hex = polys[0];
      int ne = g.w.lattice().num_edges();
      for (int e : hex.side_edges()) {
        Bits seed(ne);
        seed.set(e);
        Bits closed = g.w.forcing->closure(seed);
        Bits expect(ne);
        expect.set(e);
        if (!(closed == expect)) {
          ok = false;
          witness = "side-edge closure is not the edge alone";
        }
      }
      for (int e :
           {hex.chain_a.front(), hex.chain_a.back(), hex.chain_b.front(), hex.chain_b.back()}) {
        Bits seed(ne);
        seed.set(e);
        Bits closed = g.w.forcing->closure(seed);
        Bits expect(ne);
        expect.set(e);
        expect.set(hex.opposite(e));
        for (int s : hex.side_edges()) expect.set(s);
        if (!(closed == expect)) {
          ok = false;
          witness = "bottom/top closure != {edge, opposite, both sides}";
        }
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    witness = e.what();
  }
  report(2, "hexagon forcing on the weak order of S3", ok, witness);
}

void criterion3() {
  bool ok = true;
  std::string witness;
  try {
    GroupData& g = group("A3");
    const CoxeterSystem& sys = g.w.sys();
    const HasseLattice& L = g.w.lattice();
    auto edge_of = [&](const typea::Perm& lo, const typea::Perm& hi) {
      int a = g.w.index_of(typea::perm_to_element(sys, lo));
      int b = g.w.index_of(typea::perm_to_element(sys, hi));
      for (int e = 0; e < L.num_edges(); ++e)
        if (L.covers[e] == std::make_pair(a, b)) return e;
      throw Error("seed cover missing");
    };
    Bits seed(L.num_edges());
    seed.set(edge_of({1, 3, 2, 4}, {3, 1, 2, 4}));
    seed.set(edge_of({1, 2, 4, 3}, {1, 4, 2, 3}));
    Congruence theta = congruence_from_edges(L, g.w.reach, g.w.forcing->closure(seed));
    if (theta.num_classes() != 14) {
      ok = false;
      witness = std::to_string(theta.num_classes()) + " classes";
    }
    typea::PolygonQ q = typea::build_polygon(3, typea::Barring::all_down(3));
    typea::FlipLattice fl = typea::tamari_like_lattice(q);
    // labeled isomorphism through the eta bijection on class bottoms
    std::vector<int> f(L.n);
    for (int v = 0; v < L.n; ++v)
      f[v] = fl.index_of(typea::eta(typea::element_to_perm(sys, g.w.element(v)), q));
    HasseLattice quot = quotient(L, theta);
    std::set<std::pair<int, int>> qcov, fcov;
    for (auto& [lo, hi] : quot.covers) qcov.insert({f[theta.bottom[lo]], f[theta.bottom[hi]]});
    for (auto& [lo, hi] : fl.lattice.covers) fcov.insert({lo, hi});
    if (qcov != fcov) {
      ok = false;
      witness = "quotient not isomorphic to the flip-order Tamari lattice";
    }
    Reachability rf(fl.lattice);
    auto tabs = kern::meet_join_tables(fl.lattice, rf);
    auto pf = kern::hom_check(f, L, g.w.reach, tabs.tables);
    if (!tabs.ok || !pf.ok) {
      ok = false;
      witness = "eta fails the homomorphism laws";
    }
  } catch (const std::exception& e) {
    ok = false;
    witness = e.what();
  }
  report(3, "Tamari congruence on S4: 14 classes, quotient = flip lattice, eta a homomorphism",
         ok, witness);
}

void criteria456() {
  bool ok4 = true, ok5 = true, ok6 = true;
  std::string w4, w5, w6;
  for (const auto& [label, expected] : kCountedGroups) {
    try {
      GroupData& g = group(label);
      const CoxeterSystem& sys = g.w.sys();
      for (const auto& o : all_acyclic_orientations(sys.matrix())) {
        CoxeterElement c = coxeter_element(sys, o);
        Congruence theta = cambrian_congruence(g.w, c);
        auto flags =
            kern::filter(g.w.size(), [&](int v) { return is_sortable(sys, g.w.element(v), c); });
        std::vector<int> sortables;
        for (int v = 0; v < g.w.size(); ++v)
          if (flags[v]) sortables.push_back(v);
        CambrianLattice camb = cambrian_lattice(g.w, c);
        if (static_cast<int>(sortables.size()) != expected ||
            theta.num_classes() != expected || camb.lattice.n != expected) {
          ok4 = false;
          w4 = label + " c=" + sys.word_str(c.word) + ": " + std::to_string(sortables.size()) +
               " sortables, " + std::to_string(theta.num_classes()) + " classes, lattice " +
               std::to_string(camb.lattice.n) + ", expected " + std::to_string(expected);
        }
        if (std::set<int>(theta.bottom.begin(), theta.bottom.end()) !=
            std::set<int>(sortables.begin(), sortables.end())) {
          ok4 = false;
          w4 = label + ": class bottoms differ from sortables";
        }
        for (int v = 0; v < g.w.size(); ++v)
          if ((flags[v] != 0) != is_sortable_recursive(sys, g.w.element(v), c)) {
            ok5 = false;
            w5 = label + " element " + g.w.lattice().labels[v];
          }
        for (std::size_t a = 0; a < sortables.size(); ++a)
          for (std::size_t b = a + 1; b < sortables.size(); ++b) {
            if (!flags[g.tables.m(sortables[a], sortables[b])] ||
                !flags[g.tables.j(sortables[a], sortables[b])]) {
              ok6 = false;
              w6 = label + " pair (" + g.w.lattice().labels[sortables[a]] + "," +
                   g.w.lattice().labels[sortables[b]] + ")";
            }
          }
      }
    } catch (const std::exception& e) {
      ok4 = ok5 = ok6 = false;
      w4 = w5 = w6 = label + ": " + e.what();
    }
  }
  report(4, "sortable = class = lattice counts (A2 5, B2 6, I2(m) m+2, A3 14, B3 20, H3 32, A4 42)",
         ok4, w4);
  report(5, "is_sortable agrees with the recursive definition everywhere", ok5, w5);
  report(6, "weak-order meets and joins of sortables are sortable", ok6, w6);
}

void criterion7() {
  bool ok = true;
  std::string witness;
  try {
    for (const char* label : {"B2", "A3", "B3"}) {
      GroupData& g = group(label);
      const CoxeterSystem& sys = g.w.sys();
      Fan coxfan = coxeter_fan(g.w);
      for (const auto& o : all_acyclic_orientations(sys.matrix())) {
        CoxeterElement c = coxeter_element(sys, o);
        Congruence theta = cambrian_congruence(g.w, c);
        CambrianLattice camb = cambrian_lattice(g.w, c);
        Fan cvecfan = cambrian_fan_by_cvectors(g.w, c, camb.sortables);
        FanCheckReport rep = check_fans(g.w, coxfan, theta, cvecfan, 10000, 0, 1e-9);
        if (!(rep.coverage_ok && rep.agreement_ok)) {
          ok = false;
          witness = std::string(label) + " c=" + sys.word_str(c.word) + ": " + rep.witness;
        }
      }
    }
    // the B2 values from the worked example
    CoxeterSystem b2 = group("B2").w.sys();
    CoxeterElement c = coxeter_element_from_word(b2, {0, 1});
    CVectorSet s2cv = c_vectors(b2, b2.generator(1), c);
    if (s2cv.signed_roots != std::vector<int>{1, -2}) {
      ok = false;
      witness = "C(s2) != {alpha1, -alpha2}";
    }
    Element s1s2 = b2.product_of_word({0, 1});
    CVectorSet topcv = c_vectors(b2, s1s2, c);
    if (topcv.signed_roots !=
        std::vector<int>{b2.apply_to_root(s1s2, 1), b2.apply_to_root(s1s2, 2)}) {
      ok = false;
      witness = "C(s1s2) != {s1s2 alpha1, s1s2 alpha2}";
    }
  } catch (const std::exception& e) {
    ok = false;
    witness = e.what();
  }
  report(7, "C-vector fan = class-union fan on 10000 seeded samples; B2 C-vectors exact", ok,
         witness);
}

void criterion8() {
  bool ok = true;
  std::string witness;
  try {
    for (const auto& [label, expected] : kCountedGroups) {
      GroupData& g = group(label);
      const CoxeterSystem& sys = g.w.sys();
      Fan coxfan = coxeter_fan(g.w);
      std::string w;
      if (!region_adjacency_matches_weak_order(g.w, coxfan, &w)) {
        ok = false;
        witness = label + ": " + w;
        continue;
      }
      for (const auto& o : all_acyclic_orientations(sys.matrix())) {
        CoxeterElement c = coxeter_element(sys, o);
        Congruence theta = cambrian_congruence(g.w, c);
        CambrianLattice camb = cambrian_lattice(g.w, c);
        Fan cvecfan = cambrian_fan_by_cvectors(g.w, c, camb.sortables);
        FanCheckReport rep = check_fans(g.w, coxfan, theta, cvecfan, 10000, 0, 1e-9);
        if (!rep.ok()) {
          ok = false;
          witness = label + " c=" + sys.word_str(c.word) + ": " + rep.witness;
        }
        if (!fan_adjacency_matches_cambrian_covers(cvecfan, camb.lattice, &w)) {
          ok = false;
          witness = label + " c=" + sys.word_str(c.word) + ": " + w;
        }
        std::vector<int> deg(camb.lattice.n, 0);
        for (auto& [lo, hi] : camb.lattice.covers) {
          deg[lo]++;
          deg[hi]++;
        }
        for (int d : deg)
          if (d != sys.rank()) {
            ok = false;
            witness = label + ": Cambrian Hasse diagram not " + std::to_string(sys.rank()) +
                      "-regular";
          }
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    witness = e.what();
  }
  report(8, "fan coverage, adjacency = Cambrian covers, and n-regular Hasse diagrams", ok,
         witness);
}

void criterion9() {
  bool ok = true;
  std::string witness;
  try {
    for (int n = 1; n <= 5 && ok; ++n) {
      for (int mask = 0; mask < (1 << (n + 1)) && ok; ++mask) {
        typea::Barring b = typea::Barring::all_down(n);
        for (int i = 1; i <= n + 1; ++i)
          if (mask >> (i - 1) & 1) b.up[i] = 1;
        typea::FiberReport rep = typea::fiber_extremes_check(typea::build_polygon(n, b));
        if (!rep.ok) {
          ok = false;
          witness = "n=" + std::to_string(n) + " barring " + b.str() + ": " + rep.witness;
        }
      }
    }
    // pure-barring specializations: minima are the plain 312- (resp. 231-)
    // avoiders, maxima in the Tamari case the 132-avoiders
    for (int n = 2; n <= 4 && ok; ++n) {
      typea::PolygonQ down = typea::build_polygon(n, typea::Barring::all_down(n));
      typea::Barring all_up = typea::Barring::all_down(n);
      for (int i = 1; i <= n + 1; ++i) all_up.up[i] = 1;
      typea::PolygonQ up = typea::build_polygon(n, all_up);
      std::map<typea::Triangulation, typea::Perm> down_min, up_min, down_max;
      for (const auto& x : typea::all_perms(n + 1)) {
        auto td = typea::eta(x, down);
        auto tu = typea::eta(x, up);
        if (!down_min.count(td) || typea::perm_weak_le(x, down_min[td])) down_min[td] = x;
        if (!down_max.count(td) || typea::perm_weak_le(down_max[td], x)) down_max[td] = x;
        if (!up_min.count(tu) || typea::perm_weak_le(x, up_min[tu])) up_min[tu] = x;
      }
      for (const auto& x : typea::all_perms(n + 1)) {
        bool min_d = down_min[typea::eta(x, down)] == x;
        bool min_u = up_min[typea::eta(x, up)] == x;
        bool max_d = down_max[typea::eta(x, down)] == x;
        if (min_d != !typea::contains_pattern(x, typea::Pattern::P312, down.barring) ||
            min_u != !typea::contains_pattern(x, typea::Pattern::P231, up.barring) ||
            max_d != !typea::contains_pattern(x, typea::Pattern::P132, down.barring)) {
          ok = false;
          witness = "plain-pattern specialization fails at n=" + std::to_string(n) + " for " +
                    typea::perm_str(x);
        }
      }
    }
    typea::Barring down3 = typea::Barring::all_down(3);
    if (!typea::contains_pattern({4, 2, 1, 3}, typea::Pattern::P312, down3)) {
      ok = false;
      witness = "4213 must contain a 312 instance";
    }
    if (typea::contains_pattern({4, 2, 1, 3}, typea::Pattern::P132, down3)) {
      ok = false;
      witness = "4213 must avoid 132";
    }
  } catch (const std::exception& e) {
    ok = false;
    witness = e.what();
  }
  report(9, "fiber extremes match the barred-pattern characterizations for n <= 5", ok, witness);
}

std::string run_cli(const std::string& cmd, int& exit_code) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return out;
}

void criterion10(const std::string& cli) {
  bool ok = true;
  std::string witness;
  if (cli.empty()) {
    report(10, "CLI determinism (verify twice, byte-identical exports)", false, "--cli not given");
    return;
  }
  int rc1 = 0, rc2 = 0;
  std::string verify_cmd = cli + " verify --all --max-rank 3 --seed 0";
  std::string r1 = run_cli(verify_cmd, rc1);
  std::string r2 = run_cli(verify_cmd, rc2);
  if (rc1 != 0 || rc2 != 0) {
    ok = false;
    witness = "verify exited " + std::to_string(rc1) + "/" + std::to_string(rc2);
  } else if (r1 != r2) {
    ok = false;
    witness = "verify reports differ between runs";
  }
  for (const std::string& cmd :
       {cli + " fan --type A3 --c s1s2s3 --export svg --seed 0",
        cli + " congruence --type B2 --c s1s2 --export dot",
        cli + " cambrian --type A3 --c s1s3s2 --export json",
        cli + " group --type A3 --export dot"}) {
    int ra = 0, rb = 0;
    std::string a = run_cli(cmd, ra);
    std::string b = run_cli(cmd, rb);
    if (ra != 0 || rb != 0 || a != b || a.empty()) {
      ok = false;
      witness = "output differs or failed for: " + cmd;
    }
  }
  // the weak-order DOT for A3 carries all 24 elements
  int rg = 0;
  std::string dot = run_cli(cli + " group --type A3 --export dot", rg);
  std::size_t nodes = 0, pos = 0;
  while ((pos = dot.find("[label=", pos)) != std::string::npos) {
    ++nodes;
    ++pos;
  }
  if (rg != 0 || nodes != 24) {
    ok = false;
    witness = "A3 DOT export should carry 24 nodes";
  }
  report(10, "CLI determinism (verify twice, byte-identical exports)", ok, witness);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  criterion1();
  criterion2();
  criterion3();
  criteria456();
  criterion7();
  criterion8();
  criterion9();
  criterion10(cli);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}

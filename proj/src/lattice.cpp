#include "cambrian/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace cambrian {

HasseLattice HasseLattice::from_covers(int n, std::vector<std::pair<int, int>> covers,
                                       std::vector<std::string> labels) {
  HasseLattice L;
  L.n = n;
  L.covers = std::move(covers);
  L.labels = std::move(labels);
  L.up.assign(n, {});
  L.down.assign(n, {});
  L.up_edge.assign(n, {});
  L.down_edge.assign(n, {});
  for (int e = 0; e < L.num_edges(); ++e) {
    auto [lo, hi] = L.covers[e];
    if (lo < 0 || lo >= n || hi < 0 || hi >= n || lo == hi)
      throw BadInput("cover edge out of range");
    L.up[lo].push_back(hi);
    L.up_edge[lo].push_back(e);
    L.down[hi].push_back(lo);
    L.down_edge[hi].push_back(e);
  }
  // Kahn's algorithm; also the cycle check
  std::vector<int> indeg(n);
  for (auto& [lo, hi] : L.covers) indeg[hi]++;
  std::deque<int> q;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push_back(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    L.topo.push_back(v);
    for (int u : L.up[v])
      if (--indeg[u] == 0) q.push_back(u);
  }
  if (static_cast<int>(L.topo.size()) != n) throw BadInput("cover relation has a cycle");
  return L;
}

int HasseLattice::min_element() const {
  int found = -1;
  for (int v = 0; v < n; ++v)
    if (down[v].empty()) {
      if (found >= 0) throw NotALattice("two minimal elements: " + std::to_string(found) + ", " + std::to_string(v));
      found = v;
    }
  if (found < 0) throw NotALattice("no minimal element");
  return found;
}

int HasseLattice::max_element() const {
  int found = -1;
  for (int v = 0; v < n; ++v)
    if (up[v].empty()) {
      if (found >= 0) throw NotALattice("two maximal elements: " + std::to_string(found) + ", " + std::to_string(v));
      found = v;
    }
  if (found < 0) throw NotALattice("no maximal element");
  return found;
}

const std::string& HasseLattice::label_of(int v) const {
  static const std::string empty;
  if (labels.empty()) return empty;
  return labels[v];
}

bool HasseLattice::is_transitively_reduced(std::string* witness) const {
  // a cover (x,y) is redundant iff y is reachable from x by a path of length >= 2
  for (int e = 0; e < num_edges(); ++e) {
    auto [x, y] = covers[e];
    std::vector<char> seen(n, 0);
    std::deque<int> q;
    for (int u : up[x])
      if (u != y) {
        q.push_back(u);
        seen[u] = 1;
      }
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (v == y) {
        if (witness) *witness = "cover " + std::to_string(x) + "<" + std::to_string(y) + " is implied";
        return false;
      }
      for (int u : up[v])
        if (!seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
    }
  }
  return true;
}

Reachability::Reachability(const HasseLattice& L) {
  below.assign(L.n, Bits(L.n));
  above.assign(L.n, Bits(L.n));
  for (int v : L.topo) {
    below[v].set(v);
    for (int u : L.down[v]) below[v] |= below[u];
  }
  for (auto it = L.topo.rbegin(); it != L.topo.rend(); ++it) {
    int v = *it;
    above[v].set(v);
    for (int u : L.up[v]) above[v] |= above[u];
  }
}

namespace {

// maximal elements of a down-closed set I: members with no upper cover in I
int unique_max_of_downset(const HasseLattice& L, const Bits& I, int u, int w, const char* what) {
  int found = -1;
  for (int v = 0; v < L.n; ++v) {
    if (!I.test(v)) continue;
    bool maximal = true;
    for (int x : L.up[v])
      if (I.test(x)) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    if (found >= 0)
      throw NotALattice(std::string(what) + "(" + std::to_string(u) + "," + std::to_string(w) +
                        ") not unique: candidates " + std::to_string(found) + " and " + std::to_string(v));
    found = v;
  }
  if (found < 0)
    throw NotALattice(std::string(what) + "(" + std::to_string(u) + "," + std::to_string(w) + ") has no candidate");
  return found;
}

int unique_min_of_upset(const HasseLattice& L, const Bits& I, int u, int w, const char* what) {
  int found = -1;
  for (int v = 0; v < L.n; ++v) {
    if (!I.test(v)) continue;
    bool minimal = true;
    for (int x : L.down[v])
      if (I.test(x)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    if (found >= 0)
      throw NotALattice(std::string(what) + "(" + std::to_string(u) + "," + std::to_string(w) +
                        ") not unique: candidates " + std::to_string(found) + " and " + std::to_string(v));
    found = v;
  }
  if (found < 0)
    throw NotALattice(std::string(what) + "(" + std::to_string(u) + "," + std::to_string(w) + ") has no candidate");
  return found;
}

}  // namespace

int meet(const HasseLattice& L, const Reachability& R, int u, int w) {
  Bits I = R.below[u] & R.below[w];
  return unique_max_of_downset(L, I, u, w, "meet");
}

int join(const HasseLattice& L, const Reachability& R, int u, int w) {
  Bits I = R.above[u] & R.above[w];
  return unique_min_of_upset(L, I, u, w, "join");
}

bool is_lattice(const HasseLattice& L, const Reachability& R, std::string* witness) {
  try {
    for (int u = 0; u < L.n; ++u)
      for (int w = u + 1; w < L.n; ++w) {
        meet(L, R, u, w);
        join(L, R, u, w);
      }
  } catch (const NotALattice& e) {
    if (witness) *witness = e.what();
    return false;
  }
  return true;
}

bool is_lattice_homomorphism(const std::vector<int>& f, const HasseLattice& L1,
                             const Reachability& R1, const HasseLattice& L2,
                             const Reachability& R2, std::string* witness) {
  if (static_cast<int>(f.size()) != L1.n) throw BadInput("map size mismatch");
  for (int u = 0; u < L1.n; ++u)
    for (int w = u; w < L1.n; ++w) {
      if (f[meet(L1, R1, u, w)] != meet(L2, R2, f[u], f[w])) {
        if (witness) *witness = "meet broken at (" + std::to_string(u) + "," + std::to_string(w) + ")";
        return false;
      }
      if (f[join(L1, R1, u, w)] != join(L2, R2, f[u], f[w])) {
        if (witness) *witness = "join broken at (" + std::to_string(u) + "," + std::to_string(w) + ")";
        return false;
      }
    }
  return true;
}

int PolygonalInterval::opposite(int edge) const {
  int m = half_length();
  for (int i = 0; i < m; ++i) {
    if (chain_a[i] == edge) return chain_b[m - 1 - i];
    if (chain_b[i] == edge) return chain_a[m - 1 - i];
  }
  throw BadInput("edge not in polygonal interval");
}

std::vector<int> PolygonalInterval::side_edges() const {
  std::vector<int> out;
  int m = half_length();
  for (int i = 1; i + 1 < m; ++i) {
    out.push_back(chain_a[i]);
    out.push_back(chain_b[i]);
  }
  return out;
}

std::vector<int> PolygonalInterval::all_edges() const {
  std::vector<int> out = chain_a;
  out.insert(out.end(), chain_b.begin(), chain_b.end());
  return out;
}

std::vector<PolygonalInterval> polygonal_intervals(const HasseLattice& L, const Reachability& R) {
  std::vector<PolygonalInterval> out;
  for (int u = 0; u < L.n; ++u) {
    const auto& ups = L.up[u];
    for (std::size_t i = 0; i < ups.size(); ++i)
      for (std::size_t k = i + 1; k < ups.size(); ++k) {
        int a = ups[i], b = ups[k];
        int top = join(L, R, a, b);
        Bits I = R.below[top] & R.above[u];
        int size = I.count();
        if (size < 4 || size % 2 != 0)
          throw NotPolygonal("interval [" + std::to_string(u) + "," + std::to_string(top) +
                             "] has " + std::to_string(size) + " elements");
        // cycle test: within I, u and top have exactly two neighbors, every
        // other member exactly one cover up and one down
        auto covers_in = [&](int v, bool upward) {
          int c = 0;
          for (int x : (upward ? L.up[v] : L.down[v]))
            if (I.test(x)) ++c;
          return c;
        };
        if (covers_in(u, true) != 2 || covers_in(top, false) != 2)
          throw NotPolygonal("interval [" + std::to_string(u) + "," + std::to_string(top) + "] is not a cycle");
        PolygonalInterval poly;
        poly.min = u;
        poly.max = top;
        for (int start : {a, b}) {
          std::vector<int>& chain = (start == a) ? poly.chain_a : poly.chain_b;
          int prev = u, cur = start;
          // first edge u -> start
          for (std::size_t t = 0; t < L.up[u].size(); ++t)
            if (L.up[u][t] == cur) chain.push_back(L.up_edge[u][t]);
          while (cur != top) {
            if (covers_in(cur, true) != 1 || covers_in(cur, false) != 1)
              throw NotPolygonal("interval [" + std::to_string(u) + "," + std::to_string(top) + "] is not a cycle");
            int nxt = -1, edge = -1;
            for (std::size_t t = 0; t < L.up[cur].size(); ++t)
              if (I.test(L.up[cur][t])) {
                nxt = L.up[cur][t];
                edge = L.up_edge[cur][t];
              }
            chain.push_back(edge);
            prev = cur;
            cur = nxt;
          }
          (void)prev;
        }
        if (poly.chain_a.size() != poly.chain_b.size() ||
            static_cast<int>(poly.chain_a.size() + poly.chain_b.size()) != size)
          throw NotPolygonal("interval [" + std::to_string(u) + "," + std::to_string(top) + "] chains unbalanced");
        out.push_back(std::move(poly));
      }
  }
  return out;
}

ForcingSystem::ForcingSystem(const HasseLattice& L, const Reachability& R)
    : num_edges_(L.num_edges()), polys_(polygonal_intervals(L, R)) {
  trigger_.assign(num_edges_, {});
  for (int p = 0; p < static_cast<int>(polys_.size()); ++p) {
    const auto& poly = polys_[p];
    int m = poly.half_length();
    for (int e : {poly.chain_a[0], poly.chain_a[m - 1], poly.chain_b[0], poly.chain_b[m - 1]})
      trigger_[e].push_back(p);
  }
}

Bits ForcingSystem::closure(const Bits& seed) const {
  Bits out = seed;
  std::deque<int> work;
  for (int e = 0; e < num_edges_; ++e)
    if (out.test(e)) work.push_back(e);
  auto add = [&](int e) {
    if (!out.test(e)) {
      out.set(e);
      work.push_back(e);
    }
  };
  while (!work.empty()) {
    int e = work.front();
    work.pop_front();
    for (int p : trigger_[e]) {
      const auto& poly = polys_[p];
      add(poly.opposite(e));
      for (int s : poly.side_edges()) add(s);
    }
  }
  return out;
}

Congruence congruence_from_edges(const HasseLattice& L, const Reachability& R, const Bits& edges) {
  Congruence theta;
  theta.class_of.assign(L.n, -1);
  // connected components of the contracted subgraph, scanned in element order
  for (int v = 0; v < L.n; ++v) {
    if (theta.class_of[v] >= 0) continue;
    int cls = static_cast<int>(theta.classes.size());
    std::vector<int> members;
    std::deque<int> q{v};
    theta.class_of[v] = cls;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      members.push_back(x);
      auto visit = [&](int y) {
        if (theta.class_of[y] < 0) {
          theta.class_of[y] = cls;
          q.push_back(y);
        }
      };
      for (std::size_t t = 0; t < L.up[x].size(); ++t)
        if (edges.test(L.up_edge[x][t])) visit(L.up[x][t]);
      for (std::size_t t = 0; t < L.down[x].size(); ++t)
        if (edges.test(L.down_edge[x][t])) visit(L.down[x][t]);
    }
    std::sort(members.begin(), members.end());
    theta.classes.push_back(std::move(members));
  }
  // (i) every class is an interval [bottom, top]
  theta.bottom.resize(theta.classes.size());
  theta.top.resize(theta.classes.size());
  for (int c = 0; c < theta.num_classes(); ++c) {
    const auto& members = theta.classes[c];
    int bot = -1, top = -1;
    for (int x : members) {
      bool is_bot = true, is_top = true;
      for (int y : members) {
        if (y == x) continue;
        if (!R.le(x, y)) is_bot = false;
        if (!R.le(y, x)) is_top = false;
      }
      if (is_bot) bot = x;
      if (is_top) top = x;
    }
    if (bot < 0 || top < 0)
      throw NotACongruence("class " + std::to_string(c) + " has no unique bottom/top");
    Bits interval = R.above[bot] & R.below[top];
    if (interval.count() != static_cast<int>(members.size()))
      throw NotACongruence("class " + std::to_string(c) + " is not the full interval [" +
                           std::to_string(bot) + "," + std::to_string(top) + "]");
    for (int x : members)
      if (!interval.test(x)) throw NotACongruence("class " + std::to_string(c) + " not an interval");
    theta.bottom[c] = bot;
    theta.top[c] = top;
  }
  // (ii)+(iii) projections order-preserving; covers generate the order
  for (auto& [x, y] : L.covers) {
    if (!R.le(theta.pi_down(x), theta.pi_down(y)))
      throw NotACongruence("pi_down not order-preserving at cover (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
    if (!R.le(theta.pi_up(x), theta.pi_up(y)))
      throw NotACongruence("pi_up not order-preserving at cover (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
  }
  theta.contracted = Bits(L.num_edges());
  for (int e = 0; e < L.num_edges(); ++e)
    if (theta.class_of[L.covers[e].first] == theta.class_of[L.covers[e].second]) theta.contracted.set(e);
  return theta;
}

std::vector<std::pair<int, int>> transitive_reduction(int n, const std::vector<Bits>& strictly_below) {
  std::vector<std::pair<int, int>> covers;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      if (!strictly_below[b].test(a)) continue;
      bool direct = true;
      for (int z = 0; z < n && direct; ++z)
        if (strictly_below[b].test(z) && strictly_below[z].test(a)) direct = false;
      if (direct) covers.push_back({a, b});
    }
  return covers;
}

HasseLattice quotient(const HasseLattice& L, const Congruence& theta) {
  int nc = theta.num_classes();
  // strict order on classes generated by the images of covers
  std::vector<std::vector<int>> succ(nc);
  for (auto& [x, y] : L.covers) {
    int a = theta.class_of[x], b = theta.class_of[y];
    if (a != b) succ[a].push_back(b);
  }
  std::vector<Bits> strictly_below(nc, Bits(nc));
  // reachability by BFS from each class (class counts stay small)
  for (int a = 0; a < nc; ++a) {
    std::deque<int> q{a};
    Bits seen(nc);
    seen.set(a);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : succ[v])
        if (!seen.test(u)) {
          seen.set(u);
          strictly_below[u].set(a);
          q.push_back(u);
        }
    }
  }
  auto covers = transitive_reduction(nc, strictly_below);
  std::vector<std::string> labels;
  if (!L.labels.empty()) {
    labels.resize(nc);
    for (int c = 0; c < nc; ++c) labels[c] = L.labels[theta.bottom[c]];
  }
  return HasseLattice::from_covers(nc, std::move(covers), std::move(labels));
}

HasseLattice bottoms_subposet(const HasseLattice& L, const Reachability& R, const Congruence& theta) {
  std::vector<int> bottoms = theta.bottom;  // class order
  int k = static_cast<int>(bottoms.size());
  std::vector<Bits> strictly_below(k, Bits(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && R.le(bottoms[i], bottoms[j])) strictly_below[j].set(i);
  auto covers = transitive_reduction(k, strictly_below);
  std::vector<std::string> labels;
  if (!L.labels.empty()) {
    labels.resize(k);
    for (int i = 0; i < k; ++i) labels[i] = L.labels[bottoms[i]];
  }
  return HasseLattice::from_covers(k, std::move(covers), std::move(labels));
}

std::string lattice_dot(const HasseLattice& L, const Bits* contracted, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int v = 0; v < L.n; ++v) {
    os << "  n" << v << " [label=\"";
    os << (L.labels.empty() ? std::to_string(v) : L.labels[v]);
    os << "\"];\n";
  }
  for (int e = 0; e < L.num_edges(); ++e) {
    auto [lo, hi] = L.covers[e];
    os << "  n" << lo << " -> n" << hi;
    if (contracted && contracted->test(e)) os << " [style=dashed, color=red, penwidth=2]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string congruence_json(const Congruence& theta) {
  nlohmann::json j;
  j["classes"] = theta.classes;
  j["bottoms"] = theta.bottom;
  j["contracted_edges"] = theta.contracted.members();
  return j.dump(2);
}

}  // namespace cambrian

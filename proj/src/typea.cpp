#include "cambrian/typea.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "cambrian/kernels.hpp"
#include "json.hpp"

namespace cambrian::typea {

Barring Barring::all_down(int n) {
  Barring b;
  b.up.assign(n + 2, 0);
  return b;
}

Barring Barring::parse(const std::string& text) {
  Barring b;
  b.up.assign(text.size() + 1, 0);
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[k])));
    if (c == 'u')
      b.up[k + 1] = 1;
    else if (c != 'd')
      throw BadInput("barring must be a string over {u,d}");
  }
  if (b.n() < 1) throw BadInput("barring needs length >= 2");
  return b;
}

std::string Barring::str() const {
  std::string out;
  for (int i = 1; i <= n() + 1; ++i) out += is_up(i) ? 'u' : 'd';
  return out;
}

bool PolygonQ::is_up(int label) const {
  return label >= 1 && label <= n + 1 && barring.is_up(label);
}

std::vector<Diagonal> PolygonQ::boundary() const {
  std::vector<int> bottom{0}, top{0};
  for (int i = 1; i <= n + 1; ++i) (is_up(i) ? top : bottom).push_back(i);
  bottom.push_back(n + 2);
  top.push_back(n + 2);
  std::vector<Diagonal> out;
  for (std::size_t k = 0; k + 1 < bottom.size(); ++k) out.push_back({bottom[k], bottom[k + 1]});
  for (std::size_t k = 0; k + 1 < top.size(); ++k) out.push_back({top[k], top[k + 1]});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PolygonQ build_polygon(int n, const Barring& barring) {
  if (n < 1) throw BadInput("polygon needs n >= 1");
  if (barring.n() != n) throw BadInput("barring length must be n+1");
  PolygonQ q;
  q.n = n;
  q.barring = barring;
  q.xy.resize(n + 3);
  for (int i = 0; i <= n + 2; ++i) {
    long long y = static_cast<long long>(i) * (n + 2 - i);
    if (i == 0 || i == n + 2)
      q.xy[i] = {i, 0};
    else
      q.xy[i] = {i, barring.is_up(i) ? y : -y};
  }
  return q;
}

std::string Triangulation::str() const {
  std::string out;
  for (auto& [a, b] : diagonals) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return out;
}

Triangulation eta(const Perm& x, const PolygonQ& q) {
  int n = q.n;
  if (static_cast<int>(x.size()) != n + 1) throw BadInput("permutation size must be n+1");
  // start along the bottom of Q
  std::vector<int> path{0};
  for (int i = 1; i <= n + 1; ++i)
    if (!q.is_up(i)) path.push_back(i);
  path.push_back(n + 2);
  std::set<Diagonal> edges;
  auto record = [&]() {
    for (std::size_t k = 0; k + 1 < path.size(); ++k) edges.insert({path[k], path[k + 1]});
  };
  record();
  for (int v : x) {
    auto it = std::lower_bound(path.begin(), path.end(), v);
    if (q.is_up(v)) {
      if (it != path.end() && *it == v) throw Error("insert: vertex already on path");
      path.insert(it, v);
    } else {
      if (it == path.end() || *it != v) throw Error("remove: vertex not on path");
      path.erase(it);
    }
    record();
  }
  Triangulation t;
  auto hull = q.boundary();
  for (auto& e : edges)
    if (!std::binary_search(hull.begin(), hull.end(), e)) t.diagonals.push_back(e);
  std::sort(t.diagonals.begin(), t.diagonals.end());
  if (static_cast<int>(t.diagonals.size()) != n)
    throw Error("eta produced " + std::to_string(t.diagonals.size()) + " diagonals");
  return t;
}

bool contains_pattern(const Perm& x, Pattern p, const Barring& barring) {
  int m = static_cast<int>(x.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        int a = x[i], b = x[j], c = x[k];
        switch (p) {
          case Pattern::P312:
            if (b < c && c < a) return true;
            break;
          case Pattern::P312_lower2:
            if (b < c && c < a && !barring.is_up(c)) return true;
            break;
          case Pattern::P231:
            if (c < a && a < b) return true;
            break;
          case Pattern::P231_upper2:
            if (c < a && a < b && barring.is_up(a)) return true;
            break;
          case Pattern::P132:
            if (a < c && c < b) return true;
            break;
          case Pattern::P213:
            if (b < a && a < c) return true;
            break;
        }
      }
  return false;
}

namespace {

bool has_edge(const PolygonQ& q, const Triangulation& t, Diagonal e) {
  if (std::binary_search(t.diagonals.begin(), t.diagonals.end(), e)) return true;
  auto hull = q.boundary();
  return std::binary_search(hull.begin(), hull.end(), e);
}

Diagonal opposite_diagonal(const PolygonQ& q, const Triangulation& t, Diagonal d) {
  // in convex position a triangle is a face iff its three edges are present
  std::vector<int> apex;
  for (int v = 0; v <= q.n + 2; ++v) {
    if (v == d.first || v == d.second) continue;
    Diagonal e1{std::min(v, d.first), std::max(v, d.first)};
    Diagonal e2{std::min(v, d.second), std::max(v, d.second)};
    if (has_edge(q, t, e1) && has_edge(q, t, e2)) apex.push_back(v);
  }
  if (apex.size() != 2) throw Error("diagonal does not bound two triangles");
  return {std::min(apex[0], apex[1]), std::max(apex[0], apex[1])};
}

// slope(d1) < slope(d2), exact on integer coordinates; x strictly increases
// with the label so denominators are positive
bool slope_less(const PolygonQ& q, Diagonal d1, Diagonal d2) {
  auto [x1a, y1a] = q.xy[d1.first];
  auto [x1b, y1b] = q.xy[d1.second];
  auto [x2a, y2a] = q.xy[d2.first];
  auto [x2b, y2b] = q.xy[d2.second];
  return (y1b - y1a) * (x2b - x2a) < (y2b - y2a) * (x1b - x1a);
}

}  // namespace

Triangulation flip(const PolygonQ& q, const Triangulation& t, Diagonal d) {
  if (!std::binary_search(t.diagonals.begin(), t.diagonals.end(), d))
    throw NotADiagonal("(" + std::to_string(d.first) + "," + std::to_string(d.second) +
                       ") is not a diagonal of the triangulation");
  Diagonal nd = opposite_diagonal(q, t, d);
  Triangulation out;
  for (auto& e : t.diagonals)
    if (e != d) out.diagonals.push_back(e);
  out.diagonals.push_back(nd);
  std::sort(out.diagonals.begin(), out.diagonals.end());
  return out;
}

bool slope_increases(const PolygonQ& q, const Triangulation& t, Diagonal d) {
  if (!std::binary_search(t.diagonals.begin(), t.diagonals.end(), d))
    throw NotADiagonal("not a diagonal");
  Diagonal nd = opposite_diagonal(q, t, d);
  if (!slope_less(q, d, nd) && !slope_less(q, nd, d))
    throw Error("flip produced an equal slope; coordinates not generic");
  return slope_less(q, d, nd);
}

int FlipLattice::index_of(const Triangulation& t) const {
  auto it = index.find(t);
  return it == index.end() ? -1 : it->second;
}

namespace {

long long catalan(int k) {
  std::vector<long long> c(k + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[k];
}

}  // namespace

FlipLattice tamari_like_lattice(const PolygonQ& q) {
  FlipLattice fl;
  Perm id(q.n + 1);
  std::iota(id.begin(), id.end(), 1);
  Triangulation start = eta(id, q);
  fl.tris.push_back(start);
  fl.index[start] = 0;
  std::deque<int> queue{0};
  std::vector<std::pair<int, int>> covers;
  while (!queue.empty()) {
    int ti = queue.front();
    queue.pop_front();
    Triangulation cur = fl.tris[ti];
    for (auto d : cur.diagonals) {
      Triangulation nxt = flip(q, cur, d);
      auto it = fl.index.find(nxt);
      int ni;
      if (it == fl.index.end()) {
        ni = static_cast<int>(fl.tris.size());
        fl.tris.push_back(nxt);
        fl.index[nxt] = ni;
        queue.push_back(ni);
      } else {
        ni = it->second;
      }
      if (slope_increases(q, cur, d)) covers.push_back({ti, ni});
    }
  }
  if (static_cast<long long>(fl.tris.size()) != catalan(q.n + 1))
    throw Error("triangulation count " + std::to_string(fl.tris.size()) + " != Catalan(" +
                std::to_string(q.n + 1) + ")");
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  std::vector<std::string> labels(fl.tris.size());
  for (std::size_t i = 0; i < fl.tris.size(); ++i) labels[i] = fl.tris[i].str();
  fl.lattice = HasseLattice::from_covers(static_cast<int>(fl.tris.size()), std::move(covers),
                                         std::move(labels));
  return fl;
}

std::vector<Perm> all_perms(int m) {
  Perm x(m);
  std::iota(x.begin(), x.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(x);
  } while (std::next_permutation(x.begin(), x.end()));
  return out;
}

Bits perm_inversions(const Perm& x) {
  int m = static_cast<int>(x.size());
  Bits inv(m * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (x[i] > x[j]) {
        int a = x[j], b = x[i];  // a < b out of order
        inv.set((b - 1) * (b - 2) / 2 + (a - 1));
      }
  return inv;
}

bool perm_weak_le(const Perm& u, const Perm& w) {
  return perm_inversions(w).contains(perm_inversions(u));
}

Perm element_to_perm(const CoxeterSystem& sys, const Element& e) {
  int m = sys.rank() + 1;
  Perm x(m);
  std::iota(x.begin(), x.end(), 1);
  for (int s : sys.reduced_word(e)) std::swap(x[s], x[s + 1]);
  return x;
}

Element perm_to_element(const CoxeterSystem& sys, const Perm& x) {
  Perm cur = x;
  std::vector<int> word;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < static_cast<int>(cur.size()); ++i)
      if (cur[i] > cur[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        word.push_back(i);
        changed = true;
        break;
      }
  }
  std::reverse(word.begin(), word.end());
  return sys.product_of_word(word);
}

Perm ccw_cycle(const PolygonQ& q) {
  // counter-clockwise from the leftmost vertex: bottom left-to-right, then top
  // right-to-left
  std::vector<int> order;
  for (int i = 1; i <= q.n + 1; ++i)
    if (!q.is_up(i)) order.push_back(i);
  for (int i = q.n + 1; i >= 1; --i)
    if (q.is_up(i)) order.push_back(i);
  Perm x(q.n + 1);
  for (std::size_t k = 0; k < order.size(); ++k)
    x[order[k] - 1] = order[(k + 1) % order.size()];
  return x;
}

CoxeterElement coxeter_element_of_polygon(const CoxeterSystem& sys, const PolygonQ& q) {
  if (sys.rank() != q.n) throw BadInput("system rank must equal the polygon's n");
  Element e = perm_to_element(sys, ccw_cycle(q));
  return coxeter_element_from_word(sys, sys.reduced_word(e));
}

FiberReport fiber_extremes_check(const PolygonQ& q) {
  FiberReport rep;
  if (q.n > 7) throw BadInput("fiber check supports n <= 7");
  auto perms = all_perms(q.n + 1);
  std::map<Triangulation, std::vector<int>> fibers;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i)
    fibers[eta(perms[i], q)].push_back(i);
  rep.fibers = static_cast<int>(fibers.size());

  std::vector<Bits> inv;
  inv.reserve(perms.size());
  for (auto& x : perms) inv.push_back(perm_inversions(x));

  std::vector<int> min_of(perms.size(), -1), max_of(perms.size(), -1);
  for (auto& [tri, members] : fibers) {
    int lo = -1, hi = -1;
    for (int x : members) {
      bool is_lo = true, is_hi = true;
      for (int y : members) {
        if (y == x) continue;
        if (!inv[y].contains(inv[x])) is_lo = false;
        if (!inv[x].contains(inv[y])) is_hi = false;
      }
      if (is_lo) lo = x;
      if (is_hi) hi = x;
    }
    if (lo < 0 || hi < 0) {
      rep.witness = "fiber of " + tri.str() + " has no unique extreme";
      return rep;
    }
    // the fiber must be the full weak-order interval [lo, hi]
    int between = 0;
    for (std::size_t y = 0; y < perms.size(); ++y)
      if (inv[y].contains(inv[lo]) && inv[hi].contains(inv[y])) ++between;
    if (between != static_cast<int>(members.size())) {
      rep.witness = "fiber of " + tri.str() + " is not an interval";
      return rep;
    }
    for (int x : members) {
      min_of[x] = lo;
      max_of[x] = hi;
    }
  }

  // minimal in fiber ⟺ avoids 31↓2 and ↑231
  for (int x = 0; x < static_cast<int>(perms.size()); ++x) {
    bool is_min = (min_of[x] == x);
    bool avoids = !contains_pattern(perms[x], Pattern::P312_lower2, q.barring) &&
                  !contains_pattern(perms[x], Pattern::P231_upper2, q.barring);
    if (is_min != avoids) {
      rep.witness = "minimality/pattern mismatch at " + perm_str(perms[x]);
      return rep;
    }
  }
  // maxima characterizations are stated for the pure barrings only
  bool all_down = true, all_up = true;
  for (int i = 1; i <= q.n + 1; ++i) (q.is_up(i) ? all_down : all_up) = false;
  if (all_down || all_up) {
    Pattern p = all_down ? Pattern::P132 : Pattern::P213;
    for (int x = 0; x < static_cast<int>(perms.size()); ++x) {
      bool is_max = (max_of[x] == x);
      bool avoids = !contains_pattern(perms[x], p, q.barring);
      if (is_max != avoids) {
        rep.witness = "maximality/pattern mismatch at " + perm_str(perms[x]);
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

bool verify_eta_is_quotient_map(const WeakOrder& w, const PolygonQ& q, std::string* witness) {
  const CoxeterSystem& sys = w.sys();
  if (sys.rank() != q.n) throw BadInput("system rank must equal the polygon's n");
  if (q.n > 6) throw BadInput("quotient-map check supports n <= 6");
  auto fail = [&](const std::string& why) {
    if (witness) *witness = why;
    return false;
  };

  FlipLattice fl = tamari_like_lattice(q);
  std::vector<int> f(w.size());
  for (int v = 0; v < w.size(); ++v) {
    f[v] = fl.index_of(eta(element_to_perm(sys, w.element(v)), q));
    if (f[v] < 0) return fail("eta image missing from flip lattice");
  }

  // η-fibers = Cambrian congruence classes for the polygon's Coxeter element
  CoxeterElement c = coxeter_element_of_polygon(sys, q);
  Congruence theta = cambrian_congruence(w, c);
  if (theta.num_classes() != fl.lattice.n) return fail("class count != triangulation count");
  for (int u = 0; u < w.size(); ++u)
    for (int v = u + 1; v < w.size(); ++v)
      if ((f[u] == f[v]) != (theta.class_of[u] == theta.class_of[v]))
        return fail("eta fibers differ from Cambrian classes at (" + w.lattice().labels[u] +
                    "," + w.lattice().labels[v] + ")");

  // η is a lattice homomorphism onto the flip lattice
  Reachability rf(fl.lattice);
  auto tabs = kern::meet_join_tables(fl.lattice, rf);
  if (!tabs.ok) return fail("flip order is not a lattice: " + tabs.witness);
  auto pf = kern::hom_check(f, w.lattice(), w.reach, tabs.tables);
  if (!pf.ok)
    return fail("eta is not a homomorphism at pair (" + w.lattice().labels[pf.u] + "," +
                w.lattice().labels[pf.v] + ")");
  return true;
}

std::string perm_str(const Perm& x) {
  std::string out;
  for (int v : x) {
    if (x.size() > 9) out += (out.empty() ? "" : ".");
    out += std::to_string(v);
  }
  return out;
}

std::string triangulation_svg(const PolygonQ& q, const Triangulation& t) {
  double sx = 60.0, sy = 6.0;
  double w = (q.n + 2) * sx + 80, h = 2 * sy * (q.n + 2) * (q.n + 2) / 4.0 + 80;
  auto X = [&](int v) { return 40.0 + q.xy[v].first * sx; };
  auto Y = [&](int v) { return h / 2.0 - q.xy[v].second * sy; };
  std::ostringstream os;
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << static_cast<int>(w) << " "
     << static_cast<int>(h) << "\">\n";
  auto line = [&](int a, int b, const char* style) {
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" %s/>\n", X(a), Y(a),
                  X(b), Y(b), style);
    os << buf;
  };
  for (auto& [a, b] : q.boundary()) line(a, b, "stroke=\"black\" stroke-width=\"2\"");
  for (auto& [a, b] : t.diagonals) line(a, b, "stroke=\"crimson\" stroke-width=\"1.5\"");
  for (int v = 0; v <= q.n + 2; ++v) {
    std::snprintf(buf, sizeof buf,
                  "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\"/>\n  <text x=\"%.2f\" y=\"%.2f\" "
                  "font-size=\"12\">%d</text>\n",
                  X(v), Y(v), X(v) + 5, Y(v) - 5, v);
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

std::string triangulation_json(const PolygonQ& q, const Triangulation& t) {
  nlohmann::json j;
  j["n"] = q.n;
  j["barring"] = q.barring.str();
  j["diagonals"] = t.diagonals;
  return j.dump(2);
}

}  // namespace cambrian::typea

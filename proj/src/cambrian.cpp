#include "cambrian/cambrian.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "cambrian/kernels.hpp"
#include "json.hpp"

namespace cambrian {

namespace {

// linear extension of the orientation, smallest generator index first
std::vector<int> linear_extension(int rank, const Orientation& o) {
  std::vector<std::vector<int>> succ(rank);
  std::vector<int> indeg(rank, 0);
  for (const auto& e : o.edges) {
    int from = e.a_before_b ? e.a : e.b;
    int to = e.a_before_b ? e.b : e.a;
    succ[from].push_back(to);
    indeg[to]++;
  }
  std::vector<int> word;
  std::vector<char> used(rank, 0);
  for (int step = 0; step < rank; ++step) {
    int pick = -1;
    for (int s = 0; s < rank; ++s)
      if (!used[s] && indeg[s] == 0) {
        pick = s;
        break;
      }
    if (pick < 0) throw CyclicOrientation("orientation has a directed cycle");
    used[pick] = 1;
    word.push_back(pick);
    for (int t : succ[pick]) indeg[t]--;
  }
  return word;
}

}  // namespace

WeakOrder WeakOrder::build(const CoxeterSystem& sys, Caps caps) {
  EnumeratedGroup g = enumerate_group(sys, caps);
  if (g.order() > 20000)
    throw CapExceeded("weak-order lattice machinery is limited to 20000 elements, group has " +
                      std::to_string(g.order()));
  Reachability reach(g.lattice);
  auto forcing = std::make_unique<ForcingSystem>(g.lattice, reach);
  return WeakOrder{std::move(g), std::move(reach), std::move(forcing)};
}

Orientation Orientation::parse(const std::string& text, const CoxeterMatrix& m) {
  auto edges = m.diagram_edges();
  Orientation o;
  std::map<std::pair<int, int>, bool> seen;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw BadInput("bad orientation '" + text + "': " + why); };
  auto read_int = [&]() {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail("expected generator number");
    return std::stoi(text.substr(start, i - start));
  };
  while (i < text.size()) {
    int a = read_int();
    if (i >= text.size() || (text[i] != '>' && text[i] != '<')) fail("expected '<' or '>'");
    char dir = text[i++];
    int b = read_int();
    if (a < 1 || a > m.rank || b < 1 || b > m.rank || a == b) fail("generator out of range");
    int x = a - 1, y = b - 1;
    // "a>b" means a comes before b
    bool x_before_y = (dir == '>');
    if (x > y) {
      std::swap(x, y);
      x_before_y = !x_before_y;
    }
    if (m.m[x][y] < 3) fail("s" + std::to_string(x + 1) + ",s" + std::to_string(y + 1) + " commute");
    if (seen.count({x, y})) fail("edge oriented twice");
    seen[{x, y}] = x_before_y;
    if (i < text.size()) {
      if (text[i] != ',') fail("expected ','");
      ++i;
    }
  }
  for (auto& [x, y] : edges) {
    auto it = seen.find({x, y});
    if (it == seen.end())
      fail("edge s" + std::to_string(x + 1) + "-s" + std::to_string(y + 1) + " not oriented");
    o.edges.push_back({x, y, it->second});
  }
  return o;
}

std::string Orientation::str() const {
  std::string out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k) out += ",";
    const auto& e = edges[k];
    out += std::to_string(e.a + 1) + (e.a_before_b ? ">" : "<") + std::to_string(e.b + 1);
  }
  return out;
}

std::vector<Orientation> all_acyclic_orientations(const CoxeterMatrix& m) {
  auto edges = m.diagram_edges();
  int ne = static_cast<int>(edges.size());
  std::vector<Orientation> out;
  for (int mask = 0; mask < (1 << ne); ++mask) {
    Orientation o;
    for (int k = 0; k < ne; ++k)
      o.edges.push_back({edges[k].first, edges[k].second, (mask >> k & 1) != 0});
    try {
      linear_extension(m.rank, o);
    } catch (const CyclicOrientation&) {
      continue;
    }
    out.push_back(std::move(o));
  }
  return out;
}

CoxeterElement coxeter_element(const CoxeterSystem& sys, const Orientation& o) {
  CoxeterElement c;
  c.word = linear_extension(sys.rank(), o);
  c.elem = sys.product_of_word(c.word);
  return c;
}

CoxeterElement coxeter_element_from_word(const CoxeterSystem& sys, const std::vector<int>& word) {
  std::vector<char> used(sys.rank(), 0);
  if (static_cast<int>(word.size()) != sys.rank())
    throw BadInput("Coxeter element word must use each generator exactly once");
  for (int s : word) {
    if (s < 0 || s >= sys.rank() || used[s])
      throw BadInput("Coxeter element word must use each generator exactly once");
    used[s] = 1;
  }
  CoxeterElement c;
  c.word = word;
  c.elem = sys.product_of_word(word);
  return c;
}

Orientation orientation_of(const CoxeterSystem& sys, const CoxeterElement& c) {
  std::vector<int> pos(sys.rank());
  for (int k = 0; k < static_cast<int>(c.word.size()); ++k) pos[c.word[k]] = k;
  Orientation o;
  for (auto& [a, b] : sys.matrix().diagram_edges()) o.edges.push_back({a, b, pos[a] < pos[b]});
  return o;
}

Bits cambrian_generating_edges(const WeakOrder& w, const CoxeterElement& c) {
  const CoxeterSystem& sys = w.sys();
  Orientation o = orientation_of(sys, c);
  Bits edges(w.lattice().num_edges());
  for (const auto& de : o.edges) {
    int i = de.a_before_b ? de.a : de.b;  // i before j
    int j = de.a_before_b ? de.b : de.a;
    int m = sys.matrix().m[i][j];
    // chain s_j ⋖ s_js_i ⋖ ... ending at the alternating word with m-1 letters
    Element x = sys.generator(j);
    for (int t = 1; t <= m - 2; ++t) {
      int letter = (t % 2 == 1) ? i : j;
      Element next = sys.right_multiply(x, letter);
      int from = w.index_of(x), to = w.index_of(next);
      bool found = false;
      for (std::size_t k = 0; k < w.lattice().up[from].size(); ++k)
        if (w.lattice().up[from][k] == to) {
          edges.set(w.lattice().up_edge[from][k]);
          found = true;
        }
      if (!found) throw Error("generating chain is not a chain of covers");
      x = next;
    }
  }
  return edges;
}

Congruence cambrian_congruence(const WeakOrder& w, const CoxeterElement& c) {
  Bits closed = w.forcing->closure(cambrian_generating_edges(w, c));
  return congruence_from_edges(w.lattice(), w.reach, closed);
}

SortingWord sorting_word(const CoxeterSystem& sys, const Element& w, const std::vector<int>& c_word) {
  SortingWord sw;
  sw.skip.assign(sys.rank(), -1);
  Element rem = w;
  while (rem.length() > 0) {
    std::vector<int> pass;
    for (int t = 0; t < static_cast<int>(c_word.size()); ++t) {
      int s = c_word[t];
      if (rem.length() > 0 && sys.is_left_descent(s, rem)) {
        sw.letters.push_back(s);
        pass.push_back(s);
        rem = sys.left_multiply(s, rem);
      } else if (sw.skip[s] < 0) {
        sw.skip[s] = static_cast<int>(sw.letters.size());
      }
    }
    if (!pass.empty()) {
      sw.subsets.push_back(std::move(pass));
      sw.dividers.push_back(static_cast<int>(sw.letters.size()));
    }
  }
  // generators never rejected while building are first skipped once the word
  // is complete
  for (int s = 0; s < sys.rank(); ++s)
    if (sw.skip[s] < 0) sw.skip[s] = static_cast<int>(sw.letters.size());
  return sw;
}

bool SortingWord::sortable() const {
  for (std::size_t t = 1; t < subsets.size(); ++t) {
    // weakly decreasing under containment; subsets keep c_word order
    for (int s : subsets[t])
      if (std::find(subsets[t - 1].begin(), subsets[t - 1].end(), s) == subsets[t - 1].end())
        return false;
  }
  return true;
}

std::string SortingWord::str() const {
  if (letters.empty()) return "e";
  std::string out;
  std::size_t next_div = 0;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (next_div + 1 < dividers.size() && static_cast<int>(k) == dividers[next_div]) {
      out += "|";
      ++next_div;
    }
    out += "s" + std::to_string(letters[k] + 1);
  }
  return out;
}

bool is_sortable(const CoxeterSystem& sys, const Element& w, const CoxeterElement& c) {
  return sorting_word(sys, w, c.word).sortable();
}

namespace {

// w lies in the standard parabolic generated by the masked generators iff
// every inversion root is supported on them
bool in_parabolic(const CoxeterSystem& sys, const Element& w, std::uint32_t mask) {
  for (int p = 0; p < sys.num_positive_roots(); ++p)
    if (w.table()[p] < 0) {
      int r = -w.table()[p] - 1;
      if (sys.root_support(r) & ~mask) return false;
    }
  return true;
}

bool sortable_rec(const CoxeterSystem& sys, Element w, std::vector<int> word) {
  while (true) {
    if (w.length() == 0) return true;
    if (word.empty()) return false;
    int s = word.front();
    if (sys.is_left_descent(s, w)) {
      // w ≥ s: recurse on (sw, scs)
      w = sys.left_multiply(s, w);
      word.erase(word.begin());
      word.push_back(s);
    } else {
      // w ∈ W_<s> required, then recurse on (w, sc) inside the parabolic
      std::uint32_t mask = 0;
      for (std::size_t k = 1; k < word.size(); ++k) mask |= (1u << word[k]);
      if (!in_parabolic(sys, w, mask)) return false;
      word.erase(word.begin());
    }
  }
}

}  // namespace

bool is_sortable_recursive(const CoxeterSystem& sys, const Element& w, const CoxeterElement& c) {
  return sortable_rec(sys, w, c.word);
}

SearchTree sortable_search_tree(const WeakOrder& w, const CoxeterElement& c) {
  const CoxeterSystem& sys = w.sys();
  SearchTree tree;
  std::deque<std::pair<int, int>> queue;  // (weak-order element id, parent node index)
  queue.push_back({0, -1});
  while (!queue.empty()) {
    auto [vid, parent] = queue.front();
    queue.pop_front();
    int node = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(vid);
    tree.parent.push_back(parent);
    const Element& v = w.element(vid);
    SortingWord vw = sorting_word(sys, v, c.word);
    for (int s = 0; s < sys.rank(); ++s) {
      if (sys.is_right_descent(s, v)) continue;
      Element u = sys.right_multiply(v, s);
      SortingWord uw = sorting_word(sys, u, c.word);
      if (!uw.sortable()) continue;
      // child iff the sorting word extends the parent's by the one letter
      if (uw.letters.size() != vw.letters.size() + 1) continue;
      if (!std::equal(vw.letters.begin(), vw.letters.end(), uw.letters.begin())) continue;
      if (uw.letters.back() != s) continue;
      queue.push_back({w.index_of(u), node});
    }
  }
  return tree;
}

CambrianLattice cambrian_lattice(const WeakOrder& w, const CoxeterElement& c) {
  const CoxeterSystem& sys = w.sys();
  CambrianLattice out;
  for (int v = 0; v < w.size(); ++v)
    if (is_sortable(sys, w.element(v), c)) out.sortables.push_back(v);
  int k = static_cast<int>(out.sortables.size());
  std::vector<Bits> strictly_below(k, Bits(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && w.reach.le(out.sortables[i], out.sortables[j])) strictly_below[j].set(i);
  auto covers = transitive_reduction(k, strictly_below);
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = w.lattice().labels[out.sortables[i]];
  out.lattice = HasseLattice::from_covers(k, std::move(covers), std::move(labels));

  // cross-check: isomorphic (under the bottom-element bijection) to the
  // congruence quotient, and a lattice
  Congruence theta = cambrian_congruence(w, c);
  if (theta.num_classes() != k)
    throw NotACongruence("sortable count " + std::to_string(k) + " != class count " +
                         std::to_string(theta.num_classes()));
  std::vector<int> class_to_sub(theta.num_classes(), -1);
  for (int cidx = 0; cidx < theta.num_classes(); ++cidx) {
    auto it = std::lower_bound(out.sortables.begin(), out.sortables.end(), theta.bottom[cidx]);
    if (it == out.sortables.end() || *it != theta.bottom[cidx])
      throw NotACongruence("class bottom " + w.lattice().labels[theta.bottom[cidx]] +
                           " is not sortable");
    class_to_sub[cidx] = static_cast<int>(it - out.sortables.begin());
  }
  HasseLattice q = quotient(w.lattice(), theta);
  auto key = [](int a, int b) { return std::pair<int, int>(a, b); };
  std::set<std::pair<int, int>> qcov, scov;
  for (auto& [lo, hi] : q.covers) qcov.insert(key(class_to_sub[lo], class_to_sub[hi]));
  for (auto& [lo, hi] : out.lattice.covers) scov.insert(key(lo, hi));
  if (qcov != scov)
    throw NotACongruence("quotient and sortable subposet differ as posets");
  Reachability reach(out.lattice);
  std::string witness;
  if (!is_lattice(out.lattice, reach, &witness))
    throw NotALattice("Cambrian poset is not a lattice: " + witness);
  return out;
}

CVectorSet c_vectors(const CoxeterSystem& sys, const Element& v, const CoxeterElement& c) {
  SortingWord sw = sorting_word(sys, v, c.word);
  if (!sw.sortable()) throw NotSortable("element is not sortable for this Coxeter element");
  // prefix products a_1...a_j
  std::vector<Element> prefix;
  prefix.reserve(sw.letters.size() + 1);
  prefix.push_back(sys.identity());
  for (int s : sw.letters) prefix.push_back(sys.right_multiply(prefix.back(), s));
  CVectorSet cv;
  cv.signed_roots.resize(sys.rank());
  cv.vectors.resize(sys.rank());
  for (int s = 0; s < sys.rank(); ++s) {
    int sr = sys.apply_to_root(prefix[sw.skip[s]], s + 1);
    cv.signed_roots[s] = sr;
    std::vector<double> vec = sys.root(std::abs(sr) - 1);
    if (sr < 0)
      for (double& x : vec) x = -x;
    cv.vectors[s] = std::move(vec);
  }
  return cv;
}

std::string search_tree_dot(const WeakOrder& w, const SearchTree& t) {
  std::ostringstream os;
  os << "digraph search_tree {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << w.lattice().labels[t.nodes[i]] << "\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.parent[i] >= 0) os << "  n" << t.parent[i] << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

std::string sortable_records_json(const WeakOrder& w, const CoxeterElement& c) {
  const CoxeterSystem& sys = w.sys();
  nlohmann::json arr = nlohmann::json::array();
  for (int v = 0; v < w.size(); ++v) {
    if (!is_sortable(sys, w.element(v), c)) continue;
    SortingWord sw = sorting_word(sys, w.element(v), c.word);
    CVectorSet cv = c_vectors(sys, w.element(v), c);
    nlohmann::json rec;
    rec["element"] = w.lattice().labels[v];
    rec["sorting_word"] = sw.str();
    rec["dividers"] = sw.dividers;
    nlohmann::json subs = nlohmann::json::array();
    for (auto& sub : sw.subsets) {
      std::vector<std::string> names;
      for (int s : sub) names.push_back("s" + std::to_string(s + 1));
      subs.push_back(names);
    }
    rec["subsets"] = subs;
    nlohmann::json skips;
    for (int s = 0; s < sys.rank(); ++s) skips["s" + std::to_string(s + 1)] = sw.skip[s];
    rec["skip_table"] = skips;
    nlohmann::json cvecs;
    for (int s = 0; s < sys.rank(); ++s) cvecs["s" + std::to_string(s + 1)] = cv.vectors[s];
    rec["c_vectors"] = cvecs;
    arr.push_back(rec);
  }
  return arr.dump(2);
}

}  // namespace cambrian

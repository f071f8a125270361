#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cambrian/bits.hpp"
#include "cambrian/errors.hpp"

namespace cambrian {

// Finite poset given by its Hasse diagram: elements 0..n-1 and cover edges
// (lower, upper). Cover edges are indexed by their position in `covers`;
// EdgeSets are Bits over those indices.
struct HasseLattice {
  int n = 0;
  std::vector<std::pair<int, int>> covers;
  std::vector<std::string> labels;  // empty or size n

  // derived adjacency, filled by from_covers
  std::vector<std::vector<int>> up, down;            // neighbor element ids
  std::vector<std::vector<int>> up_edge, down_edge;  // parallel cover-edge ids
  std::vector<int> topo;                             // linear extension

  static HasseLattice from_covers(int n, std::vector<std::pair<int, int>> covers,
                                  std::vector<std::string> labels = {});

  int size() const { return n; }
  int num_edges() const { return static_cast<int>(covers.size()); }
  int min_element() const;  // throws NotALattice unless unique
  int max_element() const;
  const std::string& label_of(int v) const;

  // true iff no cover edge is implied by a chain of others
  bool is_transitively_reduced(std::string* witness = nullptr) const;
};

// Full order relation of a Hasse diagram as bitsets. Quadratic storage; callers
// gate construction on lattice size.
struct Reachability {
  std::vector<Bits> below, above;  // below[v] contains v itself
  explicit Reachability(const HasseLattice& L);
  bool le(int u, int w) const { return below[w].test(u); }
};

int meet(const HasseLattice& L, const Reachability& R, int u, int w);
int join(const HasseLattice& L, const Reachability& R, int u, int w);
bool is_lattice(const HasseLattice& L, const Reachability& R, std::string* witness = nullptr);

// f maps elements of L1 to elements of L2; checks f(u∧v)=f(u)∧f(v) and dually
// over all pairs.
bool is_lattice_homomorphism(const std::vector<int>& f, const HasseLattice& L1,
                             const Reachability& R1, const HasseLattice& L2,
                             const Reachability& R2, std::string* witness = nullptr);

// An interval [min,max] whose Hasse diagram is a single even cycle: two
// disjoint maximal chains. chain_a/chain_b hold cover-edge ids from bottom to
// top; chain_a[0] and chain_b[0] are the bottom edges, the last entries the
// top edges, everything between a side edge.
struct PolygonalInterval {
  int min = 0, max = 0;
  std::vector<int> chain_a, chain_b;

  int half_length() const { return static_cast<int>(chain_a.size()); }
  // edge related by a half-turn of the cycle
  int opposite(int edge) const;
  bool is_bottom(int edge) const { return edge == chain_a.front() || edge == chain_b.front(); }
  bool is_top(int edge) const { return edge == chain_a.back() || edge == chain_b.back(); }
  std::vector<int> side_edges() const;
  std::vector<int> all_edges() const;
};

// Every interval [u, us∨ut] over cover pairs, each verified to be a cycle.
// Throws NotPolygonal when some such interval is not a cycle.
std::vector<PolygonalInterval> polygonal_intervals(const HasseLattice& L, const Reachability& R);

// Precomputed polygonal intervals plus the per-edge trigger index; closure is
// called once per Cambrian element choice, so the precomputation amortizes.
class ForcingSystem {
public:
  ForcingSystem(const HasseLattice& L, const Reachability& R);
  const std::vector<PolygonalInterval>& polygons() const { return polys_; }

  // minimal superset of seed closed under local forcing: whenever a bottom or
  // top edge of a polygonal interval is in the set, so are its opposite edge
  // and all side edges of that interval
  Bits closure(const Bits& seed) const;

private:
  int num_edges_ = 0;
  std::vector<PolygonalInterval> polys_;
  std::vector<std::vector<int>> trigger_;  // edge id -> polygons where it is bottom/top
};

struct Congruence {
  std::vector<int> class_of;               // element -> class id
  std::vector<std::vector<int>> classes;   // sorted member lists
  std::vector<int> bottom, top;            // per class
  Bits contracted;                         // covers whose endpoints share a class

  int num_classes() const { return static_cast<int>(classes.size()); }
  int pi_down(int x) const { return bottom[class_of[x]]; }
  int pi_up(int x) const { return top[class_of[x]]; }
};

// Classes are the connected components of the contracted-edge subgraph;
// verifies (i) interval classes, (ii) π↓ order-preserving, (iii) π↑
// order-preserving, and throws NotACongruence with a witness otherwise.
Congruence congruence_from_edges(const HasseLattice& L, const Reachability& R, const Bits& edges);

HasseLattice quotient(const HasseLattice& L, const Congruence& theta);
HasseLattice bottoms_subposet(const HasseLattice& L, const Reachability& R, const Congruence& theta);

// transitive reduction of an explicit strict order (strictly_below[v] excludes v)
std::vector<std::pair<int, int>> transitive_reduction(int n, const std::vector<Bits>& strictly_below);

std::string lattice_dot(const HasseLattice& L, const Bits* contracted = nullptr,
                        const std::string& name = "lattice");
std::string congruence_json(const Congruence& theta);

}  // namespace cambrian

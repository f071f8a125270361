#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cambrian/cambrian.hpp"

// Symmetric-group realization: barred polygons, the permutations-to-
// triangulations map, pattern characterizations of fiber extremes, diagonal
// flips and the slope-ordered flip lattices.
namespace cambrian::typea {

using Perm = std::vector<int>;  // one-line notation, values 1..n+1
using Diagonal = std::pair<int, int>;

struct Barring {
  std::vector<std::uint8_t> up;  // index by label 1..n+1; up[0] unused

  static Barring all_down(int n);
  static Barring parse(const std::string& text);  // over {u,d}, length n+1
  int n() const { return static_cast<int>(up.size()) - 2; }
  bool is_up(int label) const { return up[label] != 0; }
  std::string str() const;
};

// Convex (n+3)-gon: vertex i at x=i, y=±i(n+2-i), labels 0 and n+2 on the
// horizontal axis.
struct PolygonQ {
  int n = 0;
  Barring barring;
  std::vector<std::pair<long long, long long>> xy;  // by label 0..n+2

  bool is_up(int label) const;
  std::vector<Diagonal> boundary() const;  // hull edges, sorted pairs
};

PolygonQ build_polygon(int n, const Barring& barring);

struct Triangulation {
  std::vector<Diagonal> diagonals;  // sorted; exactly n of them

  bool operator==(const Triangulation& o) const { return diagonals == o.diagonals; }
  bool operator<(const Triangulation& o) const { return diagonals < o.diagonals; }
  std::string str() const;
};

// Path evolution: start along the bottom of Q, read the one-line notation left
// to right, delete bottom vertices and insert top vertices; the triangulation
// is the union of the paths.
Triangulation eta(const Perm& x, const PolygonQ& q);

enum class Pattern {
  P312_lower2,  // 312 with the "2" lower-barred
  P231_upper2,  // 231 with the "2" upper-barred
  P312,
  P132,
  P231,
  P213,
};

bool contains_pattern(const Perm& x, Pattern p, const Barring& barring);

Triangulation flip(const PolygonQ& q, const Triangulation& t, Diagonal d);  // NotADiagonal
// true when the diagonal replacing d has larger slope (exact rational compare)
bool slope_increases(const PolygonQ& q, const Triangulation& t, Diagonal d);

struct FlipLattice {
  std::vector<Triangulation> tris;
  HasseLattice lattice;  // covers are slope-increasing flips
  std::map<Triangulation, int> index;

  int index_of(const Triangulation& t) const;
};

FlipLattice tamari_like_lattice(const PolygonQ& q);

std::vector<Perm> all_perms(int m);       // S_m in lexicographic order
Bits perm_inversions(const Perm& x);      // value pairs (a,b), a<b, b before a
bool perm_weak_le(const Perm& u, const Perm& w);

Perm element_to_perm(const CoxeterSystem& sys, const Element& e);
Element perm_to_element(const CoxeterSystem& sys, const Perm& x);

// the (n+1)-cycle read counter-clockwise around Q (excluding 0 and n+2)
Perm ccw_cycle(const PolygonQ& q);
CoxeterElement coxeter_element_of_polygon(const CoxeterSystem& sys, const PolygonQ& q);

struct FiberReport {
  bool ok = false;
  int fibers = 0;
  std::string witness;
};

// Groups S_{n+1} by η-image; verifies each fiber is a weak-order interval and
// that minima avoid 31↓2 and ↑231 (and maxima the mirror patterns).
FiberReport fiber_extremes_check(const PolygonQ& q);

// η-fibers equal the Cambrian congruence classes for the polygon's Coxeter
// element, and η is a lattice homomorphism onto the flip lattice.
bool verify_eta_is_quotient_map(const WeakOrder& w, const PolygonQ& q,
                                std::string* witness = nullptr);

std::string triangulation_svg(const PolygonQ& q, const Triangulation& t);
std::string triangulation_json(const PolygonQ& q, const Triangulation& t);
std::string perm_str(const Perm& x);

}  // namespace cambrian::typea

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/lattice.hpp"

namespace cambrian {

// Weak-order workbench for one finite Coxeter system: the enumerated group,
// its Hasse diagram, reachability bitsets and the precomputed polygonal
// intervals. Everything here is immutable after build and shared by the
// congruence, sortable and fan code.
struct WeakOrder {
  EnumeratedGroup group;
  Reachability reach;
  std::unique_ptr<ForcingSystem> forcing;

  const CoxeterSystem& sys() const { return group.system; }
  const HasseLattice& lattice() const { return group.lattice; }
  int size() const { return group.lattice.n; }
  const Element& element(int i) const { return group.elements[i]; }
  int index_of(const Element& e) const { return group.index_of(e); }

  static WeakOrder build(const CoxeterSystem& sys, Caps caps = {});
};

// Orientation of the Coxeter diagram: one direction per edge with m(i,j) >= 3.
struct Orientation {
  struct Edge {
    int a = 0, b = 0;           // a < b, diagram edge
    bool a_before_b = true;
  };
  std::vector<Edge> edges;

  static Orientation parse(const std::string& text, const CoxeterMatrix& m);  // "1>2,3>2"
  std::string str() const;
};

std::vector<Orientation> all_acyclic_orientations(const CoxeterMatrix& m);

struct CoxeterElement {
  std::vector<int> word;  // each generator exactly once
  Element elem;
};

CoxeterElement coxeter_element(const CoxeterSystem& sys, const Orientation& o);  // CyclicOrientation
CoxeterElement coxeter_element_from_word(const CoxeterSystem& sys, const std::vector<int>& word);
Orientation orientation_of(const CoxeterSystem& sys, const CoxeterElement& c);

// The (s_1,...,s_n)-sorting word of an element: letters chosen by cyclic passes
// through c_word, dividers between passes, the per-pass letter subsets, and for
// each generator the prefix length after which it is first tried and skipped.
struct SortingWord {
  std::vector<int> letters;
  std::vector<int> dividers;              // cumulative letter count at each pass end
  std::vector<std::vector<int>> subsets;  // letters per pass, in pass order
  std::vector<int> skip;                  // per generator

  bool sortable() const;  // subsets weakly decreasing under containment
  std::string str() const;
};

SortingWord sorting_word(const CoxeterSystem& sys, const Element& w, const std::vector<int>& c_word);
bool is_sortable(const CoxeterSystem& sys, const Element& w, const CoxeterElement& c);
// recursion on length and rank via the initial-letter lemmas
bool is_sortable_recursive(const CoxeterSystem& sys, const Element& w, const CoxeterElement& c);

// For each diagram edge with i before j, the m(i,j)-2 covers of the chain
// s_j ⋖ s_js_i ⋖ ... up to the alternating word with m(i,j)-1 letters.
Bits cambrian_generating_edges(const WeakOrder& w, const CoxeterElement& c);
Congruence cambrian_congruence(const WeakOrder& w, const CoxeterElement& c);

// Search tree on sortables: parent drops the last letter of the sorting word.
struct SearchTree {
  std::vector<int> nodes;   // weak-order element ids, root (identity) first
  std::vector<int> parent;  // index into nodes, -1 for the root
};

SearchTree sortable_search_tree(const WeakOrder& w, const CoxeterElement& c);

struct CambrianLattice {
  std::vector<int> sortables;  // weak-order element ids, ascending
  HasseLattice lattice;        // induced subposet of the weak order
};

// Induced subposet on sortables; verified isomorphic to the congruence
// quotient and verified to be a lattice.
CambrianLattice cambrian_lattice(const WeakOrder& w, const CoxeterElement& c);

struct CVectorSet {
  std::vector<int> signed_roots;             // per generator, ±(p+1)
  std::vector<std::vector<double>> vectors;  // simple-basis coordinates
};

// C_c^{s_i}(v) = (sorting-word prefix before s_i is skipped) · α_i
CVectorSet c_vectors(const CoxeterSystem& sys, const Element& v, const CoxeterElement& c);

std::string search_tree_dot(const WeakOrder& w, const SearchTree& t);
std::string sortable_records_json(const WeakOrder& w, const CoxeterElement& c);

}  // namespace cambrian

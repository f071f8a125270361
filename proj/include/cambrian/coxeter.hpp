#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cambrian/bits.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/lattice.hpp"

namespace cambrian {

struct Caps {
  int max_positive_roots = 20000;
  long long max_elements = 2000000;
};

struct CoxeterMatrix {
  int rank = 0;
  std::vector<std::vector<int>> m;  // symmetric, m(i,i)=1, m(i,j)>=2

  void validate() const;  // BadMatrix
  static CoxeterMatrix dihedral(int order_m);
  // edges {i<j} with m(i,j) >= 3
  std::vector<std::pair<int, int>> diagram_edges() const;
};

// Classification label, e.g. "A3", "I2(7)", "B2xA1". Factors are assembled
// block-diagonally in the order written.
struct CoxeterLabel {
  struct Factor {
    char family = 'A';  // A,B,D,E,F,H,I (I means I2(param))
    int param = 1;      // rank, or m for I2(m)
  };
  std::vector<Factor> factors;

  static CoxeterLabel parse(const std::string& text);  // BadInput
  CoxeterMatrix matrix() const;
  std::string str() const;
  int rank() const;
  bool single_type_a() const;  // one A_n factor (one-line labels apply)
};

namespace detail {
struct SysData;
}

// A group member stored as its action on positive roots: act[p] = ±(q+1) when
// the element sends positive root p to ±(positive root q). Exact integer data;
// floating point enters only while the root system is enumerated.
class Element {
public:
  Element() = default;
  bool valid() const { return d_ != nullptr; }
  int length() const { return len_; }
  bool is_identity() const { return valid() && len_ == 0; }
  const std::vector<std::int32_t>& table() const { return act_; }
  bool operator==(const Element& o) const { return d_.get() == o.d_.get() && act_ == o.act_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

private:
  friend class CoxeterSystem;
  friend struct ElementHash;
  std::shared_ptr<const detail::SysData> d_;
  std::vector<std::int32_t> act_;
  int len_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

class CoxeterSystem {
public:
  CoxeterSystem() = default;
  // Enumerates the root system of the standard geometric representation;
  // throws InfiniteType when the enumeration exceeds caps.max_positive_roots.
  static CoxeterSystem build(const CoxeterMatrix& m, Caps caps = {});
  static CoxeterSystem build(const CoxeterLabel& label, Caps caps = {});
  static CoxeterSystem build(const std::string& label_text, Caps caps = {});

  bool valid() const { return d_ != nullptr; }
  int rank() const;
  const CoxeterMatrix& matrix() const;
  const CoxeterLabel* label() const;  // null when built from a raw matrix
  int num_positive_roots() const;
  // coordinates in the simple-root basis; roots 0..rank-1 are the simple roots
  const std::vector<double>& root(int p) const;
  std::uint32_t root_support(int p) const;  // generator bitmask of nonzero coords
  double bilinear(const std::vector<double>& x, const std::vector<double>& y) const;

  Element identity() const;
  Element generator(int s) const;
  Element multiply(const Element& u, const Element& w) const;  // u·w, SystemMismatch
  Element inverse(const Element& w) const;
  Element left_multiply(int s, const Element& w) const;
  Element right_multiply(const Element& w, int s) const;
  Element product_of_word(const std::vector<int>& word) const;

  int length(const Element& w) const { return w.length(); }
  Bits inversion_set(const Element& w) const;
  bool is_left_descent(int s, const Element& w) const;
  bool is_right_descent(int s, const Element& w) const;
  std::vector<int> descents_left(const Element& w) const;
  std::vector<int> descents_right(const Element& w) const;

  // right weak order: inversion-set containment
  bool weak_le(const Element& u, const Element& w) const;
  std::vector<Element> weak_covers(const Element& w) const;  // {ws : ℓ(ws)=ℓ(w)+1}

  std::vector<int> reduced_word(const Element& w) const;
  // restart the try-order at order[0] every step; default order s1,s2,...
  std::vector<int> lex_min_reduced_word(const Element& w, std::vector<int> order = {}) const;
  std::vector<std::vector<int>> all_reduced_words(const Element& w) const;

  // action on a signed positive-root index (±(p+1) encoding)
  int apply_to_root(const Element& w, int signed_root) const;

  // euclidean embedding y = Lᵀx with B = LLᵀ (Cholesky of the form)
  Eigen::VectorXd euclid(const std::vector<double>& simple_coords) const;
  Eigen::VectorXd euclid_root(int signed_root) const;
  // Σω in euclidean coordinates: B(Σω, α_i) = 1 for all i, interior to D
  Eigen::VectorXd weight_sum() const;

  std::string word_str(const std::vector<int>& word) const;  // "s1s2s1", "e"
  static std::vector<int> parse_word(const std::string& text, int rank);

  bool same_system(const Element& a) const;

private:
  std::shared_ptr<const detail::SysData> d_;
};

struct EnumeratedGroup {
  CoxeterSystem system;
  std::vector<Element> elements;  // BFS order by length, [0] identity
  HasseLattice lattice;           // right weak order covers, lex-min word labels

  long long order() const { return static_cast<long long>(elements.size()); }
  int index_of(const Element& e) const;  // -1 when absent

  std::unordered_map<Element, int, ElementHash> index;
};

// BFS from the identity by right multiplication; CapExceeded beyond
// caps.max_elements.
EnumeratedGroup enumerate_group(const CoxeterSystem& sys, Caps caps = {});

// {rank, matrix, positive_root_count, order}
std::string system_json(const CoxeterSystem& sys, long long order);

}  // namespace cambrian

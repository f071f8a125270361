#include "cambrian/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>

#include "json.hpp"

namespace cambrian {

namespace {
constexpr double kTol = 1e-9;
constexpr double kPi = 3.14159265358979323846264338328;
}  // namespace

void CoxeterMatrix::validate() const {
  if (rank < 1) throw BadMatrix("rank must be positive");
  if (static_cast<int>(m.size()) != rank) throw BadMatrix("matrix size does not match rank");
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(m[i].size()) != rank) throw BadMatrix("matrix is not square");
    if (m[i][i] != 1) throw BadMatrix("diagonal entries must be 1");
    for (int j = 0; j < rank; ++j) {
      if (i != j && m[i][j] < 2) throw BadMatrix("off-diagonal entries must be >= 2");
      if (m[i][j] != m[j][i]) throw BadMatrix("matrix must be symmetric");
    }
  }
}

CoxeterMatrix CoxeterMatrix::dihedral(int order_m) {
  CoxeterMatrix cm;
  cm.rank = 2;
  cm.m = {{1, order_m}, {order_m, 1}};
  return cm;
}

std::vector<std::pair<int, int>> CoxeterMatrix::diagram_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      if (m[i][j] >= 3) out.push_back({i, j});
  return out;
}

namespace {

CoxeterMatrix factor_matrix(const CoxeterLabel::Factor& f) {
  auto path = [](int n, std::map<std::pair<int, int>, int> special) {
    CoxeterMatrix cm;
    cm.rank = n;
    cm.m.assign(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i) cm.m[i][i] = 1;
    for (int i = 0; i + 1 < n; ++i) cm.m[i][i + 1] = cm.m[i + 1][i] = 3;
    for (auto& [ij, v] : special) cm.m[ij.first][ij.second] = cm.m[ij.second][ij.first] = v;
    return cm;
  };
  switch (f.family) {
    case 'A':
      if (f.param < 1) throw BadInput("A_n needs n >= 1");
      return path(f.param, {});
    case 'B':
      if (f.param < 2) throw BadInput("B_n needs n >= 2");
      return path(f.param, {{{0, 1}, 4}});
    case 'D': {
      if (f.param < 4) throw BadInput("D_n needs n >= 4");
      int n = f.param;
      CoxeterMatrix cm = path(n, {});
      // fork at the start: generators 1 and 2 are the prongs on generator 3
      cm.m[0][1] = cm.m[1][0] = 2;
      cm.m[0][2] = cm.m[2][0] = 3;
      return cm;
    }
    case 'E': {
      if (f.param < 6 || f.param > 8) throw BadInput("E_n needs n in {6,7,8}");
      int n = f.param;
      // chain 1..n-1 with generator n attached to the third chain node
      CoxeterMatrix cm = path(n, {});
      cm.m[n - 2][n - 1] = cm.m[n - 1][n - 2] = 2;
      cm.m[2][n - 1] = cm.m[n - 1][2] = 3;
      return cm;
    }
    case 'F':
      if (f.param != 4) throw BadInput("only F4 exists");
      return path(4, {{{1, 2}, 4}});
    case 'H':
      if (f.param != 3 && f.param != 4) throw BadInput("only H3 and H4 exist");
      return path(f.param, {{{0, 1}, 5}});
    case 'I':
      if (f.param < 2) throw BadInput("I2(m) needs m >= 2");
      return CoxeterMatrix::dihedral(f.param);
    default:
      throw BadInput("unknown family");
  }
}

}  // namespace

CoxeterLabel CoxeterLabel::parse(const std::string& text) {
  CoxeterLabel label;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw BadInput("bad label '" + text + "': " + why); };
  while (i < text.size()) {
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (std::string("ABDEFHI").find(fam) == std::string::npos) fail("unknown family letter");
    ++i;
    Factor f;
    f.family = fam;
    if (fam == 'I') {
      if (i >= text.size() || text[i] != '2') fail("expected I2(m)");
      ++i;
      if (i >= text.size() || text[i] != '(') fail("expected I2(m)");
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || i >= text.size() || text[i] != ')') fail("expected I2(m)");
      f.param = std::stoi(text.substr(start, i - start));
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) fail("missing rank");
      f.param = std::stoi(text.substr(start, i - start));
    }
    label.factors.push_back(f);
    if (i < text.size()) {
      if (text[i] != 'x' && text[i] != 'X') fail("expected 'x' between factors");
      ++i;
      if (i >= text.size()) fail("trailing 'x'");
    }
  }
  if (label.factors.empty()) fail("empty");
  // validates parameter ranges
  for (const auto& f : label.factors) factor_matrix(f);
  return label;
}

CoxeterMatrix CoxeterLabel::matrix() const {
  CoxeterMatrix cm;
  cm.rank = rank();
  cm.m.assign(cm.rank, std::vector<int>(cm.rank, 2));
  for (int i = 0; i < cm.rank; ++i) cm.m[i][i] = 1;
  int base = 0;
  for (const auto& f : factors) {
    CoxeterMatrix block = factor_matrix(f);
    for (int i = 0; i < block.rank; ++i)
      for (int j = 0; j < block.rank; ++j) cm.m[base + i][base + j] = block.m[i][j];
    base += block.rank;
  }
  return cm;
}

std::string CoxeterLabel::str() const {
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) out += "x";
    const auto& f = factors[k];
    if (f.family == 'I')
      out += "I2(" + std::to_string(f.param) + ")";
    else
      out += std::string(1, f.family) + std::to_string(f.param);
  }
  return out;
}

int CoxeterLabel::rank() const {
  int r = 0;
  for (const auto& f : factors) r += (f.family == 'I') ? 2 : f.param;
  return r;
}

bool CoxeterLabel::single_type_a() const {
  return factors.size() == 1 && factors[0].family == 'A';
}

namespace detail {

struct SysData {
  CoxeterMatrix cm;
  std::unique_ptr<CoxeterLabel> label;
  int rank = 0;
  std::vector<std::vector<double>> form;   // B(α_i, α_j) = -cos(π/m(i,j))
  std::vector<std::vector<double>> roots;  // positive roots, simple-basis coords
  std::vector<std::uint32_t> support;      // nonzero-coordinate mask per root
  std::vector<std::vector<std::int32_t>> gen_act;  // generator tables, ±(q+1)
  Eigen::MatrixXd chol_lt;                 // Lᵀ with form = LLᵀ
};

}  // namespace detail

namespace {

using detail::SysData;

bool same_vec(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::fabs(a[k] - b[k]) >= kTol) return false;
  return true;
}

// index of vector v among roots, or -1; candidates narrowed through a sorted
// first-coordinate window so the degenerate (infinite-type) case stays fast
struct RootRegistry {
  const std::vector<std::vector<double>>* roots;
  std::multimap<double, int> by_first;

  int find(const std::vector<double>& v) const {
    auto lo = by_first.lower_bound(v[0] - 1e-6);
    auto hi = by_first.upper_bound(v[0] + 1e-6);
    for (auto it = lo; it != hi; ++it)
      if (same_vec((*roots)[it->second], v)) return it->second;
    return -1;
  }
  void add(const std::vector<double>& v, int idx) { by_first.insert({v[0], idx}); }
};

std::vector<double> reflect(const SysData& d, int s, const std::vector<double>& x) {
  // s_i(x) = x - 2 B(x, α_i) α_i ; only coordinate i changes in the simple basis
  double bx = 0;
  for (int j = 0; j < d.rank; ++j) bx += x[j] * d.form[j][s];
  std::vector<double> y = x;
  y[s] -= 2.0 * bx;
  return y;
}

int sign_of(const std::vector<double>& v) {
  for (double c : v) {
    if (c > kTol) return +1;
    if (c < -kTol) return -1;
  }
  return 0;
}

std::vector<double> negate(std::vector<double> v) {
  for (double& c : v) c = -c;
  return v;
}

}  // namespace

namespace {

std::shared_ptr<SysData> build_sys_data(const CoxeterMatrix& cm, Caps caps) {
  cm.validate();
  if (cm.rank > 32) throw BadInput("rank is limited to 32 (generator bitmasks)");
  auto d = std::make_shared<SysData>();
  d->cm = cm;
  d->rank = cm.rank;
  d->form.assign(cm.rank, std::vector<double>(cm.rank));
  for (int i = 0; i < cm.rank; ++i)
    for (int j = 0; j < cm.rank; ++j) d->form[i][j] = -std::cos(kPi / cm.m[i][j]);

  // enumerate positive roots: closure of the simple roots under the simple
  // reflections; a negative image is always the negative of a known positive
  RootRegistry reg;
  reg.roots = &d->roots;
  for (int i = 0; i < cm.rank; ++i) {
    std::vector<double> e(cm.rank, 0.0);
    e[i] = 1.0;
    d->roots.push_back(std::move(e));
    reg.add(d->roots.back(), i);
  }
  for (std::size_t head = 0; head < d->roots.size(); ++head) {
    for (int s = 0; s < cm.rank; ++s) {
      std::vector<double> img = reflect(*d, s, d->roots[head]);
      int sgn = sign_of(img);
      if (sgn == 0) throw Error("degenerate root image");
      if (sgn < 0) continue;  // -α_s for head == s; otherwise impossible
      if (reg.find(img) >= 0) continue;
      if (static_cast<int>(d->roots.size()) >= caps.max_positive_roots)
        throw InfiniteType("positive root enumeration exceeded cap of " +
                           std::to_string(caps.max_positive_roots));
      d->roots.push_back(std::move(img));
      reg.add(d->roots.back(), static_cast<int>(d->roots.size()) - 1);
    }
  }

  int p = static_cast<int>(d->roots.size());
  d->support.resize(p);
  for (int r = 0; r < p; ++r) {
    std::uint32_t mask = 0;
    for (int k = 0; k < cm.rank; ++k)
      if (std::fabs(d->roots[r][k]) > kTol) mask |= (1u << k);
    d->support[r] = mask;
  }

  d->gen_act.assign(cm.rank, std::vector<std::int32_t>(p));
  for (int s = 0; s < cm.rank; ++s)
    for (int r = 0; r < p; ++r) {
      std::vector<double> img = reflect(*d, s, d->roots[r]);
      int sgn = sign_of(img);
      int idx = (sgn > 0) ? reg.find(img) : reg.find(negate(img));
      if (idx < 0) throw Error("root system not closed under reflection");
      d->gen_act[s][r] = (sgn > 0) ? (idx + 1) : -(idx + 1);
    }

  Eigen::MatrixXd B(cm.rank, cm.rank);
  for (int i = 0; i < cm.rank; ++i)
    for (int j = 0; j < cm.rank; ++j) B(i, j) = d->form[i][j];
  Eigen::LLT<Eigen::MatrixXd> llt(B);
  if (llt.info() != Eigen::Success)
    throw InfiniteType("bilinear form is not positive definite");
  d->chol_lt = llt.matrixL().transpose();
  return d;
}

}  // namespace

CoxeterSystem CoxeterSystem::build(const CoxeterMatrix& cm, Caps caps) {
  CoxeterSystem sys;
  sys.d_ = build_sys_data(cm, caps);
  return sys;
}

CoxeterSystem CoxeterSystem::build(const CoxeterLabel& label, Caps caps) {
  auto d = build_sys_data(label.matrix(), caps);
  d->label = std::make_unique<CoxeterLabel>(label);
  CoxeterSystem sys;
  sys.d_ = std::move(d);
  return sys;
}

CoxeterSystem CoxeterSystem::build(const std::string& label_text, Caps caps) {
  return build(CoxeterLabel::parse(label_text), caps);
}

int CoxeterSystem::rank() const { return d_->rank; }
const CoxeterMatrix& CoxeterSystem::matrix() const { return d_->cm; }
const CoxeterLabel* CoxeterSystem::label() const { return d_->label.get(); }
int CoxeterSystem::num_positive_roots() const { return static_cast<int>(d_->roots.size()); }
const std::vector<double>& CoxeterSystem::root(int p) const { return d_->roots[p]; }
std::uint32_t CoxeterSystem::root_support(int p) const { return d_->support[p]; }

double CoxeterSystem::bilinear(const std::vector<double>& x, const std::vector<double>& y) const {
  double acc = 0;
  for (int i = 0; i < d_->rank; ++i)
    for (int j = 0; j < d_->rank; ++j) acc += x[i] * d_->form[i][j] * y[j];
  return acc;
}

bool CoxeterSystem::same_system(const Element& a) const { return a.d_.get() == d_.get(); }

Element CoxeterSystem::identity() const {
  Element e;
  e.d_ = d_;
  int p = num_positive_roots();
  e.act_.resize(p);
  for (int i = 0; i < p; ++i) e.act_[i] = i + 1;
  e.len_ = 0;
  return e;
}

Element CoxeterSystem::generator(int s) const {
  if (s < 0 || s >= d_->rank) throw BadInput("generator index out of range");
  Element e;
  e.d_ = d_;
  e.act_ = d_->gen_act[s];
  e.len_ = 1;
  return e;
}

namespace {

int count_negatives(const std::vector<std::int32_t>& act) {
  int c = 0;
  for (auto v : act) c += (v < 0);
  return c;
}

}  // namespace

Element CoxeterSystem::multiply(const Element& u, const Element& w) const {
  if (!same_system(u) || !same_system(w)) throw SystemMismatch("elements from different systems");
  Element r;
  r.d_ = d_;
  int p = num_positive_roots();
  r.act_.resize(p);
  for (int i = 0; i < p; ++i) {
    std::int32_t wv = w.act_[i];
    std::int32_t uv = u.act_[std::abs(wv) - 1];
    r.act_[i] = (wv > 0) ? uv : -uv;
  }
  r.len_ = count_negatives(r.act_);
  return r;
}

Element CoxeterSystem::inverse(const Element& w) const {
  if (!same_system(w)) throw SystemMismatch("element from another system");
  Element r;
  r.d_ = d_;
  int p = num_positive_roots();
  r.act_.resize(p);
  for (int i = 0; i < p; ++i) {
    std::int32_t v = w.act_[i];
    if (v > 0)
      r.act_[v - 1] = i + 1;
    else
      r.act_[-v - 1] = -(i + 1);
  }
  r.len_ = w.len_;
  return r;
}

Element CoxeterSystem::left_multiply(int s, const Element& w) const {
  return multiply(generator(s), w);
}

Element CoxeterSystem::right_multiply(const Element& w, int s) const {
  return multiply(w, generator(s));
}

Element CoxeterSystem::product_of_word(const std::vector<int>& word) const {
  Element e = identity();
  for (int s : word) e = right_multiply(e, s);
  return e;
}

Bits CoxeterSystem::inversion_set(const Element& w) const {
  // inv(w) = N(w⁻¹): the positive roots appearing as negated images of w
  Bits out(num_positive_roots());
  for (auto v : w.act_)
    if (v < 0) out.set(-v - 1);
  return out;
}

bool CoxeterSystem::is_left_descent(int s, const Element& w) const {
  // ℓ(sw) < ℓ(w)  ⟺  w⁻¹α_s < 0  ⟺  α_s ∈ inv(w)
  for (auto v : w.act_)
    if (v == -(s + 1)) return true;
  return false;
}

bool CoxeterSystem::is_right_descent(int s, const Element& w) const {
  // ℓ(ws) < ℓ(w)  ⟺  wα_s < 0
  return w.act_[s] < 0;
}

std::vector<int> CoxeterSystem::descents_left(const Element& w) const {
  std::vector<int> out;
  for (int s = 0; s < rank(); ++s)
    if (is_left_descent(s, w)) out.push_back(s);
  return out;
}

std::vector<int> CoxeterSystem::descents_right(const Element& w) const {
  std::vector<int> out;
  for (int s = 0; s < rank(); ++s)
    if (is_right_descent(s, w)) out.push_back(s);
  return out;
}

bool CoxeterSystem::weak_le(const Element& u, const Element& w) const {
  if (!same_system(u) || !same_system(w)) throw SystemMismatch("elements from different systems");
  return inversion_set(w).contains(inversion_set(u));
}

std::vector<Element> CoxeterSystem::weak_covers(const Element& w) const {
  std::vector<Element> out;
  for (int s = 0; s < rank(); ++s)
    if (!is_right_descent(s, w)) out.push_back(right_multiply(w, s));
  return out;
}

std::vector<int> CoxeterSystem::lex_min_reduced_word(const Element& w, std::vector<int> order) const {
  if (order.empty()) {
    order.resize(rank());
    for (int s = 0; s < rank(); ++s) order[s] = s;
  }
  std::vector<int> word;
  Element cur = w;
  while (cur.length() > 0) {
    for (int s : order)
      if (is_left_descent(s, cur)) {
        word.push_back(s);
        cur = left_multiply(s, cur);
        break;
      }
  }
  return word;
}

std::vector<int> CoxeterSystem::reduced_word(const Element& w) const {
  return lex_min_reduced_word(w);
}

std::vector<std::vector<int>> CoxeterSystem::all_reduced_words(const Element& w) const {
  if (w.length() == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int s = 0; s < rank(); ++s) {
    if (!is_left_descent(s, w)) continue;
    for (auto& tail : all_reduced_words(left_multiply(s, w))) {
      std::vector<int> word{s};
      word.insert(word.end(), tail.begin(), tail.end());
      out.push_back(std::move(word));
    }
  }
  return out;
}

int CoxeterSystem::apply_to_root(const Element& w, int signed_root) const {
  std::int32_t v = w.act_[std::abs(signed_root) - 1];
  return (signed_root > 0) ? v : -v;
}

Eigen::VectorXd CoxeterSystem::euclid(const std::vector<double>& simple_coords) const {
  Eigen::VectorXd x(d_->rank);
  for (int i = 0; i < d_->rank; ++i) x(i) = simple_coords[i];
  return d_->chol_lt * x;
}

Eigen::VectorXd CoxeterSystem::euclid_root(int signed_root) const {
  Eigen::VectorXd v = euclid(d_->roots[std::abs(signed_root) - 1]);
  return (signed_root > 0) ? v : Eigen::VectorXd(-v);
}

Eigen::VectorXd CoxeterSystem::weight_sum() const {
  Eigen::MatrixXd B(d_->rank, d_->rank);
  for (int i = 0; i < d_->rank; ++i)
    for (int j = 0; j < d_->rank; ++j) B(i, j) = d_->form[i][j];
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(d_->rank);
  Eigen::VectorXd z = B.ldlt().solve(ones);
  return d_->chol_lt * z;
}

std::string CoxeterSystem::word_str(const std::vector<int>& word) const {
  if (word.empty()) return "e";
  std::string out;
  for (int s : word) out += "s" + std::to_string(s + 1);
  return out;
}

std::vector<int> CoxeterSystem::parse_word(const std::string& text, int rank) {
  std::vector<int> word;
  if (text == "e" || text.empty()) return word;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 's' && text[i] != 'S') throw BadInput("bad word '" + text + "': expected 's'");
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw BadInput("bad word '" + text + "': missing index");
    int s = std::stoi(text.substr(start, i - start));
    if (s < 1 || s > rank) throw BadInput("bad word '" + text + "': generator out of range");
    word.push_back(s - 1);
  }
  return word;
}

std::size_t ElementHash::operator()(const Element& e) const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : e.act_) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

int EnumeratedGroup::index_of(const Element& e) const {
  auto it = index.find(e);
  return it == index.end() ? -1 : it->second;
}

EnumeratedGroup enumerate_group(const CoxeterSystem& sys, Caps caps) {
  EnumeratedGroup g;
  g.system = sys;
  Element id = sys.identity();
  g.elements.push_back(id);
  g.index.emplace(id, 0);
  std::vector<std::pair<int, int>> covers;
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    Element w = g.elements[head];  // copy: vector may reallocate
    for (int s = 0; s < sys.rank(); ++s) {
      if (sys.is_right_descent(s, w)) continue;
      Element ws = sys.right_multiply(w, s);
      auto it = g.index.find(ws);
      int idx;
      if (it == g.index.end()) {
        if (static_cast<long long>(g.elements.size()) >= caps.max_elements)
          throw CapExceeded("group enumeration exceeded cap of " + std::to_string(caps.max_elements));
        idx = static_cast<int>(g.elements.size());
        g.elements.push_back(ws);
        g.index.emplace(ws, idx);
      } else {
        idx = it->second;
      }
      covers.push_back({static_cast<int>(head), idx});
    }
  }
  std::vector<std::string> labels(g.elements.size());
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    labels[i] = sys.word_str(sys.lex_min_reduced_word(g.elements[i]));
  g.lattice = HasseLattice::from_covers(static_cast<int>(g.elements.size()), std::move(covers),
                                        std::move(labels));
  return g;
}

std::string system_json(const CoxeterSystem& sys, long long order) {
  nlohmann::json j;
  j["rank"] = sys.rank();
  j["matrix"] = sys.matrix().m;
  j["positive_root_count"] = sys.num_positive_roots();
  j["order"] = order;
  if (sys.label()) j["label"] = sys.label()->str();
  return j.dump(2);
}

}  // namespace cambrian

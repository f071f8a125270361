#include "cambrian/kernels.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cambrian::kern {

namespace {

// meet/join of one pair against reachability bitsets; returns -1 on failure
int meet_pair(const HasseLattice& L, const Reachability& R, int u, int w) {
  Bits I = R.below[u] & R.below[w];
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
    if (found >= 0) return -1;
    found = v;
  }
  return found;
}

int join_pair(const HasseLattice& L, const Reachability& R, int u, int w) {
  Bits I = R.above[u] & R.above[w];
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
    if (found >= 0) return -1;
    found = v;
  }
  return found;
}

TablesResult finish_tables(const HasseLattice& L, MeetJoinTables t) {
  TablesResult res;
  for (std::size_t i = 0; i < t.meet.size(); ++i)
    if (t.meet[i] < 0 || t.join[i] < 0) {
      res.ok = false;
      int u = static_cast<int>(i) / L.n, w = static_cast<int>(i) % L.n;
      res.witness = (t.meet[i] < 0 ? "meet" : "join") + std::string("(") + std::to_string(u) +
                    "," + std::to_string(w) + ") not unique or missing";
      break;
    }
  res.tables = std::move(t);
  return res;
}

}  // namespace

TablesResult meet_join_tables_serial(const HasseLattice& L, const Reachability& R) {
  MeetJoinTables t;
  t.n = L.n;
  t.meet.assign(static_cast<std::size_t>(L.n) * L.n, 0);
  t.join.assign(static_cast<std::size_t>(L.n) * L.n, 0);
  for (int u = 0; u < L.n; ++u)
    for (int w = 0; w < L.n; ++w) {
      t.meet[static_cast<std::size_t>(u) * L.n + w] = meet_pair(L, R, u, w);
      t.join[static_cast<std::size_t>(u) * L.n + w] = join_pair(L, R, u, w);
    }
  return finish_tables(L, std::move(t));
}

TablesResult meet_join_tables_parallel(const HasseLattice& L, const Reachability& R) {
  MeetJoinTables t;
  t.n = L.n;
  t.meet.assign(static_cast<std::size_t>(L.n) * L.n, 0);
  t.join.assign(static_cast<std::size_t>(L.n) * L.n, 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int u = 0; u < L.n; ++u)
    for (int w = 0; w < L.n; ++w) {
      t.meet[static_cast<std::size_t>(u) * L.n + w] = meet_pair(L, R, u, w);
      t.join[static_cast<std::size_t>(u) * L.n + w] = join_pair(L, R, u, w);
    }
  return finish_tables(L, std::move(t));
}

TablesResult meet_join_tables(const HasseLattice& L, const Reachability& R) {
#ifdef _OPENMP
  if (L.n >= 64) return meet_join_tables_parallel(L, R);
#endif
  return meet_join_tables_serial(L, R);
}

PairFailure hom_check_serial(const std::vector<int>& f, const HasseLattice& L1,
                             const Reachability& R1, const MeetJoinTables& t2) {
  for (int u = 0; u < L1.n; ++u)
    for (int w = u; w < L1.n; ++w) {
      int m1 = meet_pair(L1, R1, u, w);
      int j1 = join_pair(L1, R1, u, w);
      if (m1 < 0 || j1 < 0 || f[m1] != t2.m(f[u], f[w]) || f[j1] != t2.j(f[u], f[w]))
        return {false, u, w};
    }
  return {};
}

PairFailure hom_check_parallel(const std::vector<int>& f, const HasseLattice& L1,
                               const Reachability& R1, const MeetJoinTables& t2) {
  std::atomic<bool> bad{false};
#pragma omp parallel for schedule(dynamic, 4)
  for (int u = 0; u < L1.n; ++u) {
    if (bad.load(std::memory_order_relaxed)) continue;
    for (int w = u; w < L1.n; ++w) {
      int m1 = meet_pair(L1, R1, u, w);
      int j1 = join_pair(L1, R1, u, w);
      if (m1 < 0 || j1 < 0 || f[m1] != t2.m(f[u], f[w]) || f[j1] != t2.j(f[u], f[w])) {
        bad.store(true, std::memory_order_relaxed);
        break;
      }
    }
  }
  // rare path: rescan serially so the reported pair is deterministic
  if (bad.load()) return hom_check_serial(f, L1, R1, t2);
  return {};
}

PairFailure hom_check(const std::vector<int>& f, const HasseLattice& L1, const Reachability& R1,
                      const MeetJoinTables& t2) {
#ifdef _OPENMP
  if (L1.n >= 64) return hom_check_parallel(f, L1, R1, t2);
#endif
  return hom_check_serial(f, L1, R1, t2);
}

std::vector<std::uint8_t> filter_serial(int n, const std::function<bool(int)>& pred) {
  std::vector<std::uint8_t> out(n, 0);
  for (int i = 0; i < n; ++i) out[i] = pred(i) ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> filter_parallel(int n, const std::function<bool(int)>& pred) {
  std::vector<std::uint8_t> out(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) out[i] = pred(i) ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> filter(int n, const std::function<bool(int)>& pred) {
#ifdef _OPENMP
  if (n >= 64) return filter_parallel(n, pred);
#endif
  return filter_serial(n, pred);
}

void ConeSet::add_cone(const std::vector<double>& cone_normals) {
  normals.insert(normals.end(), cone_normals.begin(), cone_normals.end());
  offset.push_back(offset.back() + static_cast<int>(cone_normals.size()) / dim);
}

double ConeSet::min_product(int cone, const double* x) const {
  double best = std::numeric_limits<double>::infinity();
  for (int r = offset[cone]; r < offset[cone + 1]; ++r) {
    const double* nrm = normals.data() + static_cast<std::size_t>(r) * dim;
    double dot = 0;
    for (int k = 0; k < dim; ++k) dot += nrm[k] * x[k];
    if (dot < best) best = dot;
  }
  return best;
}

namespace {

// raw-bit uniform + Box-Muller keeps the stream identical across standard
// library implementations
struct Gauss {
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::mt19937_64 g;
  explicit Gauss(std::uint64_t seed) : g(seed) {}
  double uniform() { return ((g() >> 11) + 1.0) * (1.0 / 9007199254740993.0); }
  double operator()() {
    double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
};

std::vector<double> draw_candidates(int dim, int count, Gauss& rng) {
  std::vector<double> pts(static_cast<std::size_t>(count) * dim);
  for (int i = 0; i < count; ++i) {
    double* p = pts.data() + static_cast<std::size_t>(i) * dim;
    double norm2 = 0;
    do {
      norm2 = 0;
      for (int k = 0; k < dim; ++k) {
        p[k] = rng();
        norm2 += p[k] * p[k];
      }
    } while (norm2 < 1e-12);
    double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < dim; ++k) p[k] *= inv;
  }
  return pts;
}

bool candidate_valid(const double* p, int dim, double tol,
                     const std::vector<const ConeSet*>& validators) {
  for (const ConeSet* cs : validators) {
    std::size_t rows = cs->normals.size() / dim;
    for (std::size_t r = 0; r < rows; ++r) {
      const double* nrm = cs->normals.data() + r * dim;
      double dot = 0;
      for (int k = 0; k < dim; ++k) dot += nrm[k] * p[k];
      if (std::fabs(dot) <= tol) return false;
    }
  }
  return true;
}

template <bool Parallel>
SphereSamples draw_valid_impl(int dim, int count, std::uint64_t seed, double tol,
                              const std::vector<const ConeSet*>& validators) {
  SphereSamples out;
  out.dim = dim;
  out.pts.reserve(static_cast<std::size_t>(count) * dim);
  Gauss rng(seed);
  int kept = 0;
  while (kept < count) {
    int batch = std::max(64, count - kept + count / 16);
    std::vector<double> cand = draw_candidates(dim, batch, rng);
    std::vector<std::uint8_t> valid(batch, 0);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < batch; ++i)
        valid[i] = candidate_valid(cand.data() + static_cast<std::size_t>(i) * dim, dim, tol, validators);
    } else {
      for (int i = 0; i < batch; ++i)
        valid[i] = candidate_valid(cand.data() + static_cast<std::size_t>(i) * dim, dim, tol, validators);
    }
    for (int i = 0; i < batch && kept < count; ++i) {
      if (!valid[i]) continue;
      const double* p = cand.data() + static_cast<std::size_t>(i) * dim;
      out.pts.insert(out.pts.end(), p, p + dim);
      ++kept;
    }
  }
  return out;
}

template <bool Parallel>
Ownership classify_impl(const ConeSet& cs, const SphereSamples& s, double tol) {
  Ownership res;
  int count = s.count();
  res.owner.assign(count, -1);
  res.multiplicity.assign(count, 0);
  auto body = [&](int i) {
    const double* p = s.pt(i);
    int owner = -1, mult = 0;
    for (int c = 0; c < cs.cones(); ++c) {
      if (cs.min_product(c, p) > tol) {
        ++mult;
        if (owner < 0) owner = c;
      }
    }
    res.owner[i] = owner;
    res.multiplicity[i] = mult;
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
  return res;
}

}  // namespace

SphereSamples draw_valid_samples_serial(int dim, int count, std::uint64_t seed, double tol,
                                        const std::vector<const ConeSet*>& validators) {
  return draw_valid_impl<false>(dim, count, seed, tol, validators);
}

SphereSamples draw_valid_samples_parallel(int dim, int count, std::uint64_t seed, double tol,
                                          const std::vector<const ConeSet*>& validators) {
  return draw_valid_impl<true>(dim, count, seed, tol, validators);
}

SphereSamples draw_valid_samples(int dim, int count, std::uint64_t seed, double tol,
                                 const std::vector<const ConeSet*>& validators) {
#ifdef _OPENMP
  if (count >= 512) return draw_valid_samples_parallel(dim, count, seed, tol, validators);
#endif
  return draw_valid_samples_serial(dim, count, seed, tol, validators);
}

Ownership classify_serial(const ConeSet& cs, const SphereSamples& s, double tol) {
  return classify_impl<false>(cs, s, tol);
}

Ownership classify_parallel(const ConeSet& cs, const SphereSamples& s, double tol) {
  return classify_impl<true>(cs, s, tol);
}

Ownership classify(const ConeSet& cs, const SphereSamples& s, double tol) {
#ifdef _OPENMP
  if (s.count() >= 512) return classify_parallel(cs, s, tol);
#endif
  return classify_impl<false>(cs, s, tol);
}

}  // namespace cambrian::kern

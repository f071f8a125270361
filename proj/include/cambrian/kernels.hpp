#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cambrian/lattice.hpp"

// Data-parallel verification kernels. Each kernel comes in a `_serial`
// reference version and a `_parallel` OpenMP version; the unsuffixed name
// dispatches. The parallel versions write to index-addressed buffers, so their
// results are identical to the serial ones for any thread count.
namespace cambrian::kern {

struct MeetJoinTables {
  int n = 0;
  std::vector<std::int32_t> meet, join;
  int m(int u, int w) const { return meet[static_cast<std::size_t>(u) * n + w]; }
  int j(int u, int w) const { return join[static_cast<std::size_t>(u) * n + w]; }
};

struct TablesResult {
  MeetJoinTables tables;
  bool ok = true;
  std::string witness;  // offending pair when ok is false
};

TablesResult meet_join_tables_serial(const HasseLattice& L, const Reachability& R);
TablesResult meet_join_tables_parallel(const HasseLattice& L, const Reachability& R);
TablesResult meet_join_tables(const HasseLattice& L, const Reachability& R);

struct PairFailure {
  bool ok = true;
  int u = -1, v = -1;
};

// f : L1 -> L2 checked against all pairs; meets/joins in L1 are computed on the
// fly from reachability (no quadratic table), meets/joins in L2 via tables.
PairFailure hom_check_serial(const std::vector<int>& f, const HasseLattice& L1,
                             const Reachability& R1, const MeetJoinTables& t2);
PairFailure hom_check_parallel(const std::vector<int>& f, const HasseLattice& L1,
                               const Reachability& R1, const MeetJoinTables& t2);
PairFailure hom_check(const std::vector<int>& f, const HasseLattice& L1, const Reachability& R1,
                      const MeetJoinTables& t2);

std::vector<std::uint8_t> filter_serial(int n, const std::function<bool(int)>& pred);
std::vector<std::uint8_t> filter_parallel(int n, const std::function<bool(int)>& pred);
std::vector<std::uint8_t> filter(int n, const std::function<bool(int)>& pred);

// Cones as flat lists of inward facet normals in euclidean coordinates.
struct ConeSet {
  int dim = 0;
  std::vector<int> offset{0};    // per-cone start into `normals` (row count)
  std::vector<double> normals;   // rows of length dim

  int cones() const { return static_cast<int>(offset.size()) - 1; }
  void add_cone(const std::vector<double>& cone_normals);
  // min over the cone's normals of <x, normal>
  double min_product(int cone, const double* x) const;
};

struct SphereSamples {
  int dim = 0;
  std::vector<double> pts;  // rows of length dim, unit vectors
  int count() const { return dim ? static_cast<int>(pts.size()) / dim : 0; }
  const double* pt(int i) const { return pts.data() + static_cast<std::size_t>(i) * dim; }
};

// Unit vectors from a seeded generator; a candidate is accepted when every
// inner product against every validator normal has magnitude > tol, so
// membership tests never sit on a boundary. The candidate stream is generated
// serially from the seed; only the validity tests are parallel.
SphereSamples draw_valid_samples_serial(int dim, int count, std::uint64_t seed, double tol,
                                        const std::vector<const ConeSet*>& validators);
SphereSamples draw_valid_samples_parallel(int dim, int count, std::uint64_t seed, double tol,
                                          const std::vector<const ConeSet*>& validators);
SphereSamples draw_valid_samples(int dim, int count, std::uint64_t seed, double tol,
                                 const std::vector<const ConeSet*>& validators);

struct Ownership {
  std::vector<std::int32_t> owner;         // first cone with all products > tol, else -1
  std::vector<std::int32_t> multiplicity;  // number of such cones
};

Ownership classify_serial(const ConeSet& cs, const SphereSamples& s, double tol);
Ownership classify_parallel(const ConeSet& cs, const SphereSamples& s, double tol);
Ownership classify(const ConeSet& cs, const SphereSamples& s, double tol);

}  // namespace cambrian::kern

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cambrian/cambrian.hpp"
#include "cambrian/kernels.hpp"

namespace cambrian {

// Polyhedral fan in euclidean coordinates. Simplicial maximal cones carry
// their inward facet normals and the dual ray basis; class-union cones carry
// the list of member regions instead.
struct Fan {
  struct MaxCone {
    std::string label;
    std::vector<double> normals;  // k rows of length dim
    std::vector<double> rays;     // r rows of length dim, unit vectors
    std::vector<int> ray_ids;     // sorted indices into ray_registry
    std::vector<int> regions;     // member region indices (union cones only)
  };

  int dim = 0;
  std::vector<MaxCone> cones;
  std::vector<std::vector<double>> ray_registry;   // deduplicated unit rays
  std::vector<std::pair<int, int>> adjacencies;    // sorted cone-id pairs

  kern::ConeSet cone_set() const;  // normals-based membership tests
};

// One simplicial cone wD per group element; cone normals {w·α_i}, adjacency
// from shared codimension-1 ray sets.
Fan coxeter_fan(const WeakOrder& w);

// {adjacent region pairs} equals {weak-order cover pairs}, with the lower
// element of each cover on the D side of the separating hyperplane.
bool region_adjacency_matches_weak_order(const WeakOrder& w, const Fan& coxfan,
                                         std::string* witness = nullptr);

// One cone per congruence class: the union of the class's regions, labeled by
// the class bottom. Adjacency from region adjacency across class boundaries.
Fan cambrian_fan_by_classes(const WeakOrder& w, const Fan& coxfan, const Congruence& theta);

// One simplicial cone per sortable element with the C-vectors as inward facet
// normals.
Fan cambrian_fan_by_cvectors(const WeakOrder& w, const CoxeterElement& c,
                             const std::vector<int>& sortables);

bool fan_adjacency_matches_cambrian_covers(const Fan& fan, const HasseLattice& camb,
                                           std::string* witness = nullptr);

struct FanCheckReport {
  bool coverage_ok = false;    // every sample interior to exactly one region / cone
  bool agreement_ok = false;   // class-union and C-vector membership coincide
  bool convexity_ok = false;   // midpoints of same-class samples stay in class
  int samples = 0;
  std::string witness;
  bool ok() const { return coverage_ok && agreement_ok && convexity_ok; }
};

// Sampling checks of criterion strength: draws `samples` valid unit vectors
// (seeded), classifies them under the Coxeter fan and the C-vector fan, and
// compares class membership point by point.
FanCheckReport check_fans(const WeakOrder& w, const Fan& coxfan, const Congruence& theta,
                          const Fan& cvecfan, int samples, std::uint64_t seed, double tol = 1e-9);

struct RenderOptions {
  double scale = 100.0;  // pixels per unit of the projection plane
  double span = 8.0;     // half-width of the viewBox in plane units
  int arc_segments = 256;
};

// Rank-3 stereographic projection; pole opposite the given interior direction
// of D so the identity cell lands bounded in the center. RankUnsupported
// unless dim == 3. Requires per-cone rays.
std::string render_stereographic_svg(const Fan& fan, const Eigen::VectorXd& d_interior,
                                     const RenderOptions& opt = {});

std::string fan_json(const Fan& fan);

}  // namespace cambrian

#include "cambrian/fan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cambrian {

namespace {

constexpr double kTol = 1e-9;

struct RayRegistry {
  std::vector<std::vector<double>>* rays;
  std::multimap<double, int> by_first;  // candidates narrowed by first coordinate

  int find_or_add(const Eigen::VectorXd& v) {
    auto lo = by_first.lower_bound(v(0) - 1e-6);
    auto hi = by_first.upper_bound(v(0) + 1e-6);
    for (auto it = lo; it != hi; ++it) {
      const auto& row = (*rays)[it->second];
      bool same = true;
      for (int k = 0; k < v.size(); ++k)
        if (std::fabs(row[k] - v(k)) >= 1e-7) {
          same = false;
          break;
        }
      if (same) return it->second;
    }
    std::vector<double> row(v.size());
    for (int k = 0; k < v.size(); ++k) row[k] = v(k);
    rays->push_back(std::move(row));
    int id = static_cast<int>(rays->size()) - 1;
    by_first.insert({v(0), id});
    return id;
  }
};

// rays of a simplicial cone are the dual basis of its inward normals
void fill_rays(Fan::MaxCone& cone, int dim, RayRegistry& reg) {
  Eigen::MatrixXd N(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int k = 0; k < dim; ++k) N(r, k) = cone.normals[static_cast<std::size_t>(r) * dim + k];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
  if (!lu.isInvertible()) throw Error("cone normals are singular");
  Eigen::MatrixXd R = lu.inverse();
  cone.rays.resize(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXd ray = R.col(j).normalized();
    for (int k = 0; k < dim; ++k) cone.rays[static_cast<std::size_t>(j) * dim + k] = ray(k);
    cone.ray_ids.push_back(reg.find_or_add(ray));
  }
  std::sort(cone.ray_ids.begin(), cone.ray_ids.end());
}

// adjacency = sharing a codimension-1 ray set (valid for simplicial fans)
std::vector<std::pair<int, int>> adjacency_from_rays(const Fan& fan) {
  std::map<std::vector<int>, std::vector<int>> facet;
  for (int c = 0; c < static_cast<int>(fan.cones.size()); ++c) {
    const auto& ids = fan.cones[c].ray_ids;
    for (std::size_t omit = 0; omit < ids.size(); ++omit) {
      std::vector<int> key;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (k != omit) key.push_back(ids[k]);
      facet[key].push_back(c);
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (auto& [key, cones] : facet) {
    if (cones.size() > 2) throw Error("three cones share a facet");
    if (cones.size() == 2) pairs.insert({std::min(cones[0], cones[1]), std::max(cones[0], cones[1])});
  }
  return {pairs.begin(), pairs.end()};
}

std::vector<double> flatten(const std::vector<Eigen::VectorXd>& rows) {
  std::vector<double> out;
  for (const auto& r : rows)
    for (int k = 0; k < r.size(); ++k) out.push_back(r(k));
  return out;
}

}  // namespace

kern::ConeSet Fan::cone_set() const {
  kern::ConeSet cs;
  cs.dim = dim;
  for (const auto& cone : cones) {
    if (cone.normals.empty()) throw Error("cone has no facet normals");
    cs.add_cone(cone.normals);
  }
  return cs;
}

Fan coxeter_fan(const WeakOrder& w) {
  const CoxeterSystem& sys = w.sys();
  Fan fan;
  fan.dim = sys.rank();
  RayRegistry reg{&fan.ray_registry, {}};
  for (int v = 0; v < w.size(); ++v) {
    Fan::MaxCone cone;
    cone.label = w.lattice().labels[v];
    std::vector<Eigen::VectorXd> rows;
    for (int i = 0; i < sys.rank(); ++i)
      rows.push_back(sys.euclid_root(sys.apply_to_root(w.element(v), i + 1)));
    cone.normals = flatten(rows);
    fill_rays(cone, fan.dim, reg);
    fan.cones.push_back(std::move(cone));
  }
  fan.adjacencies = adjacency_from_rays(fan);
  return fan;
}

bool region_adjacency_matches_weak_order(const WeakOrder& w, const Fan& coxfan, std::string* witness) {
  const CoxeterSystem& sys = w.sys();
  std::set<std::pair<int, int>> covers;
  for (auto& [lo, hi] : w.lattice().covers) covers.insert({std::min(lo, hi), std::max(lo, hi)});
  std::set<std::pair<int, int>> adj(coxfan.adjacencies.begin(), coxfan.adjacencies.end());
  if (covers != adj) {
    if (witness) *witness = "adjacency pairs differ from cover pairs";
    return false;
  }
  // lower cone of each cover sits on the D side of the separating hyperplane
  Eigen::VectorXd d0 = sys.weight_sum();
  for (auto& [lo, hi] : w.lattice().covers) {
    int s = -1;
    for (int g = 0; g < sys.rank(); ++g)
      if (sys.right_multiply(w.element(lo), g) == w.element(hi)) s = g;
    if (s < 0) {
      if (witness) *witness = "cover is not a right multiplication";
      return false;
    }
    Eigen::VectorXd nu = sys.euclid_root(sys.apply_to_root(w.element(lo), s + 1));
    if (nu.dot(d0) <= kTol) {
      if (witness)
        *witness = "lower element " + w.lattice().labels[lo] + " not on the D side";
      return false;
    }
  }
  return true;
}

Fan cambrian_fan_by_classes(const WeakOrder& w, const Fan& coxfan, const Congruence& theta) {
  Fan fan;
  fan.dim = coxfan.dim;
  for (int c = 0; c < theta.num_classes(); ++c) {
    Fan::MaxCone cone;
    cone.label = w.lattice().labels[theta.bottom[c]];
    cone.regions = theta.classes[c];
    fan.cones.push_back(std::move(cone));
  }
  std::set<std::pair<int, int>> pairs;
  for (auto& [a, b] : coxfan.adjacencies) {
    int ca = theta.class_of[a], cb = theta.class_of[b];
    if (ca != cb) pairs.insert({std::min(ca, cb), std::max(ca, cb)});
  }
  fan.adjacencies = {pairs.begin(), pairs.end()};
  return fan;
}

Fan cambrian_fan_by_cvectors(const WeakOrder& w, const CoxeterElement& c,
                             const std::vector<int>& sortables) {
  const CoxeterSystem& sys = w.sys();
  Fan fan;
  fan.dim = sys.rank();
  RayRegistry reg{&fan.ray_registry, {}};
  for (int v : sortables) {
    CVectorSet cv = c_vectors(sys, w.element(v), c);
    Fan::MaxCone cone;
    cone.label = w.lattice().labels[v];
    std::vector<Eigen::VectorXd> rows;
    for (const auto& vec : cv.vectors) rows.push_back(sys.euclid(vec));
    cone.normals = flatten(rows);
    fill_rays(cone, fan.dim, reg);
    fan.cones.push_back(std::move(cone));
  }
  fan.adjacencies = adjacency_from_rays(fan);
  return fan;
}

bool fan_adjacency_matches_cambrian_covers(const Fan& fan, const HasseLattice& camb,
                                           std::string* witness) {
  std::set<std::pair<int, int>> covers;
  for (auto& [lo, hi] : camb.covers) covers.insert({std::min(lo, hi), std::max(lo, hi)});
  std::set<std::pair<int, int>> adj(fan.adjacencies.begin(), fan.adjacencies.end());
  if (covers != adj) {
    if (witness) *witness = "fan adjacency differs from Cambrian covers";
    return false;
  }
  return true;
}

FanCheckReport check_fans(const WeakOrder& w, const Fan& coxfan, const Congruence& theta,
                          const Fan& cvecfan, int samples, std::uint64_t seed, double tol) {
  FanCheckReport rep;
  rep.samples = samples;
  kern::ConeSet regions = coxfan.cone_set();
  kern::ConeSet cvec = cvecfan.cone_set();

  // explicit class -> C-vector-cone map through the bottom-element labels
  std::map<std::string, int> cone_by_label;
  for (int k = 0; k < static_cast<int>(cvecfan.cones.size()); ++k)
    cone_by_label[cvecfan.cones[k].label] = k;
  std::vector<int> class_to_cone(theta.num_classes(), -1);
  for (int c = 0; c < theta.num_classes(); ++c) {
    auto it = cone_by_label.find(w.lattice().labels[theta.bottom[c]]);
    if (it == cone_by_label.end())
      throw MismatchWithClassFan("class bottom " + w.lattice().labels[theta.bottom[c]] +
                                 " has no C-vector cone");
    class_to_cone[c] = it->second;
  }

  kern::SphereSamples pts = kern::draw_valid_samples(coxfan.dim, samples, seed, tol, {&regions, &cvec});
  kern::Ownership reg_own = kern::classify(regions, pts, tol);
  kern::Ownership cv_own = kern::classify(cvec, pts, tol);

  rep.coverage_ok = true;
  rep.agreement_ok = true;
  for (int i = 0; i < pts.count(); ++i) {
    if (reg_own.multiplicity[i] != 1 || cv_own.multiplicity[i] != 1) {
      rep.coverage_ok = false;
      rep.witness = "sample " + std::to_string(i) + " interior to " +
                    std::to_string(reg_own.multiplicity[i]) + " regions / " +
                    std::to_string(cv_own.multiplicity[i]) + " cones";
      break;
    }
    int via_classes = class_to_cone[theta.class_of[reg_own.owner[i]]];
    if (via_classes != cv_own.owner[i]) {
      rep.agreement_ok = false;
      rep.witness = "sample " + std::to_string(i) + " owned by class cone " +
                    std::to_string(via_classes) + " but C-vector cone " +
                    std::to_string(cv_own.owner[i]);
      break;
    }
  }

  // convexity of the class unions: midpoints of same-class samples stay inside
  rep.convexity_ok = true;
  if (rep.coverage_ok && rep.agreement_ok) {
    std::vector<std::vector<int>> by_class(theta.num_classes());
    for (int i = 0; i < pts.count(); ++i)
      by_class[theta.class_of[reg_own.owner[i]]].push_back(i);
    for (int c = 0; c < theta.num_classes() && rep.convexity_ok; ++c) {
      const auto& list = by_class[c];
      int pairs = std::min<int>(50, static_cast<int>(list.size()) - 1);
      for (int t = 0; t < pairs; ++t) {
        Eigen::VectorXd mid(coxfan.dim);
        for (int k = 0; k < coxfan.dim; ++k)
          mid(k) = 0.5 * (pts.pt(list[t])[k] + pts.pt(list[t + 1])[k]);
        if (mid.norm() < 1e-9) continue;
        mid.normalize();
        bool inside = false;
        for (int r : theta.classes[c])
          if (regions.min_product(r, mid.data()) > -1e-7) {
            inside = true;
            break;
          }
        if (!inside) {
          rep.convexity_ok = false;
          rep.witness = "midpoint left class " + std::to_string(c);
          throw NonConvexUnion(rep.witness);
        }
      }
    }
  }
  return rep;
}

namespace {

struct Projector {
  Eigen::Vector3d pole, u1, u2;

  explicit Projector(const Eigen::VectorXd& d_interior) {
    Eigen::Vector3d inside = d_interior.normalized();
    pole = -inside;
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::fabs(pole(i)) < std::fabs(pole(k))) k = i;
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e(k) = 1.0;
    u1 = (e - e.dot(pole) * pole).normalized();
    u2 = pole.cross(u1);
  }

  // stereographic projection onto the plane through the origin; near-pole
  // points report invalid
  bool project(const Eigen::Vector3d& q, double& x, double& y) const {
    double t = 1.0 - q.dot(pole);
    if (t < 3e-3) return false;
    Eigen::Vector3d p = (q - q.dot(pole) * pole) / t;
    x = p.dot(u1);
    y = p.dot(u2);
    return true;
  }
};

}  // namespace

std::string render_stereographic_svg(const Fan& fan, const Eigen::VectorXd& d_interior,
                                     const RenderOptions& opt) {
  if (fan.dim != 3) throw RankUnsupported("stereographic rendering needs rank 3");
  Projector proj(d_interior);
  double size = 2.0 * opt.span * opt.scale;
  auto px = [&](double x) { return (x + opt.span) * opt.scale; };
  auto py = [&](double y) { return (opt.span - y) * opt.scale; };
  std::ostringstream os;
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << static_cast<int>(size)
     << " " << static_cast<int>(size) << "\">\n";
  os << "  <g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";

  // each codimension-1 face once: great-circle arc between a cone's ray pair
  std::set<std::pair<int, int>> drawn;
  for (const auto& cone : fan.cones) {
    for (std::size_t a = 0; a < cone.ray_ids.size(); ++a)
      for (std::size_t b = a + 1; b < cone.ray_ids.size(); ++b) {
        auto key = std::make_pair(cone.ray_ids[a], cone.ray_ids[b]);
        if (!drawn.insert(key).second) continue;
        Eigen::Vector3d ra(fan.ray_registry[key.first].data());
        Eigen::Vector3d rb(fan.ray_registry[key.second].data());
        double ang = std::acos(std::clamp(ra.dot(rb), -1.0, 1.0));
        if (ang < 1e-12) continue;
        std::string path;
        bool pen_down = false;
        for (int t = 0; t <= opt.arc_segments; ++t) {
          double f = static_cast<double>(t) / opt.arc_segments;
          Eigen::Vector3d q =
              (std::sin((1 - f) * ang) * ra + std::sin(f * ang) * rb) / std::sin(ang);
          double x, y;
          if (!proj.project(q.normalized(), x, y)) {
            pen_down = false;
            continue;
          }
          std::snprintf(buf, sizeof buf, "%c%.3f %.3f ", pen_down ? 'L' : 'M', px(x), py(y));
          path += buf;
          pen_down = true;
        }
        if (!path.empty()) os << "    <path d=\"" << path << "\"/>\n";
      }
  }
  os << "  </g>\n";

  // labels at spherical centroids; the cell containing the pole is unbounded
  // and gets a fixed corner label
  os << "  <g font-size=\"11\" text-anchor=\"middle\">\n";
  int corner = 0;
  for (const auto& cone : fan.cones) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int r : cone.ray_ids) centroid += Eigen::Vector3d(fan.ray_registry[r].data());
    centroid.normalize();
    double x, y;
    if (proj.project(centroid, x, y) && std::fabs(x) < opt.span && std::fabs(y) < opt.span) {
      std::snprintf(buf, sizeof buf, "    <text x=\"%.3f\" y=\"%.3f\">", px(x), py(y));
      os << buf << cone.label << "</text>\n";
    } else {
      std::snprintf(buf, sizeof buf, "    <text x=\"%.3f\" y=\"%.3f\">", 40.0,
                    20.0 + 14.0 * corner++);
      os << buf << cone.label << "</text>\n";
    }
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

std::string fan_json(const Fan& fan) {
  nlohmann::json j;
  j["dim"] = fan.dim;
  nlohmann::json cones = nlohmann::json::array();
  for (const auto& cone : fan.cones) {
    nlohmann::json c;
    c["label"] = cone.label;
    nlohmann::json normals = nlohmann::json::array();
    for (std::size_t r = 0; r * fan.dim < cone.normals.size(); ++r)
      normals.push_back(std::vector<double>(cone.normals.begin() + r * fan.dim,
                                            cone.normals.begin() + (r + 1) * fan.dim));
    c["normals"] = normals;
    nlohmann::json rays = nlohmann::json::array();
    for (std::size_t r = 0; r * fan.dim < cone.rays.size(); ++r)
      rays.push_back(std::vector<double>(cone.rays.begin() + r * fan.dim,
                                         cone.rays.begin() + (r + 1) * fan.dim));
    c["rays"] = rays;
    if (!cone.regions.empty()) c["regions"] = cone.regions;
    cones.push_back(c);
  }
  j["cones"] = cones;
  j["adjacencies"] = fan.adjacencies;
  return j.dump(2);
}

}  // namespace cambrian

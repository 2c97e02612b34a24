#include "afval/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <utility>

namespace afval {

namespace {

template <class P>
double extent(const std::vector<P>& pts) {
  if (pts.empty()) return 0.0;
  P lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).maxCoeff();
}

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

Hull2 convex_hull_2d(std::vector<Eigen::Vector2d> pts) {
  Hull2 h;
  if (pts.empty()) return h;
  const double scale = std::max(extent(pts), 1e-300);
  const double eps = 1e-12 * scale * scale;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {  // lower chain
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  if (k > 1) --k;  // last point repeats the first
  hull.resize(k);
  // collapse near-duplicates (all points equal to rounding)
  if (hull.size() == 2 && (hull[0] - hull[1]).norm() <= 1e-12 * scale) hull.resize(1);
  h.vertices = hull;
  if (hull.size() == 1) return h;
  if (hull.size() == 2) {
    const Eigen::Vector2d d = hull[1] - hull[0];
    const double len = d.norm();
    const Eigen::Vector2d nrm(d.y() / len, -d.x() / len);
    h.edges = {{nrm, len}, {-nrm, len}};
    return h;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d& a = hull[i];
    const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
    const Eigen::Vector2d d = b - a;
    const double len = d.norm();
    h.edges.push_back({Eigen::Vector2d(d.y() / len, -d.x() / len), len});
    h.area += 0.5 * (a.x() * b.y() - a.y() * b.x());
  }
  return h;
}

Hull3 convex_hull_3d(const std::vector<Eigen::Vector3d>& input) {
  Hull3 h;
  if (input.empty()) return h;
  const double scale = std::max(extent(input), 1e-300);
  const double tol = 1e-10 * scale;

  std::vector<Eigen::Vector3d> pts;
  for (const auto& p : input) {
    bool dup = false;
    for (const auto& q : pts)
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }
  h.vertices = pts;
  if (pts.size() == 1) return h;

  // initial simplex: extreme points along a line, then off the line, then off the plane
  std::size_t i0 = 0, i1 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x() < pts[i0].x()) i0 = i;
    if (pts[i].x() > pts[i1].x()) i1 = i;
  }
  if (i0 == i1 || (pts[i1] - pts[i0]).norm() <= tol) {
    double best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = (pts[i] - pts[i0]).norm();
      if (d > best) best = d, i1 = i;
    }
  }
  const Eigen::Vector3d dir = (pts[i1] - pts[i0]).normalized();
  std::size_t i2 = i0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = (pts[i] - pts[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= tol) {  // collinear: no volume, no faces
    std::size_t lo = i0, hi = i0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = (pts[i] - pts[i0]).dot(dir);
      if (t < (pts[lo] - pts[i0]).dot(dir)) lo = i;
      if (t > (pts[hi] - pts[i0]).dot(dir)) hi = i;
    }
    h.vertices = {pts[lo], pts[hi]};
    const Eigen::Vector3d s = dir.unitOrthogonal();
    h.edges.push_back({(pts[hi] - pts[lo]).norm(), s, dir.cross(s), 2.0 * std::numbers::pi});
    return h;
  }
  const Eigen::Vector3d pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  std::size_t i3 = i0;
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = std::abs((pts[i] - pts[i0]).dot(pn));
    if (d > best) best = d, i3 = i;
  }
  if (best <= tol) {  // planar: two-sided flat face
    const Eigen::Vector3d ex = dir;
    const Eigen::Vector3d ey = pn.cross(ex);
    std::vector<Eigen::Vector2d> flat;
    for (const auto& p : pts) flat.emplace_back((p - pts[i0]).dot(ex), (p - pts[i0]).dot(ey));
    const Hull2 f = convex_hull_2d(flat);
    h.vertices.clear();
    for (const auto& v : f.vertices) h.vertices.push_back(pts[i0] + v.x() * ex + v.y() * ey);
    if (f.area > 0.0) h.faces = {{pn, f.area}, {-pn, f.area}};
    for (const auto& e : f.edges) {
      const Eigen::Vector3d m = e.normal.x() * ex + e.normal.y() * ey;
      h.edges.push_back({e.measure, pn, m, std::numbers::pi});
    }
    return h;
  }

  struct Face {
    std::array<int, 3> v;
    Eigen::Vector3d n;
    double off;
    bool alive;
  };
  std::vector<Face> faces;
  const Eigen::Vector3d inside = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  auto make = [&](int a, int b, int c) {
    Face f{{a, b, c}, (pts[b] - pts[a]).cross(pts[c] - pts[a]), 0.0, true};
    const double len = f.n.norm();
    f.n /= len;
    f.off = f.n.dot(pts[a]);
    if (f.n.dot(inside) > f.off) {  // orient outward
      std::swap(f.v[1], f.v[2]);
      f.n = -f.n;
      f.off = -f.off;
    }
    faces.push_back(f);
  };
  const int s0 = static_cast<int>(i0), s1 = static_cast<int>(i1), s2 = static_cast<int>(i2),
            s3 = static_cast<int>(i3);
  make(s0, s1, s2);
  make(s0, s1, s3);
  make(s0, s2, s3);
  make(s1, s2, s3);

  for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
    if (p == s0 || p == s1 || p == s2 || p == s3) continue;
    std::set<std::pair<int, int>> edges;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && faces[f].n.dot(pts[p]) - faces[f].off > tol) visible.push_back(f);
    if (visible.empty()) continue;
    for (auto f : visible) {
      faces[f].alive = false;
      for (int e = 0; e < 3; ++e) edges.insert({faces[f].v[e], faces[f].v[(e + 1) % 3]});
    }
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) make(a, b, p);
    // keep the list compact
    faces.erase(std::remove_if(faces.begin(), faces.end(), [](const Face& f) { return !f.alive; }),
                faces.end());
  }

  // edges from adjacent triangle pairs; the arc runs from the face on the
  // left of a->b to the face on its right
  std::map<std::pair<int, int>, std::size_t> owner;
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int e = 0; e < 3; ++e) owner[{faces[f].v[e], faces[f].v[(e + 1) % 3]}] = f;
  for (const auto& [key, f] : owner) {
    const auto [a, b] = key;
    if (a > b) continue;
    const auto it = owner.find({b, a});
    if (it == owner.end()) continue;
    const Eigen::Vector3d n1 = faces[f].n, n2 = faces[it->second].n;
    const double c = std::clamp(n1.dot(n2), -1.0, 1.0);
    const Eigen::Vector3d perp = n2 - c * n1;
    if (perp.norm() <= 1e-14) continue;  // coplanar triangles
    h.edges.push_back({(pts[b] - pts[a]).norm(), n1, perp.normalized(), std::acos(c)});
  }

  std::set<int> used;
  for (const auto& f : faces) {
    const Eigen::Vector3d c = (pts[f.v[1]] - pts[f.v[0]]).cross(pts[f.v[2]] - pts[f.v[0]]);
    const double area = 0.5 * c.norm();
    if (area <= 0.0) continue;
    h.faces.push_back({f.n, area});
    h.volume += pts[f.v[0]].dot(c) / 6.0;
    used.insert(f.v.begin(), f.v.end());
  }
  h.vertices.clear();
  for (int i : used) h.vertices.push_back(pts[i]);
  return h;
}

std::vector<Eigen::Vector2d> minkowski_vertices_2d(const std::vector<Eigen::Vector2d>& a,
                                                   const std::vector<Eigen::Vector2d>& b) {
  std::vector<Eigen::Vector2d> s;
  s.reserve(a.size() * b.size());
  for (const auto& p : a)
    for (const auto& q : b) s.push_back(p + q);
  return convex_hull_2d(std::move(s)).vertices;
}

std::vector<Eigen::Vector3d> minkowski_vertices_3d(const std::vector<Eigen::Vector3d>& a,
                                                   const std::vector<Eigen::Vector3d>& b) {
  std::vector<Eigen::Vector3d> s;
  s.reserve(a.size() * b.size());
  for (const auto& p : a)
    for (const auto& q : b) s.push_back(p + q);
  return convex_hull_3d(s).vertices;
}

}  // namespace afval

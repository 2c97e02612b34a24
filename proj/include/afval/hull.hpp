#pragma once

#include <vector>

#include <Eigen/Dense>

namespace afval {

/// Boundary piece of a convex polygon or polytope: outward unit normal and
/// length (2D) or area (3D). Flat inputs report both sides.
template <int D>
struct Facet {
  Eigen::Matrix<double, D, 1> normal;
  double measure;
};

struct Hull2 {
  std::vector<Eigen::Vector2d> vertices;  // counter-clockwise
  std::vector<Facet<2>> edges;
  double area = 0.0;
};

/// Edge of a 3D hull with its arc of outer normals w(t) = cos(t) start +
/// sin(t) turn, 0 <= t <= angle, in the plane orthogonal to the edge. Flat
/// hulls give half circles, segments a full circle.
struct HullEdge3 {
  double length;
  Eigen::Vector3d start;
  Eigen::Vector3d turn;
  double angle;
};

struct Hull3 {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Facet<3>> faces;  // triangles; coplanar triangles share a normal
  std::vector<HullEdge3> edges;  // only edges with a non-zero normal arc
  double volume = 0.0;
};

Hull2 convex_hull_2d(std::vector<Eigen::Vector2d> points);
Hull3 convex_hull_3d(const std::vector<Eigen::Vector3d>& points);

/// Vertices of the Minkowski sum of the hulls (pairwise sums, re-hulled).
std::vector<Eigen::Vector2d> minkowski_vertices_2d(const std::vector<Eigen::Vector2d>& a,
                                                   const std::vector<Eigen::Vector2d>& b);
std::vector<Eigen::Vector3d> minkowski_vertices_3d(const std::vector<Eigen::Vector3d>& a,
                                                   const std::vector<Eigen::Vector3d>& b);

}  // namespace afval

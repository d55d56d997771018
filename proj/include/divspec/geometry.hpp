#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace divspec {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class DomainKind { rectangle, ball, annulus, soliton_annulus };

// Parametric bounded domain. Rectangles are placed at [0,w1]x[0,w2]; balls and
// annuli are centred at the origin.
struct DomainSpec {
  DomainKind kind = DomainKind::rectangle;
  std::array<double, 2> widths{1.0, 1.0};
  double radius = 0.0;
  double inner = 0.0;
  double outer = 0.0;

  // soliton_annulus only
  int soliton_index = 0;
  double soliton_lambda = 0.0;
  int dimension = 2;
  // Outer radius of a soliton annulus as an exact multiple of 1/4.
  long outer_quarters = 0;

  static DomainSpec rectangle(double w1, double w2);
  static DomainSpec ball(double r);
  static DomainSpec annulus(double a, double b);

  // Throws std::invalid_argument on a degenerate spec.
  void validate() const;

  bool is_polar() const { return kind != DomainKind::rectangle; }
  // Inner radius of a polar domain (0 for a ball).
  double inner_radius() const;
  double outer_radius() const;

  // Analytic measure of the domain in the plane.
  double area() const;
  // min and max of |x|^2 over the closed domain. For a soliton annulus the
  // minimum is 2n/|lambda| exactly, not the square of the rounded radius.
  double min_radius_sq() const;
  double max_radius_sq() const;
  // Range of the first coordinate over the closed domain.
  std::array<double, 2> x1_range() const;
  Vec2 centroid() const;
};

// Annulus sqrt(2n/|lambda|) < |x| < r_l from the soliton family. r_l is the
// next multiple of 1/4 strictly above the inner radius, plus (l-1)/2.
DomainSpec soliton_annulus_spec(int l, double lambda, int n);

enum class BoundaryCurve : unsigned char { straight, inner_circle, outer_circle };

struct BoundaryEdge {
  std::array<int, 2> nodes;
  Vec2 normal;  // outward unit normal
  BoundaryCurve curve = BoundaryCurve::straight;
};

struct QuadraturePoint {
  Vec2 x;
  double weight;  // includes the triangle area
  std::array<double, 3> bary;
};

// Conforming P1 triangulation with positively oriented triangles.
struct Mesh {
  DomainSpec domain;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> boundary_nodes;  // sorted
  std::vector<BoundaryEdge> boundary_edges;
  // Quadrature points, kQuadPointsPerTriangle per triangle, triangle-major.
  std::vector<QuadraturePoint> quad_points;
  double h = 0.0;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_triangles() const { return triangles.size(); }

  double triangle_area(std::size_t t) const;
  double area() const;
  std::vector<char> boundary_mask() const;
};

// Polygonal/structured meshing. resolution >= 2.
Mesh build_mesh(const DomainSpec& spec, int resolution);

// Uniform red refinement; midpoints of curved boundary edges are projected
// onto the analytic circle.
Mesh refine(const Mesh& mesh);

// Plain-text export for debugging: one node per line "x y", one triangle per
// line "i j k" with zero-based indices.
void write_mesh_nodes(std::ostream& out, const Mesh& mesh);
void write_mesh_triangles(std::ostream& out, const Mesh& mesh);

}  // namespace divspec

#include "divspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "divspec/quadrature.hpp"

namespace divspec {

DomainSpec DomainSpec::rectangle(double w1, double w2) {
  DomainSpec s;
  s.kind = DomainKind::rectangle;
  s.widths = {w1, w2};
  s.validate();
  return s;
}

DomainSpec DomainSpec::ball(double r) {
  DomainSpec s;
  s.kind = DomainKind::ball;
  s.radius = r;
  s.validate();
  return s;
}

DomainSpec DomainSpec::annulus(double a, double b) {
  DomainSpec s;
  s.kind = DomainKind::annulus;
  s.inner = a;
  s.outer = b;
  s.validate();
  return s;
}

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::rectangle:
      if (!(widths[0] > 0.0) || !(widths[1] > 0.0))
        throw std::invalid_argument("rectangle widths must be positive");
      break;
    case DomainKind::ball:
      if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
      break;
    case DomainKind::annulus:
      if (!(inner > 0.0) || !(outer > inner))
        throw std::invalid_argument("annulus requires 0 < inner < outer");
      break;
    case DomainKind::soliton_annulus:
      if (soliton_lambda == 0.0) throw std::invalid_argument("soliton lambda must be nonzero");
      if (dimension < 2) throw std::invalid_argument("soliton dimension must be >= 2");
      if (soliton_index < 1) throw std::invalid_argument("soliton index must be >= 1");
      if (!(inner > 0.0) || !(outer > inner))
        throw std::invalid_argument("soliton annulus requires 0 < inner < outer");
      break;
  }
}

double DomainSpec::inner_radius() const {
  switch (kind) {
    case DomainKind::annulus:
    case DomainKind::soliton_annulus:
      return inner;
    default:
      return 0.0;
  }
}

double DomainSpec::outer_radius() const {
  switch (kind) {
    case DomainKind::ball:
      return radius;
    case DomainKind::annulus:
    case DomainKind::soliton_annulus:
      return outer;
    case DomainKind::rectangle:
      return std::hypot(widths[0], widths[1]);
  }
  return 0.0;
}

double DomainSpec::area() const {
  constexpr double pi = std::numbers::pi;
  switch (kind) {
    case DomainKind::rectangle:
      return widths[0] * widths[1];
    case DomainKind::ball:
      return pi * radius * radius;
    case DomainKind::annulus:
    case DomainKind::soliton_annulus:
      return pi * (outer * outer - inner * inner);
  }
  return 0.0;
}

double DomainSpec::min_radius_sq() const {
  switch (kind) {
    case DomainKind::rectangle:
    case DomainKind::ball:
      return 0.0;
    case DomainKind::annulus:
      return inner * inner;
    case DomainKind::soliton_annulus:
      return 2.0 * dimension / std::abs(soliton_lambda);
  }
  return 0.0;
}

double DomainSpec::max_radius_sq() const {
  switch (kind) {
    case DomainKind::rectangle:
      return widths[0] * widths[0] + widths[1] * widths[1];
    default: {
      const double r = outer_radius();
      return r * r;
    }
  }
}

std::array<double, 2> DomainSpec::x1_range() const {
  if (kind == DomainKind::rectangle) return {0.0, widths[0]};
  const double r = outer_radius();
  return {-r, r};
}

Vec2 DomainSpec::centroid() const {
  if (kind == DomainKind::rectangle) return {0.5 * widths[0], 0.5 * widths[1]};
  return Vec2::Zero();
}

DomainSpec soliton_annulus_spec(int l, double lambda, int n) {
  if (lambda == 0.0) throw std::invalid_argument("soliton_annulus_spec: lambda must be nonzero");
  if (n < 2) throw std::invalid_argument("soliton_annulus_spec: n must be >= 2");
  if (l < 1) throw std::invalid_argument("soliton_annulus_spec: l must be >= 1");

  DomainSpec s;
  s.kind = DomainKind::soliton_annulus;
  s.soliton_index = l;
  s.soliton_lambda = lambda;
  s.dimension = n;
  s.inner = std::sqrt(2.0 * n / std::abs(lambda));
  // Next quarter strictly above the inner radius, then half steps in l.
  long base = static_cast<long>(std::floor(4.0 * s.inner)) + 1;
  if (static_cast<double>(base) / 4.0 <= s.inner) ++base;
  s.outer_quarters = base + 2L * (l - 1);
  s.outer = static_cast<double>(s.outer_quarters) / 4.0;
  s.validate();
  return s;
}

double Mesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Vec2 e1 = nodes[tri[1]] - nodes[tri[0]];
  const Vec2 e2 = nodes[tri[2]] - nodes[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Mesh::area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
  return a;
}

std::vector<char> Mesh::boundary_mask() const {
  std::vector<char> mask(nodes.size(), 0);
  for (int b : boundary_nodes) mask[b] = 1;
  return mask;
}

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

void orient_positive(const std::vector<Vec2>& nodes, std::array<int, 3>& tri) {
  const Vec2 e1 = nodes[tri[1]] - nodes[tri[0]];
  const Vec2 e2 = nodes[tri[2]] - nodes[tri[0]];
  if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(tri[1], tri[2]);
}

BoundaryCurve classify_edge(const DomainSpec& d, const Vec2& p, const Vec2& q) {
  if (!d.is_polar()) return BoundaryCurve::straight;
  const double rmid = 0.5 * (p.norm() + q.norm());
  const double a = d.inner_radius();
  const double b = d.outer_radius();
  if (d.kind != DomainKind::ball && std::abs(rmid - a) < std::abs(rmid - b))
    return BoundaryCurve::inner_circle;
  return BoundaryCurve::outer_circle;
}

// Derives boundary data, quadrature points and h from nodes + triangles.
void finalize(Mesh& mesh) {
  std::map<EdgeKey, std::pair<int, int>> edge_use;  // key -> (count, owning triangle)
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    auto& tri = mesh.triangles[t];
    orient_positive(mesh.nodes, tri);
    if (mesh.triangle_area(t) <= 0.0)
      throw std::runtime_error("mesh contains a degenerate triangle");
    for (int e = 0; e < 3; ++e) {
      auto& use = edge_use[edge_key(tri[e], tri[(e + 1) % 3])];
      ++use.first;
      use.second = static_cast<int>(t);
    }
  }

  mesh.h = 0.0;
  mesh.boundary_edges.clear();
  std::vector<char> on_boundary(mesh.nodes.size(), 0);
  for (const auto& [key, use] : edge_use) {
    const Vec2& p = mesh.nodes[key.first];
    const Vec2& q = mesh.nodes[key.second];
    mesh.h = std::max(mesh.h, (q - p).norm());
    if (use.first > 2) throw std::runtime_error("non-manifold edge in mesh");
    if (use.first != 1) continue;

    const auto& tri = mesh.triangles[use.second];
    int opposite = tri[0];
    for (int v : tri)
      if (v != key.first && v != key.second) opposite = v;
    const Vec2 tangent = (q - p).normalized();
    Vec2 normal(tangent.y(), -tangent.x());
    if (normal.dot(mesh.nodes[opposite] - p) > 0.0) normal = -normal;

    mesh.boundary_edges.push_back({{key.first, key.second}, normal, classify_edge(mesh.domain, p, q)});
    on_boundary[key.first] = 1;
    on_boundary[key.second] = 1;
  }

  mesh.boundary_nodes.clear();
  for (std::size_t i = 0; i < on_boundary.size(); ++i)
    if (on_boundary[i]) mesh.boundary_nodes.push_back(static_cast<int>(i));

  mesh.quad_points.clear();
  mesh.quad_points.reserve(mesh.triangles.size() * kQuadPointsPerTriangle);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.triangle_area(t);
    for (const auto& rp : kTriangleRule4) {
      const Vec2 x = rp.bary[0] * mesh.nodes[tri[0]] + rp.bary[1] * mesh.nodes[tri[1]] +
                     rp.bary[2] * mesh.nodes[tri[2]];
      mesh.quad_points.push_back({x, rp.weight * area, rp.bary});
    }
  }
}

Mesh build_rectangle(const DomainSpec& spec, int resolution) {
  const int nx = std::max(1, static_cast<int>(std::lround(resolution * spec.widths[0])));
  const int ny = std::max(1, static_cast<int>(std::lround(resolution * spec.widths[1])));
  Mesh mesh;
  mesh.domain = spec;
  mesh.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.nodes.emplace_back(spec.widths[0] * i / nx, spec.widths[1] * j / ny);

  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return mesh;
}

Mesh build_polar(const DomainSpec& spec, int resolution) {
  const double a = spec.inner_radius();
  const double b = spec.outer_radius();
  const bool ball = spec.kind == DomainKind::ball;
  const int sectors = static_cast<int>(std::ceil(2.0 * std::numbers::pi * resolution));
  const int layers = resolution;

  Mesh mesh;
  mesh.domain = spec;

  // Ring j sits at radius a + (b-a) j / layers; the ball uses a single centre
  // node in place of ring 0.
  const int first_ring = ball ? 1 : 0;
  if (ball) mesh.nodes.emplace_back(0.0, 0.0);
  for (int j = first_ring; j <= layers; ++j) {
    const double r = j == layers ? b : a + (b - a) * j / layers;
    for (int s = 0; s < sectors; ++s) {
      const double theta = 2.0 * std::numbers::pi * s / sectors;
      mesh.nodes.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }
  const int offset = ball ? 1 : 0;
  auto id = [&](int j, int s) { return offset + (j - first_ring) * sectors + (s % sectors); };

  if (ball)
    for (int s = 0; s < sectors; ++s) mesh.triangles.push_back({0, id(1, s), id(1, s + 1)});
  for (int j = first_ring; j < layers; ++j) {
    for (int s = 0; s < sectors; ++s) {
      mesh.triangles.push_back({id(j, s), id(j + 1, s), id(j + 1, s + 1)});
      mesh.triangles.push_back({id(j, s), id(j + 1, s + 1), id(j, s + 1)});
    }
  }
  return mesh;
}

}  // namespace

Mesh build_mesh(const DomainSpec& spec, int resolution) {
  spec.validate();
  if (resolution < 2) throw std::invalid_argument("build_mesh: resolution must be >= 2");
  if (spec.kind == DomainKind::soliton_annulus && spec.dimension != 2)
    throw std::invalid_argument("build_mesh: only planar (n = 2) soliton annuli can be meshed");

  Mesh mesh = spec.is_polar() ? build_polar(spec, resolution) : build_rectangle(spec, resolution);
  finalize(mesh);
  return mesh;
}

Mesh refine(const Mesh& mesh) {
  Mesh fine;
  fine.domain = mesh.domain;
  fine.nodes = mesh.nodes;

  std::map<EdgeKey, BoundaryCurve> curve_of;
  for (const auto& e : mesh.boundary_edges) curve_of[edge_key(e.nodes[0], e.nodes[1])] = e.curve;

  std::map<EdgeKey, int> midpoint;
  auto mid = [&](int p, int q) {
    const EdgeKey key = edge_key(p, q);
    if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
    Vec2 m = 0.5 * (mesh.nodes[p] + mesh.nodes[q]);
    if (auto c = curve_of.find(key); c != curve_of.end()) {
      if (c->second == BoundaryCurve::inner_circle)
        m *= mesh.domain.inner_radius() / m.norm();
      else if (c->second == BoundaryCurve::outer_circle)
        m *= mesh.domain.outer_radius() / m.norm();
    }
    const int id = static_cast<int>(fine.nodes.size());
    fine.nodes.push_back(m);
    midpoint.emplace(key, id);
    return id;
  };

  fine.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& tri : mesh.triangles) {
    const int m01 = mid(tri[0], tri[1]);
    const int m12 = mid(tri[1], tri[2]);
    const int m20 = mid(tri[2], tri[0]);
    fine.triangles.push_back({tri[0], m01, m20});
    fine.triangles.push_back({m01, tri[1], m12});
    fine.triangles.push_back({m20, m12, tri[2]});
    fine.triangles.push_back({m01, m12, m20});
  }
  finalize(fine);
  return fine;
}

void write_mesh_nodes(std::ostream& out, const Mesh& mesh) {
  char buf[96];
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
}

void write_mesh_triangles(std::ostream& out, const Mesh& mesh) {
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace divspec

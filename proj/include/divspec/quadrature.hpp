#pragma once

#include <array>

namespace divspec {

// Symmetric 6-point rule on the reference triangle, exact for polynomials of
// degree 4. Weights sum to one and are scaled by the triangle area.
inline constexpr int kQuadPointsPerTriangle = 6;

struct TriangleRulePoint {
  std::array<double, 3> bary;
  double weight;
};

inline constexpr std::array<TriangleRulePoint, kQuadPointsPerTriangle> kTriangleRule4{{
    {{0.445948490915964886, 0.445948490915964886, 0.108103018168070227}, 0.223381589678011466},
    {{0.445948490915964886, 0.108103018168070227, 0.445948490915964886}, 0.223381589678011466},
    {{0.108103018168070227, 0.445948490915964886, 0.445948490915964886}, 0.223381589678011466},
    {{0.091576213509770743, 0.091576213509770743, 0.816847572980458513}, 0.109951743655321867},
    {{0.091576213509770743, 0.816847572980458513, 0.091576213509770743}, 0.109951743655321867},
    {{0.816847572980458513, 0.091576213509770743, 0.091576213509770743}, 0.109951743655321867},
}};

}  // namespace divspec

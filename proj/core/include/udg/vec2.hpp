#ifndef UDG_VEC2_HPP_
#define UDG_VEC2_HPP_

#include <cmath>

namespace udg {

// Point or vector in the plane. One-dimensional problems use x only.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 &operator+=(Vec2 const &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(Vec2 const &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr bool operator==(Vec2 const &, Vec2 const &) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 const &b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, Vec2 const &b) { return a -= b; }
constexpr Vec2 operator-(Vec2 const &a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }

constexpr double dot(Vec2 const &a, Vec2 const &b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3D cross product.
constexpr double cross(Vec2 const &a, Vec2 const &b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 const &a) { return std::hypot(a.x, a.y); }

// Affine combination a + t (b - a).
constexpr Vec2 lerp(Vec2 const &a, Vec2 const &b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace udg

#endif  // UDG_VEC2_HPP_

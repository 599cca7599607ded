#pragma once

#include <array>
#include <cmath>

namespace hv2q {

/// Real 3-vector. Measurement axes, cap axes and hidden variables live here.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }
constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

constexpr Vec3 axis_x() { return {1.0, 0.0, 0.0}; }
constexpr Vec3 axis_y() { return {0.0, 1.0, 0.0}; }
constexpr Vec3 axis_z() { return {0.0, 0.0, 1.0}; }

/// Unit vector in the direction of v. Throws std::invalid_argument for ~zero input.
Vec3 normalized(Vec3 v);

bool is_unit(Vec3 v, double tolerance = 1e-12);

/// Angle between two unit vectors in [0, pi], accurate near 0 and pi.
double angle_between(Vec3 a, Vec3 b);

/// Deterministic unit vector orthogonal to the unit vector b: take the
/// coordinate axis with the smallest |component| along b and project it out.
Vec3 orthogonal_unit(Vec3 b);

/// Real 3x3 matrix, row-major. Holds the SO(3) rotation induced by a 2x2 unitary.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[static_cast<size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<size_t>(3 * r + c)]; }

    static Mat3 identity();
    Mat3 transposed() const;
    double det() const;
};

Vec3 operator*(const Mat3& r, Vec3 v);
Mat3 operator*(const Mat3& a, const Mat3& b);
double max_abs_diff(const Mat3& a, const Mat3& b);

}  // namespace hv2q

#pragma once

#include <array>
#include <cstddef>

namespace fingersense {

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec3 operator+(const Vec3& o) const { return {{v[0] + o[0], v[1] + o[1], v[2] + o[2]}}; }
    Vec3 operator-(const Vec3& o) const { return {{v[0] - o[0], v[1] - o[1], v[2] - o[2]}}; }
    Vec3 operator*(double s) const { return {{v[0] * s, v[1] * s, v[2] * s}}; }

    double dot(const Vec3& o) const { return v[0] * o[0] + v[1] * o[1] + v[2] * o[2]; }
    double norm2() const { return dot(*this); }
    Vec3 cross(const Vec3& o) const {
        return {{v[1] * o[2] - v[2] * o[1], v[2] * o[0] - v[0] * o[2], v[0] * o[1] - v[1] * o[0]}};
    }
};

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};

    double& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    static Mat3 identity() {
        Mat3 a;
        a(0, 0) = a(1, 1) = a(2, 2) = 1.0;
        return a;
    }

    Vec3 col(std::size_t c) const { return {{m[0][c], m[1][c], m[2][c]}}; }
    void set_col(std::size_t c, const Vec3& x) {
        m[0][c] = x[0];
        m[1][c] = x[1];
        m[2][c] = x[2];
    }
    Vec3 row(std::size_t r) const { return {{m[r][0], m[r][1], m[r][2]}}; }

    Mat3 transposed() const {
        Mat3 t;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) t(c, r) = m[r][c];
        return t;
    }

    Vec3 operator*(const Vec3& x) const {
        return {{m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
                 m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
                 m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2]}};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < 3; ++k) s += m[i][k] * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
};

struct SymEig3 {
    Vec3 values;   // descending
    Mat3 vectors;  // orthonormal columns, paired with values; the
                   // largest-magnitude entry of each column is positive
};

/// Eigendecomposition of a symmetric 3x3 matrix. Uses the closed-form
/// characteristic-polynomial route and falls back to cyclic Jacobi sweeps
/// when the spectrum is nearly degenerate (relative gap below 1e-12) or the
/// closed-form eigenvectors fail the reconstruction check.
SymEig3 eig_sym3(const Mat3& a);

/// Cyclic Jacobi eigendecomposition, exposed for cross-checking the
/// closed-form route.
SymEig3 eig_sym3_jacobi(const Mat3& a);

}  // namespace fingersense

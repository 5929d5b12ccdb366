#include "fingersense/mat3.hpp"

#include <algorithm>
#include <cmath>

namespace fingersense {

namespace {

Mat3 symmetrized(const Mat3& a) {
    Mat3 s;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) s(r, c) = 0.5 * (a(r, c) + a(c, r));
    return s;
}

double max_abs_elem(const Mat3& a) {
    double m = 0.0;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m = std::max(m, std::fabs(a(r, c)));
    return m;
}

void sort_descending(SymEig3& e) {
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return e.values[i] > e.values[j]; });
    SymEig3 sorted;
    for (std::size_t k = 0; k < 3; ++k) {
        sorted.values[k] = e.values[order[k]];
        sorted.vectors.set_col(k, e.vectors.col(order[k]));
    }
    e = sorted;
}

// Fix each column so its largest-magnitude entry is positive.
void fix_signs(Mat3& vectors) {
    for (std::size_t c = 0; c < 3; ++c) {
        std::size_t imax = 0;
        double amax = 0.0;
        for (std::size_t r = 0; r < 3; ++r) {
            const double a = std::fabs(vectors(r, c));
            if (a > amax) {
                amax = a;
                imax = r;
            }
        }
        if (vectors(imax, c) < 0.0)
            for (std::size_t r = 0; r < 3; ++r) vectors(r, c) = -vectors(r, c);
    }
}

double det3(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 reconstruct(const SymEig3& e) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k)
                s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
            r(i, j) = s;
        }
    return r;
}

// Eigenvector for an isolated eigenvalue: the largest cross product of two
// rows of (A - lambda*I). Returns false when all candidates collapse
// (degenerate eigenvalue).
bool eigenvector_for(const Mat3& a, double lambda, Vec3& out) {
    Mat3 b = a;
    for (std::size_t i = 0; i < 3; ++i) b(i, i) -= lambda;
    const Vec3 r0 = b.row(0), r1 = b.row(1), r2 = b.row(2);
    const std::array<Vec3, 3> cand{r0.cross(r1), r0.cross(r2), r1.cross(r2)};
    double best = 0.0;
    std::size_t ibest = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double n2 = cand[i].norm2();
        if (n2 > best) {
            best = n2;
            ibest = i;
        }
    }
    const double row_scale =
        std::max({r0.norm2(), r1.norm2(), r2.norm2(), 1e-300});
    if (best <= 1e-24 * row_scale * row_scale) return false;
    out = cand[ibest] * (1.0 / std::sqrt(best));
    return true;
}

SymEig3 diagonal_case(const Mat3& a) {
    SymEig3 e;
    e.values = {{a(0, 0), a(1, 1), a(2, 2)}};
    e.vectors = Mat3::identity();
    sort_descending(e);
    fix_signs(e.vectors);
    return e;
}

}  // namespace

SymEig3 eig_sym3_jacobi(const Mat3& a_in) {
    Mat3 a = symmetrized(a_in);
    Mat3 v = Mat3::identity();
    const double scale = max_abs_elem(a);
    if (scale == 0.0) {
        SymEig3 e;
        e.vectors = Mat3::identity();
        return e;
    }
    const double tol2 = 1e-30 * scale * scale;
    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off2 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
        if (off2 <= tol2) break;
        static constexpr std::array<std::pair<std::size_t, std::size_t>, 3> pairs{
            {{0, 1}, {0, 2}, {1, 2}}};
        for (const auto& [p, q] : pairs) {
            const double apq = a(p, q);
            if (std::fabs(apq) <= 1e-300) continue;
            const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
            const double t = (theta >= 0 ? 1.0 : -1.0) /
                             (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            Mat3 j = Mat3::identity();
            j(p, p) = c;
            j(q, q) = c;
            j(p, q) = s;
            j(q, p) = -s;
            a = j.transposed() * a * j;
            a(p, q) = a(q, p) = 0.0;  // annihilated by construction
            v = v * j;
        }
    }
    SymEig3 e;
    e.values = {{a(0, 0), a(1, 1), a(2, 2)}};
    e.vectors = v;
    sort_descending(e);
    fix_signs(e.vectors);
    return e;
}

SymEig3 eig_sym3(const Mat3& a_in) {
    const Mat3 a = symmetrized(a_in);
    const double scale = max_abs_elem(a);
    if (scale == 0.0) {
        SymEig3 e;
        e.vectors = Mat3::identity();
        return e;
    }
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 <= 1e-30 * scale * scale) return diagonal_case(a);

    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    if (p2 <= 1e-30 * scale * scale) return diagonal_case(a);
    const double p = std::sqrt(p2 / 6.0);

    Mat3 b = a;
    for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) b(r, c) /= p;
    const double r = std::clamp(det3(b) / 2.0, -1.0, 1.0);

    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0 * 3.14159265358979323846 / 3.0;
    double l1 = q + 2.0 * p * std::cos(phi);
    double l3 = q + 2.0 * p * std::cos(phi + two_pi_3);
    double l2 = 3.0 * q - l1 - l3;

    const double span = std::max({std::fabs(l1), std::fabs(l3), 1e-300});
    const double min_gap = std::min(l1 - l2, l2 - l3) / span;
    if (min_gap < 1e-12) return eig_sym3_jacobi(a);

    // Extract the two extreme eigenvectors (best separated) and complete
    // the triad with a cross product.
    Vec3 v1, v3;
    if (!eigenvector_for(a, l1, v1) || !eigenvector_for(a, l3, v3))
        return eig_sym3_jacobi(a);
    // Orthogonalize the weaker extreme against the stronger one.
    v3 = v3 - v1 * v1.dot(v3);
    const double n3 = v3.norm2();
    if (n3 <= 1e-24) return eig_sym3_jacobi(a);
    v3 = v3 * (1.0 / std::sqrt(n3));
    const Vec3 v2 = v3.cross(v1);

    SymEig3 e;
    e.values = {{l1, l2, l3}};
    e.vectors.set_col(0, v1);
    e.vectors.set_col(1, v2);
    e.vectors.set_col(2, v3);

    const Mat3 rec = reconstruct(e);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) err = std::max(err, std::fabs(rec(i, j) - a(i, j)));
    if (err > 1e-8 * scale) return eig_sym3_jacobi(a);

    fix_signs(e.vectors);
    return e;
}

}  // namespace fingersense

#pragma once

// Fixed-size tensor containers over 4 coordinates and the small dense linear
// algebra the curvature pipeline needs: Cholesky factors, adjugate inverses of
// jet-valued matrices, a symmetric 4x4 eigensolver, and orthonormal frames.

#include <array>
#include <cmath>
#include <optional>

#include "curv4/errors.hpp"
#include "curv4/jet.hpp"

namespace curv4 {

using Point4 = std::array<double, 4>;
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<double, 16>;
using Ten3 = std::array<double, 64>;
using Ten4 = std::array<double, 256>;
using Ten5 = std::array<double, 1024>;
using Mat4Jet = std::array<Jet3, 16>;

constexpr int m4(int i, int j) { return i * 4 + j; }
constexpr int t3(int i, int j, int k) { return (i * 4 + j) * 4 + k; }
constexpr int t4(int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; }
constexpr int t5(int m, int i, int j, int k, int l) {
    return (((m * 4 + i) * 4 + j) * 4 + k) * 4 + l;
}

/// Permutation symbol on four indices, +1 for (0,1,2,3).
constexpr int eps4(int i, int j, int k, int l) {
    int p[4] = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (p[a] == p[b]) return 0;
            if (p[a] > p[b]) sign = -sign;
        }
    return sign;
}

inline Mat4 value_matrix(const Mat4Jet& m) {
    Mat4 out;
    for (int s = 0; s < 16; ++s) out[s] = m[s].value();
    return out;
}

inline double det4(const Mat4& m) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const int e = eps4(i, j, k, l);
                    if (e) d += e * m[m4(0, i)] * m[m4(1, j)] * m[m4(2, k)] * m[m4(3, l)];
                }
    return d;
}

/// Lower Cholesky factor; empty if the matrix is not positive definite.
inline std::optional<Mat4> cholesky4(const Mat4& a) {
    Mat4 L{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[m4(i, j)];
            for (int k = 0; k < j; ++k) sum -= L[m4(i, k)] * L[m4(j, k)];
            if (i == j) {
                if (sum <= 0.0) return std::nullopt;
                L[m4(i, i)] = std::sqrt(sum);
            } else {
                L[m4(i, j)] = sum / L[m4(j, j)];
            }
        }
    }
    return L;
}

/// Columns of B form a g-orthonormal frame: B^T g B = I.  (B = L^{-T}.)
inline Mat4 orthonormal_frame(const Mat4& g) {
    auto L = cholesky4(g);
    if (!L) throw GeometryError("orthonormal_frame: metric is not positive definite");
    // forward-substitute L X = I, then B = X^T
    Mat4 X{};
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < 4; ++i) {
            double sum = (i == c) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) sum -= (*L)[m4(i, k)] * X[m4(k, c)];
            X[m4(i, c)] = sum / (*L)[m4(i, i)];
        }
    Mat4 B{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) B[m4(i, j)] = X[m4(j, i)];
    return B;
}

/// Jet-valued inverse through the adjugate; throws DomainError when the
/// determinant value sits inside the singular margin.
inline Mat4Jet invert4(const Mat4Jet& m) {
    auto minor3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[m4(r0, c0)] * (m[m4(r1, c1)] * m[m4(r2, c2)] - m[m4(r1, c2)] * m[m4(r2, c1)]) -
               m[m4(r0, c1)] * (m[m4(r1, c0)] * m[m4(r2, c2)] - m[m4(r1, c2)] * m[m4(r2, c0)]) +
               m[m4(r0, c2)] * (m[m4(r1, c0)] * m[m4(r2, c1)] - m[m4(r1, c1)] * m[m4(r2, c0)]);
    };
    Mat4Jet adj;
    Jet3 det;
    for (int j = 0; j < 4; ++j) {
        int r[3], n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != j) r[n++] = i;
        for (int i = 0; i < 4; ++i) {
            int c[3];
            n = 0;
            for (int k = 0; k < 4; ++k)
                if (k != i) c[n++] = k;
            Jet3 cof = minor3(r[0], r[1], r[2], c[0], c[1], c[2]);
            if ((i + j) % 2) cof = -cof;
            adj[m4(j, i)] = cof; // transposed cofactor
        }
    }
    for (int k = 0; k < 4; ++k) det += m[m4(0, k)] * adj[m4(k, 0)];
    const Jet3 inv_det = reciprocal(det);
    Mat4Jet out;
    for (int s = 0; s < 16; ++s) out[s] = adj[s] * inv_det;
    return out;
}

/// Eigenvalues of a symmetric 4x4, sorted descending (cyclic Jacobi sweeps).
inline std::array<double, 4> sym_eigenvalues4(Mat4 a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[m4(p, q)] * a[m4(p, q)];
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const double apq = a[m4(p, q)];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[m4(q, q)] - a[m4(p, p)]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[m4(k, p)], akq = a[m4(k, q)];
                    a[m4(k, p)] = c * akp - s * akq;
                    a[m4(k, q)] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[m4(p, k)], aqk = a[m4(q, k)];
                    a[m4(p, k)] = c * apk - s * aqk;
                    a[m4(q, k)] = s * apk + c * aqk;
                }
            }
    }
    std::array<double, 4> ev{a[m4(0, 0)], a[m4(1, 1)], a[m4(2, 2)], a[m4(3, 3)]};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ev[j] > ev[i]) std::swap(ev[i], ev[j]);
    return ev;
}

inline double frob(const Mat4& m) {
    double s = 0.0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
}
inline double frob(const Ten3& m) {
    double s = 0.0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
}
inline double frob(const Ten4& m) {
    double s = 0.0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
}

/// T_{abcd} -> T in the frame's components, one index at a time.
inline Ten4 frame_transform(const Ten4& T, const Mat4& B) {
    Ten4 r1{}, r2{}, r3{}, r4{};
    for (int a = 0; a < 4; ++a)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int i = 0; i < 4; ++i) s += B[m4(i, a)] * T[t4(i, j, k, l)];
                    r1[t4(a, j, k, l)] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int j = 0; j < 4; ++j) s += B[m4(j, b)] * r1[t4(a, j, k, l)];
                    r2[t4(a, b, k, l)] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int k = 0; k < 4; ++k) s += B[m4(k, c)] * r2[t4(a, b, k, l)];
                    r3[t4(a, b, c, l)] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int l = 0; l < 4; ++l) s += B[m4(l, d)] * r3[t4(a, b, c, l)];
                    r4[t4(a, b, c, d)] = s;
                }
    return r4;
}

inline Ten3 frame_transform(const Ten3& T, const Mat4& B) {
    Ten3 out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                double s = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        for (int k = 0; k < 4; ++k)
                            s += B[m4(i, a)] * B[m4(j, b)] * B[m4(k, c)] * T[t3(i, j, k)];
                out[t3(a, b, c)] = s;
            }
    return out;
}

inline Mat4 frame_transform(const Mat4& T, const Mat4& B) {
    Mat4 out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += B[m4(i, a)] * B[m4(j, b)] * T[m4(i, j)];
            out[m4(a, b)] = s;
        }
    return out;
}

} // namespace curv4

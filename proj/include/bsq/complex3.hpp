// Dense complex 3x3 matrices and 3-vectors.
//
// All spectral objects of the scattering problem (s, s^A, jump matrices,
// the Lax potential U, the similarity matrix P) are 3x3 complex. The sizes
// are fixed, so everything lives on the stack and the hot loops stay
// allocation-free. Row-major storage, operator() is 0-indexed.
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace bsq {

using cplx = std::complex<double>;

/// Primitive cube root of unity, omega = e^{2 pi i / 3}, stored exactly as
/// (-1/2, sqrt(3)/2) so that rotation tests are bit-stable.
inline const cplx OMEGA{-0.5, 0.8660254037844386467637231707529362};

/// omega^n for integer n (n may be negative).
inline cplx omega_pow(int n) {
    int m = ((n % 3) + 3) % 3;
    if (m == 0) return {1.0, 0.0};
    if (m == 1) return OMEGA;
    return std::conj(OMEGA); // omega^2 = conj(omega)
}

struct Vec3 {
    std::array<cplx, 3> e{};
    cplx& operator[](int i) { return e[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return e[static_cast<size_t>(i)]; }
};

struct Complex3x3 {
    std::array<cplx, 9> a{}; // row-major

    cplx& operator()(int i, int j) { return a[static_cast<size_t>(3 * i + j)]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(3 * i + j)]; }

    static Complex3x3 identity() {
        Complex3x3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    static Complex3x3 zero() { return Complex3x3{}; }

    Complex3x3 operator+(const Complex3x3& o) const {
        Complex3x3 r;
        for (size_t i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Complex3x3 operator-(const Complex3x3& o) const {
        Complex3x3 r;
        for (size_t i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Complex3x3 operator*(const Complex3x3& o) const {
        Complex3x3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx s = 0.0;
                for (int m = 0; m < 3; ++m) s += (*this)(i, m) * o(m, j);
                r(i, j) = s;
            }
        return r;
    }
    Complex3x3 operator*(const cplx& c) const {
        Complex3x3 r;
        for (size_t i = 0; i < 9; ++i) r.a[i] = a[i] * c;
        return r;
    }
    Vec3 operator*(const Vec3& v) const {
        Vec3 r;
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    cplx trace() const { return a[0] + a[4] + a[8]; }

    cplx det() const {
        const Complex3x3& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    /// Adjugate (transpose of the cofactor matrix); inverse = adj / det.
    Complex3x3 adjugate() const {
        const Complex3x3& m = *this;
        Complex3x3 r;
        r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
        r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
        r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
        r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
        r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
        r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
        r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        return r;
    }

    Complex3x3 inverse() const {
        const cplx d = det();
        Complex3x3 adj = adjugate();
        for (size_t i = 0; i < 9; ++i) adj.a[i] /= d;
        return adj;
    }

    Complex3x3 transpose() const {
        Complex3x3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Complex3x3 conj() const {
        Complex3x3 r;
        for (size_t i = 0; i < 9; ++i) r.a[i] = std::conj(a[i]);
        return r;
    }

    /// Entrywise maximum modulus; cheap matrix "norm" used in tolerances.
    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a) m = std::max(m, std::abs(z));
        return m;
    }

    /// Frobenius norm.
    double fro() const {
        double s = 0.0;
        for (const auto& z : a) s += std::norm(z);
        return std::sqrt(s);
    }
};

inline Complex3x3 operator*(const cplx& c, const Complex3x3& m) { return m * c; }

/// max |A - B| entrywise.
inline double max_abs_diff(const Complex3x3& x, const Complex3x3& y) {
    return (x - y).max_abs();
}

} // namespace bsq

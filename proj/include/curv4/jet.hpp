#pragma once

// Truncated multivariate Taylor arithmetic: all mixed partials of a scalar
// function of 4 variables up to total order 3, carried exactly through
// arithmetic and elementary functions.  Internally a jet stores Taylor
// coefficients c_alpha = (d^alpha f) / alpha!, one slot per unordered
// multi-index, so products are plain truncated convolutions and the Leibniz
// rule holds to machine precision.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "curv4/errors.hpp"

namespace curv4 {

inline constexpr int kVars = 4;
inline constexpr int kJetOrder = 3;
inline constexpr int kJetCoeffs = 35; // multi-indices with |alpha| <= 3 in 4 vars

/// Arguments of div/log/sqrt/pow/abs must stay this far from the singular value.
inline constexpr double kSingularMargin = 1e-13;

namespace jet_detail {

struct MultiIndex {
    std::array<std::uint8_t, 4> a{};
    constexpr int degree() const { return a[0] + a[1] + a[2] + a[3]; }
};

constexpr int pack(const MultiIndex& m) {
    return m.a[0] + 4 * m.a[1] + 16 * m.a[2] + 64 * m.a[3];
}

constexpr std::array<MultiIndex, kJetCoeffs> make_index_list() {
    std::array<MultiIndex, kJetCoeffs> list{};
    int n = 0;
    for (int deg = 0; deg <= kJetOrder; ++deg)
        for (int a0 = deg; a0 >= 0; --a0)
            for (int a1 = deg - a0; a1 >= 0; --a1)
                for (int a2 = deg - a0 - a1; a2 >= 0; --a2) {
                    const int a3 = deg - a0 - a1 - a2;
                    list[n++] = MultiIndex{{static_cast<std::uint8_t>(a0),
                                            static_cast<std::uint8_t>(a1),
                                            static_cast<std::uint8_t>(a2),
                                            static_cast<std::uint8_t>(a3)}};
                }
    return list;
}

inline constexpr std::array<MultiIndex, kJetCoeffs> kIndex = make_index_list();

constexpr std::array<std::int8_t, 256> make_slot_of_pack() {
    std::array<std::int8_t, 256> t{};
    for (auto& x : t) x = -1;
    for (int s = 0; s < kJetCoeffs; ++s) t[pack(kIndex[s])] = static_cast<std::int8_t>(s);
    return t;
}

inline constexpr std::array<std::int8_t, 256> kSlotOfPack = make_slot_of_pack();

constexpr int slot(int a0, int a1, int a2, int a3) {
    return kSlotOfPack[a0 + 4 * a1 + 16 * a2 + 64 * a3];
}

struct MulTerm {
    std::uint8_t lhs, rhs, dst;
};

constexpr int count_mul_terms() {
    int n = 0;
    for (int i = 0; i < kJetCoeffs; ++i)
        for (int j = 0; j < kJetCoeffs; ++j)
            if (kIndex[i].degree() + kIndex[j].degree() <= kJetOrder) ++n;
    return n;
}

inline constexpr int kNumMulTerms = count_mul_terms();

constexpr std::array<MulTerm, kNumMulTerms> make_mul_table() {
    std::array<MulTerm, kNumMulTerms> t{};
    int n = 0;
    for (int i = 0; i < kJetCoeffs; ++i)
        for (int j = 0; j < kJetCoeffs; ++j) {
            if (kIndex[i].degree() + kIndex[j].degree() > kJetOrder) continue;
            MultiIndex sum{};
            for (int d = 0; d < 4; ++d)
                sum.a[d] = static_cast<std::uint8_t>(kIndex[i].a[d] + kIndex[j].a[d]);
            t[n++] = MulTerm{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                             static_cast<std::uint8_t>(kSlotOfPack[pack(sum)])};
        }
    return t;
}

inline constexpr std::array<MulTerm, kNumMulTerms> kMulTable = make_mul_table();

static_assert(kNumMulTerms == 165);
static_assert(slot(0, 0, 0, 0) == 0);

constexpr double factorial_of(const MultiIndex& m) {
    constexpr double f[4] = {1.0, 1.0, 2.0, 6.0};
    return f[m.a[0]] * f[m.a[1]] * f[m.a[2]] * f[m.a[3]];
}

} // namespace jet_detail

class Jet3 {
  public:
    Jet3() = default;

    /// Constant jet (all partials zero), so scalars mix freely in arithmetic.
    Jet3(double v) { c_[0] = v; }

    static Jet3 constant(double v) { return Jet3(v); }

    /// Jet of the coordinate function x_var at a point where it equals v.
    static Jet3 variable(double v, int var) {
        if (var < 0 || var >= kVars)
            throw ArgumentError("jet variable index out of range: " + std::to_string(var));
        Jet3 j;
        j.c_[0] = v;
        j.c_[1 + var] = 1.0;
        return j;
    }

    double value() const { return c_[0]; }

    /// Mixed partial d^alpha f (Taylor coefficient times alpha!).
    double partial(int i) const { return c_[1 + i]; }
    double partial(int i, int j) const {
        using namespace jet_detail;
        MultiIndex m{};
        ++m.a[i], ++m.a[j];
        return c_[kSlotOfPack[pack(m)]] * factorial_of(m);
    }
    double partial(int i, int j, int k) const {
        using namespace jet_detail;
        MultiIndex m{};
        ++m.a[i], ++m.a[j], ++m.a[k];
        return c_[kSlotOfPack[pack(m)]] * factorial_of(m);
    }

    double coeff(int s) const { return c_[s]; }
    double& coeff(int s) { return c_[s]; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double x : c_) m = std::max(m, std::abs(x));
        return m;
    }

    /// Jet of d f / d x_var; top-order information is lost (entries of total
    /// degree 3 in the result are zero).
    Jet3 derivative(int var) const {
        using namespace jet_detail;
        Jet3 out;
        for (int s = 0; s < kJetCoeffs; ++s) {
            MultiIndex m = kIndex[s];
            if (m.degree() >= kJetOrder) continue;
            ++m.a[var];
            out.c_[s] = c_[kSlotOfPack[pack(m)]] * m.a[var];
        }
        return out;
    }

    /// Overwrites every slot with positive x_var-degree with the antiderivative
    /// of `rate` with respect to x_var; slots free of x_var are kept.
    void set_antiderivative(const Jet3& rate, int var) {
        using namespace jet_detail;
        for (int s = 0; s < kJetCoeffs; ++s) {
            MultiIndex m = kIndex[s];
            if (m.degree() >= kJetOrder) continue;
            ++m.a[var];
            c_[kSlotOfPack[pack(m)]] = rate.c_[s] / m.a[var];
        }
    }

    Jet3 operator-() const {
        Jet3 out;
        for (int s = 0; s < kJetCoeffs; ++s) out.c_[s] = -c_[s];
        return out;
    }

    Jet3& operator+=(const Jet3& o) {
        for (int s = 0; s < kJetCoeffs; ++s) c_[s] += o.c_[s];
        return *this;
    }
    Jet3& operator-=(const Jet3& o) {
        for (int s = 0; s < kJetCoeffs; ++s) c_[s] -= o.c_[s];
        return *this;
    }
    Jet3& operator*=(const Jet3& o) { return *this = *this * o; }
    Jet3& operator/=(const Jet3& o) { return *this = *this / o; }

    Jet3& operator+=(double x) {
        c_[0] += x;
        return *this;
    }
    Jet3& operator-=(double x) {
        c_[0] -= x;
        return *this;
    }
    Jet3& operator*=(double x) {
        for (int s = 0; s < kJetCoeffs; ++s) c_[s] *= x;
        return *this;
    }
    Jet3& operator/=(double x) { return *this *= 1.0 / x; }

    friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
    friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
    friend Jet3 operator+(Jet3 a, double b) { return a += b; }
    friend Jet3 operator+(double a, Jet3 b) { return b += a; }
    friend Jet3 operator-(Jet3 a, double b) { return a -= b; }
    friend Jet3 operator-(double a, const Jet3& b) { return -b + a; }
    friend Jet3 operator*(Jet3 a, double b) { return a *= b; }
    friend Jet3 operator*(double a, Jet3 b) { return b *= a; }
    friend Jet3 operator/(Jet3 a, double b) { return a /= b; }
    friend Jet3 operator/(double a, const Jet3& b) { return constant(a) / b; }

    friend Jet3 operator*(const Jet3& a, const Jet3& b) {
        Jet3 out;
        for (const auto& t : jet_detail::kMulTable)
            out.c_[t.dst] += a.c_[t.lhs] * b.c_[t.rhs];
        return out;
    }

    friend Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

    /// f(g) for univariate smooth f given f, f', f'', f''' at g's value.
    /// Exact for truncated order-3 jets.
    static Jet3 compose(double f0, double f1, double f2, double f3, const Jet3& g) {
        Jet3 h = g;
        h.c_[0] = 0.0;
        const Jet3 h2 = h * h;
        const Jet3 h3 = h2 * h;
        Jet3 out = h * f1;
        out += h2 * (f2 / 2.0);
        out += h3 * (f3 / 6.0);
        out.c_[0] += f0;
        return out;
    }

    friend Jet3 reciprocal(const Jet3& v) {
        const double u = v.c_[0];
        if (std::abs(u) < kSingularMargin)
            throw DomainError("jet division: denominator value " + std::to_string(u) +
                              " within margin of zero");
        const double iu = 1.0 / u;
        return compose(iu, -iu * iu, 2.0 * iu * iu * iu, -6.0 * iu * iu * iu * iu, v);
    }

    friend Jet3 sqrt(const Jet3& v) {
        const double u = v.c_[0];
        if (u < kSingularMargin)
            throw DomainError("jet sqrt: argument value " + std::to_string(u) +
                              " within margin of zero");
        const double s = std::sqrt(u);
        return compose(s, 0.5 / s, -0.25 / (u * s), 0.375 / (u * u * s), v);
    }

    friend Jet3 exp(const Jet3& v) {
        const double e = std::exp(v.c_[0]);
        return compose(e, e, e, e, v);
    }

    friend Jet3 log(const Jet3& v) {
        const double u = v.c_[0];
        if (u < kSingularMargin)
            throw DomainError("jet log: argument value " + std::to_string(u) +
                              " within margin of zero");
        const double iu = 1.0 / u;
        return compose(std::log(u), iu, -iu * iu, 2.0 * iu * iu * iu, v);
    }

    friend Jet3 sin(const Jet3& v) {
        const double s = std::sin(v.c_[0]), c = std::cos(v.c_[0]);
        return compose(s, c, -s, -c, v);
    }

    friend Jet3 cos(const Jet3& v) {
        const double s = std::sin(v.c_[0]), c = std::cos(v.c_[0]);
        return compose(c, -s, -c, s, v);
    }

    friend Jet3 pow(const Jet3& v, double p) {
        const double u = v.c_[0];
        if (u < kSingularMargin)
            throw DomainError("jet pow: base value " + std::to_string(u) +
                              " within margin of zero");
        const double f0 = std::pow(u, p);
        return compose(f0, p * f0 / u, p * (p - 1.0) * f0 / (u * u),
                       p * (p - 1.0) * (p - 2.0) * f0 / (u * u * u), v);
    }

    /// |v| with the sign resolved at the jet's value.  Only valid where the
    /// argument is sign-definite on the sampled domain.
    friend Jet3 abs_signed(const Jet3& v) {
        const double u = v.c_[0];
        if (std::abs(u) < kSingularMargin)
            throw DomainError("jet abs: argument value " + std::to_string(u) +
                              " is not sign-definite");
        return u > 0.0 ? v : -v;
    }

  private:
    std::array<double, kJetCoeffs> c_{};
};

/// Coordinate-function jet at a point: value point[var], unit first partial.
inline Jet3 jet_variable(const std::array<double, 4>& point, int var) {
    if (var < 0 || var >= kVars)
        throw ArgumentError("jet_variable: index out of range: " + std::to_string(var));
    return Jet3::variable(point[var], var);
}

} // namespace curv4

#pragma once

#include <cmath>

namespace esgd {

// First-order dual number: value plus directional perturbation. Pushing a
// dual-seeded parameter vector through the exact gradient computation yields
// the Hessian-vector product in the perturbation slot.
struct Dual {
    double re = 0.0;
    double du = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double r) : re(r) {}
    constexpr Dual(double r, double d) : re(r), du(d) {}

    constexpr Dual& operator+=(Dual b) {
        re += b.re;
        du += b.du;
        return *this;
    }
    constexpr Dual& operator-=(Dual b) {
        re -= b.re;
        du -= b.du;
        return *this;
    }
    constexpr Dual& operator*=(Dual b) {
        du = re * b.du + du * b.re;
        re *= b.re;
        return *this;
    }
    constexpr Dual& operator/=(Dual b) {
        re /= b.re;
        du = (du - re * b.du) / b.re;
        return *this;
    }
};

constexpr Dual operator+(Dual a, Dual b) { return {a.re + b.re, a.du + b.du}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.re - b.re, a.du - b.du}; }
constexpr Dual operator-(Dual a) { return {-a.re, -a.du}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.re * b.re, a.re * b.du + a.du * b.re}; }
constexpr Dual operator/(Dual a, Dual b) {
    const double r = a.re / b.re;
    return {r, (a.du - r * b.du) / b.re};
}

constexpr Dual operator*(double a, Dual b) { return {a * b.re, a * b.du}; }
constexpr Dual operator*(Dual a, double b) { return {a.re * b, a.du * b}; }
constexpr Dual operator+(double a, Dual b) { return {a + b.re, b.du}; }
constexpr Dual operator+(Dual a, double b) { return {a.re + b, a.du}; }
constexpr Dual operator-(double a, Dual b) { return {a - b.re, -b.du}; }
constexpr Dual operator-(Dual a, double b) { return {a.re - b, a.du}; }
constexpr Dual operator/(Dual a, double b) { return {a.re / b, a.du / b}; }

inline Dual exp(Dual a) {
    const double e = std::exp(a.re);
    return {e, e * a.du};
}
inline Dual log(Dual a) { return {std::log(a.re), a.du / a.re}; }
inline Dual log1p(Dual a) { return {std::log1p(a.re), a.du / (1.0 + a.re)}; }
inline Dual sqrt(Dual a) {
    const double r = std::sqrt(a.re);
    return {r, 0.5 * a.du / r};
}

constexpr double value(double x) { return x; }
constexpr double value(Dual x) { return x.re; }

}  // namespace esgd

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace clusterkit {

// Exact arithmetic scalar for the oracle paths and the rational ursell mode.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Exact complex pair of rationals; just enough arithmetic for products and sums.
struct RationalComplex {
    Rational re, im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(int v) : re(v), im(0) {}  // NOLINT: scalar-style conversions wanted
    RationalComplex(Rational r) : re(std::move(r)), im(0) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RationalComplex& operator+=(const RationalComplex& o) { return *this = *this + o; }
    RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
    friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
        const Rational d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

}  // namespace clusterkit

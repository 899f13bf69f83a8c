#pragma once

#include <utility>

namespace polyrecon {

// Complex number as a pair of same-mode reals. Works for both Rational and
// Real components; std::complex is unspecified for non-builtin types.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T real) : re(std::move(real)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T real, T imag) : re(std::move(real)), im(std::move(imag)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    T i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    T den = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / den;
    T i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex operator-() const { return Complex(-re, -im); }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class T>
Complex<T> conj(const Complex<T>& z) {
  return Complex<T>(z.re, -z.im);
}

// |z|^2
template <class T>
T norm(const Complex<T>& z) {
  return z.re * z.re + z.im * z.im;
}

}  // namespace polyrecon

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace maforms {

/// Coefficient field for all forms: a complex number that is either an exact
/// Gaussian rational (arbitrary-precision real and imaginary parts) or an
/// inexact complex double. Exact arithmetic never rounds; any operation mixing
/// the two modes promotes to inexact, so an inexact result is itself the flag
/// that a non-representable quantity entered the computation.
class Scalar {
 public:
  Scalar() : exact_(true) {}
  Scalar(int n) : exact_(true), re_(n) {}
  Scalar(long n) : exact_(true), re_(n) {}
  Scalar(const mpq_class& q) : exact_(true), re_(q) {}

  static Scalar rational(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar gauss(mpq_class re, mpq_class im) {
    Scalar s;
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
  }
  static Scalar i() { return gauss(0, 1); }
  static Scalar approx(std::complex<double> z) {
    Scalar s;
    s.exact_ = false;
    s.z_ = z;
    return s;
  }
  static Scalar approx(double x) { return approx(std::complex<double>(x, 0.0)); }

  bool exact() const { return exact_; }
  bool is_zero() const { return exact_ ? re_ == 0 && im_ == 0 : z_ == std::complex<double>(0.0); }
  bool is_real() const { return exact_ ? im_ == 0 : z_.imag() == 0.0; }

  /// Exact rational parts; only valid in exact mode.
  const mpq_class& re() const {
    require_exact();
    return re_;
  }
  const mpq_class& im() const {
    require_exact();
    return im_;
  }

  std::complex<double> to_complex() const {
    return exact_ ? std::complex<double>(re_.get_d(), im_.get_d()) : z_;
  }
  double abs() const { return std::abs(to_complex()); }

  Scalar conj() const {
    if (exact_) return gauss(re_, -im_);
    return approx(std::conj(z_));
  }
  Scalar real_part() const { return exact_ ? Scalar(re_) : approx(z_.real()); }
  Scalar imag_part() const { return exact_ ? Scalar(im_) : approx(z_.imag()); }

  /// |z|^2, staying in the current mode.
  Scalar abs2() const {
    if (exact_) return Scalar(re_ * re_ + im_ * im_);
    return approx(std::norm(z_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return gauss(a.re_ + b.re_, a.im_ + b.im_);
    return approx(a.to_complex() + b.to_complex());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return gauss(a.re_ - b.re_, a.im_ - b.im_);
    return approx(a.to_complex() - b.to_complex());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_)
      return gauss(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return approx(a.to_complex() * b.to_complex());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (a.exact_ && b.exact_) {
      mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
      return gauss((a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    return approx(a.to_complex() / b.to_complex());
  }
  Scalar operator-() const { return exact_ ? gauss(-re_, -im_) : approx(-z_); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.to_complex() == b.to_complex();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    if (!exact_) {
      std::string s = std::to_string(z_.real());
      if (z_.imag() != 0.0) s += (z_.imag() > 0 ? "+" : "") + std::to_string(z_.imag()) + "i";
      return s;
    }
    if (im_ == 0) return re_.get_str();
    if (re_ == 0) return im_.get_str() + "i";
    return "(" + re_.get_str() + (im_ > 0 ? "+" : "") + im_.get_str() + "i)";
  }

 private:
  void require_exact() const {
    if (!exact_) throw std::logic_error("Scalar: exact accessor on inexact value");
  }

  bool exact_ = true;
  mpq_class re_, im_;        // valid when exact_
  std::complex<double> z_{}; // valid when !exact_
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

}  // namespace maforms

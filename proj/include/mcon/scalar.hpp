#pragma once

#include <mcon/errors.hpp>

#include <gmpxx.h>

#include <complex>
#include <string>

namespace mcon {

enum class backend { exact, floating };

/// Global relative tolerance for floating-backend comparisons.
double float_tolerance();
void set_float_tolerance(double tol);

/// Complex scalar over one of two interchangeable backends: exact
/// (Gaussian rationals via GMP) or floating (complex<double>).
/// Mixed-backend arithmetic throws backend_mismatch.
class scalar {
  public:
    scalar() : tag_(backend::exact) {}

    static scalar exact_int(long v) { return scalar(mpq_class(v), mpq_class(0)); }
    static scalar exact_ratio(long num, long den);
    static scalar exact(const mpq_class &re, const mpq_class &im) { return scalar(re, im); }
    static scalar parse_exact(const std::string &re, const std::string &im);
    static scalar floating(double re, double im = 0.0) { return scalar(std::complex<double>(re, im)); }
    static scalar floating(std::complex<double> v) { return scalar(v); }
    static scalar zero(backend b) { return b == backend::exact ? exact_int(0) : floating(0.0); }
    static scalar one(backend b) { return b == backend::exact ? exact_int(1) : floating(1.0); }

    backend tag() const { return tag_; }
    bool is_exact() const { return tag_ == backend::exact; }

    const mpq_class &re_q() const { return re_; }
    const mpq_class &im_q() const { return im_; }
    std::complex<double> to_complex() const;

    bool is_zero() const;
    bool is_real() const;

    scalar operator-() const;
    scalar operator+(const scalar &o) const;
    scalar operator-(const scalar &o) const;
    scalar operator*(const scalar &o) const;
    scalar operator/(const scalar &o) const;
    scalar &operator+=(const scalar &o) { return *this = *this + o; }
    scalar &operator-=(const scalar &o) { return *this = *this - o; }
    scalar &operator*=(const scalar &o) { return *this = *this * o; }
    scalar &operator/=(const scalar &o) { return *this = *this / o; }

    bool operator==(const scalar &o) const;
    bool operator!=(const scalar &o) const { return !(*this == o); }

    /// |a - b| <= tol * max(1, |a|, |b|) in floating mode; exact equality otherwise.
    bool approx_equal(const scalar &o, double tol = float_tolerance()) const;
    bool approx_zero(double tol = float_tolerance()) const;

    /// Floating absolute value (converts exact values when needed).
    double abs() const;

    /// Principal square root; floating backend only.
    scalar sqrt_floating() const;

    std::string str() const;

  private:
    scalar(const mpq_class &re, const mpq_class &im) : tag_(backend::exact), re_(re), im_(im) {}
    explicit scalar(std::complex<double> v) : tag_(backend::floating), f_(v) {}
    void require_same(const scalar &o) const;

    backend tag_;
    mpq_class re_, im_;
    std::complex<double> f_{0.0, 0.0};
};

/// Strict total order inside one backend (lexicographic on (re, im));
/// used for canonical pole ordering and sorting of unordered tuples.
bool scalar_less(const scalar &a, const scalar &b);

} // namespace mcon

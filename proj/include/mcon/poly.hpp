#pragma once

#include <mcon/scalar.hpp>

#include <optional>
#include <vector>

namespace mcon {

/// Univariate polynomial, coefficients lowest degree first, normalized so the
/// leading coefficient is nonzero.  The zero polynomial has no coefficients
/// and its degree() is nullopt (the "-infinity" marker).
class poly {
  public:
    explicit poly(backend tag = backend::exact) : tag_(tag) {}
    poly(backend tag, std::vector<scalar> coeffs);
    static poly constant(const scalar &c);
    /// x - root
    static poly linear_monic(const scalar &root);

    backend tag() const { return tag_; }
    std::optional<int> degree() const;
    bool is_zero() const { return c_.empty(); }
    const std::vector<scalar> &coeffs() const { return c_; }
    /// Coefficient of x^k (zero when k exceeds the degree).
    scalar coeff(int k) const;
    scalar leading() const;

    poly operator+(const poly &o) const;
    poly operator-(const poly &o) const;
    poly operator-() const;
    poly operator*(const poly &o) const;
    poly scale(const scalar &s) const;
    poly derivative() const;

    /// Quotient and remainder of *this by divisor (leading coeff nonzero).
    std::pair<poly, poly> divmod(const poly &divisor) const;

    bool operator==(const poly &o) const;
    bool operator!=(const poly &o) const { return !(*this == o); }

  private:
    void normalize();
    backend tag_;
    std::vector<scalar> c_;
};

/// Horner evaluation.
scalar poly_eval(const poly &p, const scalar &x0);

} // namespace mcon

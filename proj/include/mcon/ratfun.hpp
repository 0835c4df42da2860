#pragma once

#include <mcon/matrix2.hpp>
#include <mcon/pole_config.hpp>

#include <array>
#include <vector>

namespace mcon {

/// Rational function with simple poles only, kept in partial-fraction form:
///     sum_s  residue_s / (x - s)  +  polynomial part.
/// This class is closed under every operation the gauge calculus needs
/// (addition, multiplication by polynomials, multiplication and division by
/// a linear factor), which is what keeps elementary transformations exact.
class ratfun {
  public:
    explicit ratfun(backend tag = backend::exact) : tag_(tag), poly_(tag) {}
    explicit ratfun(const poly &p) : tag_(p.tag()), poly_(p) {}
    static ratfun simple_pole(const scalar &pole, const scalar &residue);

    backend tag() const { return tag_; }
    bool is_zero() const { return terms_.empty() && poly_.is_zero(); }
    const poly &polynomial_part() const { return poly_; }
    const std::vector<std::pair<scalar, scalar>> &pole_terms() const { return terms_; }
    scalar residue_at(const scalar &s) const;
    bool has_pole(const scalar &s) const;

    ratfun operator+(const ratfun &o) const;
    ratfun operator-(const ratfun &o) const;
    ratfun operator-() const;
    ratfun scale(const scalar &s) const;
    ratfun mul_poly(const poly &f) const;
    /// Multiply by (x - q): kills a pole at q, shifts the rest.
    ratfun mul_linear(const scalar &q) const;
    /// Divide by (x - q): requires no existing pole at q (simple poles only).
    ratfun div_linear(const scalar &q) const;

    /// Value at a non-pole point.
    scalar eval(const scalar &x0) const;
    /// Taylor coefficients of order 0..order at x0 (x0 must not be a pole).
    std::vector<scalar> series(const scalar &x0, int order) const;

    /// Numerator polynomial over prod_{s in poles}(x - s); every pole of
    /// *this must appear in `poles`.
    poly numerator_over(const std::vector<scalar> &poles) const;

    bool operator==(const ratfun &o) const;
    bool operator!=(const ratfun &o) const { return !(*this == o); }

    /// Drop residues that are exactly zero (floating: below tolerance).
    void prune();

  private:
    void add_term(const scalar &pole, const scalar &residue);

    backend tag_;
    std::vector<std::pair<scalar, scalar>> terms_; // sorted by pole, residues nonzero
    poly poly_;
};

/// 2x2 matrix of rational functions: a connection matrix Omega = N(x) dx.
class conn_mat {
  public:
    explicit conn_mat(backend tag = backend::exact)
        : e_{ratfun(tag), ratfun(tag), ratfun(tag), ratfun(tag)} {}

    backend tag() const { return e_[0].tag(); }
    const ratfun &at(int i, int j) const { return e_[static_cast<size_t>(2 * i + j)]; }
    void set(int i, int j, const ratfun &v) { e_[static_cast<size_t>(2 * i + j)] = v; }

    matrix2 residue_at(const scalar &s) const;
    bool has_pole(const scalar &s) const;

    conn_mat operator+(const conn_mat &o) const;
    conn_mat operator-(const conn_mat &o) const;

    /// P^{-1} N P for a constant invertible P.
    conn_mat conjugate(const matrix2 &p) const;
    /// M^{-1} N M + M^{-1} M' for M = (l1 0; f(x) l2).
    conn_mat lower_unipotent(const scalar &l1, const scalar &l2, const poly &f) const;
    /// Swap the two frame vectors (conjugation by the permutation matrix).
    conn_mat frame_swap() const;
    /// M = diag(1, x-q) resp. diag(x-q, 1) resp. their inverses; the
    /// meromorphic gauges realizing elementary transformations.
    conn_mat elm_lower_second(const scalar &q) const; // diag(1, x-q)
    conn_mat elm_lower_first(const scalar &q) const;  // diag(x-q, 1)
    conn_mat elm_raise_second(const scalar &q) const; // diag(1, 1/(x-q))
    conn_mat elm_raise_first(const scalar &q) const;  // diag(1/(x-q), 1)
    /// Add lambda * I / (x - s).
    conn_mat add_scalar_pole(const scalar &s, const scalar &lambda) const;

    bool operator==(const conn_mat &o) const;

    void prune();

  private:
    std::array<ratfun, 4> e_;
};

} // namespace mcon

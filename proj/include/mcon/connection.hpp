#pragma once

#include <mcon/ratfun.hpp>
#include <mcon/spectral.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mcon {

/// Birkhoff splitting O(d1) + O(d2), d1 <= d2.
struct bundle_type {
    int d1 = 0, d2 = 0;
    bundle_type() = default;
    bundle_type(int a, int b) : d1(a), d2(b) {
        if (d1 > d2) throw config_error("bundle type requires d1 <= d2");
    }
    int degree() const { return d1 + d2; }
    int gap() const { return d2 - d1; }
    bool operator==(const bundle_type &o) const { return d1 == o.d1 && d2 == o.d2; }
};

/// Projective direction in a fiber, normalized so the first nonzero
/// coordinate is 1.  free_data marks parabolics over scalar residues.
struct parabolic {
    scalar x, y;
    bool free_data = false;

    parabolic() = default;
    parabolic(scalar a, scalar b, bool free = false);
    backend tag() const { return x.tag(); }
    bool is_e1() const { return y.is_zero(); }
    bool is_e2() const { return x.is_zero(); }
    bool same_direction(const parabolic &o) const { return (x * o.y - y * o.x).is_zero(); }
    bool operator==(const parabolic &o) const { return x == o.x && y == o.y; }
};

struct gauge_record; // defined in gauge.hpp

/// Logarithmic connection on O(d1)+O(d2) in the affine Birkhoff frame:
/// omega has simple poles at the t_i (true singular points, with spectral
/// data and parabolics) and at the q_j (apparent points, kept separate).
struct log_connection {
    bundle_type bundle;
    pole_config poles;            // t_i
    std::vector<scalar> apparent; // q_j
    conn_mat omega;
    spectral_data spectral;          // per t_i
    std::vector<parabolic> parabolics; // per t_i
    std::vector<gauge_record> move_log;

    log_connection(bundle_type b, pole_config t, conn_mat om, spectral_data sp,
                   std::vector<parabolic> par, std::vector<scalar> qs = {});
    ~log_connection();
    log_connection(const log_connection &);
    log_connection &operator=(const log_connection &);
    log_connection(log_connection &&) noexcept;
    log_connection &operator=(log_connection &&) noexcept;

    backend tag() const { return poles.tag(); }
    int n() const { return poles.n(); }
    /// t union q, the full polar divisor of omega.
    std::vector<scalar> all_poles() const;
    /// Numerator matrix A(x) with omega = A(x) dx / prod(x - s).
    std::array<poly, 4> numerator_matrix() const;
    /// Residue kernel direction at apparent pole q_j.
    parabolic apparent_kernel(int j) const;

    void validate() const;
};

struct infinity_report {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Check the holomorphy-at-infinity degree bounds for the attached bundle:
/// leading term -diag(d1,d2) x^{m-1} and the per-entry degree bounds, with m
/// the total number of poles.
infinity_report check_infinity(const log_connection &conn);

/// Eigenvalues of the residue at t_i, ordered to match the declared spectral
/// data (exact: verified; floating: nearest match within tolerance).
std::pair<scalar, scalar> residue_spectrum(const log_connection &conn, int i);

/// Eigendirection of the residue at t_i for theta_i^sign; nullopt when the
/// residue is scalar (free parabolic).
std::optional<parabolic> eigendirection(const log_connection &conn, int i, bool plus);

/// Zeros of the upper-right numerator entry b(x) (where O(d2) is invariant);
/// requires d1 < d2 and b not identically zero.  In the exact backend the
/// roots must be rational (they are for every chart construction here).
std::vector<scalar> apparent_zeros(const log_connection &conn);

/// Roots of a polynomial.  Floating backend: Durand-Kerner.  Exact backend:
/// floating roots are sharpened to rationals and verified; a root that fails
/// to rationalize throws degenerate_error.
std::vector<scalar> poly_roots(const poly &p);

} // namespace mcon

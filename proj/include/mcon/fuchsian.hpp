#pragma once

#include <mcon/matrix2.hpp>
#include <mcon/pole_config.hpp>
#include <mcon/spectral.hpp>

#include <array>
#include <optional>

namespace mcon {

/// sl2 Fuchsian system with 4 poles: traceless residues A_1..A_4 summing to
/// zero, with det(A_i) = -theta_i^2.
struct fuchsian_system {
    pole_config poles;
    std::array<matrix2, 4> residues;
    std::vector<scalar> theta; // theta_i, eigenvalues of A_i are +-theta_i

    fuchsian_system(pole_config p, std::array<matrix2, 4> a, std::vector<scalar> th);

    backend tag() const { return poles.tag(); }
    void validate() const; // throws inconsistency_error on any violated relation
};

/// Point of the invariant map: (X1, X2, X3, Y).
struct cubic_point {
    scalar x1, x2, x3, y;
    bool operator==(const cubic_point &o) const {
        return x1 == o.x1 && x2 == o.x2 && x3 == o.x3 && y == o.y;
    }
};

/// Calibrated convention for the invariant map: X_i = sigma * det(pair sum),
/// Y = kappa * tr(A1 [A2, A4]).  Calibration over random exact systems pins
/// sigma = -1, kappa = 1; see calibrate_invariants().
struct cubic_convention {
    int sigma = -1;
    int kappa = 1;
};

/// Re-derive (sigma, kappa) by sampling: the unique choice in
/// {+1,-1} x {1,2,4} making both defining relations vanish identically.
cubic_convention calibrate_invariants(unsigned seed = 1, int samples = 16);

cubic_point invariants(const fuchsian_system &sys, const cubic_convention &conv = {});

/// Residuals of the linear and cubic defining relations of the surface.
std::pair<scalar, scalar> cubic_residuals(const cubic_point &p, const std::vector<scalar> &theta);

/// Conjugate so that A4 = diag(theta4, -theta4); returns the new system and
/// the det-1 conjugating matrix.  Requires theta4 != 0.
std::pair<fuchsian_system, matrix2> normalize(const fuchsian_system &sys);

/// Inverse of the invariant map on the smooth locus; output is in normalized
/// form (A4 diagonal).  Throws inconsistency_error off the surface and
/// triangular_locus_error on the triangular fiber.
fuchsian_system reconstruct(const cubic_point &p, const std::vector<scalar> &theta,
                            const pole_config &poles, const cubic_convention &conv = {});

struct reducibility {
    enum class kind { irreducible, reducible, totally_degenerate } k;
    // common invariant direction when reducible (projective vector)
    scalar v0, v1;
};

reducibility is_reducible(const fuchsian_system &sys);

/// Which singular-locus conditions the spectral data satisfies.
struct locus_flags {
    std::array<bool, 4> theta_zero{};
    // sign patterns (+1/-1 per index, first fixed +1) with sum_i s_i theta_i = 0
    std::vector<std::array<int, 4>> zero_sums;
    bool any() const;
};

locus_flags singular_locus_flags(const std::vector<scalar> &theta);

/// Explicit conjugacy test: find M (det != 0) with M^{-1} A_i M = B_i for
/// all i.  Returns the conjugator when one exists.
std::optional<matrix2> conjugacy_witness(const fuchsian_system &a, const fuchsian_system &b);

class rng;

/// Random valid system with the prescribed rational spectrum (theta_4 may be
/// zero).  A_1, A_2 are random conjugates of diag(theta, -theta); (A_3, A_4)
/// come from a rational chord parametrization of the conic of solutions.
fuchsian_system sample_fuchsian_system(rng &r, const std::vector<scalar> &theta,
                                       const pole_config &poles);

} // namespace mcon

#pragma once

#include <mcon/gauge.hpp>

namespace mcon {

/// Unordered collection of n-3 apparent points (q_j, p_j), canonically
/// sorted lexicographically on q.
struct garnier_point {
    std::vector<std::pair<scalar, scalar>> pairs;

    explicit garnier_point(std::vector<std::pair<scalar, scalar>> qp);
    int count() const { return static_cast<int>(pairs.size()); }
    bool operator==(const garnier_point &o) const { return pairs == o.pairs; }
};

/// The connection-matrix template of the normal form: residues
/// (0 1/tau_i; -tau_i th+ th-  th+ + th-) at t_i, (0 0; p_j -1) at q_j and
/// polynomial part (0 0; c(x) 0).
conn_mat apparent_family_matrix(const spectral_data &sp, const pole_config &poles,
                                const std::vector<std::pair<scalar, scalar>> &pairs,
                                const poly &c);

/// First-order apparent-singularity condition at q_j: the component of
/// Omega (1; p_j) transverse to the kernel direction at order zero.  Zero
/// iff q_j is non-logarithmic at order one.
scalar apparent_condition(const conn_mat &omega, const scalar &q);

/// Genericity warnings (integer theta differences / integer eigenvalue
/// sums); informational only.
std::vector<std::string> garnier_genericity_warnings(const spectral_data &sp);

/// The normal form on O + O(n-2): c(x) of degree n-4 is solved exactly from
/// the square linear system of apparent conditions.
log_connection garnier_normal_form(const garnier_point &pt, const spectral_data &sp,
                                   const pole_config &poles);

/// Canonicalize a connection on O + O(1): positive elementary transformation
/// at each zero of b(x) directed by O(1), then monic b and cleared a.
log_connection big_normal_form(const log_connection &conn);

/// Forward coordinates: zeros of b(x) and the residue-kernel parameters of
/// the canonical form.
garnier_point garnier_coordinates(const log_connection &conn);

} // namespace mcon

#pragma once

#include <mcon/fuchsian.hpp>
#include <mcon/gauge.hpp>

namespace mcon {

/// Chart point of the n = 4 moduli space: an interior (q, p), the limit
/// fiber over q = infinity, or a point of an exceptional divisor E_i^+-.
struct pq_point {
    enum class kind { interior, at_infinity_fiber, exceptional } k = kind::interior;
    scalar q, p;          // interior
    scalar y;             // at_infinity_fiber: x^2-coefficient of a(x) in the b=1 frame
    int pole_index = -1;  // exceptional: which t_i
    bool sign_plus = false;
    scalar fiber;         // exceptional coordinate (the F2 line's c0 on E_i^-)
    bool inner_divisor = false; // E_i' (second blow-up) vs E_i when theta+ = theta-

    static pq_point interior(const scalar &q, const scalar &p) {
        pq_point pt;
        pt.k = kind::interior;
        pt.q = q;
        pt.p = p;
        return pt;
    }
    bool operator==(const pq_point &o) const;
};

/// Point of the fiber F_i over t_i in the ruled surface, in the residue
/// chart: the section y dx/prod(x - t_j) has residue y/tau_i at t_i.
struct fiber_point {
    int pole_index = -1;
    scalar residue_coordinate;
};

/// The marked points s_i^+-: Res_{t_i}(s_i^+-) = theta_i^+-.
fiber_point s_point(int i, bool plus, const spectral_data &sp);

/// Surface y-coordinate of the point underlying an interior chart point:
/// y = p prod(q - t_i).
scalar surface_y(const pq_point &pt, const pole_config &poles);

/// Formal-diagonalization obstruction at a pole whose residue eigenvalues
/// differ by the positive integer k; zero iff the point is apparent
/// (non-logarithmic).
scalar resonance_obstruction(const conn_mat &omega, const scalar &pole, int k);
scalar resonance_obstruction(const log_connection &conn, const scalar &pole, int k);

/// The (0,2) normal form of the chart construction, with c0 fixed by the
/// apparent-singularity condition at q.  Exposed for tests; from_pq applies
/// the final elementary transformation at q on top of this.
log_connection chart_normal_form(const pq_point &pt, const spectral_data &sp,
                                 const pole_config &poles);

/// Interior/at-infinity chart point to parabolic connection on O + O(1).
log_connection from_pq(const pq_point &pt, const spectral_data &sp, const pole_config &poles);

/// Inverse chart map; classifies boundary strata by tags.
pq_point to_pq(const log_connection &conn);

/// The unique normal form on O(-1) + O(1) for sl2 spectral data theta; the
/// moduli space of connections on this fixed bundle is the affine c0-line.
log_connection f2_line(const scalar &c0, const std::vector<scalar> &theta,
                       const pole_config &poles);

/// Same normal form for arbitrary degree-0 spectral data.
log_connection f2_normal_form(const scalar &c0, const spectral_data &sp,
                              const pole_config &poles);

/// Recover c0 from any gauge representative on O(-1) + O(1).
scalar f2_c0(const log_connection &conn);

/// The (0,1) parabolic connection with l_i inside the destabilizing O(1),
/// parametrized by the F2-line coordinate c0 (E_i^- divisor point).
log_connection exceptional_connection(int i, const scalar &c0, const spectral_data &sp,
                                      const pole_config &poles);

struct bridge_result {
    bool on_f2_line = false;
    cubic_point point;  // valid when !on_f2_line
    scalar c0;          // valid when on_f2_line
};

/// The Elm_{t4}^- identification of the chart with the Fuchsian cubic: the
/// spectral data must have the shifted shape theta_i^+- = +-theta_i
/// (i = 1,2,3), theta_4^+ = -theta_4, theta_4^- = theta_4 - 1.
bridge_result link_to_fuchsian(const pq_point &pt, const spectral_data &sp,
                               const pole_config &poles, const cubic_convention &conv = {});

/// theta' on the Fuchsian side of the bridge.
std::vector<scalar> bridge_theta(const spectral_data &sp);

/// Extract the Fuchsian system from a trivial-bundle sl2 connection.
fuchsian_system fuchsian_from_connection(const log_connection &conn);

/// Fuchsian system as a trivial-bundle log connection (parabolics from the
/// theta^+ eigendirections; an explicit direction is required at scalar
/// residues).
log_connection connection_from_fuchsian(const fuchsian_system &sys);

} // namespace mcon

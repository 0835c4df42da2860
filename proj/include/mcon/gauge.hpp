#pragma once

#include <mcon/connection.hpp>

#include <optional>

namespace mcon {

/// One applied bundle-map action; the per-connection log of these replays
/// deterministically (replay() below).
struct gauge_record {
    enum class kind {
        constant,
        lower_unipotent,
        twist,
        elm_minus,
        elm_plus,
        elm_minus_apparent,
        elm_plus_apparent
    };
    kind k = kind::constant;
    matrix2 m;                           // constant
    scalar lambda1, lambda2;             // lower_unipotent
    poly f;                              // lower_unipotent
    int twist_k = 0;                     // twist
    std::vector<scalar> lambda;          // twist
    int pole_index = -1;                 // elm at t_i
    scalar apparent_pole;                // elm at q
};

/// Constant bundle automorphism.  Full GL2 when d1 == d2; lower triangular
/// otherwise.
log_connection apply_constant(const log_connection &conn, const matrix2 &m);

/// M = (lambda1 0; f(x) lambda2) with deg f <= d2 - d1 (requires d1 < d2).
log_connection apply_unipotent(const log_connection &conn, const scalar &lambda1,
                               const scalar &lambda2, const poly &f);

/// Twist by the rank-1 logarithmic connection (O(k), eigenvalues lambda_i);
/// requires sum(lambda) + k = 0.  Shifts theta_i^+- by lambda_i and the
/// degree by 2k.
log_connection twist(const log_connection &conn, int k, const std::vector<scalar> &lambda);

/// Elementary transformations at the true pole t_i, directed by the
/// parabolic l_i.  Minus lowers the degree by 1 with spectral update
/// (theta+, theta-) -> (theta- + 1, theta+); plus is the inverse.
log_connection elm_minus(const log_connection &conn, int i);
log_connection elm_plus(const log_connection &conn, int i);

/// Same moves at an apparent pole q.  elm_minus uses the residue-kernel
/// direction; elm_plus creates the pole, directed by the O(d2) subbundle.
log_connection elm_minus_apparent(const log_connection &conn, const scalar &q);
log_connection elm_plus_apparent(const log_connection &conn, const scalar &q);

struct renorm_options {
    bool monic_b = false; // diagonal move making the b-entry monic
    bool clear_a = false; // unipotent move killing the a-entry (needs b | a)
};

/// Restore the normalized Birkhoff frame for the claimed splitting: order
/// the frame (swap if needed), optionally normalize b and clear a, then
/// verify every degree bound.  Throws bounds_error when the raw matrix does
/// not fit the target splitting.
log_connection renormalize_to_birkhoff(const log_connection &raw, bundle_type target,
                                       renorm_options opt = {});

/// Replay a move log from an initial connection; output is bit-for-bit the
/// connection that produced the log (exact backend).
log_connection replay(const log_connection &initial, const std::vector<gauge_record> &log);

/// Find a bundle automorphism carrying a to b (same bundle, poles and
/// spectral data).  Returns the witnessing move when the connections are
/// gauge equivalent.
std::optional<gauge_record> gauge_equivalent(const log_connection &a, const log_connection &b);

} // namespace mcon

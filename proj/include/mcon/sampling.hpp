#pragma once

#include <mcon/garnier.hpp>
#include <mcon/painleve.hpp>
#include <mcon/rng.hpp>

namespace mcon {

pole_config sample_poles(rng &r, int n, backend tag = backend::exact);

/// Random SL2 element (product of elementary shears).
matrix2 sample_sl2_matrix(rng &r, backend tag = backend::exact);

/// sl2 spectral values theta_1..theta_4 (theta_4 forced nonzero on request).
std::vector<scalar> sample_sl2_theta(rng &r, bool theta4_nonzero, backend tag = backend::exact);

/// Spectral data for the degree-1 chart: sum(theta^+ + theta^-) = -1.
spectral_data sample_chart_spectral(rng &r, int n, backend tag = backend::exact);

/// The shifted shape of the Fuchsian bridge: theta_i^+- = +-theta_i for
/// i = 1,2,3 and (theta_4^+, theta_4^-) = (-theta_4, theta_4 - 1).
spectral_data sample_bridge_spectral(rng &r, backend tag = backend::exact);

pq_point sample_interior_pq(rng &r, const pole_config &poles, backend tag = backend::exact);

garnier_point sample_garnier_point(rng &r, const pole_config &poles, backend tag = backend::exact);

/// Random valid connection on the requested splitting; shapes (0,0), (0,1),
/// (-1,1) and (0,2) are supported, gauge-scrambled away from normal form.
log_connection sample_connection(rng &r, bundle_type shape, const pole_config &poles,
                                 backend tag = backend::exact);

/// Random admissible gauge move (constant for d1 = d2, diagonal + unipotent
/// otherwise).
log_connection scramble(rng &r, const log_connection &conn);

} // namespace mcon

#pragma once

#include <mcon/scalar.hpp>

#include <optional>
#include <vector>

namespace mcon {

/// Residue eigenvalues theta_i^+/theta_i^- at each of the n poles.
struct spectral_data {
    std::vector<scalar> theta_plus, theta_minus;

    spectral_data() = default;
    spectral_data(std::vector<scalar> plus, std::vector<scalar> minus);
    /// sl2 shape: theta_i^+ = theta_i, theta_i^- = -theta_i.
    static spectral_data sl2(const std::vector<scalar> &theta);

    int n() const { return static_cast<int>(theta_plus.size()); }
    backend tag() const { return theta_plus.at(0).tag(); }
    const scalar &plus(int i) const { return theta_plus[static_cast<size_t>(i)]; }
    const scalar &minus(int i) const { return theta_minus[static_cast<size_t>(i)]; }
    scalar trace_sum() const; // sum_i (theta_i^+ + theta_i^-)
    bool is_sl2() const;

    bool operator==(const spectral_data &o) const {
        return theta_plus == o.theta_plus && theta_minus == o.theta_minus;
    }
};

/// theta_i^+ - theta_i^- is an integer k (returned) or nullopt.  Exact
/// backend only looks for honest integers; floating uses the global tolerance.
std::optional<long> integer_difference(const scalar &plus, const scalar &minus);

} // namespace mcon

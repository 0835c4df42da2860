#pragma once

#include <mcon/poly.hpp>

#include <vector>

namespace mcon {

/// Affine pole positions t_1..t_n (pairwise distinct) together with the
/// derived constants tau_i = prod_{j != i} (t_i - t_j).
class pole_config {
  public:
    explicit pole_config(std::vector<scalar> t);

    backend tag() const { return t_[0].tag(); }
    int n() const { return static_cast<int>(t_.size()); }
    const std::vector<scalar> &t() const { return t_; }
    const scalar &t(int i) const { return t_[static_cast<size_t>(i)]; }
    const scalar &tau(int i) const { return tau_[static_cast<size_t>(i)]; }

    /// prod_i (x - t_i)
    poly product() const;
    int index_of(const scalar &x) const; // -1 when x is not a pole

    bool operator==(const pole_config &o) const { return t_ == o.t_; }

  private:
    std::vector<scalar> t_, tau_;
};

/// Decompose numerator / prod_i (x - t_i) into sum_i r_i/(x - t_i) plus a
/// polynomial part.  Recombination reproduces the numerator exactly in the
/// exact backend.
struct partial_fraction_result {
    std::vector<scalar> residues;
    poly polynomial_part;
};

partial_fraction_result partial_fractions(const poly &numerator, const pole_config &poles);

} // namespace mcon

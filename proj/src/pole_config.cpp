#include <mcon/pole_config.hpp>

namespace mcon {

pole_config::pole_config(std::vector<scalar> t) : t_(std::move(t)) {
    if (t_.empty()) throw config_error("empty pole configuration");
    for (const auto &x : t_)
        if (x.tag() != t_[0].tag()) throw backend_mismatch("pole configuration backend");
    for (size_t i = 0; i < t_.size(); ++i)
        for (size_t j = i + 1; j < t_.size(); ++j)
            if (t_[i] == t_[j]) throw config_error("duplicate pole " + t_[i].str());
    tau_.reserve(t_.size());
    for (size_t i = 0; i < t_.size(); ++i) {
        scalar p = scalar::one(tag());
        for (size_t j = 0; j < t_.size(); ++j)
            if (j != i) p = p * (t_[i] - t_[j]);
        tau_.push_back(p);
    }
}

poly pole_config::product() const {
    poly p = poly::constant(scalar::one(tag()));
    for (const auto &x : t_) p = p * poly::linear_monic(x);
    return p;
}

int pole_config::index_of(const scalar &x) const {
    for (size_t i = 0; i < t_.size(); ++i)
        if (t_[i] == x) return static_cast<int>(i);
    return -1;
}

partial_fraction_result partial_fractions(const poly &numerator, const pole_config &poles) {
    auto [quotient, remainder] = numerator.divmod(poles.product());
    partial_fraction_result out;
    out.polynomial_part = quotient;
    out.residues.reserve(static_cast<size_t>(poles.n()));
    for (int i = 0; i < poles.n(); ++i)
        out.residues.push_back(poly_eval(remainder, poles.t(i)) / poles.tau(i));
    return out;
}

} // namespace mcon

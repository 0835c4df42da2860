#include <mcon/spectral.hpp>

#include <cmath>

namespace mcon {

spectral_data::spectral_data(std::vector<scalar> plus, std::vector<scalar> minus)
    : theta_plus(std::move(plus)), theta_minus(std::move(minus)) {
    if (theta_plus.size() != theta_minus.size() || theta_plus.empty())
        throw config_error("spectral data sizes");
    for (size_t i = 0; i < theta_plus.size(); ++i)
        if (theta_plus[i].tag() != theta_plus[0].tag() || theta_minus[i].tag() != theta_plus[0].tag())
            throw backend_mismatch("spectral data backend");
}

spectral_data spectral_data::sl2(const std::vector<scalar> &theta) {
    std::vector<scalar> minus;
    minus.reserve(theta.size());
    for (const auto &th : theta) minus.push_back(-th);
    return spectral_data(theta, std::move(minus));
}

scalar spectral_data::trace_sum() const {
    scalar s = scalar::zero(tag());
    for (int i = 0; i < n(); ++i) s = s + plus(i) + minus(i);
    return s;
}

bool spectral_data::is_sl2() const {
    for (int i = 0; i < n(); ++i)
        if (!(plus(i) + minus(i)).is_zero()) return false;
    return true;
}

std::optional<long> integer_difference(const scalar &plus, const scalar &minus) {
    scalar d = plus - minus;
    if (d.tag() == backend::exact) {
        if (d.im_q() != 0) return std::nullopt;
        const mpq_class &q = d.re_q();
        if (q.get_den() != 1) return std::nullopt;
        if (!q.get_num().fits_slong_p()) return std::nullopt;
        return q.get_num().get_si();
    }
    auto z = d.to_complex();
    double k = std::round(z.real());
    if (std::abs(z.imag()) > float_tolerance() || std::abs(z.real() - k) > float_tolerance())
        return std::nullopt;
    return static_cast<long>(k);
}

} // namespace mcon

#include <mcon/sampling.hpp>

namespace mcon {

pole_config sample_poles(rng &r, int n, backend tag) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<scalar> t;
        for (int i = 0; i < n; ++i) t.push_back(r.rational(tag));
        bool distinct = true;
        for (size_t i = 0; i < t.size() && distinct; ++i)
            for (size_t j = i + 1; j < t.size() && distinct; ++j) distinct = !(t[i] == t[j]);
        if (distinct) return pole_config(t);
    }
    throw degenerate_error("failed to sample distinct poles");
}

matrix2 sample_sl2_matrix(rng &r, backend tag) {
    matrix2 m = matrix2::identity(tag);
    for (int k = 0; k < 3; ++k) {
        scalar s = r.rational(tag);
        m = m * (k % 2 == 0 ? matrix2(scalar::one(tag), s, scalar::zero(tag), scalar::one(tag))
                            : matrix2(scalar::one(tag), scalar::zero(tag), s, scalar::one(tag)));
    }
    return m;
}

std::vector<scalar> sample_sl2_theta(rng &r, bool theta4_nonzero, backend tag) {
    std::vector<scalar> th{r.rational(tag), r.rational(tag), r.rational(tag),
                           theta4_nonzero ? r.nonzero(tag) : r.rational(tag)};
    return th;
}

spectral_data sample_chart_spectral(rng &r, int n, backend tag) {
    std::vector<scalar> plus, minus;
    scalar acc = scalar::one(tag); // sum must come to -1
    for (int i = 0; i < n; ++i) plus.push_back(r.rational(tag));
    for (int i = 0; i < n - 1; ++i) minus.push_back(r.rational(tag));
    for (const auto &v : plus) acc = acc + v;
    for (const auto &v : minus) acc = acc + v;
    minus.push_back(-acc);
    return spectral_data(plus, minus);
}

spectral_data sample_bridge_spectral(rng &r, backend tag) {
    std::vector<scalar> th{r.nonzero(tag), r.nonzero(tag), r.nonzero(tag), r.nonzero(tag)};
    std::vector<scalar> plus{th[0], th[1], th[2], -th[3]};
    std::vector<scalar> minus{-th[0], -th[1], -th[2], th[3] - scalar::one(tag)};
    return spectral_data(plus, minus);
}

pq_point sample_interior_pq(rng &r, const pole_config &poles, backend tag) {
    scalar q = r.rational(tag);
    while (poles.index_of(q) >= 0) q = r.rational(tag);
    return pq_point::interior(q, r.rational(tag));
}

garnier_point sample_garnier_point(rng &r, const pole_config &poles, backend tag) {
    int m = poles.n() - 3;
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<std::pair<scalar, scalar>> pairs;
        bool ok = true;
        for (int j = 0; j < m; ++j) {
            scalar q = r.rational(tag);
            if (poles.index_of(q) >= 0) {
                ok = false;
                break;
            }
            for (const auto &[prev, p] : pairs) ok = ok && !(prev == q);
            if (!ok) break;
            pairs.emplace_back(q, r.rational(tag));
        }
        if (ok) return garnier_point(pairs);
    }
    throw degenerate_error("failed to sample distinct apparent points");
}

log_connection scramble(rng &r, const log_connection &conn) {
    if (conn.bundle.gap() == 0) return apply_constant(conn, sample_sl2_matrix(r, conn.tag()));
    backend tag = conn.tag();
    scalar l1 = r.nonzero(tag), l2 = r.nonzero(tag);
    std::vector<scalar> fc;
    for (int k = 0; k <= conn.bundle.gap(); ++k) fc.push_back(r.rational(tag));
    return apply_unipotent(conn, l1, l2, poly(tag, fc));
}

log_connection sample_connection(rng &r, bundle_type shape, const pole_config &poles,
                                 backend tag) {
    if (shape == bundle_type(0, 0)) {
        auto th = sample_sl2_theta(r, true, tag);
        return scramble(r, connection_from_fuchsian(sample_fuchsian_system(r, th, poles)));
    }
    if (shape == bundle_type(0, 1)) {
        auto sp = sample_chart_spectral(r, poles.n(), tag);
        return scramble(r, from_pq(sample_interior_pq(r, poles, tag), sp, poles));
    }
    if (shape == bundle_type(-1, 1)) {
        std::vector<scalar> plus, minus;
        scalar acc = scalar::zero(tag);
        for (int i = 0; i < poles.n(); ++i) plus.push_back(r.rational(tag));
        for (int i = 0; i < poles.n() - 1; ++i) minus.push_back(r.rational(tag));
        for (const auto &v : plus) acc = acc + v;
        for (const auto &v : minus) acc = acc + v;
        minus.push_back(-acc);
        return scramble(r, f2_normal_form(r.rational(tag), spectral_data(plus, minus), poles));
    }
    if (shape == bundle_type(0, 2)) {
        auto sp = sample_chart_spectral(r, poles.n(), tag);
        return scramble(r, chart_normal_form(sample_interior_pq(r, poles, tag), sp, poles));
    }
    throw config_error("unsupported bundle shape for sampling");
}

} // namespace mcon

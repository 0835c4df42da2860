#include <mcon/garnier.hpp>

#include <mcon/linsolve.hpp>

#include <algorithm>

namespace mcon {

garnier_point::garnier_point(std::vector<std::pair<scalar, scalar>> qp) : pairs(std::move(qp)) {
    if (pairs.empty()) throw config_error("garnier point needs at least one pair");
    std::sort(pairs.begin(), pairs.end(),
              [](const auto &a, const auto &b) { return scalar_less(a.first, b.first); });
    for (size_t i = 0; i + 1 < pairs.size(); ++i)
        if (pairs[i].first == pairs[i + 1].first)
            throw degenerate_error("apparent points collide (diagonal locus)");
}

conn_mat apparent_family_matrix(const spectral_data &sp, const pole_config &poles,
                                const std::vector<std::pair<scalar, scalar>> &pairs,
                                const poly &c) {
    backend tag = poles.tag();
    ratfun a(tag), b(tag), cc(tag), d(tag);
    scalar one = scalar::one(tag);
    for (int i = 0; i < poles.n(); ++i) {
        b = b + ratfun::simple_pole(poles.t(i), one / poles.tau(i));
        cc = cc + ratfun::simple_pole(poles.t(i), -(poles.tau(i) * sp.plus(i) * sp.minus(i)));
        d = d + ratfun::simple_pole(poles.t(i), sp.plus(i) + sp.minus(i));
    }
    for (const auto &[q, p] : pairs) {
        cc = cc + ratfun::simple_pole(q, p);
        d = d - ratfun::simple_pole(q, one);
    }
    cc = cc + ratfun(c);
    conn_mat n(tag);
    n.set(0, 0, a);
    n.set(0, 1, b);
    n.set(1, 0, cc);
    n.set(1, 1, d);
    return n;
}

scalar apparent_condition(const conn_mat &omega, const scalar &q) {
    matrix2 r = omega.residue_at(q);
    scalar p = r.c(); // residue is (0 0; p -1), kernel (1; p)
    backend tag = q.tag();
    conn_mat h(tag);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            h.set(i, j, omega.at(i, j) - ratfun::simple_pole(q, r.at(i, j)));
    scalar h00 = h.at(0, 0).eval(q), h01 = h.at(0, 1).eval(q);
    scalar h10 = h.at(1, 0).eval(q), h11 = h.at(1, 1).eval(q);
    return h10 + p * h11 - p * (h00 + p * h01);
}

std::vector<std::string> garnier_genericity_warnings(const spectral_data &sp) {
    std::vector<std::string> w;
    for (int i = 0; i < sp.n(); ++i)
        if (integer_difference(sp.plus(i), sp.minus(i)))
            w.push_back("theta_" + std::to_string(i + 1) + "^+ - theta^- is an integer");
    backend tag = sp.tag();
    for (int mask = 0; mask < (1 << sp.n()); ++mask) {
        scalar s = scalar::zero(tag);
        for (int i = 0; i < sp.n(); ++i) s = s + ((mask >> i) & 1 ? sp.plus(i) : sp.minus(i));
        if (integer_difference(s, scalar::zero(tag))) {
            w.push_back("an eigenvalue sum over sign choices is an integer");
            break;
        }
    }
    return w;
}

log_connection garnier_normal_form(const garnier_point &pt, const spectral_data &sp,
                                   const pole_config &poles) {
    backend tag = poles.tag();
    int n = poles.n();
    if (sp.n() != n) throw config_error("spectral data size != pole count");
    if (pt.count() != n - 3) throw config_error("garnier point needs n-3 pairs");
    scalar fuchs = sp.trace_sum() + scalar::one(tag);
    bool ok = tag == backend::exact ? fuchs.is_zero() : fuchs.approx_zero();
    if (!ok) throw inconsistency_error("spectral data must satisfy sum(theta) + 1 = 0");
    for (const auto &[q, p] : pt.pairs)
        if (poles.index_of(q) >= 0)
            throw degenerate_error("apparent point hits a pole (diagonal locus)");

    int m = n - 3; // unknown coefficients of c(x), degree n-4
    auto condition_vec = [&](const poly &c) {
        conn_mat omega = apparent_family_matrix(sp, poles, pt.pairs, c);
        std::vector<scalar> v;
        v.reserve(static_cast<size_t>(m));
        for (const auto &[q, p] : pt.pairs) v.push_back(apparent_condition(omega, q));
        return v;
    };
    std::vector<scalar> base = condition_vec(poly(tag));
    linear_system ls(m, m, tag);
    for (int k = 0; k < m; ++k) {
        std::vector<scalar> unit(static_cast<size_t>(k) + 1, scalar::zero(tag));
        unit[static_cast<size_t>(k)] = scalar::one(tag);
        std::vector<scalar> col = condition_vec(poly(tag, unit));
        for (int r = 0; r < m; ++r) ls.set(r, k, col[static_cast<size_t>(r)] - base[static_cast<size_t>(r)]);
    }
    for (int r = 0; r < m; ++r) ls.set_rhs(r, -base[static_cast<size_t>(r)]);
    std::vector<scalar> coeffs = ls.solve(); // degenerate_error carries the rank
    poly c(tag, coeffs);

    conn_mat omega = apparent_family_matrix(sp, poles, pt.pairs, c);
    for (const auto &[q, p] : pt.pairs)
        if (!(tag == backend::exact ? apparent_condition(omega, q).is_zero()
                                    : apparent_condition(omega, q).approx_zero()))
            throw inconsistency_error("apparent condition failed after the solve");

    std::vector<parabolic> pars;
    for (int i = 0; i < n; ++i)
        pars.emplace_back(scalar::one(tag), poles.tau(i) * sp.plus(i));
    std::vector<scalar> qs;
    for (const auto &[q, p] : pt.pairs) qs.push_back(q);
    log_connection out(bundle_type(0, n - 2), poles, omega, sp, pars, qs);
    out.validate();
    return out;
}

log_connection big_normal_form(const log_connection &conn) {
    if (!(conn.bundle == bundle_type(0, 1)))
        throw config_error("big_normal_form expects a connection on O + O(1)");
    int n = conn.n();
    auto num = conn.numerator_matrix();
    const poly &b = num[1];
    if (b.is_zero()) throw reducible_error("b(x) vanishes identically: reducible connection");
    if (!b.degree() || *b.degree() < n - 3)
        throw config_error("b(x) degree deficient: apparent point at infinity");
    std::vector<scalar> roots = poly_roots(b);
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (roots[i] == roots[i + 1])
            throw degenerate_error("b(x) has a multiple zero (diagonal locus)");
    for (const auto &q : roots)
        if (conn.poles.index_of(q) >= 0)
            throw degenerate_error("zero of b(x) hits a pole (diagonal locus)");
    log_connection cur = conn;
    for (const auto &q : roots) cur = elm_plus_apparent(cur, q);
    renorm_options opt;
    opt.monic_b = true;
    opt.clear_a = true;
    cur = renormalize_to_birkhoff(cur, bundle_type(0, n - 2), opt);
    cur.validate();
    return cur;
}

garnier_point garnier_coordinates(const log_connection &conn) {
    log_connection nf = big_normal_form(conn);
    std::vector<std::pair<scalar, scalar>> pairs;
    for (const auto &q : nf.apparent) {
        matrix2 r = nf.omega.residue_at(q);
        pairs.emplace_back(q, r.c());
    }
    return garnier_point(std::move(pairs));
}

} // namespace mcon

#include <mcon/painleve.hpp>

#include <mcon/garnier.hpp>

#include <algorithm>

namespace mcon {

bool pq_point::operator==(const pq_point &o) const {
    if (k != o.k) return false;
    switch (k) {
    case kind::interior: return q == o.q && p == o.p;
    case kind::at_infinity_fiber: return y == o.y;
    case kind::exceptional:
        return pole_index == o.pole_index && sign_plus == o.sign_plus &&
               inner_divisor == o.inner_divisor && fiber == o.fiber;
    }
    return false;
}

namespace {

scalar int_scalar(backend tag, long v) {
    return tag == backend::exact ? scalar::exact_int(v) : scalar::floating(static_cast<double>(v));
}

// Lagrange interpolation through (t_i, values_i).
poly interpolate(const pole_config &poles, const std::vector<scalar> &values) {
    backend tag = poles.tag();
    poly out(tag);
    for (int i = 0; i < poles.n(); ++i) {
        poly li = poly::constant(values[static_cast<size_t>(i)] / poles.tau(i));
        for (int j = 0; j < poles.n(); ++j)
            if (j != i) li = li * poly::linear_monic(poles.t(j));
        out = out + li;
    }
    return out;
}

conn_mat matrix_over_product(const std::array<poly, 4> &a, const pole_config &poles) {
    backend tag = poles.tag();
    conn_mat n(tag);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto pf = partial_fractions(a[static_cast<size_t>(2 * i + j)], poles);
            ratfun f(pf.polynomial_part);
            for (int k = 0; k < poles.n(); ++k)
                f = f + ratfun::simple_pole(poles.t(k), pf.residues[static_cast<size_t>(k)]);
            n.set(i, j, f);
        }
    return n;
}

std::vector<parabolic> eigen_parabolics(const conn_mat &omega, const spectral_data &sp,
                                        const pole_config &poles) {
    backend tag = poles.tag();
    std::vector<parabolic> out;
    for (int i = 0; i < poles.n(); ++i) {
        matrix2 r = omega.residue_at(poles.t(i));
        if (r.is_scalar_matrix()) {
            parabolic l(scalar::one(tag), scalar::zero(tag));
            l.free_data = true;
            out.push_back(l);
            continue;
        }
        scalar lambda = sp.plus(i);
        scalar v0 = r.b(), v1 = lambda - r.a();
        if (v0.is_zero() && v1.is_zero()) {
            v0 = lambda - r.d();
            v1 = r.c();
        }
        out.emplace_back(v0, v1);
    }
    return out;
}

} // namespace

fiber_point s_point(int i, bool plus, const spectral_data &sp) {
    return {i, plus ? sp.plus(i) : sp.minus(i)};
}

scalar surface_y(const pq_point &pt, const pole_config &poles) {
    if (pt.k != pq_point::kind::interior) throw config_error("surface_y needs an interior point");
    scalar y = pt.p;
    for (const auto &ti : poles.t()) y = y * (pt.q - ti);
    return y;
}

scalar resonance_obstruction(const log_connection &conn, const scalar &pole, int k) {
    return resonance_obstruction(conn.omega, pole, k);
}

scalar resonance_obstruction(const conn_mat &omega, const scalar &pole, int k) {
    if (k < 1) throw config_error("resonance order k must be a positive integer");
    backend tag = omega.tag();
    matrix2 r = omega.residue_at(pole);
    scalar two = int_scalar(tag, 2), kk = int_scalar(tag, k);
    scalar alpha = (trace(r) + kk) / two, beta = (trace(r) - kk) / two;
    scalar residual = alpha * beta - det(r);
    bool fits = tag == backend::exact ? residual.is_zero() : residual.approx_zero();
    if (!fits) throw config_error("residue eigenvalues do not differ by " + std::to_string(k));

    // constant-diagonalize the residue, larger eigenvalue first
    auto eig = [&](const scalar &lambda) -> std::pair<scalar, scalar> {
        scalar v0 = r.b(), v1 = lambda - r.a();
        if (v0.is_zero() && v1.is_zero()) {
            v0 = lambda - r.d();
            v1 = r.c();
        }
        return {v0, v1};
    };
    auto [a0, a1] = eig(alpha);
    auto [b0, b1] = eig(beta);
    matrix2 c(a0, b0, a1, b1);
    conn_mat n = omega.conjugate(c);

    // H = N - D/(x - pole), expanded to order k-1
    std::vector<matrix2> h(static_cast<size_t>(k), matrix2(tag));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ratfun hf = n.at(i, j) - ratfun::simple_pole(pole, n.at(i, j).residue_at(pole));
            auto co = hf.series(pole, k - 1);
            for (int m = 0; m < k; ++m) h[static_cast<size_t>(m)].set(i, j, co[static_cast<size_t>(m)]);
        }

    // Solve (ad_D + j) P_j = -K_j order by order; the (2,1) component at
    // order k is the obstruction.
    std::vector<matrix2> p(static_cast<size_t>(k) + 1, matrix2(tag));
    p[0] = matrix2::identity(tag);
    for (int j = 1; j <= k; ++j) {
        matrix2 kj(tag);
        for (int m = 0; m < j && m < k; ++m)
            kj = kj + h[static_cast<size_t>(m)] * p[static_cast<size_t>(j - 1 - m)];
        scalar js = int_scalar(tag, j);
        matrix2 pj(tag);
        pj.set(0, 0, -kj.a() / js);
        pj.set(1, 1, -kj.d() / js);
        pj.set(0, 1, -kj.b() / (kk + js));
        if (j < k) {
            pj.set(1, 0, -kj.c() / (js - kk));
        } else {
            return kj.c();
        }
        p[static_cast<size_t>(j)] = pj;
    }
    throw error("unreachable");
}

log_connection chart_normal_form(const pq_point &pt, const spectral_data &sp,
                                 const pole_config &poles) {
    if (pt.k != pq_point::kind::interior) throw config_error("chart_normal_form needs an interior point");
    if (poles.n() != 4 || sp.n() != 4) throw config_error("the (p,q) chart is the n = 4 case");
    backend tag = poles.tag();
    scalar fuchs = sp.trace_sum() + scalar::one(tag);
    bool ok = tag == backend::exact ? fuchs.is_zero() : fuchs.approx_zero();
    if (!ok) throw inconsistency_error("chart needs sum(theta) + 1 = 0");
    if (poles.index_of(pt.q) >= 0)
        throw config_error("q hits a pole: use the exceptional-divisor constructor");

    std::vector<std::pair<scalar, scalar>> pairs{{pt.q, pt.p}};
    // c0 is the unique root of the affine apparent-singularity condition,
    // obtained from the first-order expansion of Omega (1; p) at q.
    auto cond = [&](const scalar &c0) {
        return apparent_condition(apparent_family_matrix(sp, poles, pairs, poly::constant(c0)), pt.q);
    };
    scalar f0 = cond(scalar::zero(tag));
    scalar f1 = cond(scalar::one(tag));
    scalar slope = f1 - f0;
    if (tag == backend::exact ? slope.is_zero() : slope.approx_zero())
        throw degenerate_error("the linear coefficient of the c0 condition vanished");
    scalar c0 = -f0 / slope;

    conn_mat omega = apparent_family_matrix(sp, poles, pairs, poly::constant(c0));
    std::vector<parabolic> pars;
    for (int i = 0; i < 4; ++i) pars.emplace_back(scalar::one(tag), poles.tau(i) * sp.plus(i));
    log_connection out(bundle_type(0, 2), poles, omega, sp, pars, {pt.q});
    out.validate();
    return out;
}

namespace {

// q = infinity stratum: unique normal form with b = 1, a(x) = y x^2.
log_connection infinity_fiber_connection(const scalar &y, const spectral_data &sp,
                                         const pole_config &poles) {
    backend tag = poles.tag();
    std::vector<scalar> dvals, cvals;
    poly x2(tag, {scalar::zero(tag), scalar::zero(tag), y});
    for (int i = 0; i < 4; ++i) {
        const scalar &ti = poles.t(i);
        scalar t3 = ti * ti * ti;
        scalar a_t = poly_eval(x2, ti);
        scalar d_t = (sp.plus(i) + sp.minus(i)) * poles.tau(i) + t3 - a_t;
        dvals.push_back(d_t);
        cvals.push_back(a_t * (d_t - t3) - sp.plus(i) * sp.minus(i) * poles.tau(i) * poles.tau(i));
    }
    poly dtilde = interpolate(poles, dvals);
    poly ctilde = interpolate(poles, cvals);
    poly x3(tag, {scalar::zero(tag), scalar::zero(tag), scalar::zero(tag),
                  scalar::one(tag)});
    std::array<poly, 4> a{x2, poly::constant(scalar::one(tag)), ctilde, -x3 + dtilde};
    conn_mat omega = matrix_over_product(a, poles);
    log_connection out(bundle_type(0, 1), poles, omega, sp, eigen_parabolics(omega, sp, poles));
    out.validate();
    return out;
}

} // namespace

log_connection from_pq(const pq_point &pt, const spectral_data &sp, const pole_config &poles) {
    switch (pt.k) {
    case pq_point::kind::interior: {
        log_connection nf = chart_normal_form(pt, sp, poles);
        log_connection out = elm_minus_apparent(nf, pt.q);
        if (out.omega.has_pole(pt.q))
            throw inconsistency_error("apparent pole at q survived the elementary transformation");
        out = renormalize_to_birkhoff(out, bundle_type(0, 1));
        out.validate();
        return out;
    }
    case pq_point::kind::at_infinity_fiber: return infinity_fiber_connection(pt.y, sp, poles);
    case pq_point::kind::exceptional:
        if (!pt.sign_plus && !pt.inner_divisor)
            return exceptional_connection(pt.pole_index, pt.fiber, sp, poles);
        throw config_error("no constructor for this exceptional stratum");
    }
    throw config_error("bad chart point");
}

pq_point to_pq(const log_connection &conn) {
    if (!(conn.bundle == bundle_type(0, 1)) || conn.n() != 4)
        throw config_error("to_pq expects a 4-pole connection on O + O(1)");
    backend tag = conn.tag();
    auto num = conn.numerator_matrix();
    const poly &b = num[1];
    if (b.is_zero()) throw reducible_error("b(x) vanishes identically: reducible connection");

    // destabilizing parabolic: the E_i^- stratum
    for (int i = 0; i < 4; ++i) {
        if (conn.parabolics[static_cast<size_t>(i)].is_e2()) {
            log_connection down = elm_minus(conn, i);
            if (!(down.bundle == bundle_type(-1, 1)))
                throw inconsistency_error("destabilized connection did not land on O(-1) + O(1)");
            pq_point pt;
            pt.k = pq_point::kind::exceptional;
            pt.pole_index = i;
            pt.sign_plus = false;
            pt.inner_divisor = false;
            pt.fiber = f2_c0(down);
            return pt;
        }
    }
    // scalar residue at t_i: the E_i divisor of the double blow-up
    for (int i = 0; i < 4; ++i) {
        if (conn.omega.residue_at(conn.poles.t(i)).is_scalar_matrix()) {
            pq_point pt;
            pt.k = pq_point::kind::exceptional;
            pt.pole_index = i;
            pt.sign_plus = true;
            pt.inner_divisor = false;
            pt.fiber = conn.parabolics[static_cast<size_t>(i)].y;
            return pt;
        }
    }
    if (*b.degree() == 0) {
        // q at infinity: normalize b = 1, kill the low part of a(x), read y
        log_connection c = apply_constant(conn, matrix2::diag(b.leading(), scalar::one(tag)));
        auto a = c.numerator_matrix();
        poly low(tag, {a[0].coeff(0), a[0].coeff(1)});
        if (!low.is_zero()) c = apply_unipotent(c, scalar::one(tag), scalar::one(tag), -low);
        a = c.numerator_matrix();
        pq_point pt;
        pt.k = pq_point::kind::at_infinity_fiber;
        pt.y = a[0].coeff(2);
        return pt;
    }
    scalar q = -b.coeff(0) / b.coeff(1);
    int hit = conn.poles.index_of(q);
    if (hit >= 0) {
        // E_i^+ (or E_i' in the merged case): chart convention a(t_i) after b monic
        log_connection c = apply_constant(conn, matrix2::diag(b.leading(), scalar::one(tag)));
        auto a = c.numerator_matrix();
        pq_point pt;
        pt.k = pq_point::kind::exceptional;
        pt.pole_index = hit;
        pt.sign_plus = true;
        pt.inner_divisor =
            conn.spectral.plus(hit) == conn.spectral.minus(hit);
        pt.fiber = poly_eval(a[0], q);
        return pt;
    }
    log_connection nf = big_normal_form(conn);
    matrix2 r = nf.omega.residue_at(q);
    return pq_point::interior(q, r.c());
}

log_connection f2_normal_form(const scalar &c0, const spectral_data &sp,
                              const pole_config &poles) {
    if (poles.n() != 4 || sp.n() != 4) throw config_error("the F2 normal form is the n = 4 case");
    backend tag = poles.tag();
    scalar fuchs = sp.trace_sum();
    bool ok = tag == backend::exact ? fuchs.is_zero() : fuchs.approx_zero();
    if (!ok) throw inconsistency_error("degree-0 spectral data required on O(-1) + O(1)");
    std::vector<scalar> dvals, cvals;
    for (int i = 0; i < 4; ++i) {
        const scalar &ti = poles.t(i);
        scalar t3 = ti * ti * ti;
        scalar d_t = (sp.plus(i) + sp.minus(i)) * poles.tau(i);
        dvals.push_back(d_t);
        cvals.push_back(t3 * (d_t - t3) - sp.plus(i) * sp.minus(i) * poles.tau(i) * poles.tau(i));
    }
    poly dtilde = interpolate(poles, dvals);
    poly ctilde = interpolate(poles, cvals) + poles.product().scale(c0);
    poly x3(tag, {scalar::zero(tag), scalar::zero(tag), scalar::zero(tag), scalar::one(tag)});
    std::array<poly, 4> a{x3, poly::constant(scalar::one(tag)), ctilde, -x3 + dtilde};
    conn_mat omega = matrix_over_product(a, poles);
    log_connection out(bundle_type(-1, 1), poles, omega, sp, eigen_parabolics(omega, sp, poles));
    out.validate();
    return out;
}

log_connection f2_line(const scalar &c0, const std::vector<scalar> &theta,
                       const pole_config &poles) {
    return f2_normal_form(c0, spectral_data::sl2(theta), poles);
}

scalar f2_c0(const log_connection &conn) {
    if (!(conn.bundle == bundle_type(-1, 1)))
        throw config_error("f2_c0 expects a connection on O(-1) + O(1)");
    renorm_options opt;
    opt.monic_b = true;
    opt.clear_a = true;
    log_connection nf = renormalize_to_birkhoff(conn, bundle_type(-1, 1), opt);
    return nf.omega.at(1, 0).polynomial_part().coeff(0);
}

log_connection exceptional_connection(int i, const scalar &c0, const spectral_data &sp,
                                      const pole_config &poles) {
    if (i < 0 || i >= poles.n()) throw config_error("pole index out of range");
    backend tag = poles.tag();
    // spectral data after Elm^-_{t_i}: (theta^+, theta^-) -> (theta^- + 1, theta^+)
    spectral_data shifted = sp;
    shifted.theta_plus[static_cast<size_t>(i)] = sp.minus(i) + scalar::one(tag);
    shifted.theta_minus[static_cast<size_t>(i)] = sp.plus(i);
    log_connection f2 = f2_normal_form(c0, shifted, poles);
    log_connection out = elm_plus(f2, i);
    out = renormalize_to_birkhoff(out, bundle_type(0, 1));
    out.validate();
    if (!out.parabolics[static_cast<size_t>(i)].is_e2())
        throw inconsistency_error("parabolic did not land in the destabilizing subbundle");
    return out;
}

std::vector<scalar> bridge_theta(const spectral_data &sp) {
    return {sp.plus(0), sp.plus(1), sp.plus(2), sp.minus(3) + scalar::one(sp.tag())};
}

namespace {

void check_bridge_shape(const spectral_data &sp) {
    backend tag = sp.tag();
    for (int i = 0; i < 3; ++i) {
        scalar s = sp.plus(i) + sp.minus(i);
        bool ok = tag == backend::exact ? s.is_zero() : s.approx_zero();
        if (!ok) throw config_error("bridge needs theta_i^- = -theta_i^+ for i = 1,2,3");
    }
    scalar s4 = sp.plus(3) + sp.minus(3) + scalar::one(tag);
    bool ok4 = tag == backend::exact ? s4.is_zero() : s4.approx_zero();
    if (!ok4) throw config_error("bridge needs theta_4^+ + theta_4^- = -1");
}

} // namespace

fuchsian_system fuchsian_from_connection(const log_connection &conn) {
    if (!(conn.bundle == bundle_type(0, 0)) || conn.n() != 4)
        throw config_error("expected a 4-pole connection on the trivial bundle");
    if (!conn.apparent.empty()) throw config_error("unexpected apparent poles");
    if (!conn.spectral.is_sl2()) throw config_error("expected sl2 spectral data");
    std::array<matrix2, 4> a{conn.omega.residue_at(conn.poles.t(0)),
                             conn.omega.residue_at(conn.poles.t(1)),
                             conn.omega.residue_at(conn.poles.t(2)),
                             conn.omega.residue_at(conn.poles.t(3))};
    fuchsian_system sys(conn.poles, a, conn.spectral.theta_plus);
    sys.validate();
    return sys;
}

log_connection connection_from_fuchsian(const fuchsian_system &sys) {
    sys.validate();
    backend tag = sys.tag();
    conn_mat omega(tag);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ratfun f(tag);
            for (int k = 0; k < 4; ++k)
                f = f + ratfun::simple_pole(sys.poles.t(k), sys.residues[static_cast<size_t>(k)].at(i, j));
            omega.set(i, j, f);
        }
    spectral_data sp = spectral_data::sl2(sys.theta);
    log_connection out(bundle_type(0, 0), sys.poles, omega, sp,
                       eigen_parabolics(omega, sp, sys.poles));
    out.validate();
    return out;
}

bridge_result link_to_fuchsian(const pq_point &pt, const spectral_data &sp,
                               const pole_config &poles, const cubic_convention &conv) {
    check_bridge_shape(sp);
    bridge_result res;
    if (pt.k == pq_point::kind::exceptional && pt.pole_index == 3 && !pt.sign_plus) {
        res.on_f2_line = true;
        res.c0 = pt.fiber;
        return res;
    }
    log_connection conn = from_pq(pt, sp, poles);
    log_connection down = elm_minus(conn, 3);
    if (down.bundle == bundle_type(-1, 1)) {
        res.on_f2_line = true;
        res.c0 = f2_c0(down);
        return res;
    }
    fuchsian_system sys = fuchsian_from_connection(down);
    res.point = invariants(sys, conv);
    return res;
}

} // namespace mcon

#include <mcon/gauge.hpp>

#include <mcon/linsolve.hpp>

#include <algorithm>

namespace mcon {

namespace {

parabolic transport_constant(const parabolic &l, const matrix2 &m_inv) {
    scalar x = m_inv.a() * l.x + m_inv.b() * l.y;
    scalar y = m_inv.c() * l.x + m_inv.d() * l.y;
    return parabolic(x, y, l.free_data);
}

// Transport directions at the other poles through diag(u(x), v(x)) evaluated
// at the pole; entries are the diagonal values of M(s)^{-1}.
parabolic transport_diag(const parabolic &l, const scalar &inv_u, const scalar &inv_v) {
    return parabolic(inv_u * l.x, inv_v * l.y, l.free_data);
}

void swap_frame(log_connection &c) {
    c.omega = c.omega.frame_swap();
    for (auto &l : c.parabolics) l = parabolic(l.y, l.x, l.free_data);
}

void prune_apparent(log_connection &c) {
    std::erase_if(c.apparent, [&](const scalar &q) { return c.omega.residue_at(q).is_zero(); });
}

scalar int_scalar(backend tag, long v) {
    return tag == backend::exact ? scalar::exact_int(v) : scalar::floating(static_cast<double>(v));
}

} // namespace

log_connection apply_constant(const log_connection &conn, const matrix2 &m) {
    if (det(m).is_zero()) throw gauge_error("constant gauge must be invertible");
    if (conn.bundle.gap() > 0 && !m.b().is_zero())
        throw gauge_error("constant gauge must respect the filtration (lower triangular) when d1 < d2");
    log_connection out = conn;
    out.omega = conn.omega.conjugate(m);
    matrix2 mi = m.inverse();
    for (auto &l : out.parabolics) l = transport_constant(l, mi);
    gauge_record rec;
    rec.k = gauge_record::kind::constant;
    rec.m = m;
    out.move_log.push_back(rec);
    return out;
}

log_connection apply_unipotent(const log_connection &conn, const scalar &lambda1,
                               const scalar &lambda2, const poly &f) {
    if (conn.bundle.gap() == 0) throw gauge_error("unipotent gauge needs d1 < d2");
    if (f.degree() && *f.degree() > conn.bundle.gap())
        throw gauge_error("deg f exceeds d2 - d1");
    if (lambda1.is_zero() || lambda2.is_zero()) throw gauge_error("singular diagonal part");
    log_connection out = conn;
    out.omega = conn.omega.lower_unipotent(lambda1, lambda2, f);
    for (int i = 0; i < conn.n(); ++i) {
        // M(t)^{-1} = (1/l1 0; -f(t)/(l1 l2) 1/l2)
        const parabolic &l = conn.parabolics[static_cast<size_t>(i)];
        scalar ft = poly_eval(f, conn.poles.t(i));
        scalar x = l.x / lambda1;
        scalar y = l.y / lambda2 - ft * l.x / (lambda1 * lambda2);
        out.parabolics[static_cast<size_t>(i)] = parabolic(x, y, l.free_data);
    }
    gauge_record rec;
    rec.k = gauge_record::kind::lower_unipotent;
    rec.lambda1 = lambda1;
    rec.lambda2 = lambda2;
    rec.f = f;
    out.move_log.push_back(rec);
    return out;
}

log_connection twist(const log_connection &conn, int k, const std::vector<scalar> &lambda) {
    if (static_cast<int>(lambda.size()) != conn.n())
        throw gauge_error("twist needs one lambda per pole");
    scalar bal = int_scalar(conn.tag(), k);
    for (const auto &l : lambda) bal = bal + l;
    bool balanced = conn.tag() == backend::exact ? bal.is_zero() : bal.approx_zero();
    if (!balanced) throw gauge_error("twist balance sum(lambda) + k != 0");
    log_connection out = conn;
    for (int i = 0; i < conn.n(); ++i)
        out.omega = out.omega.add_scalar_pole(conn.poles.t(i), lambda[static_cast<size_t>(i)]);
    out.bundle = bundle_type(conn.bundle.d1 + k, conn.bundle.d2 + k);
    for (int i = 0; i < conn.n(); ++i) {
        out.spectral.theta_plus[static_cast<size_t>(i)] =
            conn.spectral.plus(i) + lambda[static_cast<size_t>(i)];
        out.spectral.theta_minus[static_cast<size_t>(i)] =
            conn.spectral.minus(i) + lambda[static_cast<size_t>(i)];
    }
    gauge_record rec;
    rec.k = gauge_record::kind::twist;
    rec.twist_k = k;
    rec.lambda = lambda;
    out.move_log.push_back(rec);
    return out;
}

namespace {

// Shared core of the four elm moves.  `raise` picks Elm+ vs Elm-; the
// direction l decides which frame vector absorbs the twist.
log_connection elm_core(const log_connection &conn, const scalar &s, const parabolic &l,
                        bool raise, const gauge_record &rec) {
    log_connection out = conn;
    backend tag = conn.tag();
    matrix2 p = matrix2::identity(tag);
    int e1_deg = conn.bundle.d1, e2_deg = conn.bundle.d2;
    bool lowered_second;
    if (!l.is_e2()) {
        // move l to e1 by the lower-triangular constant (1 0; l.y 1)
        p = matrix2(scalar::one(tag), scalar::zero(tag), l.y, scalar::one(tag));
        out.omega = out.omega.conjugate(p);
        matrix2 pi = p.inverse();
        for (auto &lp : out.parabolics) lp = transport_constant(lp, pi);
        if (raise) {
            out.omega = out.omega.elm_raise_first(s); // diag(1/(x-s), 1)
            e1_deg += 1;
        } else {
            out.omega = out.omega.elm_lower_second(s); // diag(1, x-s)
            e2_deg -= 1;
        }
        lowered_second = true;
    } else {
        if (raise) {
            out.omega = out.omega.elm_raise_second(s); // diag(1, 1/(x-s))
            e2_deg += 1;
        } else {
            out.omega = out.omega.elm_lower_first(s); // diag(x-s, 1)
            e1_deg -= 1;
        }
        lowered_second = false;
    }
    // transport parabolics at the other poles through the diagonal gauge
    for (int j = 0; j < conn.n(); ++j) {
        if (conn.poles.t(j) == s) continue;
        scalar d = conn.poles.t(j) - s;
        scalar inv_u = scalar::one(tag), inv_v = scalar::one(tag);
        if (lowered_second)
            (raise ? inv_u : inv_v) = raise ? d : scalar::one(tag) / d;
        else
            (raise ? inv_v : inv_u) = raise ? d : scalar::one(tag) / d;
        out.parabolics[static_cast<size_t>(j)] =
            transport_diag(out.parabolics[static_cast<size_t>(j)], inv_u, inv_v);
    }
    // new parabolic at s: kernel of the inclusion, C(0;1) in the local frame
    int idx = conn.poles.index_of(s);
    parabolic born = lowered_second ? parabolic(scalar::zero(tag), scalar::one(tag))
                                    : parabolic(scalar::one(tag), scalar::zero(tag));
    if (idx >= 0) {
        out.parabolics[static_cast<size_t>(idx)] = born;
        scalar tp = conn.spectral.plus(idx), tm = conn.spectral.minus(idx);
        if (raise) {
            out.spectral.theta_plus[static_cast<size_t>(idx)] = tm;
            out.spectral.theta_minus[static_cast<size_t>(idx)] = tp - scalar::one(tag);
        } else {
            out.spectral.theta_plus[static_cast<size_t>(idx)] = tm + scalar::one(tag);
            out.spectral.theta_minus[static_cast<size_t>(idx)] = tp;
        }
    }
    if (e1_deg > e2_deg) swap_frame(out);
    out.bundle = bundle_type(std::min(e1_deg, e2_deg), std::max(e1_deg, e2_deg));
    prune_apparent(out);
    out.move_log.push_back(rec);
    return out;
}

} // namespace

log_connection elm_minus(const log_connection &conn, int i) {
    if (i < 0 || i >= conn.n()) throw config_error("pole index out of range");
    const parabolic &l = conn.parabolics[static_cast<size_t>(i)];
    matrix2 r = conn.omega.residue_at(conn.poles.t(i));
    if (r.is_scalar_matrix() && l.x.is_zero() && l.y.is_zero())
        throw gauge_error("undefined parabolic at scalar residue");
    gauge_record rec;
    rec.k = gauge_record::kind::elm_minus;
    rec.pole_index = i;
    return elm_core(conn, conn.poles.t(i), l, false, rec);
}

log_connection elm_plus(const log_connection &conn, int i) {
    if (i < 0 || i >= conn.n()) throw config_error("pole index out of range");
    const parabolic &l = conn.parabolics[static_cast<size_t>(i)];
    gauge_record rec;
    rec.k = gauge_record::kind::elm_plus;
    rec.pole_index = i;
    return elm_core(conn, conn.poles.t(i), l, true, rec);
}

log_connection elm_minus_apparent(const log_connection &conn, const scalar &q) {
    auto it = std::find(conn.apparent.begin(), conn.apparent.end(), q);
    if (it == conn.apparent.end()) throw config_error("not an apparent pole: " + q.str());
    int j = static_cast<int>(it - conn.apparent.begin());
    parabolic kernel = conn.apparent_kernel(j);
    gauge_record rec;
    rec.k = gauge_record::kind::elm_minus_apparent;
    rec.apparent_pole = q;
    return elm_core(conn, q, kernel, false, rec);
}

log_connection elm_plus_apparent(const log_connection &conn, const scalar &q) {
    if (conn.poles.index_of(q) >= 0) throw config_error("q collides with a true pole");
    if (std::find(conn.apparent.begin(), conn.apparent.end(), q) != conn.apparent.end())
        throw config_error("q is already an apparent pole");
    // directed by the O(d2) subbundle
    parabolic l(scalar::zero(conn.tag()), scalar::one(conn.tag()));
    gauge_record rec;
    rec.k = gauge_record::kind::elm_plus_apparent;
    rec.apparent_pole = q;
    log_connection out = elm_core(conn, q, l, true, rec);
    out.apparent.push_back(q);
    prune_apparent(out);
    return out;
}

log_connection renormalize_to_birkhoff(const log_connection &raw, bundle_type target,
                                       renorm_options opt) {
    log_connection out = raw;
    backend tag = raw.tag();
    int m = static_cast<int>(raw.all_poles().size());
    auto leading_ok = [&](const log_connection &c, int d1, int d2) {
        auto a = c.numerator_matrix();
        auto zero_from = [&](const poly &p, int k0) {
            if (!p.degree()) return true;
            for (int k = k0; k <= *p.degree(); ++k) {
                bool z = tag == backend::exact ? p.coeff(k).is_zero() : p.coeff(k).approx_zero();
                if (!z) return false;
            }
            return true;
        };
        scalar la = a[0].coeff(m - 1), ld = a[3].coeff(m - 1);
        bool diag_ok = tag == backend::exact
                           ? (la == int_scalar(tag, -d1) && ld == int_scalar(tag, -d2))
                           : (la.approx_equal(int_scalar(tag, -d1)) &&
                              ld.approx_equal(int_scalar(tag, -d2)));
        return diag_ok && zero_from(a[0], m) && zero_from(a[3], m) && zero_from(a[1], m - 1) &&
               zero_from(a[2], m - 1 + target.gap());
    };
    if (!leading_ok(out, target.d1, target.d2)) {
        log_connection swapped = out;
        swap_frame(swapped);
        if (leading_ok(swapped, target.d1, target.d2)) {
            out = swapped;
        } else {
            auto a = out.numerator_matrix();
            throw bounds_error("target splitting (" + std::to_string(target.d1) + "," +
                               std::to_string(target.d2) + ") unreachable; leading diagonal reads (" +
                               (-a[0].coeff(m - 1)).str() + "," + (-a[3].coeff(m - 1)).str() + ")");
        }
    }
    out.bundle = target;
    if (opt.monic_b && target.gap() > 0) {
        auto a = out.numerator_matrix();
        if (a[1].is_zero()) throw reducible_error("b(x) vanishes identically");
        scalar lead = a[1].leading();
        if (!(lead == scalar::one(tag)))
            out = apply_constant(out, matrix2::diag(lead, scalar::one(tag)));
    }
    if (opt.clear_a && target.gap() > 0) {
        // clear everything in the (1,1) numerator beyond the mandated
        // leading term -d1 x^{m-1}
        auto a = out.numerator_matrix();
        poly extra = a[0];
        if (target.d1 != 0) {
            std::vector<scalar> mono(static_cast<size_t>(m), scalar::zero(tag));
            mono[static_cast<size_t>(m - 1)] = int_scalar(tag, -target.d1);
            extra = extra - poly(tag, mono);
        }
        if (!extra.is_zero()) {
            if (a[1].is_zero()) throw reducible_error("cannot clear a(x): b(x) = 0");
            auto [f, rem] = extra.divmod(a[1]);
            if (!rem.is_zero() || (f.degree() && *f.degree() > target.gap()))
                throw bounds_error("cannot clear a(x) by an admissible unipotent move");
            out = apply_unipotent(out, scalar::one(tag), scalar::one(tag), -f);
        }
    }
    auto rep = check_infinity(out);
    if (!rep.pass)
        throw bounds_error("renormalization left a violated bound: " + rep.violations[0]);
    return out;
}

log_connection replay(const log_connection &initial, const std::vector<gauge_record> &log) {
    log_connection c = initial;
    for (const auto &rec : log) {
        switch (rec.k) {
        case gauge_record::kind::constant: c = apply_constant(c, rec.m); break;
        case gauge_record::kind::lower_unipotent:
            c = apply_unipotent(c, rec.lambda1, rec.lambda2, rec.f);
            break;
        case gauge_record::kind::twist: c = twist(c, rec.twist_k, rec.lambda); break;
        case gauge_record::kind::elm_minus: c = elm_minus(c, rec.pole_index); break;
        case gauge_record::kind::elm_plus: c = elm_plus(c, rec.pole_index); break;
        case gauge_record::kind::elm_minus_apparent:
            c = elm_minus_apparent(c, rec.apparent_pole);
            break;
        case gauge_record::kind::elm_plus_apparent:
            c = elm_plus_apparent(c, rec.apparent_pole);
            break;
        }
    }
    return c;
}

// ------------------------------------------------------- gauge equivalence

namespace {

// E(M) = M N_b - N_a M - M'  as four ratfuns, for the unknown-basis move M
// given by polynomial entries (m11, m12, m21, m22) and their derivatives.
std::array<ratfun, 4> equiv_residual(const conn_mat &na, const conn_mat &nb,
                                     const std::array<poly, 4> &mp) {
    backend tag = na.tag();
    std::array<ratfun, 4> e{ratfun(tag), ratfun(tag), ratfun(tag), ratfun(tag)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ratfun acc(tag);
            for (int k = 0; k < 2; ++k) {
                acc = acc + nb.at(k, j).mul_poly(mp[static_cast<size_t>(2 * i + k)]);
                acc = acc - na.at(i, k).mul_poly(mp[static_cast<size_t>(2 * k + j)]);
            }
            acc = acc - ratfun(mp[static_cast<size_t>(2 * i + j)].derivative());
            e[static_cast<size_t>(2 * i + j)] = acc;
        }
    return e;
}

} // namespace

std::optional<gauge_record> gauge_equivalent(const log_connection &a, const log_connection &b) {
    if (!(a.bundle == b.bundle) || !(a.poles == b.poles)) return std::nullopt;
    if (!(a.spectral == b.spectral)) return std::nullopt;
    backend tag = a.tag();
    int gap = a.bundle.gap();
    // unknown move: d1 == d2 -> constant GL2 (4 unknowns);
    // d1 < d2 -> (l1 0; f l2) with deg f <= gap (2 + gap + 1 unknowns)
    std::vector<std::array<poly, 4>> basis;
    auto mono = [&](int k) {
        std::vector<scalar> c(static_cast<size_t>(k) + 1, scalar::zero(tag));
        c[static_cast<size_t>(k)] = scalar::one(tag);
        return poly(tag, c);
    };
    poly zero(tag), one = poly::constant(scalar::one(tag));
    if (gap == 0) {
        basis.push_back({one, zero, zero, zero});
        basis.push_back({zero, one, zero, zero});
        basis.push_back({zero, zero, one, zero});
        basis.push_back({zero, zero, zero, one});
    } else {
        basis.push_back({one, zero, zero, zero});
        basis.push_back({zero, zero, zero, one});
        for (int k = 0; k <= gap; ++k) basis.push_back({zero, zero, mono(k), zero});
    }
    // assemble the linear system over residues and polynomial coefficients
    std::vector<std::array<ratfun, 4>> cols;
    cols.reserve(basis.size());
    for (const auto &mp : basis) cols.push_back(equiv_residual(a.omega, b.omega, mp));
    std::vector<scalar> all_poles;
    int max_deg = -1;
    for (const auto &col : cols)
        for (const auto &rf : col) {
            for (const auto &[pole, res] : rf.pole_terms())
                if (std::find(all_poles.begin(), all_poles.end(), pole) == all_poles.end())
                    all_poles.push_back(pole);
            if (rf.polynomial_part().degree())
                max_deg = std::max(max_deg, *rf.polynomial_part().degree());
        }
    int rows = 4 * static_cast<int>(all_poles.size()) + 4 * (max_deg + 1);
    if (rows == 0) rows = 1;
    linear_system ls(rows, static_cast<int>(basis.size()), tag);
    for (size_t u = 0; u < cols.size(); ++u) {
        int row = 0;
        for (const auto &s : all_poles)
            for (const auto &rf : cols[u]) ls.set(row++, static_cast<int>(u), rf.residue_at(s));
        for (int k = 0; k <= max_deg; ++k)
            for (const auto &rf : cols[u])
                ls.set(row++, static_cast<int>(u), rf.polynomial_part().coeff(k));
    }
    auto candidates = ls.nullspace();
    auto try_candidate = [&](const std::vector<scalar> &v) -> std::optional<gauge_record> {
        gauge_record rec;
        log_connection moved = a;
        if (gap == 0) {
            matrix2 m(v[0], v[1], v[2], v[3]);
            if (det(m).is_zero()) return std::nullopt;
            moved = apply_constant(a, m);
            rec.k = gauge_record::kind::constant;
            rec.m = m;
        } else {
            scalar l1 = v[0], l2 = v[1];
            if (l1.is_zero() || l2.is_zero()) return std::nullopt;
            std::vector<scalar> fc(v.begin() + 2, v.end());
            poly f(tag, fc);
            moved = apply_unipotent(a, l1, l2, f);
            rec.k = gauge_record::kind::lower_unipotent;
            rec.lambda1 = l1;
            rec.lambda2 = l2;
            rec.f = f;
        }
        if (!(moved.omega == b.omega)) return std::nullopt;
        for (int i = 0; i < a.n(); ++i)
            if (!moved.parabolics[static_cast<size_t>(i)].same_direction(
                    b.parabolics[static_cast<size_t>(i)]))
                return std::nullopt;
        return rec;
    };
    for (const auto &v : candidates)
        if (auto rec = try_candidate(v)) return rec;
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            std::vector<scalar> v = candidates[i];
            for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] + candidates[j][k];
            if (auto rec = try_candidate(v)) return rec;
        }
    return std::nullopt;
}

} // namespace mcon

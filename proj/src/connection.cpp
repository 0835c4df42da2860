#include <mcon/connection.hpp>

#include <mcon/gauge.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

namespace mcon {

parabolic::parabolic(scalar a, scalar b, bool free) : x(a), y(b), free_data(free) {
    if (x.is_zero() && y.is_zero()) throw config_error("zero parabolic direction");
    if (!x.is_zero()) {
        y = y / x;
        x = scalar::one(x.tag());
    } else {
        y = scalar::one(y.tag());
    }
}

log_connection::log_connection(bundle_type b, pole_config t, conn_mat om, spectral_data sp,
                               std::vector<parabolic> par, std::vector<scalar> qs)
    : bundle(b), poles(std::move(t)), apparent(std::move(qs)), omega(std::move(om)),
      spectral(std::move(sp)), parabolics(std::move(par)) {
    if (spectral.n() != poles.n()) throw config_error("spectral data size != pole count");
    if (parabolics.size() != static_cast<size_t>(poles.n()))
        throw config_error("parabolic count != pole count");
    for (const auto &q : apparent)
        if (poles.index_of(q) >= 0) throw config_error("apparent pole collides with t_i");
}

log_connection::~log_connection() = default;
log_connection::log_connection(const log_connection &) = default;
log_connection &log_connection::operator=(const log_connection &) = default;
log_connection::log_connection(log_connection &&) noexcept = default;
log_connection &log_connection::operator=(log_connection &&) noexcept = default;

std::vector<scalar> log_connection::all_poles() const {
    std::vector<scalar> s = poles.t();
    s.insert(s.end(), apparent.begin(), apparent.end());
    return s;
}

std::array<poly, 4> log_connection::numerator_matrix() const {
    auto s = all_poles();
    return {omega.at(0, 0).numerator_over(s), omega.at(0, 1).numerator_over(s),
            omega.at(1, 0).numerator_over(s), omega.at(1, 1).numerator_over(s)};
}

parabolic log_connection::apparent_kernel(int j) const {
    const scalar &q = apparent[static_cast<size_t>(j)];
    matrix2 r = omega.residue_at(q);
    if (r.is_zero()) throw degenerate_error("zero residue at apparent pole");
    // kernel of the residue (eigenvalue 0 direction)
    if (!r.b().is_zero() || !r.a().is_zero()) return parabolic(r.b(), -r.a());
    return parabolic(-r.d(), r.c());
}

void log_connection::validate() const {
    // Fuchs relation over the full polar divisor (true and apparent poles)
    scalar degree = tag() == backend::exact ? scalar::exact_int(bundle.degree())
                                            : scalar::floating(bundle.degree());
    scalar fuchs = spectral.trace_sum() + degree;
    for (const auto &q : apparent) fuchs = fuchs + trace(omega.residue_at(q));
    bool ok = tag() == backend::exact ? fuchs.is_zero() : fuchs.approx_zero();
    if (!ok) throw inconsistency_error("Fuchs relation violated");
    for (int i = 0; i < n(); ++i) {
        matrix2 r = omega.residue_at(poles.t(i));
        scalar tr = trace(r), dt = det(r);
        scalar wtr = spectral.plus(i) + spectral.minus(i);
        scalar wdt = spectral.plus(i) * spectral.minus(i);
        bool okt = tag() == backend::exact ? tr == wtr : tr.approx_equal(wtr);
        bool okd = tag() == backend::exact ? dt == wdt : dt.approx_equal(wdt);
        if (!okt || !okd)
            throw inconsistency_error("residue spectrum mismatch at t_" + std::to_string(i + 1));
        const parabolic &l = parabolics[static_cast<size_t>(i)];
        if (!r.is_scalar_matrix()) {
            // l_i must lie in the theta_i^+ eigenspace
            scalar w0 = r.a() * l.x + r.b() * l.y - spectral.plus(i) * l.x;
            scalar w1 = r.c() * l.x + r.d() * l.y - spectral.plus(i) * l.y;
            bool in_eig = tag() == backend::exact ? (w0.is_zero() && w1.is_zero())
                                                  : (w0.approx_zero() && w1.approx_zero());
            if (!in_eig)
                throw inconsistency_error("parabolic not in the theta^+ eigenspace at t_" +
                                          std::to_string(i + 1));
        }
    }
    auto rep = check_infinity(*this);
    if (!rep.pass) throw bounds_error("connection violates infinity bounds: " + rep.violations[0]);
}

infinity_report check_infinity(const log_connection &conn) {
    infinity_report rep;
    auto note = [&](const std::string &v) {
        rep.pass = false;
        rep.violations.push_back(v);
    };
    auto a = conn.numerator_matrix();
    int m = static_cast<int>(conn.all_poles().size());
    int d1 = conn.bundle.d1, d2 = conn.bundle.d2, gap = conn.bundle.gap();
    backend tag = conn.tag();

    double scale = 1.0;
    if (tag == backend::floating)
        for (const auto &p : a)
            for (const auto &c : p.coeffs()) scale = std::max(scale, c.abs());
    auto coeff_zero = [&](const scalar &c) {
        return tag == backend::exact ? c.is_zero() : c.abs() <= float_tolerance() * scale;
    };
    auto check_deg = [&](const poly &p, int bound, const std::string &name) {
        if (!p.degree()) return;
        for (int k = bound + 1; k <= *p.degree(); ++k)
            if (!coeff_zero(p.coeff(k))) {
                note(name + " degree exceeds " + std::to_string(bound));
                return;
            }
    };
    auto check_lead = [&](const poly &p, int d, const std::string &name) {
        check_deg(p, m - 1, name);
        scalar want = tag == backend::exact ? scalar::exact_int(-d) : scalar::floating(-d);
        scalar got = p.coeff(m - 1);
        bool ok = tag == backend::exact ? got == want
                                        : (got - want).abs() <= float_tolerance() * scale;
        if (!ok) note(name + " leading coefficient != " + std::to_string(-d));
    };
    check_lead(a[0], d1, "a(x)");
    check_lead(a[3], d2, "d(x)");
    check_deg(a[1], m - 2 - gap, "b(x)");
    check_deg(a[2], m - 2 + gap, "c(x)");
    return rep;
}

std::pair<scalar, scalar> residue_spectrum(const log_connection &conn, int i) {
    if (i < 0 || i >= conn.n()) throw config_error("pole index out of range");
    matrix2 r = conn.omega.residue_at(conn.poles.t(i));
    scalar tr = trace(r), dt = det(r);
    scalar tp = conn.spectral.plus(i), tm = conn.spectral.minus(i);
    if (conn.tag() == backend::exact) {
        if (tr == tp + tm && dt == tp * tm) return {tp, tm};
        throw inconsistency_error("residue spectrum mismatch at t_" + std::to_string(i + 1));
    }
    // floating: solve the characteristic polynomial, nearest-match to the data
    std::complex<double> trc = tr.to_complex(), dtc = dt.to_complex();
    std::complex<double> disc = std::sqrt(trc * trc - 4.0 * dtc);
    std::complex<double> l1 = (trc + disc) / 2.0, l2 = (trc - disc) / 2.0;
    auto tpc = tp.to_complex(), tmc = tm.to_complex();
    double direct = std::abs(l1 - tpc) + std::abs(l2 - tmc);
    double crossed = std::abs(l1 - tmc) + std::abs(l2 - tpc);
    double tol = float_tolerance() * std::max({1.0, std::abs(l1), std::abs(l2)});
    if (std::abs(direct - crossed) <= tol && std::abs(l1 - l2) > tol)
        throw inconsistency_error("ambiguous eigenvalue matching at t_" + std::to_string(i + 1));
    if (std::min(direct, crossed) > 4 * tol)
        throw inconsistency_error("residue spectrum mismatch at t_" + std::to_string(i + 1));
    if (direct <= crossed) return {scalar::floating(l1), scalar::floating(l2)};
    return {scalar::floating(l2), scalar::floating(l1)};
}

std::optional<parabolic> eigendirection(const log_connection &conn, int i, bool plus) {
    matrix2 r = conn.omega.residue_at(conn.poles.t(i));
    if (r.is_scalar_matrix()) return std::nullopt;
    scalar lambda = plus ? conn.spectral.plus(i) : conn.spectral.minus(i);
    // l = (b, lambda - a) or (lambda - d, c), whichever is nonzero
    scalar v0 = r.b(), v1 = lambda - r.a();
    if (v0.is_zero() && v1.is_zero()) {
        v0 = lambda - r.d();
        v1 = r.c();
    }
    return parabolic(v0, v1);
}

std::vector<scalar> poly_roots(const poly &p) {
    if (p.is_zero() || *p.degree() == 0) return {};
    int deg = *p.degree();
    backend tag = p.tag();
    // Durand-Kerner on the monic complex version.
    std::vector<std::complex<double>> c(static_cast<size_t>(deg) + 1);
    auto lead = p.leading().to_complex();
    for (int k = 0; k <= deg; ++k) c[static_cast<size_t>(k)] = p.coeff(k).to_complex() / lead;
    std::vector<std::complex<double>> z(static_cast<size_t>(deg));
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (auto &zi : z) {
        zi = w;
        w *= seed;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int k = deg; k >= 0; --k) v = v * x + c[static_cast<size_t>(k)];
        return v;
    };
    for (int iter = 0; iter < 200; ++iter) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> d = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) d *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            std::complex<double> step = eval(z[static_cast<size_t>(i)]) / d;
            z[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    std::vector<scalar> out;
    if (tag == backend::floating) {
        for (auto &zi : z) out.push_back(scalar::floating(zi));
        std::sort(out.begin(), out.end(), scalar_less);
        return out;
    }
    // sharpen to rationals by continued fractions and verify exactly
    auto rationalize = [](double v) -> std::optional<mpq_class> {
        double x = v;
        long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int k = 0; k < 32; ++k) {
            double fl = std::floor(x);
            if (std::abs(fl) > 1e15) return std::nullopt;
            long a = static_cast<long>(fl);
            long p2 = a * p1 + p0, q2 = a * q1 + q0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            if (q1 != 0 && std::abs(v - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-12)
                break;
            double frac = x - fl;
            if (frac < 1e-15) break;
            x = 1.0 / frac;
        }
        if (q1 == 0) return std::nullopt;
        mpq_class q(p1, q1);
        q.canonicalize();
        return q;
    };
    for (auto &zi : z) {
        auto re = rationalize(zi.real());
        auto im = rationalize(zi.imag());
        if (!re || !im) throw degenerate_error("polynomial root is not rational");
        scalar root = scalar::exact(*re, *im);
        if (!poly_eval(p, root).is_zero())
            throw degenerate_error("polynomial root failed exact verification");
        out.push_back(root);
    }
    std::sort(out.begin(), out.end(), scalar_less);
    return out;
}

std::vector<scalar> apparent_zeros(const log_connection &conn) {
    if (conn.bundle.gap() == 0) throw config_error("apparent_zeros needs d1 < d2");
    auto a = conn.numerator_matrix();
    const poly &b = a[1];
    if (b.is_zero()) throw reducible_error("b(x) vanishes identically: reducible connection");
    return poly_roots(b);
}

} // namespace mcon

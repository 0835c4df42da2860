#include <mcon/verify.hpp>

#include <mcon/sampling.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

namespace mcon {

namespace {

pole_config default_poles(backend tag = backend::exact) {
    if (tag == backend::exact)
        return pole_config({scalar::exact_int(0), scalar::exact_int(1), scalar::exact_int(3),
                            scalar::exact_int(7)});
    return pole_config({scalar::floating(0), scalar::floating(1), scalar::floating(3),
                        scalar::floating(7)});
}

pole_config default_poles_n(int n) {
    std::vector<scalar> t;
    static const long vals[] = {0, 1, 3, 7, -2, 5, -4, 11, -6};
    for (int i = 0; i < n; ++i) t.push_back(scalar::exact_int(vals[i]));
    return pole_config(t);
}

struct checker {
    bool ok = true;
    std::ostringstream detail;
    int checked = 0;

    void fail(const std::string &msg) {
        if (ok) detail << msg;
        ok = false;
    }
    void expect(bool cond, const std::string &msg) {
        ++checked;
        if (!cond) fail(msg);
    }
};

// ------------------------------------------------------------ criterion 1

criterion_result cubic_membership(std::uint64_t seed) {
    criterion_result res{1, "calibration + cubic membership (1000 exact systems)", false, "", 0};
    checker c;
    cubic_convention conv = calibrate_invariants(static_cast<unsigned>(seed));
    c.expect(conv.sigma == -1 && conv.kappa == 1,
             "calibration found sigma=" + std::to_string(conv.sigma) +
                 ", kappa=" + std::to_string(conv.kappa));
    rng r(seed);
    pole_config poles = default_poles();
    for (int k = 0; k < 1000 && c.ok; ++k) {
        auto th = sample_sl2_theta(r, true);
        auto sys = sample_fuchsian_system(r, th, poles);
        auto [lin, cub] = cubic_residuals(invariants(sys, conv), th);
        c.expect(lin.is_zero() && cub.is_zero(), "nonzero residual at sample " + std::to_string(k));
    }
    res.pass = c.ok;
    res.detail = c.ok ? "1000/1000 exactly on the surface" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 2

criterion_result sl2_invariance(std::uint64_t seed) {
    criterion_result res{2, "SL2 invariance (100 systems x 10 conjugations)", false, "", 0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    for (int k = 0; k < 100 && c.ok; ++k) {
        auto th = sample_sl2_theta(r, true);
        auto sys = sample_fuchsian_system(r, th, poles);
        cubic_point base = invariants(sys);
        for (int j = 0; j < 10 && c.ok; ++j) {
            matrix2 m = sample_sl2_matrix(r);
            matrix2 mi = m.inverse();
            std::array<matrix2, 4> conj;
            for (int i = 0; i < 4; ++i) conj[static_cast<size_t>(i)] = mi * sys.residues[static_cast<size_t>(i)] * m;
            fuchsian_system moved(poles, conj, th);
            c.expect(invariants(moved) == base, "conjugation changed the invariants");
        }
    }
    res.pass = c.ok;
    res.detail = c.ok ? "1000/1000 conjugations invariant" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 3

criterion_result reconstruction(std::uint64_t seed) {
    criterion_result res{3, "reconstruction with explicit conjugator (500 systems)", false, "", 0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    int witnessed = 0, certified = 0;
    for (int k = 0; k < 500; ++k) {
        auto th = sample_sl2_theta(r, true);
        auto sys = sample_fuchsian_system(r, th, poles);
        cubic_point p = invariants(sys);
        bool good = false;
        try {
            fuchsian_system rec = reconstruct(p, th, poles);
            good = conjugacy_witness(sys, rec).has_value();
        } catch (const triangular_locus_error &) {
            good = false;
        } catch (const degenerate_error &) {
            good = false;
        }
        if (good) {
            ++witnessed;
        } else {
            bool cert = is_reducible(sys).k != reducibility::kind::irreducible ||
                        singular_locus_flags(th).any();
            if (cert) ++certified;
            c.expect(cert, "unexplained reconstruction failure at sample " + std::to_string(k));
        }
    }
    c.expect(witnessed >= 495, "only " + std::to_string(witnessed) + "/500 admitted a conjugator");
    res.pass = c.ok;
    res.detail = c.ok ? std::to_string(witnessed) + "/500 conjugators, " + std::to_string(certified) +
                            " certified degenerate"
                      : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 4

criterion_result non_hausdorff_witness(std::uint64_t seed) {
    criterion_result res{4, "triangular system and its diagonal part share a cubic point", false, "",
                         0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    for (int k = 0; k < 25 && c.ok; ++k) {
        std::vector<scalar> th{r.rational(), r.rational(), r.rational(), scalar::exact_int(0)};
        th[3] = -(th[0] + th[1] + th[2]); // sum(theta) = 0
        std::vector<scalar> b{r.rational(), r.rational(), r.rational(), scalar::exact_int(0)};
        b[3] = -(b[0] + b[1] + b[2]);
        std::array<matrix2, 4> tri, diag;
        for (int i = 0; i < 4; ++i) {
            tri[static_cast<size_t>(i)] =
                matrix2(th[static_cast<size_t>(i)], b[static_cast<size_t>(i)], scalar::exact_int(0),
                        -th[static_cast<size_t>(i)]);
            diag[static_cast<size_t>(i)] = matrix2::diag(th[static_cast<size_t>(i)], -th[static_cast<size_t>(i)]);
        }
        fuchsian_system a(poles, tri, th), d(poles, diag, th);
        c.expect(invariants(a) == invariants(d), "triangular and diagonal invariants differ");
    }
    res.pass = c.ok;
    res.detail = c.ok ? "25/25 pairs map to one point" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 5

criterion_result elm_algebra(std::uint64_t seed) {
    criterion_result res{5, "Elm algebra (plus o minus = id, minus^2 = twist; spectral updates)",
                         false, "", 0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    std::vector<bundle_type> shapes{bundle_type(0, 0), bundle_type(0, 1), bundle_type(-1, 1),
                                    bundle_type(0, 2)};
    for (const auto &shape : shapes) {
        for (int k = 0; k < 100 && c.ok; ++k) {
            log_connection conn = sample_connection(r, shape, poles);
            int i = static_cast<int>(r.int_in(0, 3));
            log_connection down = elm_minus(conn, i);
            // Eq. ElmIsom spectral update
            c.expect(down.spectral.plus(i) == conn.spectral.minus(i) + scalar::exact_int(1) &&
                         down.spectral.minus(i) == conn.spectral.plus(i),
                     "elm_minus spectral update wrong");
            c.expect(down.bundle.degree() == conn.bundle.degree() - 1, "elm_minus degree wrong");
            log_connection back = elm_plus(down, i);
            c.expect(back.spectral == conn.spectral, "elm_plus did not restore the spectrum");
            c.expect(back.bundle == conn.bundle, "elm_plus did not restore the bundle");
            c.expect(gauge_equivalent(back, conn).has_value(),
                     "elm_plus o elm_minus is not the identity modulo automorphism");
            log_connection twice = elm_minus(down, i);
            std::vector<scalar> lam(4, scalar::exact_int(0));
            lam[static_cast<size_t>(i)] = scalar::exact_int(1);
            log_connection tw = twist(conn, -1, lam);
            c.expect(twice.spectral == tw.spectral, "elm_minus^2 spectral != twist spectral");
            c.expect(twice.bundle == tw.bundle, "elm_minus^2 bundle != twist bundle");
            c.expect(gauge_equivalent(twice, tw).has_value(),
                     "elm_minus^2 is not the twist with residue +1");
        }
    }
    res.pass = c.ok;
    res.detail = c.ok ? "400 connections across 4 bundle shapes" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 6

criterion_result chart_roundtrips(std::uint64_t seed) {
    criterion_result res{6, "chart roundtrips to_pq o from_pq and from_pq o to_pq (200 each)",
                         false, "", 0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    for (int k = 0; k < 200 && c.ok; ++k) {
        spectral_data sp = sample_chart_spectral(r, 4);
        pq_point pt = sample_interior_pq(r, poles);
        log_connection conn = from_pq(pt, sp, poles);
        pq_point back = to_pq(conn);
        c.expect(back == pt, "to_pq(from_pq(pt)) != pt");
        log_connection scrambled = scramble(r, conn);
        pq_point pt2 = to_pq(scrambled);
        c.expect(pt2 == pt, "chart coordinates are not gauge invariant");
        log_connection rebuilt = from_pq(pt2, sp, poles);
        c.expect(big_normal_form(rebuilt).omega == big_normal_form(scrambled).omega,
                 "from_pq(to_pq(conn)) has a different normal form");
    }
    res.pass = c.ok;
    res.detail = c.ok ? "200/200 exact roundtrips (both directions)" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 7

criterion_result apparent_contract(std::uint64_t seed) {
    criterion_result res{7, "apparent-singularity contract (zero obstructions; perturbations fail)",
                         false, "", 0};
    checker c;
    rng r(seed);
    scalar one = scalar::exact_int(1);
    for (int n = 4; n <= 6 && c.ok; ++n) {
        pole_config poles = default_poles_n(n);
        for (int k = 0; k < 40 && c.ok; ++k) {
            spectral_data sp = sample_chart_spectral(r, n);
            garnier_point pt = sample_garnier_point(r, poles);
            log_connection nf = garnier_normal_form(pt, sp, poles);
            for (const auto &q : nf.apparent)
                c.expect(resonance_obstruction(nf, q, 1).is_zero(),
                         "nonzero obstruction on a normal form");
            // perturb one coefficient of c(x) by 1
            poly cpoly = nf.omega.at(1, 0).polynomial_part();
            std::vector<scalar> coeffs(static_cast<size_t>(n - 3), scalar::exact_int(0));
            for (int d = 0; d < n - 3; ++d) coeffs[static_cast<size_t>(d)] = cpoly.coeff(d);
            int slot = static_cast<int>(r.int_in(0, n - 4 >= 0 ? n - 4 : 0));
            coeffs[static_cast<size_t>(slot)] = coeffs[static_cast<size_t>(slot)] + one;
            conn_mat bad = apparent_family_matrix(sp, poles, pt.pairs, poly(backend::exact, coeffs));
            bool some_nonzero = false;
            for (const auto &[q, p] : pt.pairs)
                some_nonzero = some_nonzero || !resonance_obstruction(bad, q, 1).is_zero();
            c.expect(some_nonzero, "perturbed c(x) left every obstruction zero");
        }
    }
    res.pass = c.ok;
    res.detail = c.ok ? "n in {4,5,6}: all obstructions zero, all perturbations detected"
                      : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 8

criterion_result garnier_coherence(std::uint64_t seed) {
    criterion_result res{8, "garnier/painleve coherence and n in {5,6,7} roundtrips", false, "", 0};
    checker c;
    rng r(seed);
    // n = 4: the Garnier solve must reproduce the painleve c0 exactly
    pole_config p4 = default_poles();
    for (int k = 0; k < 50 && c.ok; ++k) {
        spectral_data sp = sample_chart_spectral(r, 4);
        pq_point pt = sample_interior_pq(r, p4);
        log_connection painleve_nf = chart_normal_form(pt, sp, p4);
        garnier_point gp({{pt.q, pt.p}});
        log_connection garnier_nf = garnier_normal_form(gp, sp, p4);
        c.expect(painleve_nf.omega == garnier_nf.omega,
                 "n=4 Garnier normal form differs from the painleve one");
    }
    for (int n = 5; n <= 7 && c.ok; ++n) {
        pole_config poles = default_poles_n(n);
        for (int k = 0; k < 200 && c.ok; ++k) {
            spectral_data sp = sample_chart_spectral(r, n);
            garnier_point pt = sample_garnier_point(r, poles);
            log_connection nf = garnier_normal_form(pt, sp, poles); // solves the square system
            log_connection cur = nf;
            std::vector<scalar> qs = nf.apparent;
            for (const auto &q : qs) cur = elm_minus_apparent(cur, q);
            cur = renormalize_to_birkhoff(cur, bundle_type(0, 1));
            garnier_point back = garnier_coordinates(cur);
            c.expect(back == pt, "garnier roundtrip failed at n=" + std::to_string(n));
        }
    }
    res.pass = c.ok;
    res.detail = c.ok ? "n=4 c0 agreement (50), 600 exact roundtrips for n in {5,6,7}"
                      : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 9

criterion_result bridge(std::uint64_t seed) {
    criterion_result res{9, "Elm_{t4}^- bridge onto the cubic surface (200 points + E4^- routing)",
                         false, "", 0};
    checker c;
    rng r(seed);
    pole_config poles = default_poles();
    std::vector<cubic_point> images;
    for (int k = 0; k < 200 && c.ok; ++k) {
        spectral_data sp = sample_bridge_spectral(r);
        pq_point pt = sample_interior_pq(r, poles);
        bridge_result br = link_to_fuchsian(pt, sp, poles);
        c.expect(!br.on_f2_line, "interior point routed to the F2 line");
        if (!c.ok) break;
        auto [lin, cub] = cubic_residuals(br.point, bridge_theta(sp));
        c.expect(lin.is_zero() && cub.is_zero(), "bridge image off the cubic surface");
        images.push_back(br.point);
    }
    // sampled injectivity for a fixed spectral datum
    {
        rng r2(seed + 1);
        spectral_data sp = sample_bridge_spectral(r2);
        std::vector<cubic_point> pts;
        for (int k = 0; k < 200; ++k)
            pts.push_back(link_to_fuchsian(sample_interior_pq(r2, poles), sp, poles).point);
        for (size_t i = 0; i < pts.size() && c.ok; ++i)
            for (size_t j = i + 1; j < pts.size() && c.ok; ++j)
                c.expect(!(pts[i] == pts[j]), "two distinct chart points collided on the cubic");
    }
    // E4^- routing: connections with l4 in O(1) land on the F2 line with a
    // recoverable c0
    {
        rng r3(seed + 2);
        for (int k = 0; k < 25 && c.ok; ++k) {
            spectral_data sp = sample_bridge_spectral(r3);
            scalar c0 = r3.rational();
            log_connection conn = exceptional_connection(3, c0, sp, poles);
            pq_point pt = to_pq(conn);
            c.expect(pt.k == pq_point::kind::exceptional && pt.pole_index == 3 && !pt.sign_plus,
                     "E4^- connection not classified as exceptional(4,-)");
            if (!c.ok) break;
            c.expect(pt.fiber == c0, "E4^- c0 readout mismatch");
            bridge_result br = link_to_fuchsian(pt, sp, poles);
            c.expect(br.on_f2_line && br.c0 == c0, "bridge did not route E4^- to the F2 line");
        }
    }
    res.pass = c.ok;
    res.detail = c.ok ? "200 surface points (exact), no collisions, 25 E4^- routings" : c.detail.str();
    return res;
}

// ------------------------------------------------------------ criterion 10

std::vector<probe_sample> probe_grid() {
    pole_config poles = default_poles(backend::floating);
    std::vector<scalar> plus{scalar::floating(0.31), scalar::floating(0.27),
                             scalar::floating(0.22), scalar::floating(-0.39)};
    std::vector<scalar> minus{scalar::floating(-0.31), scalar::floating(-0.27),
                              scalar::floating(-0.22), scalar::floating(0.39 - 1.0)};
    spectral_data sp(plus, minus);

    auto chart_x = [&](double q, double p) {
        pq_point pt = pq_point::interior(scalar::floating(q), scalar::floating(p));
        bridge_result br = link_to_fuchsian(pt, sp, poles);
        if (br.on_f2_line) throw degenerate_error("grid point routed to the F2 line");
        return br.point;
    };
    // Local coordinates (X1, X2) on the surface.  The surface's area form is
    // prod(q - t_i)/Y dX1 ^ dX2 in these coordinates (the bare coordinate
    // Jacobian of the transition is exactly Y/prod(q - t_i)), so the
    // area-form-normalized Jacobian
    //     det d(X1,X2)/d(q,p) * prod(q - t_i) / Y
    // is the quantity the symplectomorphism makes constant.
    auto jac = [&](double q, double p, double h) {
        cubic_point qp = chart_x(q + h, p), qm = chart_x(q - h, p);
        cubic_point pp = chart_x(q, p + h), pm = chart_x(q, p - h);
        double dx1dq = (qp.x1.to_complex().real() - qm.x1.to_complex().real()) / (2 * h);
        double dx2dq = (qp.x2.to_complex().real() - qm.x2.to_complex().real()) / (2 * h);
        double dx1dp = (pp.x1.to_complex().real() - pm.x1.to_complex().real()) / (2 * h);
        double dx2dp = (pp.x2.to_complex().real() - pm.x2.to_complex().real()) / (2 * h);
        return dx1dq * dx2dp - dx1dp * dx2dq;
    };
    double q0 = 4.2, p0 = 0.8, dq = 0.023, dp = 0.019, h = 1e-3;
    std::vector<probe_sample> out;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            double q = q0 + dq * i, p = p0 + dp * j;
            double d_h = jac(q, p, h), d_h2 = jac(q, p, h / 2);
            double richardson = (4 * d_h2 - d_h) / 3;
            cubic_point at = chart_x(q, p);
            double y = at.y.to_complex().real();
            if (std::abs(y) < 1e-8) throw degenerate_error("Y vanished on the grid");
            double prod = 1.0;
            for (const auto &ti : poles.t()) prod *= q - ti.to_complex().real();
            out.push_back({q, p, richardson * prod / y});
        }
    return out;
}

criterion_result symplectic_probe(std::uint64_t) {
    criterion_result res{10, "symplectic constancy probe (floating, 10x10 grid, rel 1e-6)", false,
                         "", 0};
    checker c;
    std::vector<probe_sample> values;
    try {
        values = probe_grid();
    } catch (const error &e) {
        c.fail(e.what());
    }
    if (c.ok) {
        double mean = 0;
        for (const auto &v : values) mean += v.value;
        mean /= static_cast<double>(values.size());
        double worst = 0;
        for (const auto &v : values) worst = std::max(worst, std::abs(v.value - mean) / std::abs(mean));
        c.expect(worst <= 1e-6, "relative spread " + std::to_string(worst) + " exceeds 1e-6");
        if (c.ok) {
            std::ostringstream os;
            os << "area-normalized Jacobian constant at " << mean << "; relative spread " << worst;
            res.detail = os.str();
        }
    }
    res.pass = c.ok;
    if (!c.ok) res.detail = c.detail.str();
    return res;
}

} // namespace

std::vector<probe_sample> symplectic_probe_samples() { return probe_grid(); }

criterion_result run_criterion(int id, std::uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    criterion_result res;
    switch (id) {
    case 1: res = cubic_membership(seed); break;
    case 2: res = sl2_invariance(seed); break;
    case 3: res = reconstruction(seed); break;
    case 4: res = non_hausdorff_witness(seed); break;
    case 5: res = elm_algebra(seed); break;
    case 6: res = chart_roundtrips(seed); break;
    case 7: res = apparent_contract(seed); break;
    case 8: res = garnier_coherence(seed); break;
    case 9: res = bridge(seed); break;
    case 10: res = symplectic_probe(seed); break;
    default: throw config_error("criterion id out of range");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<int> suite_criteria(const std::string &suite) {
    if (suite == "cubic") return {1, 2, 3, 4};
    if (suite == "gauge" || suite == "elm") return {5};
    if (suite == "chart") return {6, 7, 9, 10};
    if (suite == "garnier") return {7, 8};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw config_error("unknown suite: " + suite);
}

std::vector<criterion_result> run_suite(const std::string &suite, std::uint64_t seed) {
    std::vector<criterion_result> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, seed));
    return out;
}

} // namespace mcon

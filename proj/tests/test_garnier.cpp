#include <doctest.h>

#include <mcon/garnier.hpp>
#include <mcon/painleve.hpp>
#include <mcon/sampling.hpp>

using namespace mcon;

namespace {
scalar qi(long n, long d = 1) { return scalar::exact_ratio(n, d); }

pole_config poles_n(int n) {
    static const long vals[] = {0, 1, 3, 7, -2, 5, -4};
    std::vector<scalar> t;
    for (int i = 0; i < n; ++i) t.push_back(scalar::exact_int(vals[i]));
    return pole_config(t);
}
} // namespace

TEST_CASE("n = 4 garnier normal form is the painleve one") {
    rng r(3);
    pole_config poles = poles_n(4);
    for (int k = 0; k < 10; ++k) {
        spectral_data sp = sample_chart_spectral(r, 4);
        pq_point pt = sample_interior_pq(r, poles);
        log_connection a = chart_normal_form(pt, sp, poles);
        log_connection b = garnier_normal_form(garnier_point({{pt.q, pt.p}}), sp, poles);
        CHECK(a.omega == b.omega);
        garnier_point coords = garnier_coordinates(from_pq(pt, sp, poles));
        REQUIRE(coords.count() == 1);
        CHECK(coords.pairs[0].first == pt.q);
        CHECK(coords.pairs[0].second == pt.p);
    }
}

TEST_CASE("n = 5: 2x2 exact solve, obstructions vanish, roundtrip") {
    rng r(5);
    pole_config poles = poles_n(5);
    for (int k = 0; k < 25; ++k) {
        spectral_data sp = sample_chart_spectral(r, 5);
        garnier_point pt = sample_garnier_point(r, poles);
        log_connection nf = garnier_normal_form(pt, sp, poles);
        auto cdeg = nf.omega.at(1, 0).polynomial_part().degree();
        CHECK((cdeg && *cdeg <= 1));
        for (const auto &q : nf.apparent) {
            CHECK(resonance_obstruction(nf, q, 1).is_zero());
            matrix2 rm = nf.omega.residue_at(q);
            CHECK(rm.a().is_zero());
            CHECK(rm.b().is_zero());
            CHECK(rm.d() == qi(-1));
        }
        log_connection cur = nf;
        for (const auto &q : nf.apparent) cur = elm_minus_apparent(cur, q);
        cur = renormalize_to_birkhoff(cur, bundle_type(0, 1));
        CHECK(garnier_coordinates(cur) == pt);
    }
}

TEST_CASE("n = 6: three zeros of b match the construction inputs") {
    rng r(7);
    pole_config poles = poles_n(6);
    spectral_data sp = sample_chart_spectral(r, 6);
    garnier_point pt = sample_garnier_point(r, poles);
    log_connection nf = garnier_normal_form(pt, sp, poles);
    log_connection cur = nf;
    for (const auto &q : nf.apparent) cur = elm_minus_apparent(cur, q);
    cur = renormalize_to_birkhoff(cur, bundle_type(0, 1));
    auto zeros = apparent_zeros(cur);
    REQUIRE(zeros.size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(zeros[static_cast<size_t>(j)] == pt.pairs[static_cast<size_t>(j)].first);
}

TEST_CASE("normal form is gauge independent (uniqueness)") {
    rng r(11);
    pole_config poles = poles_n(5);
    spectral_data sp = sample_chart_spectral(r, 5);
    garnier_point pt = sample_garnier_point(r, poles);
    log_connection nf = garnier_normal_form(pt, sp, poles);
    log_connection cur = nf;
    for (const auto &q : nf.apparent) cur = elm_minus_apparent(cur, q);
    cur = renormalize_to_birkhoff(cur, bundle_type(0, 1));
    log_connection s1 = scramble(r, cur), s2 = scramble(r, cur);
    CHECK(big_normal_form(s1).omega == big_normal_form(s2).omega);
    CHECK(big_normal_form(s1).omega == nf.omega);
}

TEST_CASE("diagonal locus is refused") {
    pole_config poles = poles_n(5);
    CHECK_THROWS_AS(garnier_point({{qi(2), qi(1)}, {qi(2), qi(3)}}), degenerate_error);

    rng r(13);
    spectral_data sp = sample_chart_spectral(r, 5);
    CHECK_THROWS_AS(garnier_normal_form(garnier_point({{poles.t(0), qi(1)}, {qi(9), qi(2)}}), sp,
                                        poles),
                    degenerate_error);
}

TEST_CASE("a double zero of b(x) is rejected") {
    // interpolation construction of a (0,1) connection with b = (x - 2)^2
    pole_config poles = poles_n(5);
    backend tag = backend::exact;
    rng r(17);
    spectral_data sp = sample_chart_spectral(r, 5);
    poly b = poly::linear_monic(qi(2)) * poly::linear_monic(qi(2));
    poly a(tag); // a = 0
    int n = 5;
    std::vector<scalar> dvals, cvals;
    for (int i = 0; i < n; ++i) {
        scalar ti = poles.t(i);
        scalar tpow = qi(1);
        for (int e = 0; e < n - 1; ++e) tpow = tpow * ti;
        scalar d_t = (sp.plus(i) + sp.minus(i)) * poles.tau(i) + tpow;
        dvals.push_back(d_t);
        cvals.push_back((qi(0) - sp.plus(i) * sp.minus(i) * poles.tau(i) * poles.tau(i) +
                         qi(0) * d_t) /
                        poly_eval(b, ti));
    }
    auto interp = [&](const std::vector<scalar> &vals) {
        poly out(tag);
        for (int i = 0; i < n; ++i) {
            poly li = poly::constant(vals[static_cast<size_t>(i)] / poles.tau(i));
            for (int j = 0; j < n; ++j)
                if (j != i) li = li * poly::linear_monic(poles.t(j));
            out = out + li;
        }
        return out;
    };
    poly dt = interp(dvals), ct = interp(cvals);
    std::vector<scalar> xn(static_cast<size_t>(n), qi(0));
    xn[static_cast<size_t>(n - 1)] = qi(1);
    poly xpow(tag, xn);
    conn_mat omega(tag);
    std::array<poly, 4> nums{a, b, ct, -xpow + dt};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto pf = partial_fractions(nums[static_cast<size_t>(2 * i + j)], poles);
            ratfun f(pf.polynomial_part);
            for (int kk = 0; kk < n; ++kk)
                f = f + ratfun::simple_pole(poles.t(kk), pf.residues[static_cast<size_t>(kk)]);
            omega.set(i, j, f);
        }
    std::vector<parabolic> pars;
    for (int i = 0; i < n; ++i) {
        matrix2 rm = omega.residue_at(poles.t(i));
        scalar v0 = rm.b(), v1 = sp.plus(i) - rm.a();
        if (v0.is_zero() && v1.is_zero()) {
            v0 = sp.plus(i) - rm.d();
            v1 = rm.c();
        }
        pars.emplace_back(v0, v1);
    }
    log_connection conn(bundle_type(0, 1), poles, omega, sp, pars);
    conn.validate();
    CHECK_THROWS_AS(garnier_coordinates(conn), degenerate_error);
}

TEST_CASE("genericity warnings are informational") {
    std::vector<scalar> plus{qi(1), qi(1, 2), qi(1, 3), qi(1, 5), qi(0)};
    std::vector<scalar> minus{qi(0), qi(-1, 2), qi(-1, 3), qi(-1, 5), qi(-2)};
    spectral_data sp(plus, minus); // theta_1 difference is the integer 1
    auto w = garnier_genericity_warnings(sp);
    CHECK(!w.empty());
}

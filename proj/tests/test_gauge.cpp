#include <doctest.h>

#include <mcon/painleve.hpp>
#include <mcon/sampling.hpp>

using namespace mcon;

namespace {
scalar qi(long n, long d = 1) { return scalar::exact_ratio(n, d); }
pole_config std_poles() { return pole_config({qi(0), qi(1), qi(3), qi(7)}); }
} // namespace

TEST_CASE("constant gauge: identity, invariance, filtration") {
    rng r(3);
    pole_config poles = std_poles();
    auto th = sample_sl2_theta(r, true);
    log_connection conn = connection_from_fuchsian(sample_fuchsian_system(r, th, poles));

    log_connection same = apply_constant(conn, matrix2::identity(backend::exact));
    CHECK(same.omega == conn.omega);

    matrix2 m = sample_sl2_matrix(r);
    log_connection moved = apply_constant(conn, m);
    CHECK(invariants(fuchsian_from_connection(moved)) ==
          invariants(fuchsian_from_connection(conn)));

    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection c01 = from_pq(sample_interior_pq(r, poles), sp, poles);
    matrix2 upper(qi(1), qi(1), qi(0), qi(1));
    CHECK_THROWS_AS(apply_constant(c01, upper), gauge_error);
}

TEST_CASE("unipotent gauge: identity, degree bound, F2 diagonal clearing, inverse") {
    rng r(5);
    pole_config poles = std_poles();
    std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.rational()};
    log_connection f2 = f2_line(r.rational(), th, poles);

    log_connection same =
        apply_unipotent(f2, qi(1), qi(1), poly(backend::exact));
    CHECK(same.omega == f2.omega);

    poly too_big(backend::exact, {qi(0), qi(0), qi(0), qi(1)});
    CHECK_THROWS_AS(apply_unipotent(f2, qi(1), qi(1), too_big), gauge_error);

    // push the normal form away and clear the diagonal again with f = -a
    poly f(backend::exact, {r.rational(), r.rational(), r.rational()});
    log_connection moved = apply_unipotent(f2, qi(1), qi(1), f);
    auto num = moved.numerator_matrix();
    poly x3(backend::exact, {qi(0), qi(0), qi(0), qi(1)});
    CHECK(num[0] == x3 + f); // a(x) picked up exactly f (b = 1)
    auto [g, rem] = (num[0] - x3).divmod(num[1]);
    CHECK(rem.is_zero());
    log_connection back = apply_unipotent(moved, qi(1), qi(1), -g);
    CHECK(back.omega == f2.omega);

    // group inverse of a general move
    scalar l1 = r.nonzero(), l2 = r.nonzero();
    log_connection there = apply_unipotent(f2, l1, l2, f);
    // (l1 0; f l2)^{-1} = (1/l1 0; -f/(l1 l2) 1/l2)
    poly finv = f.scale(-(qi(1) / (l1 * l2)));
    log_connection roundtrip = apply_unipotent(there, qi(1) / l1, qi(1) / l2, finv);
    CHECK(roundtrip.omega == f2.omega);
}

TEST_CASE("twist: identity, sl2 normalization, inverse, balance") {
    rng r(7);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection conn = from_pq(sample_interior_pq(r, poles), sp, poles);

    log_connection same = twist(conn, 0, std::vector<scalar>(4, qi(0)));
    CHECK(same.omega == conn.omega);

    CHECK_THROWS_AS(twist(conn, 0, std::vector<scalar>(4, qi(1))), gauge_error);

    // after Elm^-_{t4} the degree is 0; the trace-killing twist needs
    // sum(lambda) + k = 0 with k = 0 and lambda_i = -(th+ + th-)/2
    log_connection even = elm_minus(conn, 3);
    std::vector<scalar> lam;
    scalar half = qi(1, 2);
    for (int i = 0; i < 4; ++i)
        lam.push_back(-(even.spectral.plus(i) + even.spectral.minus(i)) * half);
    scalar balance = qi(0);
    for (const auto &l : lam) balance = balance + l;
    REQUIRE(balance.is_zero());
    log_connection sl2 = twist(even, 0, lam);
    for (int i = 0; i < 4; ++i) CHECK(trace(sl2.omega.residue_at(poles.t(i))).is_zero());

    std::vector<scalar> neg;
    for (const auto &l : lam) neg.push_back(-l);
    log_connection undone = twist(sl2, 0, neg);
    CHECK(undone.omega == even.omega);
}

TEST_CASE("move log replays bit-for-bit") {
    rng r(11);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection base = from_pq(sample_interior_pq(r, poles), sp, poles);
    base.move_log.clear();

    log_connection conn = scramble(r, base);
    conn = elm_minus(conn, 2);
    conn = elm_plus(conn, 2);
    conn = twist(conn, -1, {qi(1), qi(0), qi(0), qi(0)});

    log_connection replayed = replay(base, conn.move_log);
    CHECK(replayed.omega == conn.omega);
    CHECK(replayed.spectral == conn.spectral);
    CHECK(replayed.bundle == conn.bundle);
    for (int i = 0; i < 4; ++i)
        CHECK(replayed.parabolics[static_cast<size_t>(i)] == conn.parabolics[static_cast<size_t>(i)]);
}

TEST_CASE("renormalize: identity on normalized input, error off target") {
    rng r(13);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection conn = from_pq(sample_interior_pq(r, poles), sp, poles);
    log_connection same = renormalize_to_birkhoff(conn, bundle_type(0, 1));
    CHECK(same.omega == conn.omega);
    CHECK_THROWS_AS(renormalize_to_birkhoff(conn, bundle_type(0, 3)), bounds_error);
}

TEST_CASE("gauge_equivalent finds witnesses and rejects different orbits") {
    rng r(17);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection conn = from_pq(sample_interior_pq(r, poles), sp, poles);
    log_connection moved = scramble(r, conn);
    auto w = gauge_equivalent(conn, moved);
    CHECK(w.has_value());

    std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.rational()};
    log_connection a = f2_line(qi(2), th, poles);
    log_connection b = f2_line(qi(3), th, poles);
    CHECK(!gauge_equivalent(a, b).has_value());
    CHECK(gauge_equivalent(scramble(r, a), a).has_value());
}

TEST_CASE("elm spectral updates and inverses across shapes") {
    rng r(19);
    pole_config poles = std_poles();
    for (bundle_type shape : {bundle_type(0, 0), bundle_type(0, 1), bundle_type(-1, 1),
                              bundle_type(0, 2)}) {
        log_connection conn = sample_connection(r, shape, poles);
        int i = static_cast<int>(r.int_in(0, 3));
        log_connection down = elm_minus(conn, i);
        CHECK(down.spectral.plus(i) == conn.spectral.minus(i) + qi(1));
        CHECK(down.spectral.minus(i) == conn.spectral.plus(i));
        CHECK(down.bundle.degree() == conn.bundle.degree() - 1);
        CHECK(check_infinity(down).pass);
        log_connection back = elm_plus(down, i);
        CHECK(back.spectral == conn.spectral);
        CHECK(gauge_equivalent(back, conn).has_value());
        log_connection twice = elm_minus(down, i);
        std::vector<scalar> lam(4, qi(0));
        lam[static_cast<size_t>(i)] = qi(1);
        log_connection tw = twist(conn, -1, lam);
        CHECK(gauge_equivalent(twice, tw).has_value());
    }
}

TEST_CASE("elm at an apparent point removes and recreates the pole") {
    rng r(23);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    pq_point pt = sample_interior_pq(r, poles);
    log_connection nf = chart_normal_form(pt, sp, poles); // (0,2) with pole at q
    CHECK(nf.apparent.size() == 1);
    log_connection down = elm_minus_apparent(nf, pt.q);
    CHECK(down.apparent.empty());
    CHECK(!down.omega.has_pole(pt.q));
    log_connection up = elm_plus_apparent(renormalize_to_birkhoff(down, bundle_type(0, 1)), pt.q);
    renorm_options opt;
    opt.monic_b = true;
    opt.clear_a = true;
    log_connection up_nf = renormalize_to_birkhoff(up, bundle_type(0, 2), opt);
    CHECK(up_nf.omega == nf.omega);
}

#include <doctest.h>

#include <mcon/json_io.hpp>
#include <mcon/sampling.hpp>

#include <nlohmann/json.hpp>

using namespace mcon;

namespace {
scalar qi(long n, long d = 1) { return scalar::exact_ratio(n, d); }
pole_config std_poles() { return pole_config({qi(0), qi(1), qi(3), qi(7)}); }
} // namespace

TEST_CASE("scalar JSON uses rational strings in the exact backend") {
    scalar s = scalar::exact(mpq_class("22/7"), mpq_class("-3/5"));
    json j = to_json(s);
    CHECK(j["re"] == "22/7");
    CHECK(j["im"] == "-3/5");
    CHECK(scalar_from_json(j, backend::exact) == s);

    scalar f = scalar::floating(0.5, -0.25);
    json jf = to_json(f);
    CHECK(scalar_from_json(jf, backend::floating) == f);
}

TEST_CASE("fuchsian system roundtrip") {
    rng r(3);
    auto th = sample_sl2_theta(r, true);
    auto sys = sample_fuchsian_system(r, th, std_poles());
    json j = to_json(sys);
    fuchsian_system back = fuchsian_from_json(j, backend::exact);
    back.validate();
    CHECK(invariants(back) == invariants(sys));
    for (int i = 0; i < 4; ++i)
        CHECK(back.residues[static_cast<size_t>(i)] == sys.residues[static_cast<size_t>(i)]);
}

TEST_CASE("cubic point roundtrip") {
    cubic_point p{qi(1), qi(-2, 3), qi(5), qi(7, 11)};
    json j = to_json(p);
    CHECK(cubic_point_from_json(j, backend::exact) == p);
}

TEST_CASE("connection roundtrip is lossless, including free parabolics") {
    rng r(5);
    pole_config poles = std_poles();

    SUBCASE("chart connection with an apparent pole") {
        spectral_data sp = sample_chart_spectral(r, 4);
        log_connection nf = chart_normal_form(sample_interior_pq(r, poles), sp, poles);
        log_connection back = connection_from_json(to_json(nf), backend::exact);
        CHECK(back.omega == nf.omega);
        CHECK(back.apparent == nf.apparent);
        CHECK(back.spectral == nf.spectral);
    }

    SUBCASE("free parabolic at a zero residue survives the roundtrip") {
        // theta_4 = 0 with A_4 = 0: the parabolic at t_4 is free data
        std::vector<scalar> th{qi(2), qi(-2), qi(0), qi(0)};
        std::array<matrix2, 4> a;
        a[0] = matrix2::diag(th[0], -th[0]);
        a[1] = matrix2::diag(th[1], -th[1]);
        a[2] = matrix2(backend::exact);
        a[3] = matrix2(backend::exact);
        fuchsian_system sys(poles, a, th);
        log_connection conn = connection_from_fuchsian(sys);
        conn.parabolics[3] = parabolic(qi(1), qi(9, 4));
        conn.parabolics[3].free_data = true;
        log_connection back = connection_from_json(to_json(conn), backend::exact);
        CHECK(back.parabolics[3].free_data);
        CHECK(back.parabolics[3].y == qi(9, 4));
    }

    SUBCASE("missing parabolics default to the theta+ eigendirections") {
        spectral_data sp = sample_chart_spectral(r, 4);
        log_connection conn = from_pq(sample_interior_pq(r, poles), sp, poles);
        json j = to_json(conn);
        j.erase("parabolics");
        log_connection back = connection_from_json(j, backend::exact);
        for (int i = 0; i < 4; ++i)
            CHECK(back.parabolics[static_cast<size_t>(i)].same_direction(
                conn.parabolics[static_cast<size_t>(i)]));
    }
}

TEST_CASE("pq points and garnier points roundtrip") {
    pq_point a = pq_point::interior(qi(5), qi(-7, 3));
    CHECK(pq_point_from_json(to_json(a), backend::exact) == a);

    pq_point b;
    b.k = pq_point::kind::exceptional;
    b.pole_index = 3;
    b.sign_plus = false;
    b.fiber = qi(11, 2);
    CHECK(pq_point_from_json(to_json(b), backend::exact) == b);

    garnier_point g({{qi(4), qi(1)}, {qi(-2), qi(3, 7)}});
    CHECK(garnier_point_from_json(to_json(g), backend::exact) == g);
}

TEST_CASE("move logs replay after a JSON roundtrip") {
    rng r(7);
    pole_config poles = std_poles();
    spectral_data sp = sample_chart_spectral(r, 4);
    log_connection base = from_pq(sample_interior_pq(r, poles), sp, poles);
    base.move_log.clear();
    log_connection moved = twist(elm_minus(scramble(r, base), 1), -1, {qi(0), qi(1), qi(0), qi(0)});
    auto log = move_log_from_json(to_json(moved.move_log), backend::exact);
    log_connection replayed = replay(base, log);
    CHECK(replayed.omega == moved.omega);
}

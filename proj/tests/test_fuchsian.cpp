#include <doctest.h>

#include <mcon/fuchsian.hpp>
#include <mcon/rng.hpp>

using namespace mcon;

namespace {
scalar qi(long n, long d = 1) { return scalar::exact_ratio(n, d); }

pole_config std_poles() { return pole_config({qi(0), qi(1), qi(3), qi(7)}); }
} // namespace

TEST_CASE("calibration pins sigma = -1, kappa = 1") {
    cubic_convention conv = calibrate_invariants(9, 12);
    CHECK(conv.sigma == -1);
    CHECK(conv.kappa == 1);
}

TEST_CASE("zero system maps to the origin and satisfies both relations") {
    std::array<matrix2, 4> a{matrix2(backend::exact), matrix2(backend::exact),
                             matrix2(backend::exact), matrix2(backend::exact)};
    std::vector<scalar> th(4, qi(0));
    fuchsian_system sys(std_poles(), a, th);
    cubic_point p = invariants(sys);
    CHECK(p.x1.is_zero());
    CHECK(p.y.is_zero());
    auto [lin, cub] = cubic_residuals(p, th);
    CHECK(lin.is_zero());
    CHECK(cub.is_zero());
}

TEST_CASE("diagonal family theta = (1,-1,0,0)") {
    std::vector<scalar> th{qi(1), qi(-1), qi(0), qi(0)};
    std::array<matrix2, 4> a;
    for (int i = 0; i < 4; ++i) a[static_cast<size_t>(i)] = matrix2::diag(th[static_cast<size_t>(i)], -th[static_cast<size_t>(i)]);
    fuchsian_system sys(std_poles(), a, th);
    cubic_point p = invariants(sys);
    CHECK(p.x1 == qi(1)); // (theta2 + theta3)^2
    CHECK(p.x2 == qi(1)); // (theta1 + theta3)^2
    CHECK(p.x3 == qi(0)); // (theta1 + theta2)^2
    CHECK(p.y.is_zero()); // commuting residues
    auto [lin, cub] = cubic_residuals(p, th);
    CHECK(lin.is_zero());
    CHECK(cub.is_zero());
}

TEST_CASE("random exact systems land on the surface") {
    rng r(31);
    pole_config poles = std_poles();
    for (int k = 0; k < 100; ++k) {
        std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
        auto sys = sample_fuchsian_system(r, th, poles);
        auto [lin, cub] = cubic_residuals(invariants(sys), th);
        CHECK(lin.is_zero());
        CHECK(cub.is_zero());
    }
}

TEST_CASE("cubic_residuals is linear in X1") {
    std::vector<scalar> th(4, qi(0));
    cubic_point origin{qi(0), qi(0), qi(0), qi(0)};
    auto [l0, c0] = cubic_residuals(origin, th);
    CHECK(l0.is_zero());
    CHECK(c0.is_zero());
    cubic_point shifted{qi(1), qi(0), qi(0), qi(0)};
    auto [l1, c1] = cubic_residuals(shifted, th);
    CHECK(l1 == qi(1));
}

TEST_CASE("normalize diagonalizes A4 and preserves invariants") {
    rng r(17);
    pole_config poles = std_poles();

    SUBCASE("already diagonal A4 gives the identity") {
        std::vector<scalar> th{qi(1, 2), qi(1, 3), qi(0), qi(2)};
        auto sys = sample_fuchsian_system(r, th, poles);
        auto [norm, m] = normalize(sys);
        auto [norm2, m2] = normalize(norm);
        CHECK(m2 == matrix2::identity(backend::exact));
        for (int i = 0; i < 4; ++i)
            CHECK(norm2.residues[static_cast<size_t>(i)] == norm.residues[static_cast<size_t>(i)]);
    }

    SUBCASE("antidiagonal A4 = (0 1; th^2 0)") {
        scalar th4 = qi(3);
        std::vector<scalar> th{qi(1), qi(2), qi(1, 5), th4};
        auto [base, m0] = normalize(sample_fuchsian_system(r, th, poles));
        // conjugate so A4 becomes (0 1; 9 0): its eigenvectors are (1; +-3)
        matrix2 c(qi(1), qi(1), qi(3), qi(-3));
        matrix2 m = c.inverse();
        matrix2 mi = m.inverse();
        std::array<matrix2, 4> a;
        for (int i = 0; i < 4; ++i) a[static_cast<size_t>(i)] = mi * base.residues[static_cast<size_t>(i)] * m;
        fuchsian_system sys(poles, a, th);
        CHECK(sys.residues[3] == matrix2(qi(0), qi(1), qi(9), qi(0)));
        auto [norm, w] = normalize(sys);
        CHECK(norm.residues[3] == matrix2::diag(th4, -th4));
        CHECK(det(w) == qi(1));
        CHECK(invariants(norm) == invariants(sys));
    }

    SUBCASE("theta4 = 0 is refused") {
        std::vector<scalar> th{qi(1), qi(2), qi(1, 5), qi(0)};
        auto sys = sample_fuchsian_system(r, th, poles);
        CHECK_THROWS_AS(normalize(sys), degenerate_error);
    }

    SUBCASE("invariance across random samples") {
        for (int k = 0; k < 25; ++k) {
            std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
            auto sys = sample_fuchsian_system(r, th, poles);
            auto [norm, m] = normalize(sys);
            CHECK(invariants(norm) == invariants(sys));
        }
    }
}

TEST_CASE("reconstruct is a section of the invariant map") {
    rng r(23);
    pole_config poles = std_poles();
    int witnessed = 0;
    for (int k = 0; k < 50; ++k) {
        std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
        auto sys = sample_fuchsian_system(r, th, poles);
        cubic_point p = invariants(sys);
        fuchsian_system rec = reconstruct(p, th, poles);
        CHECK(invariants(rec) == p);
        if (conjugacy_witness(sys, rec)) ++witnessed;
    }
    CHECK(witnessed >= 49);
}

TEST_CASE("triangular locus and off-surface errors") {
    pole_config poles = std_poles();
    std::vector<scalar> th{qi(1), qi(-1), qi(0), qi(0)};
    cubic_point p{qi(1), qi(1), qi(0), qi(0)};
    CHECK_THROWS_AS(reconstruct(p, th, poles), triangular_locus_error);

    std::vector<scalar> th2{qi(1), qi(2), qi(3), qi(4)};
    cubic_point off{qi(1), qi(0), qi(0), qi(0)};
    CHECK_THROWS_AS(reconstruct(off, th2, poles), inconsistency_error);
}

TEST_CASE("is_reducible") {
    pole_config poles = std_poles();
    rng r(41);

    SUBCASE("upper triangular systems keep (1;0)") {
        std::vector<scalar> th{qi(2), qi(1), qi(-1), qi(-2)};
        std::vector<scalar> b{qi(1), qi(2), qi(3), qi(-6)};
        std::array<matrix2, 4> a;
        for (int i = 0; i < 4; ++i)
            a[static_cast<size_t>(i)] = matrix2(th[static_cast<size_t>(i)], b[static_cast<size_t>(i)], qi(0),
                                                -th[static_cast<size_t>(i)]);
        fuchsian_system sys(poles, a, th);
        auto red = is_reducible(sys);
        CHECK(red.k == reducibility::kind::reducible);
        CHECK(red.v0 == qi(1));
        CHECK(red.v1.is_zero());
    }

    SUBCASE("zero system is totally degenerate") {
        std::array<matrix2, 4> a{matrix2(backend::exact), matrix2(backend::exact),
                                 matrix2(backend::exact), matrix2(backend::exact)};
        fuchsian_system sys(poles, a, std::vector<scalar>(4, qi(0)));
        CHECK(is_reducible(sys).k == reducibility::kind::totally_degenerate);
    }

    SUBCASE("generic samples are irreducible") {
        for (int k = 0; k < 20; ++k) {
            std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
            auto sys = sample_fuchsian_system(r, th, poles);
            CHECK(is_reducible(sys).k == reducibility::kind::irreducible);
        }
    }
}

TEST_CASE("singular locus flags") {
    auto f1 = singular_locus_flags({qi(1), qi(-1), qi(0), qi(0)});
    CHECK(f1.theta_zero[2]);
    CHECK(f1.theta_zero[3]);
    CHECK(!f1.zero_sums.empty());

    auto f2 = singular_locus_flags({qi(1, 2), qi(1, 3), qi(1, 5), qi(1, 7)});
    CHECK(!f2.any());

    auto f3 = singular_locus_flags({qi(1), qi(1), qi(1), qi(1)});
    CHECK(!f3.zero_sums.empty()); // e.g. (+,-,+,-)
}

TEST_CASE("conjugation invariance (property)") {
    rng r(53);
    pole_config poles = std_poles();
    for (int k = 0; k < 20; ++k) {
        std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
        auto sys = sample_fuchsian_system(r, th, poles);
        cubic_point base = invariants(sys);
        for (int j = 0; j < 5; ++j) {
            matrix2 m = matrix2::identity(backend::exact);
            for (int s = 0; s < 2; ++s) {
                scalar x = r.rational();
                m = m * (s == 0 ? matrix2(qi(1), x, qi(0), qi(1)) : matrix2(qi(1), qi(0), x, qi(1)));
            }
            matrix2 mi = m.inverse();
            std::array<matrix2, 4> conj;
            for (int i = 0; i < 4; ++i) conj[static_cast<size_t>(i)] = mi * sys.residues[static_cast<size_t>(i)] * m;
            CHECK(invariants(fuchsian_system(poles, conj, th)) == base);
        }
    }
}

TEST_CASE("triangular orbit collapses onto its diagonal part") {
    rng r(67);
    pole_config poles = std_poles();
    std::vector<scalar> th{r.rational(), r.rational(), r.rational(), qi(0)};
    th[3] = -(th[0] + th[1] + th[2]);
    std::vector<scalar> b{r.rational(), r.rational(), r.rational(), qi(0)};
    b[3] = -(b[0] + b[1] + b[2]);
    std::array<matrix2, 4> tri, diag;
    for (int i = 0; i < 4; ++i) {
        tri[static_cast<size_t>(i)] = matrix2(th[static_cast<size_t>(i)], b[static_cast<size_t>(i)], qi(0),
                                              -th[static_cast<size_t>(i)]);
        diag[static_cast<size_t>(i)] = matrix2::diag(th[static_cast<size_t>(i)], -th[static_cast<size_t>(i)]);
    }
    CHECK(invariants(fuchsian_system(poles, tri, th)) ==
          invariants(fuchsian_system(poles, diag, th)));
}

#include <doctest.h>

#include <mcon/pole_config.hpp>
#include <mcon/ratfun.hpp>
#include <mcon/rng.hpp>

using namespace mcon;

namespace {
scalar qi(long n, long d = 1) { return scalar::exact_ratio(n, d); }
} // namespace

TEST_CASE("exact scalar field operations stay closed") {
    scalar a = scalar::exact(mpq_class("2/3"), mpq_class("-1/7"));
    scalar b = scalar::exact(mpq_class("5/11"), mpq_class("4/9"));
    scalar c = (a + b) * (a - b) / b;
    CHECK(c.is_exact());
    CHECK((a / a) == qi(1));
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(a / scalar::exact_int(0), arithmetic_error);
}

TEST_CASE("mixed-backend operations are rejected") {
    CHECK_THROWS_AS(qi(1) + scalar::floating(1.0), backend_mismatch);
    CHECK_THROWS_AS(scalar_less(qi(0), scalar::floating(0.0)), backend_mismatch);
}

TEST_CASE("zero polynomial has the -infinity degree marker") {
    poly z(backend::exact);
    CHECK(!z.degree().has_value());
    poly p(backend::exact, {qi(1), qi(0), qi(0)});
    CHECK(p.degree() == 0); // normalization strips zero leading coefficients
    CHECK((p - p).degree() == std::nullopt);
}

TEST_CASE("poly_eval") {
    poly z(backend::exact);
    CHECK(poly_eval(z, qi(5)).is_zero());
    scalar q = qi(7, 3);
    CHECK(poly_eval(poly::linear_monic(q), q).is_zero());

    // random polynomial against the naive monomial-sum oracle
    rng r(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<scalar> cs;
        for (int k = 0; k <= 5; ++k) cs.push_back(r.rational());
        poly p(backend::exact, cs);
        scalar x0 = r.rational();
        scalar naive = scalar::exact_int(0), power = scalar::exact_int(1);
        for (int k = 0; k <= 5; ++k) {
            naive = naive + cs[static_cast<size_t>(k)] * power;
            power = power * x0;
        }
        CHECK(poly_eval(p, x0) == naive);
    }
}

TEST_CASE("partial fractions of 1 over the pole product") {
    pole_config poles({qi(0), qi(1), qi(2), qi(5)});
    auto pf = partial_fractions(poly::constant(qi(1)), poles);
    CHECK(pf.polynomial_part.is_zero());
    for (int i = 0; i < 4; ++i)
        CHECK(pf.residues[static_cast<size_t>(i)] == qi(1) / poles.tau(i));
}

TEST_CASE("partial fractions of the product itself cancels") {
    pole_config poles({qi(-1), qi(1, 2), qi(3), qi(7)});
    auto pf = partial_fractions(poles.product(), poles);
    CHECK(pf.polynomial_part == poly::constant(qi(1)));
    for (const auto &res : pf.residues) CHECK(res.is_zero());
}

TEST_CASE("partial fractions recombine exactly (x^5 example and random)") {
    pole_config poles({qi(0), qi(1), qi(2), qi(3)});
    rng r(7);
    for (int trial = 0; trial < 30; ++trial) {
        poly num(backend::exact);
        if (trial == 0) {
            num = poly(backend::exact, {qi(0), qi(0), qi(0), qi(0), qi(0), qi(1)}); // x^5
        } else {
            std::vector<scalar> cs;
            for (int k = 0; k <= 6; ++k) cs.push_back(r.rational());
            num = poly(backend::exact, cs);
        }
        auto pf = partial_fractions(num, poles);
        // recombine over the common denominator
        poly back = pf.polynomial_part * poles.product();
        for (int i = 0; i < 4; ++i) {
            poly term = poly::constant(pf.residues[static_cast<size_t>(i)]);
            for (int j = 0; j < 4; ++j)
                if (j != i) term = term * poly::linear_monic(poles.t(j));
            back = back + term;
        }
        CHECK(back == num);
    }
}

TEST_CASE("duplicate poles are a configuration error") {
    CHECK_THROWS_AS(pole_config({qi(1), qi(1)}), config_error);
}

TEST_CASE("partial-fraction identity for 1/prod holds as rational functions") {
    pole_config poles({qi(0), qi(2), qi(-3), qi(9, 2)});
    ratfun f(backend::exact);
    for (int i = 0; i < 4; ++i)
        f = f + ratfun::simple_pole(poles.t(i), qi(1) / poles.tau(i));
    // evaluate both sides at points off the poles
    rng r(3);
    for (int trial = 0; trial < 20; ++trial) {
        scalar x = r.rational();
        if (poles.index_of(x) >= 0) continue;
        CHECK(f.eval(x) == qi(1) / poly_eval(poles.product(), x));
    }
}

TEST_CASE("det and trace identities on 1000 random pairs") {
    rng r(2026);
    for (int trial = 0; trial < 1000; ++trial) {
        matrix2 a(r.rational(), r.rational(), r.rational(), r.rational());
        matrix2 b(r.rational(), r.rational(), r.rational(), r.rational());
        CHECK(det(a * b) == det(a) * det(b));
        CHECK(trace(a * b) == trace(b * a));
    }
}

TEST_CASE("ratfun linear multiply/divide round trip") {
    rng r(5);
    for (int trial = 0; trial < 25; ++trial) {
        ratfun f(backend::exact);
        f = f + ratfun::simple_pole(qi(1), r.rational()) + ratfun::simple_pole(qi(4), r.rational());
        f = f + ratfun(poly(backend::exact, {r.rational(), r.rational()}));
        scalar q = qi(9);
        CHECK(f.div_linear(q).mul_linear(q) == f);
    }
    ratfun pole_at_two = ratfun::simple_pole(qi(2), qi(1));
    CHECK_THROWS_AS(pole_at_two.div_linear(qi(2)), arithmetic_error);
}

TEST_CASE("ratfun series matches evaluation") {
    ratfun f = ratfun::simple_pole(qi(1), qi(3, 2)) + ratfun(poly(backend::exact, {qi(2), qi(0), qi(1)}));
    scalar x0 = qi(4);
    auto co = f.series(x0, 3);
    CHECK(co[0] == f.eval(x0));
    // compare first-order term against a finite difference computed exactly:
    // f(x0+h) = c0 + c1 h + c2 h^2 + c3 h^3 + O(h^4) with one extra evaluation
    scalar h = qi(1, 1000);
    scalar lhs = f.eval(x0 + h);
    scalar rhs = co[0] + co[1] * h + co[2] * h * h + co[3] * h * h * h;
    scalar tail = (lhs - rhs) / (h * h * h * h);
    // the remainder divided by h^4 must stay bounded: compare against h^3 scale
    CHECK(tail.abs() < 1.0);
}

TEST_CASE("scalar ordering is a strict total order per backend") {
    std::vector<scalar> v{qi(3), qi(-1), qi(0), qi(3, 2)};
    std::sort(v.begin(), v.end(), scalar_less);
    CHECK(v[0] == qi(-1));
    CHECK(v[3] == qi(3));
}

#include <mcon/ratfun.hpp>

#include <algorithm>

namespace mcon {

ratfun ratfun::simple_pole(const scalar &pole, const scalar &residue) {
    ratfun r(pole.tag());
    r.add_term(pole, residue);
    return r;
}

void ratfun::add_term(const scalar &pole, const scalar &residue) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), pole,
                               [](const auto &term, const scalar &p) { return scalar_less(term.first, p); });
    if (it != terms_.end() && it->first == pole) {
        it->second = it->second + residue;
        if (it->second.is_zero()) terms_.erase(it);
    } else if (!residue.is_zero()) {
        terms_.insert(it, {pole, residue});
    }
}

scalar ratfun::residue_at(const scalar &s) const {
    for (const auto &[pole, res] : terms_)
        if (pole == s) return res;
    return scalar::zero(tag_);
}

bool ratfun::has_pole(const scalar &s) const {
    for (const auto &[pole, res] : terms_)
        if (pole == s) return true;
    return false;
}

ratfun ratfun::operator+(const ratfun &o) const {
    if (tag_ != o.tag_) throw backend_mismatch("ratfun addition");
    ratfun r = *this;
    for (const auto &[pole, res] : o.terms_) r.add_term(pole, res);
    r.poly_ = r.poly_ + o.poly_;
    return r;
}

ratfun ratfun::operator-() const {
    ratfun r(tag_);
    for (const auto &[pole, res] : terms_) r.terms_.push_back({pole, -res});
    r.poly_ = -poly_;
    return r;
}

ratfun ratfun::operator-(const ratfun &o) const { return *this + (-o); }

ratfun ratfun::scale(const scalar &s) const {
    ratfun r(tag_);
    if (s.is_zero()) return r;
    for (const auto &[pole, res] : terms_) r.terms_.push_back({pole, res * s});
    r.poly_ = poly_.scale(s);
    return r;
}

ratfun ratfun::mul_poly(const poly &f) const {
    // f(x) * r/(x-s) = f(s) r/(x-s) + r g(x)   where f = f(s) + (x-s) g(x).
    ratfun out(tag_);
    out.poly_ = poly_ * f;
    for (const auto &[pole, res] : terms_) {
        scalar fs = poly_eval(f, pole);
        auto [g, rem] = (f - poly::constant(fs)).divmod(poly::linear_monic(pole));
        if (!rem.is_zero()) throw arithmetic_error("internal: nonzero remainder in mul_poly");
        out.add_term(pole, res * fs);
        out.poly_ = out.poly_ + g.scale(res);
    }
    return out;
}

ratfun ratfun::mul_linear(const scalar &q) const { return mul_poly(poly::linear_monic(q)); }

ratfun ratfun::div_linear(const scalar &q) const {
    ratfun out(tag_);
    for (const auto &[pole, res] : terms_) {
        if (pole == q) {
            // floating roundoff can leave a negligible residue at q
            if (tag_ == backend::floating && res.approx_zero()) continue;
            throw arithmetic_error("division by (x - " + q.str() + ") would create a double pole");
        }
        // r/((x-s)(x-q)) = r/(s-q)/(x-s) + r/(q-s)/(x-q)
        out.add_term(pole, res / (pole - q));
        out.add_term(q, res / (q - pole));
    }
    auto [quo, rem] = poly_.divmod(poly::linear_monic(q));
    out.poly_ = out.poly_ + quo;
    if (!rem.is_zero()) out.add_term(q, rem.coeff(0));
    return out;
}

scalar ratfun::eval(const scalar &x0) const {
    scalar v = poly_eval(poly_, x0);
    for (const auto &[pole, res] : terms_) {
        if (pole == x0) throw arithmetic_error("evaluation at a pole");
        v = v + res / (x0 - pole);
    }
    return v;
}

std::vector<scalar> ratfun::series(const scalar &x0, int order) const {
    std::vector<scalar> co(static_cast<size_t>(order) + 1, scalar::zero(tag_));
    // r/(x-s) = r/(d + z) = sum_m r (-1)^m z^m / d^{m+1},  d = x0 - s, z = x - x0
    for (const auto &[pole, res] : terms_) {
        if (pole == x0) throw arithmetic_error("series expansion at a pole");
        scalar d = x0 - pole;
        scalar term = res / d;
        for (int m = 0; m <= order; ++m) {
            co[static_cast<size_t>(m)] = co[static_cast<size_t>(m)] + term;
            term = -term / d;
        }
    }
    // Taylor shift of the polynomial part.
    poly shifted = poly_;
    for (int m = 0; m <= order; ++m) {
        co[static_cast<size_t>(m)] = co[static_cast<size_t>(m)] + poly_eval(shifted, x0) /
            [&] {
                scalar f = scalar::one(tag_);
                for (int j = 2; j <= m; ++j)
                    f = f * (tag_ == backend::exact ? scalar::exact_int(j)
                                                    : scalar::floating(static_cast<double>(j)));
                return f;
            }();
        shifted = shifted.derivative();
    }
    return co;
}

poly ratfun::numerator_over(const std::vector<scalar> &poles) const {
    poly prod = poly::constant(scalar::one(tag_));
    for (const auto &s : poles) prod = prod * poly::linear_monic(s);
    poly out = poly_ * prod;
    for (const auto &[pole, res] : terms_) {
        bool found = false;
        poly partial = poly::constant(res);
        for (const auto &s : poles) {
            if (s == pole) {
                found = true;
                continue;
            }
            partial = partial * poly::linear_monic(s);
        }
        if (!found) throw arithmetic_error("pole " + pole.str() + " missing from numerator_over list");
        out = out + partial;
    }
    return out;
}

bool ratfun::operator==(const ratfun &o) const {
    return terms_ == o.terms_ && poly_ == o.poly_;
}

void ratfun::prune() {
    std::erase_if(terms_, [](const auto &t) {
        return t.second.tag() == backend::exact ? t.second.is_zero() : t.second.approx_zero();
    });
}

// ---------------------------------------------------------------- conn_mat

matrix2 conn_mat::residue_at(const scalar &s) const {
    return matrix2(e_[0].residue_at(s), e_[1].residue_at(s), e_[2].residue_at(s), e_[3].residue_at(s));
}

bool conn_mat::has_pole(const scalar &s) const {
    return e_[0].has_pole(s) || e_[1].has_pole(s) || e_[2].has_pole(s) || e_[3].has_pole(s);
}

conn_mat conn_mat::operator+(const conn_mat &o) const {
    conn_mat r(tag());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.set(i, j, at(i, j) + o.at(i, j));
    return r;
}

conn_mat conn_mat::operator-(const conn_mat &o) const {
    conn_mat r(tag());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.set(i, j, at(i, j) - o.at(i, j));
    return r;
}

conn_mat conn_mat::conjugate(const matrix2 &p) const {
    matrix2 pi = p.inverse();
    // (Pi N P)_{ij} = sum_{k,l} Pi_{ik} N_{kl} P_{lj}
    conn_mat r(tag());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ratfun acc(tag());
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) acc = acc + at(k, l).scale(pi.at(i, k) * p.at(l, j));
            r.set(i, j, acc);
        }
    r.prune();
    return r;
}

conn_mat conn_mat::lower_unipotent(const scalar &l1, const scalar &l2, const poly &f) const {
    if (l1.is_zero() || l2.is_zero()) throw gauge_error("singular diagonal in unipotent gauge");
    const ratfun &n11 = e_[0], &n12 = e_[1], &n21 = e_[2], &n22 = e_[3];
    conn_mat r(tag());
    r.set(0, 0, n11 + n12.mul_poly(f).scale(scalar::one(tag()) / l1));
    r.set(0, 1, n12.scale(l2 / l1));
    ratfun c = n21.scale(l1 / l2) + (n22 - n11).mul_poly(f).scale(scalar::one(tag()) / l2) -
               n12.mul_poly(f * f).scale(scalar::one(tag()) / (l1 * l2)) +
               ratfun(f.derivative().scale(scalar::one(tag()) / l2));
    r.set(1, 0, c);
    r.set(1, 1, n22 - n12.mul_poly(f).scale(scalar::one(tag()) / l1));
    r.prune();
    return r;
}

conn_mat conn_mat::frame_swap() const {
    conn_mat r(tag());
    r.set(0, 0, e_[3]);
    r.set(0, 1, e_[2]);
    r.set(1, 0, e_[1]);
    r.set(1, 1, e_[0]);
    return r;
}

conn_mat conn_mat::elm_lower_second(const scalar &q) const {
    conn_mat r(tag());
    r.set(0, 0, e_[0]);
    r.set(0, 1, e_[1].mul_linear(q));
    r.set(1, 0, e_[2].div_linear(q));
    r.set(1, 1, e_[3] + ratfun::simple_pole(q, scalar::one(tag())));
    r.prune();
    return r;
}

conn_mat conn_mat::elm_lower_first(const scalar &q) const {
    conn_mat r(tag());
    r.set(0, 0, e_[0] + ratfun::simple_pole(q, scalar::one(tag())));
    r.set(0, 1, e_[1].div_linear(q));
    r.set(1, 0, e_[2].mul_linear(q));
    r.set(1, 1, e_[3]);
    r.prune();
    return r;
}

conn_mat conn_mat::elm_raise_second(const scalar &q) const {
    conn_mat r(tag());
    r.set(0, 0, e_[0]);
    r.set(0, 1, e_[1].div_linear(q));
    r.set(1, 0, e_[2].mul_linear(q));
    r.set(1, 1, e_[3] - ratfun::simple_pole(q, scalar::one(tag())));
    r.prune();
    return r;
}

conn_mat conn_mat::elm_raise_first(const scalar &q) const {
    conn_mat r(tag());
    r.set(0, 0, e_[0] - ratfun::simple_pole(q, scalar::one(tag())));
    r.set(0, 1, e_[1].mul_linear(q));
    r.set(1, 0, e_[2].div_linear(q));
    r.set(1, 1, e_[3]);
    r.prune();
    return r;
}

conn_mat conn_mat::add_scalar_pole(const scalar &s, const scalar &lambda) const {
    conn_mat r = *this;
    r.set(0, 0, r.at(0, 0) + ratfun::simple_pole(s, lambda));
    r.set(1, 1, r.at(1, 1) + ratfun::simple_pole(s, lambda));
    r.prune();
    return r;
}

bool conn_mat::operator==(const conn_mat &o) const {
    for (int k = 0; k < 4; ++k)
        if (!(e_[static_cast<size_t>(k)] == o.e_[static_cast<size_t>(k)])) return false;
    return true;
}

void conn_mat::prune() {
    for (auto &f : e_) f.prune();
}

} // namespace mcon

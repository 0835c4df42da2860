#include <mcon/poly.hpp>

namespace mcon {

poly::poly(backend tag, std::vector<scalar> coeffs) : tag_(tag), c_(std::move(coeffs)) {
    for (const auto &c : c_)
        if (c.tag() != tag_) throw backend_mismatch("polynomial coefficient backend");
    normalize();
}

poly poly::constant(const scalar &c) { return poly(c.tag(), {c}); }

poly poly::linear_monic(const scalar &root) {
    return poly(root.tag(), {-root, scalar::one(root.tag())});
}

void poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::optional<int> poly::degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
}

scalar poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return scalar::zero(tag_);
    return c_[static_cast<size_t>(k)];
}

scalar poly::leading() const {
    if (c_.empty()) throw arithmetic_error("leading coefficient of zero polynomial");
    return c_.back();
}

poly poly::operator+(const poly &o) const {
    if (tag_ != o.tag_) throw backend_mismatch("poly addition");
    std::vector<scalar> r(std::max(c_.size(), o.c_.size()), scalar::zero(tag_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return poly(tag_, std::move(r));
}

poly poly::operator-() const {
    std::vector<scalar> r;
    r.reserve(c_.size());
    for (const auto &c : c_) r.push_back(-c);
    return poly(tag_, std::move(r));
}

poly poly::operator-(const poly &o) const { return *this + (-o); }

poly poly::operator*(const poly &o) const {
    if (tag_ != o.tag_) throw backend_mismatch("poly multiplication");
    if (c_.empty() || o.c_.empty()) return poly(tag_);
    std::vector<scalar> r(c_.size() + o.c_.size() - 1, scalar::zero(tag_));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return poly(tag_, std::move(r));
}

poly poly::scale(const scalar &s) const {
    std::vector<scalar> r;
    r.reserve(c_.size());
    for (const auto &c : c_) r.push_back(c * s);
    return poly(tag_, std::move(r));
}

poly poly::derivative() const {
    std::vector<scalar> r;
    for (size_t i = 1; i < c_.size(); ++i) {
        scalar k = tag_ == backend::exact ? scalar::exact_int(static_cast<long>(i))
                                          : scalar::floating(static_cast<double>(i));
        r.push_back(c_[i] * k);
    }
    return poly(tag_, std::move(r));
}

std::pair<poly, poly> poly::divmod(const poly &divisor) const {
    if (tag_ != divisor.tag_) throw backend_mismatch("poly division");
    if (divisor.is_zero()) throw arithmetic_error("division by zero polynomial");
    std::vector<scalar> rem = c_;
    int dd = *divisor.degree();
    scalar dl = divisor.leading();
    std::vector<scalar> quo;
    if (static_cast<int>(rem.size()) - 1 >= dd)
        quo.assign(rem.size() - static_cast<size_t>(dd), scalar::zero(tag_));
    while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
        if (rem.back().is_zero()) {
            rem.pop_back();
            continue;
        }
        size_t k = rem.size() - 1 - static_cast<size_t>(dd);
        scalar f = rem.back() / dl;
        quo[k] = f;
        for (size_t i = 0; i < divisor.c_.size(); ++i)
            rem[k + i] = rem[k + i] - f * divisor.c_[i];
        rem.pop_back();
    }
    return {poly(tag_, std::move(quo)), poly(tag_, std::move(rem))};
}

bool poly::operator==(const poly &o) const {
    if (tag_ != o.tag_) throw backend_mismatch("poly comparison");
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

scalar poly_eval(const poly &p, const scalar &x0) {
    scalar r = scalar::zero(p.tag());
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * x0 + *it;
    return r;
}

} // namespace mcon

#include <mcon/scalar.hpp>

#include <cmath>
#include <sstream>

namespace mcon {

namespace {
double g_tolerance = 1e-9;
}

double float_tolerance() { return g_tolerance; }

void set_float_tolerance(double tol) {
    if (!(tol > 0)) throw config_error("tolerance must be positive");
    g_tolerance = tol;
}

scalar scalar::exact_ratio(long num, long den) {
    if (den == 0) throw arithmetic_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return scalar(q, mpq_class(0));
}

scalar scalar::parse_exact(const std::string &re, const std::string &im) {
    mpq_class r, i;
    if (r.set_str(re, 10) != 0) throw config_error("bad rational: " + re);
    if (i.set_str(im, 10) != 0) throw config_error("bad rational: " + im);
    r.canonicalize();
    i.canonicalize();
    return scalar(r, i);
}

std::complex<double> scalar::to_complex() const {
    if (tag_ == backend::floating) return f_;
    return {re_.get_d(), im_.get_d()};
}

bool scalar::is_zero() const {
    if (tag_ == backend::exact) return re_ == 0 && im_ == 0;
    return f_ == std::complex<double>(0.0, 0.0);
}

bool scalar::is_real() const {
    if (tag_ == backend::exact) return im_ == 0;
    return f_.imag() == 0.0;
}

void scalar::require_same(const scalar &o) const {
    if (tag_ != o.tag_) throw backend_mismatch("mixed exact/floating operation");
}

scalar scalar::operator-() const {
    if (tag_ == backend::exact) return scalar(mpq_class(-re_), mpq_class(-im_));
    return scalar(-f_);
}

scalar scalar::operator+(const scalar &o) const {
    require_same(o);
    if (tag_ == backend::exact) return scalar(mpq_class(re_ + o.re_), mpq_class(im_ + o.im_));
    return scalar(f_ + o.f_);
}

scalar scalar::operator-(const scalar &o) const {
    require_same(o);
    if (tag_ == backend::exact) return scalar(mpq_class(re_ - o.re_), mpq_class(im_ - o.im_));
    return scalar(f_ - o.f_);
}

scalar scalar::operator*(const scalar &o) const {
    require_same(o);
    if (tag_ == backend::exact)
        return scalar(mpq_class(re_ * o.re_ - im_ * o.im_), mpq_class(re_ * o.im_ + im_ * o.re_));
    return scalar(f_ * o.f_);
}

scalar scalar::operator/(const scalar &o) const {
    require_same(o);
    if (o.is_zero()) throw arithmetic_error("division by zero scalar");
    if (tag_ == backend::exact) {
        mpq_class n(o.re_ * o.re_ + o.im_ * o.im_);
        return scalar(mpq_class((re_ * o.re_ + im_ * o.im_) / n),
                      mpq_class((im_ * o.re_ - re_ * o.im_) / n));
    }
    return scalar(f_ / o.f_);
}

bool scalar::operator==(const scalar &o) const {
    require_same(o);
    if (tag_ == backend::exact) return re_ == o.re_ && im_ == o.im_;
    return f_ == o.f_;
}

bool scalar::approx_equal(const scalar &o, double tol) const {
    require_same(o);
    if (tag_ == backend::exact) return *this == o;
    double scale = std::max({1.0, std::abs(f_), std::abs(o.f_)});
    return std::abs(f_ - o.f_) <= tol * scale;
}

bool scalar::approx_zero(double tol) const {
    if (tag_ == backend::exact) return is_zero();
    return std::abs(f_) <= tol;
}

double scalar::abs() const { return std::abs(to_complex()); }

scalar scalar::sqrt_floating() const {
    if (tag_ == backend::exact) throw backend_mismatch("sqrt requires the floating backend");
    return scalar(std::sqrt(f_));
}

std::string scalar::str() const {
    std::ostringstream os;
    if (tag_ == backend::exact) {
        os << re_.get_str();
        if (im_ != 0) os << (im_ > 0 ? "+" : "") << im_.get_str() << "i";
    } else {
        os << f_.real();
        if (f_.imag() != 0.0) os << (f_.imag() > 0 ? "+" : "") << f_.imag() << "i";
    }
    return os.str();
}

bool scalar_less(const scalar &a, const scalar &b) {
    if (a.tag() != b.tag()) throw backend_mismatch("ordering across backends");
    if (a.tag() == backend::exact) {
        int c = cmp(a.re_q(), b.re_q());
        if (c != 0) return c < 0;
        return cmp(a.im_q(), b.im_q()) < 0;
    }
    auto x = a.to_complex(), y = b.to_complex();
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

} // namespace mcon

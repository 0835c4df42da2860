#include <mcon/matrix2.hpp>

namespace mcon {

matrix2 matrix2::operator+(const matrix2 &o) const {
    return matrix2(e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2], e_[3] + o.e_[3]);
}

matrix2 matrix2::operator-(const matrix2 &o) const {
    return matrix2(e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2], e_[3] - o.e_[3]);
}

matrix2 matrix2::operator-() const { return matrix2(-e_[0], -e_[1], -e_[2], -e_[3]); }

matrix2 matrix2::operator*(const matrix2 &o) const {
    return matrix2(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                   e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
}

matrix2 matrix2::scale(const scalar &s) const {
    return matrix2(e_[0] * s, e_[1] * s, e_[2] * s, e_[3] * s);
}

matrix2 matrix2::inverse() const {
    scalar d = det(*this);
    if (d.is_zero()) throw arithmetic_error("singular 2x2 matrix");
    return matrix2(e_[3] / d, -e_[1] / d, -e_[2] / d, e_[0] / d);
}

bool matrix2::operator==(const matrix2 &o) const {
    return e_[0] == o.e_[0] && e_[1] == o.e_[1] && e_[2] == o.e_[2] && e_[3] == o.e_[3];
}

bool matrix2::is_zero() const {
    return e_[0].is_zero() && e_[1].is_zero() && e_[2].is_zero() && e_[3].is_zero();
}

bool matrix2::is_scalar_matrix() const {
    return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3];
}

scalar det(const matrix2 &m) { return m.a() * m.d() - m.b() * m.c(); }

scalar trace(const matrix2 &m) { return m.a() + m.d(); }

matrix2 commutator(const matrix2 &x, const matrix2 &y) { return x * y - y * x; }

} // namespace mcon

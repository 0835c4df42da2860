#pragma once

#include <mcon/scalar.hpp>

#include <array>

namespace mcon {

/// Row-major 2x2 matrix of scalars.
class matrix2 {
  public:
    explicit matrix2(backend tag = backend::exact)
        : e_{scalar::zero(tag), scalar::zero(tag), scalar::zero(tag), scalar::zero(tag)} {}
    matrix2(scalar a, scalar b, scalar c, scalar d) : e_{a, b, c, d} {
        if (e_[1].tag() != e_[0].tag() || e_[2].tag() != e_[0].tag() || e_[3].tag() != e_[0].tag())
            throw backend_mismatch("matrix entries");
    }
    static matrix2 identity(backend tag) {
        return matrix2(scalar::one(tag), scalar::zero(tag), scalar::zero(tag), scalar::one(tag));
    }
    static matrix2 diag(const scalar &x, const scalar &y) {
        return matrix2(x, scalar::zero(x.tag()), scalar::zero(x.tag()), y);
    }

    backend tag() const { return e_[0].tag(); }
    const scalar &a() const { return e_[0]; }
    const scalar &b() const { return e_[1]; }
    const scalar &c() const { return e_[2]; }
    const scalar &d() const { return e_[3]; }
    const scalar &at(int i, int j) const { return e_[static_cast<size_t>(2 * i + j)]; }
    void set(int i, int j, const scalar &v) { e_[static_cast<size_t>(2 * i + j)] = v; }

    matrix2 operator+(const matrix2 &o) const;
    matrix2 operator-(const matrix2 &o) const;
    matrix2 operator-() const;
    matrix2 operator*(const matrix2 &o) const;
    matrix2 scale(const scalar &s) const;
    matrix2 inverse() const;

    bool operator==(const matrix2 &o) const;
    bool operator!=(const matrix2 &o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_scalar_matrix() const;

  private:
    std::array<scalar, 4> e_;
};

scalar det(const matrix2 &m);
scalar trace(const matrix2 &m);
matrix2 commutator(const matrix2 &x, const matrix2 &y);

} // namespace mcon

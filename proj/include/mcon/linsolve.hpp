#pragma once

#include <mcon/scalar.hpp>

#include <vector>

namespace mcon {

/// Small dense linear algebra over scalar.  Exact backend pivots on the
/// first nonzero entry; floating backend pivots on the largest magnitude.
class linear_system {
  public:
    linear_system(int rows, int cols, backend tag);

    void set(int r, int c, const scalar &v) { a_[idx(r, c)] = v; }
    void set_rhs(int r, const scalar &v) { b_[static_cast<size_t>(r)] = v; }
    const scalar &at(int r, int c) const { return a_[idx(r, c)]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /// Unique solution of A x = b; throws degenerate_error (with the rank in
    /// the message) if the system is singular or inconsistent.
    std::vector<scalar> solve() const;

    /// Basis of the nullspace of A (rhs ignored).
    std::vector<std::vector<scalar>> nullspace() const;

    int rank() const;

  private:
    size_t idx(int r, int c) const { return static_cast<size_t>(r) * cols_ + static_cast<size_t>(c); }
    struct echelon;
    echelon reduce() const;

    int rows_, cols_;
    backend tag_;
    std::vector<scalar> a_, b_;
};

} // namespace mcon

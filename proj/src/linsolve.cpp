#include <mcon/linsolve.hpp>

#include <string>

namespace mcon {

linear_system::linear_system(int rows, int cols, backend tag)
    : rows_(rows), cols_(cols), tag_(tag),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), scalar::zero(tag)),
      b_(static_cast<size_t>(rows), scalar::zero(tag)) {}

struct linear_system::echelon {
    std::vector<scalar> a, b;
    std::vector<int> pivot_col; // per pivot row
    int rank = 0;
};

linear_system::echelon linear_system::reduce() const {
    echelon e{a_, b_, {}, 0};
    auto at = [&](int r, int c) -> scalar & { return e.a[idx(r, c)]; };
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int piv = -1;
        if (tag_ == backend::exact) {
            for (int r = row; r < rows_; ++r)
                if (!at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
        } else {
            double best = 0.0;
            for (int r = row; r < rows_; ++r) {
                double m = at(r, col).abs();
                if (m > best) {
                    best = m;
                    piv = r;
                }
            }
            if (piv >= 0 && at(piv, col).approx_zero()) piv = -1;
        }
        if (piv < 0) continue;
        for (int c = 0; c < cols_; ++c) std::swap(e.a[idx(row, c)], e.a[idx(piv, c)]);
        std::swap(e.b[static_cast<size_t>(row)], e.b[static_cast<size_t>(piv)]);
        scalar lead = at(row, col);
        for (int c = col; c < cols_; ++c) at(row, c) = at(row, c) / lead;
        e.b[static_cast<size_t>(row)] = e.b[static_cast<size_t>(row)] / lead;
        for (int r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero()) continue;
            scalar f = at(r, col);
            for (int c = col; c < cols_; ++c) at(r, c) = at(r, c) - f * at(row, c);
            e.b[static_cast<size_t>(r)] = e.b[static_cast<size_t>(r)] - f * e.b[static_cast<size_t>(row)];
        }
        e.pivot_col.push_back(col);
        ++row;
    }
    e.rank = row;
    return e;
}

int linear_system::rank() const { return reduce().rank; }

std::vector<scalar> linear_system::solve() const {
    echelon e = reduce();
    if (e.rank < cols_)
        throw degenerate_error("singular linear system (rank " + std::to_string(e.rank) + " of " +
                               std::to_string(cols_) + ")");
    for (int r = e.rank; r < rows_; ++r) {
        bool zero = tag_ == backend::exact ? e.b[static_cast<size_t>(r)].is_zero()
                                           : e.b[static_cast<size_t>(r)].approx_zero();
        if (!zero) throw degenerate_error("inconsistent linear system");
    }
    std::vector<scalar> x(static_cast<size_t>(cols_), scalar::zero(tag_));
    for (int r = 0; r < e.rank; ++r) x[static_cast<size_t>(e.pivot_col[static_cast<size_t>(r)])] = e.b[static_cast<size_t>(r)];
    return x;
}

std::vector<std::vector<scalar>> linear_system::nullspace() const {
    echelon e = reduce();
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : e.pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<scalar>> basis;
    for (int fc = 0; fc < cols_; ++fc) {
        if (is_pivot[static_cast<size_t>(fc)]) continue;
        std::vector<scalar> v(static_cast<size_t>(cols_), scalar::zero(tag_));
        v[static_cast<size_t>(fc)] = scalar::one(tag_);
        for (int r = 0; r < e.rank; ++r) {
            int pc = e.pivot_col[static_cast<size_t>(r)];
            v[static_cast<size_t>(pc)] = -e.a[idx(r, fc)];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace mcon

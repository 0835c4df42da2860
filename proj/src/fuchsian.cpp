#include <mcon/fuchsian.hpp>

#include <mcon/linsolve.hpp>
#include <mcon/rng.hpp>

namespace mcon {

fuchsian_system::fuchsian_system(pole_config p, std::array<matrix2, 4> a, std::vector<scalar> th)
    : poles(std::move(p)), residues(std::move(a)), theta(std::move(th)) {
    if (poles.n() != 4 || theta.size() != 4) throw config_error("fuchsian system needs 4 poles");
}

void fuchsian_system::validate() const {
    bool exact = tag() == backend::exact;
    auto zero = [&](const scalar &s) { return exact ? s.is_zero() : s.approx_zero(); };
    matrix2 sum(tag());
    for (int i = 0; i < 4; ++i) {
        const matrix2 &a = residues[static_cast<size_t>(i)];
        if (!zero(trace(a)))
            throw inconsistency_error("residue " + std::to_string(i + 1) + " is not traceless");
        scalar want = -(theta[static_cast<size_t>(i)] * theta[static_cast<size_t>(i)]);
        if (exact ? det(a) != want : !det(a).approx_equal(want))
            throw inconsistency_error("det(A_" + std::to_string(i + 1) + ") != -theta^2");
        sum = sum + a;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!zero(sum.at(i, j))) throw inconsistency_error("residues do not sum to zero");
}

// ----------------------------------------------------------------- sampling

namespace {

// Random element of SL2 as a product of elementary shears.
matrix2 random_sl2(rng &r, backend tag) {
    matrix2 m = matrix2::identity(tag);
    for (int k = 0; k < 3; ++k) {
        scalar s = r.rational(tag);
        matrix2 shear = k % 2 == 0
                            ? matrix2(scalar::one(tag), s, scalar::zero(tag), scalar::one(tag))
                            : matrix2(scalar::one(tag), scalar::zero(tag), s, scalar::one(tag));
        m = m * shear;
    }
    return m;
}

matrix2 traceless_with_det(rng &r, const scalar &theta, backend tag) {
    // (a b; c -a) with a^2 + bc = theta^2, conjugated into general position.
    scalar a = r.rational(tag);
    scalar b = r.nonzero(tag);
    scalar c = (theta * theta - a * a) / b;
    matrix2 m(a, b, c, -a);
    matrix2 g = random_sl2(r, tag);
    return g.inverse() * m * g;
}

} // namespace

fuchsian_system sample_fuchsian_system(rng &r, const std::vector<scalar> &theta,
                                       const pole_config &poles) {
    backend tag = theta[0].tag();
    const scalar &th3 = theta[2], &th4 = theta[3];
    for (int attempt = 0; attempt < 256; ++attempt) {
        matrix2 a1 = traceless_with_det(r, theta[0], tag);
        matrix2 a2 = traceless_with_det(r, theta[1], tag);
        matrix2 s = a1 + a2; // A3 + A4 = -s
        scalar s1 = s.a(), s2 = s.b(), s3 = s.c();
        scalar a, b, c;
        scalar one = scalar::one(tag);
        if (!s2.is_zero()) {
            // Intersect {a^2 + bc = th3^2} with the plane
            //   -2 s1 a - s1^2 - s2 c - s3 b - s2 s3 = th3^2 - th4^2,
            // a conic through (a,b) = (th3, 0); chord slope m parametrizes it.
            scalar m = r.rational(tag);
            scalar alpha = th4 * th4 - th3 * th3 - s1 * s1 - s2 * s3;
            scalar den = one - (s1 + s1) * m / s2 - s3 * m * m / s2;
            if (den.is_zero()) continue;
            a = (-th3 - alpha * m / s2 - s3 * m * m * th3 / s2) / den;
            b = m * (a - th3);
            c = (alpha - (s1 + s1) * a - s3 * b) / s2;
        } else if (!s3.is_zero()) {
            scalar m = r.rational(tag);
            scalar alpha = th4 * th4 - th3 * th3 - s1 * s1 - s2 * s3;
            scalar den = one - (s1 + s1) * m / s3 - s2 * m * m / s3;
            if (den.is_zero()) continue;
            a = (-th3 - alpha * m / s3 - s2 * m * m * th3 / s3) / den;
            c = m * (a - th3);
            b = (alpha - (s1 + s1) * a - s2 * c) / s3;
        } else if (!s1.is_zero()) {
            a = (th4 * th4 - th3 * th3 - s1 * s1) / (s1 + s1);
            b = r.nonzero(tag);
            c = (th3 * th3 - a * a) / b;
        } else {
            if (th3 * th3 != th4 * th4) return sample_fuchsian_system(r, theta, poles);
            a = r.rational(tag);
            b = r.nonzero(tag);
            c = (th3 * th3 - a * a) / b;
        }
        matrix2 a3(a, b, c, -a);
        matrix2 a4 = -(s + a3);
        if (det(a4) != -(th4 * th4)) continue;
        fuchsian_system out(poles, {a1, a2, a3, a4}, theta);
        out.validate();
        return out;
    }
    throw degenerate_error("could not sample a system with the requested spectrum");
}

// --------------------------------------------------------------- invariants

cubic_convention calibrate_invariants(unsigned seed, int samples) {
    rng r(seed);
    pole_config poles({scalar::exact_int(0), scalar::exact_int(1), scalar::exact_int(2),
                       scalar::exact_int(3)});
    std::vector<fuchsian_system> pool;
    std::vector<std::vector<scalar>> thetas;
    for (int k = 0; k < samples; ++k) {
        std::vector<scalar> th{r.rational(), r.rational(), r.rational(), r.nonzero()};
        pool.push_back(sample_fuchsian_system(r, th, poles));
        thetas.push_back(th);
    }
    for (int sigma : {1, -1}) {
        for (int kappa : {1, 2, 4}) {
            cubic_convention conv{sigma, kappa};
            bool ok = true;
            for (size_t k = 0; k < pool.size() && ok; ++k) {
                auto p = invariants(pool[k], conv);
                auto [lin, cub] = cubic_residuals(p, thetas[k]);
                ok = lin.is_zero() && cub.is_zero();
            }
            if (ok) return conv;
        }
    }
    throw inconsistency_error("no (sigma, kappa) convention satisfies the cubic relation");
}

cubic_point invariants(const fuchsian_system &sys, const cubic_convention &conv) {
    sys.validate();
    const auto &a = sys.residues;
    scalar sg = sys.tag() == backend::exact ? scalar::exact_int(conv.sigma)
                                            : scalar::floating(conv.sigma);
    scalar kp = sys.tag() == backend::exact ? scalar::exact_int(conv.kappa)
                                            : scalar::floating(conv.kappa);
    return cubic_point{sg * det(a[1] + a[2]), sg * det(a[0] + a[2]), sg * det(a[0] + a[1]),
                       kp * trace(a[0] * commutator(a[1], a[3]))};
}

std::pair<scalar, scalar> cubic_residuals(const cubic_point &p, const std::vector<scalar> &theta) {
    if (theta.size() != 4) throw config_error("cubic_residuals needs 4 thetas");
    backend tag = p.x1.tag();
    scalar t1 = theta[0] * theta[0], t2 = theta[1] * theta[1], t3 = theta[2] * theta[2],
           t4 = theta[3] * theta[3];
    scalar lin = p.x1 + p.x2 + p.x3 - (t1 + t2 + t3 + t4);
    scalar four = tag == backend::exact ? scalar::exact_int(4) : scalar::floating(4.0);
    scalar cub = p.y * p.y / four + p.x1 * p.x2 * p.x3 + (t1 - t3) * (t2 - t4) * p.x1 +
                 (t2 - t3) * (t1 - t4) * p.x2 - (t1 + t2 - t3 - t4) * (t1 * t2 - t3 * t4);
    return {lin, cub};
}

// ------------------------------------------------------------ normalization

std::pair<fuchsian_system, matrix2> normalize(const fuchsian_system &sys) {
    sys.validate();
    const scalar &th4 = sys.theta[3];
    if (th4.is_zero()) throw degenerate_error("theta_4 = 0: normalization unavailable");
    const matrix2 &a4 = sys.residues[3];
    if (a4.is_scalar_matrix()) throw degenerate_error("A_4 is scalar");
    backend tag = sys.tag();
    matrix2 m = matrix2::identity(tag);
    if (!(a4.b().is_zero() && a4.c().is_zero() && a4.a() == th4)) {
        auto eigvec = [&](const scalar &lambda) -> std::pair<scalar, scalar> {
            // (b, lambda - a) or (lambda - d, c)
            if (!a4.b().is_zero() || !(lambda - a4.a()).is_zero())
                return {a4.b(), lambda - a4.a()};
            return {lambda - a4.d(), a4.c()};
        };
        auto [p0, p1] = eigvec(th4);
        auto [m0, m1] = eigvec(-th4);
        m = matrix2(p0, m0, p1, m1);
        scalar d = det(m);
        if (d.is_zero()) throw degenerate_error("A_4 eigendirections are degenerate");
        m = matrix2(p0 / d, m0, p1 / d, m1); // det 1
    }
    matrix2 mi = m.inverse();
    std::array<matrix2, 4> out;
    for (int i = 0; i < 4; ++i) out[static_cast<size_t>(i)] = mi * sys.residues[static_cast<size_t>(i)] * m;
    fuchsian_system ns(sys.poles, out, sys.theta);
    ns.validate();
    return {ns, m};
}

// ------------------------------------------------------------ reconstruction

fuchsian_system reconstruct(const cubic_point &p, const std::vector<scalar> &theta,
                            const pole_config &poles, const cubic_convention &conv) {
    if (theta.size() != 4) throw config_error("reconstruct needs 4 thetas");
    backend tag = p.x1.tag();
    auto [lin, cub] = cubic_residuals(p, theta);
    bool on_surface = tag == backend::exact ? (lin.is_zero() && cub.is_zero())
                                            : (lin.approx_zero() && cub.approx_zero());
    if (!on_surface) throw inconsistency_error("point is not on the cubic surface");
    const scalar &th1 = theta[0], &th2 = theta[1], &th3 = theta[2], &th4 = theta[3];
    if (th4.is_zero()) {
        if (!singular_locus_flags(theta).zero_sums.empty())
            throw triangular_locus_error("theta_4 = 0 on the sign-sum-zero locus");
        throw degenerate_error("theta_4 = 0: normalization unavailable");
    }
    scalar two = tag == backend::exact ? scalar::exact_int(2) : scalar::floating(2.0);
    scalar kp = tag == backend::exact ? scalar::exact_int(conv.kappa)
                                      : scalar::floating(conv.kappa);
    scalar sg = tag == backend::exact ? scalar::exact_int(conv.sigma)
                                      : scalar::floating(conv.sigma);
    // With the calibrated convention, sigma*X_i = det(pair sum) and the proof's
    // explicit formulas read  X_i = 2 theta4 a_i + theta4^2 + theta_i^2.
    scalar a1 = (p.x1 - th4 * th4 - th1 * th1) / (two * th4);
    scalar a2 = (p.x2 - th4 * th4 - th2 * th2) / (two * th4);
    scalar a3 = -a1 - a2 - th4;
    scalar p1 = th1 * th1 - a1 * a1; // b1 c1
    scalar p2 = th2 * th2 - a2 * a2; // b2 c2
    scalar upv = -(two * a1 * a2 + two * th4 * (a1 + a2) + th1 * th1 + th2 * th2 - th3 * th3 +
                   th4 * th4);                  // b1 c2 + b2 c1
    scalar umv = p.y / (kp * two * th4);        // b1 c2 - b2 c1
    scalar u = (upv + umv) / two, v = (upv - umv) / two;
    (void)sg;

    scalar b1, c1, b2, c2;
    scalar zero = scalar::zero(tag), one = scalar::one(tag);
    auto nz = [&](const scalar &s) { return tag == backend::exact ? !s.is_zero() : !s.approx_zero(); };
    if (nz(u) && nz(v)) {
        // both b1 c2 and b2 c1 nonzero: normalize b1 = 1
        b1 = one;
        c1 = p1;
        c2 = u;
        b2 = v / p1;
    } else if (nz(u)) {
        b1 = one;
        c2 = u;
        if (nz(p1)) {
            c1 = p1;
            b2 = zero;
        } else {
            c1 = zero;
            b2 = p2 / u;
        }
    } else if (nz(v)) {
        // fall back to c1 = 1
        c1 = one;
        b2 = v;
        b1 = p1;
        c2 = p2 / v;
    } else if (nz(p1)) {
        b1 = one;
        c1 = p1;
        b2 = zero;
        c2 = zero;
    } else if (nz(p2)) {
        b2 = one;
        c2 = p2;
        b1 = zero;
        c1 = zero;
    } else {
        throw triangular_locus_error(
            "fiber over this point consists of triangular systems; all of them are triangular");
    }
    matrix2 a4m = matrix2::diag(th4, -th4);
    matrix2 a1m(a1, b1, c1, -a1), a2m(a2, b2, c2, -a2);
    matrix2 a3m = -(a1m + a2m + a4m);
    fuchsian_system out(poles, {a1m, a2m, a3m, a4m}, theta);
    out.validate();
    if (!(invariants(out, conv) == p) && tag == backend::exact)
        throw inconsistency_error("reconstruction failed to reproduce the invariants");
    return out;
}

// -------------------------------------------------------------- reducibility

namespace {
bool direction_invariant(const matrix2 &a, const scalar &v0, const scalar &v1) {
    scalar w0 = a.a() * v0 + a.b() * v1;
    scalar w1 = a.c() * v0 + a.d() * v1;
    return (w0 * v1 - w1 * v0).is_zero();
}
} // namespace

reducibility is_reducible(const fuchsian_system &sys) {
    backend tag = sys.tag();
    scalar zero = scalar::zero(tag), one = scalar::one(tag);
    int pivot = -1;
    for (int i = 0; i < 4; ++i)
        if (!sys.residues[static_cast<size_t>(i)].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot < 0) return {reducibility::kind::totally_degenerate, one, zero};
    const matrix2 &a = sys.residues[static_cast<size_t>(pivot)];
    std::vector<std::pair<scalar, scalar>> candidates;
    for (const scalar &lambda : {sys.theta[static_cast<size_t>(pivot)], -sys.theta[static_cast<size_t>(pivot)]}) {
        std::pair<scalar, scalar> v{a.b(), lambda - a.a()};
        if (v.first.is_zero() && v.second.is_zero()) v = {lambda - a.d(), a.c()};
        if (v.first.is_zero() && v.second.is_zero()) continue;
        bool dup = false;
        for (const auto &c : candidates)
            dup = dup || (c.first * v.second - c.second * v.first).is_zero();
        if (!dup) candidates.push_back(v);
    }
    for (const auto &[v0, v1] : candidates) {
        bool inv = true;
        for (int i = 0; i < 4 && inv; ++i)
            inv = direction_invariant(sys.residues[static_cast<size_t>(i)], v0, v1);
        if (inv) {
            if (!v0.is_zero()) return {reducibility::kind::reducible, one, v1 / v0};
            return {reducibility::kind::reducible, zero, one};
        }
    }
    return {reducibility::kind::irreducible, zero, zero};
}

bool locus_flags::any() const {
    for (bool b : theta_zero)
        if (b) return true;
    return !zero_sums.empty();
}

locus_flags singular_locus_flags(const std::vector<scalar> &theta) {
    if (theta.size() != 4) throw config_error("singular_locus_flags needs 4 thetas");
    locus_flags f;
    for (int i = 0; i < 4; ++i) f.theta_zero[static_cast<size_t>(i)] = theta[static_cast<size_t>(i)].is_zero();
    for (int mask = 0; mask < 8; ++mask) {
        std::array<int, 4> signs{1, (mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1};
        scalar s = scalar::zero(theta[0].tag());
        for (int i = 0; i < 4; ++i) {
            scalar term = theta[static_cast<size_t>(i)];
            s = s + (signs[static_cast<size_t>(i)] > 0 ? term : -term);
        }
        if (s.is_zero()) f.zero_sums.push_back(signs);
    }
    return f;
}

std::optional<matrix2> conjugacy_witness(const fuchsian_system &a, const fuchsian_system &b) {
    // Solve A_i M = M B_i for all i (16 linear equations, 4 unknowns m00..m11).
    backend tag = a.tag();
    linear_system ls(16, 4, tag);
    int row = 0;
    for (int k = 0; k < 4; ++k) {
        const matrix2 &A = a.residues[static_cast<size_t>(k)];
        const matrix2 &B = b.residues[static_cast<size_t>(k)];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                // (A M - M B)_{ij} = sum_l A_{il} M_{lj} - M_{il} B_{lj}
                for (int l = 0; l < 2; ++l) {
                    int col_ml_j = 2 * l + j;
                    int col_mi_l = 2 * i + l;
                    ls.set(row, col_ml_j, ls.at(row, col_ml_j) + A.at(i, l));
                    ls.set(row, col_mi_l, ls.at(row, col_mi_l) - B.at(l, j));
                }
                ++row;
            }
    }
    auto basis = ls.nullspace();
    auto check = [&](const std::vector<scalar> &v) -> std::optional<matrix2> {
        matrix2 m(v[0], v[1], v[2], v[3]);
        if (det(m).is_zero()) return std::nullopt;
        matrix2 mi = m.inverse();
        for (int k = 0; k < 4; ++k)
            if (!(mi * a.residues[static_cast<size_t>(k)] * m == b.residues[static_cast<size_t>(k)]))
                return std::nullopt;
        return m;
    };
    for (const auto &v : basis)
        if (auto m = check(v)) return m;
    // try sums of pairs in case the nullspace is bigger than one-dimensional
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            std::vector<scalar> v = basis[i];
            for (size_t k = 0; k < 4; ++k) v[k] = v[k] + basis[j][k];
            if (auto m = check(v)) return m;
        }
    return std::nullopt;
}

} // namespace mcon

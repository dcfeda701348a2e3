#include "qde/eigensolver.hpp"

#include <algorithm>
#include <numeric>

namespace qde {

namespace {

using CMat = Mat<MpComplex>;

MpReal convergence_eps() {
    // Comfortably above the 256-bit rounding noise floor.
    return mp_pow_si(MpReal(2L), -(static_cast<long>(kMpPrec) - 20));
}

/// One complex Givens rotation eliminating b against a:
/// [ c       s ] [a]   [r]
/// [-conj(s) c ] [b] = [0],  c real >= 0, |c|^2 + |s|^2 = 1.
struct Givens {
    MpReal c;
    MpComplex s;
};

Givens make_givens(const MpComplex& a, const MpComplex& b) {
    MpReal na = c_abs(a), nb = c_abs(b);
    if (nb.is_zero()) return {MpReal(1L), MpComplex()};
    MpReal r = mp_sqrt(na * na + nb * nb);
    if (na.is_zero()) {
        // Pure swap with phase: c = 0, s = b/|b| applied to [a;b] gives [|b|;0].
        return {MpReal(0L), b / MpComplex(nb)};
    }
    MpReal c = na / r;
    // s = (a/|a|) * conj(b) / r
    MpComplex phase = a / MpComplex(na);
    return {c, phase * c_conj(b) / MpComplex(r)};
}

void apply_givens_left(CMat& m, std::size_t i, std::size_t j, const Givens& g, std::size_t from_col) {
    for (std::size_t k = from_col; k < m.cols(); ++k) {
        MpComplex a = m(i, k), b = m(j, k);
        m(i, k) = MpComplex(g.c) * a + g.s * b;
        m(j, k) = -c_conj(g.s) * a + MpComplex(g.c) * b;
    }
}

void apply_givens_right(CMat& m, std::size_t i, std::size_t j, const Givens& g, std::size_t upto_row) {
    for (std::size_t k = 0; k < upto_row; ++k) {
        MpComplex a = m(k, i), b = m(k, j);
        m(k, i) = a * MpComplex(g.c) + b * c_conj(g.s);
        m(k, j) = -(a * g.s) + b * MpComplex(g.c);
    }
}

/// Householder reduction to upper Hessenberg form; returns the accumulated
/// unitary Q with A = Q H Q^*.
void hessenberg(CMat& h, CMat& q) {
    std::size_t n = h.rows();
    q = CMat::identity(n, MpComplex(MpReal(1L)));
    if (n < 3) return;
    for (std::size_t col = 0; col + 2 < n; ++col) {
        // Build the reflector for column col, rows col+1..n-1.
        MpReal norm(0L);
        for (std::size_t i = col + 1; i < n; ++i) {
            MpReal a = c_abs(h(i, col));
            norm += a * a;
        }
        norm = mp_sqrt(norm);
        if (norm.is_zero()) continue;
        MpComplex x0 = h(col + 1, col);
        MpComplex alpha;  // -phase(x0) * norm
        if (x0.is_zero())
            alpha = MpComplex(-norm);
        else
            alpha = -(x0 / MpComplex(c_abs(x0))) * MpComplex(norm);
        // v = x - alpha e1, then normalize.
        std::vector<MpComplex> v(n);
        for (std::size_t i = col + 1; i < n; ++i) v[i] = h(i, col);
        v[col + 1] -= alpha;
        MpReal vn(0L);
        for (std::size_t i = col + 1; i < n; ++i) {
            MpReal a = c_abs(v[i]);
            vn += a * a;
        }
        if (vn.is_zero()) continue;
        MpComplex two_over(MpReal(2L) / vn);
        // H := P H P with P = I - (2/|v|^2) v v^*.
        // Left: H -= (2/|v|^2) v (v^* H)
        for (std::size_t j = 0; j < n; ++j) {
            MpComplex dot;
            for (std::size_t i = col + 1; i < n; ++i) dot += c_conj(v[i]) * h(i, j);
            dot *= two_over;
            for (std::size_t i = col + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        // Right: H -= (2/|v|^2) (H v) v^*
        for (std::size_t i = 0; i < n; ++i) {
            MpComplex dot;
            for (std::size_t j = col + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= two_over;
            for (std::size_t j = col + 1; j < n; ++j) h(i, j) -= dot * c_conj(v[j]);
        }
        // Q := Q P
        for (std::size_t i = 0; i < n; ++i) {
            MpComplex dot;
            for (std::size_t j = col + 1; j < n; ++j) dot += q(i, j) * v[j];
            dot *= two_over;
            for (std::size_t j = col + 1; j < n; ++j) q(i, j) -= dot * c_conj(v[j]);
        }
    }
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
MpComplex wilkinson_shift(const CMat& h, std::size_t hi) {
    MpComplex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    MpComplex c = h(hi, hi - 1), d = h(hi, hi);
    MpComplex tr = a + d;
    MpComplex disc = c_sqrt((a - d) * (a - d) + MpComplex(MpReal(4L)) * b * c);
    MpComplex l1 = (tr + disc) / MpComplex(MpReal(2L));
    MpComplex l2 = (tr - disc) / MpComplex(MpReal(2L));
    return c_abs(l1 - d) < c_abs(l2 - d) ? l1 : l2;
}

}  // namespace

EigenResult eigen_decompose(const Mat<MpComplex>& a) {
    if (a.rows() != a.cols()) throw std::domain_error("eigen: non-square matrix");
    std::size_t n = a.rows();
    EigenResult out;
    out.max_residual = MpReal(0L);
    if (n == 0) {
        out.vectors = CMat(0, 0);
        return out;
    }

    CMat t = a;
    CMat q;
    hessenberg(t, q);

    MpReal eps = convergence_eps();
    // Shifted QR with deflation: work on the active block [lo, hi].
    std::size_t hi = n - 1;
    long iter_guard = 0;
    long stall = 0;
    while (hi > 0) {
        if (++iter_guard > 400 * static_cast<long>(n))
            throw std::domain_error("eigen: QR iteration did not converge");
        // Deflate converged subdiagonals.
        bool deflated = false;
        for (std::size_t k = hi; k >= 1; --k) {
            MpReal denom = c_abs(t(k - 1, k - 1)) + c_abs(t(k, k));
            if (denom.is_zero()) denom = MpReal(1L);
            if (c_abs(t(k, k - 1)) <= eps * denom) {
                t(k, k - 1) = MpComplex();
                if (k == hi) {
                    --hi;
                    deflated = true;
                    stall = 0;
                    break;
                }
            }
        }
        if (deflated) continue;
        // Find the start of the active block.
        std::size_t lo = hi;
        while (lo > 0 && !t(lo, lo - 1).is_zero()) --lo;
        if (lo == hi) {
            --hi;
            stall = 0;
            continue;
        }
        MpComplex mu = wilkinson_shift(t, hi);
        if (++stall % 12 == 0) {
            // Exceptional shift to break rare cycles.
            mu = t(hi, hi) + MpComplex(c_abs(t(hi, hi - 1)));
        }
        // Explicit shifted QR step on the block: triangularize t - mu I with
        // Givens rotations from the left, then apply their adjoints from the
        // right (a unitary similarity), and restore the shift.
        for (std::size_t k = lo; k <= hi; ++k) t(k, k) -= mu;
        std::vector<Givens> rots(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
            Givens g = make_givens(t(k, k), t(k + 1, k));
            rots[k - lo] = g;
            apply_givens_left(t, k, k + 1, g, k);
        }
        for (std::size_t k = lo; k < hi; ++k) {
            apply_givens_right(t, k, k + 1, rots[k - lo], std::min(n, k + 2));
            apply_givens_right(q, k, k + 1, rots[k - lo], n);
        }
        for (std::size_t k = lo; k <= hi; ++k) t(k, k) += mu;
    }

    // Schur form reached: eigenvalues on the diagonal; eigenvectors by
    // back-substitution on the triangular factor.
    std::vector<MpComplex> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = t(i, i);

    CMat y(n, n);  // columns: Schur-basis eigenvectors
    MpReal tiny = mp_pow_si(MpReal(2L), -(static_cast<long>(kMpPrec) / 2));
    for (std::size_t i = 0; i < n; ++i) {
        y(i, i) = MpComplex(MpReal(1L));
        for (std::size_t j = i; j-- > 0;) {
            MpComplex acc;
            for (std::size_t k = j + 1; k <= i; ++k) acc += t(j, k) * y(k, i);
            MpComplex den = t(j, j) - vals[i];
            if (c_abs(den) < tiny * (MpReal(1L) + c_abs(t(j, j))))
                den = MpComplex(tiny * (MpReal(1L) + c_abs(t(j, j))));
            y(j, i) = -(acc / den);
        }
    }
    CMat vec = q * y;
    // Normalize columns.
    for (std::size_t j = 0; j < n; ++j) {
        MpReal norm(0L);
        for (std::size_t i = 0; i < n; ++i) {
            MpReal v = c_abs(vec(i, j));
            norm += v * v;
        }
        norm = mp_sqrt(norm);
        if (norm.is_zero()) throw std::domain_error("eigen: zero eigenvector");
        for (std::size_t i = 0; i < n; ++i) vec(i, j) /= MpComplex(norm);
    }

    // Deterministic order: ascending |lambda|, ties by ascending argument.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t z) {
        MpReal ax = c_abs(vals[x]), az = c_abs(vals[z]);
        if (ax != az) return ax < az;
        if (vals[x] == vals[z]) return x < z;
        MpReal gx = vals[x].is_zero() ? MpReal(0L) : c_arg(vals[x]);
        MpReal gz = vals[z].is_zero() ? MpReal(0L) : c_arg(vals[z]);
        if (gx != gz) return gx < gz;
        return x < z;
    });
    out.values.resize(n);
    out.vectors = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = vals[perm[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vec(i, perm[j]);
    }

    // Certify.
    for (std::size_t j = 0; j < n; ++j) {
        MpReal norm(0L);
        for (std::size_t i = 0; i < n; ++i) {
            MpComplex r;
            for (std::size_t k = 0; k < n; ++k) r += a(i, k) * out.vectors(k, j);
            r -= out.values[j] * out.vectors(i, j);
            MpReal v = c_abs(r);
            norm += v * v;
        }
        out.max_residual = mp_max(out.max_residual, mp_sqrt(norm));
    }
    return out;
}

MpReal eigenvalue_gap(const std::vector<MpComplex>& values) {
    if (values.size() < 2) throw std::domain_error("eigen: gap needs at least two eigenvalues");
    MpReal best(-1L);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            MpReal d = c_abs(values[i] - values[j]);
            if (best < MpReal(0L) || d < best) best = d;
        }
    return best;
}

}  // namespace qde

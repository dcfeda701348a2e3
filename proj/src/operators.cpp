#include "qde/operators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

namespace qde {

namespace {

std::string vec_str(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

/// q - q^(-1) as a Laurent polynomial.
Laurent q_minus_qinv(const VarTablePtr& vt, std::size_t qv) {
    return Laurent::monomial(vt, Monomial::var_pow2(vt->size(), qv, 2)) -
           Laurent::monomial(vt, Monomial::var_pow2(vt->size(), qv, -2));
}

/// Symmetric q^2-integer [k] = (q^(2k) - q^(-2k)) / (q^2 - q^(-2)).
Laurent q2_integer(const VarTablePtr& vt, std::size_t qv, long k) {
    Laurent r(vt);
    for (long j = 0; j < k; ++j) {
        std::int32_t doubled = static_cast<std::int32_t>(4 * (k - 1) - 8 * j);
        r += Laurent::monomial(vt, Monomial::var_pow2(vt->size(), qv, doubled));
    }
    return r;
}

/// Adapter bundling the element-type specific pieces of a wall-operator
/// build: operator blocks, scalar conversion, and the multiplicative unit.
template <class T>
struct WallKit {
    std::function<Mat<T>(const std::vector<FixedPoint>&, const std::vector<FixedPoint>&, const Arc&, const Slope&)>
        pmat;
    std::function<Mat<T>(const std::vector<FixedPoint>&, const std::vector<FixedPoint>&, const Arc&, const Slope&)>
        qmat;
    std::function<T(const RatFunc&)> scalar;
    T one;
};

}  // namespace

OperatorAssembler::OperatorAssembler(const QuiverContext& ctx, std::vector<int> v, BracketForm form,
                                     ScalarTwist twist, KappaShift shift)
    : ctx_(&ctx), v_(std::move(v)), sh_(ctx, form), twist_(twist), shift_(shift), wcv_(ctx.w_minus_cv(v_)) {
    if (static_cast<int>(v_.size()) != ctx.n())
        throw std::domain_error("OperatorAssembler: sector has wrong length");
}

const std::vector<FixedPoint>& OperatorAssembler::sector_basis(const std::vector<int>& sector) const {
    auto it = fp_cache_.find(sector);
    if (it != fp_cache_.end()) return it->second;
    std::vector<FixedPoint> fps;
    if (std::all_of(sector.begin(), sector.end(), [](int c) { return c >= 0; }))
        fps = ctx_->fixed_points(sector);
    return fp_cache_.emplace(sector, std::move(fps)).first->second;
}

Arc OperatorAssembler::arc_for_direction(const std::vector<int>& d) const {
    int n = ctx_->n();
    if (static_cast<int>(d.size()) != n) throw std::domain_error("OperatorAssembler: direction has wrong length");
    long total = 0;
    for (int x : d) {
        if (x < 0) throw std::domain_error("OperatorAssembler: direction " + vec_str(d) + " has a negative entry");
        total += x;
    }
    if (total == 0) throw std::domain_error("OperatorAssembler: the zero direction has no arc");
    for (int i = 1; i <= n; ++i) {
        Arc arc{i, i + static_cast<int>(total)};
        if (sh_.arc_content(arc) == d) return arc;
    }
    throw std::domain_error("OperatorAssembler: direction " + vec_str(d) + " is not the color count of any arc");
}

Monomial OperatorAssembler::kappa_dress(Monomial m) const {
    if (shift_ == KappaShift::off) return m;
    std::int64_t bump = 0;
    for (int c = 0; c < ctx_->n(); ++c) {
        std::int32_t e = m.e[ctx_->var_z(ctx_->z_index(c))];
        if (e != 0) bump -= static_cast<std::int64_t>(e) * wcv_[static_cast<std::size_t>(c)];
    }
    m.e[ctx_->var_q()] += static_cast<std::int32_t>(bump);
    return m;
}

Monomial OperatorAssembler::sl2_z_monomial(const std::vector<int>& d, long level) const {
    Monomial m(ctx_->table()->size());
    for (int c = 0; c < ctx_->n(); ++c)
        if (d[static_cast<std::size_t>(c)] != 0)
            m.e[ctx_->var_z(ctx_->z_index(c))] -= static_cast<std::int32_t>(2 * d[static_cast<std::size_t>(c)]);
    m = kappa_dress(m);
    m.e[ctx_->var_p()] -= static_cast<std::int32_t>(2 * level);
    return m;
}

RatFunc OperatorAssembler::sl2_term_scalar(long n, const std::vector<int>& d, long level, bool at_inf) const {
    const VarTablePtr& vt = ctx_->table();
    std::size_t qv = ctx_->var_q();
    Laurent num = q_minus_qinv(vt, qv).pow(n);
    if (n % 2 == 1) num = -num;
    Laurent den = Laurent::one(vt);
    for (long k = 1; k <= n; ++k) den *= q2_integer(vt, qv, k);
    if (!at_inf) {
        Monomial zm = sl2_z_monomial(d, level);
        long total = std::accumulate(d.begin(), d.end(), 0L);
        int gamma = ctx_->mod_color(arc_for_direction(d).i);
        for (long nu = 1; nu <= n; ++nu) {
            Monomial factor = zm;
            if (twist_ == ScalarTwist::weighted) {
                long nn = static_cast<long>(ctx_->n()) * ctx_->n();
                long dtw = nu * ((nn * level - 1) * total + 2 * d[0]) - 4 -
                           (gamma == ctx_->mod_color(1) ? 4 : 0);
                factor.e[qv] += static_cast<std::int32_t>(dtw);
            }
            den *= Laurent::one(vt) - Laurent::monomial(vt, factor);
        }
    }
    return RatFunc(num, den);
}

RatFunc OperatorAssembler::heis_mode_scalar(long k, long b, const Rat& prim_level, bool at_inf) const {
    const VarTablePtr& vt = ctx_->table();
    std::size_t qv = ctx_->var_q();
    Laurent num = (Laurent::monomial(vt, Monomial::var_pow2(vt->size(), qv, static_cast<std::int32_t>(2 * k))) -
                   Laurent::monomial(vt, Monomial::var_pow2(vt->size(), qv, static_cast<std::int32_t>(-2 * k))))
                      .scaled(Rat(1, k));
    std::int32_t wtw = twist_ == ScalarTwist::weighted ? static_cast<std::int32_t>(-k * b * ctx_->n()) : 0;
    if (wtw != 0) num = num.mono_mul(Monomial::var_pow2(vt->size(), qv, wtw));
    if (at_inf) return RatFunc(num);
    Monomial zm(vt->size());
    for (int c = 0; c < ctx_->n(); ++c)
        zm.e[ctx_->var_z(ctx_->z_index(c))] -= static_cast<std::int32_t>(2 * k * b);
    zm = kappa_dress(zm);
    Rat pexp = Rat(2 * k * b) * prim_level;
    if (pexp.get_den() != 1)
        throw std::domain_error("OperatorAssembler: non-integral difference power on a periodic wall");
    zm.e[ctx_->var_p()] += static_cast<std::int32_t>(pexp.get_num().get_si());
    zm.e[qv] += wtw;
    Laurent den = Laurent::one(vt) - Laurent::monomial(vt, zm);
    return RatFunc(num, den);
}

template <class T, class Kit>
Mat<T> OperatorAssembler::build_sl2_family(const Kit& kit, const std::vector<int>& d, const Slope& point,
                                           bool at_inf) const {
    Arc arc = arc_for_direction(d);
    if (!sh_.on_wall(arc, point))
        throw std::domain_error("OperatorAssembler: slope point is off the wall of direction " + vec_str(d));
    Rat lev(0);
    for (std::size_t c = 0; c < d.size(); ++c) lev += point[c] * d[c];
    long level = rat_to_long(lev);
    const auto& base = sector_basis(v_);
    Mat<T> b = Mat<T>::identity(base.size(), kit.one);
    std::vector<int> cur = v_;
    Mat<T> pcum = Mat<T>::identity(base.size(), kit.one);
    Mat<T> qcum = pcum;
    for (long n = 1;; ++n) {
        if (n > 64) throw std::domain_error("OperatorAssembler: raising ladder did not terminate");
        std::vector<int> next = cur;
        for (std::size_t c = 0; c < next.size(); ++c) next[c] += d[c];
        const auto& to = sector_basis(next);
        if (to.empty()) break;
        const auto& from = sector_basis(cur);
        pcum = kit.pmat(to, from, arc, point) * pcum;
        if (pcum.is_zero()) break;
        qcum = qcum * kit.qmat(from, to, arc, point);
        b += (qcum * pcum).scaled(kit.scalar(sl2_term_scalar(n, d, level, at_inf)));
        cur = next;
    }
    return b;
}

template <class T, class Kit>
Mat<T> OperatorAssembler::build_heis(const Kit& kit, const Wall& wall, const Slope& point, bool at_inf) const {
    int n = ctx_->n();
    for (int c : wall.dprim)
        if (c != 1) throw std::domain_error("OperatorAssembler: periodic wall direction is not the all-ones vector");
    long b_den = static_cast<long>(wall.level.get_den().get_si());
    Arc probe{1, 1 + static_cast<int>(b_den) * n};
    if (!sh_.on_wall(probe, point))
        throw std::domain_error("OperatorAssembler: slope point is off the periodic wall");
    std::vector<long> modes;
    for (int g : wall.ks) {
        if (g % b_den != 0)
            throw std::domain_error("OperatorAssembler: periodic wall multiple is not divisible by the level denominator");
        modes.push_back(g / b_den);
    }
    std::sort(modes.begin(), modes.end());
    long minv = *std::min_element(v_.begin(), v_.end());
    long budget = minv / b_den;
    std::map<long, RatFunc> mode_scalar;
    for (long k : modes) mode_scalar.emplace(k, heis_mode_scalar(k, b_den, wall.level, at_inf));

    struct SlotRef {
        int h;
        long k;
    };
    std::vector<SlotRef> slots;
    for (int h = 1; h <= n; ++h)
        for (long k : modes) slots.push_back({h, k});

    const auto& base = sector_basis(v_);
    Mat<T> b = Mat<T>::identity(base.size(), kit.one);
    std::vector<long> assign(slots.size(), 0);

    auto emit = [&]() {
        RatFunc coeff = RatFunc::one(ctx_->table());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            long j = assign[i];
            if (j == 0) continue;
            Rat factorial(1);
            for (long f = 2; f <= j; ++f) factorial *= f;
            Rat sc = Rat(j % 2 == 1 ? -1 : 1) / factorial;
            coeff *= mode_scalar.at(slots[i].k).pow(j).scaled(sc);
        }
        std::vector<int> cur = v_;
        Mat<T> low = Mat<T>::identity(base.size(), kit.one);
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (long rep = 0; rep < assign[i]; ++rep) {
                Arc arc{slots[i].h, slots[i].h + static_cast<int>(slots[i].k * b_den) * n};
                std::vector<int> next = cur;
                for (int& x : next) x -= static_cast<int>(slots[i].k * b_den);
                low = kit.qmat(sector_basis(next), sector_basis(cur), arc, point) * low;
                cur = next;
            }
        Mat<T> high = Mat<T>::identity(sector_basis(cur).size(), kit.one);
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (long rep = 0; rep < assign[i]; ++rep) {
                Arc arc{slots[i].h, slots[i].h + static_cast<int>(slots[i].k * b_den) * n};
                std::vector<int> next = cur;
                for (int& x : next) x += static_cast<int>(slots[i].k * b_den);
                high = kit.pmat(sector_basis(next), sector_basis(cur), arc, point) * high;
                cur = next;
            }
        b += (high * low).scaled(kit.scalar(coeff));
    };

    std::function<void(std::size_t, long)> rec = [&](std::size_t idx, long used) {
        if (idx == slots.size()) {
            if (used > 0) emit();
            return;
        }
        for (long j = 0; used + j * slots[idx].k <= budget; ++j) {
            assign[idx] = j;
            rec(idx + 1, used + j * slots[idx].k);
        }
        assign[idx] = 0;
    };
    rec(0, 0);
    return b;
}

template <class T, class Kit>
Mat<T> OperatorAssembler::build_wall(const Kit& kit, const Wall& wall, const Slope& point, bool at_inf) const {
    if (static_cast<int>(point.size()) != ctx_->n())
        throw std::domain_error("OperatorAssembler: slope point has wrong length");
    if (wall.kind == WallKind::heisenberg) return build_heis<T>(kit, wall, point, at_inf);
    Mat<T> b = Mat<T>::identity(sector_basis(v_).size(), kit.one);
    for (int k : wall.ks) {
        std::vector<int> d(wall.dprim.size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = k * wall.dprim[c];
        b = b * build_sl2_family<T>(kit, d, point, at_inf);
    }
    return b;
}

namespace {

WallKit<RatFunc> exact_kit(const ShuffleEval& sh, const VarTablePtr& vt) {
    WallKit<RatFunc> kit;
    kit.pmat = [&sh](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, const Arc& arc,
                     const Slope& m) { return sh.p_matrix(to, from, arc, m, Normalization::core); };
    kit.qmat = [&sh](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, const Arc& arc,
                     const Slope& m) { return sh.q_matrix(to, from, arc, m, Normalization::core); };
    kit.scalar = [](const RatFunc& s) { return s; };
    kit.one = RatFunc::one(vt);
    return kit;
}

WallKit<MpComplex> numeric_kit(const ShuffleEval& sh, const NumEval& ev, ExecPolicy policy) {
    WallKit<MpComplex> kit;
    kit.pmat = [&sh, &ev, policy](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from,
                                  const Arc& arc, const Slope& m) {
        return sh.p_matrix_num(ev, to, from, arc, m, policy, Normalization::core);
    };
    kit.qmat = [&sh, &ev, policy](const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from,
                                  const Arc& arc, const Slope& m) {
        return sh.q_matrix_num(ev, to, from, arc, m, policy, Normalization::core);
    };
    kit.scalar = [&ev](const RatFunc& s) { return ev(s); };
    kit.one = MpComplex(MpReal(1L));
    return kit;
}

}  // namespace

Mat<RatFunc> OperatorAssembler::wall_operator(const Wall& wall, const Slope& point) const {
    return build_wall<RatFunc>(exact_kit(sh_, ctx_->table()), wall, point, false);
}

Mat<RatFunc> OperatorAssembler::wall_operator_at_infinity(const Wall& wall, const Slope& point) const {
    return build_wall<RatFunc>(exact_kit(sh_, ctx_->table()), wall, point, true);
}

Mat<MpComplex> OperatorAssembler::wall_operator_num(const NumEval& ev, const Wall& wall, const Slope& point,
                                                    ExecPolicy policy) const {
    return build_wall<MpComplex>(numeric_kit(sh_, ev, policy), wall, point, false);
}

Mat<MpComplex> OperatorAssembler::wall_operator_at_infinity_num(const NumEval& ev, const Wall& wall,
                                                                const Slope& point, ExecPolicy policy) const {
    return build_wall<MpComplex>(numeric_kit(sh_, ev, policy), wall, point, true);
}

Mat<RatFunc> OperatorAssembler::l_action(const std::vector<int>& L) const {
    const auto& base = basis();
    Mat<RatFunc> m(base.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        m(i, i) = RatFunc(Laurent::monomial(ctx_->table(), ctx_->line_bundle_eigenvalue(base[i], L)));
    return m;
}

Mat<MpComplex> OperatorAssembler::l_action_num(const NumEval& ev, const std::vector<int>& L) const {
    const auto& base = basis();
    Mat<MpComplex> m(base.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i) m(i, i) = ev(ctx_->line_bundle_eigenvalue(base[i], L));
    return m;
}

DifferenceOperator OperatorAssembler::difference_operator(const std::vector<int>& L, const PathTrace& path) const {
    DifferenceOperator op;
    op.degrees = L;
    op.path = path;
    op.line_action = l_action(L);
    Mat<RatFunc> m = op.line_action;
    for (auto it = path.crossings.rbegin(); it != path.crossings.rend(); ++it)
        m = m * wall_operator(it->wall, it->point);
    op.matrix = std::move(m);
    return op;
}

Mat<RatFunc> OperatorAssembler::difference_operator_at_infinity(const std::vector<int>& L,
                                                                const PathTrace& path) const {
    Mat<RatFunc> m = l_action(L);
    for (auto it = path.crossings.rbegin(); it != path.crossings.rend(); ++it)
        m = m * wall_operator_at_infinity(it->wall, it->point);
    return m;
}

Mat<MpComplex> OperatorAssembler::difference_operator_num(const NumEval& ev, const std::vector<int>& L,
                                                          const PathTrace& path, ExecPolicy policy) const {
    Mat<MpComplex> m = l_action_num(ev, L);
    for (auto it = path.crossings.rbegin(); it != path.crossings.rend(); ++it)
        m = m * wall_operator_num(ev, it->wall, it->point, policy);
    return m;
}

Mat<MpComplex> OperatorAssembler::difference_operator_at_infinity_num(const NumEval& ev, const std::vector<int>& L,
                                                                      const PathTrace& path,
                                                                      ExecPolicy policy) const {
    Mat<MpComplex> m = l_action_num(ev, L);
    for (auto it = path.crossings.rbegin(); it != path.crossings.rend(); ++it)
        m = m * wall_operator_at_infinity_num(ev, it->wall, it->point, policy);
    return m;
}

namespace {

long z_total_deg(const QuiverContext& ctx, const Monomial& m) {
    long s = 0;
    for (int i = 1; i <= ctx.n(); ++i) s += m.e[ctx.var_z(static_cast<std::size_t>(i))];
    return s;
}

/// Terms of extremal (minimal or maximal) total z-degree, with the degree.
std::pair<long, Laurent> extremal_z_part(const QuiverContext& ctx, const Laurent& f, bool take_min) {
    long best = 0;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        (void)c;
        long d = z_total_deg(ctx, m);
        if (first || (take_min ? d < best : d > best)) {
            best = d;
            first = false;
        }
    }
    Laurent part(f.table());
    for (const auto& [m, c] : f.terms())
        if (z_total_deg(ctx, m) == best) part += Laurent::monomial(f.table(), m, c);
    return {best, part};
}

RatFunc z_limit(const QuiverContext& ctx, const RatFunc& f, bool to_zero) {
    if (f.is_zero()) return f;
    auto [a, np] = extremal_z_part(ctx, f.num(), to_zero);
    auto [b, dp] = extremal_z_part(ctx, f.den(), to_zero);
    bool vanishes = to_zero ? a > b : a < b;
    if (vanishes) return RatFunc::zero(f.table());
    bool diverges = to_zero ? a < b : a > b;
    if (diverges) throw std::domain_error("z limit: divergent entry");
    RatFunc r(np, dp);
    for (int i = 1; i <= ctx.n(); ++i) {
        std::size_t var = ctx.var_z(static_cast<std::size_t>(i));
        if (r.num().involves(var) || r.den().involves(var))
            throw std::domain_error("z limit: depends on the direction of approach");
    }
    return r;
}

Mat<RatFunc> z_limit(const QuiverContext& ctx, const Mat<RatFunc>& m, bool to_zero) {
    Mat<RatFunc> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = z_limit(ctx, m(i, j), to_zero);
    return r;
}

}  // namespace

RatFunc z_zero_limit(const QuiverContext& ctx, const RatFunc& f) { return z_limit(ctx, f, true); }
RatFunc z_infinity_limit(const QuiverContext& ctx, const RatFunc& f) { return z_limit(ctx, f, false); }
Mat<RatFunc> z_zero_limit(const QuiverContext& ctx, const Mat<RatFunc>& m) { return z_limit(ctx, m, true); }
Mat<RatFunc> z_infinity_limit(const QuiverContext& ctx, const Mat<RatFunc>& m) { return z_limit(ctx, m, false); }

SpectralData spectral_certificate(const Mat<MpComplex>& m, const MpReal& residual_tol, const MpReal& gap_tol) {
    EigenResult r = eigen_decompose(m);
    MpReal gap = eigenvalue_gap(r.values);
    if (!(r.max_residual <= residual_tol))
        throw std::domain_error("spectral_certificate: residual " + r.max_residual.to_string(6) +
                                " exceeds the tolerance");
    if (!(gap >= gap_tol))
        throw std::domain_error("spectral_certificate: eigenvalue collision, minimum gap " + gap.to_string(6));
    return SpectralData{r.values, r.vectors, r.max_residual, gap};
}

}  // namespace qde

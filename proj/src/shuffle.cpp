#include "qde/shuffle.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qde {
namespace {

/// One multiplicative factor of an entry, deformed by the regularization
/// parameter: the argument is mono * eps^h. Brackets follow the configured
/// normalization; literal factors are always 1 - arg.
struct EFactor {
    bool is_bracket;
    Monomial mono;
    int h;
};

struct FactorList {
    Monomial pre;  // monomial prefactor
    int pre_h = 0;
    std::vector<EFactor> num, den;
};

/// Row of generalized binomial coefficients C(r, 0..count-1).
std::vector<Rat> binom_row(const Rat& r, int count) {
    std::vector<Rat> b(static_cast<std::size_t>(count));
    b[0] = 1;
    for (int k = 1; k < count; ++k) b[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k - 1)] * (r - (k - 1)) / k;
    return b;
}

/// Square root of a monomial; the argument must have integral exponents.
Monomial mono_half(const Monomial& m) {
    Monomial r = m;
    for (auto& e : r.e) {
        if (e % 2 != 0) throw std::domain_error("Shuffle: bracket argument off the half-integer lattice");
        e /= 2;
    }
    return r;
}

/// Evaluator over exact Laurent-polynomial coefficients. Entries stay in the
/// polynomial ring until a single final division produces the rational value.
struct SymEv {
    using C = Laurent;
    using R = RatFunc;
    VarTablePtr vt;

    C mono(const Monomial& m) const { return Laurent::monomial(vt, m); }
    C from_rat(const Rat& r) const { return Laurent::constant(vt, r); }
    static C scale(const C& x, const Rat& r) { return x.scaled(r); }
};

/// Evaluator over high-precision complex numbers at a fixed specialization.
struct NumEv {
    using C = MpComplex;
    using R = MpComplex;
    const NumEval* ev;

    C mono(const Monomial& m) const { return (*ev)(m); }
    C from_rat(const Rat& r) const { return C(MpReal(r), MpReal(0L)); }
    static C scale(const C& x, const Rat& r) { return x * C(MpReal(r), MpReal(0L)); }
};

/// Truncated power series in the deformation delta = eps - 1. Stores exactly
/// `width` coefficients starting at delta^val; val is the structural
/// valuation (leading coefficients of factors are nonzero by construction).
template <class C>
struct Ser {
    int val = 0;
    std::vector<C> c;
};

template <class C>
Ser<C> ser_mul(const Ser<C>& a, const Ser<C>& b, int width, const C& zero) {
    Ser<C> r;
    r.val = a.val + b.val;
    r.c.assign(static_cast<std::size_t>(width), zero);
    for (int i = 0; i < width && i < static_cast<int>(a.c.size()); ++i)
        for (int j = 0; j + i < width && j < static_cast<int>(b.c.size()); ++j)
            r.c[static_cast<std::size_t>(i + j)] =
                r.c[static_cast<std::size_t>(i + j)] + a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    return r;
}

template <class C>
void ser_add_into(Ser<C>& acc, const Ser<C>& b, int width, const C& zero) {
    if (b.val < acc.val) {
        int shift = acc.val - b.val;
        std::vector<C> nc(static_cast<std::size_t>(width), zero);
        for (int k = 0; k + shift < width && k < static_cast<int>(acc.c.size()); ++k)
            nc[static_cast<std::size_t>(k + shift)] = acc.c[static_cast<std::size_t>(k)];
        acc.c = std::move(nc);
        acc.val = b.val;
    }
    int shift = b.val - acc.val;
    for (int k = 0; k < static_cast<int>(b.c.size()) && k + shift < static_cast<int>(acc.c.size()); ++k)
        acc.c[static_cast<std::size_t>(k + shift)] =
            acc.c[static_cast<std::size_t>(k + shift)] + b.c[static_cast<std::size_t>(k)];
}

/// Reciprocal of a numeric series with nonzero constant term, to `width`
/// coefficients; only needed on the numeric route.
Ser<MpComplex> ser_recip_num(const Ser<MpComplex>& a, int width) {
    Ser<MpComplex> r;
    r.val = -a.val;
    r.c.assign(static_cast<std::size_t>(width), MpComplex());
    MpComplex r0 = c_inv(a.c[0]);
    r.c[0] = r0;
    for (int k = 1; k < width; ++k) {
        MpComplex s;
        for (int m = 1; m <= k && m < static_cast<int>(a.c.size()); ++m)
            s = s + a.c[static_cast<std::size_t>(m)] * r.c[static_cast<std::size_t>(k - m)];
        r.c[static_cast<std::size_t>(k)] = MpComplex() - r0 * s;
    }
    return r;
}

/// Series of one factor. Vanishing at eps = 1 is decided structurally: the
/// factor vanishes iff its undeformed argument is the trivial monomial.
template <class EV>
Ser<typename EV::C> factor_series(const EV& ev, const EFactor& f, BracketForm form, int width) {
    bool trivial = f.mono.is_one();
    if (trivial && f.h == 0)
        throw std::domain_error("Shuffle: identically vanishing factor carries no deformation");
    Ser<typename EV::C> r;
    r.c.reserve(static_cast<std::size_t>(width));
    int extra = trivial ? 1 : 0;  // leading coefficient cancels exactly; start one order up
    r.val = extra;
    if (f.is_bracket && form == BracketForm::balanced) {
        Monomial half = mono_half(f.mono);
        typename EV::C rootp = ev.mono(half);
        typename EV::C rootm = ev.mono(half.inverse());
        auto bp = binom_row(Rat(f.h) / 2, width + extra);
        auto bm = binom_row(Rat(-f.h) / 2, width + extra);
        for (int k = extra; k < width + extra; ++k)
            r.c.push_back(EV::scale(rootp, bp[static_cast<std::size_t>(k)]) -
                          EV::scale(rootm, bm[static_cast<std::size_t>(k)]));
    } else {
        typename EV::C mval = ev.mono(f.mono);
        auto b = binom_row(Rat(f.h), width + extra);
        for (int k = extra; k < width + extra; ++k) {
            typename EV::C term = EV::scale(mval, -b[static_cast<std::size_t>(k)]);
            if (k == 0) term = ev.from_rat(1) + term;
            r.c.push_back(term);
        }
    }
    return r;
}

/// Series of the monomial prefactor pre * eps^pre_h.
template <class EV>
Ser<typename EV::C> pre_series(const EV& ev, const Monomial& pre, int pre_h, int width) {
    Ser<typename EV::C> r;
    r.val = 0;
    r.c.reserve(static_cast<std::size_t>(width));
    auto b = binom_row(Rat(pre_h), width);
    typename EV::C pv = ev.mono(pre);
    for (int k = 0; k < width; ++k) r.c.push_back(EV::scale(pv, b[static_cast<std::size_t>(k)]));
    return r;
}

bool same_factor(const EFactor& a, const EFactor& b) {
    return a.is_bracket == b.is_bracket && a.h == b.h && a.mono == b.mono;
}

/// Remove factors occurring in both lists (equal argument and deformation);
/// their ratio is identically one, so dropping the pair is exact.
void cancel_factors(std::vector<EFactor>& num, std::vector<EFactor>& den) {
    for (auto it = num.begin(); it != num.end();) {
        auto jt = std::find_if(den.begin(), den.end(), [&](const EFactor& d) { return same_factor(*it, d); });
        if (jt != den.end()) {
            den.erase(jt);
            it = num.erase(it);
        } else {
            ++it;
        }
    }
}

/// Multiset difference a \ b; every element of b must occur in a.
std::vector<EFactor> multiset_diff(std::vector<EFactor> a, const std::vector<EFactor>& b) {
    for (const auto& f : b) {
        auto it = std::find_if(a.begin(), a.end(), [&](const EFactor& x) { return same_factor(x, f); });
        if (it == a.end()) throw std::domain_error("Shuffle: denominator bookkeeping out of sync");
        a.erase(it);
    }
    return a;
}

/// Everything needed to evaluate one operator entry, independent of the
/// coefficient domain.
struct EntryPlan {
    Monomial pre;  // slope prefactor
    std::vector<Monomial> bchi;           // characters of the added/removed boxes
    std::vector<int> bg;                  // deformation exponents, distinct and nonzero
    std::vector<int> slot_exp;            // per-slot monomial exponents
    std::vector<std::vector<int>> cands;  // color-compatible boxes per slot
    bool raising = true;
    int qvar = 0, tvar = 1;
    FactorList external;  // assignment-independent boundary factors
};

/// Append the interaction factors for ordered arguments X (first slot of the
/// ratio) and Y with colors cX, cY. hX/hY are the deformation exponents of
/// the two characters; n is the number of colors.
void push_zeta(std::vector<EFactor>& num, std::vector<EFactor>& den, const QuiverContext& ctx, const Monomial& chiX,
               int hX, int cX, const Monomial& chiY, int hY, int cY) {
    std::size_t nv = chiX.e.size();
    auto qpow = [&](std::int32_t d) { return Monomial::var_pow2(nv, ctx.var_q(), d); };
    auto tpow = [&](std::int32_t d) { return Monomial::var_pow2(nv, ctx.var_t(), d); };
    if (cX == ctx.mod_color(cY - 1))
        num.push_back({true, chiY / (qpow(2) * tpow(2) * chiX), hY - hX});
    if (cX == ctx.mod_color(cY + 1))
        num.push_back({true, (tpow(2) * chiY) / (qpow(2) * chiX), hY - hX});
    if (cX == cY) {
        den.push_back({true, chiY / chiX, hY - hX});
        den.push_back({true, chiY / (qpow(4) * chiX), hY - hX});
    }
}

std::vector<int> arc_colors(const QuiverContext& ctx, const Arc& arc) {
    std::vector<int> c;
    c.reserve(static_cast<std::size_t>(arc.length()));
    for (int a = arc.i; a < arc.j; ++a) c.push_back(ctx.mod_color(a));
    return c;
}

Rat arc_index(const QuiverContext& ctx, const Arc& arc, const Slope& m) {
    Rat run = 0, prev_floor = 0, ind = 0;
    for (int a = arc.i; a < arc.j; ++a) {
        run += m[static_cast<std::size_t>(ctx.mod_color(a))];
        ind += run - prev_floor;
        prev_floor = rat_floor(run);
    }
    return ind;
}

/// Build the evaluation plan; nullopt when the entry is structurally zero.
std::optional<EntryPlan> build_plan(const QuiverContext& ctx, const FixedPoint& big, const FixedPoint& small,
                                    const Arc& arc, const Slope& m, bool raising, Normalization norm) {
    int len = arc.length();
    if (len <= 0) throw std::domain_error("Shuffle: arc must be nonempty");
    if (static_cast<int>(m.size()) != ctx.n()) throw std::domain_error("Shuffle: slope size must match the color count");
    if (!QuiverContext::contains(big, small)) return std::nullopt;
    std::vector<ColoredBox> skew = ctx.skew(big, small);
    if (static_cast<int>(skew.size()) != len) return std::nullopt;

    std::vector<int> colors = arc_colors(ctx, arc);
    std::vector<int> want(static_cast<std::size_t>(ctx.n()), 0);
    for (int c : colors) ++want[static_cast<std::size_t>(c)];
    std::vector<int> have(static_cast<std::size_t>(ctx.n()), 0);
    for (const auto& b : skew) ++have[static_cast<std::size_t>(ctx.box_color(b))];
    if (want != have) return std::nullopt;

    EntryPlan plan;
    plan.raising = raising;
    plan.qvar = static_cast<int>(ctx.var_q());
    plan.tvar = static_cast<int>(ctx.var_t());
    std::size_t nv = ctx.table()->size();

    // Slope data: running floor differences give the slot exponents.
    Rat run = 0, prev_floor = 0;
    plan.slot_exp.reserve(static_cast<std::size_t>(len));
    for (int a = arc.i; a < arc.j; ++a) {
        run += m[static_cast<std::size_t>(ctx.mod_color(a))];
        Rat fl = rat_floor(run);
        long e = rat_to_long(raising ? fl - prev_floor : prev_floor - fl);
        plan.slot_exp.push_back(static_cast<int>(e));
        prev_floor = fl;
    }
    plan.pre = Monomial::one(nv);
    if (raising) plan.pre = Monomial::var_pow2(nv, ctx.var_q(), static_cast<std::int32_t>(2 * len));
    if (norm == Normalization::full) {
        Rat texp2 = (raising ? -arc_index(ctx, arc, m) : arc_index(ctx, arc, m)) * 2;
        if (texp2.get_den() != 1)
            throw std::domain_error(
                "Shuffle: slope index t-exponent leaves the half-integer lattice; use the core normalization");
        plan.pre = plan.pre * Monomial::var_pow2(nv, ctx.var_t(), static_cast<std::int32_t>(rat_to_long(texp2)));
    }

    // Added/removed boxes with distinct nonzero deformation exponents.
    plan.bchi.reserve(skew.size());
    plan.bg.reserve(skew.size());
    std::vector<int> bcol;
    for (std::size_t b = 0; b < skew.size(); ++b) {
        plan.bchi.push_back(ctx.chi(skew[b]));
        plan.bg.push_back(static_cast<int>(b) + 1);
        bcol.push_back(ctx.box_color(skew[b]));
    }
    plan.cands.resize(static_cast<std::size_t>(len));
    for (int s = 0; s < len; ++s)
        for (std::size_t b = 0; b < skew.size(); ++b)
            if (bcol[b] == colors[static_cast<std::size_t>(s)]) plan.cands[static_cast<std::size_t>(s)].push_back(static_cast<int>(b));

    // Boundary factors. Raising: interactions with the boxes of the smaller
    // point plus one framing bracket per added box. Lowering: interactions
    // with every box of the larger point (concrete copies, including the
    // removed boxes themselves) plus framing brackets, all inverted.
    FactorList ext;
    ext.pre = Monomial::one(nv);
    auto qpow = [&](std::int32_t d) { return Monomial::var_pow2(nv, ctx.var_q(), d); };
    const std::vector<ColoredBox> base = ctx.boxes(raising ? small : big);
    for (std::size_t b = 0; b < skew.size(); ++b) {
        const Monomial& cb = plan.bchi[b];
        int g = plan.bg[b];
        int cc = bcol[b];
        for (const auto& box : base) {
            Monomial cbox = ctx.chi(box);
            int ccol = ctx.box_color(box);
            if (raising)
                push_zeta(ext.num, ext.den, ctx, cb, g, cc, cbox, 0, ccol);
            else
                push_zeta(ext.num, ext.den, ctx, cbox, 0, ccol, cb, g, cc);
        }
        for (std::size_t k = 0; k < ctx.frames(); ++k) {
            if (ctx.framing_color(k) != cc) continue;  // framings pair with same-color boxes only
            Monomial u = Monomial::var_pow2(nv, ctx.var_u(k), 2);
            if (raising)
                ext.num.push_back({true, u / (qpow(2) * cb), -g});
            else
                ext.num.push_back({true, cb / (qpow(2) * u), g});
        }
    }
    if (!raising) std::swap(ext.num, ext.den);
    plan.external = std::move(ext);
    return plan;
}

/// Factor list of one slot assignment (template part only).
FactorList assignment_list(const QuiverContext& ctx, const EntryPlan& plan, const Arc& arc,
                           const std::vector<int>& pick) {
    int len = arc.length();
    std::size_t nv = ctx.table()->size();
    FactorList fl;
    fl.pre = plan.pre;
    auto qpow = [&](std::int32_t d) { return Monomial::var_pow2(nv, ctx.var_q(), d); };
    auto tpow = [&](std::int32_t d) { return Monomial::var_pow2(nv, ctx.var_t(), d); };
    for (int s = 0; s < len; ++s) {
        int e = plan.slot_exp[static_cast<std::size_t>(s)];
        if (e == 0) continue;
        fl.pre = fl.pre * plan.bchi[static_cast<std::size_t>(pick[static_cast<std::size_t>(s)])].pow(e);
        fl.pre_h += e * plan.bg[static_cast<std::size_t>(pick[static_cast<std::size_t>(s)])];
    }
    for (int s = 1; s < len; ++s) {
        const Monomial& cur = plan.bchi[static_cast<std::size_t>(pick[static_cast<std::size_t>(s)])];
        const Monomial& prv = plan.bchi[static_cast<std::size_t>(pick[static_cast<std::size_t>(s - 1)])];
        int gc = plan.bg[static_cast<std::size_t>(pick[static_cast<std::size_t>(s)])];
        int gp = plan.bg[static_cast<std::size_t>(pick[static_cast<std::size_t>(s - 1)])];
        if (plan.raising)
            fl.den.push_back({false, (qpow(2) * cur) / (tpow(2) * prv), gc - gp});
        else
            fl.den.push_back({false, (qpow(2) * tpow(2) * prv) / cur, gp - gc});
    }
    for (int s = 0; s < len; ++s)
        for (int r = s + 1; r < len; ++r) {
            int bs = pick[static_cast<std::size_t>(s)], br = pick[static_cast<std::size_t>(r)];
            int cs = ctx.mod_color(arc.i + s), cr = ctx.mod_color(arc.i + r);
            if (plan.raising)
                push_zeta(fl.num, fl.den, ctx, plan.bchi[static_cast<std::size_t>(br)], plan.bg[static_cast<std::size_t>(br)], cr,
                          plan.bchi[static_cast<std::size_t>(bs)], plan.bg[static_cast<std::size_t>(bs)], cs);
            else
                push_zeta(fl.num, fl.den, ctx, plan.bchi[static_cast<std::size_t>(bs)], plan.bg[static_cast<std::size_t>(bs)], cs,
                          plan.bchi[static_cast<std::size_t>(br)], plan.bg[static_cast<std::size_t>(br)], cr);
        }
    return fl;
}

void enumerate_assignments(const std::vector<std::vector<int>>& cands, std::vector<std::vector<int>>& out) {
    std::vector<int> pick(cands.size(), -1);
    std::vector<char> used(cands.size(), 0);
    auto rec = [&](auto&& self, std::size_t s) -> void {
        if (s == cands.size()) {
            out.push_back(pick);
            return;
        }
        for (int b : cands[s]) {
            if (used[static_cast<std::size_t>(b)]) continue;
            pick[s] = b;
            used[static_cast<std::size_t>(b)] = 1;
            self(self, s + 1);
            used[static_cast<std::size_t>(b)] = 0;
        }
    };
    rec(rec, 0);
}

/// Extract the value at delta = 0 of N/D. Exact route: the valuations of N
/// and D are exact (leading zero coefficients of N are stripped as exact
/// zeros; D is a product of factors with nonzero leading terms), so the
/// comparison decides regularity and the value is one polynomial division.
RatFunc finalize_entry(const SymEv& ev, const Ser<Laurent>& n, const Ser<Laurent>& d) {
    std::size_t lead = 0;
    while (lead < n.c.size() && n.c[lead].is_zero()) ++lead;
    if (lead == n.c.size()) return RatFunc::zero(ev.vt);
    int vn = n.val + static_cast<int>(lead);
    if (vn > d.val) return RatFunc::zero(ev.vt);
    if (vn < d.val) throw std::domain_error("Shuffle: singular part of an entry failed to cancel exactly");
    return RatFunc(n.c[lead], d.c[0]);
}

/// Numeric route: divide by the denominator series (nonzero constant term
/// once shifted to its structural valuation) and read off the coefficient;
/// the principal coefficients must be negligible.
MpComplex finalize_entry(const NumEv&, const Ser<MpComplex>& n, const Ser<MpComplex>& d) {
    int width = static_cast<int>(d.c.size());
    Ser<MpComplex> dh = d;
    dh.val = 0;
    Ser<MpComplex> r = ser_mul(n, ser_recip_num(dh, width), width, MpComplex());
    int idx = d.val - r.val;
    if (idx < 0) return MpComplex();
    if (idx >= static_cast<int>(r.c.size())) throw std::domain_error("Shuffle: series width exhausted");
    MpComplex value = r.c[static_cast<std::size_t>(idx)];
    MpReal bound = (MpReal(1L) + c_abs(value)) * MpReal("1e-25");
    for (int k = 0; k < idx; ++k)
        if (!(c_abs(r.c[static_cast<std::size_t>(k)]) <= bound))
            throw std::domain_error("Shuffle: singular part of an entry failed to cancel numerically");
    return value;
}

template <class EV>
typename EV::R eval_entry(const EV& ev, const QuiverContext& ctx, BracketForm form, const FixedPoint& big,
                          const FixedPoint& small, const Arc& arc, const Slope& m, bool raising, Normalization norm) {
    using C = typename EV::C;
    auto plan = build_plan(ctx, big, small, arc, m, raising, norm);
    std::vector<std::vector<int>> picks;
    if (plan) enumerate_assignments(plan->cands, picks);
    const C czero = ev.from_rat(0);
    if (!plan || picks.empty()) return finalize_entry(ev, Ser<C>{1, {}}, Ser<C>{0, {ev.from_rat(1)}});

    // Merge the shared boundary factors into each assignment and cancel
    // syntactically equal numerator/denominator factors; an identically zero
    // numerator factor kills the assignment, one in a denominator is a
    // genuine division by zero.
    std::vector<FactorList> live;
    live.reserve(picks.size());
    for (const auto& pk : picks) {
        FactorList fl = assignment_list(ctx, *plan, arc, pk);
        fl.pre = fl.pre * plan->external.pre;
        fl.pre_h += plan->external.pre_h;
        fl.num.insert(fl.num.end(), plan->external.num.begin(), plan->external.num.end());
        fl.den.insert(fl.den.end(), plan->external.den.begin(), plan->external.den.end());
        cancel_factors(fl.num, fl.den);
        for (const auto& f : fl.den)
            if (f.mono.is_one() && f.h == 0)
                throw std::domain_error("Shuffle: identically vanishing factor carries no deformation");
        bool dead = false;
        for (const auto& f : fl.num)
            if (f.mono.is_one() && f.h == 0) {
                dead = true;
                break;
            }
        if (!dead) live.push_back(std::move(fl));
    }
    if (live.empty()) return finalize_entry(ev, Ser<C>{1, {}}, Ser<C>{0, {ev.from_rat(1)}});

    // Union of the denominator multisets; every assignment is expanded over
    // it, so the sum needs a single denominator series and one division.
    std::vector<EFactor> du;
    for (const auto& fl : live) {
        std::vector<char> used(du.size(), 0);
        std::vector<EFactor> missing;
        for (const auto& f : fl.den) {
            bool found = false;
            for (std::size_t i = 0; i < du.size(); ++i)
                if (!used[i] && same_factor(du[i], f)) {
                    used[i] = 1;
                    found = true;
                    break;
                }
            if (!found) missing.push_back(f);
        }
        for (auto& f : missing) du.push_back(std::move(f));
    }
    int vd = 0;
    for (const auto& f : du)
        if (f.mono.is_one()) ++vd;
    int width = vd + 2;

    Ser<C> ntotal;
    bool first = true;
    for (const auto& fl : live) {
        Ser<C> s = pre_series(ev, fl.pre, fl.pre_h, width);
        for (const auto& f : fl.num) s = ser_mul(s, factor_series(ev, f, form, width), width, czero);
        for (const auto& f : multiset_diff(du, fl.den)) s = ser_mul(s, factor_series(ev, f, form, width), width, czero);
        if (first) {
            ntotal = std::move(s);
            first = false;
        } else {
            ser_add_into(ntotal, s, width, czero);
        }
    }
    Ser<C> dtotal;
    dtotal.val = 0;
    dtotal.c.assign(static_cast<std::size_t>(width), czero);
    dtotal.c[0] = ev.from_rat(1);
    for (const auto& f : du) dtotal = ser_mul(dtotal, factor_series(ev, f, form, width), width, czero);
    return finalize_entry(ev, ntotal, dtotal);
}

}  // namespace

std::vector<int> ShuffleEval::arc_content(const Arc& arc) const {
    std::vector<int> v(static_cast<std::size_t>(ctx_->n()), 0);
    for (int a = arc.i; a < arc.j; ++a) ++v[static_cast<std::size_t>(ctx_->mod_color(a))];
    return v;
}

bool ShuffleEval::on_wall(const Arc& arc, const Slope& m) const {
    Rat s = 0;
    for (int a = arc.i; a < arc.j; ++a) s += m[static_cast<std::size_t>(ctx_->mod_color(a))];
    return s.get_den() == 1;
}

Rat ShuffleEval::slope_index(const Arc& arc, const Slope& m) const { return arc_index(*ctx_, arc, m); }

RatFunc ShuffleEval::p_entry(const FixedPoint& lam, const FixedPoint& mu, const Arc& arc, const Slope& m,
                             Normalization norm) const {
    SymEv ev{ctx_->table()};
    return eval_entry(ev, *ctx_, form_, lam, mu, arc, m, true, norm);
}

RatFunc ShuffleEval::q_entry(const FixedPoint& mu, const FixedPoint& lam, const Arc& arc, const Slope& m,
                             Normalization norm) const {
    SymEv ev{ctx_->table()};
    return eval_entry(ev, *ctx_, form_, lam, mu, arc, m, false, norm);
}

MpComplex ShuffleEval::p_entry_num(const NumEval& ev, const FixedPoint& lam, const FixedPoint& mu, const Arc& arc,
                                   const Slope& m, Normalization norm) const {
    NumEv e{&ev};
    return eval_entry(e, *ctx_, form_, lam, mu, arc, m, true, norm);
}

MpComplex ShuffleEval::q_entry_num(const NumEval& ev, const FixedPoint& mu, const FixedPoint& lam, const Arc& arc,
                                   const Slope& m, Normalization norm) const {
    NumEv e{&ev};
    return eval_entry(e, *ctx_, form_, lam, mu, arc, m, false, norm);
}

Mat<RatFunc> ShuffleEval::p_matrix(const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from,
                                   const Arc& arc, const Slope& m, Normalization norm) const {
    Mat<RatFunc> r(to.size(), from.size());
    for (std::size_t i = 0; i < to.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j) r(i, j) = p_entry(to[i], from[j], arc, m, norm);
    return r;
}

Mat<RatFunc> ShuffleEval::q_matrix(const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from,
                                   const Arc& arc, const Slope& m, Normalization norm) const {
    Mat<RatFunc> r(to.size(), from.size());
    for (std::size_t i = 0; i < to.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j) r(i, j) = q_entry(to[i], from[j], arc, m, norm);
    return r;
}

Mat<MpComplex> ShuffleEval::p_matrix_num(const NumEval& ev, const std::vector<FixedPoint>& to,
                                         const std::vector<FixedPoint>& from, const Arc& arc, const Slope& m,
                                         ExecPolicy policy, Normalization norm) const {
    Mat<MpComplex> r(to.size(), from.size());
    parallel_for(policy, to.size() * from.size(), [&](std::size_t k) {
        std::size_t i = k / from.size(), j = k % from.size();
        r(i, j) = p_entry_num(ev, to[i], from[j], arc, m, norm);
    });
    return r;
}

Mat<MpComplex> ShuffleEval::q_matrix_num(const NumEval& ev, const std::vector<FixedPoint>& to,
                                         const std::vector<FixedPoint>& from, const Arc& arc, const Slope& m,
                                         ExecPolicy policy, Normalization norm) const {
    Mat<MpComplex> r(to.size(), from.size());
    parallel_for(policy, to.size() * from.size(), [&](std::size_t k) {
        std::size_t i = k / from.size(), j = k % from.size();
        r(i, j) = q_entry_num(ev, to[i], from[j], arc, m, norm);
    });
    return r;
}

}  // namespace qde

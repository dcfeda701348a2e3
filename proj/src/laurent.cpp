#include "qde/laurent.hpp"

#include <algorithm>

namespace qde {

const std::pair<const Monomial, Rat>& Laurent::leading() const {
    if (terms_.empty()) throw std::domain_error("Laurent: leading term of zero");
    return *terms_.begin();
}

Rat Laurent::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("Laurent: not a constant");
    return terms_.begin()->second;
}

void Laurent::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

const VarTablePtr& Laurent::join(const Laurent& a, const Laurent& b) {
    if (!a.vt_) return b.vt_;
    if (!b.vt_) return a.vt_;
    if (!a.vt_->same_as(*b.vt_)) throw std::domain_error("Laurent: mixed variable tables");
    return a.vt_;
}

Laurent Laurent::operator-() const {
    Laurent r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent out(join(*this, o));
    out.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    const VarTablePtr& vt = join(*this, o);
    Laurent out(vt);
    if (is_zero() || o.is_zero()) return out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Laurent Laurent::scaled(const Rat& c) const {
    Laurent r(vt_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, x] : r.terms_) x *= c;
    return r;
}

Laurent Laurent::mono_mul(const Monomial& m, const Rat& c) const {
    Laurent r(vt_);
    if (c == 0) return r;
    for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, cc * c);
    return r;
}

Laurent Laurent::pow(long k) const {
    if (k < 0) throw std::domain_error("Laurent: negative power");
    Laurent r = Laurent::one(vt_ ? vt_ : VarTable::make({}));
    Laurent base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = k > 1 ? base * base : base;
        k >>= 1;
    }
    return r;
}

bool Laurent::operator==(const Laurent& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (vt_ && o.vt_ && !vt_->same_as(*o.vt_)) return false;
    return terms_ == o.terms_;
}

std::pair<std::int32_t, std::int32_t> Laurent::exp_range(std::size_t var) const {
    std::int32_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        (void)c;
        std::int32_t e = m.e[var];
        if (first) {
            lo = hi = e;
            first = false;
        } else {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    }
    return {lo, hi};
}

bool Laurent::involves(std::size_t var) const {
    for (const auto& [m, c] : terms_) {
        (void)c;
        if (m.e[var] != 0) return true;
    }
    return false;
}

Laurent::UnitParts Laurent::unit_normalize() const {
    UnitParts up;
    if (is_zero()) {
        up.unit_mono = Monomial::one(vt_ ? vt_->size() : 0);
        up.unit_coeff = 1;
        up.primitive = *this;
        return up;
    }
    std::size_t nv = vt_->size();
    Monomial shift(nv);
    for (std::size_t v = 0; v < nv; ++v) shift.e[v] = exp_range(v).first;
    // Rational content: gcd of numerators / lcm of denominators, signed so the
    // primitive part has positive leading coefficient.
    mpz_class g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        (void)m;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content(g, l);
    content.canonicalize();
    if (terms_.begin()->second < 0) content = -content;
    up.unit_mono = shift;
    up.unit_coeff = content;
    up.primitive = Laurent(vt_);
    Monomial inv = shift.inverse();
    for (const auto& [m, c] : terms_) up.primitive.terms_.emplace(m * inv, c / content);
    return up;
}

std::optional<Laurent> Laurent::exact_divide(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw std::domain_error("Laurent: division by zero");
    const VarTablePtr& vt = join(a, b);
    if (a.is_zero()) return Laurent::zero(vt);
    // Strip monomial units so ordinary polynomial division applies.
    auto ua = a.unit_normalize(), ub = b.unit_normalize();
    Laurent rem = ua.primitive;
    Laurent quot(vt);
    const auto& [lmB, lcB] = ub.primitive.leading();
    while (!rem.is_zero()) {
        const auto& [lmR, lcR] = rem.leading();
        Monomial q = lmR / lmB;
        for (auto e : q.e)
            if (e < 0) return std::nullopt;
        Rat qc = lcR / lcB;
        quot.add_term(q, qc);
        rem = rem - ub.primitive.mono_mul(q, qc);
    }
    Monomial um = ua.unit_mono / ub.unit_mono;
    return quot.mono_mul(um, ua.unit_coeff / ub.unit_coeff);
}

namespace {

// --- univariate view helpers for the PRS gcd -------------------------------
// A polynomial is viewed as sum coeff[k] * x^(2k) in the main variable (all
// primitive parts have even, nonnegative exponents there after normalization
// of the half-lattice: gcd operands are first forced onto integral powers by
// doubling, see gcd()). Coefficients are Laurents not involving x.

using Coeffs = std::vector<Laurent>;

Coeffs to_univariate(const Laurent& p, std::size_t var, const VarTablePtr& vt) {
    auto [lo, hi] = p.exp_range(var);
    if (lo < 0) throw std::domain_error("Laurent: internal univariate view on Laurent exponents");
    if (lo % 2 != 0 || hi % 2 != 0)
        throw std::domain_error("Laurent: internal univariate view on half powers");
    Coeffs cs(static_cast<std::size_t>(hi / 2) + 1, Laurent::zero(vt));
    for (const auto& [m, c] : p.terms()) {
        Monomial mm = m;
        std::int32_t e = mm.e[var];
        mm.e[var] = 0;
        cs[static_cast<std::size_t>(e / 2)] += Laurent::monomial(vt, mm, c);
    }
    return cs;
}

void trim(Coeffs& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int degree(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

Laurent from_univariate(const Coeffs& c, std::size_t var, const VarTablePtr& vt) {
    Laurent r = Laurent::zero(vt);
    for (std::size_t k = 0; k < c.size(); ++k) {
        Monomial xk = Monomial::var_pow2(vt->size(), var, static_cast<std::int32_t>(2 * k));
        r += c[k].mono_mul(xk);
    }
    return r;
}

Coeffs coeffs_scale(const Coeffs& c, const Laurent& s) {
    Coeffs r = c;
    for (auto& x : r) x = x * s;
    return r;
}

Coeffs coeffs_sub(const Coeffs& a, const Coeffs& b) {
    Coeffs r = a;
    if (b.size() > r.size()) r.resize(b.size(), Laurent::zero(a.empty() ? b[0].table() : a[0].table()));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// shift by x^k (multiply)
Coeffs coeffs_shift(const Coeffs& c, int k, const VarTablePtr& vt) {
    Coeffs r(static_cast<std::size_t>(k), Laurent::zero(vt));
    r.insert(r.end(), c.begin(), c.end());
    return r;
}

Coeffs coeffs_exact_div(const Coeffs& a, const Laurent& d) {
    Coeffs r = a;
    for (auto& x : r) {
        auto q = Laurent::exact_divide(x, d);
        if (!q) throw std::domain_error("Laurent: non-exact division in PRS");
        x = *q;
    }
    return r;
}

// Pseudo-remainder: lc(B)^(degA-degB+1) * A = Q*B + R with deg R < deg B.
Coeffs prem(Coeffs A, const Coeffs& B, const VarTablePtr& vt) {
    int dB = degree(B);
    const Laurent& lcB = B.back();
    int e = degree(A) - dB + 1;
    while (!A.empty() && degree(A) >= dB) {
        const Laurent lcA = A.back();
        Coeffs scaled = coeffs_scale(A, lcB);
        Coeffs sub = coeffs_shift(coeffs_scale(B, lcA), degree(A) - dB, vt);
        A = coeffs_sub(scaled, sub);
        --e;
    }
    Laurent lcBe = Laurent::one(vt);
    for (int i = 0; i < e; ++i) lcBe *= lcB;
    return coeffs_scale(A, lcBe);
}

Laurent content_of(const Coeffs& c, const VarTablePtr& vt) {
    Laurent g = Laurent::zero(vt);
    for (const auto& x : c) {
        g = Laurent::gcd(g, x);
        if (g.is_one()) break;
    }
    return g;
}

}  // namespace

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
    const VarTablePtr vt = join(a, b);
    if (a.is_zero() && b.is_zero()) return Laurent::zero(vt);
    if (a.is_zero()) return b.unit_normalize().primitive;
    if (b.is_zero()) return a.unit_normalize().primitive;

    Laurent pa = a.unit_normalize().primitive;
    Laurent pb = b.unit_normalize().primitive;
    if (pa.is_one() || pb.is_one()) return Laurent::one(vt);
    if (pa == pb) return pa;

    // Half-integer exponents: work on the doubled (integral) lattice by
    // squaring variables, i.e. treat the doubled exponent itself as the
    // degree. to_univariate() requires even exponents; double first if any
    // odd exponent appears in the main variable.
    // Cheap fast path: one operand divides the other.
    if (pa.term_count() <= pb.term_count()) {
        if (exact_divide(pb, pa)) return pa;
    } else {
        if (exact_divide(pa, pb)) return pb;
    }

    // Choose the main variable: first variable involved in both.
    std::size_t nv = vt->size();
    std::size_t main = nv;
    for (std::size_t v = 0; v < nv; ++v) {
        if (pa.involves(v) && pb.involves(v)) {
            main = v;
            break;
        }
    }
    if (main == nv) {
        // No shared variable: gcd of primitive parts with disjoint supports is 1
        // unless one is constant (handled above as is_one after normalization).
        return Laurent::one(vt);
    }

    // Force even exponents in the main variable by doubling them (x -> x^2 is
    // injective on exponents; gcd computed on images, then halved back).
    auto double_main = [&](const Laurent& p) {
        Laurent r(vt);
        for (const auto& [m, c] : p.terms()) {
            Monomial mm = m;
            mm.e[main] *= 2;
            r.terms_.emplace(mm, c);
        }
        return r;
    };
    auto halve_main = [&](const Laurent& p) {
        Laurent r(vt);
        for (const auto& [m, c] : p.terms()) {
            Monomial mm = m;
            if (mm.e[main] % 2 != 0)
                throw std::domain_error("Laurent: gcd lattice inconsistency");
            mm.e[main] /= 2;
            r.terms_.emplace(mm, c);
        }
        return r;
    };
    bool doubled = false;
    {
        auto odd = [&](const Laurent& p) {
            for (const auto& [m, c] : p.terms()) {
                (void)c;
                if (m.e[main] % 2 != 0) return true;
            }
            return false;
        };
        if (odd(pa) || odd(pb)) {
            pa = double_main(pa);
            pb = double_main(pb);
            doubled = true;
        }
    }

    Coeffs F = to_univariate(pa, main, vt);
    Coeffs G = to_univariate(pb, main, vt);
    if (degree(F) < degree(G)) std::swap(F, G);

    Laurent contF = content_of(F, vt), contG = content_of(G, vt);
    Laurent cont = gcd(contF, contG);
    F = coeffs_exact_div(F, contF);
    G = coeffs_exact_div(G, contG);

    // Subresultant PRS.
    Laurent g = Laurent::one(vt), h = Laurent::one(vt);
    while (true) {
        int delta = degree(F) - degree(G);
        Coeffs R = prem(F, G, vt);
        if (R.empty()) break;
        if (degree(R) == 0) {
            G = Coeffs{Laurent::one(vt)};
            break;
        }
        // divisor g * h^delta
        Laurent div = g;
        for (int i = 0; i < delta; ++i) div *= h;
        F = G;
        G = coeffs_exact_div(R, div);
        g = F.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            Laurent num = Laurent::one(vt);
            for (int i = 0; i < delta; ++i) num *= g;
            Laurent den = Laurent::one(vt);
            for (int i = 0; i < delta - 1; ++i) den *= h;
            auto q = exact_divide(num, den);
            if (!q) throw std::domain_error("Laurent: subresultant update failed");
            h = *q;
        }
    }
    Laurent contRes = content_of(G, vt);
    if (!contRes.is_one()) G = coeffs_exact_div(G, contRes);
    Laurent ppg = from_univariate(G, main, vt).unit_normalize().primitive;
    Laurent result = cont * ppg;
    if (doubled) result = halve_main(result);
    return result.unit_normalize().primitive;
}

Laurent Laurent::substitute_monomials(const std::map<std::size_t, MonoImage>& images) const {
    if (!vt_) return *this;
    Laurent r(vt_);
    for (const auto& [m, c] : terms_) {
        Monomial mm = m;
        Rat cc = c;
        for (const auto& [var, img] : images) {
            std::int32_t e = mm.e[var];
            if (e == 0) continue;
            mm.e[var] = 0;
            if (e % 2 != 0) {
                // half power of the substituted variable: image must itself be
                // given as the square root content, which callers arrange by
                // passing doubled-lattice images; reject otherwise.
                if (img.coeff != 1)
                    throw std::domain_error("Laurent: half power with non-unit image coefficient");
                Monomial contrib = img.mono;
                for (auto& x : contrib.e) {
                    if ((static_cast<std::int64_t>(x) * e) % 2 != 0)
                        throw std::domain_error("Laurent: substitution leaves the exponent lattice");
                    x = static_cast<std::int32_t>(static_cast<std::int64_t>(x) * e / 2);
                }
                mm = mm * contrib;
            } else {
                long k = e / 2;
                mm = mm * img.mono.pow(k);
                if (img.coeff != 1) {
                    Rat f = 1;
                    long ak = k < 0 ? -k : k;
                    for (long i = 0; i < ak; ++i) f *= img.coeff;
                    if (k < 0) f = 1 / f;
                    cc *= f;
                }
            }
        }
        r.add_term(mm, cc);
    }
    return r;
}

Laurent Laurent::substitute_poly(std::size_t var, const Laurent& image) const {
    if (!vt_) return *this;
    auto [lo, hi] = exp_range(var);
    if (lo < 0) throw std::domain_error("Laurent: polynomial substitution into negative power");
    // Group by power of var, then Horner.
    std::map<long, Laurent> by_pow;
    for (const auto& [m, c] : terms_) {
        if (m.e[var] % 2 != 0)
            throw std::domain_error("Laurent: polynomial substitution into half power");
        long k = m.e[var] / 2;
        Monomial mm = m;
        mm.e[var] = 0;
        auto it = by_pow.find(k);
        if (it == by_pow.end()) it = by_pow.emplace(k, Laurent::zero(vt_)).first;
        it->second += Laurent::monomial(vt_, mm, c);
    }
    Laurent result = Laurent::zero(vt_);
    long prev = -1;
    (void)hi;
    for (auto it = by_pow.rbegin(); it != by_pow.rend(); ++it) {
        if (prev >= 0)
            for (long i = 0; i < prev - it->first; ++i) result *= image;
        result += it->second;
        prev = it->first;
    }
    if (prev > 0)
        for (long i = 0; i < prev; ++i) result *= image;
    return result;
}

Laurent Laurent::on_table(const VarTablePtr& target) const {
    if (!vt_) {
        return Laurent::zero(target);
    }
    if (vt_->same_as(*target)) {
        Laurent r(target);
        r.terms_ = terms_;
        return r;
    }
    std::vector<std::size_t> map(vt_->size());
    for (std::size_t i = 0; i < vt_->size(); ++i) map[i] = target->index(vt_->name(i));
    Laurent r(target);
    for (const auto& [m, c] : terms_) {
        Monomial mm(target->size());
        for (std::size_t i = 0; i < vt_->size(); ++i) mm.e[map[i]] = m.e[i];
        r.terms_.emplace(mm, c);
    }
    return r;
}

std::string Laurent::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) s += "-";
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
        }
        bool mono_one = m.is_one();
        if (ac != 1 || mono_one) {
            s += rat_to_string(ac);
            if (!mono_one) s += "*";
        }
        if (!mono_one) s += m.to_string(*vt_);
    }
    return s;
}

}  // namespace qde

#pragma once

#include "qde/matrix.hpp"
#include "qde/parallel.hpp"
#include "qde/quiver.hpp"
#include "qde/specialize.hpp"

namespace qde {

/// Half-open run of slot indices [i, j); slot a has color a mod n.
struct Arc {
    int i, j;

    int length() const { return j - i; }
};

/// Wall slope: one rational coordinate per color.
using Slope = std::vector<Rat>;

/// Bracket normalization used throughout the factor calculus:
/// balanced [x] = x^(1/2) - x^(-1/2), or the polynomial form 1 - x.
enum class BracketForm { balanced, one_minus };

/// Entry normalization. `full` carries the scalar t^(-+ind) attached to the
/// slope (representable only when ind is half-integral); `core` omits it.
/// Compositions of a raising and a lowering operator over the same arc and
/// slope are identical in both normalizations, because the scalars cancel.
enum class Normalization { full, core };

/**
 * @brief Matrix elements of the raising/lowering operators attached to a
 * wall slope, over the torus fixed-point bases.
 *
 * Entries are built from a factored product template (slot monomials,
 * interior difference factors, color-sensitive interaction factors, and
 * framing brackets), then evaluated exactly or numerically. Apparent poles
 * are resolved by a one-parameter deformation of the added-box characters;
 * the engine expands every factor as a truncated series in the deformation,
 * sums over the slot assignments, verifies that the singular part cancels,
 * and reads off the constant term.
 */
class ShuffleEval {
  public:
    explicit ShuffleEval(const QuiverContext& ctx, BracketForm form = BracketForm::balanced)
        : ctx_(&ctx), form_(form) {}

    const QuiverContext& ctx() const { return *ctx_; }
    BracketForm form() const { return form_; }

    /// Color counts of the slots of an arc.
    std::vector<int> arc_content(const Arc& arc) const;

    /// True when the slope pairs integrally with the arc.
    bool on_wall(const Arc& arc, const Slope& m) const;

    /// Fractional index of the slope along the arc: the raising operator is
    /// scaled by t^(-ind) and the lowering one by t^(+ind).
    Rat slope_index(const Arc& arc, const Slope& m) const;

    /// Raising entry <lam| P |mu>: adds the arc's boxes to mu.
    RatFunc p_entry(const FixedPoint& lam, const FixedPoint& mu, const Arc& arc, const Slope& m,
                    Normalization norm = Normalization::full) const;
    /// Lowering entry <mu| Q |lam>: removes the arc's boxes from lam.
    RatFunc q_entry(const FixedPoint& mu, const FixedPoint& lam, const Arc& arc, const Slope& m,
                    Normalization norm = Normalization::full) const;

    MpComplex p_entry_num(const NumEval& ev, const FixedPoint& lam, const FixedPoint& mu, const Arc& arc,
                          const Slope& m, Normalization norm = Normalization::full) const;
    MpComplex q_entry_num(const NumEval& ev, const FixedPoint& mu, const FixedPoint& lam, const Arc& arc,
                          const Slope& m, Normalization norm = Normalization::full) const;

    /// Rectangular operator blocks over ordered bases (rows = target basis).
    Mat<RatFunc> p_matrix(const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, const Arc& arc,
                          const Slope& m, Normalization norm = Normalization::full) const;
    Mat<RatFunc> q_matrix(const std::vector<FixedPoint>& to, const std::vector<FixedPoint>& from, const Arc& arc,
                          const Slope& m, Normalization norm = Normalization::full) const;
    Mat<MpComplex> p_matrix_num(const NumEval& ev, const std::vector<FixedPoint>& to,
                                const std::vector<FixedPoint>& from, const Arc& arc, const Slope& m,
                                ExecPolicy policy = ExecPolicy::serial,
                                Normalization norm = Normalization::full) const;
    Mat<MpComplex> q_matrix_num(const NumEval& ev, const std::vector<FixedPoint>& to,
                                const std::vector<FixedPoint>& from, const Arc& arc, const Slope& m,
                                ExecPolicy policy = ExecPolicy::serial,
                                Normalization norm = Normalization::full) const;

  private:
    const QuiverContext* ctx_;
    BracketForm form_;
};

}  // namespace qde

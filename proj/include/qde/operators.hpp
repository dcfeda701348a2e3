#pragma once

#include "qde/eigensolver.hpp"
#include "qde/walls.hpp"

#include <map>

namespace qde {

/// q-power twist inside the wall-operator denominators: `plain` uses no
/// twist (each factor is 1 - Z); `weighted` inserts the level-dependent
/// q-exponent attached to the arc data. Acceptance-grade results use plain;
/// weighted is exercised structurally.
enum class ScalarTwist { plain, weighted };

/// Dressing of the Kaehler variables z_c -> z_c q^((Cv-w)_c), where C is the
/// affine Cartan matrix of the cycle. Applied to every z-monomial entering a
/// wall-operator scalar; invisible to the z -> 0 and z -> infinity limits.
enum class KappaShift { off, on };

/// Quantum difference operator M_L(z) for a line bundle with degree vector
/// L: the diagonal L-action times the ordered product of the wall operators
/// met by a path. The first wall crossed is the rightmost factor.
struct DifferenceOperator {
    std::vector<int> degrees;
    PathTrace path;
    Mat<RatFunc> line_action;
    Mat<RatFunc> matrix;
};

/// Eigen-decomposition with a certified residual and eigenvalue separation.
struct SpectralData {
    std::vector<MpComplex> values;
    Mat<MpComplex> basis;
    MpReal residual;
    MpReal min_gap;
};

/**
 * @brief Wall operators and the quantum difference operator over the
 * fixed-point basis of one sector.
 *
 * Rank-one walls carry a finite ladder sum(n >= 0) of scaled Q^n P^n
 * composites along the raising chain of their arc, truncated at the first
 * vanishing power; periodic walls carry the expansion of a normal-ordered
 * exponential in the oscillator modes built from long arcs of every cyclic
 * start. Scalars are exact rational functions of (q, t, u, p, z); numeric
 * twins evaluate matrix elements at a point with a choice of execution
 * policy.
 */
class OperatorAssembler {
  public:
    OperatorAssembler(const QuiverContext& ctx, std::vector<int> v,
                      BracketForm form = BracketForm::balanced, ScalarTwist twist = ScalarTwist::plain,
                      KappaShift shift = KappaShift::on);

    const QuiverContext& ctx() const { return *ctx_; }
    const std::vector<int>& v() const { return v_; }
    const ShuffleEval& shuffle() const { return sh_; }
    ScalarTwist twist() const { return twist_; }
    KappaShift shift() const { return shift_; }

    /// Ordered fixed-point basis of the sector.
    const std::vector<FixedPoint>& basis() const { return sector_basis(v_); }

    /// Cached ordered basis of an arbitrary sector (empty when infeasible).
    const std::vector<FixedPoint>& sector_basis(const std::vector<int>& sector) const;

    /// Arc realizing a direction: the first start in 1..n whose run of
    /// slots has the given color counts. Throws when no arc matches.
    Arc arc_for_direction(const std::vector<int>& d) const;

    /// Wall operator B(z) at a slope point generic on the wall.
    Mat<RatFunc> wall_operator(const Wall& wall, const Slope& point) const;
    /// Closed-form z -> infinity limit (all scalar denominators set to 1).
    Mat<RatFunc> wall_operator_at_infinity(const Wall& wall, const Slope& point) const;
    Mat<MpComplex> wall_operator_num(const NumEval& ev, const Wall& wall, const Slope& point,
                                     ExecPolicy policy = ExecPolicy::serial) const;
    Mat<MpComplex> wall_operator_at_infinity_num(const NumEval& ev, const Wall& wall, const Slope& point,
                                                 ExecPolicy policy = ExecPolicy::serial) const;

    /// Diagonal action of the line bundle with degree vector L.
    Mat<RatFunc> l_action(const std::vector<int>& L) const;
    Mat<MpComplex> l_action_num(const NumEval& ev, const std::vector<int>& L) const;

    DifferenceOperator difference_operator(const std::vector<int>& L, const PathTrace& path) const;
    Mat<RatFunc> difference_operator_at_infinity(const std::vector<int>& L, const PathTrace& path) const;
    Mat<MpComplex> difference_operator_num(const NumEval& ev, const std::vector<int>& L, const PathTrace& path,
                                           ExecPolicy policy = ExecPolicy::serial) const;
    Mat<MpComplex> difference_operator_at_infinity_num(const NumEval& ev, const std::vector<int>& L,
                                                       const PathTrace& path,
                                                       ExecPolicy policy = ExecPolicy::serial) const;

  private:
    const QuiverContext* ctx_;
    std::vector<int> v_;
    ShuffleEval sh_;
    ScalarTwist twist_;
    KappaShift shift_;
    std::vector<long> wcv_;  // (w - C v)_c, the negated doubled Kaehler shift
    mutable std::map<std::vector<int>, std::vector<FixedPoint>> fp_cache_;

    Monomial kappa_dress(Monomial m) const;
    Monomial sl2_z_monomial(const std::vector<int>& d, long level) const;
    RatFunc sl2_term_scalar(long n, const std::vector<int>& d, long level, bool at_inf) const;
    RatFunc heis_mode_scalar(long k, long b, const Rat& prim_level, bool at_inf) const;

    template <class T, class Kit>
    Mat<T> build_wall(const Kit& kit, const Wall& wall, const Slope& point, bool at_inf) const;
    template <class T, class Kit>
    Mat<T> build_sl2_family(const Kit& kit, const std::vector<int>& d, const Slope& point, bool at_inf) const;
    template <class T, class Kit>
    Mat<T> build_heis(const Kit& kit, const Wall& wall, const Slope& point, bool at_inf) const;
};

/// Limit of a rational function as every z variable is scaled to 0 (or to
/// infinity) simultaneously: the extremal total-z-degree parts of numerator
/// and denominator decide. Throws when the limit diverges or depends on the
/// direction of approach.
RatFunc z_zero_limit(const QuiverContext& ctx, const RatFunc& f);
RatFunc z_infinity_limit(const QuiverContext& ctx, const RatFunc& f);
Mat<RatFunc> z_zero_limit(const QuiverContext& ctx, const Mat<RatFunc>& m);
Mat<RatFunc> z_infinity_limit(const QuiverContext& ctx, const Mat<RatFunc>& m);

/// Eigen-decomposition that certifies the residual and the pairwise
/// eigenvalue separation, throwing on a collision (non-generic parameters).
SpectralData spectral_certificate(const Mat<MpComplex>& m, const MpReal& residual_tol, const MpReal& gap_tol);

}  // namespace qde

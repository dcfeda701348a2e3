#pragma once

#include "qde/operators.hpp"
#include "qde/series.hpp"
#include "qde/specialize.hpp"

#include <map>
#include <string>

namespace qde {

/// Expansion region of a fundamental solution of the difference equation.
enum class Region { zero, infinity };

/// Evaluate a rational matrix entrywise at a full numeric specialization.
Mat<MpComplex> eval_matrix(const NumEval& ev, const Mat<RatFunc>& m);

/**
 * Entrywise expansion of a rational matrix as a truncated series in the
 * Kaehler variables around z = 0 (dir +1) or z = infinity (dir -1).
 * Coefficients keep every other variable (q, t, u, p) inside the scalar
 * ring: rational functions in the exact form, complex numbers in the
 * numeric form, where `ev` must bind q, t, u and p but no Kaehler
 * variable. Throws when an entry has a pole along z = 0 (resp. infinity).
 */
MatSeries<RatFunc> expand_matrix(const QuiverContext& ctx, const Mat<RatFunc>& m, int order, int dir = 1);
MatSeries<MpComplex> expand_matrix_num(const QuiverContext& ctx, const NumEval& ev, const Mat<RatFunc>& m,
                                       int order, int dir = 1);

/// One principal-branch logarithm taken while assembling singular factors.
struct BranchRecord {
    std::string label;
    MpComplex value;      // the number whose log was taken
    MpComplex log_value;  // principal branch, imaginary part in (-pi, pi]
};

/**
 * Truncated fundamental solution of Psi(p z) = M(z) Psi(z) around one of
 * the two torus-fixed ends of the Kaehler moduli space. The full solution
 * is frame * regular * singular, where the singular diagonal factor is
 * exp(sum_i ln(E^(i)) ln(z_i) / ln(p)); only the regular series and the
 * frame/exponent data are stored. The regular part has constant term
 * identity and satisfies the equation to the truncation order; `residual`
 * is the largest relative coefficient residual actually measured.
 */
struct FundamentalSolution {
    Region region = Region::zero;
    MatSeries<MpComplex> regular;
    Mat<MpComplex> frame;              // identity at z = 0, eigenvector frame at infinity
    std::vector<MpComplex> exponents;  // diagonal of E_0 resp. E_inf
    int order = 0;
    int factors_used = 0;
    MpReal residual;
};

/// Connection data at one numeric Kaehler point: the regularized matrix,
/// the multivalued one with singular exponentials restored, and the branch
/// log of every logarithm consumed along the way.
struct ConnectionData {
    std::vector<MpComplex> z;
    MpComplex p;
    Mat<MpComplex> mon_reg;
    Mat<MpComplex> mon;
    MpComplex det_mon_reg;
    MpReal quasi_periodicity;  // residual of mon_reg(p z) = E0 mon_reg(z) Einf^-1
    std::vector<BranchRecord> branch;
    int factors_zero = 0;
    int factors_inf = 0;
};

/// One member of the decreasing p-sequence of a nodal-limit check.
struct P0Sample {
    MpReal p;
    Mat<MpComplex> value;  // mon_reg evaluated at (p^s1 z1, ..., p^sn zn)
    MpReal deviation;      // raw distance to the predicted product
};

/// Comparison of the p -> 0 asymptotics of the connection matrix against
/// the ordered product of z-independent wall operators.
struct P0Report {
    Slope s;
    std::vector<Crossing> crossed;  // walls strictly between 0 and s, path order
    Mat<MpComplex> prediction;
    std::vector<P0Sample> raw;
    Mat<MpComplex> extrapolated;  // two-point Richardson from the last pair
    MpReal exponent;              // smallest wall-distance exponent of s
    MpReal deviation;             // max-abs(extrapolated - prediction)
};

/**
 * @brief Series and pointwise solver for the quantum difference equation
 * of one sector.
 *
 * Holds the symbolic difference operator M(z) for the O(1) direction
 * along a path from the base slope, its diagonal z -> 0 limit, its
 * z -> infinity limit, and the per-direction limits needed for singular
 * exponents. Series solutions are built by the conjugated-factor products
 * around either end; connection matrices are evaluated pointwise through
 * the same products with rational factors, which converges on annuli
 * where the z = 0 series (radius comparable to |p|) does not reach.
 */
class DifferenceSolver {
  public:
    DifferenceSolver(const OperatorAssembler& assembler, const WallArrangement& arrangement, Slope base);

    const OperatorAssembler& assembler() const { return *asmb_; }
    const WallArrangement& arrangement() const { return *arr_; }
    const Slope& base() const { return base_; }
    const DifferenceOperator& o1() const { return o1_; }
    /// Diagonal exponent matrix at z = 0 (equals the O(1) line action).
    const Mat<RatFunc>& e0() const { return e0_; }
    /// Symbolic z -> infinity limit of the O(1) operator.
    const Mat<RatFunc>& o1_infinity() const { return o1_inf_; }
    std::size_t dim() const { return e0_.rows(); }

    /// Exact truncated regular solution at z = 0 from the given number of
    /// product factors; coefficients are rational in (q, t, u, p). The
    /// factor-shift identity phi_K(p z) E0 = M(z) phi_{K+1}(z) holds
    /// exactly at every truncation order.
    MatSeries<RatFunc> psi0_reg_exact(int order, int factors) const;

    /// Truncated regular solution around either end at a numeric
    /// specialization of (q, t, u, p); Kaehler variables stay symbolic.
    /// Factors are appended until no retained coefficient moves.
    FundamentalSolution solve(const NumEval& ev, Region region, int order,
                              ExecPolicy policy = ExecPolicy::serial) const;

    /// Pointwise values of the regular solutions through the rational
    /// factor products (frame not applied).
    Mat<MpComplex> psi0_reg_at(const NumEval& ev, const std::vector<MpComplex>& z,
                               ExecPolicy policy = ExecPolicy::serial) const;
    Mat<MpComplex> psi_inf_reg_at(const NumEval& ev, const std::vector<MpComplex>& z,
                                  ExecPolicy policy = ExecPolicy::serial) const;
    /// Regularized connection matrix psi0^-1 . H . psi_inf at a point.
    Mat<MpComplex> mon_reg_at(const NumEval& ev, const std::vector<MpComplex>& z,
                              ExecPolicy policy = ExecPolicy::serial) const;

    /// Full connection data at a point: regularized and multivalued
    /// matrices, branch log, determinant, quasi-periodicity residual.
    ConnectionData connection(const NumEval& ev, const std::vector<MpComplex>& z,
                              ExecPolicy policy = ExecPolicy::serial) const;

    /// Nodal limit: evaluate mon_reg at (p^s1 z1, ..., p^sn zn) along a
    /// decreasing p-sequence, Richardson-extrapolate in the smallest
    /// wall-distance exponent of s, and compare with the predicted ordered
    /// product of wall operators at infinity. `params` binds q, t, u (not
    /// p); s must be off every wall and componentwise >= 0 or < 0.
    P0Report p_to_zero(const std::map<std::string, MpComplex>& params, const Slope& s,
                       const std::vector<MpComplex>& z, const std::vector<MpReal>& p_seq,
                       ExecPolicy policy = ExecPolicy::serial) const;

    /// Eigen-data of the numeric z -> infinity limit: frame H with
    /// M(inf) H = H E_inf. Throws on eigenvalue collision.
    SpectralData infinity_frame(const NumEval& ev) const;

    int max_factors = 400;  // safety cap for the infinite products

  private:
    const OperatorAssembler* asmb_;
    const WallArrangement* arr_;
    Slope base_;
    DifferenceOperator o1_;
    Mat<RatFunc> e0_;
    Mat<RatFunc> o1_inf_;
    std::vector<Mat<RatFunc>> dir_action_;    // l_action per color direction
    std::vector<Mat<RatFunc>> dir_infinity_;  // M_{L_i}(infinity) per color direction

    std::vector<MpComplex> e0_values(const NumEval& ev) const;
    Mat<MpComplex> factor_product(const NumEval& ev, const std::vector<MpComplex>& z, Region region,
                                  const Mat<MpComplex>& frame_inv, const Mat<MpComplex>& frame,
                                  const std::vector<MpComplex>& exps, int* used, ExecPolicy policy) const;
};

}  // namespace qde

#pragma once

#include <string>
#include <vector>

#include "qde/laurent.hpp"

namespace qde {

/// Weakly decreasing positive row lengths; empty vector is the empty partition.
using Partition = std::vector<int>;

/// One box of a colored multipartition. Coordinates are 0-based: x counts
/// along the row, y selects the row.
struct ColoredBox {
    std::size_t frame;
    int x, y;

    bool operator==(const ColoredBox& o) const { return frame == o.frame && x == o.x && y == o.y; }
};

/// Torus fixed point: one partition per framing factor.
struct FixedPoint {
    std::vector<Partition> parts;

    bool operator==(const FixedPoint& o) const { return parts == o.parts; }
    bool operator<(const FixedPoint& o) const { return parts < o.parts; }
};

/**
 * @brief Cyclic-quiver module data: colors, fixed points, box characters.
 *
 * Colors are residues mod n. Box (x, y) under framing j has color
 * (sigma_j + x - y) mod n. The symbolic variable table holds q, t, the
 * framing parameters u_1..u_k, the difference-equation parameter p, and the
 * Kaehler parameters z_1..z_n, so every downstream module shares one table.
 * Color c pairs with z_n when c = 0 and with z_c otherwise.
 */
class QuiverContext {
  public:
    QuiverContext(int n, std::vector<int> framing_colors);

    /// Hilbert-scheme case study: n = 2, one framing of color 0.
    static QuiverContext hilb();

    int n() const { return n_; }
    std::size_t frames() const { return sigma_.size(); }
    int framing_color(std::size_t j) const { return sigma_[static_cast<std::size_t>(j)]; }
    const VarTablePtr& table() const { return vt_; }

    int box_color(const ColoredBox& b) const { return mod_color(sigma_[b.frame] + b.x - b.y); }
    int mod_color(int c) const {
        int r = c % n_;
        return r < 0 ? r + n_ : r;
    }

    /// All fixed points with the given per-color box counts, in ascending
    /// lexicographic order of their partition tuples.
    std::vector<FixedPoint> fixed_points(const std::vector<int>& v) const;

    /// Boxes of a fixed point: frame-major, then row-major.
    std::vector<ColoredBox> boxes(const FixedPoint& fp) const;

    /// Per-color box counts of a fixed point.
    std::vector<int> dims(const FixedPoint& fp) const;

    /// K-theoretic box character u_j q^(x+y+1) t^(x-y) as a monomial.
    Monomial chi(const ColoredBox& b) const;

    /// Product of chi over the color-c boxes (determinant of the color-c
    /// tautological bundle at the fixed point).
    Monomial det_v(const FixedPoint& fp, int color) const;

    /// Eigenvalue of the line bundle with degrees L = (L_0..L_{n-1}):
    /// prod_c det_v(fp, c)^(L_c).
    Monomial line_bundle_eigenvalue(const FixedPoint& fp, const std::vector<int>& L) const;

    /// Componentwise containment of multipartitions.
    static bool contains(const FixedPoint& big, const FixedPoint& small);

    /// Boxes of big not in small (big must contain small).
    std::vector<ColoredBox> skew(const FixedPoint& big, const FixedPoint& small) const;

    /// Exponents (w - C v)_c of the diagonal tautological symmetry, where C
    /// is the affine Cartan matrix of the cycle.
    std::vector<long> w_minus_cv(const std::vector<int>& v) const;

    std::string fp_name(const FixedPoint& fp) const;

    std::size_t var_q() const { return 0; }
    std::size_t var_t() const { return 1; }
    std::size_t var_u(std::size_t j) const { return 2 + j; }
    std::size_t var_p() const { return 2 + sigma_.size(); }
    /// Kaehler variable z_idx for idx = 1..n.
    std::size_t var_z(std::size_t idx) const { return 3 + sigma_.size() + (idx - 1); }
    /// Index of the z-variable paired with a color: z_n for color 0, else z_c.
    std::size_t z_index(int color) const { return color == 0 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(color); }

  private:
    int n_;
    std::vector<int> sigma_;
    VarTablePtr vt_;
};

}  // namespace qde

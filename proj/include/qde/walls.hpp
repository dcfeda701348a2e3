#pragma once

#include "qde/shuffle.hpp"

#include <vector>

namespace qde {

/// Kind of a hyperplane family: rank-one (quantum sl2) walls attached to the
/// short cyclic-interval directions, Heisenberg walls attached to multiples
/// of the all-ones direction.
enum class WallKind { sl2, heisenberg };

/// One direction of the arrangement for a sector v, bounded componentwise
/// by v; all integer levels of the pairing m . d carry a hyperplane.
struct WallFamily {
    std::vector<int> d;
    WallKind kind;
};

/// A single hyperplane {m : m . dprim = level} with dprim primitive. `ks`
/// lists the multiples k whose family k * dprim presents this hyperplane
/// (k * dprim bounded by v and k * level integral), in increasing order.
struct Wall {
    std::vector<int> dprim;
    Rat level;
    WallKind kind;
    std::vector<int> ks;
};

/// One transversal crossing of a straight path with a wall. `tau` in (0,1)
/// parameterizes the path s + tau (e - s); `point` is the slope there.
struct Crossing {
    Wall wall;
    Rat tau;
    Slope point;
};

/// A validated generic path together with its ordered crossings.
struct PathTrace {
    Slope start;
    Slope end;
    std::vector<Crossing> crossings;
};

/**
 * @brief Affine hyperplane arrangement in slope space for one sector, with
 * exact crossing enumeration for straight paths.
 *
 * Directions are the vectors bounded by the sector dimension vector that
 * either take two consecutive values with the larger fiber a cyclic color
 * interval (sl2 kind) or are positive multiples of the all-ones vector
 * (Heisenberg kind). Distinct families can present the same hyperplane;
 * crossings are deduplicated into a primitive direction, a rational level,
 * and the list of contributing multiples.
 */
class WallArrangement {
  public:
    WallArrangement(const QuiverContext& ctx, std::vector<int> v);

    const QuiverContext& ctx() const { return *ctx_; }
    const std::vector<int>& v() const { return v_; }

    /// Direction families in increasing (total degree, lexicographic) order.
    const std::vector<WallFamily>& families() const { return families_; }

    /// Distinct hyperplanes crossed by the straight path from `s` to `e`,
    /// ordered along the path. Throws std::domain_error when an endpoint
    /// lies on a hyperplane, when the path runs inside one, or when two
    /// distinct hyperplanes meet the path at the same point.
    PathTrace trace(const Slope& s, const Slope& e) const;

    /// Like trace, but retries with small deterministic parallel nudges of
    /// both endpoints until the path is generic.
    PathTrace trace_generic(const Slope& s, const Slope& e) const;

  private:
    const QuiverContext* ctx_;
    std::vector<int> v_;
    std::vector<WallFamily> families_;
};

/// End of the descending segment [s, s - L] for line-bundle degrees L.
Slope path_end(const Slope& s, const std::vector<int>& L);

}  // namespace qde

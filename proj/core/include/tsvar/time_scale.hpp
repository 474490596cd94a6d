#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsvar/scalar.hpp"

namespace tsvar {

/// A closed piece of a time scale: the interval [lo, hi], or an isolated
/// point when lo == hi.
struct Piece {
    Scalar lo;
    Scalar hi;

    static Piece point(Scalar p) { return Piece{p, p}; }
    /// Requires lo < hi.
    static Piece interval(Scalar lo, Scalar hi);

    bool is_point() const { return lo == hi; }
    bool operator==(const Piece&) const = default;
};

/// Left/right density of a point, plus whether it is the minimum or maximum.
struct PointClass {
    bool right_dense = false;
    bool left_dense = false;
    bool is_min = false;
    bool is_max = false;

    bool right_scattered() const { return !right_dense; }
    bool left_scattered() const { return !left_dense; }

    /// e.g. "left-dense, right-scattered".
    std::string str() const;
    bool operator==(const PointClass&) const = default;
};

/// A compact time scale: a finite union of closed intervals and isolated
/// points, held in canonical form (sorted, disjoint, positive gaps).
///
/// Every point argument must belong to the scale; otherwise the operation
/// throws DomainError. Instances are immutable.
class TimeScale {
public:
    /// Canonicalizes `pieces`: converts endpoints to `mode`, sorts and merges
    /// overlapping or touching pieces. Throws DomainError on an empty list or
    /// non-finite endpoints.
    explicit TimeScale(std::vector<Piece> pieces, NumericMode mode = NumericMode::rational,
                       double eps_pt = 0.0);

    /// The discrete scale {first, first+1, ..., last}.
    static TimeScale integers(long first, long last, NumericMode mode = NumericMode::rational);
    static TimeScale discrete(const std::vector<Scalar>& points,
                              NumericMode mode = NumericMode::rational);

    /// Sorted, merged form of an arbitrary piece list (endpoints untouched).
    static std::vector<Piece> canonicalize(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    NumericMode mode() const noexcept { return mode_; }
    double eps_pt() const noexcept { return eps_pt_; }
    const Scalar& min() const { return pieces_.front().lo; }
    const Scalar& max() const { return pieces_.back().hi; }

    bool contains(const Scalar& t) const;
    /// `t` converted to this scale's mode and snapped onto the scale when it
    /// lies within eps_pt of a piece. Throws DomainError when t is not in T.
    Scalar coerce(const Scalar& t) const;

    Scalar sigma(const Scalar& t) const;
    Scalar rho(const Scalar& t) const;
    /// Forward graininess sigma(t) - t.
    Scalar mu(const Scalar& t) const;
    /// Backward graininess t - rho(t).
    Scalar nu(const Scalar& t) const;
    PointClass classify(const Scalar& t) const;

    /// True when t is the right end of a non-degenerate interval and is not
    /// the maximum, i.e. a point that is approached from the left along the
    /// scale yet jumps forward. sigma is discontinuous exactly there.
    bool is_dense_junction(const Scalar& t) const;

    /// T^k: drops the maximum when it is left-scattered.
    TimeScale truncate_k() const;
    /// T^{k^2} = (T^k)^k.
    TimeScale truncate_k2() const;

    /// [a, b] ∩ T as a time scale. a and b need not be members.
    TimeScale restrict(const Scalar& a, const Scalar& b) const;

    /// Isolated points and interval endpoints, plus `refinement` equally
    /// spaced samples strictly inside every interval piece.
    std::vector<Scalar> grid(std::size_t refinement) const;

    /// No interval pieces.
    bool is_discrete() const;
    /// [a, b] ∩ T contains no interval of positive length.
    bool is_discrete_on(const Scalar& a, const Scalar& b) const;
    /// All points of a discrete scale; throws UnsupportedError otherwise.
    std::vector<Scalar> points() const;

    /// Index of the piece holding t (after coercion).
    std::size_t locate(const Scalar& t) const;

    bool operator==(const TimeScale& other) const
    {
        return mode_ == other.mode_ && pieces_ == other.pieces_;
    }

    /// Compact human-readable form, e.g. "[0,1] ∪ {3/2}".
    std::string str() const;

private:
    std::optional<std::size_t> find_piece(const Scalar& t) const;

    std::vector<Piece> pieces_;
    NumericMode mode_;
    double eps_pt_;
};

} // namespace tsvar

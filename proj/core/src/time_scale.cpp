#include "tsvar/time_scale.hpp"

#include <algorithm>
#include <cmath>

#include "tsvar/errors.hpp"

namespace tsvar {

Piece Piece::interval(Scalar lo, Scalar hi)
{
    if (!(lo < hi)) {
        throw DomainError("interval [" + lo.str() + ", " + hi.str() + "] needs lo < hi");
    }
    return Piece{std::move(lo), std::move(hi)};
}

std::string PointClass::str() const
{
    std::string s = left_dense ? "left-dense" : "left-scattered";
    s += right_dense ? ", right-dense" : ", right-scattered";
    if (is_min) {
        s += ", minimum";
    }
    if (is_max) {
        s += ", maximum";
    }
    return s;
}

std::vector<Piece> TimeScale::canonicalize(std::vector<Piece> pieces)
{
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    std::vector<Piece> merged;
    for (auto& p : pieces) {
        if (!merged.empty() && p.lo <= merged.back().hi) {
            if (merged.back().hi < p.hi) {
                merged.back().hi = p.hi;
            }
        } else {
            merged.push_back(std::move(p));
        }
    }
    return merged;
}

TimeScale::TimeScale(std::vector<Piece> pieces, NumericMode mode, double eps_pt)
    : mode_(mode), eps_pt_(eps_pt)
{
    if (pieces.empty()) {
        throw DomainError("a time scale must be nonempty");
    }
    if (!(eps_pt >= 0.0) || !std::isfinite(eps_pt)) {
        throw DomainError("eps_pt must be a finite non-negative number");
    }
    if (mode == NumericMode::rational && eps_pt != 0.0) {
        throw DomainError("eps_pt is only meaningful in float mode");
    }
    for (auto& p : pieces) {
        if (!p.lo.is_finite() || !p.hi.is_finite()) {
            throw DomainError("time scale endpoints must be finite");
        }
        if (p.hi < p.lo) {
            throw DomainError("piece [" + p.lo.str() + ", " + p.hi.str() + "] has lo > hi");
        }
        p.lo = p.lo.in_mode(mode);
        p.hi = p.hi.in_mode(mode);
    }
    pieces_ = canonicalize(std::move(pieces));
}

TimeScale TimeScale::integers(long first, long last, NumericMode mode)
{
    if (last < first) {
        throw DomainError("integers(first, last) needs first <= last");
    }
    std::vector<Piece> pieces;
    for (long k = first; k <= last; ++k) {
        pieces.push_back(Piece::point(Scalar(k)));
    }
    return TimeScale(std::move(pieces), mode);
}

TimeScale TimeScale::discrete(const std::vector<Scalar>& points, NumericMode mode)
{
    std::vector<Piece> pieces;
    pieces.reserve(points.size());
    for (const auto& p : points) {
        pieces.push_back(Piece::point(p));
    }
    return TimeScale(std::move(pieces), mode);
}

std::optional<std::size_t> TimeScale::find_piece(const Scalar& t) const
{
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](const Scalar& value, const Piece& p) { return value < p.lo; });
    if (it != pieces_.begin()) {
        auto idx = static_cast<std::size_t>(std::distance(pieces_.begin(), it) - 1);
        if (t <= pieces_[idx].hi) {
            return idx;
        }
    }
    return std::nullopt;
}

Scalar TimeScale::coerce(const Scalar& t) const
{
    if (!t.is_finite()) {
        throw DomainError("non-finite point " + t.str());
    }
    Scalar value = mode_ == NumericMode::floating ? t.in_mode(mode_) : t;
    if (find_piece(value)) {
        return value;
    }
    if (eps_pt_ > 0.0) {
        double x = value.to_double();
        for (const auto& p : pieces_) {
            if (std::abs(x - p.lo.to_double()) <= eps_pt_) {
                return p.lo;
            }
            if (std::abs(x - p.hi.to_double()) <= eps_pt_) {
                return p.hi;
            }
        }
    }
    throw DomainError("point " + t.str() + " is not in the time scale " + str());
}

bool TimeScale::contains(const Scalar& t) const
{
    try {
        coerce(t);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

std::size_t TimeScale::locate(const Scalar& t) const
{
    return *find_piece(coerce(t));
}

Scalar TimeScale::sigma(const Scalar& t) const
{
    Scalar x = coerce(t);
    std::size_t i = *find_piece(x);
    if (x < pieces_[i].hi) {
        return x;
    }
    return i + 1 < pieces_.size() ? pieces_[i + 1].lo : x;
}

Scalar TimeScale::rho(const Scalar& t) const
{
    Scalar x = coerce(t);
    std::size_t i = *find_piece(x);
    if (pieces_[i].lo < x) {
        return x;
    }
    return i > 0 ? pieces_[i - 1].hi : x;
}

Scalar TimeScale::mu(const Scalar& t) const
{
    Scalar x = coerce(t);
    return sigma(x) - x;
}

Scalar TimeScale::nu(const Scalar& t) const
{
    Scalar x = coerce(t);
    return x - rho(x);
}

PointClass TimeScale::classify(const Scalar& t) const
{
    Scalar x = coerce(t);
    PointClass c;
    c.right_dense = sigma(x) == x;
    c.left_dense = rho(x) == x;
    c.is_min = x == min();
    c.is_max = x == max();
    return c;
}

bool TimeScale::is_dense_junction(const Scalar& t) const
{
    Scalar x = coerce(t);
    std::size_t i = *find_piece(x);
    return !pieces_[i].is_point() && x == pieces_[i].hi && i + 1 < pieces_.size();
}

TimeScale TimeScale::truncate_k() const
{
    if (pieces_.size() >= 2 && pieces_.back().is_point()) {
        std::vector<Piece> kept(pieces_.begin(), pieces_.end() - 1);
        return TimeScale(std::move(kept), mode_, eps_pt_);
    }
    return *this;
}

TimeScale TimeScale::truncate_k2() const
{
    return truncate_k().truncate_k();
}

TimeScale TimeScale::restrict(const Scalar& a, const Scalar& b) const
{
    Scalar lo = a.in_mode(mode_);
    Scalar hi = b.in_mode(mode_);
    std::vector<Piece> kept;
    for (const auto& p : pieces_) {
        if (p.hi < lo || hi < p.lo) {
            continue;
        }
        kept.push_back(Piece{tsvar::max(p.lo, lo), tsvar::min(p.hi, hi)});
    }
    if (kept.empty()) {
        throw DomainError("[" + a.str() + ", " + b.str() + "] does not meet the time scale");
    }
    return TimeScale(std::move(kept), mode_, eps_pt_);
}

std::vector<Scalar> TimeScale::grid(std::size_t refinement) const
{
    std::vector<Scalar> out;
    for (const auto& p : pieces_) {
        out.push_back(p.lo);
        if (p.is_point()) {
            continue;
        }
        Scalar step = (p.hi - p.lo) / Scalar(static_cast<long>(refinement + 1));
        for (std::size_t k = 1; k <= refinement; ++k) {
            out.push_back(p.lo + step * Scalar(static_cast<long>(k)));
        }
        out.push_back(p.hi);
    }
    return out;
}

bool TimeScale::is_discrete() const
{
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.is_point(); });
}

bool TimeScale::is_discrete_on(const Scalar& a, const Scalar& b) const
{
    for (const auto& p : pieces_) {
        if (p.is_point() || p.hi < a || b < p.lo) {
            continue;
        }
        if (tsvar::max(p.lo, a) < tsvar::min(p.hi, b)) {
            return false;
        }
    }
    return true;
}

std::vector<Scalar> TimeScale::points() const
{
    if (!is_discrete()) {
        throw UnsupportedError("time scale " + str() + " is not purely discrete");
    }
    std::vector<Scalar> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        out.push_back(p.lo);
    }
    return out;
}

std::string TimeScale::str() const
{
    std::string s;
    std::string points;
    auto flush_points = [&] {
        if (!points.empty()) {
            if (!s.empty()) {
                s += " ∪ ";
            }
            s += "{" + points + "}";
            points.clear();
        }
    };
    for (const auto& p : pieces_) {
        if (p.is_point()) {
            if (!points.empty()) {
                points += ",";
            }
            points += p.lo.str();
            continue;
        }
        flush_points();
        if (!s.empty()) {
            s += " ∪ ";
        }
        s += "[" + p.lo.str() + "," + p.hi.str() + "]";
    }
    flush_points();
    return s;
}

} // namespace tsvar

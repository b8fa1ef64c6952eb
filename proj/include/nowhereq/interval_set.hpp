/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/rat.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace nowhereq {

/// Closed subinterval [lo, hi] of [0, 1] with rational endpoints.
class QInterval {
public:
	QInterval(Rat lo, Rat hi);

	const Rat &lo() const { return lo_; }
	const Rat &hi() const { return hi_; }
	Rat length() const { return hi_ - lo_; }
	Rat midpoint() const { return (lo_ + hi_) / 2; }
	bool degenerate() const { return lo_ == hi_; }

	bool contains(const Rat &x) const { return lo_ <= x && x <= hi_; }
	bool contains(const QInterval &other) const
	{
		return lo_ <= other.lo_ && other.hi_ <= hi_;
	}
	/// other lies in the open interval (lo, hi).
	bool contains_in_interior(const QInterval &other) const
	{
		return lo_ < other.lo_ && other.hi_ < hi_;
	}

	friend bool operator==(const QInterval &a, const QInterval &b)
	{
		return a.lo_ == b.lo_ && a.hi_ == b.hi_;
	}

private:
	Rat lo_, hi_;
};

/// (b - a) * x + a for I = [a, b].
Rat affine_point(const Rat &x, const QInterval &into);
/// Image of J under x -> (b - a) x + a.
QInterval affine_image(const QInterval &j, const QInterval &into);
/// Inverse of affine_image: coordinates of J relative to I (may leave [0,1]).
std::pair<Rat, Rat> relative_coordinates(const QInterval &j, const QInterval &in);

/// Finite union of closed rational intervals in [0, 1], in normal form:
/// sorted, nondegenerate, interiors pairwise disjoint and intervals that
/// touch merged. Two sets are equal iff their interval lists are equal.
///
/// Finite point sets are invisible to this representation, which is the
/// right notion for everything measured here.
class QIntervalSet {
public:
	QIntervalSet() = default;
	explicit QIntervalSet(std::vector<QInterval> intervals);
	QIntervalSet(std::initializer_list<QInterval> intervals);

	/// Accepts intervals that are already sorted, nondegenerate and pairwise
	/// separated by gaps; only checks that claim.
	static QIntervalSet from_normalized(std::vector<QInterval> intervals);

	const std::vector<QInterval> &intervals() const & { return intervals_; }
	std::vector<QInterval> intervals() && { return std::move(intervals_); }
	std::size_t size() const { return intervals_.size(); }
	bool empty() const { return intervals_.empty(); }

	bool contains(const Rat &x) const;

	friend bool operator==(const QIntervalSet &a, const QIntervalSet &b)
	{
		return a.intervals_ == b.intervals_;
	}

private:
	std::vector<QInterval> intervals_;
};

Rat measure(const QIntervalSet &s);
QIntervalSet intersect(const QIntervalSet &s, const QIntervalSet &t);
QIntervalSet unite(const QIntervalSet &s, const QIntervalSet &t);
/// Closure of J minus S.
QIntervalSet complement_in(const QIntervalSet &s, const QInterval &j);
/// (b - a) A + a; throws DomainError for a degenerate I.
QIntervalSet affine_image(const QIntervalSet &a, const QInterval &i);
/// measure(intersect(s, t)) == 0, decided without building the intersection.
bool almost_disjoint(const QIntervalSet &s, const QIntervalSet &t);

} // namespace nowhereq

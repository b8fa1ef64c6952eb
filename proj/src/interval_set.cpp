/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/interval_set.hpp"

#include <algorithm>
#include <utility>

namespace nowhereq {

QInterval::QInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
	if (!(0 <= lo_ && lo_ <= hi_ && hi_ <= 1))
		throw DomainError("interval [" + to_string(lo_) + ", " + to_string(hi_) +
				  "] is not a subinterval of [0,1]");
}

Rat affine_point(const Rat &x, const QInterval &into)
{
	return into.length() * x + into.lo();
}

QInterval affine_image(const QInterval &j, const QInterval &into)
{
	Rat len = into.length();
	return QInterval(len * j.lo() + into.lo(), len * j.hi() + into.lo());
}

std::pair<Rat, Rat> relative_coordinates(const QInterval &j, const QInterval &in)
{
	Rat len = in.length();
	if (len == 0)
		throw DomainError("relative coordinates in a degenerate interval");
	return {(j.lo() - in.lo()) / len, (j.hi() - in.lo()) / len};
}

namespace {

std::vector<QInterval> normalize(std::vector<QInterval> v)
{
	std::erase_if(v, [](const QInterval &i) { return i.degenerate(); });
	std::sort(v.begin(), v.end(), [](const QInterval &a, const QInterval &b) {
		return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
	});
	std::vector<QInterval> out;
	out.reserve(v.size());
	for (auto &i : v) {
		if (!out.empty() && i.lo() <= out.back().hi()) {
			if (i.hi() > out.back().hi())
				out.back() = QInterval(out.back().lo(), i.hi());
		} else {
			out.push_back(std::move(i));
		}
	}
	return out;
}

} // namespace

QIntervalSet::QIntervalSet(std::vector<QInterval> intervals)
    : intervals_(normalize(std::move(intervals)))
{
}

QIntervalSet::QIntervalSet(std::initializer_list<QInterval> intervals)
    : QIntervalSet(std::vector<QInterval>(intervals))
{
}

QIntervalSet QIntervalSet::from_normalized(std::vector<QInterval> intervals)
{
	for (std::size_t i = 0; i < intervals.size(); ++i) {
		if (intervals[i].degenerate() ||
		    (i > 0 && !(intervals[i - 1].hi() < intervals[i].lo())))
			throw DomainError("interval list is not in normal form");
	}
	QIntervalSet s;
	s.intervals_ = std::move(intervals);
	return s;
}

bool QIntervalSet::contains(const Rat &x) const
{
	auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
				   [](const Rat &v, const QInterval &i) { return v < i.lo(); });
	if (it == intervals_.begin())
		return false;
	return std::prev(it)->contains(x);
}

Rat measure(const QIntervalSet &s)
{
	Rat total = 0;
	for (const auto &i : s.intervals())
		total += i.length();
	return total;
}

QIntervalSet intersect(const QIntervalSet &s, const QIntervalSet &t)
{
	std::vector<QInterval> out;
	const auto &a = s.intervals();
	const auto &b = t.intervals();
	std::size_t i = 0, j = 0;
	while (i < a.size() && j < b.size()) {
		const Rat &lo = std::max(a[i].lo(), b[j].lo());
		const Rat &hi = std::min(a[i].hi(), b[j].hi());
		if (lo < hi)
			out.emplace_back(lo, hi);
		if (a[i].hi() < b[j].hi())
			++i;
		else
			++j;
	}
	return QIntervalSet(std::move(out));
}

QIntervalSet unite(const QIntervalSet &s, const QIntervalSet &t)
{
	std::vector<QInterval> all = s.intervals();
	all.insert(all.end(), t.intervals().begin(), t.intervals().end());
	return QIntervalSet(std::move(all));
}

QIntervalSet complement_in(const QIntervalSet &s, const QInterval &j)
{
	std::vector<QInterval> out;
	Rat cursor = j.lo();
	for (const auto &i : s.intervals()) {
		if (i.hi() <= cursor)
			continue;
		if (i.lo() >= j.hi())
			break;
		if (i.lo() > cursor)
			out.emplace_back(cursor, i.lo());
		cursor = i.hi();
	}
	if (cursor < j.hi())
		out.emplace_back(cursor, j.hi());
	return QIntervalSet(std::move(out));
}

QIntervalSet affine_image(const QIntervalSet &a, const QInterval &i)
{
	if (i.degenerate())
		throw DomainError("affine_image into a degenerate interval");
	std::vector<QInterval> out;
	out.reserve(a.size());
	for (const auto &j : a.intervals())
		out.push_back(affine_image(j, i));
	// An increasing affine map preserves order and gaps.
	return QIntervalSet::from_normalized(std::move(out));
}

bool almost_disjoint(const QIntervalSet &s, const QIntervalSet &t)
{
	const auto &a = s.intervals();
	const auto &b = t.intervals();
	std::size_t i = 0, j = 0;
	while (i < a.size() && j < b.size()) {
		if (std::max(a[i].lo(), b[j].lo()) < std::min(a[i].hi(), b[j].hi()))
			return false;
		if (a[i].hi() < b[j].hi())
			++i;
		else
			++j;
	}
	return true;
}

} // namespace nowhereq

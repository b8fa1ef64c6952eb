/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/cantor.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace nowhereq {

namespace {

void require_level(unsigned n, const char *what)
{
	if (n == 0)
		throw DomainError(std::string(what) + ": n must be >= 1");
}

/// Offset of the right child inside a stage-n interval: t_n - t_(n+1).
Rat right_offset(unsigned n) { return t_right(n) - t_right(n + 1); }

std::uint64_t saturating_pow(std::uint64_t base, unsigned e)
{
	std::uint64_t r = 1;
	for (unsigned i = 0; i < e; ++i) {
		if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
			return std::numeric_limits<std::uint64_t>::max();
		r *= base;
	}
	return r;
}

/// Index of the first stage-g interval whose right end exceeds x
/// (interval_count if none).
std::uint64_t first_interval_after(unsigned g, const Rat &x)
{
	Rat s = 0;
	std::uint64_t idx = 0;
	for (unsigned n = 1; n < g; ++n) {
		idx <<= 1;
		if (!(x < s + t_right(n + 1))) {
			s += right_offset(n);
			idx |= 1;
		}
	}
	if (x >= s + t_right(g))
		return idx + 1;
	return idx;
}

/// Index of the last stage-g interval whose left end is below x, or -1.
long long last_interval_before(unsigned g, const Rat &x)
{
	Rat s = 0;
	std::uint64_t idx = 0;
	for (unsigned n = 1; n < g; ++n) {
		idx <<= 1;
		Rat r = s + right_offset(n);
		if (x > r) {
			s = r;
			idx |= 1;
		}
	}
	if (x <= s)
		return static_cast<long long>(idx) - 1;
	return static_cast<long long>(idx);
}

/// Rank of a hole address in the alphabet ordered by (generation, index).
std::uint64_t symbol_rank(const HoleAddress &h)
{
	return ((std::uint64_t{1} << (h.generation - 1)) - 1) + h.index;
}

void validate(const HoleAddress &h)
{
	if (h.generation == 0 || h.generation > 63)
		throw DomainError("hole generation out of range");
	if (h.index >= (std::uint64_t{1} << (h.generation - 1)))
		throw DomainError("hole index out of range for its generation");
}

/// Lexicographic depth-first enumeration of hole chains of a fixed length
/// whose generations are <= G and that use generation G at least once.
class ChainWalker {
public:
	using Visit = std::function<bool(const std::vector<HoleAddress> &, const QInterval &)>;

	ChainWalker(std::size_t length, unsigned g) : length_(length), g_(g) {}

	/// Calls visit(chain, hull) in canonical order until it returns false.
	/// Returns false if stopped early.
	bool run(const Visit &visit)
	{
		chain_.clear();
		return step(QInterval(Rat(0), Rat(1)), false, visit);
	}

private:
	bool step(const QInterval &hull, bool has_g, const Visit &visit)
	{
		if (chain_.size() == length_)
			return visit(chain_, hull);
		std::size_t rem = length_ - chain_.size() - 1;
		for (unsigned gen = 1; gen <= g_; ++gen) {
			if (!has_g && rem == 0 && gen != g_)
				continue;
			std::uint64_t count = std::uint64_t{1} << (gen - 1);
			for (std::uint64_t i = 0; i < count; ++i) {
				HoleAddress h{gen, i};
				chain_.push_back(h);
				bool go = step(affine_image(hole_interval(h), hull), has_g || gen == g_, visit);
				chain_.pop_back();
				if (!go)
					return false;
			}
		}
		return true;
	}

	std::size_t length_;
	unsigned g_;
	std::vector<HoleAddress> chain_;
};

} // namespace

Rat t_right(unsigned n)
{
	require_level(n, "t_right");
	return pow2(1 - 2 * static_cast<long>(n)) + pow2(-static_cast<long>(n));
}

TBoundCheck check_t_bounds(unsigned n)
{
	require_level(n, "check_t_bounds");
	TBoundCheck c{n, t_right(n), pow2(3 - 2 * static_cast<long>(n)), false,
		      pow2(1 - static_cast<long>(n)), false};
	c.stated_holds = c.t < c.stated_bound;
	c.valid_holds = c.t <= c.valid_bound;
	return c;
}

CantorStage::CantorStage(unsigned n) : n_(n)
{
	require_level(n, "stage");
	if (n > 63)
		throw DomainError("stage: n must be <= 63");
	length_ = t_right(n);
}

std::uint64_t CantorStage::interval_count() const { return std::uint64_t{1} << (n_ - 1); }

Rat CantorStage::measure() const { return Rat(Int(std::to_string(interval_count()))) * length_; }

Rat CantorStage::interval_left(std::uint64_t i) const
{
	if (i >= interval_count())
		throw DomainError("stage interval index out of range");
	Rat left = 0;
	for (unsigned k = 1; k < n_; ++k) {
		if ((i >> (n_ - 1 - k)) & 1u)
			left += right_offset(k);
	}
	return left;
}

QInterval CantorStage::interval(std::uint64_t i) const
{
	Rat left = interval_left(i);
	return QInterval(left, left + length_);
}

QIntervalSet CantorStage::intervals() const
{
	if (n_ > kMaxMaterializedStage)
		throw BudgetExhausted("stage " + std::to_string(n_) + " is too large to materialize");
	std::vector<Rat> lefts{Rat(0)};
	for (unsigned k = 1; k < n_; ++k) {
		Rat off = right_offset(k);
		std::vector<Rat> next;
		next.reserve(lefts.size() * 2);
		for (const auto &l : lefts) {
			next.push_back(l);
			next.push_back(l + off);
		}
		lefts = std::move(next);
	}
	std::vector<QInterval> out;
	out.reserve(lefts.size());
	for (const auto &l : lefts)
		out.emplace_back(l, l + length_);
	return QIntervalSet::from_normalized(std::move(out));
}

std::vector<QInterval> CantorStage::new_holes() const
{
	if (n_ > kMaxMaterializedStage)
		throw BudgetExhausted("stage " + std::to_string(n_) + " is too large to materialize");
	std::vector<QInterval> holes;
	Rat inner = t_right(n_ + 1);
	for (const auto &i : intervals().intervals())
		holes.emplace_back(i.lo() + inner, i.hi() - inner);
	return holes;
}

bool CantorStage::contains(const Rat &x) const { return stage_contains(n_, x); }

CantorStage stage(unsigned n) { return CantorStage(n); }

Rat left_tail_measure(unsigned n, unsigned m)
{
	require_level(n, "left_tail_measure");
	if (m < n)
		throw DomainError("left_tail_measure: requires m >= n");
	// [0, t_n] is the leftmost stage-n interval; it holds 2^(m-n) stage-m intervals.
	return pow2(static_cast<long>(m) - static_cast<long>(n)) * t_right(m);
}

bool stage_contains(unsigned m, const Rat &x)
{
	require_level(m, "stage_contains");
	if (x < 0 || x > 1)
		return false;
	Rat s = 0;
	for (unsigned n = 1; n < m; ++n) {
		if (x <= s + t_right(n + 1))
			continue;
		Rat r = s + right_offset(n);
		if (x >= r)
			s = r;
		else
			return false;
	}
	return true;
}

namespace {

bool avoids_below(unsigned n, unsigned m, const Rat &s, const Rat &lo, const Rat &hi)
{
	Rat end = s + t_right(n);
	if (std::max(lo, s) >= std::min(hi, end))
		return true;
	if (n == m)
		return false;
	return avoids_below(n + 1, m, s, lo, hi) &&
	       avoids_below(n + 1, m, s + right_offset(n), lo, hi);
}

} // namespace

bool stage_avoids(unsigned m, const Rat &lo, const Rat &hi)
{
	require_level(m, "stage_avoids");
	return avoids_below(1, m, Rat(0), lo, hi);
}

std::pair<Rat, Rat> cantor_cdf_bounds(const Rat &x, unsigned depth)
{
	require_level(depth, "cantor_cdf_bounds");
	Rat lower = 0, upper = 0;
	Rat s = 0;
	for (unsigned n = 1;; ++n) {
		Rat len = t_right(n);
		Rat mass = pow2(-static_cast<long>(n));
		if (x >= s + len) {
			lower += mass;
			upper += mass;
			break;
		}
		if (x <= s)
			break;
		if (n == depth) {
			// C carries `mass` inside [s, s+len]; at most s+len-x of it lies right of x.
			Rat right_room = s + len - x;
			if (right_room < mass)
				lower += mass - right_room;
			upper += std::min(mass, Rat(x - s));
			break;
		}
		Rat r = s + right_offset(n);
		if (x >= r) {
			Rat half = pow2(-static_cast<long>(n) - 1);
			lower += half;
			upper += half;
			s = r;
		}
	}
	return {lower, upper};
}

std::pair<Rat, Rat> cantor_measure_bounds(const Rat &lo, const Rat &hi, unsigned depth)
{
	if (hi <= lo)
		return {Rat(0), Rat(0)};
	auto [a_lo, a_hi] = cantor_cdf_bounds(lo, depth);
	auto [b_lo, b_hi] = cantor_cdf_bounds(hi, depth);
	Rat l = b_lo - a_hi;
	if (l < 0)
		l = 0;
	return {l, b_hi - a_lo};
}

QInterval hole_interval(const HoleAddress &h)
{
	validate(h);
	Rat left = CantorStage(h.generation).interval_left(h.index);
	Rat inner = t_right(h.generation + 1);
	return QInterval(left + inner, left + t_right(h.generation) - inner);
}

QInterval hull_of(const ComponentPath &path)
{
	if (path.level != path.chain.size() + 1)
		throw DomainError("component path level does not match its hole chain");
	QInterval hull(Rat(0), Rat(1));
	for (const auto &h : path.chain)
		hull = affine_image(hole_interval(h), hull);
	return hull;
}

std::uint64_t canonical_index(const ComponentPath &path)
{
	if (path.level != path.chain.size() + 1)
		throw DomainError("component path level does not match its hole chain");
	const std::size_t len = path.chain.size();
	if (len == 0)
		return 1;
	unsigned g = 0;
	for (const auto &h : path.chain) {
		validate(h);
		g = std::max(g, h.generation);
	}
	auto alphabet = [](unsigned gen) {
		Int a;
		mpz_ui_pow_ui(a.get_mpz_t(), 2, gen);
		return Int(a - 1);
	};
	auto power = [](const Int &b, std::size_t e) {
		Int r;
		mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
		return r;
	};
	Int a_g = alphabet(g), a_prev = alphabet(g - 1);
	Int before = power(a_prev, len); // chains using only generations < g
	Int rank = 0;
	bool has_g = false;
	Int first_g_rank = a_prev; // rank of (g, 0)
	for (std::size_t i = 0; i < len; ++i) {
		std::size_t rem = len - i - 1;
		Int r = Int(std::to_string(symbol_rank(path.chain[i])));
		Int with_g = r > first_g_rank ? Int(r - first_g_rank) : Int(0);
		Int all_rem = power(a_g, rem);
		if (has_g)
			rank += r * all_rem;
		else
			rank += (r - with_g) * (all_rem - power(a_prev, rem)) + with_g * all_rem;
		has_g = has_g || path.chain[i].generation == g;
	}
	Int index = before + rank + 1;
	if (!index.fits_ulong_p())
		throw BudgetExhausted("canonical component index exceeds 64 bits");
	return index.get_ui();
}

std::uint64_t component_count(unsigned n, unsigned depth)
{
	require_level(n, "component_count");
	if (n == 1)
		return 1;
	if (depth >= 64)
		return std::numeric_limits<std::uint64_t>::max();
	return saturating_pow((std::uint64_t{1} << depth) - 1, n - 1);
}

std::vector<Component> enumerate_components(unsigned n, unsigned depth, std::uint64_t max_count)
{
	require_level(n, "enumerate_components");
	if (n == 1)
		return {Component{ComponentPath{1, {}}, QInterval(Rat(0), Rat(1)), 1}};
	if (depth == 0)
		return {};
	std::uint64_t total = component_count(n, depth);
	if (total > max_count)
		throw BudgetExhausted("A_" + std::to_string(n) + " has " + std::to_string(total) +
				      " components at depth " + std::to_string(depth) +
				      ", above the enumeration budget");
	std::vector<Component> out;
	out.reserve(total);
	for (unsigned g = 1; g <= depth; ++g) {
		ChainWalker walker(n - 1, g);
		walker.run([&](const std::vector<HoleAddress> &chain, const QInterval &hull) {
			out.push_back(Component{ComponentPath{n, chain}, hull, out.size() + 1});
			return true;
		});
	}
	return out;
}

std::vector<Component> first_components(unsigned n, std::uint64_t count)
{
	require_level(n, "first_components");
	std::vector<Component> out;
	if (count == 0)
		return out;
	if (n == 1)
		return enumerate_components(1, 1);
	for (unsigned g = 1; out.size() < count; ++g) {
		if (g > 63)
			throw BudgetExhausted("component enumeration exceeded generation 63");
		ChainWalker walker(n - 1, g);
		walker.run([&](const std::vector<HoleAddress> &chain, const QInterval &hull) {
			out.push_back(Component{ComponentPath{n, chain}, hull, out.size() + 1});
			return out.size() < count;
		});
	}
	return out;
}

Rat enumerated_component_measure(unsigned n, unsigned depth)
{
	require_level(n, "enumerated_component_measure");
	Rat per_level = Rat(1, 2) - pow2(-static_cast<long>(depth) - 1);
	if (n > 1 && depth == 0)
		return 0;
	return Rat(1, 2) * ipow(per_level, static_cast<long>(n) - 1);
}

CBuiltApprox a_set(unsigned n, unsigned component_depth, unsigned cantor_stage)
{
	require_level(n, "a_set");
	require_level(cantor_stage, "a_set cantor stage");
	CBuiltApprox out{n, component_depth, cantor_stage, {}, {}, 0, 0, 0, 0, 0};
	out.components = enumerate_components(n, component_depth);
	QIntervalSet base = CantorStage(cantor_stage).intervals();
	std::vector<QInterval> pieces;
	pieces.reserve(out.components.size() * base.size());
	for (const auto &c : out.components) {
		out.hull_length += c.hull.length();
		for (const auto &i : base.intervals())
			pieces.push_back(affine_image(i, c.hull));
	}
	out.realization = QIntervalSet(std::move(pieces));
	out.realization_measure = measure(out.realization);
	Rat full = pow2(-static_cast<long>(n));
	out.omitted_measure = full - enumerated_component_measure(n, component_depth);
	out.lower_bound = full - out.omitted_measure;
	out.upper_bound = full + pow2(-static_cast<long>(cantor_stage)) * out.hull_length;
	return out;
}

std::pair<Rat, Rat> a_set_cdf_bounds(unsigned n, const Rat &x, unsigned depth)
{
	require_level(n, "a_set_cdf_bounds");
	if (x <= 0)
		return {0, 0};
	if (x >= 1)
		return {pow2(-static_cast<long>(n)), pow2(-static_cast<long>(n))};
	Rat left = 0;   // current stage-g interval is [left, left + t_g]
	Rat before = 0; // C-measure to the left of it
	for (unsigned g = 1; g <= depth; ++g) {
		Rat tg = t_right(g), tc = t_right(g + 1);
		Rat h0 = left + tc, h1 = left + tg - tc;
		if (x <= h0)
			continue;
		Rat child_mass = pow2(-static_cast<long>(g + 1));
		if (x < h1) {
			Rat cmass = before + child_mass; // m(C ∩ [0, h0])
			if (n == 1)
				return {cmass, cmass};
			Rat base = pow2(1 - static_cast<long>(n)) * (h0 - cmass);
			Rat w = h1 - h0;
			auto inner = a_set_cdf_bounds(n - 1, (x - h0) / w, depth);
			return {base + w * inner.first, base + w * inner.second};
		}
		before += child_mass;
		left = h1;
	}
	// x is in [left, left + t_(depth+1)]; holes inside it were not resolved.
	Rat c_mass = pow2(-static_cast<long>(depth + 1));
	if (n == 1)
		return {before, before + std::min(c_mass, Rat(x - left))};
	Rat scale = pow2(1 - static_cast<long>(n));
	Rat base = scale * (left - before);
	return {base, base + scale * (t_right(depth + 1) - c_mass)};
}

bool lies_in(const QInterval &hull, const QInterval &u) { return u.contains(hull); }

Component find_component_in(const QInterval &u, unsigned n, unsigned max_generation,
			    std::uint64_t max_visits)
{
	require_level(n, "find_component_in");
	if (u.degenerate())
		throw DomainError("find_component_in: U must have nonempty interior");
	QInterval unit(Rat(0), Rat(1));
	if (n == 1) {
		if (lies_in(unit, u))
			return Component{ComponentPath{1, {}}, unit, 1};
		throw BudgetExhausted("witness not found at depth 0: A_1 has the single component [0,1]");
	}

	std::uint64_t visits = 0;
	std::vector<HoleAddress> chain;
	const std::size_t length = n - 1;

	// Depth-first search in canonical order, pruned to hulls meeting U.
	std::function<bool(const QInterval &, unsigned)> search = [&](const QInterval &hull,
								      unsigned g) -> bool {
		if (++visits > max_visits)
			throw BudgetExhausted("witness not found at depth " + std::to_string(g) +
					      ": visit budget exhausted");
		if (chain.size() == length)
			return lies_in(hull, u);
		// Coordinates of U relative to the current hull.
		Rat len = hull.length();
		Rat rel_lo = (u.lo() - hull.lo()) / len;
		Rat rel_hi = (u.hi() - hull.hi()) / len + 1;
		if (rel_lo < 0)
			rel_lo = 0;
		if (rel_hi > 1)
			rel_hi = 1;
		for (unsigned gen = 1; gen <= g; ++gen) {
			std::uint64_t first = first_interval_after(gen, rel_lo);
			long long last = last_interval_before(gen, rel_hi);
			for (long long i = static_cast<long long>(first); i <= last; ++i) {
				HoleAddress h{gen, static_cast<std::uint64_t>(i)};
				QInterval hole = hole_interval(h);
				if (std::max(hole.lo(), rel_lo) >= std::min(hole.hi(), rel_hi))
					continue;
				chain.push_back(h);
				if (search(affine_image(hole, hull), g))
					return true;
				chain.pop_back();
			}
		}
		return false;
	};

	for (unsigned g = 1; g <= max_generation; ++g) {
		chain.clear();
		if (search(unit, g)) {
			ComponentPath path{n, chain};
			QInterval hull = hull_of(path);
			if (!lies_in(hull, u))
				throw DomainError("internal: witness hull escaped U");
			return Component{path, hull, canonical_index(path)};
		}
	}
	throw BudgetExhausted("witness not found at depth " + std::to_string(max_generation));
}

WitnessChain witness_chain(const QInterval &u, unsigned span, unsigned max_level,
			   unsigned max_generation)
{
	for (unsigned n0 = 1; n0 + span <= max_level; ++n0) {
		WitnessChain out{n0, {}};
		bool ok = true;
		for (unsigned n = n0; n <= n0 + span; ++n) {
			try {
				out.components.push_back(find_component_in(u, n, max_generation));
			} catch (const BudgetExhausted &) {
				ok = false;
				n0 = n; // the loop increment moves past the failing level
				break;
			}
		}
		if (ok)
			return out;
	}
	throw BudgetExhausted("witness chain not found below level " + std::to_string(max_level));
}

} // namespace nowhereq

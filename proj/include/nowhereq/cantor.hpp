/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/interval_set.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace nowhereq {

// The fat Cantor set C of measure 1/2: stage 1 is [0,1], and stage n+1
// removes from each of the 2^(n-1) intervals of stage n its centered open
// interval of length 4^-n. All intervals of stage n have the same length t_n.

/// Stage numbers above this are never materialized as interval lists.
inline constexpr unsigned kMaxMaterializedStage = 24;

/// Right endpoint of the leftmost interval of stage n (= common length of
/// all stage-n intervals): t_n = 2^(1-2n) + 2^-n.
Rat t_right(unsigned n);

/// Bound checks for t_n against 2^(3-2n) (stated strict bound) and the
/// bound 2^(1-n) that actually holds.
struct TBoundCheck {
	unsigned n;
	Rat t;
	Rat stated_bound;  // 2^(3-2n)
	bool stated_holds; // t < 2^(3-2n)
	Rat valid_bound;   // 2^(1-n)
	bool valid_holds;  // t <= 2^(1-n)
};
TBoundCheck check_t_bounds(unsigned n);

class CantorStage {
public:
	explicit CantorStage(unsigned n);

	unsigned n() const { return n_; }
	const Rat &interval_length() const { return length_; }
	std::uint64_t interval_count() const;
	/// count * length; every stage-n interval has length t_n.
	Rat measure() const;

	/// Left endpoint of the i-th interval (0-based, left to right).
	Rat interval_left(std::uint64_t i) const;
	QInterval interval(std::uint64_t i) const;
	/// All 2^(n-1) intervals; n <= kMaxMaterializedStage.
	QIntervalSet intervals() const;
	/// The 2^(n-1) holes of generation n, removed when forming stage n+1.
	std::vector<QInterval> new_holes() const;

	bool contains(const Rat &x) const;

private:
	unsigned n_;
	Rat length_;
};

CantorStage stage(unsigned n);

/// measure(stage(m) ∩ [0, t_n]) = 2^-n + 2^(1-n-m), for m >= n.
Rat left_tail_measure(unsigned n, unsigned m);

/// x in stage m, for x in [0,1] (false outside).
bool stage_contains(unsigned m, const Rat &x);
/// The interval [lo, hi] meets stage m in a set of measure zero.
bool stage_avoids(unsigned m, const Rat &lo, const Rat &hi);

/// Two-sided bound on m(C ∩ [0, x]) from a descent of `depth` stages;
/// the gap is at most 2^-depth.
std::pair<Rat, Rat> cantor_cdf_bounds(const Rat &x, unsigned depth);
/// Two-sided bound on m(C ∩ [lo, hi]).
std::pair<Rat, Rat> cantor_measure_bounds(const Rat &lo, const Rat &hi, unsigned depth);

/// A hole of C: removed at step `generation`, centered in the index-th
/// interval of stage `generation`.
struct HoleAddress {
	unsigned generation;
	std::uint64_t index;

	friend auto operator<=>(const HoleAddress &, const HoleAddress &) = default;
};

QInterval hole_interval(const HoleAddress &h);

/// Where a C-component of A_n sits: level n and the chain of n-1 holes
/// descending from [0,1] (each address is relative to the component above).
struct ComponentPath {
	unsigned level = 1;
	std::vector<HoleAddress> chain;

	friend bool operator==(const ComponentPath &, const ComponentPath &) = default;
};

QInterval hull_of(const ComponentPath &path);

/// Position (1-based) of the component in the canonical enumeration of A_n:
/// first by the largest hole generation used in the chain, then
/// lexicographically by (generation, index) along the chain. Prefixes of
/// this order are the components with all generations <= D.
/// Throws BudgetExhausted if the position does not fit in 64 bits.
std::uint64_t canonical_index(const ComponentPath &path);

/// (2^D - 1)^(n-1), saturating at UINT64_MAX.
std::uint64_t component_count(unsigned n, unsigned depth);

struct Component {
	ComponentPath path;
	QInterval hull;
	std::uint64_t index;
};

/// All components of A_n with hole generations <= depth, canonical order.
std::vector<Component> enumerate_components(unsigned n, unsigned depth,
					    std::uint64_t max_count = 1u << 22);
/// The first `count` components of A_n in canonical order.
std::vector<Component> first_components(unsigned n, std::uint64_t count);

/// Truncation of the C-built set A_n: components with hole generations
/// <= component_depth, each realized by the stage-m image of C.
struct CBuiltApprox {
	unsigned level;
	unsigned component_depth;
	unsigned cantor_stage;
	std::vector<Component> components;
	QIntervalSet realization;
	Rat realization_measure;
	Rat hull_length;    // total length of the enumerated hulls
	Rat omitted_measure; // m(A_n) minus the C-measure of enumerated components
	Rat lower_bound;    // 2^-n - omitted_measure
	Rat upper_bound;    // 2^-n + 2^-m * hull_length
};

CBuiltApprox a_set(unsigned n, unsigned component_depth, unsigned cantor_stage);

/// Exact m(A_n) restricted to components of generation <= depth:
/// (1/2) (1/2 - 2^-(depth+1))^(n-1).
Rat enumerated_component_measure(unsigned n, unsigned depth);

/// Two-sided bounds on m(A_n ∩ [0, x]) from the recursion
/// A_(n+1) = union over holes H of C of the affine copies (A_n)_H, descending
/// at most `depth` stages per level; exact whenever x sits in a hole found
/// within that depth.
std::pair<Rat, Rat> a_set_cdf_bounds(unsigned n, const Rat &x, unsigned depth);

/// hull ⊆ closure(U). U is read as the open interval (a, b); a component
/// whose hull only touches a or b still lies in U up to a null set, which is
/// all that integrals over U can see.
bool lies_in(const QInterval &hull, const QInterval &u);

/// The canonically first component of A_n whose hull lies in U, searching
/// hole generations up to max_generation.
/// Throws BudgetExhausted ("witness not found at depth ...") otherwise.
Component find_component_in(const QInterval &u, unsigned n, unsigned max_generation = 40,
			    std::uint64_t max_visits = 4'000'000);

struct WitnessChain {
	unsigned n0;
	std::vector<Component> components; // for n0, n0+1, ..., n0+K
};

/// Smallest n0 such that A_n has a component inside U for every n in
/// [n0, n0+span]; each component is verified by exact containment.
WitnessChain witness_chain(const QInterval &u, unsigned span, unsigned max_level = 64,
			   unsigned max_generation = 40);

} // namespace nowhereq

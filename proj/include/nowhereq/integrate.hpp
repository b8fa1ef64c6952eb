/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/singular.hpp"

#include <cstddef>
#include <optional>

namespace nowhereq {

/// Outcome of a certified integral. `infinite` is a result, not an error.
struct IntegralResult {
	bool infinite = false;
	std::optional<Enclosure> value; // set iff !infinite
	bool budget_exhausted = false;
	std::size_t cells = 0;   // cells evaluated by the refinement
	unsigned max_depth = 0;  // deepest refinement level reached
	double width = 0;        // achieved width (rounded up)

	static IntegralResult divergent();
};

struct QuadratureOptions {
	Rat target_width = Rat(1, 10'000'000'000);
	std::size_t cell_budget = 400'000;
	unsigned precision = kDefaultPrecision;
};

/// Which measure a group of terms is integrated against, in the coordinates
/// of the group's support: plain Lebesgue, Lebesgue on the stage-m set, or
/// Lebesgue on C itself.
enum class MeasureKind { lebesgue, stage, cantor };

/// Closed-form integral of |t|^q over S ∩ support(t) against Lebesgue measure.
/// When the term is masked, S ∩ support must lie inside the mask.
IntegralResult integral_power_term(const PowerTerm &t, const QIntervalSet &s, const Rat &q,
				   unsigned precision = kDefaultPrecision,
				   const NormalizerBinding &binding = {});

/// Certified lower bound for the integral of |f|^q over S obtained from the
/// single term `pick` (valid because all terms are nonnegative).
/// Throws DomainError if the term's support does not cover S.
IntegralResult lower_bound_sum_q(const SingularFunction &f, const QIntervalSet &s, const Rat &q,
				 std::size_t pick, unsigned precision = kDefaultPrecision,
				 const NormalizerBinding &binding = {});

/// Two-sided enclosure of the integral of (sum of terms)^q over S.
IntegralResult enclose_sum_q(const SingularFunction &f, const QIntervalSet &s, const Rat &q,
			     const QuadratureOptions &opt = {}, const NormalizerBinding &binding = {});

/// Integral of (sum_i c_i y^(-e_i))^q over a window W of [0,1] against the
/// given measure (stage index used for MeasureKind::stage).
IntegralResult integrate_group(const std::vector<Enclosure> &coeffs, const std::vector<Rat> &exps,
			       const Rat &q, MeasureKind kind, unsigned stage_index,
			       const QIntervalSet &window, const QuadratureOptions &opt);

struct NormReport {
	Enclosure masked;     // ||chi_(C^(m)) h~_J||_p
	Enclosure on_cantor;  // ||chi_C h~_J||_p
	Enclosure normalizer; // N = ||h||_p, in [on_cantor.lo, on_cantor.hi + 2^-J]
	IntegralResult masked_run;
	IntegralResult cantor_run;
};

NormReport norm_h_enclosure(unsigned series_terms, unsigned cantor_stage,
			    const ExponentSchedule &sched, const QuadratureOptions &opt = {});

/// Masked supports of a and b meet in a null set (structural test on the
/// nested hull family; false means "not proven").
bool supports_almost_disjoint(const PowerTerm &a, const PowerTerm &b);

} // namespace nowhereq

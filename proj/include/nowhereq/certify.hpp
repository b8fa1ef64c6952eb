/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/family.hpp"
#include "nowhereq/integrate.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nowhereq {

/// Cached ||chi_C h~_J||_p based enclosure of N = ||h||_p.
struct NormalizerEstimate {
	Enclosure on_cantor;
	Enclosure normalizer;
	IntegralResult run;
};

NormalizerEstimate normalizer_estimate(unsigned series_terms, const ExponentSchedule &sched,
				       const QuadratureOptions &opt);

// Growth chain of the divergence argument.

struct LemmaRow {
	unsigned n;
	Rat t;               // t_n
	Rat tail_measure;    // m(C ∩ [0, t_n]) = 2^-n
	Enclosure lb;        // 2^-n t_n^-s
	bool step1_holds;    // t_n < 2^(3-2n), exact
	Enclosure step2;     // 2^-n 2^(s(2n-3))
	Verdict lb_above_step2;
	bool final_claim_holds; // 2^(-n) 2^(s(2n-3)) > 2^((2s-1)n), exact exponent comparison
	Enclosure corrected; // 2^((s-1)n - s)
	Verdict lb_above_corrected;
};

struct LemmaChainReport {
	Rat p, q;
	unsigned j0;
	Rat r_j0;
	Rat s; // q / r_j0
	std::vector<LemmaRow> rows;
};

/// Throws DomainError naming the smallest valid j0 when r_j0 >= q.
LemmaChainReport lemma_chain(const ExponentSchedule &sched, const Rat &q, std::optional<unsigned> j0,
			     unsigned n_max, unsigned precision = kDefaultPrecision);

// Divergence on an open interval.

struct DivergenceWitness {
	unsigned outer_index = 0; // j: summand f_(n_j) of g_k
	unsigned level = 0;       // n_j
	ComponentPath path;
	QInterval hull{0, 1};
	std::uint64_t component_index = 1; // l
	unsigned series_term = 0;          // j0
	unsigned tail_n = 0;               // n in m(C ∩ [0,t_n]) t_n^-s
	std::optional<Rat> point;          // q = inf: point with a certified large value
};

struct DivergenceBudget {
	unsigned max_tail = 20000;
	unsigned max_generation = 40;
};

struct DivergenceCertificate {
	unsigned k;
	GTruncation trunc;
	Rat p;
	std::string schedule;
	QInterval u;
	std::optional<Rat> q; // nullopt: q = infinity
	Rat target;           // M
	DivergenceWitness witness;
	std::string coefficient; // (w_j w_l |I|^(-1/p) c_j0)^q, N^-q >= 1 dropped
	Enclosure bound;      // certified lower bound lives in bound.lo
	Verdict status;       // holds iff bound.lo >= M
	std::string note;
	unsigned precision;
};

DivergenceCertificate certify_divergence(unsigned k, const GTruncation &trunc,
					 const ExponentSchedule &sched, const QInterval &u,
					 std::optional<Rat> q, const Rat &target,
					 const DivergenceBudget &budget = {},
					 unsigned precision = kDefaultPrecision);

/// Recomputes the bound from the stored witness only.
DivergenceCertificate replay_divergence(const DivergenceCertificate &cert,
					const ExponentSchedule &sched);

// Norm of g_k.

struct MembershipCertificate {
	unsigned k;
	GTruncation trunc;
	Rat p;
	std::string schedule;
	Rat included;       // exact sum of p-th powers of the included weights
	Rat component_tail; // omitted components, p-th power mass
	Rat outer_tail;     // omitted outer summands, p-th power mass
	Rat series_tail;    // L^p bound of the omitted h-series: 2^-J
	bool weights_sum_to_one; // included + tails == 1 exactly
	Enclosure normalizer;
	Enclosure ratio;    // (||h||_p / N)^p with both enclosed by `normalizer`
	Enclosure norm_pth;
	Enclosure norm;
	Enclosure literal_weight_norm; // norm under the weights 2^-l, 2^-j
	Verdict contains_one;
	IntegralResult normalizer_run;
	unsigned precision;
};

MembershipCertificate certify_membership(unsigned k, const GTruncation &trunc,
					 const ExponentSchedule &sched,
					 const QuadratureOptions &opt);

/// Exact sum over included (j, l) of (w_j w_l)^p, with the weight tails.
struct WeightSums {
	Rat included, component_tail, outer_tail;
};
WeightSums weight_sums(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched);

// Isometry on span(g_k).

struct SupportCheck {
	std::size_t supports = 0;
	std::size_t nested_pairs = 0;
	bool almost_disjoint = true;
};

/// Masked supports of all components of the given g_k are pairwise almost disjoint.
SupportCheck check_supports(const std::vector<unsigned> &ks, const GTruncation &trunc);

struct SymbolicTermCheck {
	std::size_t terms = 0;
	bool coefficients_match = true; // coeff^p |I| / c_j^p / N^-p == (w_j w_l)^p
	Rat weight_sum;                 // sum over components of (w_j w_l)^p
};

/// Recovers the weights from the built terms of g_k.
SymbolicTermCheck check_terms(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched);

struct IsometryReport {
	std::vector<Rat> a;
	Rat p;
	GTruncation trunc;
	SupportCheck supports;
	std::vector<SymbolicTermCheck> terms;
	bool symbolic_identity; // sum |a_k|^p (included_k + tails_k) == sum |a_k|^p, supports disjoint
	// Integer p only: both sides of that identity as exact rationals.
	std::optional<Rat> symbolic_pth_sum;
	std::optional<Rat> coeff_pth_sum;
	Enclosure lhs;          // ||sum a_k g_k||_p
	Enclosure rhs;          // (sum |a_k|^p)^(1/p)
	Enclosure ratio;
	Verdict ratio_contains_one;
	unsigned precision;
};

IsometryReport isometry_check(const std::vector<Rat> &a, const GTruncation &trunc,
			      const ExponentSchedule &sched, const QuadratureOptions &opt);

// Projection onto span(g_1..g_K).

/// Step function on [0,1]: values[i] on [breaks[i], breaks[i+1]).
struct StepFunction {
	std::vector<Rat> breaks;
	std::vector<Rat> values;

	void validate() const;
	Rat lp_norm_pth(const Rat &p) const; // exact for integer p
	Rat sup_norm() const;
};

/// Reproducible pseudo-random step function with rational data.
StepFunction random_step_function(std::uint64_t seed, unsigned cells);

struct ProjectionOptions {
	unsigned max_level = 64;  // deeper levels of A_k enter as slack
	unsigned cdf_depth = 48;
};

/// phi_k(f) = ∫_(supp g_k) f for p = 1 (g_k has norm one).
Enclosure projection_coeff(const StepFunction &f, unsigned k, const Rat &p,
			   const ProjectionOptions &popt = {}, unsigned precision = kDefaultPrecision);

/// phi_k(g_k') = delta_kk' ||g_k||_p^p; exactly 0 off the diagonal.
Enclosure projection_coeff_basis(unsigned k_basis, unsigned k, const MembershipCertificate &member);

struct ProjectionReport {
	unsigned K;
	Rat p;
	std::vector<std::vector<Enclosure>> gram; // gram[k][k'] = phi_k(g_k')
	bool off_diagonal_zero;
	bool symbolic_idempotent;   // diagonal is exactly 1 at the symbolic level
	Verdict diagonal_contains_one;
	double max_diagonal_width;
	struct StepCase {
		std::uint64_t seed;
		Rat f_norm;                 // ||f||_1
		std::vector<Enclosure> phi; // phi_k(f)
		Enclosure pf_norm;          // ||Pf||_1
		Verdict contraction;        // ||Pf||_1 <= ||f||_1
	};
	std::vector<StepCase> steps;
	unsigned precision;
};

/// P = sum_k phi_k(.) g_k; checks the Gram matrix and, for p = 1, the norm
/// bound on `step_cases` pseudo-random step functions.
ProjectionReport projection_check(unsigned K, const GTruncation &trunc, const ExponentSchedule &sched,
				  const QuadratureOptions &opt, unsigned step_cases = 0,
				  std::uint64_t seed = 20260101, const ProjectionOptions &popt = {});

/// The combination P f = sum_k phi_k(f) g_k as (coefficient, basis index).
std::vector<std::pair<Enclosure, unsigned>> projection_apply(const StepFunction &f, unsigned K,
							     const Rat &p,
							     const ProjectionOptions &popt = {},
							     unsigned precision = kDefaultPrecision);

} // namespace nowhereq

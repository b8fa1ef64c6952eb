/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/cantor.hpp"
#include "nowhereq/enclosure.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nowhereq {

/// The exponent p and a strictly decreasing sequence r_j -> p with r_j > p.
/// h_j(x) = x^(-1/r_j) then has ||h_j||_p^p = r_j / (r_j - p).
class ExponentSchedule {
public:
	using Rule = std::function<Rat(unsigned)>;

	/// r_j = p (j + 1) / j, so that ||h_j||_p^p = j + 1.
	static ExponentSchedule standard(const Rat &p);
	/// Any rule; validated lazily on the indices that get used. Lambdas must
	/// return Rat explicitly (`-> Rat`), not a gmp expression over temporaries.
	static ExponentSchedule custom(const Rat &p, Rule rule, std::string name);

	const Rat &p() const { return p_; }
	const std::string &name() const { return name_; }
	bool is_standard() const { return standard_; }

	Rat r(unsigned j) const;
	/// 1 / r_j, the exponent of h_j.
	Rat exponent(unsigned j) const { return 1 / r(j); }
	/// ||h_j||_p^p = r_j / (r_j - p), exact.
	Rat norm_pow(unsigned j) const;
	/// Smallest j with r_j < q (requires q > p).
	unsigned first_index_below(const Rat &q) const;
	/// Checks r_1 > ... > r_count > p.
	void validate(unsigned count) const;

private:
	ExponentSchedule(Rat p, Rule rule, std::string name, bool standard);

	Rat p_;
	Rule rule_;
	std::string name_;
	bool standard_;
};

struct PowFactor {
	Rat base; // > 0
	Rat exp;

	friend bool operator==(const PowFactor &, const PowFactor &) = default;
};

/// Value bound to the symbolic normalizer N = ||h||_p.
struct NormalizerBinding {
	std::optional<Enclosure> normalizer;
};

/// Positive coefficient factor * prod base^exp * N^normalizer_power, kept
/// exact. Equal bases are merged and integral parts of exponents are folded
/// into the rational factor, so p-th powers of dyadic weights become
/// rational again.
class CoeffExpr {
public:
	CoeffExpr() : factor_(1) {}
	explicit CoeffExpr(Rat factor);

	static CoeffExpr power(const Rat &base, const Rat &exp);
	static CoeffExpr normalizer(const Rat &power);

	const Rat &factor() const { return factor_; }
	const std::vector<PowFactor> &powers() const { return powers_; }
	const Rat &normalizer_power() const { return normalizer_power_; }
	bool is_rational() const { return powers_.empty() && normalizer_power_ == 0; }

	CoeffExpr pow(const Rat &e) const;
	friend CoeffExpr operator*(const CoeffExpr &a, const CoeffExpr &b);
	friend bool operator==(const CoeffExpr &a, const CoeffExpr &b)
	{
		return a.factor_ == b.factor_ && a.powers_ == b.powers_ &&
		       a.normalizer_power_ == b.normalizer_power_;
	}

	/// Requires a bound normalizer when normalizer_power != 0.
	Enclosure evaluate(const NormalizerBinding &binding, unsigned precision) const;

	std::string to_string() const;

private:
	void normalize();

	Rat factor_;
	std::vector<PowFactor> powers_;
	Rat normalizer_power_ = 0;
};

/// Records which C-component (and which outer summand) a term belongs to.
struct ComponentTag {
	unsigned level = 1;       // A_n
	std::uint64_t index = 1;  // position l in the canonical order
	unsigned outer_index = 0; // j in g_k = sum_j w_j f_(n_j); 0 when not part of a g_k
};

/// coeff * ((x - a) / (b - a))^(-exponent) for x in support = [a, b]
/// (and in the mask, when present), 0 elsewhere.
struct PowerTerm {
	CoeffExpr coeff;
	Rat exponent;                  // in (0, 1)
	QInterval support;
	std::optional<unsigned> mask_stage; // stage-m image of C on the support
	std::optional<ComponentTag> component;
	unsigned series_index = 0;     // j of the underlying h_j

	const Rat &origin() const { return support.lo(); }
	Rat scale() const { return support.length(); }
	bool active_at(const Rat &x) const;
};

/// What a SingularFunction approximates and how it was truncated.
struct Construction {
	std::string kind; // h_j, h_tilde, h, rescaled, f_j, g_k, custom
	std::map<std::string, std::string> params;
	/// Exact L^p-norm (p-th power where noted) of what the truncation omits.
	Rat series_tail = 0;    // ||.||_p bound of omitted h-series terms: 2^-J
	Rat component_tail = 0; // p-th power mass of omitted components: 2^-L
	Rat outer_tail = 0;     // p-th power mass of omitted outer summands: 2^-Jg
};

/// Finite positive combination of power terms.
struct SingularFunction {
	std::vector<PowerTerm> terms;
	Construction construction;
};

struct FTruncation {
	unsigned series_terms = 20;   // J
	unsigned components = 20;     // L
	unsigned component_depth = 8; // D
	unsigned cantor_stage = 20;   // m
};

struct GTruncation {
	unsigned outer_terms = 20; // Jg
	FTruncation inner;
};

SingularFunction build_hj(unsigned j, const ExponentSchedule &sched);
SingularFunction build_htilde(unsigned series_terms, const ExponentSchedule &sched);
SingularFunction build_h(unsigned series_terms, unsigned cantor_stage,
			 const ExponentSchedule &sched);
/// f_I(x) = f((x - a)/(b - a)) on I = [a, b], 0 elsewhere.
SingularFunction rescale_into(const SingularFunction &f, const QInterval &i);
/// f_1 = h / N; for j >= 2 the weighted sum over the first components of A_j.
SingularFunction build_fj(unsigned level, const FTruncation &trunc, const ExponentSchedule &sched);
/// g_k = sum_(j <= Jg) w_j f_(n_j^k).
SingularFunction build_gk(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched);

/// The components used by build_fj at this level, in canonical order.
std::vector<Component> fj_components(unsigned level, const FTruncation &trunc);

/// Sum of the term values at x. Throws DomainError at a singular endpoint of
/// an active term.
Enclosure evaluate(const SingularFunction &f, const Rat &x, unsigned precision,
		   const NormalizerBinding &binding = {});

/// Index groups of terms sharing support and mask (consecutive in build order).
std::vector<std::vector<std::size_t>> term_groups(const SingularFunction &f);

} // namespace nowhereq

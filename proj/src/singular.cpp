/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/singular.hpp"

#include "nowhereq/family.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nowhereq {

ExponentSchedule::ExponentSchedule(Rat p, Rule rule, std::string name, bool standard)
    : p_(std::move(p)), rule_(std::move(rule)), name_(std::move(name)), standard_(standard)
{
	if (p_ < 1)
		throw DomainError("exponent p must be >= 1, got " + to_string(p_));
}

ExponentSchedule ExponentSchedule::standard(const Rat &p)
{
	return ExponentSchedule(
	    p, [p](unsigned j) { return Rat(p * (j + 1) / j); }, "p(j+1)/j", true);
}

ExponentSchedule ExponentSchedule::custom(const Rat &p, Rule rule, std::string name)
{
	return ExponentSchedule(p, std::move(rule), std::move(name), false);
}

Rat ExponentSchedule::r(unsigned j) const
{
	if (j == 0)
		throw DomainError("schedule index starts at 1");
	Rat v = rule_(j);
	v.canonicalize();
	if (!(v > p_))
		throw DomainError("schedule value r_" + std::to_string(j) + " = " + to_string(v) +
				  " is not above p");
	return v;
}

Rat ExponentSchedule::norm_pow(unsigned j) const
{
	Rat rj = r(j);
	return rj / (rj - p_);
}

unsigned ExponentSchedule::first_index_below(const Rat &q) const
{
	if (!(q > p_))
		throw DomainError("need q > p");
	if (standard_) {
		Rat x = p_ / (q - p_);
		Int f = x.get_num() / x.get_den();
		return static_cast<unsigned>(f.get_ui()) + 1;
	}
	for (unsigned j = 1; j < 1'000'000; ++j)
		if (r(j) < q)
			return j;
	throw BudgetExhausted("no schedule index with r_j < " + to_string(q) + " below 10^6");
}

void ExponentSchedule::validate(unsigned count) const
{
	Rat prev = r(1);
	for (unsigned j = 2; j <= count; ++j) {
		Rat cur = r(j);
		if (!(cur < prev))
			throw DomainError("schedule is not strictly decreasing at j = " + std::to_string(j));
		prev = cur;
	}
}

CoeffExpr::CoeffExpr(Rat factor) : factor_(std::move(factor))
{
	factor_.canonicalize();
	if (factor_ <= 0)
		throw DomainError("coefficients must be positive");
}

CoeffExpr CoeffExpr::power(const Rat &base, const Rat &exp)
{
	if (base <= 0)
		throw DomainError("power factor needs a positive base");
	CoeffExpr c;
	c.powers_.push_back({base, exp});
	c.normalize();
	return c;
}

CoeffExpr CoeffExpr::normalizer(const Rat &power)
{
	CoeffExpr c;
	c.normalizer_power_ = power;
	return c;
}

namespace {

// Writes base^exp as a product of prime powers so that equal radicals written
// over different bases merge. Trial division stops at 2^20; a larger cofactor
// is kept whole, with perfect powers pulled out.
void split_base(const PowFactor &f, std::vector<PowFactor> &out)
{
	auto split_int = [&](Int n, const Rat &e) {
		for (unsigned long d = 2; d < (1ul << 20) && Int(d) * d <= n; ++d) {
			long count = 0;
			while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
				mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
				++count;
			}
			if (count)
				out.push_back({Rat(d), e * count});
		}
		if (n == 1)
			return;
		Rat ex = e;
		for (unsigned m = 2;; ++m) {
			if (Int(1) << m > n)
				break;
			Int r;
			while (mpz_root(r.get_mpz_t(), n.get_mpz_t(), m)) {
				n = r;
				ex *= m;
			}
		}
		out.push_back({Rat(n), ex});
	};
	split_int(f.base.get_num(), f.exp);
	split_int(f.base.get_den(), -f.exp);
}

} // namespace

void CoeffExpr::normalize()
{
	std::vector<PowFactor> split;
	for (const auto &f : powers_)
		split_base(f, split);
	powers_ = std::move(split);
	std::sort(powers_.begin(), powers_.end(),
		  [](const PowFactor &a, const PowFactor &b) { return a.base < b.base; });
	std::vector<PowFactor> merged;
	for (auto &f : powers_) {
		if (!merged.empty() && merged.back().base == f.base)
			merged.back().exp += f.exp;
		else
			merged.push_back(f);
	}
	powers_.clear();
	for (auto &f : merged) {
		if (f.base == 1 || f.exp == 0)
			continue;
		// Split exp = k + frac with 0 <= frac < 1 and move base^k into factor.
		Int k;
		mpz_fdiv_q(k.get_mpz_t(), f.exp.get_num_mpz_t(), f.exp.get_den_mpz_t());
		if (k != 0) {
			factor_ *= ipow(f.base, k.get_si());
			f.exp -= Rat(k);
		}
		if (f.exp != 0)
			powers_.push_back(f);
	}
}

CoeffExpr CoeffExpr::pow(const Rat &e) const
{
	CoeffExpr c;
	if (is_integer(e)) {
		c.factor_ = ipow(factor_, e.get_num().get_si());
	} else if (factor_ != 1) {
		if (factor_ <= 0)
			throw DomainError("fractional power of a nonpositive coefficient");
		c.powers_.push_back({factor_, e});
	}
	for (const auto &f : powers_)
		c.powers_.push_back({f.base, f.exp * e});
	c.normalizer_power_ = normalizer_power_ * e;
	c.normalize();
	return c;
}

CoeffExpr operator*(const CoeffExpr &a, const CoeffExpr &b)
{
	CoeffExpr c;
	c.factor_ = a.factor_ * b.factor_;
	c.powers_ = a.powers_;
	c.powers_.insert(c.powers_.end(), b.powers_.begin(), b.powers_.end());
	c.normalizer_power_ = a.normalizer_power_ + b.normalizer_power_;
	c.normalize();
	return c;
}

Enclosure CoeffExpr::evaluate(const NormalizerBinding &binding, unsigned precision) const
{
	Enclosure v(factor_, precision);
	for (const auto &f : powers_)
		v = v * rat_pow(f.base, f.exp, precision);
	if (normalizer_power_ != 0) {
		if (!binding.normalizer)
			throw DomainError("coefficient refers to the unbound normalizer N");
		v = v * binding.normalizer->pow(normalizer_power_);
	}
	return v;
}

std::string CoeffExpr::to_string() const
{
	std::ostringstream os;
	os << nowhereq::to_string(factor_);
	for (const auto &f : powers_)
		os << " * (" << nowhereq::to_string(f.base) << ")^(" << nowhereq::to_string(f.exp) << ")";
	if (normalizer_power_ != 0)
		os << " * N^(" << nowhereq::to_string(normalizer_power_) << ")";
	return os.str();
}

bool PowerTerm::active_at(const Rat &x) const
{
	if (!support.contains(x))
		return false;
	if (!mask_stage)
		return true;
	return stage_contains(*mask_stage, (x - support.lo()) / support.length());
}

namespace {

std::string str(unsigned v) { return std::to_string(v); }

void multiply_all(SingularFunction &f, const CoeffExpr &c)
{
	for (auto &t : f.terms)
		t.coeff = t.coeff * c;
}

} // namespace

SingularFunction build_hj(unsigned j, const ExponentSchedule &sched)
{
	SingularFunction f;
	PowerTerm t{CoeffExpr(), sched.exponent(j), QInterval(0, 1), std::nullopt, std::nullopt, j};
	f.terms.push_back(std::move(t));
	f.construction.kind = "h_j";
	f.construction.params = {{"j", str(j)}, {"p", to_string(sched.p())}, {"schedule", sched.name()}};
	return f;
}

SingularFunction build_htilde(unsigned series_terms, const ExponentSchedule &sched)
{
	if (series_terms == 0)
		throw DomainError("series truncation J must be >= 1");
	sched.validate(series_terms);
	SingularFunction f;
	for (unsigned j = 1; j <= series_terms; ++j) {
		CoeffExpr c = CoeffExpr(pow2(-static_cast<long>(j))) *
			      CoeffExpr::power(sched.norm_pow(j), -1 / sched.p());
		f.terms.push_back(
		    {std::move(c), sched.exponent(j), QInterval(0, 1), std::nullopt, std::nullopt, j});
	}
	f.construction.kind = "h_tilde";
	f.construction.params = {
	    {"J", str(series_terms)}, {"p", to_string(sched.p())}, {"schedule", sched.name()}};
	f.construction.series_tail = pow2(-static_cast<long>(series_terms));
	return f;
}

SingularFunction build_h(unsigned series_terms, unsigned cantor_stage, const ExponentSchedule &sched)
{
	if (cantor_stage == 0)
		throw DomainError("cantor stage m must be >= 1");
	SingularFunction f = build_htilde(series_terms, sched);
	for (auto &t : f.terms)
		t.mask_stage = cantor_stage;
	f.construction.kind = "h";
	f.construction.params["m"] = str(cantor_stage);
	return f;
}

SingularFunction rescale_into(const SingularFunction &f, const QInterval &i)
{
	if (i.degenerate())
		throw DomainError("rescale_into a degenerate interval");
	SingularFunction g = f;
	for (auto &t : g.terms)
		t.support = affine_image(t.support, i);
	g.construction.kind = "rescaled";
	g.construction.params["into"] = "[" + to_string(i.lo()) + ", " + to_string(i.hi()) + "]";
	return g;
}

std::vector<Component> fj_components(unsigned level, const FTruncation &trunc)
{
	if (level == 0)
		throw DomainError("level must be >= 1");
	std::uint64_t available = component_count(level, trunc.component_depth);
	return first_components(level, std::min<std::uint64_t>(trunc.components, available));
}

SingularFunction build_fj(unsigned level, const FTruncation &trunc, const ExponentSchedule &sched)
{
	const Rat &p = sched.p();
	SingularFunction h = build_h(trunc.series_terms, trunc.cantor_stage, sched);
	SingularFunction f;
	f.construction.kind = "f_j";
	f.construction.params = {{"level", str(level)},
				 {"J", str(trunc.series_terms)},
				 {"L", str(trunc.components)},
				 {"D", str(trunc.component_depth)},
				 {"m", str(trunc.cantor_stage)},
				 {"p", to_string(p)},
				 {"schedule", sched.name()}};
	f.construction.series_tail = h.construction.series_tail;

	if (level == 1) {
		f.terms = h.terms;
		multiply_all(f, CoeffExpr::normalizer(-1));
		for (auto &t : f.terms)
			t.component = ComponentTag{1, 1, 0};
		return f;
	}

	auto comps = fj_components(level, trunc);
	for (std::size_t idx = 0; idx < comps.size(); ++idx) {
		const Component &c = comps[idx];
		const long l = static_cast<long>(idx + 1);
		CoeffExpr w = CoeffExpr::power(2, Rat(-l) / p) *
			      CoeffExpr::power(c.hull.length(), -1 / p) * CoeffExpr::normalizer(-1);
		SingularFunction part = rescale_into(h, c.hull);
		for (auto &t : part.terms) {
			t.coeff = t.coeff * w;
			t.component = ComponentTag{level, static_cast<std::uint64_t>(l), 0};
			f.terms.push_back(std::move(t));
		}
	}
	f.construction.params["components_used"] = std::to_string(comps.size());
	f.construction.component_tail = pow2(-static_cast<long>(comps.size()));
	return f;
}

SingularFunction build_gk(unsigned k, const GTruncation &trunc, const ExponentSchedule &sched)
{
	if (k == 0 || trunc.outer_terms == 0)
		throw DomainError("g_k needs k >= 1 and Jg >= 1");
	const Rat &p = sched.p();
	SingularFunction g;
	Rat component_tail = 0;
	for (unsigned j = 1; j <= trunc.outer_terms; ++j) {
		std::uint64_t n = seq_value(k, j);
		SingularFunction f = build_fj(static_cast<unsigned>(n), trunc.inner, sched);
		CoeffExpr w = CoeffExpr::power(2, Rat(-static_cast<long>(j)) / p);
		// (w_j)^p times the omitted p-th-power mass of f_(n_j).
		component_tail += pow2(-static_cast<long>(j)) * f.construction.component_tail;
		for (auto &t : f.terms) {
			t.coeff = t.coeff * w;
			t.component->outer_index = j;
			g.terms.push_back(std::move(t));
		}
		g.construction.series_tail = f.construction.series_tail;
	}
	g.construction.kind = "g_k";
	g.construction.params = {{"k", str(k)},
				 {"Jg", str(trunc.outer_terms)},
				 {"J", str(trunc.inner.series_terms)},
				 {"L", str(trunc.inner.components)},
				 {"D", str(trunc.inner.component_depth)},
				 {"m", str(trunc.inner.cantor_stage)},
				 {"p", to_string(p)},
				 {"schedule", sched.name()}};
	g.construction.component_tail = component_tail;
	g.construction.outer_tail = pow2(-static_cast<long>(trunc.outer_terms));
	return g;
}

Enclosure evaluate(const SingularFunction &f, const Rat &x, unsigned precision,
		   const NormalizerBinding &binding)
{
	if (x < 0 || x > 1)
		throw DomainError("evaluation point outside [0,1]");
	Enclosure sum(Rat(0), precision);
	for (const auto &t : f.terms) {
		if (!t.active_at(x))
			continue;
		if (x == t.origin())
			throw DomainError("singular point: x = " + to_string(x) +
					  " is the singular endpoint of an active term");
		Rat y = (x - t.origin()) / t.scale();
		sum += t.coeff.evaluate(binding, precision) * rat_pow(y, -t.exponent, precision);
	}
	return sum;
}

std::vector<std::vector<std::size_t>> term_groups(const SingularFunction &f)
{
	std::vector<std::vector<std::size_t>> groups;
	for (std::size_t i = 0; i < f.terms.size(); ++i) {
		const auto &t = f.terms[i];
		bool same = false;
		if (!groups.empty()) {
			const auto &u = f.terms[groups.back().front()];
			same = u.support == t.support && u.mask_stage == t.mask_stage;
		}
		if (same)
			groups.back().push_back(i);
		else
			groups.push_back({i});
	}
	return groups;
}

std::uint64_t SequenceFamily::value(std::uint64_t k, std::uint64_t j)
{
	if (k == 0 || j == 0)
		throw DomainError("sequence family indices start at 1");
	if (k > 63 || j > (std::uint64_t{1} << 62))
		throw DomainError("sequence value overflows 64 bits");
	std::uint64_t odd = 2 * j - 1;
	std::uint64_t shift = k - 1;
	if (odd > (UINT64_MAX >> shift))
		throw DomainError("sequence value overflows 64 bits");
	return odd << shift;
}

std::pair<std::uint64_t, std::uint64_t> SequenceFamily::locate(std::uint64_t n)
{
	if (n == 0)
		throw DomainError("sequence family covers the positive integers");
	std::uint64_t k = 1;
	while ((n & 1) == 0) {
		n >>= 1;
		++k;
	}
	return {k, (n + 1) / 2};
}

} // namespace nowhereq

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/integrate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>

namespace nowhereq {

IntegralResult IntegralResult::divergent()
{
	IntegralResult r;
	r.infinite = true;
	return r;
}

namespace {

// [u, v] lies inside one interval of stage m.
bool stage_covers(unsigned m, const Rat &u, const Rat &v)
{
	Rat left = 0;
	for (unsigned n = 1; n < m; ++n) {
		Rat child = t_right(n + 1);
		Rat right_left = left + t_right(n) - child;
		if (v <= left + child)
			continue; // both in the left child
		if (u >= right_left) {
			left = right_left;
			continue;
		}
		return false;
	}
	return true;
}

// ∫_u^v y^(-a) dy, or nullopt when it diverges.
std::optional<Enclosure> power_integral(const Rat &u, const Rat &v, const Rat &a, unsigned prec)
{
	if (u == v)
		return Enclosure(Rat(0), prec);
	if (a == 1) {
		if (u == 0)
			return std::nullopt;
		return rat_log(v / u, prec);
	}
	Rat b = 1 - a;
	if (b < 0 && u == 0)
		return std::nullopt;
	Enclosure hi = rat_pow(v, b, prec);
	Enclosure lo = u == 0 ? Enclosure(Rat(0), prec) : rat_pow(u, b, prec);
	return (hi - lo) / Enclosure(b, prec);
}

QIntervalSet relative_window(const QIntervalSet &s, const QInterval &support)
{
	std::vector<QInterval> out;
	Rat len = support.length();
	for (const auto &i : intersect(s, QIntervalSet{support}).intervals())
		out.emplace_back((i.lo() - support.lo()) / len, (i.hi() - support.lo()) / len);
	return QIntervalSet(std::move(out));
}

enum class Rel { inside, outside, partial };

Rel relation(const QIntervalSet &w, const Rat &lo, const Rat &hi)
{
	const auto &v = w.intervals();
	auto it = std::upper_bound(v.begin(), v.end(), lo,
				   [](const Rat &x, const QInterval &i) { return x < i.lo(); });
	if (it != v.begin()) {
		const auto &prev = *std::prev(it);
		if (prev.hi() >= hi)
			return Rel::inside;
		if (prev.hi() > lo)
			return Rel::partial;
	}
	if (it != v.end() && it->lo() < hi)
		return Rel::partial;
	return Rel::outside;
}

struct Cell {
	Rat lo, hi, mass;
	unsigned stage = 0; // 0: plain Lebesgue segment
	unsigned depth = 0;
	Rat low, up;
	double width = 0;
};

struct CellOrder {
	bool operator()(const Cell *a, const Cell *b) const { return a->width < b->width; }
};

class GroupQuadrature {
public:
	GroupQuadrature(const std::vector<Enclosure> &c, const std::vector<Rat> &e, const Rat &q,
			MeasureKind kind, unsigned m, const QIntervalSet &w, const QuadratureOptions &opt)
	    : c_(c), e_(e), q_(q), kind_(kind), m_(m), w_(w), opt_(opt), prec_(opt.precision)
	{
		convex_ = q_ >= 1;
		for (const auto &ci : c_)
			cq_.push_back(q_ == 1 ? ci : ci.pow(q_));
	}

	IntegralResult run()
	{
		IntegralResult res;
		if (w_.empty()) {
			res.value = Enclosure(Rat(0), prec_);
			return res;
		}
		if (w_.intervals().front().lo() == 0)
			for (const auto &e : e_)
				if (q_ * e >= 1)
					return IntegralResult::divergent();

		std::vector<std::unique_ptr<Cell>> pool;
		std::priority_queue<Cell *, std::vector<Cell *>, CellOrder> queue;
		double total_width = 0;
		auto admit = [&](Cell cell) {
			Rel r = relation(w_, cell.lo, cell.hi);
			if (r == Rel::outside)
				return;
			if (r == Rel::partial && cell.stage == 0) {
				// Plain segments are clipped to the window exactly.
				for (const auto &i : intersect(w_, QIntervalSet{QInterval(cell.lo, cell.hi)})
							 .intervals()) {
					Cell piece{i.lo(), i.hi(), i.length(), 0, cell.depth, 0, 0, 0};
					bound(piece, false);
					push(piece, pool, queue, total_width);
				}
				return;
			}
			bound(cell, r == Rel::partial);
			push(cell, pool, queue, total_width);
		};
		admit(root());

		const double target = opt_.target_width.get_d();
		std::size_t evaluated = 1;
		while (!queue.empty()) {
			if (total_width <= target) {
				if (exact_width(queue) <= opt_.target_width)
					break;
			}
			if (evaluated >= opt_.cell_budget) {
				res.budget_exhausted = true;
				break;
			}
			Cell *top = queue.top();
			if (top->width == 0)
				break;
			queue.pop();
			total_width -= top->width;
			Cell parent = *top;
			for (auto &child : split(parent)) {
				admit(std::move(child));
				++evaluated;
			}
		}

		Rat low = 0, up = 0;
		unsigned depth = 0;
		while (!queue.empty()) {
			const Cell *c = queue.top();
			low += c->low;
			up += c->up;
			depth = std::max(depth, c->depth);
			queue.pop();
		}
		res.value = Enclosure(low, up, prec_);
		res.cells = evaluated;
		res.max_depth = depth;
		res.width = res.value->width_double();
		return res;
	}

private:
	Cell root() const
	{
		Cell c{0, 1, 1, 0, 0, 0, 0, 0};
		if (kind_ == MeasureKind::cantor) {
			c.stage = 1;
			c.mass = Rat(1, 2);
		} else if (kind_ == MeasureKind::stage && m_ > 1) {
			c.stage = 1;
			c.mass = stage(m_).measure();
		}
		return c;
	}

	std::vector<Cell> split(const Cell &p) const
	{
		std::vector<Cell> out;
		if (p.stage == 0) {
			Rat mid = (p.lo + p.hi) / 2;
			out.push_back({p.lo, mid, mid - p.lo, 0, p.depth + 1, 0, 0, 0});
			out.push_back({mid, p.hi, p.hi - mid, 0, p.depth + 1, 0, 0, 0});
			return out;
		}
		unsigned n = p.stage + 1;
		Rat len = t_right(n);
		Rat mass;
		unsigned child_stage = n;
		if (kind_ == MeasureKind::cantor) {
			mass = pow2(-static_cast<long>(n));
		} else if (n == m_) {
			mass = len;
			child_stage = 0;
		} else {
			mass = pow2(static_cast<long>(m_) - static_cast<long>(n)) * t_right(m_);
		}
		out.push_back({p.lo, p.lo + len, mass, child_stage, p.depth + 1, 0, 0, 0});
		out.push_back({p.hi - len, p.hi, mass, child_stage, p.depth + 1, 0, 0, 0});
		return out;
	}

	static void push(Cell &cell, std::vector<std::unique_ptr<Cell>> &pool,
			 std::priority_queue<Cell *, std::vector<Cell *>, CellOrder> &queue, double &total)
	{
		pool.push_back(std::make_unique<Cell>(std::move(cell)));
		Cell *c = pool.back().get();
		total += c->width;
		queue.push(c);
	}

	static Rat exact_width(std::priority_queue<Cell *, std::vector<Cell *>, CellOrder> queue)
	{
		Rat w = 0;
		while (!queue.empty()) {
			w += queue.top()->up - queue.top()->low;
			queue.pop();
		}
		return w;
	}

	// Bounds on F(y), memoized: neighbouring cells share endpoints.
	const std::pair<Rat, Rat> &value(const Rat &y) const
	{
		auto it = memo_.find(y);
		if (it != memo_.end())
			return it->second;
		Enclosure ly = Enclosure(y, prec_).log();
		Enclosure s(Rat(0), prec_);
		for (std::size_t i = 0; i < c_.size(); ++i)
			s += c_[i] * ly.scaled(-e_[i]).exp();
		if (q_ != 1)
			s = s.pow(q_);
		return memo_.emplace(y, std::make_pair(s.lower(), s.upper())).first->second;
	}

	// Closed form on a plain segment: exact per term when q = 1 or the
	// group has a single term.
	bool closed_form(Cell &cell) const
	{
		if (!(q_ == 1 || c_.size() == 1))
			return false;
		Enclosure sum(Rat(0), prec_);
		for (std::size_t i = 0; i < c_.size(); ++i) {
			auto v = power_integral(cell.lo, cell.hi, q_ * e_[i], prec_);
			if (!v)
				throw DomainError("closed form reached a divergent segment");
			sum += cq_[i] * *v;
		}
		cell.low = std::max(Rat(0), sum.lower());
		cell.up = sum.upper();
		return true;
	}

	// Upper bound near the singular origin: a measure with density <= 1 puts
	// at most ∫_0^mass y^(-a) on a decreasing y^(-a); terms combine by
	// Minkowski (q >= 1) or subadditivity of t^q (q < 1).
	Rat origin_upper(const Rat &mass) const
	{
		Enclosure acc(Rat(0), prec_);
		for (std::size_t i = 0; i < c_.size(); ++i) {
			auto v = power_integral(0, mass, q_ * e_[i], prec_);
			if (!v)
				throw DomainError("origin cell of a divergent integrand");
			if (convex_ && q_ != 1)
				acc += c_[i] * v->pow(1 / q_);
			else
				acc += cq_[i] * *v;
		}
		if (convex_ && q_ != 1)
			acc = acc.pow(q_);
		return acc.upper();
	}

	Rat window_start(const Rat &x) const
	{
		for (const auto &i : w_.intervals())
			if (i.hi() > x)
				return std::max(x, i.lo());
		return x;
	}

	void bound(Cell &cell, bool partial) const
	{
		if (cell.stage == 0 && !partial && closed_form(cell)) {
			cell.width = Rat(cell.up - cell.low).get_d();
			return;
		}
		Rat up;
		if (partial) {
			// F is decreasing, so its largest value on the window part of the
			// cell sits at the first window point.
			Rat start = window_start(cell.lo);
			up = start == 0 ? origin_upper(cell.mass) : cell.mass * value(start).second;
		} else if (cell.lo == 0) {
			up = origin_upper(cell.mass);
		} else if (convex_) {
			up = cell.mass * (value(cell.lo).second + value(cell.hi).second) / 2;
		} else {
			up = cell.mass * value(cell.lo).second;
		}
		Rat low = 0;
		if (!partial) {
			if (convex_)
				low = cell.mass * value((cell.lo + cell.hi) / 2).first;
			else
				low = cell.mass * value(cell.hi).first;
		}
		cell.low = std::max(Rat(0), low);
		cell.up = up;
		cell.width = Rat(cell.up - cell.low).get_d();
	}

	const std::vector<Enclosure> &c_;
	std::vector<Enclosure> cq_;
	const std::vector<Rat> &e_;
	Rat q_;
	MeasureKind kind_;
	unsigned m_;
	const QIntervalSet &w_;
	const QuadratureOptions &opt_;
	unsigned prec_;
	bool convex_;
	mutable std::map<Rat, std::pair<Rat, Rat>> memo_;
};

} // namespace

IntegralResult integrate_group(const std::vector<Enclosure> &coeffs, const std::vector<Rat> &exps,
			       const Rat &q, MeasureKind kind, unsigned stage_index,
			       const QIntervalSet &window, const QuadratureOptions &opt)
{
	if (q <= 0)
		throw DomainError("integration exponent q must be positive");
	if (coeffs.size() != exps.size() || coeffs.empty())
		throw DomainError("group needs matching, nonempty coefficient and exponent lists");
	for (const auto &e : exps)
		if (!(e > 0 && e < 1))
			throw DomainError("term exponents must lie in (0,1)");
	if (kind == MeasureKind::stage && stage_index == 0)
		throw DomainError("stage measure needs m >= 1");
	return GroupQuadrature(coeffs, exps, q, kind, stage_index, window, opt).run();
}

IntegralResult integral_power_term(const PowerTerm &t, const QIntervalSet &s, const Rat &q,
				   unsigned precision, const NormalizerBinding &binding)
{
	if (q <= 0)
		throw DomainError("integration exponent q must be positive");
	Enclosure cq = t.coeff.pow(q).evaluate(binding, precision);
	Rat len = t.scale();
	Rat a = q * t.exponent;
	Enclosure sum(Rat(0), precision);
	for (const auto &i : relative_window(s, t.support).intervals()) {
		if (t.mask_stage && !stage_covers(*t.mask_stage, i.lo(), i.hi()))
			throw DomainError("integration set leaves the mask of the term");
		auto v = power_integral(i.lo(), i.hi(), a, precision);
		if (!v)
			return IntegralResult::divergent();
		sum += *v;
	}
	IntegralResult r;
	r.value = cq * Enclosure(len, precision) * sum;
	r.width = r.value->width_double();
	return r;
}

IntegralResult lower_bound_sum_q(const SingularFunction &f, const QIntervalSet &s, const Rat &q,
				 std::size_t pick, unsigned precision, const NormalizerBinding &binding)
{
	if (pick >= f.terms.size())
		throw DomainError("term selector out of range");
	const PowerTerm &t = f.terms[pick];
	if (measure(intersect(s, QIntervalSet{t.support})) != measure(s))
		throw DomainError("selected term does not cover the integration set");
	IntegralResult r;
	if (!t.mask_stage) {
		r = integral_power_term(t, s, q, precision, binding);
	} else {
		QuadratureOptions opt;
		opt.precision = precision;
		opt.target_width = Rat(1, 1'000'000);
		std::vector<Enclosure> c{t.coeff.evaluate(binding, precision)};
		std::vector<Rat> e{t.exponent};
		r = integrate_group(c, e, q, MeasureKind::stage, *t.mask_stage,
				    relative_window(s, t.support), opt);
		if (r.value)
			r.value = *r.value * Enclosure(t.scale(), precision);
	}
	if (r.value) {
		Rat lo = r.value->lower();
		r.value = Enclosure(lo, lo, precision);
		r.width = 0;
	}
	return r;
}

bool supports_almost_disjoint(const PowerTerm &a, const PowerTerm &b)
{
	const QInterval &i = a.support, &j = b.support;
	if (!(std::max(i.lo(), j.lo()) < std::min(i.hi(), j.hi())))
		return true;
	if (i == j)
		return false;
	auto nested = [](const PowerTerm &outer, const PowerTerm &inner) {
		const QInterval &o = outer.support, &n = inner.support;
		if (!(o.lo() <= n.lo() && n.hi() <= o.hi()))
			return false;
		if (!outer.mask_stage)
			return false;
		auto rel = relative_coordinates(n, o);
		return stage_avoids(*outer.mask_stage, rel.first, rel.second);
	};
	return nested(a, b) || nested(b, a);
}

IntegralResult enclose_sum_q(const SingularFunction &f, const QIntervalSet &s, const Rat &q,
			     const QuadratureOptions &opt, const NormalizerBinding &binding)
{
	if (q <= 0)
		throw DomainError("integration exponent q must be positive");
	const unsigned prec = opt.precision;
	auto groups = term_groups(f);

	struct Part {
		std::size_t group;
		QIntervalSet window;
	};
	std::vector<Part> parts;
	for (std::size_t g = 0; g < groups.size(); ++g) {
		QIntervalSet w = relative_window(s, f.terms[groups[g].front()].support);
		if (!w.empty())
			parts.push_back({g, std::move(w)});
	}

	bool disjoint = true;
	if (q != 1) {
		for (std::size_t x = 0; x < parts.size() && disjoint; ++x)
			for (std::size_t y = x + 1; y < parts.size() && disjoint; ++y)
				disjoint = supports_almost_disjoint(f.terms[groups[parts[x].group].front()],
								    f.terms[groups[parts[y].group].front()]);
	}

	IntegralResult total;
	Rat low = 0, up = 0;
	Enclosure minkowski(Rat(0), prec);
	QuadratureOptions sub = opt;
	if (!parts.empty()) {
		sub.cell_budget = std::max<std::size_t>(2000, opt.cell_budget / parts.size());
	}
	for (const auto &part : parts) {
		const auto &idx = groups[part.group];
		const PowerTerm &head = f.terms[idx.front()];
		std::vector<Enclosure> c;
		std::vector<Rat> e;
		for (auto i : idx) {
			c.push_back(f.terms[i].coeff.evaluate(binding, prec));
			e.push_back(f.terms[i].exponent);
		}
		Rat len = head.scale();
		sub.target_width = opt.target_width / (Rat(parts.size()) * len);
		MeasureKind kind = head.mask_stage ? MeasureKind::stage : MeasureKind::lebesgue;
		IntegralResult r = integrate_group(c, e, q, kind, head.mask_stage.value_or(0),
						   part.window, sub);
		if (r.infinite)
			return IntegralResult::divergent();
		Enclosure v = *r.value * Enclosure(len, prec);
		total.budget_exhausted = total.budget_exhausted || r.budget_exhausted;
		total.cells += r.cells;
		total.max_depth = std::max(total.max_depth, r.max_depth);
		if (q == 1 || disjoint) {
			low += v.lower();
			up += v.upper();
		} else if (q > 1) {
			// Superadditivity of t^q below, Minkowski above.
			low += v.lower();
			minkowski += v.pow(1 / q);
		} else {
			low = std::max(low, v.lower());
			up += v.upper();
		}
	}
	if (q > 1 && !disjoint)
		up = minkowski.pow(q).upper();
	total.value = Enclosure(low, up, prec);
	total.width = total.value->width_double();
	return total;
}

NormReport norm_h_enclosure(unsigned series_terms, unsigned cantor_stage,
			    const ExponentSchedule &sched, const QuadratureOptions &opt)
{
	const unsigned prec = opt.precision;
	SingularFunction ht = build_htilde(series_terms, sched);
	std::vector<Enclosure> c;
	std::vector<Rat> e;
	for (const auto &t : ht.terms) {
		c.push_back(t.coeff.evaluate({}, prec));
		e.push_back(t.exponent);
	}
	const Rat &p = sched.p();
	QIntervalSet unit{QInterval(0, 1)};
	// The p-th root at most multiplies widths by a bounded factor here, so
	// the integral is driven to a fraction of the target.
	QuadratureOptions sub = opt;
	sub.target_width = opt.target_width / 4;
	IntegralResult masked = integrate_group(c, e, p, MeasureKind::stage, cantor_stage, unit, sub);
	IntegralResult cant = integrate_group(c, e, p, MeasureKind::cantor, 0, unit, sub);
	Enclosure mnorm = p == 1 ? *masked.value : masked.value->pow(1 / p);
	Enclosure cnorm = p == 1 ? *cant.value : cant.value->pow(1 / p);
	Enclosure n(cnorm.lower(), cnorm.upper() + pow2(-static_cast<long>(series_terms)), prec);
	return NormReport{mnorm, cnorm, n, masked, cant};
}

} // namespace nowhereq

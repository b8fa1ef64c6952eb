/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

namespace nowhereq {

const char *to_string(Verdict v)
{
	switch (v) {
	case Verdict::holds:
		return "holds";
	case Verdict::fails:
		return "fails";
	case Verdict::undecided:
		return "undecided";
	}
	return "undecided";
}

namespace {

void check_precision(unsigned precision)
{
	if (precision < kMinPrecision)
		throw DomainError("precision must be at least 16 bits");
}

/// RAII scratch value.
struct Scratch {
	mpfr_t v;
	explicit Scratch(mpfr_prec_t prec) { mpfr_init2(v, prec); }
	~Scratch() { mpfr_clear(v); }
	Scratch(const Scratch &) = delete;
	Scratch &operator=(const Scratch &) = delete;
};

long to_long(const Int &z, const char *what)
{
	if (!z.fits_slong_p())
		throw DomainError(std::string(what) + " does not fit in a machine integer");
	return z.get_si();
}

std::string format_decimal(mpfr_srcptr x, unsigned digits, mpfr_rnd_t rnd)
{
	if (mpfr_nan_p(x))
		return "nan";
	if (mpfr_inf_p(x))
		return mpfr_sgn(x) > 0 ? "inf" : "-inf";
	if (mpfr_zero_p(x))
		return "0";
	mpfr_exp_t exp10 = 0;
	char *raw = mpfr_get_str(nullptr, &exp10, 10, digits, x, rnd);
	std::string s(raw);
	mpfr_free_str(raw);
	std::string sign;
	if (!s.empty() && s.front() == '-') {
		sign = "-";
		s.erase(0, 1);
	}
	// value = 0.s * 10^exp10 = s[0].s[1..] * 10^(exp10 - 1)
	while (s.size() > 1 && s.back() == '0')
		s.pop_back();
	std::string out = sign + s.substr(0, 1);
	if (s.size() > 1)
		out += "." + s.substr(1);
	out += "e" + std::to_string(static_cast<long>(exp10) - 1);
	return out;
}

unsigned default_digits(unsigned precision)
{
	return std::min(40u, static_cast<unsigned>(std::ceil(precision * 0.30103)) + 1u);
}

/// x^(u/v) of a nonnegative floating point x, rounded in direction `up`.
void pow_endpoint(mpfr_ptr out, mpfr_srcptr x, long u, unsigned long v, bool up,
		  mpfr_prec_t work)
{
	Scratch t(work);
	if (u >= 0) {
		mpfr_rnd_t r = up ? MPFR_RNDU : MPFR_RNDD;
		mpfr_rootn_ui(t.v, x, v, r);
		mpfr_pow_ui(t.v, t.v, static_cast<unsigned long>(u), r);
		mpfr_set(out, t.v, r);
	} else {
		// x^(-w) = 1 / x^w; round the denominator the other way.
		mpfr_rnd_t inner = up ? MPFR_RNDD : MPFR_RNDU;
		mpfr_rootn_ui(t.v, x, v, inner);
		mpfr_pow_ui(t.v, t.v, static_cast<unsigned long>(-u), inner);
		mpfr_ui_div(out, 1, t.v, up ? MPFR_RNDU : MPFR_RNDD);
	}
}

} // namespace

Enclosure::Enclosure(Uninit, unsigned precision) : precision_(precision)
{
	check_precision(precision);
	mpfr_init2(lo_, precision);
	mpfr_init2(hi_, precision);
}

Enclosure::Enclosure(unsigned precision) : Enclosure(Uninit{}, precision)
{
	mpfr_set_zero(lo_, 1);
	mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Rat &value, unsigned precision) : Enclosure(Uninit{}, precision)
{
	mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
	mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Enclosure::Enclosure(const Rat &lo, const Rat &hi, unsigned precision)
    : Enclosure(Uninit{}, precision)
{
	if (lo > hi)
		throw DomainError("enclosure with lo > hi");
	mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
	mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Enclosure::Enclosure(const Enclosure &other) : Enclosure(Uninit{}, other.precision_)
{
	mpfr_set(lo_, other.lo_, MPFR_RNDD);
	mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure &&other) noexcept : precision_(other.precision_)
{
	mpfr_init2(lo_, precision_);
	mpfr_init2(hi_, precision_);
	mpfr_swap(lo_, other.lo_);
	mpfr_swap(hi_, other.hi_);
}

Enclosure &Enclosure::operator=(const Enclosure &other)
{
	if (this != &other) {
		precision_ = other.precision_;
		mpfr_set_prec(lo_, precision_);
		mpfr_set_prec(hi_, precision_);
		mpfr_set(lo_, other.lo_, MPFR_RNDD);
		mpfr_set(hi_, other.hi_, MPFR_RNDU);
	}
	return *this;
}

Enclosure &Enclosure::operator=(Enclosure &&other) noexcept
{
	std::swap(precision_, other.precision_);
	mpfr_swap(lo_, other.lo_);
	mpfr_swap(hi_, other.hi_);
	return *this;
}

Enclosure::~Enclosure()
{
	mpfr_clear(lo_);
	mpfr_clear(hi_);
}

Enclosure Enclosure::nonnegative(unsigned precision)
{
	Enclosure e(precision);
	mpfr_set_inf(e.hi_, 1);
	return e;
}

Rat Enclosure::lower() const
{
	if (!mpfr_number_p(lo_))
		throw DomainError("enclosure endpoint is not finite");
	Rat q;
	mpfr_get_q(q.get_mpq_t(), lo_);
	return q;
}

Rat Enclosure::upper() const
{
	if (!mpfr_number_p(hi_))
		throw DomainError("enclosure endpoint is not finite");
	Rat q;
	mpfr_get_q(q.get_mpq_t(), hi_);
	return q;
}

double Enclosure::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Enclosure::width_double() const
{
	Scratch w(precision_);
	mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
	return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Enclosure::is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

bool Enclosure::contains(const Rat &x) const
{
	return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure &other) const
{
	return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Enclosure::subset_of(const Rat &lo, const Rat &hi) const
{
	return mpfr_cmp_q(lo_, lo.get_mpq_t()) >= 0 && mpfr_cmp_q(hi_, hi.get_mpq_t()) <= 0;
}

std::string Enclosure::lower_string(unsigned digits) const
{
	return format_decimal(lo_, digits ? digits : default_digits(precision_), MPFR_RNDD);
}

std::string Enclosure::upper_string(unsigned digits) const
{
	return format_decimal(hi_, digits ? digits : default_digits(precision_), MPFR_RNDU);
}

Enclosure Enclosure::pow(const Rat &e) const
{
	if (mpfr_sgn(lo_) < 0 || (mpfr_zero_p(lo_) && e <= 0))
		throw DomainError("pow_by_rat requires a positive base enclosure");
	Enclosure out(Uninit{}, precision_);
	if (e == 0) {
		mpfr_set_ui(out.lo_, 1, MPFR_RNDD);
		mpfr_set_ui(out.hi_, 1, MPFR_RNDU);
		return out;
	}
	long u = to_long(e.get_num(), "exponent numerator");
	Int vz = e.get_den();
	if (!vz.fits_ulong_p())
		throw DomainError("exponent denominator too large");
	unsigned long v = vz.get_ui();
	mpfr_prec_t work = precision_ + 16;
	if (u > 0) {
		pow_endpoint(out.lo_, lo_, u, v, false, work);
		pow_endpoint(out.hi_, hi_, u, v, true, work);
	} else {
		pow_endpoint(out.lo_, hi_, u, v, false, work);
		pow_endpoint(out.hi_, lo_, u, v, true, work);
	}
	return out;
}

Enclosure Enclosure::log() const
{
	if (mpfr_sgn(lo_) <= 0)
		throw DomainError("log requires a positive enclosure");
	Enclosure out(Uninit{}, precision_);
	mpfr_log(out.lo_, lo_, MPFR_RNDD);
	mpfr_log(out.hi_, hi_, MPFR_RNDU);
	return out;
}

Enclosure Enclosure::exp() const
{
	Enclosure out(Uninit{}, precision_);
	mpfr_exp(out.lo_, lo_, MPFR_RNDD);
	mpfr_exp(out.hi_, hi_, MPFR_RNDU);
	return out;
}

Enclosure Enclosure::scaled(const Rat &r) const
{
	Enclosure out(Uninit{}, precision_);
	if (r >= 0) {
		mpfr_mul_q(out.lo_, lo_, r.get_mpq_t(), MPFR_RNDD);
		mpfr_mul_q(out.hi_, hi_, r.get_mpq_t(), MPFR_RNDU);
	} else {
		mpfr_mul_q(out.lo_, hi_, r.get_mpq_t(), MPFR_RNDD);
		mpfr_mul_q(out.hi_, lo_, r.get_mpq_t(), MPFR_RNDU);
	}
	return out;
}

Enclosure Enclosure::join(const Enclosure &other) const
{
	Enclosure out(Uninit{}, std::max(precision_, other.precision_));
	mpfr_min(out.lo_, lo_, other.lo_, MPFR_RNDD);
	mpfr_max(out.hi_, hi_, other.hi_, MPFR_RNDU);
	return out;
}

Enclosure Enclosure::meet(const Enclosure &other) const
{
	Enclosure out(Uninit{}, std::max(precision_, other.precision_));
	mpfr_max(out.lo_, lo_, other.lo_, MPFR_RNDD);
	mpfr_min(out.hi_, hi_, other.hi_, MPFR_RNDU);
	if (mpfr_greater_p(out.lo_, out.hi_))
		throw DomainError("meet of disjoint enclosures");
	return out;
}

Enclosure operator+(const Enclosure &a, const Enclosure &b)
{
	Enclosure out(Enclosure::Uninit{}, std::max(a.precision_, b.precision_));
	mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
	mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
	return out;
}

Enclosure operator-(const Enclosure &a, const Enclosure &b)
{
	Enclosure out(Enclosure::Uninit{}, std::max(a.precision_, b.precision_));
	mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
	mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
	return out;
}

Enclosure operator-(const Enclosure &a)
{
	Enclosure out(Enclosure::Uninit{}, a.precision_);
	mpfr_neg(out.lo_, a.hi_, MPFR_RNDD);
	mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
	return out;
}

Enclosure operator*(const Enclosure &a, const Enclosure &b)
{
	unsigned prec = std::max(a.precision_, b.precision_);
	Enclosure out(Enclosure::Uninit{}, prec);
	mpfr_srcptr xs[2] = {a.lo_, a.hi_};
	mpfr_srcptr ys[2] = {b.lo_, b.hi_};
	Scratch t(prec);
	mpfr_set_inf(out.lo_, 1);
	mpfr_set_inf(out.hi_, -1);
	for (mpfr_srcptr x : xs)
		for (mpfr_srcptr y : ys) {
			// 0 * inf contributes 0 for interval products.
			if ((mpfr_zero_p(x) && mpfr_inf_p(y)) || (mpfr_inf_p(x) && mpfr_zero_p(y))) {
				mpfr_set_zero(t.v, 1);
				mpfr_min(out.lo_, out.lo_, t.v, MPFR_RNDD);
				mpfr_max(out.hi_, out.hi_, t.v, MPFR_RNDU);
				continue;
			}
			mpfr_mul(t.v, x, y, MPFR_RNDD);
			mpfr_min(out.lo_, out.lo_, t.v, MPFR_RNDD);
			mpfr_mul(t.v, x, y, MPFR_RNDU);
			mpfr_max(out.hi_, out.hi_, t.v, MPFR_RNDU);
		}
	return out;
}

Enclosure operator/(const Enclosure &a, const Enclosure &b)
{
	if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
		throw DomainError("division by an enclosure containing 0");
	unsigned prec = std::max(a.precision_, b.precision_);
	Enclosure out(Enclosure::Uninit{}, prec);
	mpfr_srcptr xs[2] = {a.lo_, a.hi_};
	mpfr_srcptr ys[2] = {b.lo_, b.hi_};
	Scratch t(prec);
	mpfr_set_inf(out.lo_, 1);
	mpfr_set_inf(out.hi_, -1);
	for (mpfr_srcptr x : xs)
		for (mpfr_srcptr y : ys) {
			mpfr_div(t.v, x, y, MPFR_RNDD);
			mpfr_min(out.lo_, out.lo_, t.v, MPFR_RNDD);
			mpfr_div(t.v, x, y, MPFR_RNDU);
			mpfr_max(out.hi_, out.hi_, t.v, MPFR_RNDU);
		}
	return out;
}

Verdict less(const Enclosure &a, const Enclosure &b)
{
	if (mpfr_less_p(a.hi_ptr(), b.lo_ptr()))
		return Verdict::holds;
	if (mpfr_greaterequal_p(a.lo_ptr(), b.hi_ptr()))
		return Verdict::fails;
	return Verdict::undecided;
}

Verdict less(const Enclosure &a, const Rat &b)
{
	if (mpfr_cmp_q(a.hi_ptr(), b.get_mpq_t()) < 0)
		return Verdict::holds;
	if (mpfr_cmp_q(a.lo_ptr(), b.get_mpq_t()) >= 0)
		return Verdict::fails;
	return Verdict::undecided;
}

Verdict less(const Rat &a, const Enclosure &b)
{
	if (mpfr_cmp_q(b.lo_ptr(), a.get_mpq_t()) > 0)
		return Verdict::holds;
	if (mpfr_cmp_q(b.hi_ptr(), a.get_mpq_t()) <= 0)
		return Verdict::fails;
	return Verdict::undecided;
}

Enclosure enclosure_arith(const Enclosure &a, const Enclosure &b, ArithOp op, const Rat &exponent)
{
	switch (op) {
	case ArithOp::add:
		return a + b;
	case ArithOp::sub:
		return a - b;
	case ArithOp::mul:
		return a * b;
	case ArithOp::div:
		return a / b;
	case ArithOp::pow_by_rat:
		if (mpfr_sgn(a.lo_ptr()) <= 0)
			throw DomainError("pow_by_rat requires a.lo > 0");
		return a.pow(exponent);
	}
	throw DomainError("unknown enclosure operation");
}

Enclosure rat_pow(const Rat &base, const Rat &e, unsigned precision)
{
	check_precision(precision);
	if (base <= 0)
		throw DomainError("rat_pow: base must be positive");

	// e = k + u/v with 0 <= u < v.
	Int v = e.get_den();
	Int k;
	mpz_fdiv_q(k.get_mpz_t(), e.get_num_mpz_t(), v.get_mpz_t());
	Int u = e.get_num() - k * v;
	Rat integer_part = ipow(base, to_long(k, "integer part of exponent"));
	if (u == 0)
		return Enclosure(integer_part, precision);

	if (!v.fits_ulong_p())
		throw DomainError("rat_pow: exponent denominator too large");
	unsigned long root = v.get_ui();
	Rat radicand = ipow(base, to_long(u, "exponent numerator"));
	const Int &num = radicand.get_num();
	const Int &den = radicand.get_den();

	// Lower estimate of log2 of the root, so that root * 2^shift >= 2^(precision+3).
	long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
	long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
	long lg = nb - db - 1;
	long lg_root = lg >= 0 ? lg / static_cast<long>(root)
			       : -((-lg + static_cast<long>(root) - 1) / static_cast<long>(root));
	long shift = static_cast<long>(precision) + 3 - lg_root;

	// scaled = floor(num * 2^(root*shift) / den)
	Int scaled_num = num, scaled_den = den;
	long total = shift * static_cast<long>(root);
	if (total >= 0)
		mpz_mul_2exp(scaled_num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(total));
	else
		mpz_mul_2exp(scaled_den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-total));
	Int scaled;
	mpz_fdiv_q(scaled.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());

	Int r;
	mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), root);
	Int rv;
	mpz_pow_ui(rv.get_mpz_t(), r.get_mpz_t(), root);
	bool exact = rv * scaled_den == scaled_num;

	Rat lo = integer_part * Rat(r) * pow2(-shift);
	if (exact)
		return Enclosure(lo, precision);
	Rat hi = integer_part * Rat(Int(r + 1)) * pow2(-shift);
	return Enclosure(lo, hi, precision);
}

Enclosure rat_log(const Rat &x, unsigned precision)
{
	check_precision(precision);
	if (x <= 0)
		throw DomainError("rat_log: argument must be positive");
	Rat lo_q = x, hi_q = x;
	Scratch a(precision + 8), b(precision + 8);
	mpfr_set_q(a.v, lo_q.get_mpq_t(), MPFR_RNDD);
	mpfr_set_q(b.v, hi_q.get_mpq_t(), MPFR_RNDU);
	mpfr_log(a.v, a.v, MPFR_RNDD);
	mpfr_log(b.v, b.v, MPFR_RNDU);
	Rat l, h;
	mpfr_get_q(l.get_mpq_t(), a.v);
	mpfr_get_q(h.get_mpq_t(), b.v);
	return Enclosure(l, h, precision);
}

std::ostream &operator<<(std::ostream &os, const Enclosure &e)
{
	return os << "[" << e.lower_string() << ", " << e.upper_string() << "]";
}

} // namespace nowhereq

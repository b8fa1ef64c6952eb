/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/rat.hpp"

#include <cctype>

namespace nowhereq {

namespace {

bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

Int parse_int(std::string_view s)
{
	bool neg = false;
	if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
		neg = s.front() == '-';
		s.remove_prefix(1);
	}
	if (!all_digits(s))
		throw DomainError("malformed rational: '" + std::string(s) + "'");
	Int z(std::string(s), 10);
	return neg ? Int(-z) : z;
}

} // namespace

Rat parse_rat(std::string_view text)
{
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
		text.remove_prefix(1);
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
		text.remove_suffix(1);
	if (text.empty())
		throw DomainError("malformed rational: empty string");

	if (auto slash = text.find('/'); slash != std::string_view::npos) {
		Int num = parse_int(text.substr(0, slash));
		std::string_view den_text = text.substr(slash + 1);
		if (!all_digits(den_text))
			throw DomainError("malformed rational: '" + std::string(text) + "'");
		Int den(std::string(den_text), 10);
		if (den == 0)
			throw DomainError("malformed rational: zero denominator");
		Rat r(num, den);
		r.canonicalize();
		return r;
	}

	if (auto dot = text.find('.'); dot != std::string_view::npos) {
		std::string_view whole = text.substr(0, dot);
		std::string_view frac = text.substr(dot + 1);
		bool neg = !whole.empty() && whole.front() == '-';
		if (!whole.empty() && (whole.front() == '-' || whole.front() == '+'))
			whole.remove_prefix(1);
		if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
		    (whole.empty() && frac.empty()))
			throw DomainError("malformed rational: '" + std::string(text) + "'");
		Int num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
		Int den;
		mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
		Rat r(neg ? Int(-num) : num, den);
		r.canonicalize();
		return r;
	}

	return Rat(parse_int(text));
}

std::string to_string(const Rat &r)
{
	if (r.get_den() == 1)
		return r.get_num().get_str();
	return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat pow2(long k)
{
	Int one = 1;
	Int p;
	if (k >= 0) {
		mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
		return Rat(p);
	}
	mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
	return Rat(Int(1), p);
}

Rat ipow(const Rat &base, long k)
{
	if (k < 0 && base == 0)
		throw DomainError("ipow: zero to a negative power");
	unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
	Int n, d;
	mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
	mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
	Rat r = k < 0 ? Rat(d, n) : Rat(n, d);
	r.canonicalize();
	return r;
}

bool is_integer(const Rat &r) { return r.get_den() == 1; }

long floor_log2(const Rat &r)
{
	if (r <= 0)
		throw DomainError("floor_log2 of a nonpositive rational");
	long nb = static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2));
	long db = static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
	// 2^(nb-1) <= num < 2^nb, same for den; the guess is off by at most one.
	long guess = nb - db;
	while (pow2(guess) > r)
		--guess;
	while (pow2(guess + 1) <= r)
		++guess;
	return guess;
}

} // namespace nowhereq

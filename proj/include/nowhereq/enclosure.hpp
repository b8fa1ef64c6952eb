/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/rat.hpp"

#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace nowhereq {

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMinPrecision = 16;

/// Outcome of a comparison between enclosed quantities. "holds" and "fails"
/// are only reported when provable from the enclosures.
enum class Verdict { holds, fails, undecided };

const char *to_string(Verdict v);

/// A closed real interval [lo, hi] whose endpoints are binary floating point
/// numbers of a fixed precision, rounded outward on every operation.
///
/// Every arithmetic result encloses the exact image of the operand intervals,
/// so an Enclosure can stand in for an irrational quantity in a proof.
class Enclosure {
public:
	explicit Enclosure(unsigned precision = kDefaultPrecision);
	Enclosure(const Rat &value, unsigned precision);
	Enclosure(const Rat &lo, const Rat &hi, unsigned precision);

	Enclosure(const Enclosure &other);
	Enclosure(Enclosure &&other) noexcept;
	Enclosure &operator=(const Enclosure &other);
	Enclosure &operator=(Enclosure &&other) noexcept;
	~Enclosure();

	/// The interval [0, +inf].
	static Enclosure nonnegative(unsigned precision);

	unsigned precision() const { return precision_; }

	/// Exact values of the endpoints. Throws when an endpoint is infinite.
	Rat lower() const;
	Rat upper() const;
	double lower_double() const; // rounded down
	double upper_double() const; // rounded up
	double width_double() const; // rounded up

	bool is_finite() const;
	bool contains(const Rat &x) const;
	bool contains(const Enclosure &other) const;
	bool subset_of(const Rat &lo, const Rat &hi) const;

	/// Decimal rendering of the endpoints with outward rounding.
	std::string lower_string(unsigned digits = 0) const;
	std::string upper_string(unsigned digits = 0) const;

	/// Raise to a rational power. Requires lo > 0, or lo >= 0 when e > 0.
	Enclosure pow(const Rat &e) const;
	/// Natural logarithm; requires lo > 0.
	Enclosure log() const;
	Enclosure exp() const;
	/// Product with an exact rational.
	Enclosure scaled(const Rat &r) const;

	/// Smallest enclosure of both operands.
	Enclosure join(const Enclosure &other) const;
	/// Intersection; throws DomainError if disjoint.
	Enclosure meet(const Enclosure &other) const;

	friend Enclosure operator+(const Enclosure &a, const Enclosure &b);
	friend Enclosure operator-(const Enclosure &a, const Enclosure &b);
	friend Enclosure operator*(const Enclosure &a, const Enclosure &b);
	friend Enclosure operator/(const Enclosure &a, const Enclosure &b);
	friend Enclosure operator-(const Enclosure &a);
	Enclosure &operator+=(const Enclosure &b) { return *this = *this + b; }
	Enclosure &operator*=(const Enclosure &b) { return *this = *this * b; }

	mpfr_srcptr lo_ptr() const { return lo_; }
	mpfr_srcptr hi_ptr() const { return hi_; }

private:
	struct Uninit {};
	Enclosure(Uninit, unsigned precision);

	unsigned precision_;
	mpfr_t lo_;
	mpfr_t hi_;
};

/// a < b, decided from enclosures.
Verdict less(const Enclosure &a, const Enclosure &b);
Verdict less(const Enclosure &a, const Rat &b);
Verdict less(const Rat &a, const Enclosure &b);

enum class ArithOp { add, sub, mul, div, pow_by_rat };

/// Dispatch form of the interval operations; `exponent` is used by pow_by_rat.
Enclosure enclosure_arith(const Enclosure &a, const Enclosure &b, ArithOp op,
			  const Rat &exponent = Rat(0));

/// b^e for b > 0, computed from exact integer roots: e = k + u/v is split
/// into an integer part and a v-th root, and the root is bracketed by
/// integer root extraction on a scaled integer.
Enclosure rat_pow(const Rat &base, const Rat &e, unsigned precision = kDefaultPrecision);

/// Natural logarithm of x > 0 (correctly rounded in each direction).
Enclosure rat_log(const Rat &x, unsigned precision = kDefaultPrecision);

std::ostream &operator<<(std::ostream &os, const Enclosure &e);

} // namespace nowhereq

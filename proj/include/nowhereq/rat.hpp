/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nowhereq {

/// Exact rational; gmpxx keeps results of arithmetic in lowest terms.
using Rat = mpq_class;
using Int = mpz_class;

/// Precondition violation of a mathematical operation (nonpositive base,
/// degenerate interval, q <= p, ...).
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

/// A search or refinement ran out of its configured budget. Never means
/// "the claim is false".
class BudgetExhausted : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Parses "num/den", "num" or a plain decimal like "0.25" (decimal strings
/// are read exactly, never through floating point).
Rat parse_rat(std::string_view text);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rat &r);

/// 2^k for any signed k.
Rat pow2(long k);

/// base^k for integer k (base != 0 when k < 0).
Rat ipow(const Rat &base, long k);

bool is_integer(const Rat &r);

/// floor(log2(r)) for r > 0.
long floor_log2(const Rat &r);

inline Rat make_rat(long num, long den = 1)
{
	Rat r(num, den);
	r.canonicalize();
	return r;
}

} // namespace nowhereq

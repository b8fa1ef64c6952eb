/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include <cstdint>
#include <utility>

namespace nowhereq {

/// Disjoint family of strictly increasing sequences n_j^k = 2^(k-1) (2j - 1).
/// Row k collects the integers whose 2-adic valuation is k-1, so the rows
/// partition the positive integers.
struct SequenceFamily {
	/// n_j^k; throws DomainError for k or j == 0 or on overflow.
	static std::uint64_t value(std::uint64_t k, std::uint64_t j);
	/// (k, j) with value(k, j) == n.
	static std::pair<std::uint64_t, std::uint64_t> locate(std::uint64_t n);
};

inline std::uint64_t seq_value(std::uint64_t k, std::uint64_t j) { return SequenceFamily::value(k, j); }
inline std::pair<std::uint64_t, std::uint64_t> seq_locate(std::uint64_t n)
{
	return SequenceFamily::locate(n);
}

} // namespace nowhereq

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/integrate.hpp"

#include <map>
#include <string>

namespace nowhereq {

/// Settings shared by all commands. File format: one `key = value` per line,
/// `#` starts a comment. Keys:
///   precision, J, L, D, m, Jg, p, target_width, cell_budget,
///   max_tail, max_generation, output_dir, format (json|compact)
struct RunConfig {
	unsigned precision = kDefaultPrecision;
	GTruncation trunc;
	Rat p = 1;
	Rat target_width = Rat(1, 100'000); // quadrature target for N
	std::size_t cell_budget = 400'000;
	unsigned max_tail = 20'000;
	unsigned max_generation = 40;
	std::string output_dir; // empty: stdout
	std::string format = "json"; // json: indented, compact: one line

	/// Applies one key; throws DomainError on unknown keys or bad values.
	void set(const std::string &key, const std::string &value);
	/// depths >= 1, precision >= 32, p >= 1.
	void validate() const;

	QuadratureOptions quadrature() const;
};

/// Name of the environment variable holding a default config path.
inline constexpr const char *kConfigEnv = "NOWHEREQ_CONFIG";

RunConfig parse_config(const std::string &text);
RunConfig load_config_file(const std::string &path);
/// The file named by NOWHEREQ_CONFIG, or defaults when unset.
RunConfig default_config();

} // namespace nowhereq

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nowhereq {

namespace {

std::string trim(const std::string &s)
{
	auto b = s.find_first_not_of(" \t\r");
	if (b == std::string::npos)
		return "";
	auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

unsigned long parse_count(const std::string &key, const std::string &v)
{
	Rat r = parse_rat(v);
	if (!is_integer(r) || r < 0 || !r.get_num().fits_ulong_p())
		throw DomainError("config key " + key + " needs a nonnegative integer, got " + v);
	return r.get_num().get_ui();
}

unsigned parse_uint(const std::string &key, const std::string &v)
{
	unsigned long x = parse_count(key, v);
	if (x > 1'000'000'000UL)
		throw DomainError("config key " + key + " is out of range");
	return static_cast<unsigned>(x);
}

} // namespace

void RunConfig::set(const std::string &key, const std::string &value)
{
	if (key == "precision")
		precision = parse_uint(key, value);
	else if (key == "J")
		trunc.inner.series_terms = parse_uint(key, value);
	else if (key == "L")
		trunc.inner.components = parse_uint(key, value);
	else if (key == "D")
		trunc.inner.component_depth = parse_uint(key, value);
	else if (key == "m")
		trunc.inner.cantor_stage = parse_uint(key, value);
	else if (key == "Jg")
		trunc.outer_terms = parse_uint(key, value);
	else if (key == "p")
		p = parse_rat(value);
	else if (key == "target_width")
		target_width = parse_rat(value);
	else if (key == "cell_budget")
		cell_budget = parse_count(key, value);
	else if (key == "max_tail")
		max_tail = parse_uint(key, value);
	else if (key == "max_generation")
		max_generation = parse_uint(key, value);
	else if (key == "output_dir")
		output_dir = value;
	else if (key == "format") {
		if (value != "json" && value != "compact")
			throw DomainError("format must be json or compact");
		format = value;
	} else
		throw DomainError("unknown config key: " + key);
}

void RunConfig::validate() const
{
	if (precision < 32)
		throw DomainError("precision must be >= 32 bits");
	const auto &f = trunc.inner;
	if (trunc.outer_terms < 1 || f.series_terms < 1 || f.components < 1 || f.component_depth < 1 ||
	    f.cantor_stage < 1)
		throw DomainError("all depths (J, L, D, m, Jg) must be >= 1");
	if (p < 1)
		throw DomainError("p must be >= 1");
	if (!(target_width > 0))
		throw DomainError("target_width must be positive");
	if (max_tail < 1 || max_generation < 1 || cell_budget < 1)
		throw DomainError("budgets must be >= 1");
}

QuadratureOptions RunConfig::quadrature() const
{
	QuadratureOptions q;
	q.precision = precision;
	q.target_width = target_width;
	q.cell_budget = cell_budget;
	return q;
}

RunConfig parse_config(const std::string &text)
{
	RunConfig c;
	std::istringstream in(text);
	std::string line;
	unsigned lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		auto hash = line.find('#');
		if (hash != std::string::npos)
			line.erase(hash);
		line = trim(line);
		if (line.empty())
			continue;
		auto eq = line.find('=');
		if (eq == std::string::npos)
			throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
		c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
	}
	c.validate();
	return c;
}

RunConfig load_config_file(const std::string &path)
{
	std::ifstream f(path);
	if (!f)
		throw DomainError("cannot read config file " + path);
	std::stringstream ss;
	ss << f.rdbuf();
	return parse_config(ss.str());
}

RunConfig default_config()
{
	const char *path = std::getenv(kConfigEnv);
	if (path && *path)
		return load_config_file(path);
	return RunConfig{};
}

} // namespace nowhereq

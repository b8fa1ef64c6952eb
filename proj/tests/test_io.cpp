/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#include "nowhereq/config.hpp"
#include "nowhereq/serialize.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

using namespace nowhereq;

TEST_CASE("config parsing")
{
	RunConfig c = parse_config("# comment\nprecision = 96\nJ=12\n  L = 7 # trailing\nm = 9\np = 3/2\n"
				   "target_width = 1/1000\nformat = compact\n\n");
	CHECK(c.precision == 96);
	CHECK(c.trunc.inner.series_terms == 12);
	CHECK(c.trunc.inner.components == 7);
	CHECK(c.trunc.inner.cantor_stage == 9);
	CHECK(c.p == Rat(3, 2));
	CHECK(c.target_width == Rat(1, 1000));
	CHECK(c.format == "compact");
	CHECK(c.quadrature().precision == 96);

	CHECK_THROWS_AS(parse_config("nonsense = 1\n"), DomainError);
	CHECK_THROWS_AS(parse_config("J = abc\n"), DomainError);
	CHECK_THROWS_AS(parse_config("no equals sign\n"), DomainError);
	CHECK_THROWS_AS(parse_config("precision = 8\n").validate(), DomainError);
	CHECK_THROWS_AS(parse_config("p = 1/2\n").validate(), DomainError);
	CHECK_THROWS_AS(parse_config("J = 0\n").validate(), DomainError);
}

TEST_CASE("config file and environment")
{
	const char *path = "nowhereq_test_config.txt";
	{
		std::ofstream out(path);
		out << "Jg = 5\nmax_tail = 77\n";
	}
	RunConfig c = load_config_file(path);
	CHECK(c.trunc.outer_terms == 5);
	CHECK(c.max_tail == 77);
	setenv(kConfigEnv, path, 1);
	CHECK(default_config().max_tail == 77);
	unsetenv(kConfigEnv);
	CHECK(default_config().max_tail == RunConfig{}.max_tail);
	std::remove(path);
	CHECK_THROWS(load_config_file("definitely/not/here.cfg"));
}

TEST_CASE("json output is deterministic and round-trips")
{
	auto sched = ExponentSchedule::standard(1);
	DivergenceCertificate c = certify_divergence(1, GTruncation{}, sched, QInterval(0, 1), Rat(2), Rat(10));
	Json j = divergence_json(c);
	CHECK(j["kind"] == "divergence_certificate");
	CHECK(j["schema_version"] == kSchemaVersion);
	std::string a = dump(j);
	std::string b = dump(divergence_json(c));
	CHECK(a == b);
	DivergenceCertificate back = divergence_from_json(Json::parse(a));
	// Parsing drops the verdict; only a replay may restore it.
	CHECK(back.status == Verdict::undecided);
	CHECK(back.witness.hull == c.witness.hull);
	DivergenceCertificate replayed = replay_divergence(back, sched);
	CHECK(dump(divergence_json(replayed)) == a);
}

TEST_CASE("enclosure json rounds outward")
{
	Enclosure e = rat_pow(Rat(2), Rat(1, 2), 128);
	Json j = enclosure_json(e);
	Rat lo = testing::sci(j["lo"].get<std::string>());
	Rat hi = testing::sci(j["hi"].get<std::string>());
	CHECK(lo <= e.lower());
	CHECK(hi >= e.upper());
	CHECK(rat_json(make_rat(-3, 6)) == "-1/2");
}

TEST_CASE("cantor documents")
{
	Json s = stage_json(stage(3));
	CHECK(s["kind"] == "cantor_stage");
	CHECK(s["measure"] == "5/8");
	Json t = tn_json(check_t_bounds(3));
	CHECK(t["t_n"] == "5/32");
}

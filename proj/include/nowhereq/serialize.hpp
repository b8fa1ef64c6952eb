/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The nowhereq Authors
 */

#pragma once

#include "nowhereq/certify.hpp"

#include <json.hpp>

#include <string>

namespace nowhereq {

using Json = nlohmann::json;

/// Bumped on any incompatible change of the documents below.
inline constexpr const char *kSchemaVersion = "1.0";

/// {"lo": ..., "hi": ...} as decimal strings rounded outward.
Json enclosure_json(const Enclosure &e);
Json rat_json(const Rat &r);
Json truncation_json(const GTruncation &t);
Json integral_json(const IntegralResult &r);

// Top-level documents carry schema_version and kind.
Json stage_json(const CantorStage &s, std::size_t max_listed = 4096);
Json tn_json(const TBoundCheck &c);
Json abuilt_json(const CBuiltApprox &a, std::size_t max_listed = 256);
Json lemma_json(const LemmaChainReport &r);
Json divergence_json(const DivergenceCertificate &c);
Json membership_json(const MembershipCertificate &c);
Json isometry_json(const IsometryReport &r);
Json projection_json(const ProjectionReport &r);

/// Inverse of divergence_json for the fields a replay needs; the stored
/// bound is dropped. Throws DomainError on malformed input.
DivergenceCertificate divergence_from_json(const Json &j);

/// Deterministic rendering: sorted keys, two-space indent, trailing newline.
std::string dump(const Json &j);

} // namespace nowhereq

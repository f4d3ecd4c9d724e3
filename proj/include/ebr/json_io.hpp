#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"
#include "ebr/mub.hpp"
#include "ebr/sic.hpp"

#include <json.hpp>

#include <string>

namespace ebr::io {

using json = nlohmann::json;

// Matrices: {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
// Vectors:  {"dim": n, "entries": [[re, im], ...]}.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

// Channels: {"d_in": .., "d_out": .., "kraus": [matrix, ...]}.
json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const json& j);

// Choi matrices as tagged matrix records: {"d_in", "d_out", "matrix"}.
json choi_to_json(const ChoiMatrix& c);
ChoiMatrix choi_from_json(const json& j);

// Rank-one families: {"d": .., "pairs": [{"x": vector, "y": vector}, ...]}.
json family_to_json(const RankOneKrausFamily& fam);
RankOneKrausFamily family_from_json(const json& j);

// SIC candidates: {"d": .., "vectors": [vector, ...]}; fiducials: {"d", "w"}.
json candidate_to_json(const SicCandidate& c);
SicCandidate candidate_from_json(const json& j);
json fiducial_to_json(const Fiducial& f);
Fiducial fiducial_from_json(const json& j);

// MUB families keep the basis index explicit:
// {"d": .., "bases": [{"index": i, "vectors": [...]}, ...]}.
json mub_to_json(const MubFamily& f);
MubFamily mub_from_json(const json& j);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace ebr::io

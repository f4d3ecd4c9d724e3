#include "ebr/json_io.hpp"

#include <fstream>

namespace ebr::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("json: complex entry must be a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

int positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 1) {
    throw std::invalid_argument(std::string("json: missing or invalid \"") + key + "\"");
  }
  return j[key].get<int>();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(complex_to_json(m(r, c)));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  const int rows = positive_int(j, "rows");
  const int cols = positive_int(j, "cols");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<size_t>(rows) * cols) {
    throw std::invalid_argument("json: matrix entries must hold rows*cols pairs");
  }
  Matrix m(rows, cols);
  size_t idx = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j["entries"][idx++]);
    }
  }
  require_finite(m, "json matrix");
  return m;
}

json vector_to_json(const Vector& v) {
  json entries = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) entries.push_back(complex_to_json(v(k)));
  return json{{"dim", v.size()}, {"entries", std::move(entries)}};
}

Vector vector_from_json(const json& j) {
  const int dim = positive_int(j, "dim");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<size_t>(dim)) {
    throw std::invalid_argument("json: vector entries must hold dim pairs");
  }
  Vector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = complex_from_json(j["entries"][static_cast<size_t>(k)]);
  require_finite(v, "json vector");
  return v;
}

json channel_to_json(const KrausChannel& ch) {
  json kraus = json::array();
  for (const auto& r : ch.kraus) kraus.push_back(matrix_to_json(r));
  return json{{"d_in", ch.d_in}, {"d_out", ch.d_out}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const json& j) {
  const int d_in = positive_int(j, "d_in");
  const int d_out = positive_int(j, "d_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw std::invalid_argument("json: channel needs a non-empty kraus list");
  }
  std::vector<Matrix> kraus;
  for (const auto& jk : j["kraus"]) kraus.push_back(matrix_from_json(jk));
  return KrausChannel(d_in, d_out, std::move(kraus));
}

json choi_to_json(const ChoiMatrix& c) {
  return json{{"d_in", c.d_in}, {"d_out", c.d_out}, {"matrix", matrix_to_json(c.mat)}};
}

ChoiMatrix choi_from_json(const json& j) {
  const int d_in = positive_int(j, "d_in");
  const int d_out = positive_int(j, "d_out");
  if (!j.contains("matrix")) throw std::invalid_argument("json: choi record needs \"matrix\"");
  return ChoiMatrix(d_in, d_out, matrix_from_json(j["matrix"]));
}

json family_to_json(const RankOneKrausFamily& fam) {
  json pairs = json::array();
  for (const auto& [x, y] : fam.pairs) {
    pairs.push_back(json{{"x", vector_to_json(x)}, {"y", vector_to_json(y)}});
  }
  return json{{"d", fam.d}, {"pairs", std::move(pairs)}};
}

RankOneKrausFamily family_from_json(const json& j) {
  const int d = positive_int(j, "d");
  if (!j.contains("pairs") || !j["pairs"].is_array()) {
    throw std::invalid_argument("json: family needs a pairs list");
  }
  std::vector<std::pair<Vector, Vector>> pairs;
  for (const auto& jp : j["pairs"]) {
    if (!jp.contains("x") || !jp.contains("y")) {
      throw std::invalid_argument("json: family pair needs \"x\" and \"y\"");
    }
    pairs.emplace_back(vector_from_json(jp["x"]), vector_from_json(jp["y"]));
  }
  return RankOneKrausFamily(d, std::move(pairs));
}

json candidate_to_json(const SicCandidate& c) {
  json vectors = json::array();
  for (const auto& v : c.vectors) vectors.push_back(vector_to_json(v));
  return json{{"d", c.d}, {"vectors", std::move(vectors)}};
}

SicCandidate candidate_from_json(const json& j) {
  const int d = positive_int(j, "d");
  if (!j.contains("vectors") || !j["vectors"].is_array()) {
    throw std::invalid_argument("json: candidate needs a vectors list");
  }
  std::vector<Vector> vectors;
  for (const auto& jv : j["vectors"]) vectors.push_back(vector_from_json(jv));
  return SicCandidate(d, std::move(vectors));
}

json fiducial_to_json(const Fiducial& f) {
  return json{{"d", f.d}, {"w", vector_to_json(f.w)}};
}

Fiducial fiducial_from_json(const json& j) {
  const int d = positive_int(j, "d");
  if (!j.contains("w")) throw std::invalid_argument("json: fiducial needs \"w\"");
  return Fiducial(d, vector_from_json(j["w"]));
}

json mub_to_json(const MubFamily& f) {
  json bases = json::array();
  for (size_t i = 0; i < f.bases.size(); ++i) {
    json vectors = json::array();
    for (const auto& v : f.bases[i]) vectors.push_back(vector_to_json(v));
    bases.push_back(json{{"index", i + 1}, {"vectors", std::move(vectors)}});
  }
  return json{{"d", f.d}, {"bases", std::move(bases)}};
}

MubFamily mub_from_json(const json& j) {
  const int d = positive_int(j, "d");
  if (!j.contains("bases") || !j["bases"].is_array()) {
    throw std::invalid_argument("json: mub family needs a bases list");
  }
  std::vector<std::vector<Vector>> bases(j["bases"].size());
  for (const auto& jb : j["bases"]) {
    const int index = positive_int(jb, "index");
    if (index < 1 || static_cast<size_t>(index) > bases.size() || !jb.contains("vectors")) {
      throw std::invalid_argument("json: bad basis record");
    }
    std::vector<Vector> vectors;
    for (const auto& jv : jb["vectors"]) vectors.push_back(vector_from_json(jv));
    bases[static_cast<size_t>(index - 1)] = std::move(vectors);
  }
  return MubFamily(d, std::move(bases));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ebr::io

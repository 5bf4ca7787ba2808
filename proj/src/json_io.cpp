#include "tpa/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tpa {

namespace {

using json = nlohmann::ordered_json;

json tensor_to_quadruples(const StructureTensor& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j)
      for (std::size_t k = 0; k < t.dim; ++k) {
        Scalar c = t.at(i, j, k);
        if (c) out.push_back(json::array({i, j, k, c}));
      }
  return out;  // the i, j, k loop order is already lexicographic
}

StructureTensor tensor_from_quadruples(std::uint32_t p, std::size_t dim, const json& arr,
                                       const char* name) {
  StructureTensor t(p, dim);
  if (!arr.is_array()) throw std::invalid_argument(std::string(name) + ": expected an array");
  for (const auto& q : arr) {
    if (!q.is_array() || q.size() != 4)
      throw std::invalid_argument(std::string(name) + ": quadruple [i,j,k,c] expected");
    std::size_t i = q[0].get<std::size_t>(), j = q[1].get<std::size_t>(),
                k = q[2].get<std::size_t>();
    Scalar c = q[3].get<Scalar>();
    if (i >= dim || j >= dim || k >= dim || c == 0 || c >= p)
      throw std::invalid_argument(std::string(name) + ": quadruple out of range");
    t.set(i, j, k, c);
  }
  t.finalize();
  return t;
}

}  // namespace

nlohmann::ordered_json algebra_to_json(const TwoProductAlgebra& A,
                                       const std::optional<Grading>& grading) {
  json doc;
  doc["format_version"] = "1";
  doc["p"] = A.p;
  doc["dim"] = A.dim;
  doc["basis_labels"] = A.basis_labels;
  doc["circ"] = tensor_to_quadruples(A.circ);
  doc["bracket"] = tensor_to_quadruples(A.bracket);
  doc["tp_verified"] = A.tp_verified;
  if (grading) {
    doc["grading"] = json{{"even_dim", grading->even_dim}, {"odd_dim", grading->odd_dim}};
  }
  return doc;
}

TwoProductAlgebra algebra_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("format_version") ||
      doc["format_version"].get<std::string>() != "1")
    throw std::invalid_argument("algebra_from_json: unsupported or missing format_version");
  for (const char* key : {"p", "dim", "circ", "bracket"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("algebra_from_json: missing field ") + key);
  std::uint32_t p = doc["p"].get<std::uint32_t>();
  std::size_t dim = doc["dim"].get<std::size_t>();
  if (!is_prime(p) || p < 3)
    throw std::invalid_argument("algebra_from_json: p must be an odd prime");
  TwoProductAlgebra A = make_algebra(p, dim);
  if (doc.contains("basis_labels")) {
    auto labels = doc["basis_labels"].get<std::vector<std::string>>();
    if (labels.size() != dim)
      throw std::invalid_argument("algebra_from_json: basis_labels length mismatch");
    A.basis_labels = std::move(labels);
  }
  A.circ = tensor_from_quadruples(p, dim, doc["circ"], "circ");
  A.bracket = tensor_from_quadruples(p, dim, doc["bracket"], "bracket");
  if (doc.contains("tp_verified")) A.tp_verified = doc["tp_verified"].get<bool>();
  return A;
}

std::optional<Grading> grading_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.contains("grading")) return std::nullopt;
  const auto& g = doc["grading"];
  return Grading{g["even_dim"].get<std::size_t>(), g["odd_dim"].get<std::size_t>()};
}

nlohmann::ordered_json superalgebra_to_json(const SuperAlgebra& S) {
  TwoProductAlgebra A = make_algebra(S.p, S.dim());
  A.circ = S.product;
  for (std::size_t i = 0; i < S.dim(); ++i)
    A.basis_labels[i] = (S.parity(i) ? "o" : "v") + std::to_string(S.parity(i) ? i - S.even_dim : i);
  return algebra_to_json(A, Grading{S.even_dim, S.odd_dim});
}

std::string save_algebra(const TwoProductAlgebra& A, const std::optional<Grading>& grading) {
  return algebra_to_json(A, grading).dump(2) + "\n";
}

TwoProductAlgebra load_algebra(const std::string& text) {
  return algebra_from_json(nlohmann::ordered_json::parse(text));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tpa

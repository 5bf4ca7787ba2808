#ifndef TPA_JSON_IO_HPP
#define TPA_JSON_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "tpa/algebra.hpp"
#include "tpa/superalg.hpp"

namespace tpa {

/// Grading annotation for serialized superalgebras.
struct Grading {
  std::size_t even_dim = 0;
  std::size_t odd_dim = 0;
};

/// Canonical document (format_version "1"): fixed key order, sparse
/// quadruples [i, j, k, c] sorted lexicographically, zero entries absent.
nlohmann::ordered_json algebra_to_json(const TwoProductAlgebra& A,
                                       const std::optional<Grading>& grading = std::nullopt);

/// Inverse of algebra_to_json; tolerant of key order and unsorted quadruples.
/// Throws std::invalid_argument on malformed documents.
TwoProductAlgebra algebra_from_json(const nlohmann::ordered_json& doc);

std::optional<Grading> grading_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json superalgebra_to_json(const SuperAlgebra& S);

std::string save_algebra(const TwoProductAlgebra& A,
                         const std::optional<Grading>& grading = std::nullopt);
TwoProductAlgebra load_algebra(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace tpa

#endif

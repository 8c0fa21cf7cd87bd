#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bms {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed or invalid input data (CSV parsing, dataset validation)
struct data_error : error {
  using error::error;
};

// numerical failures; chains catch these and score the model -inf
struct numerical_error : error {
  using error::error;
};

struct rank_deficiency_error : numerical_error {
  explicit rank_deficiency_error(const std::string& what, std::size_t pivot)
      : numerical_error(what), pivot_index(pivot) {}
  std::size_t pivot_index;
};

struct divergence_error : numerical_error {
  divergence_error(const std::string& what, std::vector<double> last)
      : numerical_error(what), last_finite_iterate(std::move(last)) {}
  std::vector<double> last_finite_iterate;
};

// non-positive-definite curvature at a supposed mode
struct curvature_error : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace bms

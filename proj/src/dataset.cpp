#include "bms/dataset.hpp"

#include <cmath>

#include "bms/errors.hpp"

namespace bms {

const char* family_name(Family f) {
  return f == Family::gaussian_identity ? "gaussian" : "logistic";
}

Family family_from_name(const std::string& name) {
  if (name == "gaussian") return Family::gaussian_identity;
  if (name == "logistic" || name == "binomial") return Family::bernoulli_logit;
  throw data_error("unknown family: " + name);
}

Dataset::Dataset(std::size_t n, std::size_t m, std::vector<double> x,
                 std::vector<double> y, Family family,
                 std::vector<std::string> column_names)
    : n_(n), m_(m), x_(std::move(x)), y_(std::move(y)), family_(family),
      names_(std::move(column_names)) {
  validate();
}

void Dataset::validate() const {
  if (m_ < 1 || n_ < m_)
    throw data_error("dataset: need n >= m >= 1, got n=" + std::to_string(n_) +
                     " m=" + std::to_string(m_));
  if (x_.size() != n_ * m_ || y_.size() != n_)
    throw data_error("dataset: matrix/response size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    if (x_[i * m_] != 1.0)
      throw data_error("dataset: column 0 must be the all-ones intercept (row " +
                       std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (!std::isfinite(x_[i]))
      throw data_error("dataset: non-finite design entry at flat index " +
                       std::to_string(i));
  for (std::size_t i = 0; i < n_; ++i) {
    if (!std::isfinite(y_[i]))
      throw data_error("dataset: non-finite response at row " +
                       std::to_string(i));
    if (family_ == Family::bernoulli_logit && y_[i] != 0.0 && y_[i] != 1.0)
      throw data_error("dataset: Bernoulli response must be 0 or 1 at row " +
                       std::to_string(i));
  }
  if (!names_.empty() && names_.size() != m_ - 1)
    throw data_error("dataset: expected one name per covariate");
}

}  // namespace bms

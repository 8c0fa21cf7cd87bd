#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bms {

enum class Family { gaussian_identity, bernoulli_logit };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Immutable observation matrix plus response. Column 0 is the all-ones
// intercept; the p = m-1 remaining columns are the candidate covariates
// subject to selection. Safe to share read-only across threads.
class Dataset {
 public:
  Dataset(std::size_t n, std::size_t m, std::vector<double> x,
          std::vector<double> y, Family family,
          std::vector<std::string> column_names = {});

  std::size_t n_rows() const { return n_; }
  std::size_t n_cols() const { return m_; }          // includes intercept
  std::size_t n_covariates() const { return m_ - 1; }
  Family family() const { return family_; }

  const double* x() const { return x_.data(); }
  std::span<const double> y() const { return y_; }
  double x_at(std::size_t i, std::size_t j) const { return x_[i * m_ + j]; }

  // names of the covariate columns (without the intercept); may be empty
  const std::vector<std::string>& names() const { return names_; }

 private:
  void validate() const;

  std::size_t n_, m_;
  std::vector<double> x_;  // row-major n x m
  std::vector<double> y_;
  Family family_;
  std::vector<std::string> names_;
};

}  // namespace bms

#include "bms/kernels.hpp"

#include <cmath>

// Reference implementations. Kept deliberately straightforward: these define
// the semantics the vectorised variants are tested against.

namespace bms::kern {
namespace {

inline std::uint32_t row_at(const std::uint32_t* rows, std::size_t r) {
  return rows ? rows[r] : static_cast<std::uint32_t>(r);
}

void linear_predictor_scalar(const double* x, std::size_t stride,
                             const std::uint32_t* rows, std::size_t nrows,
                             const std::uint32_t* cols, std::size_t ncols,
                             const double* beta, double* eta) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* xr = x + static_cast<std::size_t>(row_at(rows, r)) * stride;
    double acc = 0.0;
    for (std::size_t j = 0; j < ncols; ++j)
      acc += xr[cols ? cols[j] : j] * beta[j];
    eta[r] = acc;
  }
}

void weighted_colsum_scalar(const double* x, std::size_t stride,
                            const std::uint32_t* rows, std::size_t nrows,
                            const std::uint32_t* cols, std::size_t ncols,
                            const double* c, double* out) {
  for (std::size_t j = 0; j < ncols; ++j) out[j] = 0.0;
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* xr = x + static_cast<std::size_t>(row_at(rows, r)) * stride;
    const double cr = c[r];
    for (std::size_t j = 0; j < ncols; ++j)
      out[j] += cr * xr[cols ? cols[j] : j];
  }
}

void weighted_gram_scalar(const double* x, std::size_t stride,
                          const std::uint32_t* rows, std::size_t nrows,
                          const std::uint32_t* cols, std::size_t ncols,
                          const double* w, const double* z, double* gram,
                          double* rhs) {
  for (std::size_t j = 0; j < ncols * ncols; ++j) gram[j] = 0.0;
  for (std::size_t j = 0; j < ncols; ++j) rhs[j] = 0.0;
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* xr = x + static_cast<std::size_t>(row_at(rows, r)) * stride;
    const double wr = w[r];
    const double wz = wr * z[r];
    for (std::size_t j = 0; j < ncols; ++j) {
      const double xj = xr[cols ? cols[j] : j];
      rhs[j] += wz * xj;
      const double wxj = wr * xj;
      double* gj = gram + j * ncols;
      for (std::size_t k = j; k < ncols; ++k)
        gj[k] += wxj * xr[cols ? cols[k] : k];
    }
  }
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t k = 0; k < j; ++k) gram[j * ncols + k] = gram[k * ncols + j];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void logistic_mean_scalar(const double* eta, double* mu, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) mu[i] = 1.0 / (1.0 + std::exp(-eta[i]));
}

double bernoulli_loglik_scalar(const double* eta, const double* y,
                               std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = eta[i];
    // log(1+exp(e)) without overflow
    const double softplus =
        e > 0.0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    acc += y[i] * e - softplus;
  }
  return acc;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops = {
      "scalar",        linear_predictor_scalar, weighted_colsum_scalar,
      weighted_gram_scalar, dot_scalar,         axpy_scalar,
      sum_sq_diff_scalar,   logistic_mean_scalar, bernoulli_loglik_scalar,
  };
  return ops;
}

}  // namespace bms::kern

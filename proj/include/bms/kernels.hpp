#pragma once

#include <cstddef>
#include <cstdint>

// Dense inner loops shared by the GLM fitters. Every routine exists as a
// plain scalar reference implementation and, where the hardware supports it,
// an AVX2/FMA variant. The active table is chosen once at startup from CPUID
// (override with BMS_KERNELS=scalar|avx2) and the two variants are
// equivalence-tested against each other.
//
// Matrix arguments are row-major with a row `stride`. `rows` selects a subset
// of rows (nullptr = rows 0..nrows-1), `cols` a subset of columns
// (nullptr = columns 0..ncols-1). Per accumulator the summation order is the
// row order, independent of whether the subset is indexed or contiguous, so
// an indexed identity subset produces bit-identical results to the
// contiguous path.

namespace bms::kern {

struct Ops {
  const char* name;

  // eta[r] = sum_j x(rows[r], cols[j]) * beta[j]
  void (*linear_predictor)(const double* x, std::size_t stride,
                           const std::uint32_t* rows, std::size_t nrows,
                           const std::uint32_t* cols, std::size_t ncols,
                           const double* beta, double* eta);

  // out[j] = sum_r c[r] * x(rows[r], cols[j])   (out is overwritten)
  void (*weighted_colsum)(const double* x, std::size_t stride,
                          const std::uint32_t* rows, std::size_t nrows,
                          const std::uint32_t* cols, std::size_t ncols,
                          const double* c, double* out);

  // gram = sum_r w[r] * xr xr^T and rhs = sum_r w[r] * z[r] * xr where xr is
  // the selected-column slice of row r. gram is ncols x ncols row-major,
  // fully filled (symmetric); gram and rhs are overwritten.
  void (*weighted_gram)(const double* x, std::size_t stride,
                        const std::uint32_t* rows, std::size_t nrows,
                        const std::uint32_t* cols, std::size_t ncols,
                        const double* w, const double* z,
                        double* gram, double* rhs);

  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // sum_i (a[i] - b[i])^2
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

  // mu[i] = 1 / (1 + exp(-eta[i])), unclamped
  void (*logistic_mean)(const double* eta, double* mu, std::size_t n);

  // sum_i [ y[i]*eta[i] - log(1 + exp(eta[i])) ]
  double (*bernoulli_loglik)(const double* eta, const double* y,
                             std::size_t n);
};

const Ops& scalar();
const Ops* avx2();          // nullptr when unsupported at runtime
const Ops& active();        // selected table, stable for process lifetime
bool avx2_supported();

}  // namespace bms::kern

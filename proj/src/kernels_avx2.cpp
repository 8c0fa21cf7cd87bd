#include "bms/kernels.hpp"

#ifdef BMS_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

namespace bms::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// exp(x) for four doubles, Cephes-style rational approximation with
// Cody-Waite argument reduction. Inputs are clamped to [-708, 709] so the
// 2^n scaling stays within the normal range.
inline __m256d exp256(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));

  const __m256d n = _mm256_floor_pd(
      _mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(n, c1, x);
  x = _mm256_fnmadd_pd(n, c2, x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // scale by 2^n through the exponent bits; n is in [-1022, 1023]
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  n64 = _mm256_slli_epi64(n64, 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(n64));
}

// log(x) for four strictly positive doubles (Cephes rational form).
inline __m256d log256(__m256d x) {
  const __m256d P0 = _mm256_set1_pd(1.01875663804580931796e-4);
  const __m256d P1 = _mm256_set1_pd(4.97494994976747001425e-1);
  const __m256d P2 = _mm256_set1_pd(4.70579119878881725854e0);
  const __m256d P3 = _mm256_set1_pd(1.44989225341610930846e1);
  const __m256d P4 = _mm256_set1_pd(1.79368678507819816313e1);
  const __m256d P5 = _mm256_set1_pd(7.70838733755885391666e0);
  const __m256d Q0 = _mm256_set1_pd(1.12873587189167450590e1);
  const __m256d Q1 = _mm256_set1_pd(4.52279145837532221105e1);
  const __m256d Q2 = _mm256_set1_pd(8.29875266912776603211e1);
  const __m256d Q3 = _mm256_set1_pd(7.11544750618563894466e1);
  const __m256d Q4 = _mm256_set1_pd(2.31251620126765340583e1);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);

  // frexp: x = m * 2^e with m in [0.5, 1)
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i e64 = _mm256_srli_epi64(bits, 52);
  e64 = _mm256_sub_epi64(e64, _mm256_set1_epi64x(1022));
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3fe0000000000000LL)));
  // int64 -> double for small exponents via the low 32 bits of each lane
  const __m256i lo32 = _mm256_permutevar8x32_epi32(
      e64, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
  __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(lo32));

  const __m256d below = _mm256_cmp_pd(
      m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, one));
  m = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(below, m)), one);

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d p = _mm256_fmadd_pd(P0, m, P1);
  p = _mm256_fmadd_pd(p, m, P2);
  p = _mm256_fmadd_pd(p, m, P3);
  p = _mm256_fmadd_pd(p, m, P4);
  p = _mm256_fmadd_pd(p, m, P5);
  __m256d q = _mm256_add_pd(m, Q0);
  q = _mm256_fmadd_pd(q, m, Q1);
  q = _mm256_fmadd_pd(q, m, Q2);
  q = _mm256_fmadd_pd(q, m, Q3);
  q = _mm256_fmadd_pd(q, m, Q4);

  __m256d y = _mm256_mul_pd(_mm256_mul_pd(m, z), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(half, z, y);
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

inline std::uint32_t row_at(const std::uint32_t* rows, std::size_t r) {
  return rows ? rows[r] : static_cast<std::uint32_t>(r);
}

template <bool IC>
inline __m256d load_cols(const double* xr, const std::uint32_t* cols,
                         std::size_t j) {
  if constexpr (IC) {
    const __m128i idx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + j));
    return _mm256_i32gather_pd(xr, idx, 8);
  } else {
    (void)cols;
    return _mm256_loadu_pd(xr + j);
  }
}

inline double col_at(const double* xr, const std::uint32_t* cols,
                     std::size_t j) {
  return xr[cols ? cols[j] : j];
}

template <bool IC>
void linear_predictor_impl(const double* x, std::size_t stride,
                           const std::uint32_t* rows, std::size_t nrows,
                           const std::uint32_t* cols, std::size_t ncols,
                           const double* beta, double* eta) {
  const std::size_t nb = ncols & ~std::size_t(3);
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* xr = x + static_cast<std::size_t>(row_at(rows, r)) * stride;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < nb; j += 4)
      acc = _mm256_fmadd_pd(load_cols<IC>(xr, cols, j),
                            _mm256_loadu_pd(beta + j), acc);
    double s = hsum(acc);
    for (std::size_t j = nb; j < ncols; ++j)
      s += col_at(xr, cols, j) * beta[j];
    eta[r] = s;
  }
}

template <bool IC>
void weighted_colsum_impl(const double* x, std::size_t stride,
                          const std::uint32_t* rows, std::size_t nrows,
                          const std::uint32_t* cols, std::size_t ncols,
                          const double* c, double* out) {
  for (std::size_t j = 0; j < ncols; ++j) out[j] = 0.0;
  const std::size_t nb = ncols & ~std::size_t(3);
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* xr = x + static_cast<std::size_t>(row_at(rows, r)) * stride;
    const double cr = c[r];
    const __m256d vc = _mm256_set1_pd(cr);
    for (std::size_t j = 0; j < nb; j += 4) {
      __m256d o = _mm256_loadu_pd(out + j);
      o = _mm256_fmadd_pd(vc, load_cols<IC>(xr, cols, j), o);
      _mm256_storeu_pd(out + j, o);
    }
    for (std::size_t j = nb; j < ncols; ++j)
      out[j] += cr * col_at(xr, cols, j);
  }
}

template <bool IC>
void weighted_gram_impl(const double* x, std::size_t stride,
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
      const double xj = col_at(xr, cols, j);
      rhs[j] += wz * xj;
      const double wxj = wr * xj;
      const __m256d vwx = _mm256_set1_pd(wxj);
      double* gj = gram + j * ncols;
      std::size_t k = j;
      const std::size_t kb = j + ((ncols - j) & ~std::size_t(3));
      for (; k < kb; k += 4) {
        __m256d g = _mm256_loadu_pd(gj + k);
        g = _mm256_fmadd_pd(vwx, load_cols<IC>(xr, cols, k), g);
        _mm256_storeu_pd(gj + k, g);
      }
      for (; k < ncols; ++k) gj[k] += wxj * col_at(xr, cols, k);
    }
  }
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t k = 0; k < j; ++k)
      gram[j * ncols + k] = gram[k * ncols + j];
}

void linear_predictor_avx2(const double* x, std::size_t stride,
                           const std::uint32_t* rows, std::size_t nrows,
                           const std::uint32_t* cols, std::size_t ncols,
                           const double* beta, double* eta) {
  if (cols)
    linear_predictor_impl<true>(x, stride, rows, nrows, cols, ncols, beta, eta);
  else
    linear_predictor_impl<false>(x, stride, rows, nrows, cols, ncols, beta, eta);
}

void weighted_colsum_avx2(const double* x, std::size_t stride,
                          const std::uint32_t* rows, std::size_t nrows,
                          const std::uint32_t* cols, std::size_t ncols,
                          const double* c, double* out) {
  if (cols)
    weighted_colsum_impl<true>(x, stride, rows, nrows, cols, ncols, c, out);
  else
    weighted_colsum_impl<false>(x, stride, rows, nrows, cols, ncols, c, out);
}

void weighted_gram_avx2(const double* x, std::size_t stride,
                        const std::uint32_t* rows, std::size_t nrows,
                        const std::uint32_t* cols, std::size_t ncols,
                        const double* w, const double* z, double* gram,
                        double* rhs) {
  if (cols)
    weighted_gram_impl<true>(x, stride, rows, nrows, cols, ncols, w, z, gram,
                             rhs);
  else
    weighted_gram_impl<false>(x, stride, rows, nrows, cols, ncols, w, z, gram,
                              rhs);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < nb; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (std::size_t i = nb; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  const __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < nb; i += 4) {
    __m256d v = _mm256_loadu_pd(y + i);
    v = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), v);
    _mm256_storeu_pd(y + i, v);
  }
  for (std::size_t i = nb; i < n; ++i) y[i] += a * x[i];
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (std::size_t i = nb; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void logistic_mean_avx2(const double* eta, double* mu, std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d e =
        exp256(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_loadu_pd(eta + i)));
    _mm256_storeu_pd(mu + i, _mm256_div_pd(one, _mm256_add_pd(one, e)));
  }
  for (std::size_t i = nb; i < n; ++i)
    mu[i] = 1.0 / (1.0 + std::exp(-eta[i]));
}

double bernoulli_loglik_avx2(const double* eta, const double* y,
                             std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d e = _mm256_loadu_pd(eta + i);
    const __m256d nabs = _mm256_sub_pd(zero, _mm256_and_pd(e, absmask));
    // softplus(e) = max(e,0) + log(1 + exp(-|e|))
    const __m256d sp = _mm256_add_pd(
        _mm256_max_pd(e, zero), log256(_mm256_add_pd(one, exp256(nabs))));
    acc = _mm256_add_pd(
        acc, _mm256_fmsub_pd(_mm256_loadu_pd(y + i), e, sp));
  }
  double s = hsum(acc);
  for (std::size_t i = nb; i < n; ++i) {
    const double e = eta[i];
    const double sp =
        e > 0.0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    s += y[i] * e - sp;
  }
  return s;
}

}  // namespace

const Ops* avx2_table() {
  static const Ops ops = {
      "avx2",          linear_predictor_avx2, weighted_colsum_avx2,
      weighted_gram_avx2, dot_avx2,           axpy_avx2,
      sum_sq_diff_avx2,   logistic_mean_avx2,  bernoulli_loglik_avx2,
  };
  return &ops;
}

}  // namespace bms::kern

#else

namespace bms::kern {
const Ops* avx2_table() { return nullptr; }
}  // namespace bms::kern

#endif

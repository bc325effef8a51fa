# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled path-supremum kernel.

Same contract and same raw bit stream as the numpy fallback backend; the
stable transform is arranged as flat elementwise loops so the compiler can
route sin/cos/log/exp through the vector math library, and the per-path
state (counter-based RNG keyed by (seed, path_index)) keeps results
independent of scheduling.  Increment values may differ from the fallback
by float ulps because pow is evaluated in exp/log form here.
"""

import numpy as np

from .errors import DomainError

cdef extern from *:
    r"""
    #include <stdint.h>
    #include <math.h>

    typedef unsigned __int128 lv_u128;

    #define LV_CHUNK 4096L

    /* counter bumps before every block; 10 rounds; key = (seed, path) */
    static inline void lv_philox_block(uint64_t ctr[4], uint64_t seed,
                                       uint64_t path, uint64_t out[4]) {
        if (++ctr[0] == 0) { if (++ctr[1] == 0) { if (++ctr[2] == 0) { ++ctr[3]; } } }
        uint64_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
        uint64_t k0 = seed, k1 = path;
        for (int r = 0; r < 10; ++r) {
            lv_u128 p0 = (lv_u128)0xD2E7470EE14C6C93ULL * x0;
            lv_u128 p1 = (lv_u128)0xCA5A826395121157ULL * x2;
            uint64_t hi0 = (uint64_t)(p0 >> 64), lo0 = (uint64_t)p0;
            uint64_t hi1 = (uint64_t)(p1 >> 64), lo1 = (uint64_t)p1;
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += 0x9E3779B97F4A7C15ULL;
            k1 += 0xBB67AE8584CAA73BULL;
        }
        out[0] = x0; out[1] = x1; out[2] = x2; out[3] = x3;
    }

    /* n_samples pairs; even raw words feed u1, odd ones u2 */
    static void lv_fill_uniforms(uint64_t ctr[4], uint64_t seed, uint64_t path,
                                 long n_samples, double *u1, double *u2) {
        uint64_t buf[4];
        long need = 2L * n_samples, got = 0;
        while (got < need) {
            lv_philox_block(ctr, seed, path, buf);
            for (int j = 0; j < 4 && got < need; ++j, ++got) {
                double val = ((double)(buf[j] >> 11) + 0.5) * 0x1p-53;
                if (got & 1L) u2[got >> 1] = val; else u1[got >> 1] = val;
            }
        }
    }

    static void lv_transform_stable(long n, const double *u1, const double *u2,
                                    double alpha, double b_angle, double s_fac,
                                    double *x) {
        const double neg_inv_a = -1.0 / alpha;
        const double q = (1.0 - alpha) / alpha;
        for (long i = 0; i < n; ++i) {
            double v = M_PI * (u1[i] - 0.5);
            double w = -log(u2[i]);
            double ph = alpha * (v + b_angle);
            double t = neg_inv_a * log(cos(v)) + q * (log(cos(v - ph)) - log(w));
            x[i] = s_fac * sin(ph) * exp(t);
        }
    }

    static void lv_transform_gauss(long n, const double *u1, const double *u2,
                                   double *x) {
        for (long i = 0; i < n; ++i) {
            double v = M_PI * (u1[i] - 0.5);
            double w = -log(u2[i]);
            x[i] = 2.0 * sqrt(w) * sin(v);
        }
    }

    static void lv_run_path(double alpha, double b_angle, double s_fac,
                            double step_scale, long n_steps,
                            uint64_t seed, uint64_t path,
                            double *out_full, double *out_half) {
        uint64_t ctr[4] = {0, 0, 0, 0};
        double u1[LV_CHUNK], u2[LV_CHUNK], x[LV_CHUNK];
        double csum = 0.0, mf = 0.0, mh = 0.0;
        long done = 0;
        while (done < n_steps) {
            long n = n_steps - done;
            if (n > LV_CHUNK) n = LV_CHUNK;
            lv_fill_uniforms(ctr, seed, path, n, u1, u2);
            if (alpha == 2.0) lv_transform_gauss(n, u1, u2, x);
            else lv_transform_stable(n, u1, u2, alpha, b_angle, s_fac, x);
            for (long i = 0; i < n; ++i) {
                csum += x[i] * step_scale;
                if (csum > mf) mf = csum;
                if ((((done + i + 1L) & 1L) == 0) && csum > mh) mh = csum;
            }
            done += n;
        }
        *out_full = mf;
        *out_half = mh;
    }

    static void lv_raw_stream(uint64_t seed, uint64_t path, long n,
                              uint64_t *out) {
        uint64_t ctr[4] = {0, 0, 0, 0};
        uint64_t buf[4];
        long got = 0;
        while (got < n) {
            lv_philox_block(ctr, seed, path, buf);
            for (int j = 0; j < 4 && got < n; ++j, ++got) out[got] = buf[j];
        }
    }
    """
    void lv_run_path(double alpha, double b_angle, double s_fac,
                     double step_scale, long n_steps,
                     unsigned long long seed, unsigned long long path,
                     double *out_full, double *out_half) nogil
    void lv_raw_stream(unsigned long long seed, unsigned long long path,
                       long n, unsigned long long *out) nogil

from libc.math cimport atan, tan, M_PI


def raw_stream(seed, path_index, long n):
    """First n raw words of the (seed, path_index) stream."""
    if n <= 0:
        raise DomainError(f"need n > 0, got {n}")
    out = np.empty(n, dtype=np.uint64)
    cdef unsigned long long[::1] view = out
    cdef unsigned long long s = seed
    cdef unsigned long long p = path_index
    with nogil:
        lv_raw_stream(s, p, n, &view[0])
    return out


def grid_suprema(double alpha, double beta, double step_scale, long n_steps,
                 long n_paths, seed, long start_path=0):
    """Per-path grid suprema on the full grid and its half subgrid.

    Mirrors the fallback backend: returns (sup_full, sup_half) float64
    arrays, both floored at 0 via the path's starting point.
    """
    if n_steps <= 0 or n_paths <= 0:
        raise DomainError(
            f"need positive sizes, got n_steps={n_steps} n_paths={n_paths}")
    cdef double b_angle = 0.0, s_fac = 1.0, bt
    if alpha != 2.0:
        bt = beta * tan(M_PI * alpha / 2.0)
        b_angle = atan(bt) / alpha
        s_fac = (1.0 + bt * bt) ** (1.0 / (2.0 * alpha))

    out_full = np.empty(n_paths)
    out_half = np.empty(n_paths)
    cdef double[::1] fv = out_full
    cdef double[::1] hv = out_half
    cdef unsigned long long s = seed
    cdef unsigned long long base = start_path
    cdef long i
    with nogil:
        for i in range(n_paths):
            lv_run_path(alpha, b_angle, s_fac, step_scale, n_steps,
                        s, base + <unsigned long long>i, &fv[i], &hv[i])
    return out_full, out_half

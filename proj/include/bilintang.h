/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the bilintang model-order-reduction library.
 *
 * All entry points return a bt_status; on failure, bt_last_error() gives a
 * thread-local human-readable message. Handles are opaque and owned by the
 * caller via the matching *_free function.
 */
#ifndef BILINTANG_H
#define BILINTANG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bt_system bt_system;
typedef struct bt_reduction bt_reduction;

typedef enum {
  BT_OK = 0,
  BT_ERR_INVALID = 1,   /* bad arguments, unknown names, shape errors */
  BT_ERR_SINGULAR = 2,  /* singular K(s) at an evaluation point */
  BT_ERR_IO = 3,        /* file errors */
  BT_ERR_DIMENSION = 4  /* mismatched m/p between models */
} bt_status;

const char *bt_last_error(void);

/* Benchmark generators. */
bt_status bt_gen_msd(int64_t n, bt_system **out);
bt_status bt_gen_delay_rod(int64_t n, int64_t m, int64_t p, double tau,
                           bt_system **out);
bt_status bt_gen_heat2d(int64_t nx, int64_t ny, bt_system **out);

/* Matrix Market + JSON descriptor bundles. */
bt_status bt_system_load(const char *dir, bt_system **out);
bt_status bt_system_save(const bt_system *sys, const char *dir);
void bt_system_free(bt_system *sys);
bt_status bt_system_dims(const bt_system *sys, int64_t *n, int64_t *m,
                         int64_t *p);

/* Reduction recipe: interpolation points i*logspace(a, b, count), one point
 * set of depth `level` per frequency, seeded normalized random directions. */
typedef struct {
  const char *framework; /* modified | SftInt | SttInt | BwtInt | MtxInt */
  const char *side;      /* two-sided | one-sided-v | one-sided-w */
  double a;
  double b;
  int32_t count;
  int32_t level;
  int32_t hermite_order;
  int32_t identical_points;
  int32_t realify;
  /* Basis rank-truncation tolerance; zero keeps every nonzero direction. */
  double truncation_tol;
  uint64_t seed;
} bt_reduce_options;

void bt_reduce_options_init(bt_reduce_options *opts);

bt_status bt_reduce(const bt_system *sys, const bt_reduce_options *opts,
                    bt_reduction **out);
void bt_reduction_free(bt_reduction *red);
int64_t bt_reduction_order(const bt_reduction *red);
int64_t bt_reduction_raw_width_v(const bt_reduction *red);
int64_t bt_reduction_raw_width_w(const bt_reduction *red);
/* Borrowed pointer, valid while the reduction lives. */
const bt_system *bt_reduction_system(const bt_reduction *red);

/* Writes the reduced bundle, the bases with provenance, and the recipe. */
bt_status bt_reduction_save(const bt_reduction *red, const char *dir);
/* Rebuilds a reduction saved by bt_reduction_save against the full model. */
bt_status bt_reduction_load(const bt_system *full, const char *dir,
                            bt_reduction **out);

/* Checks every interpolation condition asserted for the recipe; pass/fail
 * counts are returned (ill-conditioned reports counted separately) and the
 * full report list is optionally written as JSON. */
bt_status bt_verify(const bt_system *full, const bt_reduction *red, double tol,
                    const char *json_path, int64_t *n_pass, int64_t *n_fail,
                    int64_t *n_ill);

/* Time-domain simulation; signal is a named input ("zero", "step",
 * "msd_bench", "rod_bench"). Output CSV: t,y1,...,yp. */
bt_status bt_simulate(const bt_system *sys, const char *signal, double t_f,
                      double dt, const char *csv_path);
/* Pointwise relative output error between two models under one signal. */
bt_status bt_err_sim(const bt_system *full, const bt_system *red,
                     const char *signal, double t_f, double dt, double *out);

/* Frequency sweeps: G1 on i*logspace(a1, b1, n1), optionally G2 on the
 * n2 x n2 grid over logspace(a2, b2, n2). CSV columns: w1,w2,relerr. */
bt_status bt_sweep(const bt_system *full, const bt_system *red, double a1,
                   double b1, int32_t n1, double a2, double b2, int32_t n2,
                   const char *csv_path, double *err_g1, double *err_g2);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BILINTANG_H */

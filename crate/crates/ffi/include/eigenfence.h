#ifndef EIGENFENCE_H
#define EIGENFENCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Layer bits for `ef_render_svg`.
#define EF_LAYER_CLASSIC 1

#define EF_LAYER_SECOND 2

#define EF_LAYER_REFINED 4

#define EF_LAYER_OBR 8

// Semi-norm selector.
typedef enum EfNorm {
  EF_NORM_L1 = 0,
  EF_NORM_L_INF = 1,
} EfNorm;

// Region selector for `ef_region_json`.
typedef enum EfRegionKind {
  EF_REGION_KIND_SECOND_TYPE = 0,
  EF_REGION_KIND_REFINED = 1,
  EF_REGION_KIND_OBR = 2,
  EF_REGION_KIND_CLASSIC_ROWS = 3,
  EF_REGION_KIND_CLASSIC_COLUMNS = 4,
} EfRegionKind;

// Result codes.
typedef enum EfStatus {
  EF_STATUS_OK = 0,
  EF_STATUS_NULL_POINTER = 1,
  EF_STATUS_INVALID_ARGUMENT = 2,
  EF_STATUS_PARSE = 3,
  EF_STATUS_DIMENSION = 4,
  EF_STATUS_INVALID_EIGENPAIR = 5,
  EF_STATUS_MATH = 6,
  EF_STATUS_BUFFER_TOO_SMALL = 7,
  EF_STATUS_PANIC = 8,
} EfStatus;

// Opaque square matrix.
typedef struct EfMatrix EfMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies an `n x n` row-major array into a new matrix.
enum EfStatus ef_matrix_new(size_t n, const double *data, struct EfMatrix **out);

// Parses whitespace-separated rows or a JSON problem document.
enum EfStatus ef_matrix_parse(const char *text, struct EfMatrix **out);

// Releases a matrix. Null is ignored.
void ef_matrix_free(struct EfMatrix *m);

// Matrix size, or 0 for null.
size_t ef_matrix_dim(const struct EfMatrix *m);

// Relative residual of `(lambda, v)`. Fails with `INVALID_EIGENPAIR` above `tol`.
enum EfStatus ef_check_eigenpair(const struct EfMatrix *m,
                                 double lambda,
                                 const double *v,
                                 size_t len,
                                 double tol,
                                 double *residual);

// Region JSON for the eigenvalues other than `lambda`. The classic kinds
// ignore the eigenpair and accept a null `v`.
enum EfStatus ef_region_json(const struct EfMatrix *m,
                             double lambda,
                             const double *v,
                             size_t len,
                             enum EfRegionKind region,
                             char **out);

// `tau1` or `tau_inf` of the matrix itself.
enum EfStatus ef_tau(const struct EfMatrix *m, enum EfNorm norm, double *out);

// `tau(M^k)^(1/k)` for a constant row-sum matrix.
enum EfStatus ef_powered_bound(const struct EfMatrix *m, uint32_t k, enum EfNorm norm, double *out);

// Upper bound on `|det A|` from one eigenpair.
enum EfStatus ef_det_bound(const struct EfMatrix *m,
                           double lambda,
                           const double *v,
                           size_t len,
                           uint32_t k,
                           enum EfNorm norm,
                           double *out);

// Full bound report as a JSON array, powers 1 to `max_k`.
enum EfStatus ef_bounds_json(const struct EfMatrix *m,
                             double lambda,
                             const double *v,
                             size_t len,
                             uint32_t max_k,
                             char **out);

// Oracle eigenvalues, modulus descending, into caller arrays of length
// `cap >= n`. `count` receives `n`.
enum EfStatus ef_eigenvalues(const struct EfMatrix *m,
                             uint64_t seed,
                             double *re,
                             double *im,
                             size_t cap,
                             size_t *count);

// Oracle determinant.
enum EfStatus ef_determinant(const struct EfMatrix *m, double *out);

// SVG of the layers selected by the `EF_LAYER_*` bits; `eigs != 0` adds
// oracle eigenvalue markers.
enum EfStatus ef_render_svg(const struct EfMatrix *m,
                            double lambda,
                            const double *v,
                            size_t len,
                            uint32_t layers,
                            int eigs,
                            char **out);

// Releases a string returned by this library. Null is ignored.
void ef_string_free(char *s);

// Message for the last failure on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *ef_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENFENCE_H */

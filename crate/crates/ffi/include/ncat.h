#ifndef NCAT_H
#define NCAT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcatStatus {
  NCAT_STATUS_OK = 0,
  NCAT_STATUS_NULL_POINTER = 1,
  NCAT_STATUS_INVALID_UTF8 = 2,
  NCAT_STATUS_PARSE_ERROR = 3,
  NCAT_STATUS_INVALID_CELL = 4,
  NCAT_STATUS_NOT_COMPOSABLE = 5,
  NCAT_STATUS_NO_SUCH_CELL = 6,
  NCAT_STATUS_INVALID_ARGUMENT = 7,
} NcatStatus;

typedef enum NcatFunctor {
  NCAT_FUNCTOR_G = 0,
  NCAT_FUNCTOR_F = 1,
} NcatFunctor;

/**
 * Resolved flow data.
 */
typedef struct NcatFlowData NcatFlowData;

/**
 * A cell of `W`.
 */
typedef struct NcatWCell NcatWCell;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *ncat_last_error(void);

void ncat_string_free(char *s);

/**
 * Parses a NUL-terminated JSON flow-data document.
 */
enum NcatStatus ncat_flow_data_parse(const char *json, struct NcatFlowData **out);

/**
 * The built-in torus flow data.
 */
struct NcatFlowData *ncat_flow_data_torus(void);

void ncat_flow_data_free(struct NcatFlowData *fd);

enum NcatStatus ncat_flow_data_max_level(const struct NcatFlowData *fd, size_t *out);

/**
 * Runs the consistency checks; `*passed` is set to whether all passed.
 */
enum NcatStatus ncat_flow_data_validate(const struct NcatFlowData *fd, bool *passed);

/**
 * The validation report as text.
 */
char *ncat_flow_data_validation_report(const struct NcatFlowData *fd);

/**
 * Number of generated cells of X at `level`.
 */
enum NcatStatus ncat_x_cell_count(const struct NcatFlowData *fd, size_t level, size_t *out);

/**
 * Number of pairs in `X(level) ×_p X(level)`.
 */
enum NcatStatus ncat_x_composable_pair_count(const struct NcatFlowData *fd,
                                             size_t level,
                                             size_t p,
                                             size_t *out);

/**
 * Checks the laws of `G` or `F` up to `level`.
 */
enum NcatStatus ncat_functor_laws(const struct NcatFlowData *fd,
                                  enum NcatFunctor functor,
                                  size_t level,
                                  bool *passed);

/**
 * Builds a level-`level` cell of `W` from its head and the `level` source
 * and target indices, listed from the top level down.
 */
enum NcatStatus ncat_w_cell_new(uint32_t head,
                                const uint32_t *sources,
                                const uint32_t *targets,
                                size_t level,
                                struct NcatWCell **out);

void ncat_w_cell_free(struct NcatWCell *cell);

size_t ncat_w_cell_level(const struct NcatWCell *cell);

uint32_t ncat_w_cell_head(const struct NcatWCell *cell);

enum NcatStatus ncat_w_cell_source(const struct NcatWCell *cell, struct NcatWCell **out);

enum NcatStatus ncat_w_cell_target(const struct NcatWCell *cell, struct NcatWCell **out);

enum NcatStatus ncat_w_cell_identity(const struct NcatWCell *cell, struct NcatWCell **out);

/**
 * `c ∘_p a`.
 */
enum NcatStatus ncat_w_cell_compose(size_t p,
                                    const struct NcatWCell *c,
                                    const struct NcatWCell *a,
                                    struct NcatWCell **out);

bool ncat_w_cell_equal(const struct NcatWCell *x, const struct NcatWCell *y);

/**
 * Text form such as `(0, [1 2 ; 0 0])`; free with [`ncat_string_free`].
 */
char *ncat_w_cell_render(const struct NcatWCell *cell);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCAT_H */

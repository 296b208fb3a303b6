#ifndef FATTREE_H
#define FATTREE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Precision of per-port figures in estimates.
 */
typedef enum FtPrecision {
  FT_PRECISION_EXACT = 0,
  FT_PRECISION_DATASHEET = 1,
} FtPrecision;

/**
 * Result of every call.
 */
typedef enum FtStatus {
  FT_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  FT_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  /**
   * A catalog or request document was rejected.
   */
  FT_STATUS_PARSE_ERROR = 2,
  /**
   * The request has no solution with the given catalog and constraints.
   */
  FT_STATUS_INFEASIBLE = 3,
  /**
   * A referenced switch is not in the catalog.
   */
  FT_STATUS_NOT_FOUND = 4,
  /**
   * An internal error; the library caught a panic.
   */
  FT_STATUS_INTERNAL = 5,
} FtStatus;

/**
 * A loaded switch catalog.
 */
typedef struct FtCatalog FtCatalog;

/**
 * The outcome of a successful design run.
 */
typedef struct FtReport FtReport;

/**
 * Headline numbers of the optimal design. Money is in minor currency
 * units, power in milliwatts.
 */
typedef struct FtDesignSummary {
  /**
   * 0 fat-tree, 1 star, 2 direct connect.
   */
  uint32_t kind;
  uint64_t node_count;
  uint64_t edge_count;
  uint64_t core_count;
  /**
   * 0 when there is no core layer.
   */
  uint64_t bundle_width;
  uint64_t cable_count;
  int64_t cost_minor;
  int64_t power_milliwatts;
  uint64_t rack_units;
} FtDesignSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ft_last_error(void);

/**
 * Library version, a static string.
 */
const char *ft_version(void);

/**
 * Parses a catalog document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FtStatus ft_catalog_load(const char *json, struct FtCatalog **out);

/**
 * The bundled catalog with a single 36-port switch.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FtStatus ft_catalog_demo(struct FtCatalog **out);

/**
 * Releases a catalog. Null is ignored.
 *
 * # Safety
 * `catalog` must come from this library and not be used afterwards.
 */
void ft_catalog_free(struct FtCatalog *catalog);

/**
 * Number of switch configurations in a catalog, modular ones expanded.
 *
 * # Safety
 * `catalog` must be a live handle or null.
 */
uint64_t ft_catalog_config_count(const struct FtCatalog *catalog);

/**
 * Designs from a full request document.
 *
 * # Safety
 * `catalog` must be a live handle, `request_json` NUL-terminated and `out` valid.
 */
enum FtStatus ft_design_request(const struct FtCatalog *catalog,
                                const char *request_json,
                                struct FtReport **out);

/**
 * Designs a rack-mounted cluster of `nodes` at blocking factor
 * `blocking_num / blocking_den`, cables at `cable_cost_minor` each.
 *
 * # Safety
 * `catalog` must be a live handle and `out` valid.
 */
enum FtStatus ft_design(const struct FtCatalog *catalog,
                        uint64_t nodes,
                        uint64_t blocking_num,
                        uint64_t blocking_den,
                        int64_t cable_cost_minor,
                        struct FtReport **out);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `report` must come from this library and not be used afterwards.
 */
void ft_report_free(struct FtReport *report);

/**
 * Headline numbers of the optimal design.
 *
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum FtStatus ft_report_summary(const struct FtReport *report, struct FtDesignSummary *out);

/**
 * The report as JSON, listing at most `top` candidates (0 for all).
 *
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum FtStatus ft_report_json(const struct FtReport *report, uint64_t top, char **out);

/**
 * The report as plain text.
 *
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum FtStatus ft_report_text(const struct FtReport *report, char **out);

/**
 * Wiring diagram of the optimal design in DOT.
 *
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum FtStatus ft_report_dot(const struct FtReport *report, char **out);

/**
 * Per-port lower-bound estimate for `nodes` built from `switch_id`, as JSON.
 * `precision` is an [`FtPrecision`] value.
 *
 * # Safety
 * `catalog` must be a live handle, `switch_id` NUL-terminated and `out` valid.
 */
enum FtStatus ft_estimate_json(const struct FtCatalog *catalog,
                               const char *switch_id,
                               uint64_t nodes,
                               int64_t cable_cost_minor,
                               bool blade,
                               uint32_t precision,
                               char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ft_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FATTREE_H */

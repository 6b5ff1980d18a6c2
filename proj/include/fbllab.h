/* fbllab.h - C interface to the free-Banach-lattice toolkit.
 *
 * All structured data crosses the boundary as JSON text; handles are
 * opaque and owned by the caller until the matching *_free call. Every
 * function returns FBL_OK or an error status; fbl_last_error() carries
 * the detail message for the calling thread. Strings returned through
 * out-parameters are released with fbl_string_free().
 */
#ifndef FBLLAB_H
#define FBLLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FBL_API __declspec(dllexport)
#else
#define FBL_API __attribute__((visibility("default")))
#endif

typedef struct fbl_lattice fbl_lattice;
typedef struct fbl_expr fbl_expr;

typedef enum fbl_status {
  FBL_OK = 0,
  FBL_E_PARSE = 1,
  FBL_E_IO = 2,
  FBL_E_CYCLIC_ORDER = 3,
  FBL_E_NOT_A_LATTICE = 4,
  FBL_E_NOT_DISTRIBUTIVE = 5,
  FBL_E_NOT_A_HOM = 6,
  FBL_E_NOT_IRREDUCIBLE = 7,
  FBL_E_ORDER_VIOLATION = 8,
  FBL_E_COORDINATE_ORDER = 9,
  FBL_E_RANGE = 10,
  FBL_E_LATTICE_MISMATCH = 11,
  FBL_E_TRIVIAL_LATTICE = 12,
  FBL_E_EMPTY_SEPARATING_SET = 13,
  FBL_E_UNKNOWN_NAME = 14,
  FBL_E_MISSING_PARAM = 15,
  FBL_E_PARAM = 16,
  FBL_E_UNKNOWN_SCENARIO = 17,
  FBL_E_INTERNAL = 18
} fbl_status;

FBL_API int fbl_version(void);
FBL_API const char* fbl_status_name(fbl_status status);
FBL_API const char* fbl_last_error(void);
FBL_API void fbl_string_free(char* text);

/* lattices ---------------------------------------------------------- */
FBL_API fbl_status fbl_lattice_from_json(const char* json, fbl_lattice** out);
/* descriptor: "chain:4", "powerset:2", "bottomed_powerset:2",
 * "diamond", "pentagon", "five_point" */
FBL_API fbl_status fbl_lattice_builtin(const char* descriptor, fbl_lattice** out);
FBL_API fbl_status fbl_lattice_to_json(const fbl_lattice* lattice, char** out_json);
FBL_API fbl_status fbl_lattice_opposite(const fbl_lattice* lattice, fbl_lattice** out);
FBL_API int fbl_lattice_size(const fbl_lattice* lattice);
FBL_API void fbl_lattice_free(fbl_lattice* lattice);

/* dual complex ------------------------------------------------------ */
FBL_API fbl_status fbl_dual_cells_json(const fbl_lattice* lattice, char** out_json);
FBL_API fbl_status fbl_membership(const fbl_lattice* lattice, const char* point_json,
                                  int* out_is_member);
FBL_API fbl_status fbl_sample_points_json(const fbl_lattice* lattice, int count,
                                          uint64_t seed, char** out_json);

/* expressions ------------------------------------------------------- */
FBL_API fbl_status fbl_expr_from_json(const fbl_lattice* lattice, const char* json,
                                      fbl_expr** out);
/* named: "f_gamma" (params {"gamma":"1"}), "strong_unit_candidate",
 * "order_density_f", "quasi_interior"; params_json may be NULL */
FBL_API fbl_status fbl_expr_named(const fbl_lattice* lattice, const char* name,
                                  const char* params_json, fbl_expr** out);
FBL_API fbl_status fbl_expr_to_json(const fbl_expr* expr, char** out_json);
FBL_API void fbl_expr_free(fbl_expr* expr);

/* operations -------------------------------------------------------- */
FBL_API fbl_status fbl_eval(const fbl_expr* expr, const char* point_json, char** out_value);
FBL_API fbl_status fbl_sup_norm(const fbl_expr* expr, const char* eps,
                                uint64_t node_budget_per_cell, char** out_json);
/* zero means default for every cap: vertex_tuple_cap 10^6, 64 starts,
 * 200 iterations */
FBL_API fbl_status fbl_free_norm(const fbl_expr* expr, int m, uint64_t vertex_tuple_cap,
                                 int ascent_starts, int ascent_iters, uint64_t seed,
                                 char** out_json);

/* scenarios --------------------------------------------------------- */
FBL_API fbl_status fbl_scenario_names(char** out_json);
FBL_API fbl_status fbl_scenario_run(const char* name, const char* params_json,
                                    int canonical, char** out_report_json);
FBL_API fbl_status fbl_run_all(const char* config_json, char** out_suite_json);
FBL_API fbl_status fbl_default_suite_config(char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FBLLAB_H */

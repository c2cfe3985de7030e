/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef IRGA_IRGA_H
#define IRGA_IRGA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IRGA_BUILDING_LIBRARY)
#    define IRGA_API __declspec(dllexport)
#  else
#    define IRGA_API __declspec(dllimport)
#  endif
#else
#  define IRGA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irga_status {
  IRGA_OK = 0,
  IRGA_ERR_CONFIG = 1,
  IRGA_ERR_NUMERICAL = 2,
  IRGA_ERR_IO = 3,
  IRGA_ERR_INVALID_ARGUMENT = 4
} irga_status;

typedef struct irga_config irga_config;
typedef struct irga_dataset irga_dataset;
typedef struct irga_var_model irga_var_model;
typedef struct irga_table irga_table;

IRGA_API const char* irga_version(void);

/* Message of the last failed call on this thread; "" if none. Errors are
 * tagged with the failing module, e.g. "[vamp] diverged ...". */
IRGA_API const char* irga_last_error(void);

/* Strings returned through char** out-parameters are released with this. */
IRGA_API void irga_string_free(char* s);

/* ---- run configuration ---- */
IRGA_API irga_status irga_config_create(irga_config** out);
IRGA_API void irga_config_destroy(irga_config* cfg);
IRGA_API irga_status irga_config_set(irga_config* cfg, const char* key, const char* value);
IRGA_API irga_status irga_config_load_file(irga_config* cfg, const char* path);
IRGA_API irga_status irga_config_validate(const irga_config* cfg);
IRGA_API irga_status irga_config_to_json(const irga_config* cfg, char** out_json);
/* Number of keys and their names, for usage listings. */
IRGA_API size_t irga_config_key_count(void);
IRGA_API const char* irga_config_key(size_t index);

/* ---- datasets ---- */
IRGA_API irga_status irga_dataset_load_fred(const char* path, const char* range, irga_dataset** out);
IRGA_API irga_status irga_dataset_select(const irga_dataset* ds, const char* const* names, size_t n,
                                         irga_dataset** out);
IRGA_API irga_status irga_dataset_transform(const irga_dataset* ds, irga_dataset** out);
/* Load, select and transform as the configuration's data, range, vars and
 * transform keys describe. */
IRGA_API irga_status irga_dataset_prepare(const irga_config* cfg, irga_dataset** out);
IRGA_API irga_status irga_dataset_dims(const irga_dataset* ds, size_t* rows, size_t* cols);
IRGA_API irga_status irga_dataset_write_csv(const irga_dataset* ds, const char* path);
IRGA_API void irga_dataset_destroy(irga_dataset* ds);

/* ---- TVP-VAR ---- */
IRGA_API irga_status irga_var_estimate(const irga_dataset* ds, const irga_config* cfg, irga_var_model** out);
IRGA_API irga_status irga_var_equation_count(const irga_var_model* m, size_t* n);
/* Retained draws x focus coefficients of one equation. */
IRGA_API irga_status irga_var_draw_dims(const irga_var_model* m, size_t equation, size_t* rows, size_t* cols);
/* Writes one draws file per equation into dir using the configured format
 * and returns a JSON listing of the files and their dimensions. */
IRGA_API irga_status irga_var_write_draws(const irga_var_model* m, const irga_config* cfg, const char* dir,
                                          char** out_json);
/* Posterior means, VAMP diagnostics and variance estimates per equation. */
IRGA_API irga_status irga_var_summary_json(const irga_var_model* m, char** out_json);
IRGA_API irga_status irga_var_irf(const irga_var_model* m, const char* shock, int horizons, irga_table** out);
IRGA_API void irga_var_destroy(irga_var_model* m);

/* Recursive out-of-sample forecasts at the configured origins and horizons. */
IRGA_API irga_status irga_forecast(const irga_dataset* ds, const irga_config* cfg, irga_table** out_records);
/* Metrics per variable and horizon; baseline may be NULL. Both tables must
 * come from irga_forecast. */
IRGA_API irga_status irga_evaluate(const irga_table* records, const irga_table* baseline, irga_table** out);

/* ---- simulation ---- */
IRGA_API irga_status irga_simulate(const irga_config* cfg, irga_table** out);
IRGA_API irga_status irga_timing(const irga_config* cfg, irga_table** out);

/* ---- result tables ---- */
IRGA_API irga_status irga_table_dims(const irga_table* t, size_t* rows, size_t* cols);
IRGA_API const char* irga_table_column_name(const irga_table* t, size_t col);
IRGA_API irga_status irga_table_number(const irga_table* t, size_t row, size_t col, double* out);
IRGA_API irga_status irga_table_text(const irga_table* t, size_t row, size_t col, char** out);
IRGA_API irga_status irga_table_write_csv(const irga_table* t, const char* path);
IRGA_API irga_status irga_table_to_json(const irga_table* t, char** out_json);
IRGA_API void irga_table_destroy(irga_table* t);

#ifdef __cplusplus
}
#endif

#endif /* IRGA_IRGA_H */

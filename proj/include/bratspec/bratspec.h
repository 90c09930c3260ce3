#ifndef BRATSPEC_H
#define BRATSPEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(BSP_BUILDING)
#define BSP_API __attribute__((visibility("default")))
#else
#define BSP_API
#endif

typedef enum bsp_status {
  BSP_OK = 0,
  BSP_E_INVALID_ARGUMENT = 1,
  BSP_E_PARSE = 2,
  BSP_E_NOT_PRIMITIVE = 3,
  BSP_E_HYPOTHESIS = 4,
  BSP_E_BACKEND_MISMATCH = 5,
  BSP_E_UNSUPPORTED = 6,
  BSP_E_LIMIT = 7,
  BSP_E_NUMERIC = 8,
  BSP_E_CALIBRATION = 9,
  BSP_E_IO = 10,
  BSP_E_INTERNAL = 100
} bsp_status;

typedef struct bsp_model bsp_model;
typedef struct bsp_spectrum bsp_spectrum;

/* backend: "rational", "quadratic:D" or "approx:BITS"; NULL keeps the default. */
typedef struct bsp_model_options {
  const char* backend;
  int has_s; /* 0: s = d */
  double s;
  long precision; /* 0: 200 bits */
} bsp_model_options;

BSP_API void bsp_model_options_init(bsp_model_options* options);

BSP_API bsp_status bsp_model_from_preset(const char* name, const bsp_model_options* options, bsp_model** out);
BSP_API bsp_status bsp_model_from_matrix_file(const char* path, const bsp_model_options* options, bsp_model** out);
BSP_API bsp_status bsp_model_from_json(const char* text, const bsp_model_options* options, bsp_model** out);
BSP_API void bsp_model_free(bsp_model* model);

BSP_API const char* bsp_model_name(const bsp_model* model);
BSP_API const char* bsp_model_backend(const bsp_model* model);
BSP_API double bsp_model_s(const bsp_model* model);
BSP_API int bsp_model_dimension(const bsp_model* model);
BSP_API int bsp_model_vertices(const bsp_model* model);
BSP_API int bsp_model_fell_back(const bsp_model* model);

typedef enum bsp_label { BSP_LABEL_ZERO = 0, BSP_LABEL_ROOT = 1, BSP_LABEL_PATH = 2 } bsp_label;

typedef struct bsp_record {
  bsp_label label;
  int generation;
  double eigenvalue;
  long multiplicity;
} bsp_record;

/* Kernel, root and every splitting path of length <= max_generation. */
BSP_API bsp_status bsp_spectrum_compute(const bsp_model* model, int max_generation, int threads, bsp_spectrum** out);
BSP_API size_t bsp_spectrum_size(const bsp_spectrum* spectrum);
BSP_API bsp_status bsp_spectrum_get(const bsp_spectrum* spectrum, size_t index, bsp_record* out);
BSP_API const char* bsp_spectrum_path_id(const bsp_spectrum* spectrum, size_t index);
BSP_API const char* bsp_spectrum_exact(const bsp_spectrum* spectrum, size_t index);
BSP_API long bsp_spectrum_total_multiplicity(const bsp_spectrum* spectrum);
BSP_API void bsp_spectrum_free(bsp_spectrum* spectrum);

/* Dense generation-n check; passed is 1 or 0. */
BSP_API bsp_status bsp_verify(const bsp_model* model, int n, double tolerance, int* passed, double* max_deviation);

typedef struct bsp_run_options {
  const char* command; /* presets spectrum dense verify zeta weyl heat strip ck-check complexity */
  const char* format;  /* "csv" or "json" */
  int depth;
  int threads;
  size_t cap; /* 0: command default */
  double tolerance;
  double grid_lo; /* 0: automatic */
  double grid_hi;
  int grid_steps;
  double tmin;
  double tmax;
  int points;
  int nmax;
} bsp_run_options;

BSP_API void bsp_run_options_init(bsp_run_options* options);

/* text receives a string owned by the caller (bsp_string_free); verdict is 1 on pass. */
BSP_API bsp_status bsp_run(const bsp_model* model, const bsp_run_options* options, char** text, int* verdict);
BSP_API bsp_status bsp_presets_report(const char* format, char** text);

BSP_API void bsp_string_free(char* text);
BSP_API const char* bsp_status_name(bsp_status status);
/* Message of the last failure on this thread. */
BSP_API const char* bsp_last_error(void);
BSP_API const char* bsp_version(void);

#ifdef __cplusplus
}
#endif

#endif

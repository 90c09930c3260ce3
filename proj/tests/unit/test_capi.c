#include <stdio.h>
#include <string.h>

#include "bratspec/bratspec.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  bsp_model* model = NULL;
  bsp_model_options mo;
  bsp_model_options_init(&mo);
  mo.backend = "rational";
  EXPECT(bsp_model_from_preset("thue-morse", &mo, &model) == BSP_OK);
  EXPECT(strcmp(bsp_model_backend(model), "rational") == 0);
  EXPECT(bsp_model_dimension(model) == 1);
  EXPECT(bsp_model_vertices(model) == 2);
  EXPECT(bsp_model_s(model) == 1.0);

  bsp_spectrum* spec = NULL;
  EXPECT(bsp_spectrum_compute(model, 2, 2, &spec) == BSP_OK);
  EXPECT(bsp_spectrum_size(spec) == 8);
  EXPECT(bsp_spectrum_total_multiplicity(spec) == 8);
  bsp_record rec;
  EXPECT(bsp_spectrum_get(spec, 1, &rec) == BSP_OK);
  EXPECT(rec.label == BSP_LABEL_ROOT && rec.eigenvalue == -4.0);
  EXPECT(bsp_spectrum_get(spec, 7, &rec) == BSP_OK);
  EXPECT(rec.generation == 2 && rec.eigenvalue == -74.0);
  EXPECT(strcmp(bsp_spectrum_exact(spec, 7), "-74") == 0);
  EXPECT(bsp_spectrum_get(spec, 8, &rec) == BSP_E_INVALID_ARGUMENT);
  EXPECT(bsp_spectrum_path_id(spec, 8) == NULL);
  bsp_spectrum_free(spec);

  int passed = 0;
  double dev = 1;
  EXPECT(bsp_verify(model, 4, 1e-8, &passed, &dev) == BSP_OK);
  EXPECT(passed == 1 && dev < 1e-8);

  bsp_run_options ro;
  bsp_run_options_init(&ro);
  ro.command = "ck-check";
  ro.depth = 4;
  char* text = NULL;
  int verdict = 0;
  EXPECT(bsp_run(model, &ro, &text, &verdict) == BSP_OK);
  EXPECT(verdict == 1 && text && strstr(text, "depth,paths_checked,passed,witness"));
  bsp_string_free(text);

  ro.command = "spectrum";
  ro.depth = 0;
  EXPECT(bsp_run(model, &ro, &text, &verdict) == BSP_E_INVALID_ARGUMENT);
  EXPECT(text == NULL && strlen(bsp_last_error()) > 0);
  ro.command = "nope";
  EXPECT(bsp_run(model, &ro, &text, &verdict) == BSP_E_INVALID_ARGUMENT);
  bsp_model_free(model);

  EXPECT(bsp_model_from_preset("nope", NULL, &model) == BSP_E_INVALID_ARGUMENT);
  EXPECT(model == NULL);
  EXPECT(bsp_model_from_json("{\"matrix\": [[1, 0], [0, 1]]}", NULL, &model) == BSP_E_NOT_PRIMITIVE);
  EXPECT(bsp_model_from_json("{\"matrix\": [[1]]}", NULL, &model) == BSP_E_HYPOTHESIS);
  EXPECT(bsp_model_from_json("[", NULL, &model) == BSP_E_PARSE);
  EXPECT(bsp_model_from_matrix_file("/nonexistent.json", NULL, &model) == BSP_E_IO);
  mo.backend = "quadratic:4";
  EXPECT(bsp_model_from_preset("fibonacci", &mo, &model) != BSP_OK);

  EXPECT(bsp_model_from_json("{\"matrix\": [[1, 1], [1, 0]], \"backend\": \"quadratic:5\"}", NULL, &model) == BSP_OK);
  EXPECT(bsp_verify(model, 3, 0, &passed, NULL) == BSP_OK && passed == 1);
  bsp_model_free(model);

  EXPECT(bsp_presets_report("csv", &text) == BSP_OK);
  EXPECT(strstr(text, "penrose") != NULL);
  bsp_string_free(text);
  EXPECT(bsp_presets_report("xml", &text) == BSP_E_INVALID_ARGUMENT);
  EXPECT(strcmp(bsp_status_name(BSP_OK), "ok") == 0);
  EXPECT(strlen(bsp_version()) > 0);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}

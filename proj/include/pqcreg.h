/*
 * Copyright 2026 The pqcreg developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the pqcreg shared library.
 *
 * All functions return a pqcreg_status; on any non-OK status an
 * explanatory message is available from pqcreg_last_error() until the
 * next call on the same thread. Objects are opaque handles owned by the
 * caller and released with their matching _free function. Strings
 * returned through char** outputs are heap-allocated and released with
 * pqcreg_string_free().
 *
 * The run entry points take a JSON configuration document (the same
 * schema the command-line tool reads; a run manifest is accepted too)
 * and return the run's manifest/result document as JSON. workers <= 0
 * selects an automatic worker count.
 */

#ifndef PQCREG_H
#define PQCREG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqcreg_status {
    PQCREG_OK = 0,
    PQCREG_ERR_INVALID_ARG = 1,
    PQCREG_ERR_CONFIG = 2,
    PQCREG_ERR_COMPUTE = 3,
    PQCREG_ERR_IO = 4,
    PQCREG_ERR_CAPACITY = 5,
    PQCREG_ERR_INTERNAL = 6
} pqcreg_status;

typedef struct pqcreg_dataset pqcreg_dataset;
typedef struct pqcreg_circuit pqcreg_circuit;

const char *pqcreg_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char *pqcreg_last_error(void);

/* -- datasets ---------------------------------------------------------- */

pqcreg_status pqcreg_dataset_load(const char *path, const char *target_column,
                                  pqcreg_dataset **out);

/* kind: "cosine", "linear", or "wide-gaussian". */
pqcreg_status pqcreg_dataset_synth(const char *kind, size_t rows,
                                   size_t features, uint64_t seed,
                                   pqcreg_dataset **out);

pqcreg_status pqcreg_dataset_save(const pqcreg_dataset *dataset,
                                  const char *path);

size_t pqcreg_dataset_rows(const pqcreg_dataset *dataset);
size_t pqcreg_dataset_features(const pqcreg_dataset *dataset);

void pqcreg_dataset_free(pqcreg_dataset *dataset);

/* -- circuits ---------------------------------------------------------- */

pqcreg_status pqcreg_circuit_build(const char *encoder, const char *ansatz,
                                   int n_qubits, int rud, int ansatz_layers,
                                   int redundancy, pqcreg_circuit **out);

int64_t pqcreg_circuit_param_count(const pqcreg_circuit *circuit);
int pqcreg_circuit_feature_count(const pqcreg_circuit *circuit);

/* Bind parameters and features, simulate, and return <Z_0> in [-1, 1]. */
pqcreg_status pqcreg_circuit_evaluate(const pqcreg_circuit *circuit,
                                      const double *theta, size_t theta_len,
                                      const double *x, size_t x_len,
                                      double *out_value);

/* Textual gate listing, depth, and parameter count for a circuit. */
pqcreg_status pqcreg_circuit_describe(const char *encoder, const char *ansatz,
                                      int n_qubits, int rud,
                                      int ansatz_layers, int redundancy,
                                      char **out_text);

void pqcreg_circuit_free(pqcreg_circuit *circuit);

/* -- runs -------------------------------------------------------------- */

pqcreg_status pqcreg_run_train(const char *config_json, int workers,
                               char **out_manifest_json);

pqcreg_status pqcreg_run_grid(const char *config_json, int workers,
                              char **out_result_json);

pqcreg_status pqcreg_run_learning_curve(const char *config_json, int workers,
                                        char **out_result_json);

void pqcreg_string_free(char *text);

#ifdef __cplusplus
}
#endif

#endif /* PQCREG_H */

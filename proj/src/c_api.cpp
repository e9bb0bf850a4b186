// Copyright 2026 The pqcreg developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqcreg.h"

#include "pqcreg/circuits.hpp"
#include "pqcreg/data.hpp"
#include "pqcreg/errors.hpp"
#include "pqcreg/runner.hpp"
#include "pqcreg/version.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>

struct pqcreg_dataset {
    pqcreg::Dataset data;
};

struct pqcreg_circuit {
    pqcreg::CircuitSpec spec;
    pqcreg::CircuitTemplate tmpl;
};

namespace {

thread_local std::string g_last_error = "no error";

pqcreg_status status_from(pqcreg::ErrorKind kind) {
    using pqcreg::ErrorKind;
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return PQCREG_ERR_INVALID_ARG;
    case ErrorKind::Capacity:
        return PQCREG_ERR_CAPACITY;
    case ErrorKind::Config:
        return PQCREG_ERR_CONFIG;
    case ErrorKind::Compute:
        return PQCREG_ERR_COMPUTE;
    case ErrorKind::Io:
        return PQCREG_ERR_IO;
    }
    return PQCREG_ERR_INTERNAL;
}

/// Run the body, translating exceptions into status codes and the
/// thread-local error message.
template <typename Body> pqcreg_status guarded(Body &&body) {
    try {
        body();
        return PQCREG_OK;
    } catch (const pqcreg::Error &e) {
        g_last_error = e.what();
        return status_from(e.kind());
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return PQCREG_ERR_INTERNAL;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return PQCREG_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return PQCREG_ERR_INTERNAL;
    }
}

pqcreg_status require(bool ok, const char *message) {
    if (!ok) {
        g_last_error = message;
        return PQCREG_ERR_INVALID_ARG;
    }
    return PQCREG_OK;
}

char *dup_string(const std::string &text) {
    char *out = static_cast<char *>(std::malloc(text.size() + 1));
    if (out != nullptr) {
        std::memcpy(out, text.c_str(), text.size() + 1);
    }
    return out;
}

pqcreg_status run_command(const char *config_json, int workers,
                          char **out_json,
                          nlohmann::json (*command)(const pqcreg::RunConfig &,
                                                    int)) {
    if (auto st = require(config_json && out_json,
                          "config_json and output pointer must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    *out_json = nullptr;
    return guarded([&] {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::exception &e) {
            throw pqcreg::Error(pqcreg::ErrorKind::Config,
                                std::string("config is not valid JSON: ") +
                                    e.what());
        }
        if (doc.is_object() && doc.contains("config") &&
            doc.at("config").is_object()) {
            doc = doc.at("config"); // accept a manifest as a config
        }
        const auto config = pqcreg::parse_config(doc);
        const auto result = command(config, workers);
        *out_json = dup_string(result.dump(2));
        if (*out_json == nullptr) {
            throw std::bad_alloc();
        }
    });
}

} // namespace

extern "C" {

const char *pqcreg_version(void) { return pqcreg::kVersion; }

const char *pqcreg_last_error(void) { return g_last_error.c_str(); }

pqcreg_status pqcreg_dataset_load(const char *path, const char *target_column,
                                  pqcreg_dataset **out) {
    if (auto st = require(path && target_column && out,
                          "path, target_column and out must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<pqcreg_dataset>();
        handle->data = pqcreg::load_table(path, target_column);
        *out = handle.release();
    });
}

pqcreg_status pqcreg_dataset_synth(const char *kind, size_t rows,
                                   size_t features, uint64_t seed,
                                   pqcreg_dataset **out) {
    if (auto st = require(kind && out, "kind and out must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<pqcreg_dataset>();
        handle->data = pqcreg::synth_dataset(
            pqcreg::synth_kind_from_string(kind), rows, features, seed);
        *out = handle.release();
    });
}

pqcreg_status pqcreg_dataset_save(const pqcreg_dataset *dataset,
                                  const char *path) {
    if (auto st = require(dataset && path,
                          "dataset and path must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    return guarded([&] { pqcreg::save_table(dataset->data, path); });
}

size_t pqcreg_dataset_rows(const pqcreg_dataset *dataset) {
    return dataset ? dataset->data.n_rows : 0;
}

size_t pqcreg_dataset_features(const pqcreg_dataset *dataset) {
    return dataset ? dataset->data.n_cols : 0;
}

void pqcreg_dataset_free(pqcreg_dataset *dataset) { delete dataset; }

pqcreg_status pqcreg_circuit_build(const char *encoder, const char *ansatz,
                                   int n_qubits, int rud, int ansatz_layers,
                                   int redundancy, pqcreg_circuit **out) {
    if (auto st = require(encoder && ansatz && out,
                          "encoder, ansatz and out must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<pqcreg_circuit>();
        handle->spec.encoder = pqcreg::EncoderSpec::parse(encoder);
        handle->spec.ansatz = pqcreg::AnsatzSpec::parse(ansatz);
        handle->spec.n_qubits = n_qubits;
        handle->spec.rud = rud;
        handle->spec.ansatz_layers = ansatz_layers;
        handle->spec.redundancy = redundancy;
        handle->tmpl = pqcreg::assemble_pqc(handle->spec);
        *out = handle.release();
    });
}

int64_t pqcreg_circuit_param_count(const pqcreg_circuit *circuit) {
    return circuit ? circuit->tmpl.total_params : -1;
}

int pqcreg_circuit_feature_count(const pqcreg_circuit *circuit) {
    return circuit ? circuit->tmpl.n_features : -1;
}

pqcreg_status pqcreg_circuit_evaluate(const pqcreg_circuit *circuit,
                                      const double *theta, size_t theta_len,
                                      const double *x, size_t x_len,
                                      double *out_value) {
    if (auto st = require(circuit && out_value && (theta || theta_len == 0) &&
                              (x || x_len == 0),
                          "circuit, buffers and out_value must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    return guarded([&] {
        *out_value = pqcreg::evaluate(circuit->tmpl,
                                      std::span<const double>(theta, theta_len),
                                      std::span<const double>(x, x_len));
    });
}

pqcreg_status pqcreg_circuit_describe(const char *encoder, const char *ansatz,
                                      int n_qubits, int rud,
                                      int ansatz_layers, int redundancy,
                                      char **out_text) {
    if (auto st = require(encoder && ansatz && out_text,
                          "encoder, ansatz and out_text must not be NULL");
        st != PQCREG_OK) {
        return st;
    }
    *out_text = nullptr;
    return guarded([&] {
        const std::string text = pqcreg::describe_from_names(
            encoder, ansatz, n_qubits, rud, ansatz_layers, redundancy);
        *out_text = dup_string(text);
        if (*out_text == nullptr) {
            throw std::bad_alloc();
        }
    });
}

void pqcreg_circuit_free(pqcreg_circuit *circuit) { delete circuit; }

pqcreg_status pqcreg_run_train(const char *config_json, int workers,
                               char **out_manifest_json) {
    return run_command(config_json, workers, out_manifest_json,
                       &pqcreg::run_train);
}

pqcreg_status pqcreg_run_grid(const char *config_json, int workers,
                              char **out_result_json) {
    return run_command(config_json, workers, out_result_json,
                       &pqcreg::run_grid);
}

pqcreg_status pqcreg_run_learning_curve(const char *config_json, int workers,
                                        char **out_result_json) {
    return run_command(config_json, workers, out_result_json,
                       &pqcreg::run_learning_curve);
}

void pqcreg_string_free(char *text) { std::free(text); }

} // extern "C"

// Copyright 2026 The qnd Authors
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

#ifndef QND_IO_HPP
#define QND_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qnd/channel.hpp"
#include "qnd/states.hpp"

// JSON files, schema "qnd/1". Complex numbers are [re, im] pairs and matrices
// are arrays of rows:
//
//   instrument:  {"schema": "qnd/1", "id": "...", "dim_in": 2, "dim_out": 2,
//                 "outcomes": [{"label": "0", "kraus": [[[[re, im], ...], ...], ...]}]}
//   observable:  {"schema": "qnd/1", "eigenvalues": [...], "projectors": [matrix, ...]}
//            or  {"schema": "qnd/1", "eigenvalues": [...], "vectors": [[[re, im], ...], ...]}
//
// "id" and an observable's "labels" are optional.
namespace qnd {

inline constexpr const char* kSchema = "qnd/1";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

QuantumInstrument parse_instrument(const nlohmann::json& j);
QuantumInstrument load_instrument(const std::filesystem::path& path);
nlohmann::json instrument_to_json(const QuantumInstrument& inst, const std::string& id = "");
void save_instrument(const QuantumInstrument& inst, const std::filesystem::path& path,
                     const std::string& id = "");

Observable parse_observable(const nlohmann::json& j);
Observable load_observable(const std::filesystem::path& path);
nlohmann::json observable_to_json(const Observable& obs);
void save_observable(const Observable& obs, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& field);

/// Reads and parses a JSON document; syntax errors carry line and column.
nlohmann::json read_json(const std::filesystem::path& path);

/// "%.17g"
std::string format_double(double v);

}  // namespace qnd

#endif  // QND_IO_HPP

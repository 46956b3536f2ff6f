// Copyright 2026 The qprep Authors
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

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qprep/gates.hpp"
#include "qprep/state_prep.hpp"
#include "qprep/statevector.hpp"

namespace qprep::io {

/** Filesystem failures (distinct from parse and computation errors, so
 *  callers can map them to their own exit code). */
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCircuitFormat = "qprep-circuit-v1";
inline constexpr const char* kStateCsvFormat = "qprep-state-csv-v1";
inline constexpr const char* kStateJsonFormat = "qprep-state-v1";
inline constexpr const char* kAngleFormat = "qprep-angles-v1";
inline constexpr const char* kReportFormat = "qprep-report-v1";

/** Shortest text that parses back to exactly the same double (17
 *  significant digits via %.17g). */
std::string format_real(double value);

/**
 * Line-oriented circuit text. Reals carry 17 significant digits, so
 * to_text and circuit_from_text round-trip angles bit-exactly:
 *
 *   # qprep-circuit-v1
 *   qubits=3
 *   RY targets=0 angles=0.78539816339744828
 *   MRY targets=1 controls=0 angles=0.1,0.2
 *   CNOT targets=1 controls=0
 *   ORACLE marked=3,5
 *   H targets=2
 *   QFT
 *   IQFT
 */
std::string to_text(const sim::Circuit& circuit);
sim::Circuit circuit_from_text(const std::string& text);

/** CSV rows index,bits,re,im,prob with a format-version header comment;
 *  bits is the basis label with qubit 0 first (most significant). */
std::string to_csv(const sim::Statevector& state);

/** JSON document with format tag, qubit order marker, and per-index
 *  amplitude records; reals at 17 significant digits. */
std::string to_json_text(const sim::Statevector& state);

/** Basis label of index i, qubit 0 first. */
std::string bit_label(std::uint64_t index, int num_qubits);

/** Angle table as JSON text with reals at 17 significant digits. Parses
 *  back via prep::angle_table_from_json losslessly. */
std::string angle_table_to_json_text(const prep::AngleTable& table);

/** Writes content to path via a temp file + atomic rename; throws
 *  IoError on failure. */
void write_file_atomic(const std::string& path, const std::string& content);

/** Whole file as a string; throws IoError on failure. */
std::string read_file(const std::string& path);

}  // namespace qprep::io

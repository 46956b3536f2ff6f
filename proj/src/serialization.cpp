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

#include "qprep/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qprep::io {

namespace {

double parse_real(const std::string& token, const char* what) {
  if (token.empty()) {
    throw std::invalid_argument(std::string("empty ") + what);
  }
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " +
                                token);
  }
  return value;
}

long long parse_int(const std::string& token, const char* what) {
  if (token.empty()) {
    throw std::invalid_argument(std::string("empty ") + what);
  }
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size()) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " +
                                token);
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  return out;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += format_real(values[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_indices(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string bit_label(std::uint64_t index, int num_qubits) {
  std::string bits(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if (sim::Statevector::bit_of(index, q, num_qubits)) {
      bits[static_cast<std::size_t>(q)] = '1';
    }
  }
  return bits;
}

std::string to_text(const sim::Circuit& circuit) {
  sim::validate_circuit(circuit);
  std::string out;
  out += "# ";
  out += kCircuitFormat;
  out += "\n";
  out += "qubits=" + std::to_string(circuit.num_qubits) + "\n";
  for (const sim::Gate& g : circuit.gates) {
    out += sim::gate_kind_name(g.kind);
    switch (g.kind) {
      case sim::GateKind::H:
        out += " targets=" + std::to_string(g.target);
        break;
      case sim::GateKind::Ry:
        out += " targets=" + std::to_string(g.target);
        out += " angles=" + join_reals(g.angles);
        break;
      case sim::GateKind::Cnot:
        out += " targets=" + std::to_string(g.target);
        out += " controls=" + join_ints(g.controls);
        break;
      case sim::GateKind::MultiplexedRy:
        out += " targets=" + std::to_string(g.target);
        if (!g.controls.empty()) {
          out += " controls=" + join_ints(g.controls);
        }
        out += " angles=" + join_reals(g.angles);
        break;
      case sim::GateKind::PhaseOracle:
        out += " marked=" + join_indices(g.marked);
        break;
      case sim::GateKind::QftBlock:
      case sim::GateKind::InverseQftBlock:
        break;
    }
    out += "\n";
  }
  return out;
}

sim::Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  bool qubits_seen = false;
  sim::Circuit circuit;

  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != std::string("# ") + kCircuitFormat) {
        throw std::invalid_argument(
            "circuit text must start with the format header");
      }
      header_seen = true;
      continue;
    }
    if (line[0] == '#') continue;
    if (!qubits_seen) {
      if (line.rfind("qubits=", 0) != 0) {
        throw std::invalid_argument("expected qubits=N after the header");
      }
      circuit.num_qubits =
          static_cast<int>(parse_int(line.substr(7), "qubit count"));
      qubits_seen = true;
      continue;
    }

    std::istringstream tokens(line);
    std::string mnemonic;
    tokens >> mnemonic;
    sim::Gate gate;
    if (mnemonic == "H") {
      gate.kind = sim::GateKind::H;
    } else if (mnemonic == "RY") {
      gate.kind = sim::GateKind::Ry;
    } else if (mnemonic == "CNOT") {
      gate.kind = sim::GateKind::Cnot;
    } else if (mnemonic == "MRY") {
      gate.kind = sim::GateKind::MultiplexedRy;
    } else if (mnemonic == "ORACLE") {
      gate.kind = sim::GateKind::PhaseOracle;
    } else if (mnemonic == "QFT") {
      gate.kind = sim::GateKind::QftBlock;
    } else if (mnemonic == "IQFT") {
      gate.kind = sim::GateKind::InverseQftBlock;
    } else {
      throw std::invalid_argument("unknown gate mnemonic: " + mnemonic);
    }

    std::string field;
    while (tokens >> field) {
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("malformed gate field: " + field);
      }
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "targets") {
        gate.target = static_cast<int>(parse_int(value, "target"));
      } else if (key == "controls") {
        for (const std::string& tok : split(value, ',')) {
          gate.controls.push_back(
              static_cast<int>(parse_int(tok, "control")));
        }
      } else if (key == "angles") {
        for (const std::string& tok : split(value, ',')) {
          gate.angles.push_back(parse_real(tok, "angle"));
        }
      } else if (key == "marked") {
        for (const std::string& tok : split(value, ',')) {
          const long long idx = parse_int(tok, "marked index");
          if (idx < 0) {
            throw std::invalid_argument("marked indices must be nonnegative");
          }
          gate.marked.push_back(static_cast<std::uint64_t>(idx));
        }
      } else {
        throw std::invalid_argument("unknown gate field: " + key);
      }
    }
    circuit.gates.push_back(std::move(gate));
  }
  if (!header_seen) {
    throw std::invalid_argument("circuit text must start with the format header");
  }
  if (!qubits_seen) {
    throw std::invalid_argument("circuit text is missing the qubits line");
  }
  sim::validate_circuit(circuit);
  return circuit;
}

std::string to_csv(const sim::Statevector& state) {
  std::string out;
  out += "# ";
  out += kStateCsvFormat;
  out += "\n";
  out += "index,bits,re,im,prob\n";
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const sim::Complex a = state[i];
    out += std::to_string(i);
    out += ',';
    out += bit_label(i, state.num_qubits());
    out += ',';
    out += format_real(a.real());
    out += ',';
    out += format_real(a.imag());
    out += ',';
    out += format_real(std::norm(a));
    out += '\n';
  }
  return out;
}

std::string to_json_text(const sim::Statevector& state) {
  std::string out;
  out += "{\n";
  out += "  \"format\": \"";
  out += kStateJsonFormat;
  out += "\",\n";
  out += "  \"num_qubits\": " + std::to_string(state.num_qubits()) + ",\n";
  out += "  \"qubit_order\": \"q0-msb\",\n";
  out += "  \"amplitudes\": [\n";
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const sim::Complex a = state[i];
    out += "    {\"index\": " + std::to_string(i);
    out += ", \"bits\": \"" + bit_label(i, state.num_qubits()) + "\"";
    out += ", \"re\": " + format_real(a.real());
    out += ", \"im\": " + format_real(a.imag());
    out += ", \"prob\": " + format_real(std::norm(a));
    out += (i + 1 < state.dimension()) ? "},\n" : "}\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

std::string angle_table_to_json_text(const prep::AngleTable& table) {
  prep::validate_angle_table(table);
  std::string out;
  out += "{\n";
  out += "  \"format\": \"";
  out += kAngleFormat;
  out += "\",\n";
  out += "  \"num_qubits\": " + std::to_string(table.num_qubits()) + ",\n";
  out += "  \"levels\": {\n";
  for (std::size_t m = 0; m < table.levels.size(); ++m) {
    out += "    \"" + std::to_string(m) + "\": [";
    for (std::size_t i = 0; i < table.levels[m].size(); ++i) {
      if (i) out += ", ";
      out += format_real(table.levels[m][i]);
    }
    out += (m + 1 < table.levels.size()) ? "],\n" : "]\n";
  }
  out += "  }\n";
  out += "}\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp + " for writing");
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw IoError("short write to " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename " + tmp + " to " + path + ": " +
                  ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path + " for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw IoError("error while reading " + path);
  }
  return buffer.str();
}

}  // namespace qprep::io

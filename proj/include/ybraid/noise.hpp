#pragma once

// Stochastic Pauli noise: depolarizing insertions after gates, readout bit
// flips, and Z flips on idling qubits during mid-circuit measurement windows.
// All draws come from dedicated RNG streams so a zero-noise run is
// shot-for-shot identical to a noiseless one.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/pauli.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"

namespace ybraid {

struct NoiseModel {
  double p1 = 0;      // per 1-qubit gate depolarizing probability
  double p2 = 0;      // per 2+-qubit gate depolarizing probability
  double p_ro = 0;    // readout flip probability
  double p_idle = 0;  // per idle qubit Z-flip probability per measurement window

  bool enabled() const { return p1 > 0 || p2 > 0 || p_ro > 0 || p_idle > 0; }

  void validate() const {
    for (double p : {p1, p2, p_ro, p_idle})
      if (p < 0 || p > 1) throw std::invalid_argument("noise probability out of [0,1]");
  }

  // Median calibration figures of the targeted device class.
  static NoiseModel defaults() { return {2.862e-4, 3.671e-3, 2.417e-2, 1e-3}; }

  // key=value lines; '#' starts a comment; unknown keys rejected.
  static NoiseModel from_stream(std::istream& in) {
    NoiseModel m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::string trimmed;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
      if (trimmed.empty()) continue;
      auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("noise config line " + std::to_string(lineno) +
                                 ": expected key=value");
      std::string key = trimmed.substr(0, eq);
      double val = std::stod(trimmed.substr(eq + 1));
      if (key == "p1") m.p1 = val;
      else if (key == "p2") m.p2 = val;
      else if (key == "p_ro") m.p_ro = val;
      else if (key == "p_idle") m.p_idle = val;
      else throw std::runtime_error("noise config line " + std::to_string(lineno) +
                                    ": unknown key " + key);
    }
    m.validate();
    return m;
  }

  static NoiseModel from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open noise config: " + path);
    return from_stream(in);
  }
};

// Uniform random non-identity Pauli on the gate's qubits with probability
// p1 (single qubit) or p2 (two or more).
inline void apply_gate_noise(StateVector& st, const std::vector<int>& qubits,
                             const NoiseModel& m, RngStream& rng) {
  const double p = qubits.size() >= 2 ? m.p2 : m.p1;
  if (p <= 0 || !rng.bernoulli(p)) return;
  const int k = int(qubits.size());
  const std::uint64_t n_paulis = (std::uint64_t(1) << (2 * k)) - 1;
  std::uint64_t pick = 1 + rng.next_below(n_paulis);  // skip identity
  std::map<int, char> letters;
  static const char kLetters[] = "IXYZ";
  for (int i = 0; i < k; ++i) {
    int l = int((pick >> (2 * i)) & 3);
    if (l != 0) letters[qubits[i]] = kLetters[l];
  }
  apply_pauli(st, PauliString::make(st.n, letters));
}

// Flip a recorded eigenvalue with probability p_ro (classical readout error;
// the collapsed state is untouched).
inline int flip_readout(int eigenvalue, double p_ro, RngStream& rng) {
  if (p_ro > 0 && rng.bernoulli(p_ro)) return -eigenvalue;
  return eigenvalue;
}

// Z flip per idle qubit during a measurement window.
inline void apply_idle_noise(StateVector& st, const std::vector<int>& idle,
                             const NoiseModel& m, RngStream& rng) {
  if (m.p_idle <= 0) return;
  for (int q : idle)
    if (rng.bernoulli(m.p_idle)) apply_pauli(st, PauliString::make(st.n, {{q, 'Z'}}));
}

}  // namespace ybraid

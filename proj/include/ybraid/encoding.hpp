#pragma once

// Logical encodings: the 4-qubit single-logical-qubit code (Y1) and the
// 10-qubit two-logical-qubit code (Y2). Basis states are built analytically
// from frozen amplitude tables; gauge operators and calibrated logical
// observables are fixtures verified by the test suite.
//
// Conventions:
//   - qubit 0 is the least significant bit of the statevector index
//   - ket strings used in comments read left to right as qubit 0, 1, ...
//   - logical pair index for Y2 is bQ0 + 2*bQ1

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/pauli.hpp"
#include "ybraid/statevector.hpp"

namespace ybraid {

enum class EncodingId { Y1, Y2 };

enum class LogicalLabel { Zero, One, Plus, IPlus };

inline LogicalLabel parse_label(const std::string& s) {
  if (s == "0") return LogicalLabel::Zero;
  if (s == "1") return LogicalLabel::One;
  if (s == "+") return LogicalLabel::Plus;
  if (s == "i+" || s == "+i") return LogicalLabel::IPlus;
  throw std::invalid_argument("unknown logical label: " + s);
}

inline std::string label_str(LogicalLabel l) {
  switch (l) {
    case LogicalLabel::Zero: return "0";
    case LogicalLabel::One: return "1";
    case LogicalLabel::Plus: return "+";
    case LogicalLabel::IPlus: return "i+";
  }
  return "?";
}

// Comma separated label list, e.g. "+" or "0,1".
inline std::vector<LogicalLabel> parse_labels(const std::string& s) {
  std::vector<LogicalLabel> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_label(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

// Amplitudes (alpha, beta) of a label state alpha|0>_L + beta|1>_L.
inline std::pair<cplx, cplx> label_coeffs(LogicalLabel l) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (l) {
    case LogicalLabel::Zero: return {1.0, 0.0};
    case LogicalLabel::One: return {0.0, 1.0};
    case LogicalLabel::Plus: return {r, r};
    case LogicalLabel::IPlus: return {r, cplx(0, r)};
  }
  throw std::invalid_argument("bad label");
}

inline constexpr int physical_n(EncodingId id) { return id == EncodingId::Y1 ? 4 : 10; }
inline constexpr int logical_n(EncodingId id) { return id == EncodingId::Y1 ? 1 : 2; }

namespace detail {

// |0>_L for Y1: (|0101> + |1010>)/2 + i(|0110> + |1001>)/2
inline StateVector y1_zero() {
  StateVector st(4);
  st.amps[0] = 0;
  st.amps[10] = 0.5;
  st.amps[5] = 0.5;
  st.amps[6] = cplx(0, 0.5);
  st.amps[9] = cplx(0, 0.5);
  return st;
}

// |0>_L for the Y2 six-qubit block (qubits 0..5):
// (sqrt2/4)[|010101>+|010110>+|101001>+|101010>
//           + i(|011001>+|011010>+|100101>+|100110>)]
inline StateVector y2_q0_zero() {
  StateVector st(6);
  st.amps[0] = 0;
  const double c = std::sqrt(2.0) / 4.0;
  for (int idx : {42, 26, 37, 21}) st.amps[idx] = c;
  for (int idx : {38, 22, 41, 25}) st.amps[idx] = cplx(0, c);
  return st;
}

// |0>_L for the Y2 four-qubit block (local qubits 0..3 = physical 6..9):
// (sqrt2/4)[(1+i)(|1100>+|0011>) + (1-i)(|1010>+|0101>)]
inline StateVector y2_q1_zero() {
  StateVector st(4);
  st.amps[0] = 0;
  const double c = std::sqrt(2.0) / 4.0;
  st.amps[3] = cplx(c, c);
  st.amps[12] = cplx(c, c);
  st.amps[5] = cplx(c, -c);
  st.amps[10] = cplx(c, -c);
  return st;
}

// Operator mapping |0>_L -> |1>_L within a block (local qubit indices).
inline PauliString block_flip(EncodingId id, int block) {
  if (id == EncodingId::Y1) return PauliString::make(4, {{2, 'Y'}, {3, 'Z'}});
  if (block == 0) return PauliString::make(6, {{2, 'X'}, {5, 'Z'}});
  return PauliString::make(4, {{0, 'Y'}});
}

inline StateVector block_zero(EncodingId id, int block) {
  if (id == EncodingId::Y1) return y1_zero();
  return block == 0 ? y2_q0_zero() : y2_q1_zero();
}

inline StateVector block_state(EncodingId id, int block, LogicalLabel l) {
  StateVector zero = block_zero(id, block);
  StateVector one = zero;
  apply_pauli(one, block_flip(id, block));
  auto [a, b] = label_coeffs(l);
  StateVector out = zero;
  for (std::size_t i = 0; i < out.amps.size(); ++i)
    out.amps[i] = a * zero.amps[i] + b * one.amps[i];
  return out;
}

// b occupies the qubits above a.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.n + b.n);
  for (std::size_t j = 0; j < b.amps.size(); ++j)
    for (std::size_t i = 0; i < a.amps.size(); ++i)
      out.amps[(j << a.n) | i] = a.amps[i] * b.amps[j];
  return out;
}

}  // namespace detail

inline StateVector build_logical_state(EncodingId id, const std::vector<LogicalLabel>& labels) {
  if (int(labels.size()) != logical_n(id))
    throw std::invalid_argument("label count does not match encoding");
  if (id == EncodingId::Y1) return detail::block_state(id, 0, labels[0]);
  return detail::tensor(detail::block_state(id, 0, labels[0]),
                        detail::block_state(id, 1, labels[1]));
}

// All computational-label basis states, index = sum_k bit_k * 2^k over
// logical qubits (Y1: [|0>,|1>]; Y2: [|00>,|10>,|01>,|11>] as (Q1,Q0) bits,
// i.e. index = bQ0 + 2*bQ1).
inline std::vector<StateVector> logical_basis(EncodingId id) {
  std::vector<StateVector> out;
  const int k = logical_n(id);
  for (int idx = 0; idx < (1 << k); ++idx) {
    std::vector<LogicalLabel> labels;
    for (int q = 0; q < k; ++q)
      labels.push_back((idx >> q) & 1 ? LogicalLabel::One : LogicalLabel::Zero);
    out.push_back(build_logical_state(id, labels));
  }
  return out;
}

// Calibrated logical observables: signs fixed so that <Z> = +1 on |0>_L,
// <X> = +1 on |+>_L and <Y> = +1 on |i+>_L (verified in tests).
inline PauliString logical_observable(EncodingId id, int qubit, char axis) {
  if (qubit < 0 || qubit >= logical_n(id)) throw std::invalid_argument("bad logical qubit");
  if (id == EncodingId::Y1) {
    switch (axis) {
      case 'X': return PauliString::parse("+IIYZ");
      case 'Y': return PauliString::parse("+IIXI");
      case 'Z': return PauliString::parse("-IIZZ");
    }
  } else if (qubit == 0) {
    switch (axis) {
      case 'X': return PauliString::parse("+IIXIIZIIII");
      case 'Y': return PauliString::parse("-IIYZIZIIII");
      case 'Z': return PauliString::parse("-IIZZIIIIII");
    }
  } else {
    switch (axis) {
      case 'X': return PauliString::parse("+IIIIIIYIII");
      case 'Y': return PauliString::parse("+IIIIIIXIIZ");
      case 'Z': return PauliString::parse("-IIIIIIZIIZ");
    }
  }
  throw std::invalid_argument("bad axis");
}

struct GaugeOp {
  std::string name;
  PauliString op;
  // expected eigenvalue per computational basis label index, 0 = not fixed
  std::vector<int> expected;
};

inline const std::vector<GaugeOp>& gauge_ops(EncodingId id) {
  static const std::vector<GaugeOp> y1 = {
      {"W1", PauliString::parse("+ZIXY"), {-1, -1}},
      {"W2", PauliString::parse("+XYZI"), {-1, +1}},
      {"h", PauliString::parse("+ZZII"), {-1, -1}},
      {"n", PauliString::parse("+IIZZ"), {-1, +1}},
      // W3 = n h W2, reported for completeness, not an independent constraint
      {"W3", PauliString::parse("+YXIZ"), {-1, -1}},
  };
  static const std::vector<GaugeOp> y2 = {
      {"W1", PauliString::parse("+YXIZIIIIII"), {-1, -1, -1, -1}},
      {"W2", PauliString::parse("+ZIXYIIIIII"), {-1, -1, -1, -1}},
      {"W3", PauliString::parse("+IIIIIIIXYZ"), {-1, -1, -1, -1}},
      {"W4", PauliString::parse("+IIIIIIYZIX"), {-1, -1, -1, -1}},
      {"W5", PauliString::parse("+XYZIYYIIII"), {-1, -1, -1, -1}},
      {"hQ0", PauliString::parse("+ZZIIIIIIII"), {-1, -1, -1, -1}},
      {"hQ1", PauliString::parse("+IIIIIIIZZI"), {-1, -1, -1, -1}},
      {"hA", PauliString::parse("+IIIIZZIIII"), {-1, -1, -1, -1}},
      {"nQ0", PauliString::parse("+IIZZIIIIII"), {-1, +1, -1, +1}},
      {"nQ1", PauliString::parse("+IIIIIIZIIZ"), {-1, -1, +1, +1}},
  };
  return id == EncodingId::Y1 ? y1 : y2;
}

struct CodespaceEntry {
  std::string name;
  PauliString op;
  double expectation = 0;
  bool flagged = false;  // |expectation| differs from 1 by > 1e-9
};

inline std::vector<CodespaceEntry> check_codespace(const StateVector& st, EncodingId id) {
  if (st.n != physical_n(id)) throw std::invalid_argument("state size mismatch");
  std::vector<CodespaceEntry> out;
  for (const auto& g : gauge_ops(id)) {
    CodespaceEntry e;
    e.name = g.name;
    e.op = g.op;
    e.expectation = expectation(st, PauliSum(g.op));
    e.flagged = std::abs(std::abs(e.expectation) - 1.0) > 1e-9;
    out.push_back(e);
  }
  return out;
}

// Weight of the state inside the span of the logical basis states.
inline double codespace_weight(const StateVector& st, EncodingId id) {
  double w = 0;
  for (const auto& b : logical_basis(id)) w += std::norm(overlap(b, st));
  return w;
}

inline bool in_codespace(const StateVector& st, EncodingId id, double tol = 1e-9) {
  return codespace_weight(st, id) >= 1.0 - tol;
}

}  // namespace ybraid

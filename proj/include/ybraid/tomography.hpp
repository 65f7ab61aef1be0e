#pragma once

// Logical-basis tomography: expectation extraction (exact and shot-sampled),
// density-matrix reconstruction by linear inversion with PSD projection,
// state fidelity, and Choi-matrix process tomography over the canonical
// input set {0, 1, +, i+} per logical qubit.
//
// Logical matrix indexing: basis index = sum_k bit_k * 2^k (logical qubit 0
// is the least significant bit), so a two-qubit logical operator A on Q0 and
// B on Q1 has matrix kron(B, A).

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/encoding.hpp"
#include "ybraid/linalg.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"

namespace ybraid {

using DensityMatrix = CMat;
using ChoiMatrix = CMat;

// --- observable labels ------------------------------------------------------

// Pauli labels for k logical qubits; position 0 in the label string is
// logical qubit 0. k=1: I,X,Y,Z. k=2: II,XI,YI,...,ZZ (16 total).
inline std::vector<std::string> pauli_labels(int k) {
  static const char kLetters[] = "IXYZ";
  std::vector<std::string> out;
  for (int idx = 0; idx < (1 << (2 * k)); ++idx) {
    std::string s;
    for (int q = 0; q < k; ++q) s.push_back(kLetters[(idx >> (2 * q)) & 3]);
    out.push_back(s);
  }
  return out;
}

// dim x dim matrix of a logical Pauli label.
inline CMat label_matrix(const std::string& label) {
  std::vector<PauliLetter> ls;
  // reversed: logical qubit 0 is the least significant kron factor
  for (auto it = label.rbegin(); it != label.rend(); ++it) {
    switch (*it) {
      case 'I': ls.push_back(PauliLetter::I); break;
      case 'X': ls.push_back(PauliLetter::X); break;
      case 'Y': ls.push_back(PauliLetter::Y); break;
      case 'Z': ls.push_back(PauliLetter::Z); break;
      default: throw std::invalid_argument("bad pauli label");
    }
  }
  return pauli_kron(ls);
}

// Physical Pauli string measuring a logical label on an encoding (product of
// the calibrated per-qubit observables; factors act on disjoint qubits).
inline PauliString logical_label_string(EncodingId id, const std::string& label) {
  PauliString acc = PauliString::make(physical_n(id), {});
  for (int q = 0; q < int(label.size()); ++q) {
    if (label[q] == 'I') continue;
    acc = mul(acc, logical_observable(id, q, label[q]));
  }
  return acc;
}

// --- expectations -----------------------------------------------------------

struct ExpectationEntry {
  std::string label;
  double value = 0;
  double stderr_ = 0;  // 0 in exact mode
};

using ExpectationSet = std::vector<ExpectationEntry>;

// Exact logical expectations of all nontrivial Pauli labels.
inline ExpectationSet logical_expectations(const StateVector& st, EncodingId id) {
  ExpectationSet out;
  for (const auto& label : pauli_labels(logical_n(id))) {
    if (label.find_first_not_of('I') == std::string::npos) continue;
    double e = expectation(st, logical_label_string(id, label));
    out.push_back({label, e, 0.0});
  }
  return out;
}

// Binomial shot sampling of a known exact expectation, with optional readout
// flip probability. Statistically identical to measuring the observable shot
// by shot.
inline ExpectationEntry sample_expectation(const std::string& label, double exact,
                                           int shots, RngStream& rng,
                                           double p_ro = 0.0) {
  if (shots <= 0) throw std::invalid_argument("shots must be >= 1");
  long sum = 0;
  const double p_minus1 = 0.5 * (1.0 - exact);
  for (int s = 0; s < shots; ++s) {
    int eig = rng.next_double() < p_minus1 ? -1 : +1;
    if (p_ro > 0 && rng.bernoulli(p_ro)) eig = -eig;
    sum += eig;
  }
  double mean = double(sum) / shots;
  double se = std::sqrt(std::max(0.0, 1.0 - mean * mean) / shots);
  return {label, mean, se};
}

// --- reconstruction ---------------------------------------------------------

// Clip negative eigenvalues to zero and renormalize the trace.
inline CMat psd_project(const CMat& m, double trace_target) {
  auto eig = hermitian_eig(m);
  const int n = m.rows;
  CMat out(n, n);
  double tr = 0;
  std::vector<double> vals = eig.values;
  for (auto& v : vals) {
    if (v < 0) v = 0;
    tr += v;
  }
  if (tr < 1e-15) throw std::runtime_error("psd projection of a negative matrix");
  for (int k = 0; k < n; ++k) {
    double w = vals[k] * trace_target / tr;
    if (w == 0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out(r, c) += w * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
  }
  return out;
}

// Linear inversion rho = (1/dim) sum_P <P> P followed by PSD projection.
// Linear inversion from a complete Pauli expectation set. The PSD projection
// is skipped by the shot-based experiment pipeline: fidelities are linear in
// rho, so the raw inversion is the unbiased estimator, while eigenvalue
// clipping drags sampled fidelities systematically low.
inline DensityMatrix reconstruct(const ExpectationSet& exps, int k, bool project = true) {
  const int dim = 1 << k;
  CMat rho = CMat::identity(dim);
  std::map<std::string, double> by_label;
  for (const auto& e : exps) by_label[e.label] = e.value;
  for (const auto& label : pauli_labels(k)) {
    if (label.find_first_not_of('I') == std::string::npos) continue;
    auto it = by_label.find(label);
    if (it == by_label.end()) throw std::invalid_argument("incomplete Pauli basis: " + label);
    rho = rho + cplx(it->second, 0) * label_matrix(label);
  }
  rho = cplx(1.0 / dim, 0) * rho;
  return project ? psd_project(rho, 1.0) : rho;
}

inline DensityMatrix exact_logical_density(const StateVector& st, EncodingId id) {
  return reconstruct(logical_expectations(st, id), logical_n(id));
}

// --- fidelities -------------------------------------------------------------

// Normalized logical ket of a label tuple (logical qubit 0 = LSB).
inline std::vector<cplx> logical_ket(const std::vector<LogicalLabel>& labels) {
  const int k = int(labels.size());
  std::vector<cplx> v(std::size_t(1) << k);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    cplx amp = 1;
    for (int q = 0; q < k; ++q) {
      auto [a, b] = label_coeffs(labels[q]);
      amp *= (idx >> q) & 1 ? b : a;
    }
    v[idx] = amp;
  }
  return v;
}

inline double state_fidelity(const DensityMatrix& rho, const std::vector<cplx>& psi) {
  if (rho.rows != int(psi.size())) throw std::invalid_argument("dim mismatch");
  cplx acc = 0;
  for (int r = 0; r < rho.rows; ++r)
    for (int c = 0; c < rho.cols; ++c)
      acc += std::conj(psi[r]) * rho(r, c) * psi[c];
  if (std::abs(acc.imag()) > 1e-9) throw std::runtime_error("non-real fidelity");
  return acc.real();
}

// --- process tomography -----------------------------------------------------

// Coefficients expressing |a><b| (single qubit) in the canonical input
// density matrices rho_0, rho_1, rho_+, rho_i+ (that order).
inline std::array<cplx, 4> ketbra_coeffs(int a, int b) {
  if (a == 0 && b == 0) return {1, 0, 0, 0};
  if (a == 1 && b == 1) return {0, 1, 0, 0};
  if (a == 0 && b == 1)  // rho_+ + i rho_i+ - (1+i)/2 (rho_0 + rho_1)
    return {cplx(-0.5, -0.5), cplx(-0.5, -0.5), 1, cplx(0, 1)};
  return {cplx(-0.5, 0.5), cplx(-0.5, 0.5), 1, cplx(0, -1)};  // |1><0|
}

inline const std::vector<LogicalLabel>& canonical_labels() {
  static const std::vector<LogicalLabel> ls = {LogicalLabel::Zero, LogicalLabel::One,
                                               LogicalLabel::Plus, LogicalLabel::IPlus};
  return ls;
}

// All canonical input tuples for k logical qubits (4^k of them), indexed by
// base-4 digits with logical qubit 0 as the least significant digit.
inline std::vector<std::vector<LogicalLabel>> canonical_inputs(int k) {
  std::vector<std::vector<LogicalLabel>> out;
  for (int idx = 0; idx < (1 << (2 * k)); ++idx) {
    std::vector<LogicalLabel> tup;
    for (int q = 0; q < k; ++q) tup.push_back(canonical_labels()[(idx >> (2 * q)) & 3]);
    out.push_back(tup);
  }
  return out;
}

// Choi matrix C = sum_ab E(|a><b|) (x) |a><b|, trace normalized to dim.
// The runner maps a canonical input tuple to the output density matrix.
using GateRunner = std::function<DensityMatrix(const std::vector<LogicalLabel>&)>;

inline ChoiMatrix process_tomography(const GateRunner& runner, int k) {
  const int dim = 1 << k;
  std::vector<DensityMatrix> outs;
  for (const auto& tup : canonical_inputs(k)) outs.push_back(runner(tup));
  ChoiMatrix choi(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      // E(|a><b|) by multilinear expansion over per-qubit canonical inputs
      CMat eab(dim, dim);
      for (int idx = 0; idx < (1 << (2 * k)); ++idx) {
        cplx coeff = 1;
        for (int q = 0; q < k; ++q)
          coeff *= ketbra_coeffs((a >> q) & 1, (b >> q) & 1)[(idx >> (2 * q)) & 3];
        if (coeff == cplx(0, 0)) continue;
        eab = eab + coeff * outs[idx];
      }
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          choi(i * dim + a, j * dim + b) += eab(i, j);
    }
  double tr = choi.trace().real();
  if (std::abs(tr) < 1e-12) throw std::runtime_error("zero-trace Choi");
  return cplx(dim / tr, 0) * choi;
}

// Choi matrix of the unitary channel rho -> U rho U^dag, trace = dim.
inline ChoiMatrix ideal_choi(const CMat& u) {
  const int dim = u.rows;
  std::vector<cplx> v(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a) v[i * dim + a] = u(i, a);
  ChoiMatrix c(dim * dim, dim * dim);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t s = 0; s < v.size(); ++s) c(r, s) = v[r] * std::conj(v[s]);
  return c;
}

// F = <Phi_U| C/dim |Phi_U> with C trace-normalized to dim and Phi_U the
// normalized Choi vector of the ideal unitary. Equals 1 - 3p/4 for a
// single-qubit depolarizing channel of strength p against the identity.
inline double process_fidelity(const ChoiMatrix& choi, const CMat& ideal_u) {
  const int dim = ideal_u.rows;
  ChoiMatrix c = choi;
  double tr = c.trace().real();
  if (std::abs(tr - dim) > 1e-6) c = cplx(dim / tr, 0) * c;
  std::vector<cplx> phi(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a) phi[i * dim + a] = ideal_u(i, a) / std::sqrt(double(dim));
  cplx acc = 0;
  for (int r = 0; r < dim * dim; ++r)
    for (int s = 0; s < dim * dim; ++s)
      acc += std::conj(phi[r]) * c(r, s) * phi[s];
  return acc.real() / dim;
}

// Rank-1 top component of a Choi matrix, reshaped to the dim x dim operator
// it came from and rescaled to |det| = 1. Used to read a branch unitary off
// tomography data.
inline CMat choi_top_operator(const ChoiMatrix& choi) {
  const int d2 = choi.rows;
  const int dim = int(std::lround(std::sqrt(double(d2))));
  auto eig = hermitian_eig(choi);
  const int top = d2 - 1;
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a)
      m(i, a) = std::sqrt(std::max(0.0, eig.values[top])) * eig.vectors(i * dim + a, top);
  // rescale so |det m| = 1; determinant by Gaussian elimination
  cplx det = 1;
  {
    CMat g = m;
    for (int col = 0; col < dim; ++col) {
      int piv = col;
      for (int r = col + 1; r < dim; ++r)
        if (std::abs(g(r, col)) > std::abs(g(piv, col))) piv = r;
      if (std::abs(g(piv, col)) < 1e-12) { det = 0; break; }
      if (piv != col) {
        for (int c = 0; c < dim; ++c) std::swap(g(piv, c), g(col, c));
        det = -det;
      }
      det *= g(col, col);
      for (int r = col + 1; r < dim; ++r) {
        cplx f = g(r, col) / g(col, col);
        for (int c = col; c < dim; ++c) g(r, c) -= f * g(col, c);
      }
    }
  }
  double mag = std::abs(det);
  if (mag < 1e-12) throw std::runtime_error("branch operator is singular");
  return cplx(std::pow(mag, -1.0 / dim), 0) * m;
}

}  // namespace ybraid

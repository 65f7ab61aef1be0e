#pragma once

// Dense statevector engine: named gates, Pauli-string application, projective
// measurement of involutory PauliSum observables, inner products.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/pauli.hpp"
#include "ybraid/rng.hpp"

namespace ybraid {

constexpr double kZeroProbTol = 1e-12;

struct StateVector {
  int n = 0;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(int nq) : n(nq), amps(std::size_t(1) << nq, cplx(0, 0)) {
    if (nq < 0 || nq > 24) throw std::invalid_argument("qubit count out of range");
    amps[0] = 1.0;
  }

  std::size_t dim() const { return amps.size(); }

  double norm2() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
  }

  void normalize() {
    double nn = std::sqrt(norm2());
    if (nn < kZeroProbTol) throw std::runtime_error("normalizing null state");
    for (auto& a : amps) a /= nn;
  }
};

inline cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

// --- single-qubit and controlled gate application -------------------------

using Mat2 = std::array<cplx, 4>;  // row major [m00 m01; m10 m11]

namespace gates {
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline Mat2 H() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }
inline Mat2 X() { return {0, 1, 1, 0}; }
inline Mat2 Y() { return {0, cplx(0, -1), cplx(0, 1), 0}; }
inline Mat2 Z() { return {1, 0, 0, -1}; }
inline Mat2 S() { return {1, 0, 0, cplx(0, 1)}; }
inline Mat2 Sdg() { return {1, 0, 0, cplx(0, -1)}; }
inline Mat2 T() { return {1, 0, 0, std::polar(1.0, M_PI / 4)}; }
inline Mat2 Tdg() { return {1, 0, 0, std::polar(1.0, -M_PI / 4)}; }
inline Mat2 SX() {
  return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
}
inline Mat2 SXdg() {
  return {cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5), cplx(0.5, -0.5)};
}
inline Mat2 Rx(double t) {
  cplx c = std::cos(t / 2), s = cplx(0, -1) * std::sin(t / 2);
  return {c, s, s, c};
}
inline Mat2 Ry(double t) {
  double c = std::cos(t / 2), s = std::sin(t / 2);
  return {c, -s, s, c};
}
inline Mat2 Rz(double t) {
  return {std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2)};
}
}  // namespace gates

inline void apply_1q(StateVector& st, const Mat2& m, int q) {
  if (q < 0 || q >= st.n) throw std::out_of_range("qubit index");
  const std::size_t bit = std::size_t(1) << q;
  for (std::size_t i = 0; i < st.dim(); ++i) {
    if (i & bit) continue;
    cplx a0 = st.amps[i], a1 = st.amps[i | bit];
    st.amps[i] = m[0] * a0 + m[1] * a1;
    st.amps[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

// controlled-U, single control
inline void apply_c1q(StateVector& st, const Mat2& m, int c, int q) {
  if (c == q) throw std::invalid_argument("control equals target");
  if (c < 0 || c >= st.n || q < 0 || q >= st.n) throw std::out_of_range("qubit index");
  const std::size_t cb = std::size_t(1) << c, tb = std::size_t(1) << q;
  for (std::size_t i = 0; i < st.dim(); ++i) {
    if ((i & tb) || !(i & cb)) continue;
    cplx a0 = st.amps[i], a1 = st.amps[i | tb];
    st.amps[i] = m[0] * a0 + m[1] * a1;
    st.amps[i | tb] = m[2] * a0 + m[3] * a1;
  }
}

inline void apply_ccx(StateVector& st, int c1, int c2, int t) {
  if (c1 == c2 || c1 == t || c2 == t) throw std::invalid_argument("repeated qubit");
  const std::size_t b1 = std::size_t(1) << c1, b2 = std::size_t(1) << c2,
                    tb = std::size_t(1) << t;
  for (std::size_t i = 0; i < st.dim(); ++i)
    if ((i & b1) && (i & b2) && !(i & tb))
      std::swap(st.amps[i], st.amps[i | tb]);
}

// |psi> -> P|psi> for a phased Pauli string (in place)
inline void apply_pauli(StateVector& st, const PauliString& p) {
  if (p.n() != std::size_t(st.n)) throw std::invalid_argument("dimension mismatch");
  std::size_t flip = 0;
  // phase on basis state |i> from Z and Y letters; Y also flips
  std::vector<int> zmask_q, ymask_q;
  for (std::size_t q = 0; q < p.n(); ++q) {
    switch (p.letters[q]) {
      case PauliLetter::I: break;
      case PauliLetter::X: flip |= std::size_t(1) << q; break;
      case PauliLetter::Y: flip |= std::size_t(1) << q; ymask_q.push_back(int(q)); break;
      case PauliLetter::Z: zmask_q.push_back(int(q)); break;
    }
  }
  std::size_t zmask = 0, ymask = 0;
  for (int q : zmask_q) zmask |= std::size_t(1) << q;
  for (int q : ymask_q) ymask |= std::size_t(1) << q;
  // Y|0>=i|1>, Y|1>=-i|0>: per Y qubit a factor i*(-1)^bit; Z gives (-1)^bit.
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<cplx> out(st.dim());
  const int ny = int(ymask_q.size());
  for (std::size_t i = 0; i < st.dim(); ++i) {
    int minus = __builtin_popcountll(i & zmask) + __builtin_popcountll(i & ymask);
    int k = (p.phase_k + ny + 2 * minus) & 3;
    out[i ^ flip] = ipow[k] * st.amps[i];
  }
  st.amps.swap(out);
}

// <psi| obs |psi> for a Hermitian PauliSum
inline double expectation(const StateVector& st, const PauliSum& obs) {
  cplx acc = 0;
  for (const auto& [w, p] : obs.terms) {
    StateVector tmp = st;
    apply_pauli(tmp, p);
    acc += w * overlap(st, tmp);
  }
  if (std::abs(acc.imag()) > 1e-10)
    throw std::runtime_error("non-real expectation of declared-Hermitian sum");
  return acc.real();
}

inline double expectation(const StateVector& st, const PauliString& p) {
  return expectation(st, PauliSum(p));
}

// --- projective measurement ------------------------------------------------

struct MeasurementRecord {
  PauliSum observable;
  int eigenvalue = +1;     // +1 or -1
  double probability = 1;  // Born probability of this outcome
  bool forced = false;
};

// P_sign = (I + sign*obs)/2 applied and renormalized; returns Born probability.
// Requires obs^2 = I (holds for every axis family used here; checked by tests).
inline std::pair<double, StateVector> project(const StateVector& st,
                                              const PauliSum& obs, int sign) {
  StateVector acc = st;  // (|psi> + sign*obs|psi>)/2
  for (const auto& [w, p] : obs.terms) {
    StateVector tmp = st;
    apply_pauli(tmp, p);
    double ws = w * sign;
    for (std::size_t i = 0; i < acc.dim(); ++i) acc.amps[i] += ws * tmp.amps[i];
  }
  for (auto& a : acc.amps) a *= 0.5;
  double prob = acc.norm2();
  if (prob > kZeroProbTol) acc.normalize();
  return {prob, std::move(acc)};
}

inline std::pair<MeasurementRecord, StateVector> measure_forced(
    const StateVector& st, const PauliSum& obs, int sign) {
  auto [prob, post] = project(st, obs, sign);
  if (prob <= kZeroProbTol)
    throw std::runtime_error("forced outcome has zero probability");
  MeasurementRecord rec{obs, sign, prob, true};
  return {rec, std::move(post)};
}

inline std::pair<MeasurementRecord, StateVector> measure_sampled(
    const StateVector& st, const PauliSum& obs, RngStream& rng) {
  auto [pp, post_plus] = project(st, obs, +1);
  if (rng.next_double() < pp) {
    if (pp > kZeroProbTol) {
      MeasurementRecord rec{obs, +1, pp, false};
      return {rec, std::move(post_plus)};
    }
  }
  auto [pm, post_minus] = project(st, obs, -1);
  MeasurementRecord rec{obs, -1, pm, false};
  return {rec, std::move(post_minus)};
}

}  // namespace ybraid

#pragma once

// Minimal dense complex matrix helpers for the logical-space sizes used here
// (2x2 .. 16x16): products, adjoints, Kronecker products, Gaussian solves and
// a cyclic Jacobi eigensolver for Hermitian matrices. Deterministic on
// purpose; no external linear algebra dependency.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ybraid/pauli.hpp"

namespace ybraid {

struct CMat {
  int rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, cplx(0, 0)) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  cplx& operator()(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const cplx& operator()(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  CMat adjoint() const {
    CMat m(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  cplx trace() const {
    cplx t = 0;
    for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius() const {
    double s = 0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
  }
};

inline CMat operator*(const CMat& x, const CMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  CMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      cplx v = x(i, k);
      if (v == cplx(0, 0)) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

inline CMat operator+(const CMat& x, const CMat& y) {
  CMat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

inline CMat operator-(const CMat& x, const CMat& y) {
  CMat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

inline CMat operator*(cplx s, const CMat& x) {
  CMat r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

inline CMat kron(const CMat& x, const CMat& y) {
  CMat r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
  return r;
}

// single-qubit Pauli matrices as CMat
inline CMat pauli_mat(PauliLetter l) {
  CMat m(2, 2);
  switch (l) {
    case PauliLetter::I: m(0, 0) = 1; m(1, 1) = 1; break;
    case PauliLetter::X: m(0, 1) = 1; m(1, 0) = 1; break;
    case PauliLetter::Y: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case PauliLetter::Z: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

// tensor product of letters, index 0 = most significant factor
inline CMat pauli_kron(const std::vector<PauliLetter>& ls) {
  CMat m = pauli_mat(ls.at(0));
  for (std::size_t i = 1; i < ls.size(); ++i) m = kron(m, pauli_mat(ls[i]));
  return m;
}

// Solve A x = b (square, in-place Gaussian elimination with partial pivoting).
inline std::vector<cplx> solve(CMat A, std::vector<cplx> b) {
  const int n = A.rows;
  if (A.cols != n || int(b.size()) != n) throw std::invalid_argument("solve shape");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
    if (std::abs(A(piv, col)) < 1e-14) throw std::runtime_error("singular system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A(piv, c), A(col, c));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      cplx f = A(r, col) / A(col, col);
      if (f == cplx(0, 0)) continue;
      for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A(r, c) * x[c];
    x[r] = s / A(r, r);
  }
  return x;
}

struct EigResult {
  std::vector<double> values;  // ascending
  CMat vectors;                // columns are eigenvectors
};

// Cyclic Jacobi for Hermitian matrices. Good enough and fully deterministic
// at the sizes used (<= 16).
inline EigResult hermitian_eig(CMat A) {
  const int n = A.rows;
  CMat V = CMat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        cplx apq = A(p, q);
        if (std::abs(apq) < 1e-18) continue;
        double app = A(p, p).real(), aqq = A(q, q).real();
        // unitary 2x2 rotation diagonalizing [[app, apq],[apq*, aqq]]
        double phi = std::arg(apq);
        double theta = 0.5 * std::atan2(-2.0 * std::abs(apq), app - aqq);
        cplx c = std::cos(theta);
        cplx s = std::polar(std::sin(theta), phi);
        // rows/cols update: A <- J^dag A J with J = [[c, s],[-conj(s), c]]
        for (int k = 0; k < n; ++k) {
          cplx akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - std::conj(s) * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          cplx vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - std::conj(s) * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  // sort ascending by eigenvalue
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (A(order[j], order[j]).real() < A(order[i], order[i]).real())
        std::swap(order[i], order[j]);
  EigResult res;
  res.values.resize(n);
  res.vectors = CMat(n, n);
  for (int i = 0; i < n; ++i) {
    res.values[i] = A(order[i], order[i]).real();
    for (int k = 0; k < n; ++k) res.vectors(k, i) = V(k, order[i]);
  }
  return res;
}

// |a - e^{i phi} b| minimized over phi: phase-insensitive matrix distance
inline double phase_insensitive_dist(const CMat& a, const CMat& b) {
  cplx ip = 0;
  for (std::size_t i = 0; i < a.a.size(); ++i) ip += std::conj(a.a[i]) * b.a[i];
  double na = a.frobenius(), nb = b.frobenius();
  double d2 = na * na + nb * nb - 2.0 * std::abs(ip);
  return std::sqrt(std::max(0.0, d2));
}

inline bool proportional(const CMat& a, const CMat& b, double tol = 1e-9) {
  double na = a.frobenius(), nb = b.frobenius();
  if (na < tol || nb < tol) return false;
  CMat an = (cplx(1.0 / na, 0)) * a, bn = (cplx(1.0 / nb, 0)) * b;
  return phase_insensitive_dist(an, bn) < tol;
}

}  // namespace ybraid

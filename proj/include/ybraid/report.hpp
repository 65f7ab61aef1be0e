#pragma once

// Result-table writers: CSV and aligned structured text, plus density-matrix
// grid dumps. Every fidelity row carries shots, seed and stderr so runs are
// auditable and byte-reproducible.

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "ybraid/linalg.hpp"

namespace ybraid {

struct ResultRow {
  std::string operation;
  std::string input;     // label tuple, or "-" for aggregate rows
  std::string quantity;  // e.g. "state_fidelity", "process_fidelity"
  int shots = 0;         // 0 = exact
  std::uint64_t seed = 0;
  double value = 0;
  double stderr_ = 0;
};

inline std::string format_fixed(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "operation,input,quantity,shots,seed,value,stderr\n";
  for (const auto& r : rows)
    out << r.operation << ',' << r.input << ',' << r.quantity << ',' << r.shots << ','
        << r.seed << ',' << format_fixed(r.value) << ',' << format_fixed(r.stderr_) << "\n";
}

inline void write_txt(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << std::left << std::setw(12) << "Operation" << std::setw(8) << "Input"
      << std::setw(18) << "Quantity" << std::right << std::setw(8) << "Shots"
      << std::setw(12) << "Seed" << std::setw(14) << "Value" << std::setw(12)
      << "Stderr" << "\n";
  out << std::string(84, '-') << "\n";
  for (const auto& r : rows)
    out << std::left << std::setw(12) << r.operation << std::setw(8) << r.input
        << std::setw(18) << r.quantity << std::right << std::setw(8) << r.shots
        << std::setw(12) << r.seed << std::setw(14) << format_fixed(r.value)
        << std::setw(12) << format_fixed(r.stderr_) << "\n";
}

// Real and imaginary parts of a small matrix as aligned grids.
inline void write_matrix(std::ostream& out, const CMat& m, const std::string& title) {
  out << title << " (real)\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c)
      out << std::setw(11) << format_fixed(m(r, c).real(), 6);
    out << "\n";
  }
  out << title << " (imag)\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c)
      out << std::setw(11) << format_fixed(m(r, c).imag(), 6);
    out << "\n";
  }
}

}  // namespace ybraid

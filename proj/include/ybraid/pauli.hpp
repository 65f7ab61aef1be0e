#pragma once

// Exact n-qubit Pauli-string and Pauli-sum algebra.
//
// Conventions (inherited by every other header):
//  - qubit 0 is the least significant basis bit (little endian),
//  - a PauliString stores one letter per qubit plus a phase i^k, k in 0..3,
//  - PauliSum coefficients are real; constructing a sum from a string with an
//    imaginary phase is rejected (all observables here are Hermitian).

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ybraid {

using cplx = std::complex<double>;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(PauliLetter l) { return "IXYZ"[static_cast<int>(l)]; }

inline PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("bad Pauli letter: ") + c);
  }
}

struct PauliString {
  // phase = i^phase_k
  std::uint8_t phase_k = 0;
  std::vector<PauliLetter> letters;

  PauliString() = default;
  explicit PauliString(std::size_t n) : letters(n, PauliLetter::I) {}

  std::size_t n() const { return letters.size(); }

  cplx phase() const {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_k & 3];
  }

  // Sparse constructor: make(4, {{0,'Z'},{1,'Z'}}) -> +ZZII (qubit order 0..3).
  static PauliString make(std::size_t n, const std::map<int, char>& qs,
                          int phase_k = 0) {
    PauliString p(n);
    p.phase_k = static_cast<std::uint8_t>(((phase_k % 4) + 4) % 4);
    for (const auto& [q, c] : qs) {
      if (q < 0 || static_cast<std::size_t>(q) >= n)
        throw std::out_of_range("qubit index out of range");
      p.letters[q] = letter_from_char(c);
    }
    return p;
  }

  // Text form "+ZZII" (leftmost char = qubit 0).
  static PauliString parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty Pauli text");
    PauliString p;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') {
      p.phase_k = (text[0] == '-') ? 2 : 0;
      i = 1;
    }
    for (; i < text.size(); ++i) p.letters.push_back(letter_from_char(text[i]));
    return p;
  }

  std::string str() const {
    std::string s(phase_k == 0 ? "+" : phase_k == 2 ? "-" : phase_k == 1 ? "+i" : "-i");
    for (auto l : letters) s += letter_char(l);
    return s;
  }

  bool operator==(const PauliString& o) const {
    return phase_k == o.phase_k && letters == o.letters;
  }
};

namespace detail {
// i^k phase picked up by the single-qubit product a*b, and the resulting
// letter: X*Y = iZ, Y*X = -iZ, etc.
inline void letter_mul(PauliLetter a, PauliLetter b, PauliLetter& out,
                       int& phase_k) {
  if (a == PauliLetter::I) { out = b; phase_k = 0; return; }
  if (b == PauliLetter::I) { out = a; phase_k = 0; return; }
  if (a == b) { out = PauliLetter::I; phase_k = 0; return; }
  int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // XYZ cyclic: (1,2)->3 with +i, (2,3)->1 with +i, (3,1)->2 with +i.
  out = static_cast<PauliLetter>(6 - ia - ib);
  bool forward = (ib - ia + 3) % 3 == 1;
  phase_k = forward ? 1 : 3;
}
}  // namespace detail

inline PauliString mul(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Pauli length mismatch");
  PauliString r(a.n());
  int k = a.phase_k + b.phase_k;
  for (std::size_t q = 0; q < a.n(); ++q) {
    int kk = 0;
    detail::letter_mul(a.letters[q], b.letters[q], r.letters[q], kk);
    k += kk;
  }
  r.phase_k = static_cast<std::uint8_t>(k & 3);
  return r;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Pauli length mismatch");
  int anti = 0;
  for (std::size_t q = 0; q < a.n(); ++q) {
    auto la = a.letters[q], lb = b.letters[q];
    if (la != PauliLetter::I && lb != PauliLetter::I && la != lb) ++anti;
  }
  return (anti & 1) == 0;
}

// Real-weighted sum of phase-normalized strings (Hermitian by construction).
struct PauliSum {
  std::vector<std::pair<double, PauliString>> terms;

  PauliSum() = default;
  PauliSum(std::initializer_list<std::pair<double, PauliString>> ts) {
    for (auto& t : ts) add(t.first, t.second);
  }
  explicit PauliSum(const PauliString& p) { add(1.0, p); }

  void add(double coeff, PauliString p) {
    if (p.phase_k == 1 || p.phase_k == 3)
      throw std::invalid_argument("non-Hermitian Pauli term (imaginary phase)");
    if (p.phase_k == 2) { coeff = -coeff; p.phase_k = 0; }
    terms.emplace_back(coeff, std::move(p));
  }

  std::size_t n() const { return terms.empty() ? 0 : terms.front().second.n(); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      s += std::to_string(terms[i].first) + "*" + terms[i].second.str().substr(1);
    }
    return s;
  }
};

}  // namespace ybraid

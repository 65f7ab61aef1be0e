#pragma once

// OpenQASM 3 emitter and subset parser for the circuit IR.
//
// Grammar: one `qubit[N] q;` register, one `bit[M] c;` register, lowercase
// gate statements, `barrier q;`, and `c[j] = measure q[k];`. Angles are
// printed with 17 significant digits so a round trip is bit exact.
//
// Basis-tagged measurements are emitted through the canonical lowering
//   x: h q; measure; h q        y: sdg q; h q; measure; h q; s q
// and the parser folds those exact patterns back, so parse(emit(c)) == c
// op-for-op for circuits that do not already contain the bare patterns.

#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/circuit.hpp"

namespace ybraid {

struct QasmError : std::runtime_error {
  int line, col;
  QasmError(int line_, int col_, const std::string& msg)
      : std::runtime_error("qasm:" + std::to_string(line_) + ":" + std::to_string(col_) +
                           ": " + msg),
        line(line_), col(col_) {}
};

namespace detail {

inline const std::vector<std::string>& supported_gates() {
  static const std::vector<std::string> g = {
      "h", "x", "y", "z", "s", "sdg", "t", "tdg", "sx", "sxdg", "id",
      "rx", "ry", "rz", "cx", "cy", "cz", "ccx"};
  return g;
}

inline int gate_arity(const std::string& name) {
  if (name == "cx" || name == "cy" || name == "cz") return 2;
  if (name == "ccx") return 3;
  return 1;
}

inline bool gate_has_param(const std::string& name) {
  return name == "rx" || name == "ry" || name == "rz";
}

inline std::string fmt_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// --- emitter ----------------------------------------------------------------

inline std::string emit_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "qubit[" << c.n_qubits << "] q;\n";
  if (c.n_clbits > 0) out << "bit[" << c.n_clbits << "] c;\n";
  auto q = [](int k) { return "q[" + std::to_string(k) + "]"; };
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Barrier:
        out << "barrier q;\n";
        break;
      case CircuitOp::Kind::Gate: {
        out << op.name;
        if (!op.params.empty()) {
          out << "(";
          for (std::size_t i = 0; i < op.params.size(); ++i)
            out << (i ? ", " : "") << detail::fmt_angle(op.params[i]);
          out << ")";
        }
        for (std::size_t i = 0; i < op.qubits.size(); ++i)
          out << (i ? ", " : " ") << q(op.qubits[i]);
        out << ";\n";
        break;
      }
      case CircuitOp::Kind::Measure: {
        const int k = op.qubits[0];
        if (op.basis == 'x') out << "h " << q(k) << ";\n";
        if (op.basis == 'y') out << "sdg " << q(k) << ";\nh " << q(k) << ";\n";
        out << "c[" << op.clbit << "] = measure " << q(k) << ";\n";
        if (op.basis == 'x') out << "h " << q(k) << ";\n";
        if (op.basis == 'y') out << "h " << q(k) << ";\ns " << q(k) << ";\n";
        break;
      }
    }
  }
  return out.str();
}

// --- parser -----------------------------------------------------------------

namespace detail {

struct LineCursor {
  const std::string& s;
  int line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) { throw QasmError(line, int(pos) + 1, msg); }
  bool accept(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }
  int integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(s.substr(start, pos - start));
  }
  double number() {
    skip_ws();
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos += std::size_t(end - begin);
    return v;
  }
  int qubit_ref() {
    expect("q");
    expect("[");
    int k = integer();
    expect("]");
    return k;
  }
};

// Fold the canonical x/y measurement patterns back into basis-tagged measures.
inline void fold_measure_bases(Circuit& c) {
  auto is_gate = [&](std::size_t i, const std::string& name, int qubit) {
    return i < c.ops.size() && c.ops[i].kind == CircuitOp::Kind::Gate &&
           c.ops[i].name == name && c.ops[i].qubits.size() == 1 && c.ops[i].qubits[0] == qubit;
  };
  std::vector<CircuitOp> out;
  std::size_t i = 0;
  while (i < c.ops.size()) {
    // y pattern: sdg h measure h s
    if (i + 4 < c.ops.size() && c.ops[i + 2].kind == CircuitOp::Kind::Measure &&
        c.ops[i + 2].basis == 'z') {
      int k = c.ops[i + 2].qubits[0];
      if (is_gate(i, "sdg", k) && is_gate(i + 1, "h", k) && is_gate(i + 3, "h", k) &&
          is_gate(i + 4, "s", k)) {
        CircuitOp m = c.ops[i + 2];
        m.basis = 'y';
        out.push_back(m);
        i += 5;
        continue;
      }
    }
    // x pattern: h measure h
    if (i + 2 < c.ops.size() && c.ops[i + 1].kind == CircuitOp::Kind::Measure &&
        c.ops[i + 1].basis == 'z') {
      int k = c.ops[i + 1].qubits[0];
      if (is_gate(i, "h", k) && is_gate(i + 2, "h", k)) {
        CircuitOp m = c.ops[i + 1];
        m.basis = 'x';
        out.push_back(m);
        i += 3;
        continue;
      }
    }
    out.push_back(c.ops[i]);
    ++i;
  }
  c.ops = std::move(out);
}

}  // namespace detail

inline Circuit parse_qasm(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Circuit c(0, 0);
  bool saw_header = false, saw_qreg = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto comment = raw.find("//");
    if (comment != std::string::npos) raw.erase(comment);
    detail::LineCursor cur{raw, lineno};
    if (cur.done()) continue;
    if (!saw_header) {
      cur.expect("OPENQASM");
      cur.expect("3.0");
      cur.expect(";");
      saw_header = true;
      continue;
    }
    if (cur.accept("qubit")) {
      cur.expect("[");
      c.n_qubits = cur.integer();
      cur.expect("]");
      cur.expect("q");
      cur.expect(";");
      saw_qreg = true;
      continue;
    }
    if (cur.accept("bit")) {
      cur.expect("[");
      c.n_clbits = cur.integer();
      cur.expect("]");
      cur.expect("c");
      cur.expect(";");
      continue;
    }
    if (!saw_qreg) cur.fail("statement before qubit register declaration");
    if (cur.accept("barrier")) {
      cur.accept("q");
      cur.expect(";");
      c.barrier();
      continue;
    }
    if (cur.accept("c[")) {  // c[j] = measure q[k];
      int clbit = cur.integer();
      cur.expect("]");
      cur.expect("=");
      cur.expect("measure");
      int qubit = cur.qubit_ref();
      cur.expect(";");
      // duplicate-clbit and range checks via Circuit::measure
      try {
        c.measure(qubit, 'z', clbit);
      } catch (const std::exception& e) {
        cur.fail(e.what());
      }
      continue;
    }
    std::string name = cur.ident();
    bool known = false;
    for (const auto& g : detail::supported_gates()) known = known || g == name;
    if (!known) cur.fail("unsupported gate: " + name);
    std::vector<double> params;
    if (cur.accept("(")) {
      params.push_back(cur.number());
      while (cur.accept(",")) params.push_back(cur.number());
      cur.expect(")");
    }
    if (detail::gate_has_param(name) != (params.size() == 1) ||
        (!detail::gate_has_param(name) && !params.empty()))
      cur.fail("wrong parameter count for " + name);
    std::vector<int> qubits;
    qubits.push_back(cur.qubit_ref());
    while (cur.accept(",")) qubits.push_back(cur.qubit_ref());
    cur.expect(";");
    if (int(qubits.size()) != detail::gate_arity(name))
      cur.fail("wrong qubit count for " + name);
    try {
      c.gate(name, qubits, params);
    } catch (const std::exception& e) {
      cur.fail(e.what());
    }
    if (!cur.done()) cur.fail("trailing tokens");
  }
  if (!saw_header) throw QasmError(1, 1, "missing OPENQASM header");
  if (!saw_qreg) throw QasmError(lineno, 1, "missing qubit register");
  detail::fold_measure_bases(c);
  return c;
}

// --- lowering to the hardware basis {cz, rx, rz, sx, x, id} ------------------

namespace detail {

inline bool in_lowered_basis(const std::string& name) {
  return name == "cz" || name == "rx" || name == "rz" || name == "sx" ||
         name == "x" || name == "id";
}

// One expansion step; equivalences hold up to global phase (test-verified).
inline std::vector<CircuitOp> lower_step(const CircuitOp& op) {
  auto g = [&](const std::string& n, std::vector<int> qs, std::vector<double> ps = {}) {
    return CircuitOp{CircuitOp::Kind::Gate, n, std::move(ps), std::move(qs), 'z', -1};
  };
  const auto& q = op.qubits;
  const double pi = M_PI;
  if (op.name == "h") return {g("rz", {q[0]}, {pi / 2}), g("sx", {q[0]}), g("rz", {q[0]}, {pi / 2})};
  if (op.name == "s") return {g("rz", {q[0]}, {pi / 2})};
  if (op.name == "sdg") return {g("rz", {q[0]}, {-pi / 2})};
  if (op.name == "t") return {g("rz", {q[0]}, {pi / 4})};
  if (op.name == "tdg") return {g("rz", {q[0]}, {-pi / 4})};
  if (op.name == "z") return {g("rz", {q[0]}, {pi})};
  if (op.name == "y") return {g("rz", {q[0]}, {pi}), g("x", {q[0]})};
  if (op.name == "sxdg") return {g("rz", {q[0]}, {pi}), g("sx", {q[0]}), g("rz", {q[0]}, {pi})};
  if (op.name == "ry") return {g("rz", {q[0]}, {-pi / 2}), g("rx", {q[0]}, {op.params[0]}),
                               g("rz", {q[0]}, {pi / 2})};
  if (op.name == "cx") return {g("h", {q[1]}), g("cz", {q[0], q[1]}), g("h", {q[1]})};
  if (op.name == "cy") return {g("sdg", {q[1]}), g("cx", {q[0], q[1]}), g("s", {q[1]})};
  if (op.name == "ccx") {
    int a = q[0], b = q[1], t = q[2];
    return {g("h", {t}),   g("cx", {b, t}), g("tdg", {t}), g("cx", {a, t}),
            g("t", {t}),   g("cx", {b, t}), g("tdg", {t}), g("cx", {a, t}),
            g("t", {b}),   g("t", {t}),     g("h", {t}),   g("cx", {a, b}),
            g("t", {a}),   g("tdg", {b}),   g("cx", {a, b})};
  }
  throw std::invalid_argument("cannot lower gate: " + op.name);
}

}  // namespace detail

// Rewrite every gate into the hardware basis; measurements keep their basis
// tag (the emitter expands it) and barriers pass through.
inline Circuit lower_circuit(const Circuit& c) {
  Circuit out(c.n_qubits, c.n_clbits);
  std::vector<CircuitOp> work(c.ops.begin(), c.ops.end());
  std::size_t i = 0;
  std::vector<CircuitOp> done;
  while (i < work.size()) {
    const CircuitOp op = work[i];
    if (op.kind != CircuitOp::Kind::Gate || detail::in_lowered_basis(op.name)) {
      done.push_back(op);
      ++i;
      continue;
    }
    auto expansion = detail::lower_step(op);
    work.erase(work.begin() + i);
    work.insert(work.begin() + i, expansion.begin(), expansion.end());
  }
  // x/y measurement basis changes must also be lowered
  for (const auto& op : done) {
    if (op.kind != CircuitOp::Kind::Measure || op.basis == 'z') {
      out.ops.push_back(op);
      continue;
    }
    Circuit pre(c.n_qubits, 0), post(c.n_qubits, 0);
    if (op.basis == 'x') {
      pre.gate("h", {op.qubits[0]});
      post.gate("h", {op.qubits[0]});
    } else {
      pre.gate("sdg", {op.qubits[0]});
      pre.gate("h", {op.qubits[0]});
      post.gate("h", {op.qubits[0]});
      post.gate("s", {op.qubits[0]});
    }
    for (const auto& sub : lower_circuit(pre).ops) out.ops.push_back(sub);
    CircuitOp m = op;
    m.basis = 'z';
    out.ops.push_back(m);
    for (const auto& sub : lower_circuit(post).ops) out.ops.push_back(sub);
  }
  return out;
}

}  // namespace ybraid

#pragma once

// Gate-level circuit IR plus builders for every circuit the harness uses:
// logical-state initialization, two-qubit parity-check fragments, the tilted
// three-qubit check entangler U023, logical-basis measurement fragments, and
// full gate circuits. Simulation supports forced and sampled mid-circuit
// measurement and optional stochastic Pauli noise.
//
// Builder gate lists are fixtures validated against the analytic encoded
// states; where a transcribed reference layout disagreed with the analytic
// target, the corrected list is used and the discrepancy is recorded in
// figure_deviations().

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybraid/encoding.hpp"
#include "ybraid/noise.hpp"
#include "ybraid/protocol.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"

namespace ybraid {

// --- IR ---------------------------------------------------------------------

struct CircuitOp {
  enum class Kind { Gate, Measure, Barrier };
  Kind kind = Kind::Gate;
  std::string name;            // lowercase gate name
  std::vector<double> params;
  std::vector<int> qubits;
  char basis = 'z';            // measurement basis
  int clbit = -1;
};

struct Circuit {
  int n_qubits = 0;
  int n_clbits = 0;
  std::vector<CircuitOp> ops;

  explicit Circuit(int nq = 0, int nc = 0) : n_qubits(nq), n_clbits(nc) {}

  void gate(const std::string& name, std::vector<int> qubits,
            std::vector<double> params = {}) {
    for (int q : qubits)
      if (q < 0 || q >= n_qubits) throw std::out_of_range("qubit index out of range");
    ops.push_back({CircuitOp::Kind::Gate, name, std::move(params), std::move(qubits), 'z', -1});
  }

  void measure(int qubit, char basis, int clbit) {
    if (qubit < 0 || qubit >= n_qubits) throw std::out_of_range("qubit index out of range");
    if (clbit < 0 || clbit >= n_clbits) throw std::out_of_range("clbit index out of range");
    if (basis != 'x' && basis != 'y' && basis != 'z')
      throw std::invalid_argument("measurement basis must be x, y or z");
    for (const auto& op : ops)
      if (op.kind == CircuitOp::Kind::Measure && op.clbit == clbit)
        throw std::invalid_argument("clbit written twice");
    ops.push_back({CircuitOp::Kind::Measure, "measure", {}, {qubit}, basis, clbit});
  }

  void barrier() { ops.push_back({CircuitOp::Kind::Barrier, "barrier", {}, {}, 'z', -1}); }

  void append(const Circuit& other) {
    if (other.n_qubits > n_qubits || other.n_clbits > n_clbits)
      throw std::invalid_argument("appended circuit does not fit");
    for (const auto& op : other.ops) ops.push_back(op);
  }
};

// --- simulation -------------------------------------------------------------

namespace detail {

inline void apply_named_gate(StateVector& st, const CircuitOp& op) {
  const auto& q = op.qubits;
  auto need = [&](std::size_t nq, std::size_t np) {
    if (q.size() != nq || op.params.size() != np)
      throw std::invalid_argument("bad arity for gate " + op.name);
  };
  if (op.name == "h") { need(1, 0); apply_1q(st, gates::H(), q[0]); }
  else if (op.name == "x") { need(1, 0); apply_1q(st, gates::X(), q[0]); }
  else if (op.name == "y") { need(1, 0); apply_1q(st, gates::Y(), q[0]); }
  else if (op.name == "z") { need(1, 0); apply_1q(st, gates::Z(), q[0]); }
  else if (op.name == "s") { need(1, 0); apply_1q(st, gates::S(), q[0]); }
  else if (op.name == "sdg") { need(1, 0); apply_1q(st, gates::Sdg(), q[0]); }
  else if (op.name == "t") { need(1, 0); apply_1q(st, gates::T(), q[0]); }
  else if (op.name == "tdg") { need(1, 0); apply_1q(st, gates::Tdg(), q[0]); }
  else if (op.name == "sx") { need(1, 0); apply_1q(st, gates::SX(), q[0]); }
  else if (op.name == "sxdg") { need(1, 0); apply_1q(st, gates::SXdg(), q[0]); }
  else if (op.name == "id") { need(1, 0); }
  else if (op.name == "rx") { need(1, 1); apply_1q(st, gates::Rx(op.params[0]), q[0]); }
  else if (op.name == "ry") { need(1, 1); apply_1q(st, gates::Ry(op.params[0]), q[0]); }
  else if (op.name == "rz") { need(1, 1); apply_1q(st, gates::Rz(op.params[0]), q[0]); }
  else if (op.name == "cx") { need(2, 0); apply_c1q(st, gates::X(), q[0], q[1]); }
  else if (op.name == "cy") { need(2, 0); apply_c1q(st, gates::Y(), q[0], q[1]); }
  else if (op.name == "cz") { need(2, 0); apply_c1q(st, gates::Z(), q[0], q[1]); }
  else if (op.name == "ccx") { need(3, 0); apply_ccx(st, q[0], q[1], q[2]); }
  else throw std::invalid_argument("unsupported gate: " + op.name);
}

}  // namespace detail

struct SimOptions {
  const std::string* forced = nullptr;   // outcome bits indexed by clbit
  RngStream* meas_rng = nullptr;         // required for sampled measurement
  const NoiseModel* noise = nullptr;
  RngStream* noise_rng = nullptr;
  RngStream* readout_rng = nullptr;
  const StateVector* initial = nullptr;  // defaults to |0...0>
};

struct SimResult {
  StateVector state{1};
  std::string bits;        // indexed by clbit, '1' records a -1 eigenvalue
  double probability = 1;  // product of Born factors along the realized path
};

inline SimResult simulate(const Circuit& c, const SimOptions& opt = {}) {
  SimResult res;
  res.state = opt.initial ? *opt.initial : StateVector(c.n_qubits);
  if (res.state.n != c.n_qubits) throw std::invalid_argument("initial state size mismatch");
  res.bits.assign(c.n_clbits, '0');
  if (opt.forced && int(opt.forced->size()) != c.n_clbits)
    throw std::invalid_argument("forced bits length mismatch");
  const bool noisy = opt.noise && opt.noise->enabled();
  if (noisy && (!opt.noise_rng || !opt.readout_rng))
    throw std::invalid_argument("noise model requires noise and readout rng streams");
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Barrier:
        break;
      case CircuitOp::Kind::Gate:
        detail::apply_named_gate(res.state, op);
        if (noisy) apply_gate_noise(res.state, op.qubits, *opt.noise, *opt.noise_rng);
        break;
      case CircuitOp::Kind::Measure: {
        if (noisy) {
          std::vector<int> idle;
          for (int q = 0; q < c.n_qubits; ++q)
            if (q != op.qubits[0]) idle.push_back(q);
          apply_idle_noise(res.state, idle, *opt.noise, *opt.noise_rng);
        }
        char letter = op.basis == 'x' ? 'X' : op.basis == 'y' ? 'Y' : 'Z';
        PauliSum obs{PauliString::make(c.n_qubits, {{op.qubits[0], letter}})};
        MeasurementRecord rec;
        if (opt.forced) {
          int sign = (*opt.forced)[op.clbit] == '1' ? -1 : +1;
          auto [r, post] = measure_forced(res.state, obs, sign);
          rec = r;
          res.state = std::move(post);
        } else {
          if (!opt.meas_rng) throw std::invalid_argument("sampled run needs meas_rng");
          auto [r, post] = measure_sampled(res.state, obs, *opt.meas_rng);
          rec = r;
          res.state = std::move(post);
        }
        res.probability *= rec.probability;
        int eig = rec.eigenvalue;
        if (noisy) eig = flip_readout(eig, opt.noise->p_ro, *opt.readout_rng);
        res.bits[op.clbit] = eig == -1 ? '1' : '0';
        break;
      }
    }
  }
  return res;
}

// --- figure deviation log ---------------------------------------------------

struct FigureDeviation {
  std::string circuit;
  std::string note;
};

// Transcribed reference layouts that failed validation against the analytic
// states (or the conjugation postcondition, for the entangler) and the
// corrections applied. Tagged FIGURE_DEVIATION in reports.
inline const std::vector<FigureDeviation>& figure_deviations() {
  static const std::vector<FigureDeviation> devs = {
      {"init Y1 |+>",
       "transcribed layout omits h q3; the corrected list (identical to the "
       "|+> preparation box of the gate figure) reaches the analytic state"},
      {"init Y2 Q1 |+>",
       "transcribed layout prepares the analytic state up to the logical Z "
       "string; z q6, z q9 appended"},
      {"init Y2 Q1 |i+>",
       "transcribed layout prepares the analytic state up to the logical Z "
       "string; z q6, z q9 appended"},
      {"u023",
       "transcribed tau=pi/4 layout fails the conjugation postcondition under "
       "every phase convention; replaced by a derived 5-gate entangler that "
       "satisfies it for all tau"},
  };
  return devs;
}

// --- initialization builders ------------------------------------------------

namespace detail {

inline void y1_init_ops(Circuit& c, LogicalLabel l) {
  switch (l) {
    case LogicalLabel::Zero:
      c.gate("ry", {2}, {M_PI / 2});
      c.gate("ry", {1}, {-M_PI / 2});
      c.gate("x", {0});
      c.gate("cy", {1, 0});
      c.gate("cx", {2, 0});
      c.gate("cx", {2, 1});
      c.gate("cx", {2, 3});
      c.gate("x", {2});
      return;
    case LogicalLabel::One:
      c.gate("h", {2});
      c.gate("x", {1});
      c.gate("rx", {0}, {M_PI / 2});
      c.gate("cx", {0, 3});
      c.gate("cx", {2, 0});
      c.gate("cx", {0, 1});
      c.gate("cx", {0, 3});
      return;
    case LogicalLabel::Plus:
      // corrected layout, see figure_deviations()
      c.gate("h", {2});
      c.gate("x", {1});
      c.gate("rx", {0}, {M_PI / 2});
      c.gate("cx", {0, 3});
      c.gate("h", {3});
      c.gate("cx", {2, 0});
      c.gate("cx", {0, 1});
      c.gate("cz", {1, 2});
      return;
    case LogicalLabel::IPlus:
      c.gate("h", {2});
      c.gate("x", {1});
      c.gate("rx", {0}, {M_PI / 2});
      c.gate("s", {1});
      c.gate("cx", {0, 3});
      c.gate("h", {3});
      c.gate("cx", {2, 0});
      c.gate("sdg", {3});
      c.gate("sdg", {2});
      c.gate("cx", {0, 1});
      c.gate("cz", {1, 2});
      c.gate("cz", {2, 3});
      return;
  }
}

inline void y2_q0_init_ops(Circuit& c, LogicalLabel l) {
  switch (l) {
    case LogicalLabel::Zero:
      c.gate("h", {5}); c.gate("x", {4}); c.gate("x", {3}); c.gate("h", {2}); c.gate("h", {1});
      c.gate("cx", {5, 4});
      c.gate("sdg", {3});
      c.gate("cy", {2, 3});
      c.gate("cx", {1, 3});
      c.gate("cx", {1, 2});
      c.gate("z", {2});
      c.gate("cx", {1, 0});
      c.gate("y", {1});
      return;
    case LogicalLabel::One:
      c.gate("h", {5}); c.gate("x", {4}); c.gate("h", {2}); c.gate("h", {1});
      c.gate("z", {5});
      c.gate("cy", {2, 3});
      c.gate("cx", {5, 4});
      c.gate("cx", {1, 3});
      c.gate("cx", {1, 2});
      c.gate("z", {2});
      c.gate("cx", {1, 0});
      c.gate("y", {1});
      return;
    case LogicalLabel::Plus:
      c.gate("h", {5}); c.gate("x", {4}); c.gate("h", {3}); c.gate("h", {2}); c.gate("h", {1});
      c.gate("z", {5});
      c.gate("s", {3});
      c.gate("cx", {5, 4});
      c.gate("cy", {2, 3});
      c.gate("cx", {1, 3});
      c.gate("z", {3});
      c.gate("cx", {1, 2});
      c.gate("cz", {3, 5});
      c.gate("cx", {1, 0});
      c.gate("cz", {2, 5});
      c.gate("y", {1});
      return;
    case LogicalLabel::IPlus:
      c.gate("h", {5}); c.gate("x", {4}); c.gate("h", {3}); c.gate("h", {2}); c.gate("h", {1});
      c.gate("z", {5});
      c.gate("cy", {2, 3});
      c.gate("cx", {5, 4});
      c.gate("cx", {1, 3});
      c.gate("z", {3});
      c.gate("cx", {1, 2});
      c.gate("cz", {3, 5});
      c.gate("cx", {1, 0});
      c.gate("cz", {2, 5});
      c.gate("ry", {1}, {-M_PI});
      return;
  }
}

inline void y2_q1_init_ops(Circuit& c, LogicalLabel l) {
  // block lives on qubits 6..9
  switch (l) {
    case LogicalLabel::Zero:
      c.gate("x", {9}); c.gate("x", {8}); c.gate("h", {7}); c.gate("sx", {6});
      c.gate("cx", {6, 8});
      c.gate("cx", {7, 6});
      c.gate("cx", {6, 9});
      c.gate("cx", {6, 8});
      return;
    case LogicalLabel::One:
      c.gate("x", {8}); c.gate("h", {7}); c.gate("sx", {6});
      c.gate("cx", {6, 8});
      c.gate("cx", {7, 6});
      c.gate("cx", {6, 9});
      c.gate("z", {7});
      c.gate("cx", {6, 8});
      return;
    case LogicalLabel::Plus:
    case LogicalLabel::IPlus:
      c.gate("h", {9}); c.gate("x", {8}); c.gate("h", {7}); c.gate("sx", {6});
      if (l == LogicalLabel::IPlus) c.gate("sdg", {9});
      c.gate("cx", {6, 8});
      c.gate("cy", {7, 6});
      c.gate("s", {7});
      c.gate("cx", {6, 9});
      c.gate("cx", {6, 8});
      c.gate("cz", {7, 9});
      c.gate("z", {8});
      // logical Z string appended, see figure_deviations()
      c.gate("z", {6});
      c.gate("z", {9});
      return;
  }
}

}  // namespace detail

inline Circuit build_init_circuit(EncodingId id, const std::vector<LogicalLabel>& labels) {
  if (int(labels.size()) != logical_n(id))
    throw std::invalid_argument("label count does not match encoding");
  Circuit c(physical_n(id), 0);
  if (id == EncodingId::Y1) {
    detail::y1_init_ops(c, labels[0]);
  } else {
    detail::y2_q0_init_ops(c, labels[0]);
    detail::y2_q1_init_ops(c, labels[1]);
  }
  return c;
}

// --- parity-check fragments -------------------------------------------------

// Derived 3-qubit entangler V with V X0 V^dag = X0X3, V Y0 V^dag = Y0Y2, so
// V (I +- (cos(tau) X0 + sin(tau) Y0))/2 V^dag is the tilted parity-check
// projector for every tau. The gate list is tau independent; the conjugated
// single-qubit axis carries the angle.
inline Circuit build_u023(double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  Circuit c(4, 0);
  c.gate("cx", {0, 3});
  c.gate("cx", {2, 0});
  c.gate("h", {2});
  c.gate("s", {2});
  c.gate("cx", {2, 3});
  return c;
}

// Measure-and-uncompute fragment for a bare two-qubit parity check.
inline Circuit build_parity_check(const MeasurementAxis& axis, int clbit = 0) {
  auto obs = axis.observable();
  if (obs.terms.size() != 1)
    throw std::invalid_argument("axis is not a bare two-qubit check; use the "
                                "u023-conjugated fragment");
  const int n = physical_n(axis.enc);
  Circuit c(n, clbit + 1);
  const std::string key = obs.terms[0].second.str();
  auto frag = [&](const std::string& g, int a, int b, int mq, char basis) {
    c.gate(g, {a, b});
    c.measure(mq, basis, clbit);
    c.gate(g, {a, b});
  };
  if (axis.enc == EncodingId::Y1) {
    if (key == "+ZZII") frag("cx", 1, 0, 0, 'z');
    else if (key == "+XIIX") frag("cx", 0, 3, 0, 'x');
    else if (key == "+YIYI") frag("cy", 0, 2, 0, 'y');
    else throw std::invalid_argument("unsupported check " + key);
  } else {
    if (key == "+IIIIZZIIII") frag("cx", 5, 4, 4, 'z');
    else if (key == "+IIIIYIYIII") frag("cy", 4, 6, 4, 'y');
    else if (key == "+IIXIXIIIII") frag("cx", 4, 2, 4, 'x');
    else throw std::invalid_argument("unsupported check " + key);
  }
  return c;
}

// Tilted check fragment for the non-Clifford axis (theta = pi/2, angle phi):
// conjugate by the u023 entangler and measure qubit 0 along the rotated
// equatorial axis.
inline Circuit build_tilted_check(double phi, int clbit = 0) {
  Circuit c(4, clbit + 1);
  // inverse entangler
  c.gate("cx", {2, 3});
  c.gate("sdg", {2});
  c.gate("h", {2});
  c.gate("cx", {2, 0});
  c.gate("cx", {0, 3});
  c.gate("rz", {0}, {-phi});
  c.measure(0, 'x', clbit);
  c.gate("rz", {0}, {phi});
  c.append(build_u023(phi));
  return c;
}

inline Circuit axis_fragment(const MeasurementAxis& axis, int clbit) {
  if (axis.is_pure_pauli()) {
    Circuit frag = build_parity_check(axis, clbit);
    return frag;
  }
  if (axis.enc != EncodingId::Y1 || std::abs(axis.theta - M_PI / 2) > 1e-12)
    throw std::invalid_argument("tilted fragment only built for the main junction equator");
  return build_tilted_check(axis.phi, clbit);
}

// --- logical-basis measurement fragments --------------------------------------

struct MeasureFragment {
  Circuit circuit{0, 0};
  int sign = +1;  // logical expectation = sign * mean recorded eigenvalue
};

inline MeasureFragment build_measure_circuit(EncodingId id, int qubit, char axis,
                                             int clbit = 0) {
  const int n = physical_n(id);
  MeasureFragment f{Circuit(n, clbit + 1), +1};
  Circuit& c = f.circuit;
  if (id == EncodingId::Y1) {
    switch (axis) {
      case 'X': c.gate("cx", {3, 2}); c.measure(2, 'y', clbit); return f;
      case 'Y': c.measure(2, 'x', clbit); return f;
      case 'Z': c.gate("cx", {3, 2}); c.measure(2, 'z', clbit); f.sign = -1; return f;
    }
  } else if (qubit == 0) {
    switch (axis) {
      case 'X': c.gate("cz", {2, 5}); c.measure(2, 'x', clbit); return f;
      case 'Y':
        c.gate("cz", {2, 3}); c.gate("cz", {3, 5}); c.gate("cz", {2, 5});
        c.measure(2, 'y', clbit);
        f.sign = -1;
        return f;
      case 'Z': c.gate("cx", {2, 3}); c.measure(3, 'z', clbit); f.sign = -1; return f;
    }
  } else {
    switch (axis) {
      case 'X': c.measure(6, 'y', clbit); return f;
      case 'Y': c.gate("cz", {6, 9}); c.measure(6, 'x', clbit); return f;
      case 'Z': c.gate("cx", {6, 9}); c.measure(9, 'z', clbit); f.sign = -1; return f;
    }
  }
  throw std::invalid_argument("bad measurement axis");
}

// Fragment measuring a multi-qubit logical Pauli label (factors act on
// disjoint physical qubits); recorded eigenvalue product times sign estimates
// the correlator.
struct LabelFragment {
  Circuit circuit{0, 0};
  std::vector<int> clbits;
  int sign = +1;
};

inline LabelFragment build_label_measure(EncodingId id, const std::string& label,
                                         int first_clbit = 0) {
  LabelFragment out;
  out.circuit = Circuit(physical_n(id), first_clbit);
  int clbit = first_clbit;
  for (int q = 0; q < int(label.size()); ++q) {
    if (label[q] == 'I') continue;
    auto f = build_measure_circuit(id, q, label[q], clbit);
    out.circuit.n_clbits = std::max(out.circuit.n_clbits, f.circuit.n_clbits);
    out.circuit.append(f.circuit);
    out.clbits.push_back(clbit);
    out.sign *= f.sign;
    ++clbit;
  }
  return out;
}

// --- full gate circuits -------------------------------------------------------

// Initialization followed by the three measurement fragments of the gate's
// protocol (classical bits 0..2 in chronological order).
inline Circuit build_gate_circuit(GateId g, const std::vector<LogicalLabel>& labels) {
  const EncodingId enc =
      g == GateId::I && labels.size() == 2 ? EncodingId::Y2 : gate_encoding(g);
  Circuit c = build_init_circuit(enc, labels);
  auto axes = gate_sequence(g);
  c.n_clbits = int(axes.size());
  c.barrier();
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (k > 0) c.barrier();
    c.append(axis_fragment(axes[k], int(k)));
  }
  return c;
}

}  // namespace ybraid

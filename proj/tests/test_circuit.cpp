#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "ybraid/circuit.hpp"
#include "ybraid/encoding.hpp"
#include "ybraid/linalg.hpp"
#include "ybraid/protocol.hpp"
#include "ybraid/statevector.hpp"
#include "ybraid/tomography.hpp"

using namespace ybraid;

namespace {

std::vector<std::string> outcome_strings() {
  std::vector<std::string> out;
  for (int o = 0; o < 8; ++o)
    out.push_back({char('0' + ((o >> 2) & 1)), char('0' + ((o >> 1) & 1)),
                   char('0' + (o & 1))});
  return out;
}

CMat circuit_unitary(const Circuit& c) {
  CMat u(1 << c.n_qubits, 1 << c.n_qubits);
  for (int col = 0; col < u.cols; ++col) {
    StateVector st(c.n_qubits);
    st.amps.assign(st.dim(), 0);
    st.amps[col] = 1;
    for (const auto& op : c.ops)
      if (op.kind == CircuitOp::Kind::Gate) detail::apply_named_gate(st, op);
    for (int row = 0; row < u.rows; ++row) u(row, col) = st.amps[row];
  }
  return u;
}

CMat pauli_matrix(const std::string& q0_first) {
  PauliString p = PauliString::parse(q0_first);
  std::vector<PauliLetter> ls(p.letters.rbegin(), p.letters.rend());
  return pauli_kron(ls);
}

}  // namespace

TEST_CASE("initialization circuits prepare the analytic logical states") {
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2}) {
    const int k = logical_n(id);
    for (const auto& labels : canonical_inputs(k)) {
      auto res = simulate(build_init_circuit(id, labels));
      INFO((id == EncodingId::Y1 ? "Y1 " : "Y2 ") << labels.size() << " labels");
      REQUIRE(fidelity(res.state, build_logical_state(id, labels)) ==
              Catch::Approx(1.0).margin(1e-9));
      REQUIRE(res.probability == Catch::Approx(1.0));
    }
  }
}

TEST_CASE("corrected reference layouts are logged as deviations") {
  REQUIRE(figure_deviations().size() == 4);
  for (const auto& d : figure_deviations()) {
    REQUIRE(!d.circuit.empty());
    REQUIRE(!d.note.empty());
  }
}

TEST_CASE("entangler satisfies the conjugation identity for a tau grid") {
  for (double tau : {0.0, M_PI / 8, M_PI / 4, M_PI / 2}) {
    CMat u = circuit_unitary(build_u023(tau));
    INFO("tau = " << tau);
    REQUIRE((u * pauli_matrix("XIII") * u.adjoint() - pauli_matrix("XIIX"))
                .frobenius() < 1e-9);
    REQUIRE((u * pauli_matrix("YIII") * u.adjoint() - pauli_matrix("YIYI"))
                .frobenius() < 1e-9);
  }
}

TEST_CASE("parity and tilted check circuits realize the projector protocol") {
  for (GateId g : {GateId::S, GateId::Sdg, GateId::T, GateId::Tdg,
                   GateId::RxxP, GateId::RxxM}) {
    const EncodingId enc = gate_encoding(g);
    const int k = logical_n(enc);
    for (const auto& labels : canonical_inputs(k)) {
      Circuit c = build_gate_circuit(g, labels);
      StateVector in = build_logical_state(enc, labels);
      for (const auto& o : outcome_strings()) {
        SimOptions opt;
        opt.forced = &o;
        auto sim = simulate(c, opt);
        auto proto = run_protocol_forced(in, g, o);
        INFO(gate_str(g) << " outcome " << o);
        REQUIRE(sim.bits == o);
        REQUIRE(sim.probability == Catch::Approx(proto.probability).margin(1e-9));
        REQUIRE(fidelity(sim.state, proto.post) == Catch::Approx(1.0).margin(1e-9));
      }
    }
  }
}

TEST_CASE("logical measurement fragments reproduce exact expectations") {
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2}) {
    const int k = logical_n(id);
    StateVector st = build_logical_state(
        id, std::vector<LogicalLabel>(k, LogicalLabel::IPlus));
    for (const auto& label : pauli_labels(k)) {
      if (label.find_first_not_of('I') == std::string::npos) continue;
      LabelFragment frag = build_label_measure(id, label, 0);
      double exact = expectation(st, logical_label_string(id, label));
      const int m = int(frag.clbits.size());
      double from_circuit = 0;
      for (int bits = 0; bits < (1 << m); ++bits) {
        std::string o;
        int eig = 1;
        for (int b = 0; b < m; ++b) {
          o += char('0' + ((bits >> b) & 1));
          if ((bits >> b) & 1) eig = -eig;
        }
        SimOptions opt;
        opt.forced = &o;
        opt.initial = &st;
        try {
          auto res = simulate(frag.circuit, opt);
          from_circuit += frag.sign * eig * res.probability;
        } catch (const std::runtime_error&) {
          // zero-probability branch contributes nothing
        }
      }
      INFO((id == EncodingId::Y1 ? "Y1 " : "Y2 ") << label);
      REQUIRE(from_circuit == Catch::Approx(exact).margin(1e-9));
    }
  }
}

TEST_CASE("circuit builders validate their arguments") {
  Circuit c(2, 1);
  REQUIRE_THROWS_AS(c.gate("h", {5}), std::out_of_range);
  REQUIRE_THROWS_AS(c.measure(0, 'w', 0), std::invalid_argument);
  REQUIRE_THROWS_AS(c.measure(0, 'z', 3), std::out_of_range);
  c.measure(0, 'z', 0);
  REQUIRE_THROWS_AS(c.measure(1, 'z', 0), std::invalid_argument);  // clbit reuse
  REQUIRE_THROWS_AS(
      build_init_circuit(EncodingId::Y1,
                         {LogicalLabel::Zero, LogicalLabel::Zero}),
      std::invalid_argument);
}

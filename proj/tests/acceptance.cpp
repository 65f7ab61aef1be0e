// Acceptance harness: evaluates the 11 release criteria and prints one
// PASS/FAIL line each. Two criteria are knowingly red (the published gauge
// prose for the second encoded basis state, and the published T-column frame
// letters); the harness records them honestly and exits 0 exactly when the
// observed status vector matches this frozen expectation.

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ybraid/circuit.hpp"
#include "ybraid/encoding.hpp"
#include "ybraid/experiment.hpp"
#include "ybraid/linalg.hpp"
#include "ybraid/noise.hpp"
#include "ybraid/protocol.hpp"
#include "ybraid/qasm.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"
#include "ybraid/tomography.hpp"

using namespace ybraid;

namespace {

const std::vector<GateId> kRz = {GateId::S, GateId::Sdg, GateId::T, GateId::Tdg};
const std::vector<GateId> kAll = {GateId::S, GateId::Sdg, GateId::T,
                                  GateId::Tdg, GateId::RxxP, GateId::RxxM};

std::vector<std::string> outcome_strings() {
  std::vector<std::string> out;
  for (int o = 0; o < 8; ++o)
    out.push_back({char('0' + ((o >> 2) & 1)), char('0' + ((o >> 1) & 1)),
                   char('0' + (o & 1))});
  return out;
}

// 1. Gauge fixture: the quoted sign conventions require both Y1 basis states
// to be -1 eigenstates of W1, W2 and h with n = -/+1; the Y2 tensor states
// must realize the frozen ten-operator eigenvalue table.
bool criterion1(std::string& note) {
  bool ok = true;
  auto y1 = logical_basis(EncodingId::Y1);
  for (std::size_t b = 0; b < y1.size(); ++b)
    for (const auto& g : gauge_ops(EncodingId::Y1)) {
      if (g.name == "W3") continue;  // dependent operator, reported only
      double want = g.name == "n" ? (b == 0 ? -1.0 : 1.0) : -1.0;
      double got = expectation(y1[b], g.op);
      if (std::abs(got - want) > 1e-12) {
        ok = false;
        if (note.empty())
          note = g.name + " on basis state " + std::to_string(b) + " is " +
                 (got > 0 ? "+1" : "-1") + ", quoted convention wants " +
                 (want > 0 ? "+1" : "-1") +
                 " (any logical X string anticommutes with W2)";
      }
    }
  auto y2 = logical_basis(EncodingId::Y2);
  for (std::size_t b = 0; b < y2.size(); ++b)
    for (const auto& g : gauge_ops(EncodingId::Y2))
      if (std::abs(expectation(y2[b], g.op) - g.expected[b]) > 1e-12) {
        ok = false;
        if (note.empty()) note = "Y2 " + g.name + " off the frozen table";
      }
  return ok;
}

// 2. Conditional phases: the all -1 outcome branch acts as
// diag(e^{-i tau/2}, e^{+i tau/2}) (conjugated for the daggers).
bool criterion2(std::string& note) {
  for (GateId g : kRz)
    if (!proportional(conditional_logical_action(g, "111"), ideal_logical(g), 1e-9)) {
      note = gate_str(g);
      return false;
    }
  return true;
}

// 3. Frame tables vs the reference tabulation, 8/8 rows per column.
bool criterion3(std::string& note) {
  bool ok = true;
  for (GateId g : kAll) {
    std::string rows;
    for (const auto& row : derive_frame_table(g))
      if (!row.matches_reference) rows += (rows.empty() ? "" : ",") + row.outcomes;
    if (!rows.empty()) {
      ok = false;
      if (note.empty())
        note = gate_str(g) + " column differs on rows " + rows +
               " (derived corrections need an extra logical S factor)";
    }
  }
  return ok;
}

// 4. Corrected branch outputs reach the ideal gate output for every gate,
// branch and canonical input.
bool criterion4(std::string& note) {
  for (GateId g : kAll) {
    const EncodingId enc = gate_encoding(g);
    const int k = logical_n(enc);
    const CMat ideal = ideal_logical(g);
    for (const auto& labels : canonical_inputs(k)) {
      StateVector in = build_logical_state(enc, labels);
      auto ket = logical_ket(labels);
      std::vector<cplx> target(ket.size());
      for (int r = 0; r < int(ket.size()); ++r)
        for (int c = 0; c < int(ket.size()); ++c) target[r] += ideal(r, c) * ket[c];
      for (const auto& o : outcome_strings()) {
        auto res = run_protocol_forced(in, g, o);
        CMat cmat = correction_matrix(res.correction);
        CMat rho = cmat * exact_logical_density(res.post, enc) * cmat.adjoint();
        if (std::abs(state_fidelity(rho, target) - 1.0) > 1e-9) {
          note = gate_str(g) + " outcome " + o;
          return false;
        }
      }
    }
  }
  return true;
}

// 5. Sampled outcome statistics at 2^15 shots, 5 sigma binomial bands.
bool criterion5(std::string& note) {
  StateVector in = build_logical_state(EncodingId::Y1, {LogicalLabel::Plus});
  const int shots = 32768;
  auto tally = [&](GateId g) {
    std::map<std::string, int> counts;
    for (int s = 0; s < shots; ++s) {
      RngStream rng(11, s, RngStream::kMeasure);
      counts[run_protocol_sampled(in, g, rng).outcomes]++;
    }
    return counts;
  };
  auto s_counts = tally(GateId::S);
  auto t_counts = tally(GateId::T);
  const double heavy = std::pow(std::cos(M_PI / 8), 2) / 4;
  for (const auto& o : outcome_strings()) {
    double ps = 0.125;
    if (std::abs(double(s_counts[o]) / shots - ps) >
        5 * std::sqrt(ps * (1 - ps) / shots)) {
      note = "S branch " + o;
      return false;
    }
    double pt = (o[0] == o[1]) ? heavy : 0.25 - heavy;
    if (std::abs(double(t_counts[o]) / shots - pt) >
        5 * std::sqrt(pt * (1 - pt) / shots)) {
      note = "T branch " + o;
      return false;
    }
  }
  return true;
}

// 6. Noiseless process fidelities: exact = 1 within 1e-9, sampled within
// 3 sigma of 1 at 2^15 shots per observable.
bool criterion6(std::string& note) {
  const std::vector<GateId> gates = {GateId::I, GateId::S, GateId::Sdg, GateId::T,
                                     GateId::Tdg, GateId::RxxP, GateId::RxxM};
  for (GateId g : gates) {
    ExperimentConfig cfg;
    cfg.gate = g;
    cfg.exact = true;
    if (std::abs(run_experiment(cfg).process_fidelity - 1.0) > 1e-9) {
      note = gate_str(g) + " exact";
      return false;
    }
    cfg.exact = false;
    cfg.shots = 32768;
    cfg.seed = 7;
    auto res = run_experiment(cfg);
    if (std::abs(res.process_fidelity - 1.0) > 3 * res.process_stderr) {
      note = gate_str(g) + " sampled";
      return false;
    }
  }
  return true;
}

// 7. Circuit layer: every gate-circuit branch matches the projector protocol;
// every initialization circuit hits its analytic state (the corrected layouts
// are logged as deviations).
bool criterion7(std::string& note) {
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2})
    for (const auto& labels : canonical_inputs(logical_n(id))) {
      auto res = simulate(build_init_circuit(id, labels));
      if (std::abs(fidelity(res.state, build_logical_state(id, labels)) - 1.0) > 1e-9) {
        note = "initialization circuit";
        return false;
      }
    }
  if (figure_deviations().empty()) {
    note = "missing deviation log";
    return false;
  }
  for (GateId g : kAll) {
    const EncodingId enc = gate_encoding(g);
    for (const auto& labels : canonical_inputs(logical_n(enc))) {
      Circuit c = build_gate_circuit(g, labels);
      StateVector in = build_logical_state(enc, labels);
      for (const auto& o : outcome_strings()) {
        SimOptions opt;
        opt.forced = &o;
        auto sim = simulate(c, opt);
        auto proto = run_protocol_forced(in, g, o);
        if (std::abs(sim.probability - proto.probability) > 1e-9 ||
            std::abs(fidelity(sim.state, proto.post) - 1.0) > 1e-9) {
          note = gate_str(g) + " branch " + o;
          return false;
        }
      }
    }
  }
  return true;
}

// 8. Entangler conjugation identity as matrices over a tau grid.
bool criterion8(std::string& note) {
  auto pauli_matrix = [](const std::string& q0_first) {
    PauliString p = PauliString::parse(q0_first);
    std::vector<PauliLetter> ls(p.letters.rbegin(), p.letters.rend());
    return pauli_kron(ls);
  };
  for (double tau : {0.0, M_PI / 8, M_PI / 4, M_PI / 2}) {
    Circuit uc = build_u023(tau);
    CMat u(16, 16);
    for (int col = 0; col < 16; ++col) {
      StateVector st(4);
      st.amps.assign(16, 0);
      st.amps[col] = 1;
      for (const auto& op : uc.ops)
        if (op.kind == CircuitOp::Kind::Gate) detail::apply_named_gate(st, op);
      for (int row = 0; row < 16; ++row) u(row, col) = st.amps[row];
    }
    if ((u * pauli_matrix("XIII") * u.adjoint() - pauli_matrix("XIIX")).frobenius() > 1e-9 ||
        (u * pauli_matrix("YIII") * u.adjoint() - pauli_matrix("YIYI")).frobenius() > 1e-9) {
      note = "tau = " + std::to_string(tau);
      return false;
    }
  }
  return true;
}

// 9. Tomography oracles: depolarizing process fidelity 1 - 3p/4 and the
// readout attenuation factor 1 - 2 p_ro.
bool criterion9(std::string& note) {
  for (double p : {0.1, 0.2}) {
    GateRunner runner = [p](const std::vector<LogicalLabel>& labels) {
      auto ket = logical_ket(labels);
      CMat rho(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) rho(r, c) = ket[r] * std::conj(ket[c]);
      CMat out = cplx(1 - p, 0) * rho;
      return out + cplx(p / 2, 0) * CMat::identity(2);
    };
    double f = process_fidelity(process_tomography(runner, 1), CMat::identity(2));
    if (std::abs(f - (1.0 - 3.0 * p / 4.0)) > 1e-6) {
      note = "depolarizing p = " + std::to_string(p);
      return false;
    }
  }
  for (double p_ro : {0.1, 0.25})
    for (double e : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
      // exact composition of the flip channel with the Born distribution
      double p_minus = 0.5 * (1.0 - e);
      double flipped = p_minus * (1.0 - p_ro) + (1.0 - p_minus) * p_ro;
      double attenuated = 1.0 - 2.0 * flipped;
      if (std::abs(attenuated - (1.0 - 2.0 * p_ro) * e) > 1e-6) {
        note = "attenuation formula";
        return false;
      }
    }
  // Monte Carlo corroboration that flip_readout realizes that channel
  const int shots = 200000;
  long sum = 0;
  for (int s = 0; s < shots; ++s) {
    RngStream rng(8, s, RngStream::kReadout);
    sum += flip_readout(+1, 0.25, rng);
  }
  if (std::abs(double(sum) / shots - 0.5) > 5.0 / std::sqrt(double(shots))) {
    note = "flip_readout sampling";
    return false;
  }
  return true;
}

// 10. Noise direction with the calibration-derived defaults: identity above
// the quarter-turn gates above the eighth-turn gates, and the short encoding
// degrades less than the pair encoding at equal idle noise.
bool criterion10(std::string& note) {
  auto fidelity_of = [](GateId g, const NoiseModel& m, int shots) {
    ExperimentConfig cfg;
    cfg.gate = g;
    cfg.shots = shots;
    cfg.seed = 1;
    cfg.exact = false;
    cfg.noise = m;
    return run_experiment(cfg).process_fidelity;
  };
  NoiseModel defaults = NoiseModel::defaults();
  double fi = fidelity_of(GateId::I, defaults, 8192);
  double fs = std::max(fidelity_of(GateId::S, defaults, 8192),
                       fidelity_of(GateId::Sdg, defaults, 8192));
  double fs_min = std::min(fidelity_of(GateId::S, defaults, 8192),
                           fidelity_of(GateId::Sdg, defaults, 8192));
  double ft = std::max(fidelity_of(GateId::T, defaults, 8192),
                       fidelity_of(GateId::Tdg, defaults, 8192));
  if (!(fi > fs && fs_min > ft)) {
    note = "default-noise ordering";
    return false;
  }
  NoiseModel idle{0, 0, 0, 0.02};
  double y1 = fidelity_of(GateId::S, idle, 1024);
  double y2 = fidelity_of(GateId::RxxP, idle, 1024);
  if (!(y1 > y2)) {
    note = "idle-noise encoding comparison";
    return false;
  }
  return true;
}

// 11. QASM round trip on 1000 random circuits plus every protocol circuit.
Circuit random_circuit(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> nq(2, 4), depth(5, 25), pick(0, 16);
  std::uniform_real_distribution<double> ang(-2 * M_PI, 2 * M_PI);
  const int n = nq(gen);
  std::uniform_int_distribution<int> qd(0, n - 1);
  Circuit c(n, n);
  static const char* one_q[] = {"h", "x", "y", "z", "s", "sdg", "t",
                                "tdg", "sx", "sxdg", "id"};
  static const char* rot[] = {"rx", "ry", "rz"};
  static const char* two_q[] = {"cx", "cy", "cz"};
  const int d = depth(gen);
  for (int i = 0; i < d; ++i) {
    int what = pick(gen);
    if (what < 11) {
      c.gate(one_q[what], {qd(gen)});
    } else if (what < 14) {
      c.gate(rot[what - 11], {qd(gen)}, {ang(gen)});
    } else if (what < 16) {
      int a = qd(gen), b = qd(gen);
      if (a == b) b = (b + 1) % n;
      c.gate(two_q[what - 14], {a, b});
    } else if (n >= 3) {
      int a = qd(gen);
      c.gate("ccx", {a, (a + 1) % n, (a + 2) % n});
    }
  }
  std::uniform_int_distribution<int> basis(0, 2);
  for (int q = 0; q < n; ++q) c.measure(q, "xyz"[basis(gen)], q);
  return c;
}

bool same_behavior(const Circuit& a, const Circuit& b, std::uint64_t seed) {
  for (int s = 0; s < 3; ++s) {
    RngStream ra(seed, s, RngStream::kMeasure), rb(seed, s, RngStream::kMeasure);
    SimOptions oa, ob;
    oa.meas_rng = &ra;
    ob.meas_rng = &rb;
    auto res_a = simulate(a, oa), res_b = simulate(b, ob);
    if (res_a.bits != res_b.bits ||
        std::abs(res_a.probability - res_b.probability) > 1e-12 ||
        std::abs(fidelity(res_a.state, res_b.state) - 1.0) > 1e-12)
      return false;
  }
  return true;
}

bool criterion11(std::string& note) {
  std::mt19937_64 gen(404);
  for (int it = 0; it < 1000; ++it) {
    Circuit c = random_circuit(gen);
    if (!same_behavior(c, parse_qasm(emit_qasm(c)), 50 + it)) {
      note = "random circuit " + std::to_string(it);
      return false;
    }
  }
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2})
    for (const auto& labels : canonical_inputs(logical_n(id))) {
      Circuit c = build_init_circuit(id, labels);
      if (!same_behavior(c, parse_qasm(emit_qasm(c)), 3)) {
        note = "initialization circuit";
        return false;
      }
    }
  for (GateId g : kAll) {
    std::vector<LogicalLabel> labels(logical_n(gate_encoding(g)), LogicalLabel::IPlus);
    Circuit c = build_gate_circuit(g, labels);
    if (!same_behavior(c, parse_qasm(emit_qasm(c)), 3)) {
      note = gate_str(g) + " circuit";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    bool (*fn)(std::string&);
    bool expected;  // frozen expected status, true = PASS
  };
  const Entry entries[] = {
      {"encoding gauge fixture (quoted sign conventions)", criterion1, false},
      {"conditional phases on the all-minus branch", criterion2, true},
      {"frame tables vs the reference tabulation", criterion3, false},
      {"gate determinism over all branches and inputs", criterion4, true},
      {"sampled outcome statistics (5 sigma)", criterion5, true},
      {"noiseless process fidelities, exact and sampled", criterion6, true},
      {"circuit layer equivalence and initializations", criterion7, true},
      {"entangler conjugation identity", criterion8, true},
      {"tomography oracles (depolarizing, readout)", criterion9, true},
      {"noise direction with calibration defaults", criterion10, true},
      {"QASM round trip (1000 random + protocol circuits)", criterion11, true},
  };
  bool as_expected = true;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    std::string note;
    bool got = e.fn(note);
    std::printf("criterion %2d: %s  %s%s%s\n", idx, got ? "PASS" : "FAIL",
                e.title, note.empty() ? "" : " -- ", note.c_str());
    if (got != e.expected) {
      as_expected = false;
      std::printf("              ^ status differs from the frozen expectation (%s)\n",
                  e.expected ? "PASS" : "FAIL");
    }
  }
  std::printf("%s\n", as_expected
                          ? "acceptance: observed statuses match the frozen record"
                          : "acceptance: status vector drifted from the frozen record");
  return as_expected ? 0 : 1;
}

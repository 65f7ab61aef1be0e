// Command line harness: verification suites, shot experiments, QASM export,
// frame-table derivation and the calibration fixture dump.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ybraid/circuit.hpp"
#include "ybraid/encoding.hpp"
#include "ybraid/experiment.hpp"
#include "ybraid/linalg.hpp"
#include "ybraid/noise.hpp"
#include "ybraid/pauli.hpp"
#include "ybraid/protocol.hpp"
#include "ybraid/qasm.hpp"
#include "ybraid/report.hpp"
#include "ybraid/statevector.hpp"
#include "ybraid/tomography.hpp"

namespace {

using namespace ybraid;

constexpr double kPi = 3.14159265358979323846;

struct Suite {
  int failures = 0;
  void check(bool ok, const std::string& name) {
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  }
};

StateVector random_state(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  StateVector st(n);
  for (auto& a : st.amps) a = {nd(gen), nd(gen)};
  double s = 0;
  for (const auto& a : st.amps) s += std::norm(a);
  for (auto& a : st.amps) a /= std::sqrt(s);
  return st;
}

void suite_algebra(Suite& s) {
  // single-letter products against the hand table
  static const char* tab[4][4] = {
      {"I", "X", "Y", "Z"},
      {"X", "I", "iZ", "-iY"},
      {"Y", "-iZ", "I", "iX"},
      {"Z", "iY", "-iX", "I"},
  };
  bool ok = true;
  const std::string letters = "IXYZ";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      PauliString pa = PauliString::parse(std::string(1, letters[a]));
      PauliString pb = PauliString::parse(std::string(1, letters[b]));
      PauliString pr = mul(pa, pb);
      std::string want = tab[a][b];
      std::complex<double> ph{1, 0};
      if (want.substr(0, 2) == "-i") { ph = {0, -1}; want = want.substr(2); }
      else if (want[0] == 'i') { ph = {0, 1}; want = want.substr(1); }
      ok = ok && letter_char(pr.letters[0]) == want[0] &&
           std::abs(pr.phase() - ph) < 1e-15;
    }
  s.check(ok, "algebra: 1-qubit multiplication table");

  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> letter(0, 3);
  ok = true;
  for (int it = 0; it < 500 && ok; ++it) {
    std::string a, b;
    for (int q = 0; q < 6; ++q) { a += letters[letter(gen)]; b += letters[letter(gen)]; }
    PauliString pa = PauliString::parse(a), pb = PauliString::parse(b);
    PauliString ab = mul(pa, pb), ba = mul(pb, pa);
    std::complex<double> r = ab.phase() / ba.phase();
    ok = ab.letters == ba.letters &&
         std::abs(r - (commutes(pa, pb) ? 1.0 : -1.0)) < 1e-12;
  }
  s.check(ok, "algebra: commutation vs product phase (random strings)");

  ok = true;
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  auto mat_of = [](const PauliString& p) {
    std::vector<PauliLetter> ls(p.letters.rbegin(), p.letters.rend());
    return pauli_kron(ls);
  };
  for (int it = 0; it < 200 && ok; ++it) {
    MeasurementAxis ax{ang(gen) / 2, ang(gen), EncodingId::Y1};
    CMat h(16, 16);
    for (const auto& [c, p] : ax.observable().terms) h = h + c * mat_of(p);
    ok = (h * h - CMat::identity(16)).frobenius() < 1e-12;
  }
  s.check(ok, "algebra: axis observable squares to identity (random theta,phi)");

  ok = true;
  for (int it = 0; it < 50 && ok; ++it) {
    StateVector st = random_state(4, gen);
    MeasurementAxis ax{ang(gen) / 2, ang(gen), EncodingId::Y1};
    auto [pp, post_p] = project(st, ax.observable(), +1);
    auto [pm, post_m] = project(st, ax.observable(), -1);
    ok = std::abs(pp + pm - 1.0) < 1e-12;
  }
  s.check(ok, "algebra: projector completeness p(+1) + p(-1) = 1");
}

void suite_encodings(Suite& s) {
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2}) {
    const std::string tag = id == EncodingId::Y1 ? "Y1" : "Y2";
    auto basis = logical_basis(id);
    bool ortho = true;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        ortho = ortho &&
                std::abs(overlap(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12;
    s.check(ortho, "encodings: " + tag + " basis orthonormal");

    bool gauges = true;
    std::string bad;
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (const auto& g : gauge_ops(id)) {
        double e = expectation(basis[b], g.op);
        if (std::abs(e - g.expected[b]) > 1e-12) {
          gauges = false;
          if (bad.empty()) bad = g.name + " on basis " + std::to_string(b);
        }
      }
    s.check(gauges, "encodings: " + tag + " gauge eigenvalue table" +
                        (bad.empty() ? "" : " (first: " + bad + ")"));

    const int k = logical_n(id);
    bool obs = true;
    for (int q = 0; q < k; ++q) {
      PauliString x = logical_observable(id, q, 'X');
      PauliString y = logical_observable(id, q, 'Y');
      PauliString z = logical_observable(id, q, 'Z');
      obs = obs && !commutes(x, z) && !commutes(x, y) && !commutes(y, z);
      obs = obs && mul(x, z).letters == y.letters;
    }
    s.check(obs, "encodings: " + tag + " logical X/Y/Z anticommute, Y = iXZ");

    bool cal = true;
    for (int q = 0; q < k; ++q) {
      std::vector<LogicalLabel> plus(k, LogicalLabel::Zero), iplus(k, LogicalLabel::Zero);
      plus[q] = LogicalLabel::Plus;
      iplus[q] = LogicalLabel::IPlus;
      cal = cal &&
            std::abs(expectation(build_logical_state(id, plus),
                                 logical_observable(id, q, 'X')) - 1.0) < 1e-12 &&
            std::abs(expectation(build_logical_state(id, iplus),
                                 logical_observable(id, q, 'Y')) - 1.0) < 1e-12 &&
            std::abs(expectation(basis[0], logical_observable(id, q, 'Z')) - 1.0) < 1e-12;
    }
    s.check(cal, "encodings: " + tag + " Bloch calibration of |+>, |i+>, |0>");

    bool weight = true;
    for (const auto& b : basis) weight = weight && in_codespace(b, id);
    s.check(weight, "encodings: " + tag + " basis states lie in the codespace");
  }
}

void suite_appendix_b(Suite& s) {
  for (GateId g : {GateId::S, GateId::Sdg, GateId::T, GateId::Tdg,
                   GateId::RxxP, GateId::RxxM}) {
    CMat action = conditional_logical_action(g, "111");
    bool ok = proportional(action, ideal_logical(g), 1e-9);
    s.check(ok, "appendixB: " + gate_str(g) +
                    " outcome 111 acts as the ideal gate (up to phase)");
  }
}

void suite_frames(Suite& s) {
  for (GateId g : {GateId::S, GateId::Sdg, GateId::T, GateId::Tdg,
                   GateId::RxxP, GateId::RxxM}) {
    auto derived = derive_frame_table(g);
    const auto& frozen = frame_table(g);
    bool ok = true;
    std::string bad;
    for (const auto& row : derived) {
      const auto& f = frozen.at(row.outcomes);
      if (row.correction.paulis != f.paulis || row.correction.s_power != f.s_power) {
        ok = false;
        if (bad.empty()) bad = row.outcomes;
      }
    }
    s.check(ok, "frames: " + gate_str(g) + " derivation matches the stored table" +
                    (bad.empty() ? "" : " (row " + bad + ")"));

    std::map<std::string, int> counts;
    for (const auto& row : derived) ++counts[row.correction.str()];
    bool twice = counts.size() == 4;
    for (const auto& [_, c] : counts) twice = twice && c == 2;
    s.check(twice, "frames: " + gate_str(g) + " each correction covers exactly 2 branches");

    const EncodingId enc = gate_encoding(g);
    StateVector in = build_logical_state(
        enc, std::vector<LogicalLabel>(logical_n(enc), LogicalLabel::Zero));
    double total = 0;
    for (const auto& row : derived)
      total += run_protocol_forced(in, g, row.outcomes).probability;
    s.check(std::abs(total - 1.0) < 1e-12,
            "frames: " + gate_str(g) + " branch probabilities sum to 1");
  }
}

void suite_circuits(Suite& s) {
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2}) {
    const int k = logical_n(id);
    bool ok = true;
    for (int idx = 0; idx < (k == 1 ? 4 : 16); ++idx) {
      auto labels = canonical_inputs(k)[idx];
      auto res = simulate(build_init_circuit(id, labels));
      ok = ok && std::abs(fidelity(res.state, build_logical_state(id, labels)) - 1.0) < 1e-9;
    }
    s.check(ok, std::string("circuits: ") + (id == EncodingId::Y1 ? "Y1" : "Y2") +
                    " initialization circuits hit the analytic states");
  }

  bool conj = true;
  for (double tau : {0.0, kPi / 8, kPi / 4, kPi / 2}) {
    Circuit u = build_u023(tau);
    CMat um(16, 16);
    for (int col = 0; col < 16; ++col) {
      StateVector st(4);
      st.amps.assign(16, 0);
      st.amps[col] = 1;
      for (const auto& op : u.ops) detail::apply_named_gate(st, op);
      for (int row = 0; row < 16; ++row) um(row, col) = st.amps[row];
    }
    auto mat_of = [](const std::string& s) {
      PauliString p = PauliString::parse(s);
      std::vector<PauliLetter> ls(p.letters.rbegin(), p.letters.rend());
      return pauli_kron(ls);
    };
    CMat x0 = mat_of("XIII"), y0 = mat_of("YIII");
    CMat x03 = mat_of("XIIX"), y02 = mat_of("YIYI");
    conj = conj && (um * x0 * um.adjoint() - x03).frobenius() < 1e-9 &&
           (um * y0 * um.adjoint() - y02).frobenius() < 1e-9;
  }
  s.check(conj, "circuits: entangler conjugation X0 -> X0X3, Y0 -> Y0Y2");

  bool equiv = true;
  for (GateId g : {GateId::S, GateId::Sdg, GateId::T, GateId::Tdg,
                   GateId::RxxP, GateId::RxxM}) {
    const EncodingId enc = gate_encoding(g);
    const int k = logical_n(enc);
    std::vector<LogicalLabel> labels(k, LogicalLabel::Plus);
    Circuit c = build_gate_circuit(g, labels);
    StateVector in = build_logical_state(enc, labels);
    for (const auto& row : frame_table(g)) {
      SimOptions opt;
      opt.forced = &row.first;
      auto sim = simulate(c, opt);
      auto proto = run_protocol_forced(in, g, row.first);
      equiv = equiv && std::abs(sim.probability - proto.probability) < 1e-9 &&
              std::abs(fidelity(sim.state, proto.post) - 1.0) < 1e-9;
    }
  }
  s.check(equiv, "circuits: gate circuits match the projector protocol on all branches");

  bool rt = true;
  for (GateId g : {GateId::S, GateId::T, GateId::RxxP}) {
    const EncodingId enc = gate_encoding(g);
    std::vector<LogicalLabel> labels(logical_n(enc), LogicalLabel::Zero);
    Circuit c = build_gate_circuit(g, labels);
    Circuit back = parse_qasm(emit_qasm(c));
    const std::string forced = "111";
    SimOptions opt;
    opt.forced = &forced;
    auto a = simulate(c, opt), b = simulate(back, opt);
    rt = rt && std::abs(fidelity(a.state, b.state) - 1.0) < 1e-12 &&
         std::abs(a.probability - b.probability) < 1e-12;
    Circuit low = lower_circuit(c);
    auto l = simulate(low, opt);
    rt = rt && std::abs(fidelity(a.state, l.state) - 1.0) < 1e-9;
  }
  s.check(rt, "circuits: QASM emit/parse round-trip and basis lowering agree");

  s.check(figure_deviations().size() == 4,
          "circuits: all corrected reference layouts are logged");
}

int cmd_verify(const std::string& suite) {
  Suite s;
  if (suite == "algebra" || suite == "all") suite_algebra(s);
  if (suite == "encodings" || suite == "all") suite_encodings(s);
  if (suite == "appendixB" || suite == "all") suite_appendix_b(s);
  if (suite == "frames" || suite == "all") suite_frames(s);
  if (suite == "circuits" || suite == "all") suite_circuits(s);
  if (s.failures == 0) {
    std::cout << "verify " << suite << ": all checks passed\n";
    return 0;
  }
  std::cout << "verify " << suite << ": " << s.failures << " check(s) failed\n";
  return 1;
}

// Stream selected by --out, falling back to stdout.
struct OutputTarget {
  std::ofstream file;
  std::ostream* out = &std::cout;
  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path);
    if (!file) return false;
    out = &file;
    return true;
  }
};

int cmd_experiment(const ExperimentConfig& cfg, const std::string& out_path,
                   const std::string& format, bool dump_rho) {
  ExperimentResult res = run_experiment(cfg);
  OutputTarget target;
  if (!target.open(out_path)) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 3;
  }
  auto rows = experiment_rows(cfg, res);
  if (format == "csv") {
    write_csv(*target.out, rows);
  } else {
    write_txt(*target.out, rows);
    if (dump_rho) {
      for (const auto& ir : res.inputs) {
        std::string input;
        for (std::size_t q = 0; q < ir.labels.size(); ++q)
          input += (q ? "," : "") + label_str(ir.labels[q]);
        write_matrix(*target.out, ir.rho, "rho(" + input + ")");
      }
      write_matrix(*target.out, res.choi, "choi");
    }
  }
  return 0;
}

int cmd_export(GateId gate, const std::string& labels_arg, bool lower,
               const std::string& out_path) {
  const EncodingId enc = gate_encoding(gate);
  std::vector<LogicalLabel> labels(logical_n(enc), LogicalLabel::Zero);
  if (!labels_arg.empty()) {
    labels = parse_labels(labels_arg);
    if (int(labels.size()) != logical_n(enc)) {
      std::cerr << "error: " << gate_str(gate) << " needs " << logical_n(enc)
                << " label(s), got " << labels.size() << "\n";
      return 2;
    }
  }
  Circuit c = build_gate_circuit(gate, labels);
  if (lower) c = lower_circuit(c);
  OutputTarget target;
  if (!target.open(out_path)) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 3;
  }
  *target.out << emit_qasm(c);
  return 0;
}

int cmd_derive_frames(GateId gate, const std::string& out_path) {
  OutputTarget target;
  if (!target.open(out_path)) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 3;
  }
  auto& out = *target.out;
  out << "gate " << gate_str(gate) << " frame corrections (derived by brute force)\n";
  out << "outcomes  correction  reference  provenance\n";
  const auto& ref = reference_frame_letters(gate);
  for (const auto& row : derive_frame_table(gate)) {
    out << row.outcomes << "       " << row.correction.str();
    for (std::size_t i = row.correction.str().size(); i < 12; ++i) out << ' ';
    out << ref.at(row.outcomes) << "         "
        << (row.matches_reference ? "matches reference tabulation"
                                  : "derived (reference row differs)")
        << "\n";
  }
  return 0;
}

int cmd_calibrate(const std::string& out_path) {
  OutputTarget target;
  if (!target.open(out_path)) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 3;
  }
  auto& out = *target.out;
  out << "# frozen calibration fixture: gauge eigenvalues and logical sign conventions\n";
  for (EncodingId id : {EncodingId::Y1, EncodingId::Y2}) {
    const std::string tag = id == EncodingId::Y1 ? "Y1" : "Y2";
    const int k = logical_n(id);
    out << "\n[" << tag << ".gauge]\n";
    for (const auto& g : gauge_ops(id)) {
      out << g.name << " " << g.op.str() << " expected";
      for (int v : g.expected) out << " " << (v > 0 ? "+1" : "-1");
      out << "\n";
    }
    out << "\n[" << tag << ".logical]\n";
    for (int q = 0; q < k; ++q)
      for (char axis : {'X', 'Y', 'Z'})
        out << "Q" << q << "." << axis << " = "
            << logical_observable(id, q, axis).str() << "\n";
  }
  out << "\n[landing]\n";
  out << "# sector gauge after the closing parity check, keyed by the last outcome bit\n";
  out << "Y1.h last=0 -> +1, last=1 -> -1\n";
  out << "Y2.hA last=0 -> +1, last=1 -> -1\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurement-based geometric gate simulator harness"};
  app.require_subcommand(1);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember({"algebra", "encodings", "appendixB", "frames",
                             "circuits", "all"}));

  std::string gate_name = "S";
  std::string labels_arg, noise_path, out_path, format = "txt";
  int shots = 32768;
  std::uint64_t seed = 0;
  bool exact = false, lower = false, dump_rho = false;
  int threads = 0;

  auto* experiment = app.add_subcommand("experiment", "tomography experiment for one gate");
  experiment->add_option("--gate", gate_name, "gate id")
      ->check(CLI::IsMember({"S", "Sdg", "T", "Tdg", "RxxP", "RxxM", "I"}));
  experiment->add_option("--shots", shots, "shots per observable")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", seed, "rng seed");
  experiment->add_flag("--exact", exact, "exact expectations instead of sampling");
  experiment->add_option("--noise", noise_path, "noise model file (key=value)");
  experiment->add_option("--out", out_path, "output file (default stdout)");
  experiment->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "txt"}));
  experiment->add_flag("--dump-rho", dump_rho, "append density matrix grids (txt only)");
  experiment->add_option("--threads", threads, "worker threads (0 = auto)");
  experiment->add_flag("--pair", "run the identity gate on the two-qubit encoding");

  auto* exp_cmd = app.add_subcommand("export", "emit a gate circuit as OpenQASM 3");
  exp_cmd->add_option("--gate", gate_name, "gate id")
      ->check(CLI::IsMember({"S", "Sdg", "T", "Tdg", "RxxP", "RxxM", "I"}));
  exp_cmd->add_option("--labels", labels_arg, "comma separated input labels, e.g. 0,+");
  exp_cmd->add_flag("--lower", lower, "lower to the {cz,rx,rz,sx,x,id} basis");
  exp_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* derive = app.add_subcommand("derive-frames", "derive a frame correction table");
  derive->add_option("--gate", gate_name, "gate id")
      ->check(CLI::IsMember({"S", "Sdg", "T", "Tdg", "RxxP", "RxxM"}));
  derive->add_option("--out", out_path, "output file (default stdout)");

  auto* calibrate = app.add_subcommand("calibrate", "emit the calibration fixture");
  calibrate->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite);
    if (experiment->parsed()) {
      ExperimentConfig cfg;
      cfg.gate = parse_gate(gate_name);
      cfg.enc = experiment->count("--pair") ? EncodingId::Y2 : EncodingId::Y1;
      cfg.shots = shots;
      cfg.seed = seed;
      cfg.exact = exact;
      cfg.threads = threads;
      if (!noise_path.empty()) {
        if (exact) {
          std::cerr << "error: --noise requires sampled mode\n";
          return 2;
        }
        try {
          cfg.noise = NoiseModel::from_file(noise_path);
        } catch (const std::exception& e) {
          std::cerr << "error: " << e.what() << "\n";
          return 3;
        }
      }
      return cmd_experiment(cfg, out_path, format, dump_rho);
    }
    if (exp_cmd->parsed()) return cmd_export(parse_gate(gate_name), labels_arg, lower, out_path);
    if (derive->parsed()) return cmd_derive_frames(parse_gate(gate_name), out_path);
    if (calibrate->parsed()) return cmd_calibrate(out_path);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

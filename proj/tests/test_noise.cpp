#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ybraid/circuit.hpp"
#include "ybraid/encoding.hpp"
#include "ybraid/experiment.hpp"
#include "ybraid/noise.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"

using namespace ybraid;

TEST_CASE("noise config parsing accepts key=value with comments") {
  std::istringstream in(
      "# defaults, tightened readout\n"
      "p1 = 1e-4\n"
      "p2=2e-3\n"
      "\n"
      "p_ro = 0.01\n"
      "p_idle = 0\n");
  NoiseModel m = NoiseModel::from_stream(in);
  REQUIRE(m.p1 == Catch::Approx(1e-4));
  REQUIRE(m.p2 == Catch::Approx(2e-3));
  REQUIRE(m.p_ro == Catch::Approx(0.01));
  REQUIRE(m.p_idle == 0.0);

  std::istringstream bad_key("frobnicate = 0.1\n");
  REQUIRE_THROWS_AS(NoiseModel::from_stream(bad_key), std::runtime_error);
  std::istringstream bad_value("p1 = 1.5\n");
  REQUIRE_THROWS_AS(NoiseModel::from_stream(bad_value), std::invalid_argument);
  REQUIRE_THROWS_AS(NoiseModel::from_file("/nonexistent/noise.cfg"),
                    std::runtime_error);
}

TEST_CASE("channels preserve the state norm per shot") {
  NoiseModel m{1.0, 1.0, 0.5, 1.0};
  StateVector st = build_logical_state(EncodingId::Y1, {LogicalLabel::Plus});
  for (int s = 0; s < 100; ++s) {
    RngStream rng(2, s, RngStream::kNoise);
    apply_gate_noise(st, {0, 1}, m, rng);
    apply_idle_noise(st, {2, 3}, m, rng);
    REQUIRE(std::abs(st.norm2() - 1.0) < 1e-12);
  }
}

TEST_CASE("zero noise model reproduces noiseless results bit for bit") {
  ExperimentConfig plain;
  plain.gate = GateId::S;
  plain.shots = 512;
  plain.seed = 21;
  plain.exact = false;
  ExperimentConfig with_zero = plain;
  with_zero.noise = NoiseModel{0, 0, 0, 0};
  auto a = run_experiment(plain);
  auto b = run_experiment(with_zero);
  REQUIRE(a.process_fidelity == b.process_fidelity);
  for (std::size_t i = 0; i < a.inputs.size(); ++i)
    REQUIRE(a.inputs[i].state_fidelity == b.inputs[i].state_fidelity);
}

TEST_CASE("readout flips attenuate expectations by 1 - 2 p_ro") {
  const double p_ro = 0.23;
  const int shots = 400000;
  long sum = 0;
  for (int s = 0; s < shots; ++s) {
    RngStream rng(4, s, RngStream::kReadout);
    sum += flip_readout(+1, p_ro, rng);
  }
  double mean = double(sum) / shots;
  double want = 1.0 - 2.0 * p_ro;
  REQUIRE(std::abs(mean - want) < 5.0 / std::sqrt(double(shots)));

  // p_ro = 0.5 erases the signal
  sum = 0;
  for (int s = 0; s < shots; ++s) {
    RngStream rng(5, s, RngStream::kReadout);
    sum += flip_readout(+1, 0.5, rng);
  }
  REQUIRE(std::abs(double(sum) / shots) < 5.0 / std::sqrt(double(shots)));
}

TEST_CASE("full depolarization shrinks <Z> toward the -1/3 mixture") {
  // p1 = 1 replaces the qubit's Bloch vector by a uniform non-identity Pauli
  // kick; averaged over shots <Z> -> -<Z>/3.
  NoiseModel m{1.0, 0, 0, 0};
  PauliString z = PauliString::parse("+Z");
  const int shots = 300000;
  double acc = 0;
  for (int s = 0; s < shots; ++s) {
    StateVector st(1);  // <Z> = +1
    RngStream rng(6, s, RngStream::kNoise);
    apply_gate_noise(st, {0}, m, rng);
    acc += expectation(st, z);
  }
  REQUIRE(std::abs(acc / shots + 1.0 / 3.0) < 5.0 / std::sqrt(double(shots)));
}

TEST_CASE("gate noise with defaults lowers the sampled process fidelity") {
  ExperimentConfig cfg;
  cfg.gate = GateId::S;
  cfg.shots = 2048;
  cfg.seed = 9;
  cfg.exact = false;
  cfg.noise = NoiseModel::defaults();
  auto noisy = run_experiment(cfg);
  cfg.noise = NoiseModel{};
  auto clean = run_experiment(cfg);
  REQUIRE(noisy.process_fidelity < clean.process_fidelity - 0.02);
}

TEST_CASE("exact mode refuses a nonzero noise model") {
  ExperimentConfig cfg;
  cfg.gate = GateId::S;
  cfg.exact = true;
  cfg.noise = NoiseModel::defaults();
  REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ybraid/pauli.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/statevector.hpp"

using namespace ybraid;

namespace {

StateVector random_state(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  StateVector st(n);
  for (auto& a : st.amps) a = {nd(gen), nd(gen)};
  st.normalize();
  return st;
}

}  // namespace

TEST_CASE("named gates act as expected on |0> and |1>") {
  StateVector st(1);
  apply_1q(st, gates::H(), 0);
  REQUIRE(std::abs(st.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  REQUIRE(std::abs(st.amps[1] - 1.0 / std::sqrt(2.0)) < 1e-15);

  // Rz convention: diag(e^{-it/2}, e^{+it/2})
  StateVector one(1);
  apply_1q(one, gates::X(), 0);
  apply_1q(one, gates::Rz(M_PI / 2), 0);
  REQUIRE(std::abs(one.amps[1] - std::polar(1.0, M_PI / 4)) < 1e-15);
}

TEST_CASE("single-qubit gates preserve the norm") {
  std::mt19937_64 gen(3);
  StateVector st = random_state(3, gen);
  for (auto m : {gates::H(), gates::S(), gates::T(), gates::SX(),
                 gates::Rx(0.3), gates::Ry(1.1), gates::Rz(2.2)})
    for (int q = 0; q < 3; ++q) apply_1q(st, m, q);
  REQUIRE(std::abs(st.norm2() - 1.0) < 1e-12);
}

TEST_CASE("apply_pauli matches per-qubit gate application") {
  std::mt19937_64 gen(4);
  StateVector st = random_state(4, gen);
  StateVector a = st, b = st;
  apply_pauli(a, PauliString::parse("-XIYZ"));
  apply_1q(b, gates::X(), 0);
  apply_1q(b, gates::Y(), 2);
  apply_1q(b, gates::Z(), 3);
  for (auto& amp : b.amps) amp = -amp;
  REQUIRE(std::abs(fidelity(a, b) - 1.0) < 1e-12);
  REQUIRE(std::abs(overlap(a, b) - 1.0) < 1e-12);  // equal including phase
}

TEST_CASE("controlled gates: CX truth table and CCX") {
  StateVector st(2);
  apply_1q(st, gates::X(), 0);      // |01> (qubit 0 set)
  apply_c1q(st, gates::X(), 0, 1);  // control q0 -> |11>
  REQUIRE(std::abs(st.amps[3] - 1.0) < 1e-15);

  StateVector t(3);
  apply_1q(t, gates::X(), 0);
  apply_1q(t, gates::X(), 1);
  apply_ccx(t, 0, 1, 2);
  REQUIRE(std::abs(t.amps[7] - 1.0) < 1e-15);
}

TEST_CASE("expectation is real for Hermitian sums and matches projections") {
  std::mt19937_64 gen(7);
  StateVector st = random_state(3, gen);
  PauliSum obs;
  obs.add(0.6, PauliString::parse("+ZZI"));
  obs.add(0.8, PauliString::parse("+XIX"));
  double e = expectation(st, obs);
  auto [pp, post_p] = project(st, obs, +1);
  auto [pm, post_m] = project(st, obs, -1);
  REQUIRE(std::abs(pp + pm - 1.0) < 1e-12);
  REQUIRE(std::abs((pp - pm) - e) < 1e-12);
}

TEST_CASE("measure_forced rejects zero-probability branches") {
  StateVector st(1);  // |0>, a +1 eigenstate of Z
  PauliSum z(PauliString::parse("+Z"));
  auto [rec, post] = measure_forced(st, z, +1);
  REQUIRE(rec.probability == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(measure_forced(st, z, -1), std::runtime_error);
}

TEST_CASE("sampled measurement is Born-distributed and seed-deterministic") {
  StateVector st(1);
  apply_1q(st, gates::Ry(2 * std::acos(std::sqrt(0.3))), 0);  // p(|0>) = 0.3
  PauliSum z(PauliString::parse("+Z"));
  const int shots = 20000;
  int plus = 0;
  for (int s = 0; s < shots; ++s) {
    RngStream rng(42, s, RngStream::kMeasure);
    auto [rec, post] = measure_sampled(st, z, rng);
    if (rec.eigenvalue == +1) ++plus;
  }
  double p = double(plus) / shots;
  REQUIRE(std::abs(p - 0.3) < 5 * std::sqrt(0.3 * 0.7 / shots));

  // identical (seed, shot, stream) keys give identical draws
  int again = 0;
  for (int s = 0; s < shots; ++s) {
    RngStream rng(42, s, RngStream::kMeasure);
    auto [rec, post] = measure_sampled(st, z, rng);
    if (rec.eigenvalue == +1) ++again;
  }
  REQUIRE(again == plus);
}

TEST_CASE("rng streams are independent per (shot, stream) key") {
  RngStream a(1, 0, RngStream::kMeasure), b(1, 0, RngStream::kNoise);
  RngStream c(1, 1, RngStream::kMeasure);
  REQUIRE(a.next_u64() != b.next_u64());
  RngStream a2(1, 0, RngStream::kMeasure);
  a2.next_u64();
  REQUIRE(a2.next_u64() != c.next_u64());
  RngStream a3(1, 0, RngStream::kMeasure);
  RngStream a4(1, 0, RngStream::kMeasure);
  for (int i = 0; i < 100; ++i) REQUIRE(a3.next_u64() == a4.next_u64());
}

#pragma once

// Experiment engine: full tomography pipeline for one gate. Per canonical
// input it produces the frame-corrected, outcome-aggregated logical density
// matrix (exact, shot-sampled, or shot-sampled with trajectory noise), then
// state fidelities against the ideal outputs and the Choi-matrix process
// fidelity.
//
// Sampling is deterministic and thread-count independent: every shot draws
// from counter-based streams keyed by (seed, global shot id, stream), and
// accumulators are integers merged in fixed order.

#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ybraid/circuit.hpp"
#include "ybraid/encoding.hpp"
#include "ybraid/noise.hpp"
#include "ybraid/protocol.hpp"
#include "ybraid/qasm.hpp"
#include "ybraid/report.hpp"
#include "ybraid/rng.hpp"
#include "ybraid/tomography.hpp"

namespace ybraid {

struct ExperimentConfig {
  GateId gate = GateId::S;
  EncodingId enc = EncodingId::Y1;  // only consulted for the identity gate
  int shots = 32768;                // per observable label
  std::uint64_t seed = 0;
  bool exact = true;
  NoiseModel noise{};
  int threads = 0;  // 0 = hardware concurrency
};

struct InputResult {
  std::vector<LogicalLabel> labels;
  DensityMatrix rho{2, 2};
  double state_fidelity = 0;
  double state_stderr = 0;
};

struct ExperimentResult {
  std::vector<InputResult> inputs;
  ChoiMatrix choi{4, 4};
  double process_fidelity = 0;
  double process_stderr = 0;
};

namespace detail {

inline EncodingId experiment_encoding(const ExperimentConfig& cfg) {
  return cfg.gate == GateId::I ? cfg.enc : gate_encoding(cfg.gate);
}

inline std::vector<std::string> outcome_strings(GateId g) {
  const int n = int(gate_sequence(g).size());
  std::vector<std::string> out;
  for (int o = 0; o < (1 << n); ++o) {
    std::string s;
    for (int b = n - 1; b >= 0; --b) s.push_back((o >> b) & 1 ? '1' : '0');
    out.push_back(s);
  }
  return out;
}

inline std::vector<std::string> nontrivial_labels(int k) {
  std::vector<std::string> out;
  for (const auto& l : pauli_labels(k))
    if (l.find_first_not_of('I') != std::string::npos) out.push_back(l);
  return out;
}

inline CMat ideal_matrix(GateId g, int dim) {
  if (g == GateId::I) return CMat::identity(dim);
  return ideal_logical(g);
}

// integer shot tallies: [branch][label] -> (n shots, sum of eigenvalues)
struct ShotStats {
  std::vector<std::vector<long long>> n, s;
  ShotStats(std::size_t branches, std::size_t labels)
      : n(branches, std::vector<long long>(labels, 0)),
        s(branches, std::vector<long long>(labels, 0)) {}
  void merge(const ShotStats& o) {
    for (std::size_t b = 0; b < n.size(); ++b)
      for (std::size_t l = 0; l < n[b].size(); ++l) {
        n[b][l] += o.n[b][l];
        s[b][l] += o.s[b][l];
      }
  }
};

// Aggregate corrected per-branch density matrices with the given weights.
inline DensityMatrix aggregate_branches(const std::vector<DensityMatrix>& rhos,
                                        const std::vector<double>& weights,
                                        GateId g, EncodingId enc,
                                        const std::vector<std::string>& outcomes) {
  const int dim = 1 << logical_n(enc);
  CMat acc(dim, dim);
  double total = 0;
  for (std::size_t o = 0; o < rhos.size(); ++o) {
    if (weights[o] <= 0) continue;
    CMat corr = correction_matrix(lookup_correction(g, enc, outcomes[o]));
    acc = acc + cplx(weights[o], 0) * (corr * rhos[o] * corr.adjoint());
    total += weights[o];
  }
  if (total <= 0) throw std::runtime_error("no populated outcome branches");
  return cplx(1.0 / total, 0) * acc;
}

// Density matrices per branch from integer tallies; branches with an empty
// label cell are dropped (weight 0).
inline DensityMatrix stats_to_density(const ShotStats& stats, GateId g, EncodingId enc,
                                      const std::vector<std::string>& outcomes,
                                      const std::vector<std::string>& labels) {
  const int k = logical_n(enc);
  std::vector<DensityMatrix> rhos;
  std::vector<double> weights;
  for (std::size_t o = 0; o < outcomes.size(); ++o) {
    long long total = 0;
    bool complete = true;
    ExpectationSet exps;
    for (std::size_t l = 0; l < labels.size(); ++l) {
      if (stats.n[o][l] == 0) { complete = false; break; }
      total += stats.n[o][l];
      exps.push_back({labels[l], double(stats.s[o][l]) / double(stats.n[o][l]), 0});
    }
    if (!complete) {
      rhos.push_back(CMat::identity(1 << k));
      weights.push_back(0);
      continue;
    }
    rhos.push_back(reconstruct(exps, k, /*project=*/false));
    weights.push_back(double(total));
  }
  return aggregate_branches(rhos, weights, g, enc, outcomes);
}

}  // namespace detail

// Exact aggregated channel output for one canonical input: the
// probability-weighted sum of corrected branch density matrices.
inline DensityMatrix exact_input_density(GateId g, EncodingId enc,
                                         const std::vector<LogicalLabel>& labels) {
  StateVector st = build_logical_state(enc, labels);
  auto outcomes = detail::outcome_strings(g);
  std::vector<DensityMatrix> rhos;
  std::vector<double> weights;
  for (const auto& o : outcomes) {
    auto res = run_protocol_forced(st, g, o);
    rhos.push_back(exact_logical_density(res.post, enc));
    weights.push_back(res.probability);
  }
  return detail::aggregate_branches(rhos, weights, g, enc, outcomes);
}

namespace detail {

// Shot tallies for one canonical input, noiseless fast path: branch and
// eigenvalue draws against precomputed exact per-branch expectations.
inline ShotStats sampled_stats_fast(const ExperimentConfig& cfg, EncodingId enc,
                                    const std::vector<LogicalLabel>& labels,
                                    std::uint64_t id_base) {
  StateVector st = build_logical_state(enc, labels);
  auto outcomes = outcome_strings(cfg.gate);
  auto obs_labels = nontrivial_labels(logical_n(enc));
  const std::size_t nb = outcomes.size(), nl = obs_labels.size();
  std::vector<double> probs(nb);
  std::vector<std::vector<double>> exps(nb, std::vector<double>(nl));
  for (std::size_t o = 0; o < nb; ++o) {
    auto res = run_protocol_forced(st, cfg.gate, outcomes[o]);
    probs[o] = res.probability;
    for (std::size_t l = 0; l < nl; ++l)
      exps[o][l] = expectation(res.post, logical_label_string(enc, obs_labels[l]));
  }
  const long long total_items = (long long)nl * cfg.shots;
  int nthreads = cfg.threads > 0 ? cfg.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  auto worker = [&](long long lo, long long hi) {
    ShotStats stats(nb, nl);
    for (long long item = lo; item < hi; ++item) {
      const std::size_t l = std::size_t(item / cfg.shots);
      RngStream meas(cfg.seed, id_base + std::uint64_t(item), RngStream::kMeasure);
      double u = meas.next_double();
      std::size_t o = 0;
      double cum = 0;
      for (; o < nb; ++o) {
        cum += probs[o];
        if (u < cum || o == nb - 1) break;
      }
      int eig = meas.next_double() < 0.5 * (1.0 - exps[o][l]) ? -1 : +1;
      ++stats.n[o][l];
      stats.s[o][l] += eig;
    }
    return stats;
  };
  std::vector<std::future<ShotStats>> futs;
  long long chunk = (total_items + nthreads - 1) / nthreads;
  for (long long lo = 0; lo < total_items; lo += chunk)
    futs.push_back(std::async(std::launch::async, worker, lo,
                              std::min(lo + chunk, total_items)));
  ShotStats stats(nb, nl);
  for (auto& f : futs) stats.merge(f.get());
  return stats;
}

// Full trajectory path: every shot simulates init + protocol fragments +
// one logical-label measurement fragment with stochastic Pauli noise.
inline ShotStats sampled_stats_noisy(const ExperimentConfig& cfg, EncodingId enc,
                                     const std::vector<LogicalLabel>& labels,
                                     std::uint64_t id_base) {
  auto outcomes = outcome_strings(cfg.gate);
  auto obs_labels = nontrivial_labels(logical_n(enc));
  const std::size_t nb = outcomes.size(), nl = obs_labels.size();
  const int n_out = int(gate_sequence(cfg.gate).size());
  Circuit base = build_gate_circuit(cfg.gate, labels);
  std::vector<Circuit> circuits;
  std::vector<LabelFragment> frags;
  for (const auto& l : obs_labels) {
    auto lf = build_label_measure(enc, l, n_out);
    Circuit c = base;
    c.n_clbits = lf.circuit.n_clbits;
    c.barrier();
    c.append(lf.circuit);
    circuits.push_back(std::move(c));
    frags.push_back(std::move(lf));
  }
  const long long total_items = (long long)nl * cfg.shots;
  int nthreads = cfg.threads > 0 ? cfg.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  auto worker = [&](long long lo, long long hi) {
    ShotStats stats(nb, nl);
    for (long long item = lo; item < hi; ++item) {
      const std::size_t l = std::size_t(item / cfg.shots);
      const std::uint64_t id = id_base + std::uint64_t(item);
      RngStream meas(cfg.seed, id, RngStream::kMeasure);
      RngStream nrng(cfg.seed, id, RngStream::kNoise);
      RngStream rorng(cfg.seed, id, RngStream::kReadout);
      SimOptions opt;
      opt.meas_rng = &meas;
      if (cfg.noise.enabled()) {
        opt.noise = &cfg.noise;
        opt.noise_rng = &nrng;
        opt.readout_rng = &rorng;
      }
      auto res = simulate(circuits[l], opt);
      std::size_t o = 0;
      for (int b = 0; b < n_out; ++b) o = (o << 1) | (res.bits[b] == '1' ? 1 : 0);
      int eig = frags[l].sign;
      for (int cb : frags[l].clbits)
        if (res.bits[cb] == '1') eig = -eig;
      ++stats.n[o][l];
      stats.s[o][l] += eig;
    }
    return stats;
  };
  std::vector<std::future<ShotStats>> futs;
  long long chunk = (total_items + nthreads - 1) / nthreads;
  for (long long lo = 0; lo < total_items; lo += chunk)
    futs.push_back(std::async(std::launch::async, worker, lo,
                              std::min(lo + chunk, total_items)));
  ShotStats stats(nb, nl);
  for (auto& f : futs) stats.merge(f.get());
  return stats;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.exact && cfg.noise.enabled())
    throw std::invalid_argument("noise requires sampled mode");
  if (!cfg.exact && cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
  const EncodingId enc = detail::experiment_encoding(cfg);
  const int k = logical_n(enc);
  const int dim = 1 << k;
  auto inputs = canonical_inputs(k);
  auto outcomes = detail::outcome_strings(cfg.gate);
  auto obs_labels = detail::nontrivial_labels(k);
  const CMat ideal = detail::ideal_matrix(cfg.gate, dim);

  ExperimentResult result;
  result.choi = ChoiMatrix(dim * dim, dim * dim);
  std::vector<detail::ShotStats> all_stats;
  const std::uint64_t per_input = std::uint64_t(obs_labels.size()) * std::uint64_t(cfg.shots);
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    InputResult ir;
    ir.labels = inputs[idx];
    if (cfg.exact) {
      ir.rho = exact_input_density(cfg.gate, enc, inputs[idx]);
    } else {
      auto stats = cfg.noise.enabled()
                       ? detail::sampled_stats_noisy(cfg, enc, inputs[idx], idx * per_input)
                       : detail::sampled_stats_fast(cfg, enc, inputs[idx], idx * per_input);
      ir.rho = detail::stats_to_density(stats, cfg.gate, enc, outcomes, obs_labels);
      all_stats.push_back(std::move(stats));
    }
    // ideal output ket for the state-fidelity row
    auto ket = logical_ket(inputs[idx]);
    std::vector<cplx> target(dim, 0);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) target[r] += ideal(r, c) * ket[c];
    ir.state_fidelity = state_fidelity(ir.rho, target);
    result.inputs.push_back(std::move(ir));
  }

  GateRunner runner = [&](const std::vector<LogicalLabel>& labels) {
    for (std::size_t idx = 0; idx < inputs.size(); ++idx)
      if (inputs[idx] == labels) return result.inputs[idx].rho;
    throw std::logic_error("unexpected tomography input");
  };
  result.choi = process_tomography(runner, k);
  result.process_fidelity = process_fidelity(result.choi, ideal);

  // bootstrap stderr over per-(branch,label) binomial tallies
  if (!cfg.exact) {
    const int kResamples = 32;
    std::vector<std::vector<double>> fid_samples(inputs.size());
    std::vector<double> proc_samples;
    RngStream boot(cfg.seed, 0, 3);
    for (int b = 0; b < kResamples; ++b) {
      std::vector<DensityMatrix> rhos;
      for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
        detail::ShotStats rs = all_stats[idx];
        for (std::size_t o = 0; o < rs.n.size(); ++o)
          for (std::size_t l = 0; l < rs.n[o].size(); ++l) {
            long long n = rs.n[o][l];
            if (n == 0) continue;
            double p_plus = 0.5 * (1.0 + double(rs.s[o][l]) / double(n));
            long long plus = 0;
            for (long long t = 0; t < n; ++t)
              if (boot.next_double() < p_plus) ++plus;
            rs.s[o][l] = 2 * plus - n;
          }
        DensityMatrix rho = detail::stats_to_density(rs, cfg.gate, enc, outcomes, obs_labels);
        auto ket = logical_ket(inputs[idx]);
        std::vector<cplx> target(dim, 0);
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c) target[r] += ideal(r, c) * ket[c];
        fid_samples[idx].push_back(state_fidelity(rho, target));
        rhos.push_back(std::move(rho));
      }
      GateRunner rrun = [&](const std::vector<LogicalLabel>& labels) {
        for (std::size_t idx = 0; idx < inputs.size(); ++idx)
          if (inputs[idx] == labels) return rhos[idx];
        throw std::logic_error("unexpected tomography input");
      };
      proc_samples.push_back(process_fidelity(process_tomography(rrun, k), ideal));
    }
    auto stddev = [](const std::vector<double>& v) {
      double mean = 0;
      for (double x : v) mean += x;
      mean /= double(v.size());
      double var = 0;
      for (double x : v) var += (x - mean) * (x - mean);
      return std::sqrt(var / double(v.size() - 1));
    };
    for (std::size_t idx = 0; idx < inputs.size(); ++idx)
      result.inputs[idx].state_stderr = stddev(fid_samples[idx]);
    result.process_stderr = stddev(proc_samples);
  }
  return result;
}

// Result rows in the layout of the summary tables.
inline std::vector<ResultRow> experiment_rows(const ExperimentConfig& cfg,
                                              const ExperimentResult& res) {
  std::vector<ResultRow> rows;
  const int shots = cfg.exact ? 0 : cfg.shots;
  for (const auto& ir : res.inputs) {
    std::string input;
    for (std::size_t q = 0; q < ir.labels.size(); ++q)
      input += (q ? "," : "") + label_str(ir.labels[q]);
    rows.push_back({gate_str(cfg.gate), input, "state_fidelity", shots, cfg.seed,
                    ir.state_fidelity, ir.state_stderr});
  }
  rows.push_back({gate_str(cfg.gate), "-", "process_fidelity", shots, cfg.seed,
                  res.process_fidelity, res.process_stderr});
  return rows;
}

}  // namespace ybraid

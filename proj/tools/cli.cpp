// Copyright 2026 The uddtd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uddtd/errors.hpp"
#include "uddtd/operators.hpp"
#include "uddtd/parallel.hpp"
#include "uddtd/piecewise.hpp"
#include "uddtd/propagator.hpp"
#include "uddtd/random.hpp"
#include "uddtd/sequence.hpp"
#include "uddtd/spectral.hpp"

namespace uddtd::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kVanishingTolerance = 1e-10;

struct Output {
  std::string body;     // --out, or stdout
  std::string summary;  // --summary (scaling only)
  std::string message;  // human-readable lines
};

// Round-trip precision for tables.
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Five decimals for human summaries.
std::string num5(double x) {
  if (std::abs(x) < 5e-6) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad integer list '" + spec + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty integer list");
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

SwitchingFunction udd_switching(int n) {
  return switching_function(udd_sequence(n, PulseAxis::X), PulseAxis::Z);
}

// ---------------------------------------------------------------- seq

struct SeqOptions {
  int udd = -1;
  std::vector<int> qdd;
  std::string axis = "X";
  std::string outer_axis = "X";
  std::string inner_axis = "Z";
  double duration = 1.0;
};

Output cmd_seq(const SeqOptions& o) {
  if ((o.udd >= 0) == !o.qdd.empty()) {
    throw InvalidArgument("give exactly one of --udd N or --qdd N_outer N_inner");
  }
  const PulseSequence seq =
      o.udd >= 0 ? udd_sequence(o.udd, parse_axis(o.axis), o.duration)
                 : qdd_sequence(o.qdd[0], o.qdd[1], parse_axis(o.outer_axis),
                                parse_axis(o.inner_axis), o.duration);
  return {to_json(seq).dump(2) + "\n", "", ""};
}

// ---------------------------------------------------------------- coeffs

struct CoeffsOptions {
  std::vector<int> n_pulses;
  int n_max = 3;
  int p_max = 1;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  bool no_assert = false;
  bool csv = false;
  bool want_i1 = false;
  bool want_j2 = false;
  bool want_i31 = false;
  bool want_i32 = false;
};

struct CoeffRow {
  int pulses;
  std::vector<int> powers;
  bool covered;
  double value = 0.0;
  McEstimate mc{0.0, 0.0};
};

void enumerate_powers(int n, int p_max, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int p = 0; p <= p_max; ++p) {
    cur.push_back(p);
    enumerate_powers(n, p_max, cur, out);
    cur.pop_back();
  }
}

void check_mc_samples(std::size_t samples) {
  if (samples != 0 && samples < 10000) {
    throw InvalidArgument("--mc-samples must be 0 or at least 10000");
  }
}

Output cmd_coeffs_integrals(const CoeffsOptions& o, unsigned threads) {
  struct Named {
    const char* name;
    const char* unit;
    ChainCombination chain;
  };
  std::vector<Named> wanted;
  if (o.want_i1) wanted.push_back({"I1", "T_p", i1_chain()});
  if (o.want_j2) wanted.push_back({"J2", "T_p^2", j2_chain()});
  if (o.want_i31) wanted.push_back({"I31", "T_p^3", i31_chain()});
  if (o.want_i32) wanted.push_back({"I32", "T_p^3", i32_chain()});

  struct Cell {
    int pulses;
    std::size_t which;
    double value = 0.0;
    McEstimate mc{0.0, 0.0};
  };
  std::vector<Cell> cells;
  for (int n : o.n_pulses) {
    for (std::size_t w = 0; w < wanted.size(); ++w) cells.push_back({n, w});
  }
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    Cell& c = cells[i];
    const SwitchingFunction f = udd_switching(c.pulses);
    c.value = wanted[c.which].chain.evaluate(f);
    if (o.mc_samples > 0) {
      c.mc = mc_oracle(wanted[c.which].chain, f, o.mc_samples, mix_seed(o.seed, i));
    }
  });

  Output out;
  if (o.csv) out.body = "N,integral,value,mc_estimate,mc_stderr\n";
  for (const Cell& c : cells) {
    const Named& w = wanted[c.which];
    if (o.csv) {
      const bool mc = o.mc_samples > 0;
      out.body += join({std::to_string(c.pulses), w.name, num(c.value),
                        mc ? num(c.mc.estimate) : "", mc ? num(c.mc.standard_error) : ""});
    } else {
      out.body += std::string(w.name) + "[N=" + std::to_string(c.pulses) +
                  "] = " + num5(c.value) + " " + w.unit + "\n";
    }
  }
  return out;
}

Output cmd_coeffs(const CoeffsOptions& o, unsigned threads) {
  if (o.n_pulses.empty()) throw InvalidArgument("--N is required");
  for (int n : o.n_pulses) {
    if (n < 1) throw InvalidArgument("empty sequence");
  }
  check_mc_samples(o.mc_samples);
  if (o.want_i1 || o.want_j2 || o.want_i31 || o.want_i32) {
    return cmd_coeffs_integrals(o, threads);
  }
  if (o.n_max < 1 || o.n_max > static_cast<int>(kMaxChainLength)) {
    throw InvalidArgument("--n must be in [1, 6]");
  }
  if (o.p_max < 0 || o.p_max > kMaxChainPower) {
    throw InvalidArgument("--pmax must be in [0, 12]");
  }

  std::vector<CoeffRow> rows;
  for (int pulses : o.n_pulses) {
    for (int n = 1; n <= o.n_max; ++n) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      enumerate_powers(n, o.p_max, cur, tuples);
      for (auto& p : tuples) {
        const int order = n + std::accumulate(p.begin(), p.end(), 0);
        rows.push_back({pulses, std::move(p), n % 2 == 1 && order <= pulses});
      }
    }
  }
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    CoeffRow& r = rows[i];
    const OrderedIntegralSpec spec{r.powers, udd_switching(r.pulses)};
    r.value = ordered_coefficient(spec);
    if (o.mc_samples > 0) r.mc = mc_oracle(spec, o.mc_samples, mix_seed(o.seed, i));
  });

  if (!o.no_assert) {
    for (const CoeffRow& r : rows) {
      if (r.covered && std::abs(r.value) > kVanishingTolerance) {
        std::string p;
        for (int x : r.powers) p += (p.empty() ? "" : ",") + std::to_string(x);
        throw NumericalFailure("coefficient expected to vanish is " + num(r.value) +
                               " at N=" + std::to_string(r.pulses) + ", p=(" + p + ")");
      }
    }
  }

  Output out;
  std::vector<std::string> header{"N", "n"};
  for (int j = 1; j <= o.n_max; ++j) header.push_back("p_" + std::to_string(j));
  for (const char* h : {"covered", "value", "mc_estimate", "mc_stderr"}) header.push_back(h);
  out.body = join(header);
  for (const CoeffRow& r : rows) {
    std::vector<std::string> cells{std::to_string(r.pulses), std::to_string(r.powers.size())};
    for (int j = 0; j < o.n_max; ++j) {
      cells.push_back(j < static_cast<int>(r.powers.size()) ? std::to_string(r.powers[j]) : "");
    }
    const bool mc = o.mc_samples > 0;
    cells.push_back(r.covered ? "1" : "0");
    cells.push_back(num(r.value));
    cells.push_back(mc ? num(r.mc.estimate) : "");
    cells.push_back(mc ? num(r.mc.standard_error) : "");
    out.body += join(cells);
  }
  return out;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  int n_pulses = -1;
  int r_max = 50;
  std::string q;
  std::string cos;
  int k_max = 50;
};

Output cmd_spectrum(const SpectrumOptions& o) {
  Output out;
  if (!o.cos.empty()) {
    const std::vector<int> s = parse_int_list(o.cos);
    std::vector<std::string> header{"n"};
    for (std::size_t j = 1; j <= s.size(); ++j) header.push_back("s_" + std::to_string(j));
    header.push_back("direct");
    header.push_back("reduced");
    out.body = join(header);
    std::vector<std::string> cells{std::to_string(s.size())};
    for (int x : s) cells.push_back(std::to_string(x));
    cells.push_back(num(cos_chain(s)));
    cells.push_back(num(cos_chain_reduced(s)));
    out.body += join(cells);
    return out;
  }
  if (o.n_pulses < 0) throw InvalidArgument("--N is required");
  if (!o.q.empty()) {
    const std::vector<int> q = parse_int_list(o.q);
    std::vector<std::string> header{"N", "n"};
    for (std::size_t j = 1; j <= q.size(); ++j) header.push_back("q_" + std::to_string(j));
    header.push_back("value");
    header.push_back("series_value");
    out.body = join(header);
    std::vector<std::string> cells{std::to_string(o.n_pulses), std::to_string(q.size())};
    for (int x : q) cells.push_back(std::to_string(x));
    cells.push_back(num(f_coefficient(o.n_pulses, q)));
    cells.push_back(num(f_coefficient_series(o.n_pulses, q, o.k_max)));
    out.body += join(cells);
    return out;
  }
  if (o.r_max < 1) throw InvalidArgument("--rmax must be positive");
  out.body = "N,r,a_r,in_spectrum\n";
  for (int r = 1; r <= o.r_max; ++r) {
    out.body += join({std::to_string(o.n_pulses), std::to_string(r),
                      num(fourier_coefficient(o.n_pulses, r)), in_spectrum(o.n_pulses, r) ? "1" : "0"});
  }
  return out;
}

// ---------------------------------------------------------------- magnus

struct MagnusOptions {
  int n_pulses = 3;
  std::string sequence_file;
  int bath_dim = 4;
  std::uint64_t seed = 1;
  double t_p = 0.1;
  std::string t_grid = "0.01:0.1:8:log";
  bool matrices = false;
};

PulseSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open sequence file '" + path + "'");
  try {
    return sequence_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sequence JSON: ") + e.what());
  }
}

Matrix magnus_exact(const HamiltonianSeries& h, const PulseSequence& seq, double t) {
  return toggling_frame(evolve({h, seq, t}), seq);
}

Output cmd_magnus(const MagnusOptions& o) {
  const PulseSequence seq = o.sequence_file.empty() ? udd_sequence(o.n_pulses, PulseAxis::Z)
                                                    : load_sequence(o.sequence_file);
  if (!seq.empty() && seq.single_axis() != PulseAxis::Z) {
    throw InvalidArgument("magnus expects a primary sequence of pulses about z");
  }
  if (!(o.t_p > 0.0)) throw InvalidArgument("--Tp must be positive");
  const HamiltonianSeries h = random_hamiltonian(o.bath_dim, 0, o.seed);
  const SwitchingFunction f(seq.instants());
  const MagnusTerms m = magnus_terms(h, f, o.t_p);

  auto magnus_error = [&](double t) {
    const MagnusTerms mt = magnus_terms(h, f, t);
    return (magnus_exact(h, seq, t) - expm_hermitian(mt.h1 + mt.h2 + mt.h3, t)).norm();
  };
  std::vector<ScalingSample> samples;
  for (double t : parse_grid(o.t_grid)) samples.push_back({t, magnus_error(t)});
  const LogLogFit fit = fit_loglog(samples, 0.0, std::numeric_limits<double>::infinity());

  const Matrix explicit_comm = d1_eta2_commutator(h);
  const Matrix eta = eta2(h);
  ojson j;
  j["sequence"] = to_json(seq);
  j["bath_dim"] = o.bath_dim;
  j["seed"] = o.seed;
  j["T_p"] = o.t_p;
  j["integrals"] = {{"I1", i1(f)}, {"J2", j2(f)}, {"I31", i31(f)}, {"I32", i32(f)}};
  j["norms"] = {{"D0", h.d0().norm()}, {"D1", h.d1().norm()}, {"eta2", eta.norm()},
                {"H1", m.h1.norm()},   {"H2", m.h2.norm()},   {"H3", m.h3.norm()}};
  j["hermiticity_residual"] = {{"H1", hermiticity_residual(m.h1)},
                               {"H2", hermiticity_residual(m.h2)},
                               {"H3", hermiticity_residual(m.h3)}};
  j["d1_eta2_residual"] = (explicit_comm - commutator(h.d1(), eta)).norm();
  j["magnus_error"] = magnus_error(o.t_p);
  ojson pts = ojson::array();
  for (const auto& s : samples) pts.push_back({s.time, s.error});
  j["fidelity"] = {{"samples", pts}, {"slope", fit.slope}, {"r_squared", fit.r_squared}};
  if (o.matrices) {
    j["H1"] = to_json(m.h1);
    j["H2"] = to_json(m.h2);
    j["H3"] = to_json(m.h3);
    j["d1_eta2"] = to_json(explicit_comm);
  }
  Output out;
  out.body = j.dump(2) + "\n";
  out.message = "Magnus error slope " + num5(fit.slope) + "\n";
  return out;
}

// ---------------------------------------------------------------- scaling

struct ScalingOptions {
  std::string sequence = "udd";
  int n_pulses = 2;
  int n_perp = 1;
  std::string mode = "dephasing";
  std::string axis;
  std::string coupling;
  int bath_dim = 4;
  int degree = 2;
  std::vector<std::uint64_t> seeds{1};
  std::string t_grid = "1e-5:1:31:log";
  int steps = 8;
  std::string summary_path;
};

Output cmd_scaling(const ScalingOptions& o, unsigned threads) {
  const ErrorMode mode = parse_mode(o.mode);
  const std::vector<double> grid = parse_grid(o.t_grid);

  PulseSequence seq;
  int n_z = 0;
  int n_perp = 0;
  if (o.sequence == "udd") {
    const std::string axis =
        !o.axis.empty() ? o.axis : (mode == ErrorMode::Relaxation ? "Z" : "X");
    seq = udd_sequence(o.n_pulses, parse_axis(axis));
    n_z = o.n_pulses;
  } else if (o.sequence == "qdd") {
    seq = qdd_sequence(o.n_perp, o.n_pulses, PulseAxis::X, PulseAxis::Z);
    n_z = o.n_pulses;
    n_perp = o.n_perp;
  } else if (o.sequence != "none") {
    throw InvalidArgument("--seq must be udd, qdd or none");
  }

  RandomHamiltonianOptions hopts;
  const std::string coupling =
      !o.coupling.empty() ? o.coupling : (mode == ErrorMode::Dephasing ? "pure" : "general");
  if (coupling == "pure") {
    hopts.transverse = false;
  } else if (coupling != "general") {
    throw InvalidArgument("--coupling must be pure or general");
  }
  if (o.steps < 8) throw InvalidArgument("--steps must be at least 8");

  Output out;
  out.body = "sequence,N_z,N_perp,mode,seed,T,epsilon\n";
  ojson fits = ojson::array();
  for (std::uint64_t seed : o.seeds) {
    const HamiltonianSeries h = random_hamiltonian(o.bath_dim, o.degree, seed, hopts);
    const ScalingReport r = scaling_sweep({h, seq, mode, o.steps}, grid, threads);
    for (const ScalingSample& s : r.samples) {
      out.body += join({o.sequence, std::to_string(n_z), std::to_string(n_perp),
                        std::string(mode_name(mode)), std::to_string(seed), num(s.time),
                        num(s.error)});
    }
    fits.push_back({{"seed", seed},
                    {"slope", r.fit.slope},
                    {"intercept", r.fit.intercept},
                    {"r_squared", r.fit.r_squared},
                    {"points", r.fit.points}});
    out.message += "seed " + std::to_string(seed) + ": slope " + num5(r.fit.slope) +
                   " (r^2 " + num5(r.fit.r_squared) + ", " + std::to_string(r.fit.points) +
                   " points)\n";
  }
  ojson summary;
  summary["sequence"] = o.sequence;
  summary["N_z"] = n_z;
  summary["N_perp"] = n_perp;
  summary["mode"] = std::string(mode_name(mode));
  summary["coupling"] = coupling;
  summary["bath_dim"] = o.bath_dim;
  summary["taylor_degree"] = o.degree;
  summary["window"] = {kFitWindowLow, kFitWindowHigh};
  summary["fits"] = fits;
  out.summary = summary.dump(2) + "\n";
  return out;
}

// ---------------------------------------------------------------- heff

struct HeffOptions {
  int n_pulses = 3;
  int bath_dim = 4;
  std::uint64_t seed = 1;
  std::string t_grid = "0.01:0.1:10:lin";
  double rel_step = kDefaultFiniteDifferenceStep;
  bool matrices = false;
};

Output cmd_heff(const HeffOptions& o) {
  const PulseSequence seq = udd_sequence(o.n_pulses, PulseAxis::Z);
  const HamiltonianSeries h = random_hamiltonian(o.bath_dim, 0, o.seed);
  const std::vector<double> times = parse_grid(o.t_grid);
  const EffectiveHamiltonianFit fit = fit_effective_hamiltonian(seq, h, times, o.rel_step);

  ojson j;
  j["N"] = o.n_pulses;
  j["bath_dim"] = o.bath_dim;
  j["seed"] = o.seed;
  j["kappa"] = fit.kappa;
  j["quadratic_norm"] = fit.quadratic.norm();
  j["predicted_norm"] = fit.predicted.norm();
  j["relative_error"] = fit.relative_error;
  ojson pts = ojson::array();
  for (const auto& s : fit.distance) pts.push_back({{"t", s.time}, {"distance", s.error}});
  j["samples"] = pts;
  if (o.matrices) {
    j["quadratic"] = to_json(fit.quadratic);
    j["predicted"] = to_json(fit.predicted);
  }
  Output out;
  out.body = j.dump(2) + "\n";
  out.message = "kappa " + num5(fit.kappa) + ", quadratic coefficient relative error " +
                num5(fit.relative_error) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) {
    throw InvalidArgument("grid must look like start:stop:points[:log|lin]");
  }
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    points = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw InvalidArgument("bad grid '" + spec + "'");
  }
  const std::string kind = parts.size() == 4 ? parts[3] : "log";
  if (kind == "log") return log_grid(start, stop, points);
  if (kind != "lin") throw InvalidArgument("grid spacing must be log or lin");
  if (!(stop > start) || points < 2) throw InvalidArgument("bad linear grid '" + spec + "'");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(start + (stop - start) * i / (points - 1));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimized dynamical decoupling toolkit: UDD/QDD sequences, exact ordered "
               "integrals, Magnus terms and decoherence scaling sweeps"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (default: $UDDTD_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  std::string out_path;
  std::string summary_path;

  SeqOptions seq;
  auto* seq_cmd = app.add_subcommand("seq", "Print a UDD or QDD pulse sequence as JSON");
  seq_cmd->add_option("--udd", seq.udd, "UDD pulse count");
  seq_cmd->add_option("--qdd", seq.qdd, "QDD outer and inner pulse counts")->expected(2);
  seq_cmd->add_option("--axis", seq.axis, "UDD pulse axis");
  seq_cmd->add_option("--outer-axis", seq.outer_axis, "QDD outer pulse axis");
  seq_cmd->add_option("--inner-axis", seq.inner_axis, "QDD inner pulse axis");
  seq_cmd->add_option("--duration", seq.duration, "Total duration T");
  seq_cmd->add_option("--out", out_path, "Output file (default stdout)");

  CoeffsOptions co;
  auto* co_cmd = app.add_subcommand(
      "coeffs", "Tabulate F_{p1..pn} for UDD sequences, or the Magnus integrals");
  co_cmd->add_option("--N", co.n_pulses, "UDD pulse count(s)")->required();
  co_cmd->add_option("--n", co.n_max, "Largest chain length");
  co_cmd->add_option("--pmax", co.p_max, "Largest power per variable");
  co_cmd->add_option("--mc-samples", co.mc_samples, "Monte-Carlo samples per row (0: skip)");
  co_cmd->add_option("--seed", co.seed, "Monte-Carlo seed");
  co_cmd->add_flag("--no-assert", co.no_assert, "Do not fail on non-vanishing covered rows");
  co_cmd->add_flag("--i1", co.want_i1, "Print I_1");
  co_cmd->add_flag("--j2", co.want_j2, "Print J_2");
  co_cmd->add_flag("--i31", co.want_i31, "Print I_3,1");
  co_cmd->add_flag("--i32", co.want_i32, "Print I_3,2");
  co_cmd->add_flag("--csv", co.csv, "Integrals as CSV instead of summary lines");
  co_cmd->add_option("--out", out_path, "Output file (default stdout)");

  SpectrumOptions sp;
  auto* sp_cmd = app.add_subcommand(
      "spectrum", "Fourier spectrum of f(theta), f_{q1..qn} or cosine chains");
  sp_cmd->add_option("--N", sp.n_pulses, "UDD pulse count");
  sp_cmd->add_option("--rmax", sp.r_max, "Largest harmonic");
  sp_cmd->add_option("--q", sp.q, "Comma-separated q_j for f_{q1..qn}");
  sp_cmd->add_option("--cos", sp.cos, "Comma-separated s_j for a cosine chain");
  sp_cmd->add_option("--kmax", sp.k_max, "Series truncation for the cross-check");
  sp_cmd->add_option("--out", out_path, "Output file (default stdout)");

  MagnusOptions mg;
  auto* mg_cmd = app.add_subcommand("magnus", "Magnus terms H1..H3 for a primary sequence");
  mg_cmd->add_option("--N", mg.n_pulses, "UDD pulse count (pulses about z)");
  mg_cmd->add_option("--sequence-file", mg.sequence_file, "Sequence JSON instead of UDD");
  mg_cmd->add_option("--d", mg.bath_dim, "Bath dimension");
  mg_cmd->add_option("--seed", mg.seed, "Hamiltonian seed");
  mg_cmd->add_option("--Tp", mg.t_p, "Primary period T_p");
  mg_cmd->add_option("--T", mg.t_grid, "T_p grid for the fidelity fit");
  mg_cmd->add_flag("--matrices", mg.matrices, "Include operator matrices");
  mg_cmd->add_option("--out", out_path, "Output file (default stdout)");

  ScalingOptions sc;
  auto* sc_cmd = app.add_subcommand("scaling", "Decoherence error vs T and fitted slope");
  sc_cmd->add_option("--seq", sc.sequence, "udd, qdd or none");
  sc_cmd->add_option("--N", sc.n_pulses, "UDD pulse count (QDD: inner count N_z)");
  sc_cmd->add_option("--Nperp", sc.n_perp, "QDD outer pulse count");
  sc_cmd->add_option("--mode", sc.mode, "dephasing, relaxation or general");
  sc_cmd->add_option("--axis", sc.axis, "UDD pulse axis (default X, or Z for relaxation)");
  sc_cmd->add_option("--coupling", sc.coupling, "pure (A_x = A_y = 0) or general");
  sc_cmd->add_option("--d", sc.bath_dim, "Bath dimension");
  sc_cmd->add_option("--P", sc.degree, "Taylor degree of the time dependence");
  sc_cmd->add_option("--seed", sc.seeds, "Hamiltonian seed(s)");
  sc_cmd->add_option("--T", sc.t_grid, "T grid start:stop:points:log");
  sc_cmd->add_option("--steps", sc.steps, "Initial sub-steps per pulse interval");
  sc_cmd->add_option("--out", out_path, "Sample CSV (default stdout)");
  sc_cmd->add_option("--summary", summary_path, "Fit summary JSON");

  HeffOptions he;
  auto* he_cmd = app.add_subcommand("heff", "Small-t structure of the effective Hamiltonian");
  he_cmd->add_option("--N", he.n_pulses, "Primary UDD pulse count (pulses about z)");
  he_cmd->add_option("--d", he.bath_dim, "Bath dimension");
  he_cmd->add_option("--seed", he.seed, "Hamiltonian seed");
  he_cmd->add_option("--t", he.t_grid, "t grid start:stop:points:lin|log");
  he_cmd->add_option("--fd-step", he.rel_step, "Finite-difference step relative to t");
  he_cmd->add_flag("--matrices", he.matrices, "Include fitted and predicted matrices");
  he_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Output result;
    if (*seq_cmd) result = cmd_seq(seq);
    else if (*co_cmd) result = cmd_coeffs(co, threads);
    else if (*sp_cmd) result = cmd_spectrum(sp);
    else if (*mg_cmd) result = cmd_magnus(mg);
    else if (*sc_cmd) result = cmd_scaling(sc, threads);
    else if (*he_cmd) result = cmd_heff(he);

    if (out_path.empty()) {
      out << result.body;
      err << result.message;
    } else {
      write_file(out_path, result.body);
      out << result.message;
    }
    if (!summary_path.empty()) write_file(summary_path, result.summary);
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoAsymptoticWindow& e) {
    err << "error: " << e.what() << "\n"
        << "hint: widen --T towards smaller T so that at least four errors fall in ["
        << kFitWindowLow << ", " << kFitWindowHigh << "]\n";
    return kExitNoWindow;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace uddtd::cli

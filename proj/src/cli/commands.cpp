// Copyright 2026 The wgstate Authors
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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cli/io.hpp"
#include "wgs/cli.hpp"
#include "wgs/errors.hpp"
#include "wgs/measurement.hpp"
#include "wgs/metrology.hpp"
#include "wgs/optics.hpp"
#include "wgs/rng.hpp"
#include "wgs/stategen.hpp"
#include "wgs/stats.hpp"
#include "wgs/tomography.hpp"

namespace wgs::cli {

namespace {

constexpr std::uint64_t kFallbackSeed = 1;

// Thrown for bad flag values discovered after CLI11 parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json ket_json(const Ket4& k) {
  Json a = Json::array();
  for (int i = 0; i < 4; ++i) a.push_back(complex_json(k(i)));
  return a;
}

Json matrix_json(const Operator4& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WGS_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("WGS_SEED must be a non-negative integer");
  }
  return kFallbackSeed;
}

measurement::Observable parse_observable(const std::string& spec) {
  if (spec.size() == 2 && spec.find_first_not_of("IXYZ") == std::string::npos)
    return measurement::pauli_observable(pauli_from_char(spec[0]), pauli_from_char(spec[1]));
  const std::string prefix = "axis:";
  if (spec.rfind(prefix, 0) == 0) {
    std::stringstream ss(spec.substr(prefix.size()));
    std::vector<double> v;
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(parse_angle(cell));
    if (v.size() == 4) return measurement::general_axis_observable(v[0], v[1], v[2], v[3]);
  }
  throw UsageError("observable must be two Pauli labels (e.g. ZY) or axis:b1,a1,b2,a2 in degrees");
}

// Builds the requested two-photon state and records how it was made.
struct StateChoice {
  double phi12 = 0.0;
  bool pipeline = false;
  std::vector<double> noise;  // empty or {p, sigma}
};

struct BuiltState {
  PureState2Q ideal;
  PureState2Q pure;
  std::optional<DensityMatrix> mixed;
  Json info = Json::object();

  DensityMatrix rho() const { return mixed ? *mixed : DensityMatrix(pure); }
};

BuiltState build_state(const StateChoice& c, std::uint64_t seed) {
  const PureState2Q ideal = stategen::weighted_graph_state(c.phi12);
  BuiltState b{ideal, ideal, std::nullopt};
  if (c.pipeline) {
    const stategen::GenerationConfig cfg = stategen::canonical_config(c.phi12);
    const stategen::GenerationResult g = stategen::simulate_generation(cfg);
    b.pure = g.state;
    b.info["source"] = "pipeline";
    b.info["postselect_probability"] = g.postselect_probability;
    b.info["generation_config"] = {
        {"hwp_r2_lab_deg", rad_to_deg(optics::to_lab_angle(cfg.hwp_r2))},
        {"hwp_l2_lab_deg", rad_to_deg(optics::to_lab_angle(cfg.hwp_l2))},
        {"phi_prime_12_deg", rad_to_deg(cfg.phi_prime_12)},
        {"varphi_prime_deg", rad_to_deg(cfg.varphi_prime)},
    };
  } else {
    b.info["source"] = "direct";
  }
  if (!c.noise.empty()) {
    stategen::NoiseModel nm;
    nm.depolarizing_p = c.noise[0];
    nm.phase_jitter_sigma = deg_to_rad(c.noise[1]);
    b.mixed = stategen::apply_noise(b.pure, nm, seed);
    b.info["noise"] = {{"depolarizing_p", nm.depolarizing_p},
                       {"phase_jitter_sigma_deg", c.noise[1]},
                       {"averaging", "gauss-hermite"},
                       {"samples", nm.samples}};
  }
  return b;
}

// Shared per-invocation settings.
struct Context {
  std::ostream& out;
  std::ostream& err;

  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::string manifest_path;
  bool no_timestamp = false;
  std::optional<std::uint64_t> seed_flag;
  Manifest manifest;

  void emit(const std::string& path, const std::string& text) {
    write_text(path, text, out);
    if (path != "-") manifest.outputs.push_back(path);
  }

  void finish() {
    if (manifest.outputs.empty() && manifest_path.empty()) return;
    std::string path = manifest_path.empty() ? manifest.outputs.front() + ".manifest.json" : manifest_path;
    manifest.timestamp = !no_timestamp;
    write_text(path, render_manifest(manifest), out);
  }
};

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

// --- state ---------------------------------------------------------------

struct StateArgs {
  std::string phi12 = "180";
  StateChoice choice;
  std::string out = "-";
};

int cmd_state(Context& ctx, const StateArgs& a) {
  StateChoice c = a.choice;
  c.phi12 = parse_angle(a.phi12);
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);
  const BuiltState b = build_state(c, seed);

  Json j = header("state");
  j["phi12_deg"] = rad_to_deg(c.phi12);
  j["seed"] = seed;
  j["state"] = b.info;
  if (b.mixed) {
    j["representation"] = "density_matrix";
    j["density_matrix"] = matrix_json(b.mixed->matrix());
  } else {
    j["representation"] = "pure";
    j["amplitudes"] = ket_json(b.pure.amplitudes());
  }
  const DensityMatrix rho = b.rho();
  j["fidelity_to_ideal"] = fidelity(rho, b.ideal);
  j["concurrence"] = concurrence(rho);

  ctx.manifest.parameters = {{"phi12", a.phi12}, {"pipeline", c.pipeline}, {"noise", c.noise}, {"out", a.out}};
  ctx.manifest.seed = seed;
  ctx.emit(a.out, dump_json(j));
  return kExitOk;
}

// --- qfi -----------------------------------------------------------------

struct QfiArgs {
  int grid = 0;
  std::string phi12;
  std::string out = "-";
};

int cmd_qfi(Context& ctx, const QfiArgs& a) {
  std::vector<double> phis;
  if (!a.phi12.empty()) {
    phis.push_back(parse_angle(a.phi12));
  } else {
    if (a.grid < 2) throw UsageError("--grid needs at least 2 points");
    for (int i = 0; i < a.grid; ++i) phis.push_back(kPi * i / (a.grid - 1));
  }
  const metrology::Limits lim = metrology::limits();
  std::string csv = "# schema_version=1\nphi12_deg,F_Q,QCRB,SQL,HL\n";
  for (double phi : phis) {
    const double fq = metrology::qfi_closed_form(phi);
    csv += fmt(rad_to_deg(phi)) + "," + fmt(fq) + "," + fmt(1.0 / fq) + "," + fmt(lim.sql) + "," + fmt(lim.hl) + "\n";
  }
  ctx.manifest.parameters = {{"grid", a.grid}, {"phi12", a.phi12}, {"out", a.out}};
  // Unused by the closed form, recorded so every manifest names its seed.
  ctx.manifest.seed = resolve_seed(ctx.seed_flag);
  ctx.emit(a.out, csv);
  return kExitOk;
}

// --- optimize ------------------------------------------------------------

struct OptimizeArgs {
  std::string phi12 = "180";
  std::string kind = "pauli";
  std::string out = "-";
};

Json observable_json(const measurement::Observable& o) {
  Json j;
  j["label"] = o.describe();
  j["kind"] = o.kind() == measurement::Observable::Kind::Pauli ? "pauli" : "general_axis";
  for (int q = 1; q <= 2; ++q) {
    const std::string s = std::to_string(q);
    if (o.kind() == measurement::Observable::Kind::Pauli) j["pauli" + s] = std::string(1, pauli_char(o.label(q)));
    j["beta" + s + "_deg"] = rad_to_deg(o.beta(q));
    j["alpha" + s + "_deg"] = rad_to_deg(o.alpha(q));
  }
  const auto w = o.weights();
  j["weights"] = {{"++", w[0]}, {"+-", w[1]}, {"-+", w[2]}, {"--", w[3]}};
  return j;
}

Json sensing_json(const metrology::SensingResult& r) {
  return {{"expectation", r.expectation},
          {"derivative", r.derivative},
          {"derivative_magnitude", r.derivative_magnitude},
          {"single_shot_variance", r.single_shot_variance},
          {"estimator_variance", r.estimator_variance}};
}

int cmd_optimize(Context& ctx, const OptimizeArgs& a) {
  metrology::SensingConfig cfg;
  cfg.phi12 = parse_angle(a.phi12);
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);
  metrology::SearchConfig sc;
  std::optional<metrology::SearchResult> res;
  if (a.kind == "pauli") {
    res = metrology::pauli_search(cfg);
  } else if (a.kind == "general") {
    res = metrology::general_axis_search(cfg, sc, seed);
  } else {
    throw UsageError("--kind must be pauli or general");
  }

  Json j = header("optimize");
  j["phi12_deg"] = rad_to_deg(cfg.phi12);
  j["kind"] = a.kind;
  j["seed"] = seed;
  j["observable"] = observable_json(res->observable);
  j["sensing"] = sensing_json(res->sensing);
  j["objective"] = res->objective;
  j["converged"] = res->converged;
  if (a.kind == "general") {
    j["search_config"] = {{"penalty_weight", sc.penalty_weight},
                          {"de_population", sc.de_population},
                          {"de_generations", sc.de_generations},
                          {"neighborhood_radius_deg", rad_to_deg(sc.neighborhood_radius)},
                          {"neighborhood_samples", sc.neighborhood_samples},
                          {"variance_tolerance", sc.variance_tolerance}};
  }
  const auto settings = measurement::observable_settings(res->observable);
  Json ws = Json::array();
  for (int q = 0; q < 2; ++q) {
    for (int o = 0; o < 2; ++o) {
      const auto& s = settings[static_cast<std::size_t>(q)][static_cast<std::size_t>(o)];
      ws.push_back({{"photon", q + 1},
                    {"outcome", o == 0 ? "+" : "-"},
                    {"hwp_lab_deg", s.plates.hwp_deg},
                    {"qwp_lab_deg", s.plates.qwp_deg},
                    {"residual", s.residual}});
    }
  }
  j["waveplates"] = ws;

  ctx.manifest.parameters = {{"phi12", a.phi12}, {"kind", a.kind}, {"out", a.out}};
  ctx.manifest.seed = seed;
  if (a.out != "-") {
    ctx.out << "observable " << res->observable.describe() << "  <A> " << fixed2(res->sensing.expectation)
            << "  |d<A>| " << fixed2(res->sensing.derivative_magnitude) << "  (dtheta)^2 "
            << fixed2(res->sensing.estimator_variance) << "\n";
  }
  ctx.emit(a.out, dump_json(j));
  return kExitOk;
}

// --- sense ---------------------------------------------------------------

struct SenseArgs {
  std::string phi12 = "180";
  std::string observable = "ZY";
  double rate = 150.0;
  double duration = 10.0;
  int bins = 6;
  std::string theta_star = "0";
  std::string shift = "5";
  int replicates = 10000;
  std::string out = "-";
  std::string counts_out;
};

Json bootstrap_json(const stats::BootstrapResult& r) {
  return {{"mean", r.mean}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}};
}

int cmd_sense(Context& ctx, const SenseArgs& a) {
  metrology::SensingConfig cfg;
  cfg.phi12 = parse_angle(a.phi12);
  cfg.theta_star = parse_angle(a.theta_star);
  cfg.h = parse_angle(a.shift);
  cfg.validate();
  if (a.bins < 2) throw UsageError("--bins must be at least 2");
  if (!(a.rate >= 0.0) || !(a.duration >= 0.0)) throw UsageError("--rate and --duration must be non-negative");
  const measurement::Observable obs = parse_observable(a.observable);
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);
  const PureState2Q psi = stategen::weighted_graph_state(cfg.phi12);

  const std::array<std::pair<const char*, double>, 3> points = {
      {{"center", cfg.theta_star}, {"plus", cfg.theta_star + cfg.h}, {"minus", cfg.theta_star - cfg.h}}};
  std::array<stats::BinnedCounts, 3> data;
  std::string csv = "# schema_version=1\nsetting,theta_deg,bin,n_pp,n_pm,n_mp,n_mm,duration\n";
  for (std::size_t s = 0; s < 3; ++s) {
    const PureState2Q encoded(metrology::encoding_unitary(points[s].second) * psi.amplitudes());
    const auto probs = measurement::outcome_probabilities(encoded, obs);
    for (int l = 0; l < a.bins; ++l) {
      const std::uint64_t bin_seed = rng::derive_seed(seed, rng::Stream::Experiment, s * a.bins + l);
      const auto rec = measurement::simulate_counts(probs, a.rate, a.duration, bin_seed);
      data[s].bins.push_back(rec);
      csv += std::string(points[s].first) + "," + fmt(rad_to_deg(points[s].second)) + "," + std::to_string(l) +
             "," + std::to_string(rec.counts[0]) + "," + std::to_string(rec.counts[1]) + "," +
             std::to_string(rec.counts[2]) + "," + std::to_string(rec.counts[3]) + "," + fmt(rec.duration) + "\n";
    }
  }

  stats::BootstrapConfig bc;
  bc.replicates = a.replicates;
  bc.seed = seed;
  const auto& w = obs.weights();
  const auto e = stats::bootstrap_expectation(data[0], w, bc);
  const auto v = stats::bootstrap_variance(data[0], w, bc);
  const auto d = stats::bootstrap_derivative(data[1], data[2], cfg.h, w, bc);
  const auto r = stats::bootstrap_ratio(data[0], data[1], data[2], cfg.h, w, bc);

  Json j = header("sense");
  j["phi12_deg"] = rad_to_deg(cfg.phi12);
  j["observable"] = observable_json(obs);
  j["theta_star_deg"] = rad_to_deg(cfg.theta_star);
  j["shift_deg"] = rad_to_deg(cfg.h);
  j["rate"] = a.rate;
  j["duration"] = a.duration;
  j["bins"] = a.bins;
  j["replicates"] = a.replicates;
  j["seed"] = seed;
  j["expectation"] = bootstrap_json(e);
  j["single_shot_variance"] = bootstrap_json(v);
  j["derivative"] = bootstrap_json(d);
  j["estimator_variance"] = bootstrap_json(r);
  j["estimator_variance"]["clamped_replicates"] = r.clamped;
  j["epsilon"] = bc.epsilon;
  try {
    j["theory"] = sensing_json(metrology::sense(psi, obs, cfg, metrology::DerivativeMode::FiniteDifference));
  } catch (const ZeroSensitivityError&) {
    j["theory"] = nullptr;
  }

  ctx.manifest.parameters = {{"phi12", a.phi12},     {"observable", a.observable}, {"rate", a.rate},
                             {"duration", a.duration}, {"bins", a.bins},           {"theta_star", a.theta_star},
                             {"shift", a.shift},     {"replicates", a.replicates}, {"out", a.out},
                             {"counts_out", a.counts_out}};
  ctx.manifest.seed = seed;
  ctx.emit(a.out, dump_json(j));
  if (!a.counts_out.empty()) ctx.emit(a.counts_out, csv);
  return kExitOk;
}

// --- tomo ----------------------------------------------------------------

struct TomoSimArgs {
  std::string phi12 = "180";
  StateChoice choice;
  double rate = 150.0;
  double duration = 10.0;
  bool exact = false;
  std::string out = "-";
};

int cmd_tomo_simulate(Context& ctx, const TomoSimArgs& a) {
  StateChoice c = a.choice;
  c.phi12 = parse_angle(a.phi12);
  if (!(a.rate >= 0.0) || !(a.duration >= 0.0)) throw UsageError("--rate and --duration must be non-negative");
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);
  const BuiltState b = build_state(c, seed);
  const auto data = tomography::simulate_tomography(b.rho(), a.rate, a.duration, seed, !a.exact);
  std::ostringstream ss;
  tomography::write_csv(ss, data);
  ctx.manifest.parameters = {{"phi12", a.phi12}, {"pipeline", c.pipeline}, {"noise", c.noise},
                             {"rate", a.rate},   {"duration", a.duration}, {"exact", a.exact},
                             {"out", a.out}};
  ctx.manifest.seed = seed;
  ctx.emit(a.out, ss.str());
  return kExitOk;
}

struct TomoRecArgs {
  std::string in;
  std::string phi12 = "180";
  int mc = 100;
  std::string likelihood = "gaussian";
  std::string out = "-";
};

int cmd_tomo_reconstruct(Context& ctx, const TomoRecArgs& a) {
  const double phi = parse_angle(a.phi12);
  if (a.mc < 2) throw UsageError("--mc must be at least 2");
  tomography::MleOptions opt;
  if (a.likelihood == "poisson")
    opt.likelihood = tomography::Likelihood::Poisson;
  else if (a.likelihood != "gaussian")
    throw UsageError("--likelihood must be gaussian or poisson");
  std::istringstream in(read_text(a.in));
  const auto data = tomography::read_csv(in);
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);
  const PureState2Q target = stategen::weighted_graph_state(phi);
  const auto rep = tomography::monte_carlo_report(data, target, a.mc, seed, opt);

  Json j = header("tomo.reconstruct");
  j["input"] = a.in;
  j["target_phi12_deg"] = rad_to_deg(phi);
  j["likelihood"] = a.likelihood;
  j["seed"] = seed;
  j["density_matrix"] = matrix_json(rep.rho.matrix());
  j["fidelity"] = rep.fidelity;
  j["concurrence"] = rep.concurrence;
  j["monte_carlo"] = {{"samples", rep.mc_samples},
                      {"fidelity_mean", rep.fidelity_mean},
                      {"fidelity_std", rep.fidelity_std},
                      {"concurrence_mean", rep.concurrence_mean},
                      {"concurrence_std", rep.concurrence_std}};
  ctx.manifest.parameters = {{"in", a.in}, {"in_sha256", sha256_hex(read_text(a.in))}, {"phi12", a.phi12},
                             {"mc", a.mc}, {"likelihood", a.likelihood},             {"out", a.out}};
  ctx.manifest.seed = seed;
  if (a.out != "-") {
    ctx.out << "fidelity " << fixed2(rep.fidelity_mean) << " +- " << fixed2(rep.fidelity_std) << "  concurrence "
            << fixed2(rep.concurrence_mean) << " +- " << fixed2(rep.concurrence_std) << "\n";
  }
  ctx.emit(a.out, dump_json(j));
  return kExitOk;
}

// --- fringe --------------------------------------------------------------

struct FringeArgs {
  std::vector<std::string> range = {"0", "360"};
  int steps = 37;
  double rate = 150.0;
  double duration = 1.0;
  double contrast = 1.0;
  bool exact = false;
  std::string out = "-";
  std::string fit_out;
};

int cmd_fringe(Context& ctx, const FringeArgs& a) {
  if (a.steps < 4) throw UsageError("--steps must be at least 4");
  if (a.range.size() != 2) throw UsageError("--varphi-range takes two angles");
  if (!(a.contrast > 0.0 && a.contrast <= 1.0)) throw UsageError("--contrast must lie in (0, 1]");
  if (!(a.rate >= 0.0) || !(a.duration >= 0.0)) throw UsageError("--rate and --duration must be non-negative");
  const double lo = parse_angle(a.range[0]);
  const double hi = parse_angle(a.range[1]);
  const std::uint64_t seed = resolve_seed(ctx.seed_flag);

  // Intermediate state (|H,H> - e^{i phi'}|V,H>)/sqrt2 analysed with A on
  // photon 1 and H on photon 2.  Phase jitter of width sqrt(-2 ln V) scales
  // the fringe contrast by V.
  stategen::NoiseModel nm;
  nm.phase_jitter_sigma = std::sqrt(-2.0 * std::log(a.contrast));
  const Ket4 analyser = kron(measurement::polarization_state('A'), measurement::polarization_state('H'));

  std::vector<double> xs, counts, norm;
  for (int i = 0; i < a.steps; ++i) {
    const double vp = lo + (hi - lo) * i / (a.steps - 1);
    stategen::GenerationConfig cfg;
    cfg.hwp_l2 = kPi / 4.0;
    cfg.varphi_prime = vp;
    const auto g = stategen::simulate_generation(cfg);
    const DensityMatrix rho = stategen::apply_noise(g.state, nm, seed);
    const double p = std::clamp((analyser.adjoint() * rho.matrix() * analyser)(0, 0).real(), 0.0, 1.0);
    const double mean = a.rate * a.duration * p;
    double n = mean;
    if (!a.exact) {
      rng::Engine eng = rng::make_engine(seed, rng::Stream::Experiment, static_cast<std::uint64_t>(i));
      n = static_cast<double>(rng::poisson(eng, mean));
    }
    xs.push_back(i);
    counts.push_back(n);
  }
  const double nmax = *std::max_element(counts.begin(), counts.end());
  const double nmin = *std::min_element(counts.begin(), counts.end());
  if (!(nmax > 0.0)) throw DegenerateError("fringe sweep recorded no counts");
  for (double n : counts) norm.push_back(n / nmax);
  const stats::FitResult fit = stats::cosine_fit(xs, norm);
  // Extremal counts are biased upward by shot noise; the fitted contrast is not.
  const double vis_extrema = stats::visibility(nmax, nmin);
  if (!(std::abs(fit.d) > 0.0)) throw NumericalError("cosine fit has zero offset", fit.residual);
  const double vis = std::min(1.0, std::abs(fit.a) / std::abs(fit.d));

  std::string csv = "# schema_version=1\nstep,varphi_deg,counts,normalized\n";
  for (int i = 0; i < a.steps; ++i) {
    const double vp = lo + (hi - lo) * i / (a.steps - 1);
    csv += std::to_string(i) + "," + fmt(rad_to_deg(vp)) + "," + fmt(counts[static_cast<std::size_t>(i)]) + "," +
           fmt(norm[static_cast<std::size_t>(i)]) + "\n";
  }
  Json j = header("fringe");
  j["steps"] = a.steps;
  j["varphi_range_deg"] = {rad_to_deg(lo), rad_to_deg(hi)};
  j["rate"] = a.rate;
  j["duration"] = a.duration;
  j["contrast"] = a.contrast;
  j["exact"] = a.exact;
  j["seed"] = seed;
  j["visibility"] = vis;
  j["visibility_extrema"] = vis_extrema;
  j["fit"] = {{"model", "a*cos(b*step + c) + d"}, {"a", fit.a}, {"b", fit.b}, {"c", fit.c}, {"d", fit.d},
              {"residual_rms", fit.residual}};

  ctx.manifest.parameters = {{"varphi_range", a.range}, {"steps", a.steps},     {"rate", a.rate},
                             {"duration", a.duration},  {"contrast", a.contrast}, {"exact", a.exact},
                             {"out", a.out},            {"fit_out", a.fit_out}};
  ctx.manifest.seed = seed;
  ctx.emit(a.out, csv);
  if (!a.fit_out.empty())
    ctx.emit(a.fit_out, dump_json(j));
  else
    ctx.out << "visibility " << fixed2(vis) << "  a " << fixed2(fit.a) << "  b " << fixed2(fit.b) << "  c "
            << fixed2(fit.c) << "  d " << fixed2(fit.d) << "\n";
  return kExitOk;
}

void add_state_flags(CLI::App* sub, std::string& phi12, StateChoice& c) {
  sub->add_option("--phi12", phi12, "graph weight (degrees, or radians with an 'rad' suffix)");
  sub->add_flag("--pipeline", c.pipeline, "generate through the simulated optical pipeline");
  sub->add_option("--noise", c.noise, "depolarizing probability and phase-jitter sigma (degrees)")->expected(2);
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = text;
  bool radians = false;
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "rad") == 0) {
    radians = true;
    t.resize(t.size() - 3);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not an angle: '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw UsageError("not an angle: '" + text + "'");
  return radians ? v : deg_to_rad(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted graph state simulation and analysis toolkit", "wgs"};
  app.require_subcommand(1);
  Context ctx{out, err};
  std::optional<std::uint64_t> seed;
  app.add_option("--manifest", ctx.manifest_path, "manifest path (default: <first output>.manifest.json)");
  app.add_flag("--no-timestamp", ctx.no_timestamp, "omit the timestamp from the manifest");
  app.add_option("--seed", seed, "master seed (default: $WGS_SEED, else 1)");
  app.set_version_flag("--version", kToolVersion);

  std::function<int()> action;

  StateArgs sa;
  auto* st = app.add_subcommand("state", "write a weighted graph state");
  add_state_flags(st, sa.phi12, sa.choice);
  st->add_option("--out", sa.out, "output JSON ('-' for stdout)");
  st->callback([&] { action = [&] { return cmd_state(ctx, sa); }; });

  QfiArgs qa;
  auto* qf = app.add_subcommand("qfi", "quantum Fisher information table");
  auto* grid = qf->add_option("--grid", qa.grid, "number of equally spaced weights on [0, 180] deg");
  auto* single = qf->add_option("--phi12", qa.phi12, "a single weight");
  grid->excludes(single);
  qf->add_option("--out", qa.out, "output CSV ('-' for stdout)");
  qf->callback([&] {
    if (qa.grid == 0 && qa.phi12.empty()) qa.grid = 9;
    action = [&] { return cmd_qfi(ctx, qa); };
  });

  OptimizeArgs oa;
  auto* op = app.add_subcommand("optimize", "search for the optimal local observable");
  op->add_option("--phi12", oa.phi12, "graph weight");
  op->add_option("--kind", oa.kind, "pauli or general")->check(CLI::IsMember({"pauli", "general"}));
  op->add_option("--out", oa.out, "output JSON ('-' for stdout)");
  op->callback([&] { action = [&] { return cmd_optimize(ctx, oa); }; });

  SenseArgs sea;
  auto* se = app.add_subcommand("sense", "simulate a sensing run and bootstrap it");
  se->add_option("--phi12", sea.phi12, "graph weight");
  se->add_option("--observable", sea.observable, "Pauli pair (e.g. ZY) or axis:b1,a1,b2,a2 in degrees");
  se->add_option("--rate", sea.rate, "coincidence rate (counts/s)");
  se->add_option("--duration", sea.duration, "bin duration (s)");
  se->add_option("--bins", sea.bins, "bins per phase setting");
  se->add_option("--theta-star", sea.theta_star, "operating point");
  se->add_option("--shift", sea.shift, "finite-difference shift h");
  se->add_option("--replicates", sea.replicates, "bootstrap replicates");
  se->add_option("--out", sea.out, "report JSON ('-' for stdout)");
  se->add_option("--counts-out", sea.counts_out, "raw counts CSV");
  se->callback([&] { action = [&] { return cmd_sense(ctx, sea); }; });

  auto* tomo = app.add_subcommand("tomo", "tomography");
  tomo->require_subcommand(1);
  TomoSimArgs tsa;
  auto* ts = tomo->add_subcommand("simulate", "simulate the 16-setting dataset");
  add_state_flags(ts, tsa.phi12, tsa.choice);
  ts->add_option("--rate", tsa.rate, "coincidence rate (counts/s)");
  ts->add_option("--duration", tsa.duration, "acquisition time per setting (s)");
  ts->add_flag("--exact", tsa.exact, "write expected counts instead of Poisson draws");
  ts->add_option("--out", tsa.out, "output CSV ('-' for stdout)");
  ts->callback([&] { action = [&] { return cmd_tomo_simulate(ctx, tsa); }; });
  TomoRecArgs tra;
  auto* tr = tomo->add_subcommand("reconstruct", "maximum-likelihood reconstruction");
  tr->add_option("--in", tra.in, "dataset CSV")->required();
  tr->add_option("--phi12", tra.phi12, "weight of the target state for fidelity");
  tr->add_option("--mc", tra.mc, "Monte Carlo samples");
  tr->add_option("--likelihood", tra.likelihood, "gaussian or poisson");
  tr->add_option("--out", tra.out, "report JSON ('-' for stdout)");
  tr->callback([&] { action = [&] { return cmd_tomo_reconstruct(ctx, tra); }; });

  FringeArgs fa;
  auto* fr = app.add_subcommand("fringe", "interferometer phase sweep and cosine fit");
  fr->add_option("--varphi-range", fa.range, "sweep start and end")->expected(2);
  fr->add_option("--steps", fa.steps, "number of sweep points");
  fr->add_option("--rate", fa.rate, "coincidence rate (counts/s)");
  fr->add_option("--duration", fa.duration, "time per step (s)");
  fr->add_option("--contrast", fa.contrast, "fringe contrast set through phase jitter");
  fr->add_flag("--exact", fa.exact, "use expected counts instead of Poisson draws");
  fr->add_option("--out", fa.out, "sweep CSV ('-' for stdout)");
  fr->add_option("--fit-out", fa.fit_out, "fit and visibility JSON");
  fr->callback([&] { action = [&] { return cmd_fringe(ctx, fa); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  ctx.seed_flag = seed;
  ctx.manifest.command = app.get_subcommands().front()->get_name();
  if (tomo->parsed()) ctx.manifest.command += "." + tomo->get_subcommands().front()->get_name();
  try {
    const int code = action();
    ctx.finish();
    return code;
  } catch (const ZeroSensitivityError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << " (best value " << e.best_value() << ")\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace wgs::cli

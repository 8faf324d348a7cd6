// Figure-level acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "config.hpp"
#include "cosmoferm/binary_io.hpp"
#include "cosmoferm/contour_analysis.hpp"
#include "cosmoferm/errors.hpp"
#include "cosmoferm/production.hpp"
#include "cosmoferm/quasiparticle.hpp"
#include "cosmoferm/real_space.hpp"
#include "cosmoferm/symmetry.hpp"
#include "fock_oracle.hpp"
#include "runner.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace cosmoferm;
using nlohmann::json;

namespace {

const int kWorkers = std::max(1u, std::thread::hardware_concurrency());

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("no column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }
  std::vector<double> numbers(const std::string& name) const {
    const std::size_t c = col(name);
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(std::stod(r[c]));
    return v;
  }
};

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

class Presets {
 public:
  explicit Presets(fs::path scratch) : scratch_(std::move(scratch)) {}

  const simulate::RunManifest& get(const std::string& name) {
    auto it = runs_.find(name);
    if (it != runs_.end()) return it->second;
    simulate::RunConfig cfg = simulate::load_config(simulate::preset_path(name));
    cfg.output.directory = scratch_ / name;
    cfg.output.binary = true;
    std::fprintf(stderr, "running preset %s ...\n", name.c_str());
    return runs_.emplace(name, simulate::run(cfg, {kWorkers})).first->second;
  }

  fs::path dir(const std::string& name) { return get(name).directory; }

  const json& analysis(const std::string& preset, const std::string& name) {
    for (const auto& a : get(preset).document.at("analyses")) {
      if (a.at("name") == name) return a;
    }
    throw std::runtime_error(preset + " has no analysis " + name);
  }

  ContourField contour(const std::string& preset, const std::string& name) {
    std::ifstream in(dir(preset) / (name + ".bin"), std::ios::binary);
    return io::read_contour(in);
  }

  const fs::path& scratch() const { return scratch_; }

 private:
  fs::path scratch_;
  std::map<std::string, simulate::RunManifest> runs_;
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

double max_rel_dev(const Table& measured, const Table& predicted, double lo, double hi) {
  const auto eta = measured.numbers("eta[a]");
  const auto m = measured.numbers("S_A[nats]");
  const auto q = predicted.numbers("S_A[nats]");
  double worst = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] < lo || eta[i] > hi) continue;
    worst = std::max(worst, std::abs(m[i] - q[i]) / std::abs(q[i]));
  }
  return worst;
}

// Distance of the left cone front from the block edge, from the level at a
// tenth of the contour already reached behind the front at the last sample.
std::vector<double> cone_front(const ContourField& f) {
  const std::size_t last = f.num_samples() - 1;
  const int edge = std::max(1, f.length() / 8);
  double plateau = 0.0;
  for (int i = 0; i < edge; ++i) plateau += f.spinor_summed(last, i);
  plateau /= edge;
  return left_front(f, 0.1 * plateau);
}

LineFit front_fit(const ContourField& f, const std::vector<double>& axis, double lo, double hi) {
  const std::vector<double> front = cone_front(f);
  return fit_line(axis, front, lo, hi);
}

// ---------------------------------------------------------------------------

Verdict criterion1(Presets& p) {
  auto metrics = [&](const std::string& preset) {
    const Table m = read_csv(p.dir(preset) / "entropy_measured.csv");
    const Table q = read_csv(p.dir(preset) / "entropy_qp.csv");
    const json& qp = p.analysis(preset, "entropy_qp");
    const double len = qp.at("block").at("length").get<double>();
    const double vmax = qp.at("summary").at("v_max").get<double>();
    const double sat = len / vmax;
    return std::pair{max_rel_dev(m, q, 0.5 * sat, sat), max_rel_dev(m, q, 1.25 * sat, 1e300)};
  };
  const auto [small_growth, small_plateau] = metrics("fig1a");
  const auto [growth, plateau] = metrics("fig1b");
  const bool ok = small_growth > 0.05 && growth < 0.05 && plateau < 0.03;
  return {ok, fmt::format("l=32: growth dev {:.3f} (visible > 0.05); l=128: growth dev {:.4f} "
                          "(< 0.05), plateau dev {:.4f} (< 0.03)",
                          small_growth, growth, plateau)};
}

Verdict criterion2(Presets& p) {
  auto slope = [&](const std::string& preset) {
    const ContourField f = p.contour(preset, "contour");
    const double len = f.length();
    return front_fit(f, f.times(), 0.1 * len, 0.4 * len);
  };
  const LineFit free_fit = slope("fig2_free");
  const LineFit int_fit = slope("fig2_int");
  const double v_free =
      p.analysis("fig2_free", "entropy_qp").at("summary").at("velocity").at("group_velocity");
  const double v_int =
      p.analysis("fig2_int", "entropy_qp").at("summary").at("velocity").at("group_velocity");
  const double dev_free = std::abs(free_fit.slope / (2.0 * v_free) - 1.0);
  const double dev_int = std::abs(int_fit.slope / (2.0 * v_int) - 1.0);
  const bool ok = dev_free < 0.10 && dev_int < 0.10 && int_fit.slope > free_fit.slope;
  return {ok, fmt::format("free slope {:.4f} vs 2v_g {:.4f} (dev {:.3f}); g0^2=1 slope {:.4f} vs "
                          "2v_int {:.4f} (dev {:.3f}); compressed: {}",
                          free_fit.slope, 2 * v_free, dev_free, int_fit.slope, 2 * v_int, dev_int,
                          int_fit.slope > free_fit.slope)};
}

Verdict criterion3(Presets& p) {
  const simulate::RunConfig cfg = simulate::load_config(simulate::preset_path("fig4"));
  const auto& ds = std::get<DeSitterProfile>(cfg.profile.kind());
  const double a0 = cfg.profile.scale_factor(ds.eta0);
  const json& init = p.get("fig4").document.at("trajectory").at("initial_condensates");
  const double a = cfg.lattice.spacing;
  const double vg = group_velocity(cfg.lattice.mass_term(a0), init.at("sigma").get<double>() / a,
                                   init.at("pi").get<double>() / a, a);
  const ContourField f = p.contour("fig4", "contour");
  const std::size_t last = f.num_samples() - 1;
  std::vector<double> profile(static_cast<std::size_t>(f.length()));
  for (int i = 0; i < f.length(); ++i) profile[static_cast<std::size_t>(i)] = f.spinor_summed(last, i);
  const int band = dark_band_width(profile, 1e-3);
  const double predicted = horizon_width(f.length() * a, vg, ds.hubble, a0) / a;

  // Cones: straight against eta, bending over against t.
  const double reach = 0.5 * (f.length() - predicted);
  auto bend = [&](const std::vector<double>& axis) {
    const std::vector<double> front = cone_front(f);
    std::vector<double> x, y;
    for (std::size_t s = 0; s < front.size(); ++s) {
      if (front[s] >= 0.1 * reach && front[s] <= 0.9 * reach) {
        x.push_back(axis[s]);
        y.push_back(front[s]);
      }
    }
    const std::size_t h = x.size() / 2;
    const LineFit early = fit_line(std::span(x).first(h), std::span(y).first(h), -1e300, 1e300);
    const LineFit late = fit_line(std::span(x).subspan(h), std::span(y).subspan(h), -1e300, 1e300);
    return late.slope / early.slope;
  };
  const double conformal = bend(f.times());
  const double cosmological = bend(f.cosmological_times());
  const bool ok = std::abs(band - predicted) <= 2.0 && conformal > 0.75 && conformal < 1.33 &&
                  cosmological < 0.6;
  return {ok, fmt::format("dark band {} sites vs l - 4v_g/(H a0) = {:.2f} (v_g {:.4f}, +-2); late/"
                          "early front slope: conformal {:.3f}, cosmological {:.3f} (< 0.6)",
                          band, predicted, vg, conformal, cosmological)};
}

Verdict criterion4(Presets& p) {
  // (a) Pi = 0 contours
  double mirror = 0.0;
  for (const std::string preset : {"fig2_free", "fig2_int", "fig4"}) {
    const json& s = p.analysis(preset, "contour").at("summary");
    mirror = std::max({mirror, s.at("mirror_up").get<double>(), s.at("mirror_down").get<double>(),
                       s.at("spinor_difference").get<double>()});
  }
  // (b) Pi != 0 quench runs
  double cp = 0.0;
  double spread = 1e300;
  for (const std::string preset : {"fig5", "fig3d"}) {
    const json& s = p.analysis(preset, "contour").at("summary");
    cp = std::max(cp, s.at("cp_residual").get<double>());
    spread = std::min(spread, s.at("mirror_up").get<double>());
  }
  // (c) operator pattern
  const json& ops = p.analysis("fig5", "symmetry").at("summary").at("operators").at("initial");
  const json& ref = p.analysis("fig2_int", "entropy_qp").at("summary").at("reference");
  const LatticeSpec spec{128, 1.0, -1.0, 1.0};
  const SymmetryReport zero = symmetry_report(spec, ref.at("mass_term"), ref.at("sigma"),
                                              ref.at("pi"));
  bool pattern = true;
  for (const auto& e : zero.entries) pattern = pattern && e.holds;
  for (const char* name : {"T", "CP"}) pattern = pattern && ops.at(name).at("holds").get<bool>();
  for (const char* name : {"P", "C", "S"}) pattern = pattern && !ops.at(name).at("holds").get<bool>();
  // expansion breaks T away from the reflection point
  const ScaleFactorProfile ramp(ExponentialProfile{0.7, 1.3, 0.3});
  const double t_broken = time_reversal_condition(spec, ramp, {1.26, 0.43}, 0.25 * ramp.ramp_end(),
                                                  0.5 * ramp.ramp_end());
  pattern = pattern && t_broken > 1e-10;
  const bool ok = mirror < 1e-8 && cp < 1e-6 && spread > 1e-2 && pattern;
  return {ok, fmt::format("(a) Pi=0 mirror/spinor residual {:.2e} (< 1e-8); (b) CP residual {:.2e} "
                          "(< 1e-6), per-spinor asymmetry {:.3f} (> 1e-2); (c) T,C,S,P,CP hold at "
                          "Pi=0, T,CP hold and P,C,S broken at Pi!=0, T broken by expansion "
                          "({:.2e}): {}",
                          mirror, cp, spread, t_broken, pattern ? "match" : "MISMATCH")};
}

Verdict criterion5(Presets& p) {
  const Table t = read_csv(p.dir("fig6") / "symmetry.csv");
  const auto ha = t.numbers("Ha[1]");
  const auto asym = t.numbers("asymmetry[1]");
  double fast = -1.0;
  double slow = -1.0;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    if (ha[i] == 100.0) fast = asym[i];
    if (ha[i] == 0.3) slow = asym[i];
  }
  const bool ok = fast >= 0.0 && fast < 1e-8 && slow > 1e-3 && ha.size() >= 2;
  return {ok, fmt::format("asymmetry Ha=100: {:.3e} (< 1e-8), Ha=0.3: {:.3e} (> 1e-3); sweep table "
                          "with {} rows from one preset",
                          fast, slow, ha.size())};
}

Verdict criterion6() {
  const double m = -1.0;
  const LatticeSpec spec{128, 1.0, m, 0.0};
  auto run = [&](bool sudden) {
    const ScaleFactorProfile profile(ExponentialProfile{0.7, 1.3, 100.0, sudden});
    CorrelationState s = self_consistent_ground_state(spec, 0.7).state;
    s.set_time(profile.start());
    EvolutionOptions opts;
    opts.step = 1e-4;
    opts.sample_every = 1000000;
    const Trajectory t = evolve(s, profile, profile.ramp_end(), opts);
    const ProductionSpectrum sp =
        bogoliubov_spectrum(t.snapshots.back(), instantaneous_reference(t.snapshots.back(), 1.3));
    double worst = 0.0;
    for (const auto& r : sp.records) {
      const double overlap = 0.5 * (1.0 - testing_util::dot_unit(testing_util::bloch(r.k, m * 0.7),
                                                                 testing_util::bloch(r.k, m * 1.3)));
      worst = std::max(worst, std::abs(r.beta_sq - overlap));
    }
    return worst;
  };
  const double ramp = run(false);
  const double exact = run(true);

  double fock = 0.0;
  const int sites = 4;
  for (double mass : {1.0, 0.3, -0.4, -1.5}) {
    const LatticeSpec s4{sites, 1.0, mass, 0.0};
    const RealSpaceCorrelation corr = real_space_correlation(free_ground_state(s4, mass, 0.0, 0.0));
    const oracle::FockGround g = oracle::fock_ground_state(oracle::wilson_real_space(sites, mass));
    for (int len = 1; len < sites; ++len) {
      fock = std::max(fock, std::abs(block_entropy(corr, BlockSpec{0, len, sites}) -
                                     oracle::fock_block_entropy(g, 2 * len)));
    }
  }
  const bool ok = ramp < 2e-2 && exact < 1e-10 && fock < 1e-8;
  return {ok, fmt::format("(a) |beta|^2 vs overlap formula: Ha=100 ramp {:.2e} (< 2e-2), exact "
                          "quench {:.2e} (< 1e-10); (b) N_S=4 Fock entropy {:.2e} (< 1e-8)",
                          ramp, exact, fock)};
}

Verdict criterion7(Presets& p) {
  double purity = 0.0;
  double trace = 0.0;
  double sum_rule = 0.0;
  double mode = 0.0;
  int trajectories = 0;
  for (const std::string& name : simulate::preset_names()) {
    const simulate::RunManifest& m = p.get(name);
    if (m.document.contains("trajectory")) {
      const json& t = m.document.at("trajectory");
      purity = std::max(purity, t.at("max_purity_defect").get<double>());
      trace = std::max(trace, t.at("max_trace_defect").get<double>());
      ++trajectories;
    }
    for (const auto& a : m.document.at("analyses")) {
      if (a.at("kind") == "contour") {
        sum_rule = std::max(sum_rule, a.at("summary").at("sum_rule_defect").get<double>());
      }
    }
    for (const auto& f : m.files) {
      if (fs::path(f.path).extension() != ".csv") continue;
      const Table t = read_csv(m.directory / f.path);
      if (std::find(t.header.begin(), t.header.end(), "S_mode[nats]") == t.header.end()) continue;
      for (double v : t.numbers("S_mode[nats]")) mode = std::max(mode, v);
    }
  }

  // static free run: a mass quench in a non-expanding box
  const std::string text = R"(lattice: {sites: 128, ma: 0.5, g0sq: 0.0}
profile: {kind: static, a: 1.0}
preparation: {kind: mass_quench, ma_pre: -1.0}
evolution: {eta_end: 50.0, step: 0.01, sample_every: 50}
analyses:
  - kind: condensates
)";
  simulate::RunConfig cfg = simulate::parse_config(text, "static-free");
  cfg.output.directory = p.scratch() / "static_free";
  const simulate::RunManifest m = simulate::run(cfg, {kWorkers});
  const double energy = m.document.at("trajectory").at("relative_energy_drift").get<double>();

  const bool ok = purity < 1e-8 && trace < 1e-10 && sum_rule < 1e-8 && energy < 1e-8 &&
                  mode <= std::log(2.0) + 1e-12;
  return {ok, fmt::format("{} preset trajectories: purity {:.2e} (< 1e-8), trace {:.2e} (< 1e-10); "
                          "contour sum rule {:.2e} (< 1e-8); static free energy drift {:.2e} "
                          "(< 1e-8); max mode entropy {:.6f} (<= log 2)",
                          trajectories, purity, trace, sum_rule, energy, mode)};
}

Verdict criterion8(Presets& p) {
  const Table m = read_csv(p.dir("fig3c") / "entropy_measured.csv");
  const Table q = read_csv(p.dir("fig3c") / "entropy_qp.csv");
  const json& qp = p.analysis("fig3c", "entropy_qp");
  const double len = qp.at("block").at("length").get<double>();
  const double vmax = qp.at("summary").at("v_max").get<double>();
  const double mismatch = max_rel_dev(m, q, 0.5 * len / vmax, 1e300);

  // Pi amplitude per quarter of the post-ramp record
  const Table c = read_csv(p.dir("fig3b") / "condensates.csv");
  const auto eta = c.numbers("eta[a]");
  const auto pi = c.numbers("pi[1/a]");
  const double ramp_end = p.analysis("fig3c", "entropy_qp").at("summary").at("origin");
  std::vector<double> post;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] > ramp_end) post.push_back(pi[i]);
  }
  const std::size_t n = post.size() / 4;
  auto amplitude = [&](std::size_t quarter) {
    const auto b = post.begin() + static_cast<std::ptrdiff_t>(quarter * n);
    const auto [lo, hi] = std::minmax_element(b, b + static_cast<std::ptrdiff_t>(n));
    return 0.5 * (*hi - *lo);
  };
  const double early = amplitude(1);
  const double late = amplitude(3);
  const bool ok = mismatch > 0.20 && late / early >= 0.5;
  return {ok, fmt::format("qp misprediction {:.3f} (> 0.20); Pi amplitude 2nd quarter {:.4f}, last "
                          "quarter {:.4f}, ratio {:.3f} (>= 0.5)",
                          mismatch, early, late, late / early)};
}

}  // namespace

int main() {
  fs::path scratch = ACCEPTANCE_SCRATCH_DIR;
  fs::create_directories(scratch);
  Presets presets(scratch);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"quasi-particle entanglement entropy agreement", [&] { return criterion1(presets); }},
      {"light-cone slope, free and interacting", [&] { return criterion2(presets); }},
      {"de Sitter horizon band and curved cones", [&] { return criterion3(presets); }},
      {"symmetry suite", [&] { return criterion4(presets); }},
      {"spectrum symmetry versus adiabaticity", [&] { return criterion5(presets); }},
      {"oracle equivalence", [] { return criterion6(); }},
      {"invariant suite", [&] { return criterion7(presets); }},
      {"quasi-particle failure regime", [&] { return criterion8(presets); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s | %s\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

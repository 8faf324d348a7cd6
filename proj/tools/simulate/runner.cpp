#include "runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "cosmoferm/binary_io.hpp"
#include "cosmoferm/contour_analysis.hpp"
#include "cosmoferm/errors.hpp"
#include "cosmoferm/production.hpp"
#include "cosmoferm/quasiparticle.hpp"
#include "cosmoferm/real_space.hpp"

namespace simulate {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cosmoferm;

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw RunError("cannot open " + path.string() + " for writing");
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw RunError("write failed");
  }

 private:
  std::ofstream out_;
};

std::string to_hex(const unsigned char* data, unsigned len) {
  std::string s;
  for (unsigned i = 0; i < len; ++i) s += fmt::format("{:02x}", data[i]);
  return s;
}

std::string sha256_text(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  return to_hex(md, len);
}

// Runs one stage and rewraps library errors with its label.
template <class F>
auto stage(const std::string& label, F&& fn) {
  try {
    return fn();
  } catch (const cosmoferm::Error& e) {
    throw RunError(label + ": " + e.what());
  }
}

struct Context {
  const RunConfig& cfg;
  const RunOptions& opts;
  fs::path dir;
  Trajectory traj;
  GroundState prepared;
  std::vector<FileRecord> files;
  // spacing conversions for output columns
  double a() const { return cfg.lattice.spacing; }

  fs::path file(const std::string& name) const { return dir / name; }

  void record(const std::string& name) {
    files.push_back({name, sha256_file(dir / name), fs::file_size(dir / name)});
  }

  std::size_t nearest_sample(std::optional<double> eta) const {
    if (!eta) return traj.size() - 1;
    std::size_t best = 0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (std::abs(traj.times[i] - *eta) < std::abs(traj.times[best] - *eta)) best = i;
    }
    return best;
  }

  std::vector<std::size_t> picks(int stride) const {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(stride)) p.push_back(i);
    return p;
  }

  std::vector<std::string> time_cells(double eta) const {
    return {num(eta / a()), num(cfg.profile.cosmological_time(eta) / a()),
            num(cfg.profile.scale_factor(eta))};
  }

  ReferenceHamiltonian reference(const ReferenceConfig& r, const CorrelationState& s) const {
    const double a_ref = s.scale_factor();
    switch (r.mode) {
      case ReferenceMode::Vacuum:
        return vacuum_reference(cfg.lattice, a_ref, condensates(s).pi, cfg.preparation.gap);
      case ReferenceMode::Frozen:
        return {cfg.lattice.mass_term(a_ref), r.frozen.sigma / a(), r.frozen.pi / a(), a_ref};
      case ReferenceMode::Instantaneous:
        break;
    }
    return instantaneous_reference(s, a_ref);
  }
};

const char* reference_name(ReferenceMode m) {
  switch (m) {
    case ReferenceMode::Vacuum: return "vacuum";
    case ReferenceMode::Frozen: return "frozen";
    case ReferenceMode::Instantaneous: break;
  }
  return "instantaneous";
}

json block_json(const BlockSpec& b) {
  return {{"first", b.first}, {"length", b.length}, {"num_sites", b.num_sites}};
}

json reference_json(const ReferenceHamiltonian& r, double a) {
  return {{"mass_term", r.mass_term * a}, {"sigma", r.sigma * a}, {"pi", r.pi * a},
          {"scale_factor", r.scale_factor}};
}

GroundState prepare(const RunConfig& cfg) {
  // a sudden profile already reads af at eta = 0; prepare in the a0 region
  const auto* e = std::get_if<ExponentialProfile>(&cfg.profile.kind());
  const double a_val = e ? e->a0 : cfg.profile.scale_factor(cfg.profile.start());
  GroundState g = cfg.preparation.kind == PreparationKind::MassQuench
                      ? mass_quench_prepare(cfg.lattice, cfg.preparation.ma_pre, a_val,
                                            cfg.preparation.gap)
                      : self_consistent_ground_state(cfg.lattice, a_val, cfg.preparation.gap);
  g.state.set_time(cfg.profile.start());
  return g;
}

json trajectory_summary(const Context& c) {
  double purity = 0.0;
  double trace = 0.0;
  for (const auto& s : c.traj.snapshots) {
    purity = std::max(purity, s.purity_defect());
    trace = std::max(trace, s.trace_defect());
  }
  json j{{"samples", c.traj.size()},
         {"eta_begin", c.traj.times.front() / c.a()},
         {"eta_end", c.traj.times.back() / c.a()},
         {"max_purity_defect", purity},
         {"max_trace_defect", trace},
         {"initial_condensates",
          {{"sigma", c.prepared.condensates.sigma * c.a()},
           {"pi", c.prepared.condensates.pi * c.a()}}}};
  if (std::holds_alternative<StaticProfile>(c.cfg.profile.kind())) {
    const double m = c.cfg.lattice.mass_term(c.traj.snapshots.front().scale_factor());
    const double e0 = mean_field_energy(c.traj.snapshots.front(), m);
    double drift = 0.0;
    for (const auto& s : c.traj.snapshots) {
      drift = std::max(drift, std::abs(mean_field_energy(s, m) - e0));
    }
    j["relative_energy_drift"] = drift / std::max(std::abs(e0), 1e-300);
  }
  return j;
}

void write_contour_rows(CsvWriter& w, const Context& c, const ContourField& f,
                        SpinorMode mode) {
  for (std::size_t s = 0; s < f.num_samples(); ++s) {
    const std::string eta = num(f.times()[s] / c.a());
    const std::string t = num(f.cosmological_times()[s] / c.a());
    for (int i = 0; i < f.length(); ++i) {
      const std::string site = std::to_string(i + 1);
      switch (mode) {
        case SpinorMode::Both:
        case SpinorMode::Zigzag:
          w.row({eta, t, site, "u", num(f.value(s, Spinor::Up, i))});
          w.row({eta, t, site, "d", num(f.value(s, Spinor::Down, i))});
          break;
        case SpinorMode::Up:
          w.row({eta, t, site, "u", num(f.value(s, Spinor::Up, i))});
          break;
        case SpinorMode::Down:
          w.row({eta, t, site, "d", num(f.value(s, Spinor::Down, i))});
          break;
        case SpinorMode::Summed:
          w.row({eta, t, site, "sum", num(f.spinor_summed(s, i))});
          break;
      }
    }
  }
}

json run_entropy(Context& c, const AnalysisConfig& an, const EntropyAnalysis& p) {
  const BlockSpec block = p.block.resolve(c.cfg.lattice.num_sites);
  const std::vector<double> s = entropy_trajectory(c.traj, block, p.stride, c.opts.workers);
  const std::string name = an.name + "_measured.csv";
  CsvWriter w(c.file(name), {"eta[a]", "t[a]", "a[1]", "S_A[nats]"});
  const auto picks = c.picks(p.stride);
  for (std::size_t i = 0; i < picks.size(); ++i) {
    auto cells = c.time_cells(c.traj.times[picks[i]]);
    cells.push_back(num(s[i]));
    w.row(cells);
  }
  w.close();
  c.record(name);
  return {{"files", {name}},
          {"block", block_json(block)},
          {"summary", {{"final", s.back()}, {"max", *std::max_element(s.begin(), s.end())}}}};
}

json run_contour(Context& c, const AnalysisConfig& an, const ContourAnalysis& p) {
  const BlockSpec block = p.block.resolve(c.cfg.lattice.num_sites);
  const ContourField f = contour_trajectory(c.traj, block, p.stride, c.opts.workers);
  std::vector<std::string> files;
  const std::string name = an.name + ".csv";
  if (p.spinor_mode == SpinorMode::Zigzag) {
    CsvWriter w(c.file(name), {"eta[a]", "t[a]", "j", "S[nats]"});
    const ZigzagField z = zigzag_view(f);
    for (std::size_t s = 0; s < z.rows.size(); ++s) {
      for (std::size_t j = 0; j < z.rows[s].size(); ++j) {
        w.row({num(f.times()[s] / c.a()), num(f.cosmological_times()[s] / c.a()),
               std::to_string(j + 1), num(z.rows[s][j])});
      }
    }
    w.close();
  } else {
    CsvWriter w(c.file(name), {"eta[a]", "t[a]", "site", "spinor", "S[nats]"});
    write_contour_rows(w, c, f, p.spinor_mode);
    w.close();
  }
  c.record(name);
  files.push_back(name);
  if (c.cfg.output.binary) {
    const std::string bin = an.name + ".bin";
    io::write_contour(c.file(bin), f);
    c.record(bin);
    files.push_back(bin);
  }
  const json summary{{"sum_rule_defect", f.sum_rule_defect()},
                     {"min_value", f.min_value()},
                     {"cp_residual", contour_cp_check(f)},
                     {"mirror_up", spinor_mirror_asymmetry(f, Spinor::Up)},
                     {"mirror_down", spinor_mirror_asymmetry(f, Spinor::Down)},
                     {"spinor_difference", spinor_difference(f)},
                     {"samples", f.num_samples()}};
  return {{"files", files},
          {"block", block_json(block)},
          {"spinor_mode", p.spinor_mode == SpinorMode::Zigzag ? "zigzag" : "long"},
          {"cosmological_axis", p.cosmological_axis},
          {"summary", summary}};
}

void write_spectrum(const Context& c, const fs::path& path, const ProductionSpectrum& sp) {
  CsvWriter w(path, {"ka[rad]", "beta_sq[1]", "S_mode[nats]"});
  for (const auto& r : sp.records) {
    w.row({num(r.k * c.a()), num(r.beta_sq), num(mode_pair_entropy(r.beta_sq).mode)});
  }
  w.close();
}

json run_spectrum(Context& c, const AnalysisConfig& an, const SpectrumAnalysis& p) {
  const CorrelationState& s = c.traj.snapshots[c.nearest_sample(p.eta)];
  const ReferenceHamiltonian ref = c.reference(p.reference, s);
  const ProductionSpectrum sp = bogoliubov_spectrum(s, ref);
  const std::string name = an.name + ".csv";
  write_spectrum(c, c.file(name), sp);
  c.record(name);
  double max_mode = 0.0;
  for (const auto& r : sp.records) max_mode = std::max(max_mode, mode_pair_entropy(r.beta_sq).mode);
  return {{"files", {name}},
          {"summary",
           {{"eta", s.time() / c.a()},
            {"reference_mode", reference_name(p.reference.mode)},
            {"reference", reference_json(ref, c.a())},
            {"total_beta_sq", sp.total()},
            {"density", particle_density(sp, c.cfg.lattice) * c.a()},
            {"asymmetry", spectrum_asymmetry(sp)},
            {"max_mode_entropy", max_mode}}}};
}

json run_qp(Context& c, const AnalysisConfig& an, const QPAnalysis& p) {
  const BlockSpec block = p.block.resolve(c.cfg.lattice.num_sites);
  const CorrelationState& s = c.traj.snapshots[c.nearest_sample(p.spectrum_eta)];
  const ReferenceHamiltonian ref = c.reference(p.reference, s);
  const ProductionSpectrum sp = bogoliubov_spectrum(s, ref);
  const double origin = p.origin ? *p.origin
                        : std::isfinite(c.cfg.profile.ramp_end()) ? c.cfg.profile.ramp_end()
                                                                  : c.cfg.profile.start();

  Dispersion disp;
  json velocity;
  if (p.velocity == VelocitySource::Renormalized) {
    const RenormalizedVelocity rv = renormalized_velocity(
        c.traj, p.window_begin, p.window_end, p.equilibration_tolerance);
    const double a_f = c.traj.scale_factors.back();
    disp = dispersion_and_velocity(c.cfg.lattice, c.cfg.lattice.mass_term(a_f), rv.mean.sigma,
                                   rv.mean.pi);
    velocity = {{"source", "renormalized"},
                {"sigma", rv.mean.sigma * c.a()},
                {"pi", rv.mean.pi * c.a()},
                {"sigma_stdev", rv.sigma_stdev * c.a()},
                {"pi_stdev", rv.pi_stdev * c.a()},
                {"window_samples", rv.samples}};
  } else {
    disp = dispersion_and_velocity(c.cfg.lattice, ref.mass_term, ref.sigma, ref.pi);
    velocity = {{"source", "reference"}};
  }
  velocity["group_velocity"] = disp.group_velocity;

  QPInput input = make_qp_input(sp, disp, block.length * c.a(), c.a());
  // The picture assumes stationary condensates after pair creation.
  if (c.cfg.lattice.g0sq > 0.0 && c.traj.times.back() > origin) {
    const double mid = 0.5 * (origin + c.traj.times.back());
    try {
      renormalized_velocity(c.traj, mid, c.traj.times.back(), p.equilibration_tolerance);
    } catch (const NotEquilibratedError& e) {
      input.mark_out_of_validity(e.what());
    }
  }

  std::vector<std::string> files;
  const std::string name = an.name + ".csv";
  CsvWriter w(c.file(name), {"eta[a]", "t[a]", "a[1]", "S_A[nats]"});
  const auto picks = c.picks(p.stride);
  for (std::size_t i : picks) {
    const double eta = c.traj.times[i];
    auto cells = c.time_cells(eta);
    cells.push_back(num(qp_entropy(input, std::max(0.0, eta - origin))));
    w.row(cells);
  }
  w.close();
  c.record(name);
  files.push_back(name);

  if (p.contour) {
    const std::string cname = an.name + "_contour.csv";
    CsvWriter cw(c.file(cname), {"eta[a]", "t[a]", "site", "spinor", "S[nats]"});
    for (std::size_t i : picks) {
      const double eta = c.traj.times[i];
      const double tau = std::max(0.0, eta - origin);
      const std::string e = num(eta / c.a());
      const std::string t = num(c.cfg.profile.cosmological_time(eta) / c.a());
      for (int site = 0; site < block.length; ++site) {
        cw.row({e, t, std::to_string(site + 1), "sum",
                num(qp_contour(input, tau, (site + 0.5) * c.a()) * c.a())});
      }
    }
    cw.close();
    c.record(cname);
    files.push_back(cname);
  }
  return {{"files", files},
          {"block", block_json(block)},
          {"summary",
           {{"origin", origin / c.a()},
            {"spectrum_eta", s.time() / c.a()},
            {"reference", reference_json(ref, c.a())},
            {"velocity", velocity},
            {"v_max", input.v_max()},
            {"plateau", qp_plateau(input)},
            {"quadrature_points", input.quadrature_points()},
            {"in_validity", input.in_validity()},
            {"validity_note", input.validity_note()}}}};
}

json run_symmetry(Context& c, const AnalysisConfig& an, const SymmetryAnalysis& p) {
  const auto& e = std::get<ExponentialProfile>(c.cfg.profile.kind());
  ExpansionSweep sw;
  sw.spec = c.cfg.lattice;
  sw.a0 = e.a0;
  sw.af = e.af;
  if (c.cfg.preparation.kind == PreparationKind::MassQuench) {
    sw.pre_quench_mass = c.cfg.preparation.ma_pre;
  }
  sw.reference = p.reference.mode;
  sw.frozen_reference = {p.reference.frozen.sigma / c.a(), p.reference.frozen.pi / c.a()};
  sw.step = p.step;
  sw.quench_limit = p.quench_limit / c.a();
  sw.gap = c.cfg.preparation.gap;
  std::vector<double> hubble;
  for (double h : p.hubble_a) hubble.push_back(h / c.a());
  const std::vector<SweepRow> rows = spectrum_symmetry_check(sw, hubble, c.opts.workers);

  const std::string name = an.name + ".csv";
  CsvWriter w(c.file(name), {"Ha[1]", "duration[a]", "exact_quench", "asymmetry[1]",
                             "total_beta_sq[1]", "density[1/a]", "sigma[1/a]", "pi[1/a]"});
  const std::string sname = an.name + "_spectra.csv";
  CsvWriter sw_csv(c.file(sname), {"Ha[1]", "ka[rad]", "beta_sq[1]", "S_mode[nats]"});
  json table = json::array();
  for (const SweepRow& r : rows) {
    const double ha = r.hubble * c.a();
    w.row({num(ha), num(r.duration / c.a()), r.exact_quench ? "1" : "0", num(r.asymmetry),
           num(r.total_beta_sq), num(r.density * c.a()), num(r.final_condensates.sigma * c.a()),
           num(r.final_condensates.pi * c.a())});
    for (const auto& rec : r.spectrum.records) {
      sw_csv.row({num(ha), num(rec.k * c.a()), num(rec.beta_sq),
                  num(mode_pair_entropy(rec.beta_sq).mode)});
    }
    table.push_back({{"Ha", ha}, {"asymmetry", r.asymmetry}, {"total_beta_sq", r.total_beta_sq},
                     {"exact_quench", r.exact_quench}});
  }
  w.close();
  sw_csv.close();
  c.record(name);
  c.record(sname);

  // Residual table of the Hamiltonian the ramp starts from and of each final one.
  const std::string oname = an.name + "_operators.csv";
  CsvWriter ow(c.file(oname), {"state", "operator", "residual[1/a]", "holds"});
  const GroundState initial =
      sw.pre_quench_mass
          ? mass_quench_prepare(sw.spec, *sw.pre_quench_mass, sw.a0, sw.gap)
          : self_consistent_ground_state(sw.spec, sw.a0, sw.gap);
  json operators;
  auto emit = [&](const std::string& label, double mass_term, const CondensatePair& cp) {
    const SymmetryReport rep = symmetry_report(sw.spec, mass_term, cp.sigma, cp.pi);
    json entry;
    for (const auto& en : rep.entries) {
      ow.row({label, en.name, num(en.residual * c.a()), en.holds ? "1" : "0"});
      entry[en.name] = {{"residual", en.residual * c.a()}, {"holds", en.holds}};
    }
    operators[label] = entry;
  };
  emit("initial", sw.spec.mass_term(sw.a0), initial.condensates);
  for (const SweepRow& r : rows) {
    emit(fmt::format("final_Ha={}", r.hubble * c.a()), sw.spec.mass_term(sw.af),
         r.final_condensates);
  }
  ow.close();
  c.record(oname);
  return {{"files", {name, sname, oname}},
          {"summary", {{"rows", table}, {"operators", operators}}}};
}

json run_condensates(Context& c, const AnalysisConfig& an, const CondensatesAnalysis& p) {
  const std::string name = an.name + ".csv";
  CsvWriter w(c.file(name), {"eta[a]", "t[a]", "a[1]", "sigma[1/a]", "pi[1/a]",
                             "purity_defect[1]", "trace_defect[1]"});
  for (std::size_t i : c.picks(p.stride)) {
    auto cells = c.time_cells(c.traj.times[i]);
    cells.push_back(num(c.traj.condensates[i].sigma * c.a()));
    cells.push_back(num(c.traj.condensates[i].pi * c.a()));
    cells.push_back(num(c.traj.snapshots[i].purity_defect()));
    cells.push_back(num(c.traj.snapshots[i].trace_defect()));
    w.row(cells);
  }
  w.close();
  c.record(name);
  return {{"files", {name}}};
}

json config_json(const RunConfig& cfg) {
  const auto& l = cfg.lattice;
  json analyses = json::array();
  for (const auto& a : cfg.analyses) analyses.push_back({{"name", a.name}, {"kind", a.kind}});
  return {{"source", cfg.source_name},
          {"sha256", sha256_text(cfg.source_text)},
          {"text", cfg.source_text},
          {"lattice",
           {{"sites", l.num_sites}, {"spacing", l.spacing}, {"ma", l.mass * l.spacing},
            {"g0sq", l.g0sq}}},
          {"profile", cfg.profile.name()},
          {"eta_end", cfg.eta_end() / l.spacing},
          {"analyses", analyses}};
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RunError("cannot read " + path.string() + " for hashing");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  return to_hex(md, len);
}

RunManifest run(const RunConfig& cfg, const RunOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  check_output_directory(cfg.output.directory);
  fs::create_directories(cfg.output.directory);

  Context c{cfg, opts, cfg.output.directory, {}, {}, {}};
  json doc{{"format", "cosmoferm-run/1"},
           {"code_version", SIMULATE_VERSION},
           {"workers", opts.workers},
           {"config", config_json(cfg)}};

  if (cfg.needs_trajectory()) {
    c.prepared = stage("preparation", [&] { return prepare(cfg); });
    c.traj = stage(fmt::format("evolution to eta = {}", cfg.eta_end() / c.a()), [&] {
      return evolve(c.prepared.state, cfg.profile, cfg.eta_end(), cfg.evolution.options);
    });
    doc["trajectory"] = stage("trajectory summary", [&] { return trajectory_summary(c); });
    if (cfg.output.binary) {
      io::write_trajectory(c.file("trajectory.bin"), c.traj);
      c.record("trajectory.bin");
    }
  }

  json analyses = json::array();
  for (const AnalysisConfig& an : cfg.analyses) {
    json entry = stage(fmt::format("analysis '{}' ({})", an.name, an.kind), [&] {
      return std::visit(
          [&](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, EntropyAnalysis>) return run_entropy(c, an, p);
            if constexpr (std::is_same_v<T, ContourAnalysis>) return run_contour(c, an, p);
            if constexpr (std::is_same_v<T, SpectrumAnalysis>) return run_spectrum(c, an, p);
            if constexpr (std::is_same_v<T, QPAnalysis>) return run_qp(c, an, p);
            if constexpr (std::is_same_v<T, SymmetryAnalysis>) return run_symmetry(c, an, p);
            if constexpr (std::is_same_v<T, CondensatesAnalysis>) return run_condensates(c, an, p);
          },
          an.params);
    });
    entry["name"] = an.name;
    entry["kind"] = an.kind;
    analyses.push_back(std::move(entry));
  }
  doc["analyses"] = analyses;

  json files = json::array();
  for (const auto& f : c.files) {
    files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  doc["files"] = files;
  doc["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  RunManifest m{c.dir, doc, c.files};
  std::ofstream out(m.path());
  out << doc.dump(2) << '\n';
  out.close();
  if (!out) throw RunError("cannot write " + m.path().string());
  audit_manifest(m);
  return m;
}

RunManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("manifest", 0, "cannot read " + path.string());
  RunManifest m;
  m.directory = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  try {
    m.document = json::parse(in);
    for (const auto& f : m.document.at("files")) {
      m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                         f.at("bytes").get<std::uintmax_t>()});
    }
    m.document.at("analyses");
  } catch (const json::exception& e) {
    throw ValidationError("manifest", 0, path.string() + ": " + e.what());
  }
  return m;
}

void audit_manifest(const RunManifest& m) {
  std::vector<std::string> listed;
  for (const auto& f : m.files) {
    const fs::path p = m.directory / f.path;
    if (!fs::exists(p)) throw RunError("manifest audit: " + f.path + " is missing");
    if (sha256_file(p) != f.sha256) throw RunError("manifest audit: hash mismatch for " + f.path);
    listed.push_back(f.path);
  }
  for (const auto& a : m.document.at("analyses")) {
    for (const auto& f : a.at("files")) {
      if (std::find(listed.begin(), listed.end(), f.get<std::string>()) == listed.end()) {
        throw RunError("manifest audit: " + f.get<std::string>() + " is not in the inventory");
      }
    }
  }
}

}  // namespace simulate

#include "config.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cosmoferm/errors.hpp"

namespace simulate {

ValidationError::ValidationError(std::string field, int line,
                                 const std::string& message)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

using cosmoferm::ReferenceMode;

int line_of(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  return m.line >= 0 ? m.line + 1 : 0;
}

// Map node with key tracking, so leftover keys can be reported.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (!node_.IsMap()) throw ValidationError(path_, line_of(node_), "expected a mapping");
  }

  const std::string& path() const { return path_; }
  int line() const { return line_of(node_); }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  template <class T>
  T require(const std::string& key) {
    const YAML::Node n = raw(key);
    if (!n) throw ValidationError(field(key), line(), "missing required key");
    return convert<T>(n, field(key));
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    const YAML::Node n = raw(key);
    if (!n) return fallback;
    return convert<T>(n, field(key));
  }

  template <class T>
  std::optional<T> optional(const std::string& key) {
    const YAML::Node n = raw(key);
    if (!n) return std::nullopt;
    return convert<T>(n, field(key));
  }

  Section child(const std::string& key) {
    const YAML::Node n = raw(key);
    if (!n) throw ValidationError(field(key), line(), "missing required section");
    return Section(n, field(key));
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ValidationError(field(key), line_of(kv.first), "unknown key");
      }
    }
  }

  template <class T>
  static T convert(const YAML::Node& n, const std::string& field) {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ValidationError(field, line_of(n), "cannot read value '" + scalar_text(n) + "'");
    }
  }

 private:
  static std::string scalar_text(const YAML::Node& n) {
    return n.IsScalar() ? n.Scalar() : std::string("<non-scalar>");
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require_that(bool ok, const std::string& field, int line, const std::string& msg) {
  if (!ok) throw ValidationError(field, line, msg);
}

double positive(Section& s, const std::string& key) {
  const double v = s.require<double>(key);
  require_that(std::isfinite(v) && v > 0.0, s.field(key), line_of(s.raw(key)),
               "must be positive");
  return v;
}

template <class E>
E choice(Section& s, const std::string& key, const std::vector<std::pair<std::string, E>>& options,
         std::optional<E> fallback = std::nullopt) {
  const YAML::Node n = s.raw(key);
  if (!n) {
    if (fallback) return *fallback;
    throw ValidationError(s.field(key), s.line(), "missing required key");
  }
  const std::string v = Section::convert<std::string>(n, s.field(key));
  for (const auto& [text, value] : options) {
    if (v == text) return value;
  }
  std::string allowed;
  for (const auto& o : options) allowed += (allowed.empty() ? "" : ", ") + o.first;
  throw ValidationError(s.field(key), line_of(n), "'" + v + "' is not one of " + allowed);
}

cosmoferm::LatticeSpec parse_lattice(Section s) {
  cosmoferm::LatticeSpec spec;
  spec.num_sites = s.require<int>("sites");
  require_that(spec.num_sites >= 2 && spec.num_sites % 2 == 0, s.field("sites"),
               line_of(s.raw("sites")), "must be even and at least 2");
  spec.spacing = s.has("spacing") ? positive(s, "spacing") : 1.0;
  spec.mass = s.require<double>("ma") / spec.spacing;
  spec.g0sq = s.get<double>("g0sq", 0.0);
  require_that(spec.g0sq >= 0.0, s.field("g0sq"), s.line(), "must be non-negative");
  s.finish();
  return spec;
}

cosmoferm::ScaleFactorProfile parse_profile(Section s, double spacing) {
  enum Kind { Static, Exponential, DeSitter, Tabulated };
  const Kind kind = choice<Kind>(s, "kind",
                                 {{"static", Static},
                                  {"exponential", Exponential},
                                  {"de_sitter", DeSitter},
                                  {"tabulated", Tabulated}});
  cosmoferm::ScaleFactorProfile::Kind k;
  switch (kind) {
    case Static:
      k = cosmoferm::StaticProfile{s.has("a") ? positive(s, "a") : 1.0};
      break;
    case Exponential: {
      cosmoferm::ExponentialProfile p;
      p.a0 = positive(s, "a0");
      p.af = positive(s, "af");
      p.hubble = positive(s, "Ha") / spacing;
      p.sudden = s.get<bool>("sudden", false);
      require_that(p.af >= p.a0, s.field("af"), s.line(), "must not be below a0");
      k = p;
      break;
    }
    case DeSitter: {
      cosmoferm::DeSitterProfile p;
      p.hubble = positive(s, "Ha") / spacing;
      p.eta0 = s.require<double>("eta0") * spacing;
      p.eta_max = s.get<double>("eta_max", -0.001362) * spacing;
      require_that(p.eta0 < p.eta_max && p.eta_max < 0.0, s.field("eta0"), s.line(),
                   "need eta0 < eta_max < 0");
      if (const auto a0 = s.optional<double>("a0")) {
        const double implied = -1.0 / (p.hubble * p.eta0);
        require_that(std::abs(implied - *a0) <= 1e-6 * *a0, s.field("a0"), s.line(),
                     "inconsistent with -1/(H eta0) = " + std::to_string(implied));
      }
      k = p;
      break;
    }
    case Tabulated: {
      cosmoferm::TabulatedProfile p;
      p.eta = s.require<std::vector<double>>("eta");
      p.value = s.require<std::vector<double>>("a");
      for (double& e : p.eta) e *= spacing;
      k = std::move(p);
      break;
    }
  }
  s.finish();
  try {
    return cosmoferm::ScaleFactorProfile(std::move(k));
  } catch (const cosmoferm::DomainError& e) {
    throw ValidationError(s.path(), s.line(), e.what());
  }
}

cosmoferm::GapOptions parse_gap(Section s) {
  cosmoferm::GapOptions g;
  g.tolerance = s.get<double>("tolerance", g.tolerance);
  g.mixing = s.get<double>("mixing", g.mixing);
  g.max_iterations = s.get<int>("max_iterations", g.max_iterations);
  g.pi_seeds = s.get<std::vector<double>>("pi_seeds", g.pi_seeds);
  g.sigma_seed = s.get<double>("sigma_seed", g.sigma_seed);
  require_that(g.tolerance > 0.0, s.field("tolerance"), s.line(), "must be positive");
  require_that(g.mixing > 0.0 && g.mixing <= 1.0, s.field("mixing"), s.line(),
               "must lie in (0, 1]");
  require_that(g.max_iterations > 0, s.field("max_iterations"), s.line(), "must be positive");
  require_that(!g.pi_seeds.empty(), s.field("pi_seeds"), s.line(), "needs at least one seed");
  s.finish();
  return g;
}

PreparationConfig parse_preparation(Section s, double spacing) {
  PreparationConfig p;
  p.kind = choice<PreparationKind>(
      s, "kind", {{"vacuum", PreparationKind::Vacuum}, {"mass_quench", PreparationKind::MassQuench}});
  if (p.kind == PreparationKind::MassQuench) {
    p.ma_pre = s.require<double>("ma_pre") / spacing;
  }
  if (s.has("gap")) p.gap = parse_gap(s.child("gap"));
  s.finish();
  return p;
}

EvolutionConfig parse_evolution(Section s, const cosmoferm::ScaleFactorProfile& profile,
                                double spacing) {
  EvolutionConfig e;
  if (const auto v = s.optional<double>("eta_end")) e.eta_end = *v * spacing;
  if (const auto v = s.optional<double>("after_ramp")) e.after_ramp = *v * spacing;
  require_that(e.eta_end.has_value() != e.after_ramp.has_value(), s.field("eta_end"), s.line(),
               "give exactly one of eta_end and after_ramp");
  auto& o = e.options;
  o.step = positive(s, "step") * spacing;
  if (s.has("ramp_step")) o.ramp_step = positive(s, "ramp_step") * spacing;
  o.sample_every = s.get<int>("sample_every", o.sample_every);
  require_that(o.sample_every >= 1, s.field("sample_every"), s.line(), "must be >= 1");
  o.variable = choice<cosmoferm::TimeVariable>(
      s, "variable",
      {{"conformal", cosmoferm::TimeVariable::Conformal},
       {"cosmological", cosmoferm::TimeVariable::Cosmological}},
      cosmoferm::TimeVariable::Conformal);
  o.purity_tolerance = s.get<double>("purity_tolerance", o.purity_tolerance);
  require_that(o.purity_tolerance > 0.0, s.field("purity_tolerance"), s.line(),
               "must be positive");

  if (e.after_ramp) {
    require_that(std::isfinite(profile.ramp_end()), s.field("after_ramp"), s.line(),
                 "profile '" + profile.name() + "' has no ramp end");
    require_that(*e.after_ramp >= 0.0, s.field("after_ramp"), s.line(), "must be >= 0");
  }
  const double end = e.eta_end ? *e.eta_end : profile.ramp_end() + *e.after_ramp;
  require_that(end >= profile.start(), s.field("eta_end"), s.line(),
               "precedes the profile start");
  require_that(profile.in_domain(end), s.field("eta_end"), s.line(),
               "outside the profile domain");
  s.finish();
  return e;
}

BlockConfig parse_block(Section s, int num_sites) {
  BlockConfig b;
  b.length = s.require<int>("length");
  b.first = s.optional<int>("first");
  require_that(b.length >= 1 && b.length <= num_sites, s.field("length"), s.line(),
               "block length " + std::to_string(b.length) + " must lie in [1, " +
                   std::to_string(num_sites) + "]");
  if (b.first) {
    require_that(*b.first >= 0 && *b.first < num_sites, s.field("first"), s.line(),
                 "must be a site index in [0, " + std::to_string(num_sites) + ")");
  }
  s.finish();
  return b;
}

ReferenceConfig parse_reference(Section& parent, const std::string& key) {
  ReferenceConfig r;
  const YAML::Node n = parent.raw(key);
  if (!n) return r;
  const std::vector<std::pair<std::string, ReferenceMode>> modes{
      {"instantaneous", ReferenceMode::Instantaneous},
      {"vacuum", ReferenceMode::Vacuum},
      {"frozen", ReferenceMode::Frozen}};
  if (n.IsScalar()) {
    YAML::Node wrapper;
    wrapper["mode"] = n;
    Section w(wrapper, parent.path());
    r.mode = choice<ReferenceMode>(w, "mode", modes);
    require_that(r.mode != ReferenceMode::Frozen, parent.field(key), line_of(n),
                 "frozen reference needs sigma and pi");
    return r;
  }
  Section s(n, parent.field(key));
  r.mode = choice<ReferenceMode>(s, "mode", modes);
  if (r.mode == ReferenceMode::Frozen) {
    r.frozen.sigma = s.require<double>("sigma");
    r.frozen.pi = s.require<double>("pi");
  }
  s.finish();
  return r;
}

int parse_stride(Section& s) {
  const int stride = s.get<int>("stride", 1);
  require_that(stride >= 1, s.field("stride"), s.line(), "must be >= 1");
  return stride;
}

AnalysisConfig parse_analysis(Section s, const RunConfig& cfg) {
  AnalysisConfig a;
  a.kind = s.require<std::string>("kind");
  a.name = s.get<std::string>("name", a.kind);
  static const std::regex name_re("[A-Za-z0-9_-]+");
  require_that(std::regex_match(a.name, name_re), s.field("name"), s.line(),
               "names may contain letters, digits, '_' and '-' only");
  const int n_sites = cfg.lattice.num_sites;
  const double spacing = cfg.lattice.spacing;

  if (a.kind == "entropy") {
    EntropyAnalysis e;
    e.block = parse_block(s.child("block"), n_sites);
    e.stride = parse_stride(s);
    a.params = e;
  } else if (a.kind == "contour") {
    ContourAnalysis c;
    c.block = parse_block(s.child("block"), n_sites);
    c.stride = parse_stride(s);
    c.spinor_mode = choice<SpinorMode>(s, "spinor_mode",
                                       {{"both", SpinorMode::Both},
                                        {"up", SpinorMode::Up},
                                        {"down", SpinorMode::Down},
                                        {"summed", SpinorMode::Summed},
                                        {"zigzag", SpinorMode::Zigzag}},
                                       SpinorMode::Both);
    c.cosmological_axis = s.get<bool>("cosmological_axis", false);
    a.params = c;
  } else if (a.kind == "spectrum") {
    SpectrumAnalysis p;
    p.reference = parse_reference(s, "reference");
    if (const auto v = s.optional<double>("eta")) p.eta = *v * spacing;
    a.params = p;
  } else if (a.kind == "qp") {
    QPAnalysis q;
    q.block = parse_block(s.child("block"), n_sites);
    q.reference = parse_reference(s, "reference");
    q.stride = parse_stride(s);
    if (const auto v = s.optional<double>("spectrum_eta")) q.spectrum_eta = *v * spacing;
    if (const auto v = s.optional<double>("origin")) q.origin = *v * spacing;
    q.contour = s.get<bool>("contour", false);
    const YAML::Node vel = s.raw("velocity");
    if (vel && vel.IsScalar()) {
      const std::string v = Section::convert<std::string>(vel, s.field("velocity"));
      require_that(v == "reference", s.field("velocity"), line_of(vel),
                   "scalar form must be 'reference'; use a mapping for renormalized");
    } else if (vel) {
      Section v(vel, s.field("velocity"));
      q.velocity = choice<VelocitySource>(
          v, "source",
          {{"reference", VelocitySource::Reference}, {"renormalized", VelocitySource::Renormalized}});
      if (q.velocity == VelocitySource::Renormalized) {
        const auto w = v.require<std::vector<double>>("window");
        require_that(w.size() == 2 && w[0] < w[1], v.field("window"), v.line(),
                     "expected [begin, end] with begin < end");
        q.window_begin = w[0] * spacing;
        q.window_end = w[1] * spacing;
        q.equilibration_tolerance = v.get<double>("tolerance", q.equilibration_tolerance);
      }
      v.finish();
    }
    a.params = q;
  } else if (a.kind == "symmetry") {
    SymmetryAnalysis y;
    y.hubble_a = s.require<std::vector<double>>("Ha");
    require_that(!y.hubble_a.empty(), s.field("Ha"), s.line(), "needs at least one value");
    for (double h : y.hubble_a) {
      require_that(h > 0.0 && std::isfinite(h), s.field("Ha"), s.line(), "values must be positive");
    }
    y.reference = parse_reference(s, "reference");
    y.quench_limit = s.get<double>("quench_limit", 0.0);
    y.step = s.get<double>("step", 0.0) * spacing;
    require_that(std::holds_alternative<cosmoferm::ExponentialProfile>(cfg.profile.kind()),
                 s.field("kind"), s.line(), "symmetry sweeps need an exponential profile");
    a.params = y;
  } else if (a.kind == "condensates") {
    CondensatesAnalysis c;
    c.stride = parse_stride(s);
    a.params = c;
  } else {
    throw ValidationError(s.field("kind"), s.line(),
                          "unknown analysis '" + a.kind +
                              "' (entropy, contour, spectrum, qp, symmetry, condensates)");
  }
  s.finish();
  return a;
}

OutputConfig parse_output(Section s) {
  OutputConfig o;
  o.directory = s.get<std::string>("directory", o.directory.string());
  if (s.has("formats")) {
    const auto formats = s.require<std::vector<std::string>>("formats");
    o.csv = false;
    for (const auto& f : formats) {
      if (f == "csv") {
        o.csv = true;
      } else if (f == "binary") {
        o.binary = true;
      } else {
        throw ValidationError(s.field("formats"), s.line(), "unknown format '" + f + "'");
      }
    }
    require_that(o.csv, s.field("formats"), s.line(), "csv output cannot be disabled");
  }
  s.finish();
  return o;
}

}  // namespace

cosmoferm::BlockSpec BlockConfig::resolve(int num_sites) const {
  if (first) return cosmoferm::BlockSpec{*first, length, num_sites};
  return cosmoferm::BlockSpec::centered(length, num_sites);
}

bool AnalysisConfig::needs_trajectory() const {
  return !std::holds_alternative<SymmetryAnalysis>(params);
}

double RunConfig::eta_end() const {
  return evolution.eta_end ? *evolution.eta_end
                           : profile.ramp_end() + *evolution.after_ramp;
}

bool RunConfig::needs_trajectory() const {
  return std::any_of(analyses.begin(), analyses.end(),
                     [](const AnalysisConfig& a) { return a.needs_trajectory(); });
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ValidationError("<document>", e.mark.line + 1, e.msg);
  }
  if (!root || root.IsNull()) throw ValidationError("<document>", 0, "empty configuration");
  Section top(root, "");

  RunConfig cfg;
  cfg.source_name = source_name;
  cfg.source_text = text;
  cfg.lattice = parse_lattice(top.child("lattice"));
  cfg.profile = parse_profile(top.child("profile"), cfg.lattice.spacing);
  cfg.preparation = parse_preparation(top.child("preparation"), cfg.lattice.spacing);
  cfg.evolution = parse_evolution(top.child("evolution"), cfg.profile, cfg.lattice.spacing);

  const YAML::Node analyses = top.raw("analyses");
  if (analyses && !analyses.IsNull()) {
    require_that(analyses.IsSequence(), "analyses", line_of(analyses), "expected a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < analyses.size(); ++i) {
      AnalysisConfig a =
          parse_analysis(Section(analyses[i], "analyses[" + std::to_string(i) + "]"), cfg);
      require_that(names.insert(a.name).second, "analyses[" + std::to_string(i) + "].name",
                   line_of(analyses[i]), "duplicate analysis name '" + a.name + "'");
      cfg.analyses.push_back(std::move(a));
    }
  }
  if (top.has("output")) cfg.output = parse_output(top.child("output"));
  top.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("<file>", 0, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void check_output_directory(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  fs::path probe = fs::absolute(directory);
  while (!fs::exists(probe)) {
    if (!probe.has_parent_path() || probe.parent_path() == probe) break;
    probe = probe.parent_path();
  }
  if (!fs::is_directory(probe)) {
    throw ValidationError("output.directory", 0, probe.string() + " is not a directory");
  }
  if (::access(probe.c_str(), W_OK) != 0) {
    throw ValidationError("output.directory", 0, probe.string() + " is not writable");
  }
}

namespace {

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("COSMOFERM_PRESET_DIR")) return env;
  return SIMULATE_PRESET_DIR;
}

}  // namespace

std::filesystem::path preset_path(const std::string& name) {
  const auto p = preset_dir() / (name + ".yaml");
  if (!std::filesystem::exists(p)) {
    throw ValidationError("--preset", 0, "unknown preset '" + name + "' (looked in " +
                                             preset_dir().string() + ")");
  }
  return p;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  const auto dir = preset_dir();
  if (!std::filesystem::is_directory(dir)) return names;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace simulate

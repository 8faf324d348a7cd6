#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cosmoferm/entanglement.hpp"
#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/lattice_model.hpp"
#include "cosmoferm/scale_factor.hpp"
#include "cosmoferm/symmetry.hpp"

namespace simulate {

/// Invalid configuration. `field` is the dotted key path, `line` is 1-based
/// (0 when the problem is not tied to a line).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct BlockConfig {
  int length = 0;
  std::optional<int> first;  ///< centred in the chain when absent

  cosmoferm::BlockSpec resolve(int num_sites) const;
};

enum class PreparationKind { Vacuum, MassQuench };

struct PreparationConfig {
  PreparationKind kind = PreparationKind::Vacuum;
  double ma_pre = 0.0;  ///< bare m a before the quench (mass_quench only)
  cosmoferm::GapOptions gap;
};

struct EvolutionConfig {
  std::optional<double> eta_end;     ///< absolute conformal end time
  std::optional<double> after_ramp;  ///< or: duration after profile.ramp_end()
  cosmoferm::EvolutionOptions options;
};

enum class SpinorMode { Both, Up, Down, Summed, Zigzag };

struct ReferenceConfig {
  cosmoferm::ReferenceMode mode = cosmoferm::ReferenceMode::Instantaneous;
  cosmoferm::CondensatePair frozen;
};

struct EntropyAnalysis {
  BlockConfig block;
  int stride = 1;
};

struct ContourAnalysis {
  BlockConfig block;
  SpinorMode spinor_mode = SpinorMode::Both;
  int stride = 1;
  bool cosmological_axis = false;
};

struct SpectrumAnalysis {
  ReferenceConfig reference;
  std::optional<double> eta;  ///< last sample when absent
};

enum class VelocitySource { Reference, Renormalized };

struct QPAnalysis {
  BlockConfig block;
  ReferenceConfig reference;
  std::optional<double> spectrum_eta;  ///< s(k) taken here, last sample if absent
  std::optional<double> origin;        ///< pair creation time, ramp end if absent
  VelocitySource velocity = VelocitySource::Reference;
  double window_begin = 0.0;  ///< renormalized velocity averaging window
  double window_end = 0.0;
  double equilibration_tolerance = 0.05;
  bool contour = false;
  int stride = 1;
};

struct SymmetryAnalysis {
  std::vector<double> hubble_a;  ///< H a values
  ReferenceConfig reference;
  double quench_limit = 0.0;
  double step = 0.0;
};

struct CondensatesAnalysis {
  int stride = 1;
};

using AnalysisParams =
    std::variant<EntropyAnalysis, ContourAnalysis, SpectrumAnalysis,
                 QPAnalysis, SymmetryAnalysis, CondensatesAnalysis>;

struct AnalysisConfig {
  std::string name;
  std::string kind;
  AnalysisParams params;
  bool needs_trajectory() const;
};

struct OutputConfig {
  std::filesystem::path directory = "out";
  bool csv = true;
  bool binary = false;
};

struct RunConfig {
  std::string source_name;
  std::string source_text;

  cosmoferm::LatticeSpec lattice;
  cosmoferm::ScaleFactorProfile profile;
  PreparationConfig preparation;
  EvolutionConfig evolution;
  std::vector<AnalysisConfig> analyses;
  OutputConfig output;

  /// Conformal end time of the evolution.
  double eta_end() const;
  bool needs_trajectory() const;
};

/// Parses and validates a YAML document. Unknown keys are rejected.
RunConfig parse_config(const std::string& text, const std::string& source_name);
RunConfig load_config(const std::filesystem::path& path);

/// Checks that the output directory exists and is writable, or can be created.
void check_output_directory(const std::filesystem::path& directory);

/// Path of a shipped preset; throws ValidationError for unknown names.
std::filesystem::path preset_path(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace simulate

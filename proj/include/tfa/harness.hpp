#pragma once

// Experiment engine: random sets, restricted weak-type sweeps, mu-decay and assembly
// studies, and their reports.

#include "tfa/forms.hpp"
#include "tfa/selection.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace tfa {

struct ExponentTuple {
  Real p1 = 1.5;
  Real p2 = 1.5;
  Real p3 = 2;
  /// 1/p' = 1 - (1/p1 + 1/p2 + 1/p3).
  Real dual_inverse() const { return 1 - (1 / p1 + 1 / p2 + 1 / p3); }
  bool operator==(const ExponentTuple&) const = default;
};

enum class FormMode { model, full };

/// full mode: 1 < p_i < inf and 1/p1 + 1/p2 < 3/2. model mode adds p1, p2 < 2.
/// Throws InvalidInput naming the first violated constraint.
void validate_tuple(const ExponentTuple& t, FormMode mode);

struct ExperimentConfig {
  std::vector<Index> grid_sizes{256};
  std::vector<std::uint64_t> seeds{1};
  /// mu-decay: seeds whose largest scaled ratio fixes the constant. Empty means the first seed.
  std::vector<std::uint64_t> calibration_seeds;
  std::vector<ExponentTuple> tuples{ExponentTuple{}};
  FormMode mode = FormMode::model;
  Real alpha = 1;
  Real beta = 1;
  std::vector<int> scales{2, 4};
  std::size_t trials = 10;
  /// Allowed growth of the max ratio from the first to the last grid size.
  Real growth_tolerance = 2;
  /// Allowed factor over the baseline constant in mu-decay runs.
  Real constant_tolerance = 4;
  /// Required upper bound on each fitted mu-decay slope.
  Real slope_bound = -1;
  int decay = 4;
  std::string output;
};

void to_json(nlohmann::json& j, const ExponentTuple& t);
void from_json(const nlohmann::json& j, ExponentTuple& t);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

// ---------------------------------------------------------------------------
// Random measurable sets: unions of dyadic intervals with one sign per interval.
// They are defined on the continuum, so the same draw realizes on every N >= 64.

struct DyadicPiece {
  int scale = 2;  // interval length 2^-scale
  std::int64_t index = 0;
  int sign = 1;
};

struct SignedSet {
  GridSet set;
  Signal values;  // sign on the set, 0 elsewhere
};

std::vector<DyadicPiece> draw_pieces(std::mt19937_64& rng, std::size_t count, int scale_min = 2,
                                     int scale_max = 6);
/// Adds pieces until the union has measure >= min_measure.
std::vector<DyadicPiece> draw_large_set(std::mt19937_64& rng, Real min_measure, int scale_min = 2,
                                        int scale_max = 6);
/// Later pieces overwrite earlier ones where they overlap.
SignedSet realize(const std::vector<DyadicPiece>& pieces, Index n);

/// Tiles with scale in `scales` whose four packet bands all fit N.
TileSet model_tiles(Index n, const std::vector<int>& scales);

// ---------------------------------------------------------------------------

struct TrialRecord {
  std::size_t trial = 0;
  Index n = 0;
  ExponentTuple p;
  Real f1 = 0, f2 = 0, f3 = 0, fprime = 0;
  Real form = 0;
  Real normalizer = 0;
  Real ratio = 0;
  bool operator==(const TrialRecord&) const = default;
};

struct BoundReport {
  std::vector<TrialRecord> trials;
  /// Named aggregates: max ratios per grid size, fitted constants, growth factors.
  std::map<std::string, Real> aggregates;
  std::vector<std::string> failures;
  std::uint64_t seed = 0;
  std::vector<Index> grid_sizes;
  std::string config_hash;
  bool passed() const { return failures.empty(); }
  bool operator==(const BoundReport&) const = default;
};

void to_json(nlohmann::json& j, const TrialRecord& r);
void from_json(const nlohmann::json& j, TrialRecord& r);
void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

/// |F1|^(1/p1) |F2|^(1/p2) |F3|^(1/p3) |F'|^(1/p'); 0 when any measure is 0.
Real rwt_normalizer(const ExponentTuple& p, Real f1, Real f2, Real f3, Real fprime);

/// One trial: draw sets from `rng`, build Omega and F' = F \ Omega, evaluate the form.
TrialRecord rwt_trial(std::mt19937_64& rng, Index n, const ExponentTuple& p, FormMode mode,
                      const OperatorConfig& op, const TileSet& tiles);

BoundReport run_rwt_experiment(const ExperimentConfig& cfg);

struct MuStratumRecord {
  std::uint64_t seed = 0;
  Index mu = 1;
  std::size_t tiles = 0;
  Real form = 0;
  Real normalizer = 0;
  Real ratio = 0;
};

struct MuDecayReport {
  std::vector<MuStratumRecord> strata;
  /// Per seed: least-squares slope of log ratio against log mu, and max mu^2 ratio.
  std::vector<std::pair<std::uint64_t, Real>> slopes;
  std::vector<std::pair<std::uint64_t, Real>> scaled_max;
  std::vector<std::pair<std::uint64_t, Real>> calibration;
  /// Fitted constant: max scaled ratio over the calibration seeds.
  Real baseline = 0;
  std::size_t min_strata = 0;
  std::vector<std::string> failures;
  std::string config_hash;
  bool passed() const { return failures.empty(); }
};

void to_json(nlohmann::json& j, const MuDecayReport& r);

/// Instance with Omega a dyadic eighth of the torus: F1, F2 are short intervals inside one
/// of the two central 2^-6 cells of that eighth, F3 is a large random set, F is the torus.
struct MuInstance {
  SignedSet f1, f2, f3;
  GridSet fprime;
  ExceptionalSet omega;
};
MuInstance mu_instance(std::uint64_t seed, Index n, const ExponentTuple& p);

MuDecayReport run_mu_decay(const ExperimentConfig& cfg);

struct AssemblyRow {
  Index mu = 1;
  int sigma_exponent = 0;
  std::size_t trees = 0;
  Real measured = 0;   // sum over trees of |Lambda_T|
  Real tree_bound = 0; // sum over trees of mu |I_T| prod size_j |F3|^(1/p3)
  Real chain = 0;      // mu |F3|^(1/p3) s^-2 min(mu|F1|, s|F1|^.5) min(mu|F2|, s|F2|^.5) min(mu^-M, s)
};

struct AssemblyReport {
  std::vector<AssemblyRow> rows;
  Real measured_total = 0;
  Real tree_bound_total = 0;
  Real chain_total = 0;
  Real c_tree = 0;
  Real c_assembly = 0;
  /// Last chain term over the chain total, per mu: small when the sigma sum has settled.
  Real tail_fraction = 0;
  std::vector<std::string> failures;
  std::string config_hash;
  bool passed() const { return failures.empty(); }
};

void to_json(nlohmann::json& j, const AssemblyReport& r);

AssemblyReport run_assembly(const ExperimentConfig& cfg);

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& s);
void emit_csv(std::ostream& out, const BoundReport& r);
void emit_json(std::ostream& out, const BoundReport& r);
BoundReport report_from_json(const std::string& text);
/// Writes to `path`; throws std::runtime_error when the file cannot be opened.
void emit_report(const BoundReport& r, ReportFormat format, const std::string& path);

/// Signal files: one "re,im" line per sample.
Signal read_signal(std::istream& in);
void write_signal(std::ostream& out, const Signal& f);

std::string format_real(Real x);

}  // namespace tfa

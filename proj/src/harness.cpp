#include "tfa/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tfa {

using nlohmann::json;

std::string format_real(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void validate_tuple(const ExponentTuple& t, FormMode mode) {
  for (Real p : {t.p1, t.p2, t.p3}) {
    if (!(p > 1) || !std::isfinite(p)) throw InvalidInput("exponent " + format_real(p) + " violates 1 < p < inf");
  }
  if (!(1 / t.p1 + 1 / t.p2 < 1.5)) {
    throw InvalidInput("1/p1 + 1/p2 = " + format_real(1 / t.p1 + 1 / t.p2) + " violates 1/p1 + 1/p2 < 3/2");
  }
  if (mode == FormMode::model && !(t.p1 < 2 && t.p2 < 2)) {
    throw InvalidInput("model form needs p1 < 2 and p2 < 2");
  }
}

// ---------------------------------------------------------------------------
// JSON

void to_json(json& j, const ExponentTuple& t) { j = json{{"p1", t.p1}, {"p2", t.p2}, {"p3", t.p3}}; }

void from_json(const json& j, ExponentTuple& t) {
  j.at("p1").get_to(t.p1);
  j.at("p2").get_to(t.p2);
  j.at("p3").get_to(t.p3);
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"grid_sizes", c.grid_sizes},
           {"seeds", c.seeds},
           {"calibration_seeds", c.calibration_seeds},
           {"tuples", c.tuples},
           {"mode", c.mode == FormMode::model ? "model" : "full"},
           {"alpha", c.alpha},
           {"beta", c.beta},
           {"scales", c.scales},
           {"trials", c.trials},
           {"growth_tolerance", c.growth_tolerance},
           {"constant_tolerance", c.constant_tolerance},
           {"slope_bound", c.slope_bound},
           {"decay", c.decay},
           {"output", c.output}};
}

void from_json(const json& j, ExperimentConfig& c) {
  ExperimentConfig d;
  c.grid_sizes = j.value("grid_sizes", d.grid_sizes);
  if (j.contains("N")) c.grid_sizes = {j.at("N").get<Index>()};
  c.seeds = j.value("seeds", d.seeds);
  c.calibration_seeds = j.value("calibration_seeds", d.calibration_seeds);
  c.tuples = j.value("tuples", d.tuples);
  const std::string mode = j.value("mode", std::string("model"));
  if (mode != "model" && mode != "full") throw InvalidInput("mode must be 'model' or 'full'");
  c.mode = mode == "model" ? FormMode::model : FormMode::full;
  c.alpha = j.value("alpha", d.alpha);
  c.beta = j.value("beta", d.beta);
  c.scales = j.value("scales", d.scales);
  c.trials = j.value("trials", d.trials);
  c.growth_tolerance = j.value("growth_tolerance", d.growth_tolerance);
  c.constant_tolerance = j.value("constant_tolerance", d.constant_tolerance);
  c.slope_bound = j.value("slope_bound", d.slope_bound);
  c.decay = j.value("decay", d.decay);
  c.output = j.value("output", d.output);
  if (c.grid_sizes.empty() || c.seeds.empty() || c.tuples.empty()) {
    throw InvalidInput("grid_sizes, seeds and tuples must be nonempty");
  }
  for (Index n : c.grid_sizes) require_grid(n);
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = json(c).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void to_json(json& j, const TrialRecord& r) {
  j = json{{"trial", r.trial}, {"N", r.n},   {"p", r.p},        {"F1", r.f1},
           {"F2", r.f2},       {"F3", r.f3}, {"Fprime", r.fprime}, {"form", r.form},
           {"normalizer", r.normalizer}, {"ratio", r.ratio}};
}

void from_json(const json& j, TrialRecord& r) {
  j.at("trial").get_to(r.trial);
  j.at("N").get_to(r.n);
  j.at("p").get_to(r.p);
  j.at("F1").get_to(r.f1);
  j.at("F2").get_to(r.f2);
  j.at("F3").get_to(r.f3);
  j.at("Fprime").get_to(r.fprime);
  j.at("form").get_to(r.form);
  j.at("normalizer").get_to(r.normalizer);
  j.at("ratio").get_to(r.ratio);
}

void to_json(json& j, const BoundReport& r) {
  j = json{{"trials", r.trials},         {"aggregates", r.aggregates}, {"failures", r.failures},
           {"seed", r.seed},             {"grid_sizes", r.grid_sizes}, {"config_hash", r.config_hash}};
}

void from_json(const json& j, BoundReport& r) {
  j.at("trials").get_to(r.trials);
  j.at("aggregates").get_to(r.aggregates);
  j.at("failures").get_to(r.failures);
  j.at("seed").get_to(r.seed);
  j.at("grid_sizes").get_to(r.grid_sizes);
  j.at("config_hash").get_to(r.config_hash);
}

void to_json(json& j, const MuDecayReport& r) {
  json strata = json::array();
  for (const auto& s : r.strata) {
    strata.push_back({{"seed", s.seed}, {"mu", s.mu}, {"tiles", s.tiles}, {"form", s.form},
                      {"normalizer", s.normalizer}, {"ratio", s.ratio}});
  }
  j = json{{"strata", strata},
           {"slopes", r.slopes},
           {"scaled_max", r.scaled_max},
           {"calibration", r.calibration},
           {"baseline", r.baseline},
           {"min_strata", r.min_strata},
           {"failures", r.failures},
           {"config_hash", r.config_hash}};
}

void to_json(json& j, const AssemblyReport& r) {
  json rows = json::array();
  for (const auto& a : r.rows) {
    rows.push_back({{"mu", a.mu}, {"sigma_exponent", a.sigma_exponent}, {"trees", a.trees},
                    {"measured", a.measured}, {"tree_bound", a.tree_bound}, {"chain", a.chain}});
  }
  j = json{{"rows", rows},
           {"measured_total", r.measured_total},
           {"tree_bound_total", r.tree_bound_total},
           {"chain_total", r.chain_total},
           {"c_tree", r.c_tree},
           {"c_assembly", r.c_assembly},
           {"tail_fraction", r.tail_fraction},
           {"failures", r.failures},
           {"config_hash", r.config_hash}};
}

// ---------------------------------------------------------------------------
// Random sets

std::vector<DyadicPiece> draw_pieces(std::mt19937_64& rng, std::size_t count, int scale_min, int scale_max) {
  std::uniform_int_distribution<int> scale(scale_min, scale_max);
  std::bernoulli_distribution coin(0.5);
  std::vector<DyadicPiece> out;
  for (std::size_t i = 0; i < count; ++i) {
    DyadicPiece p;
    p.scale = scale(rng);
    p.index = std::uniform_int_distribution<std::int64_t>(0, (std::int64_t(1) << p.scale) - 1)(rng);
    p.sign = coin(rng) ? 1 : -1;
    out.push_back(p);
  }
  return out;
}

std::vector<DyadicPiece> draw_large_set(std::mt19937_64& rng, Real min_measure, int scale_min, int scale_max) {
  std::vector<DyadicPiece> out;
  // Measure is tracked on cells of the finest scale, where every piece is a whole run.
  std::vector<bool> covered(std::size_t(1) << scale_max, false);
  std::size_t count = 0;
  while (static_cast<Real>(count) < min_measure * static_cast<Real>(covered.size())) {
    const DyadicPiece p = draw_pieces(rng, 1, scale_min, scale_max).front();
    out.push_back(p);
    const std::size_t width = std::size_t(1) << (scale_max - p.scale);
    const std::size_t first = static_cast<std::size_t>(p.index) * width;
    for (std::size_t c = first; c < first + width; ++c) {
      if (!covered[c]) {
        covered[c] = true;
        ++count;
      }
    }
  }
  return out;
}

SignedSet realize(const std::vector<DyadicPiece>& pieces, Index n) {
  require_grid(n);
  SignedSet out{GridSet::Constant(n, false), Signal::Zero(n)};
  for (const auto& p : pieces) {
    if ((Index(1) << p.scale) > n) throw InvalidInput("piece finer than the grid");
    const Index width = n >> p.scale;
    out.set.segment(p.index * width, width) = true;
    out.values.segment(p.index * width, width).setConstant(Complex(p.sign, 0));
  }
  return out;
}

TileSet model_tiles(Index n, const std::vector<int>& scales) {
  TileSet out;
  for (int k : scales) out = set_union(out, all_admissible_tiles(n, k, k));
  return out;
}

// ---------------------------------------------------------------------------
// Restricted weak-type sweep

Real rwt_normalizer(const ExponentTuple& p, Real f1, Real f2, Real f3, Real fprime) {
  if (f1 == 0 || f2 == 0 || f3 == 0 || fprime == 0) return 0;
  return std::pow(f1, 1 / p.p1) * std::pow(f2, 1 / p.p2) * std::pow(f3, 1 / p.p3) *
         std::pow(fprime, p.dual_inverse());
}

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t tuple, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tuple), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

std::string key(const std::string& name, Index n) { return name + "@N=" + std::to_string(n); }

}  // namespace

TrialRecord rwt_trial(std::mt19937_64& rng, Index n, const ExponentTuple& p, FormMode mode,
                      const OperatorConfig& op, const TileSet& tiles) {
  std::uniform_int_distribution<std::size_t> count(1, 6);
  const auto p1 = draw_pieces(rng, count(rng));
  const auto p2 = draw_pieces(rng, count(rng));
  const auto p3 = draw_pieces(rng, count(rng));
  const auto pf = draw_large_set(rng, 0.5);
  const SignedSet F1 = realize(p1, n), F2 = realize(p2, n), F3 = realize(p3, n), F = realize(pf, n);

  const ExceptionalSet ex = exceptional_set(F1.set, F2.set, F3.set, p.p3);
  const GridSet fprime = F.set && !ex.omega;
  const Signal f4 = indicator(fprime).cast<Complex>();

  TrialRecord r;
  r.n = n;
  r.p = p;
  r.f1 = measure(F1.set);
  r.f2 = measure(F2.set);
  r.f3 = measure(F3.set);
  r.fprime = measure(fprime);
  r.form = mode == FormMode::model ? std::abs(quadform_model(tiles, F1.values, F2.values, F3.values, f4))
                                   : std::abs(quadform_full(F1.values, F2.values, F3.values, f4, op));
  r.normalizer = rwt_normalizer(p, r.f1, r.f2, r.f3, r.fprime);
  r.ratio = r.normalizer > 0 ? r.form / r.normalizer : 0;
  if (r.fprime < measure(F.set) / 2) throw std::logic_error("F' lost more than half of F");
  return r;
}

BoundReport run_rwt_experiment(const ExperimentConfig& cfg) {
  for (const auto& t : cfg.tuples) validate_tuple(t, cfg.mode);
  BoundReport rep;
  rep.seed = cfg.seeds.front();
  rep.grid_sizes = cfg.grid_sizes;
  rep.config_hash = config_hash(cfg);
  const OperatorConfig op{cfg.alpha, cfg.beta, cfg.scales, 0};

  for (Index n : cfg.grid_sizes) {
    const TileSet tiles = cfg.mode == FormMode::model ? model_tiles(n, cfg.scales) : TileSet{};
    if (cfg.mode == FormMode::model && tiles.empty()) {
      throw InvalidInput("no admissible tiles at N = " + std::to_string(n));
    }
    Real overall = 0;
    for (std::size_t ti = 0; ti < cfg.tuples.size(); ++ti) {
      Real best = 0;
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        auto rng = trial_rng(rep.seed, ti, trial);
        TrialRecord r = rwt_trial(rng, n, cfg.tuples[ti], cfg.mode, op, tiles);
        r.trial = trial;
        best = std::max(best, r.ratio);
        rep.trials.push_back(r);
      }
      rep.aggregates[key("max_ratio_tuple" + std::to_string(ti), n)] = best;
      overall = std::max(overall, best);
    }
    rep.aggregates[key("max_ratio", n)] = overall;
    rep.aggregates[key("tiles", n)] = static_cast<Real>(tiles.size());
  }

  if (cfg.grid_sizes.size() > 1) {
    const Index first = cfg.grid_sizes.front(), last = cfg.grid_sizes.back();
    for (std::size_t ti = 0; ti <= cfg.tuples.size(); ++ti) {
      const std::string name = ti < cfg.tuples.size() ? "max_ratio_tuple" + std::to_string(ti) : "max_ratio";
      const Real a = rep.aggregates[key(name, first)], b = rep.aggregates[key(name, last)];
      const Real growth = a > 0 ? b / a : (b > 0 ? std::numeric_limits<Real>::infinity() : 1);
      rep.aggregates["growth_" + name] = growth;
      if (growth > cfg.growth_tolerance) {
        rep.failures.push_back(name + " grew by " + format_real(growth) + " from N = " + std::to_string(first) +
                               " to N = " + std::to_string(last));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// mu-decay

MuInstance mu_instance(std::uint64_t seed, Index n, const ExponentTuple& p) {
  std::mt19937_64 rng(seed);
  const std::int64_t block = std::uniform_int_distribution<std::int64_t>(0, 7)(rng);
  // F1 and F2 share one of the two central 2^-6 cells of the block. Placing them anywhere in
  // the block lets their distance to the block edge dominate the mu = 1 stratum.
  const std::int64_t cell = 8 * block + std::uniform_int_distribution<std::int64_t>(3, 4)(rng);
  std::uniform_int_distribution<int> fine(8, 9);
  std::bernoulli_distribution coin(0.5);
  auto short_piece = [&] {
    DyadicPiece d;
    d.scale = fine(rng);
    const std::int64_t per_cell = std::int64_t(1) << (d.scale - 6);
    d.index = cell * per_cell + std::uniform_int_distribution<std::int64_t>(0, per_cell - 1)(rng);
    d.sign = coin(rng) ? 1 : -1;
    return std::vector<DyadicPiece>{d};
  };
  MuInstance out;
  out.f1 = realize(short_piece(), n);
  out.f2 = realize(short_piece(), n);
  out.f3 = realize(draw_large_set(rng, 0.5), n);
  out.omega = exceptional_set(out.f1.set, out.f2.set, out.f3.set, p.p3);
  out.fprime = !out.omega.omega;
  return out;
}

MuDecayReport run_mu_decay(const ExperimentConfig& cfg) {
  const ExponentTuple p = cfg.tuples.front();
  validate_tuple(p, FormMode::model);
  const Index n = cfg.grid_sizes.front();
  const TileSet tiles = model_tiles(n, cfg.scales);
  MuDecayReport rep;
  rep.config_hash = config_hash(cfg);
  rep.min_strata = std::numeric_limits<std::size_t>::max();

  // Largest mu^2-scaled stratum ratio of one instance; strata go to `records` when given.
  auto scaled_max_of = [&](std::uint64_t seed, std::vector<MuStratumRecord>* records, std::vector<Real>& xs,
                           std::vector<Real>& ys, std::size_t& count) {
    const MuInstance inst = mu_instance(seed, n, p);
    const Signal f4 = indicator(inst.fprime).cast<Complex>();
    const auto terms = quadform_model_terms(tiles, inst.f1.values, inst.f2.values, inst.f3.values, f4);
    std::map<Tile, Complex> term;
    for (std::size_t i = 0; i < tiles.size(); ++i) term[tiles[i]] = terms[i];
    const Real norm = rwt_normalizer(p, measure(inst.f1.set), measure(inst.f2.set), measure(inst.f3.set),
                                    measure(inst.fprime));

    Real scaled = 0;
    const auto strata = mu_stratify(tiles, inst.omega.omega);
    for (const auto& [mu, S] : strata) {
      Complex lam = 0;
      for (const Tile& s : S) lam += term.at(s);
      MuStratumRecord r{seed, mu, S.size(), std::abs(lam), norm, norm > 0 ? std::abs(lam) / norm : 0};
      if (records) records->push_back(r);
      scaled = std::max(scaled, r.ratio * static_cast<Real>(mu * mu));
      if (r.ratio > 0) {
        xs.push_back(std::log(static_cast<Real>(mu)));
        ys.push_back(std::log(r.ratio));
      }
    }
    count = strata.size();
    return scaled;
  };

  for (std::uint64_t seed : cfg.calibration_seeds) {
    std::vector<Real> xs, ys;
    std::size_t count = 0;
    rep.calibration.emplace_back(seed, scaled_max_of(seed, nullptr, xs, ys, count));
  }

  for (std::uint64_t seed : cfg.seeds) {
    std::vector<Real> xs, ys;
    std::size_t count = 0;
    const Real scaled = scaled_max_of(seed, &rep.strata, xs, ys, count);
    const std::size_t strata_size = count;
    rep.min_strata = std::min(rep.min_strata, strata_size);
    if (strata_size < 4) rep.failures.push_back("seed " + std::to_string(seed) + ": fewer than 4 strata");

    Real slope = std::numeric_limits<Real>::quiet_NaN();
    if (xs.size() >= 2) {
      const Eigen::Map<const Eigen::VectorXd> x(xs.data(), static_cast<Index>(xs.size()));
      const Eigen::Map<const Eigen::VectorXd> y(ys.data(), static_cast<Index>(ys.size()));
      const Eigen::VectorXd xc = x.array() - x.mean();
      slope = xc.dot(y) / xc.squaredNorm();
    }
    rep.slopes.emplace_back(seed, slope);
    rep.scaled_max.emplace_back(seed, scaled);
    if (!(slope <= cfg.slope_bound)) {
      rep.failures.push_back("seed " + std::to_string(seed) + ": slope " + format_real(slope) + " above " +
                             format_real(cfg.slope_bound));
    }
  }
  rep.baseline = rep.scaled_max.front().second;
  if (!rep.calibration.empty()) {
    rep.baseline = 0;
    for (const auto& [seed, v] : rep.calibration) rep.baseline = std::max(rep.baseline, v);
  }
  for (const auto& [seed, v] : rep.scaled_max) {
    if (v > cfg.constant_tolerance * rep.baseline) {
      rep.failures.push_back("seed " + std::to_string(seed) + ": max mu^2 ratio " + format_real(v) + " exceeds " +
                             format_real(cfg.constant_tolerance) + " x baseline " + format_real(rep.baseline));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Assembly over mu and sigma strata

AssemblyReport run_assembly(const ExperimentConfig& cfg) {
  const ExponentTuple p = cfg.tuples.front();
  validate_tuple(p, FormMode::model);
  const Index n = cfg.grid_sizes.front();
  const TileSet tiles = model_tiles(n, cfg.scales);
  const MuInstance inst = mu_instance(cfg.seeds.front(), n, p);
  const Signal f1 = inst.f1.values, f2 = inst.f2.values, f3 = inst.f3.values;
  const Signal f4 = indicator(inst.fprime).cast<Complex>();
  const Real m1 = measure(inst.f1.set), m2 = measure(inst.f2.set), m3 = measure(inst.f3.set);

  const auto terms = quadform_model_terms(tiles, f1, f2, f3, f4);
  std::map<Tile, Complex> term;
  for (std::size_t i = 0; i < tiles.size(); ++i) term[tiles[i]] = terms[i];
  std::array<std::map<Tile, Real>, 3> energy;
  const std::array<const Signal*, 3> fs{&f1, &f2, &f4};
  const std::array<int, 3> slots{1, 2, 4};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto e = packet_energies(tiles, *fs[r], slots[r]);
    for (std::size_t i = 0; i < tiles.size(); ++i) energy[r][tiles[i]] = e[i];
  }

  AssemblyReport rep;
  rep.config_hash = config_hash(cfg);
  for (const auto& [mu, S] : mu_stratify(tiles, inst.omega.omega)) {
    const auto strata = sigma_stratify(S, f1, f2, f4);
    TileSet covered;
    Real chain_mu = 0, last = 0;
    for (auto it = strata.rbegin(); it != strata.rend(); ++it) {
      const auto& [e, st] = *it;
      covered = set_union(covered, st.tiles);
      AssemblyRow row;
      row.mu = mu;
      row.sigma_exponent = e;
      for (const auto& round : st.rounds) {
        for (const Tree& T : round.forest) {
          ++row.trees;
          Complex lam = 0;
          for (const Tile& s : T.members) lam += term.at(s);
          row.measured += std::abs(lam);
          Real prod = 1;
          for (std::size_t r = 0; r < 3; ++r) {
            std::vector<Real> sub;
            for (const Tile& s : T.members) sub.push_back(energy[r].at(s));
            prod *= size_from_energies(T.members, sub, slots[r]).value;
          }
          row.tree_bound += static_cast<Real>(mu) * T.time().length() * prod * std::pow(m3, 1 / p.p3);
        }
      }
      const Real s = st.sigma, dmu = static_cast<Real>(mu);
      row.chain = dmu * std::pow(m3, 1 / p.p3) / (s * s) * std::min(dmu * m1, s * std::sqrt(m1)) *
                  std::min(dmu * m2, s * std::sqrt(m2)) * std::min(std::pow(dmu, -cfg.decay), s);
      chain_mu += row.chain;
      last = row.chain;
      rep.measured_total += row.measured;
      rep.tree_bound_total += row.tree_bound;
      rep.rows.push_back(row);
    }
    rep.chain_total += chain_mu;
    if (chain_mu > 0) rep.tail_fraction = std::max(rep.tail_fraction, last / chain_mu);
    if (covered != S) rep.failures.push_back("sigma strata do not partition S^mu for mu = " + std::to_string(mu));
  }
  rep.c_tree = rep.tree_bound_total > 0 ? rep.measured_total / rep.tree_bound_total : 0;
  rep.c_assembly = rep.chain_total > 0 ? rep.measured_total / rep.chain_total : 0;
  if (!std::isfinite(rep.c_tree) || !std::isfinite(rep.c_assembly)) rep.failures.push_back("non-finite constant");
  return rep;
}

// ---------------------------------------------------------------------------
// Reports and signal files

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw InvalidInput("report format must be csv or json, got " + s);
}

void emit_csv(std::ostream& out, const BoundReport& r) {
  out << "trial,N,p1,p2,p3,F1,F2,F3,Fprime,form,normalizer,ratio\n";
  for (const auto& t : r.trials) {
    out << t.trial << ',' << t.n;
    for (Real v : {t.p.p1, t.p.p2, t.p.p3, t.f1, t.f2, t.f3, t.fprime, t.form, t.normalizer, t.ratio}) {
      out << ',' << format_real(v);
    }
    out << '\n';
  }
}

void emit_json(std::ostream& out, const BoundReport& r) { out << json(r).dump(2) << '\n'; }

BoundReport report_from_json(const std::string& text) {
  try {
    return json::parse(text).get<BoundReport>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

void emit_report(const BoundReport& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (format == ReportFormat::csv) {
    emit_csv(out, r);
  } else {
    emit_json(out, r);
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Signal read_signal(std::istream& in) {
  std::vector<Complex> v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      const Real re = std::stod(line.substr(0, comma), &used);
      const std::string rest = line.substr(comma + 1);
      const Real im = std::stod(rest, &used);
      if (rest.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("trailing text");
      v.emplace_back(re, im);
    } catch (const std::exception&) {
      throw InvalidInput("signal line " + std::to_string(lineno) + ": expected 're,im'");
    }
  }
  require_grid(static_cast<Index>(v.size()));
  return Eigen::Map<const Signal>(v.data(), static_cast<Index>(v.size()));
}

void write_signal(std::ostream& out, const Signal& f) {
  for (Index i = 0; i < f.size(); ++i) out << format_real(f(i).real()) << ',' << format_real(f(i).imag()) << '\n';
}

}  // namespace tfa

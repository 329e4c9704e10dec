// Command-line front end. Exit status: 0 success, 1 a checked property failed, 2 bad input.

#include "tfa/harness.hpp"
#include "tfa/selection.hpp"
#include "tfa/tiles.hpp"
#include "tfa/wavepacket.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tfa;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  return in;
}

// Writes to `path`, or stdout when it is empty.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  body(out);
}

int cmd_decompose(Index n, int k, const std::string& in_path, const std::string& out_path) {
  auto in = open_in(in_path);
  const Signal f = read_signal(in);
  if (f.size() != n) {
    throw InvalidInput("signal has " + std::to_string(f.size()) + " samples, expected " + std::to_string(n));
  }
  const auto parts = decompose_scale(f, k);
  Signal sum = Signal::Zero(n);
  for (const auto& [idx, g] : parts) sum += g;
  const Real scale = norm_2(f);
  const Real err = scale > 0 ? norm_2(sum - f) / scale : norm_2(sum);
  with_output(out_path, [&](std::ostream& os) {
    os << "components " << parts.size() << "\nreconstruction_error " << format_real(err) << '\n';
    for (const auto& [idx, g] : parts) {
      os << idx.k << ' ' << idx.n << ' ' << idx.l << ' ' << format_real(g.squaredNorm() / static_cast<Real>(n)) << '\n';
    }
  });
  return err <= 1e-10 ? kOk : kFailed;
}

int cmd_tiles_gen(const TileSetParams& p, const std::string& out_path) {
  const TileSet S = generate_tileset(p);
  with_output(out_path, [&](std::ostream& os) { write_tiles(os, S); });
  return kOk;
}

int cmd_tiles_verify(const std::string& in_path) {
  auto in = open_in(in_path);
  const AxiomReport rep = verify_axioms(read_tiles(in));
  for (const auto& r : rep.results) {
    std::cout << (r.passed ? "pass " : "FAIL ") << r.name;
    if (r.witness) std::cout << ' ' << to_string(r.witness->first) << ' ' << to_string(r.witness->second);
    std::cout << '\n';
  }
  return rep.all_passed() ? kOk : kFailed;
}

int cmd_select(Real sigma, int j, const std::string& tiles_path, const std::string& in_path,
               const std::string& out_path) {
  if (!(sigma > 0) || std::exp2(std::round(std::log2(sigma))) != sigma) {
    throw InvalidInput("sigma must be a power of two");
  }
  auto tin = open_in(tiles_path);
  const TileSet P = read_tiles(tin);
  auto sin = open_in(in_path);
  const Signal f = read_signal(sin);
  const SelectionOutcome out = select_trees(P, f, j, sigma);
  with_output(out_path, [&](std::ostream& os) { write_outcome(os, out); });

  bool ok = size(out.residual, f, j).value <= sigma / 2 * norm_2(f) * (1 + 1e-12);
  ok = ok && check_top_disjointness(out).passed;
  if (!ok) std::cerr << "selection postcondition failed\n";
  return ok ? kOk : kFailed;
}

ExperimentConfig load_config(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in).get<ExperimentConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
}

void print_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cerr << "failed: " << f << '\n';
}

int cmd_experiment(const std::string& kind, const std::string& config_path, std::string out_path) {
  const ExperimentConfig cfg = load_config(config_path);
  if (out_path.empty()) out_path = cfg.output;
  nlohmann::json j;
  std::vector<std::string> failures;
  if (kind == "rwt") {
    const BoundReport r = run_rwt_experiment(cfg);
    j = r;
    failures = r.failures;
  } else if (kind == "mudecay") {
    const MuDecayReport r = run_mu_decay(cfg);
    j = r;
    failures = r.failures;
  } else {
    const AssemblyReport r = run_assembly(cfg);
    j = r;
    failures = r.failures;
  }
  with_output(out_path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  print_failures(failures);
  return failures.empty() ? kOk : kFailed;
}

int cmd_report(const std::string& format, const std::string& in_path, const std::string& out_path) {
  const ReportFormat fmt = parse_format(format);
  auto in = open_in(in_path);
  std::stringstream ss;
  ss << in.rdbuf();
  const BoundReport r = report_from_json(ss.str());
  if (out_path.empty()) {
    fmt == ReportFormat::csv ? emit_csv(std::cout, r) : emit_json(std::cout, r);
  } else {
    emit_report(r, fmt, out_path);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete time-frequency toolkit"};
  app.require_subcommand(1);

  Index n = 0;
  int k = 0;
  std::string in_path, out_path, tiles_path, config_path, format;

  auto* decompose = app.add_subcommand("decompose", "Wave packet decomposition at one scale");
  decompose->add_option("--n", n, "Grid size")->required();
  decompose->add_option("--k", k, "Scale")->required();
  decompose->add_option("--in", in_path, "Signal file (re,im per line)")->required();
  decompose->add_option("--out", out_path, "Output file");

  auto* tiles = app.add_subcommand("tiles", "Generate or verify tile sets");
  tiles->require_subcommand(1);
  TileSetParams params;
  auto* gen = tiles->add_subcommand("gen", "Random admissible tile set");
  gen->add_option("--count", params.count)->required();
  gen->add_option("--kmin", params.k_min);
  gen->add_option("--kmax", params.k_max);
  gen->add_option("--n", params.grid_size);
  gen->add_option("--seed", params.seed);
  gen->add_option("--out", out_path);
  auto* verify = tiles->add_subcommand("verify", "Check the tile axioms");
  verify->add_option("--in", in_path)->required();

  Real sigma = 1;
  int j = 1;
  auto* select = app.add_subcommand("select", "Greedy tree selection");
  select->add_option("--sigma", sigma)->required();
  select->add_option("--j", j)->required()->check(CLI::IsMember({1, 2, 4}));
  select->add_option("--tiles", tiles_path)->required();
  select->add_option("--in", in_path)->required();
  select->add_option("--out", out_path);

  auto* experiment = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  std::string kind;
  experiment->add_option("kind", kind)->required()->check(CLI::IsMember({"rwt", "mudecay", "assembly"}));
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out_path);

  auto* report = app.add_subcommand("report", "Convert a JSON bound report");
  report->add_option("--format", format)->required()->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--in", in_path)->required();
  report->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*decompose) return cmd_decompose(n, k, in_path, out_path);
    if (*gen) return cmd_tiles_gen(params, out_path);
    if (*verify) return cmd_tiles_verify(in_path);
    if (*select) return cmd_select(sigma, j, tiles_path, in_path, out_path);
    if (*experiment) return cmd_experiment(kind, config_path, out_path);
    if (*report) return cmd_report(format, in_path, out_path);
  } catch (const HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << " (top " << to_string(e.witness.top) << ")\n";
    return kInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

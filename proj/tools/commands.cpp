#include "commands.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cargoload/ansatz.hpp"
#include "cargoload/errors.hpp"
#include "cargoload/instance_io.hpp"
#include "cargoload/model.hpp"
#include "cargoload/optim.hpp"
#include "cargoload/oracle.hpp"
#include "cargoload/report.hpp"
#include "cargoload/run_config.hpp"
#include "cargoload/sim.hpp"

namespace cargoload::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("CARGOLOAD_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

std::optional<ExactSolution> try_reference(const ProblemInstance& inst) {
  if (structured_search_space(inst) > kStructuredSearchCap) return std::nullopt;
  return solve_exact(inst);
}

json counts_document(const ShotCounts& counts, const ExactSolution* reference) {
  auto doc = counts_to_json(counts);
  if (reference) {
    doc["optima"] = json::array();
    for (const auto& x : reference->optima) doc["optima"].push_back(encode_assignment(x).str());
  }
  return doc;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct GenArgs {
  std::uint64_t seed = 0;
  std::size_t n = 4;
  std::size_t m = 3;
  std::string out;
  bool force = false;
  GeneratorConfig gen;
  bool real_weights = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (fs::exists(a.out) && !a.force) throw Failure(a.out + " exists; pass --force to overwrite");
  auto cfg = a.gen;
  cfg.integer_weights = !a.real_weights;
  const auto inst = generate_instance(a.seed, a.n, a.m, cfg);
  const auto issues = validate_instance(inst);
  if (!issues.empty()) throw Failure("generated instance is invalid: " + issues.front());
  save_instance(a.out, inst);
  out << "wrote " << a.out << " (" << a.n << " containers, " << a.m << " slots, w_max " << inst.w_max << ")\n";
  return 0;
}

int cmd_exact(const std::string& path, std::ostream& out) {
  const auto inst = load_instance(path);
  const auto start = std::chrono::steady_clock::now();
  const auto sol = solve_exact(inst);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << solution_to_json(sol, ms).dump(2) << "\n";
  return 0;
}

struct OptimizeArgs {
  std::string instance;
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iterations;
  std::optional<std::uint64_t> shots;
  std::optional<double> epsilon;
  std::string method;
  bool exact_mode = false;
  std::size_t qubit_budget = kDefaultQubitBudget;
  std::size_t top_k = kDefaultTopK;
  std::string dump_state;
};

void check_budget(const ProblemInstance& inst, std::size_t budget) {
  if (inst.num_qubits() > budget)
    throw Failure("instance needs " + std::to_string(inst.num_qubits()) + " qubits, budget is " +
                  std::to_string(budget) + " (raise with --qubit-budget, max " + std::to_string(kHardQubitCap) + ")");
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.instance);
  check_budget(inst, a.qubit_budget);
  RunConfig rc = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  auto& cfg = rc.optimizer;
  if (a.seed) {
    cfg.seed = *a.seed;
    rc.has_seed = true;
  }
  if (!rc.has_seed) throw Failure("no seed given: pass --seed or set \"seed\" in the run config");
  if (a.max_iterations) cfg.max_iterations = *a.max_iterations;
  if (a.shots) cfg.shots = *a.shots;
  if (a.epsilon) cfg.cvar_epsilon = *a.epsilon;
  if (!a.method.empty()) cfg.method = method_from_string(a.method);
  if (a.exact_mode) cfg.exact_mode = true;
  check_optimizer_config(cfg);

  const auto penalty = rc.penalty.resolve(inst);
  const auto circuit = build_circuit(inst.num_qubits(), rc.layout);
  if (!rc.warm_start_path.empty()) {
    const auto ck = load_checkpoint(rc.warm_start_path);
    if (ck.n_qubits != circuit.n_qubits || ck.parameters.size() != circuit.parameter_count())
      throw Failure("warm start checkpoint does not match the circuit");
    cfg.warm_start = ck.parameters;
  }

  const auto reference = try_reference(inst);
  const ExactSolution* ref = reference ? &*reference : nullptr;
  const auto trace = optimize(inst, circuit, penalty, cfg, ref);
  const auto report = report_counts(inst, trace.final_counts, penalty, a.top_k, ref);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  write_text_file(dir / "trace.csv", trace_to_csv(trace.records));
  Checkpoint ck{inst.num_qubits(), inst.num_containers(), inst.num_slots(), rc.layout, cfg.seed,
                trace.final_parameters};
  save_checkpoint(dir / "checkpoint.json", ck);
  write_text_file(dir / "counts.json", counts_document(trace.final_counts, ref).dump(2) + "\n");

  json doc = report_to_json(report);
  doc["instance"] = instance_summary(inst);
  doc["method"] = to_string(cfg.method);
  doc["evaluations"] = trace.records.size();
  doc["best_cost"] = trace.best_cost;
  doc["cvar_epsilon"] = cfg.cvar_epsilon;
  doc["seed"] = cfg.seed;
  if (ref) {
    doc["optimal_weight"] = ref->optimal_weight;
    doc["success"] = top_is_optimal(trace.final_counts, *ref);
  }
  write_text_file(dir / "report.json", doc.dump(2) + "\n");
  write_text_file(dir / "histogram.svg", histogram_svg(report.rows));
  write_text_file(dir / "trace.svg", trace_svg(trace.records));
  if (!a.dump_state.empty()) dump_statevector(a.dump_state, run<double>(circuit, trace.final_parameters));

  out << "evaluations: " << trace.records.size() << "\nbest cost: " << trace.best_cost << "\n";
  if (!report.rows.empty())
    out << "top outcome: " << report.rows.front().bitstring << " p=" << report.rows.front().probability << "\n";
  if (ref) out << "oracle optimum weight: " << ref->optimal_weight << "\n";
  out << "artifacts in " << a.out_dir << "\n";
  return 0;
}

struct InferArgs {
  std::string instance;
  std::string checkpoint;
  std::string out_dir;
  std::string config;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::size_t top_k = kDefaultTopK;
  std::size_t qubit_budget = kDefaultQubitBudget;
  std::string dump_state;
};

int cmd_infer(const InferArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.instance);
  check_budget(inst, a.qubit_budget);
  const auto ck = load_checkpoint(a.checkpoint);
  if (ck.n_qubits != inst.num_qubits() || (ck.n_containers && ck.n_containers != inst.num_containers()) ||
      (ck.n_slots && ck.n_slots != inst.num_slots()))
    throw Failure("checkpoint header (" + std::to_string(ck.n_containers) + "x" + std::to_string(ck.n_slots) +
                  ", " + std::to_string(ck.n_qubits) + " qubits) does not match the instance (" +
                  std::to_string(inst.num_containers()) + "x" + std::to_string(inst.num_slots()) + ")");
  const RunConfig rc = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  const auto penalty = rc.penalty.resolve(inst);
  const auto circuit = build_circuit(ck.n_qubits, ck.layout);
  const auto reference = try_reference(inst);
  const ExactSolution* ref = reference ? &*reference : nullptr;
  const auto report = infer(inst, circuit, ck.parameters, a.shots, a.seed, penalty, a.top_k, ref);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  json doc = report_to_json(report);
  doc["instance"] = instance_summary(inst);
  doc["seed"] = a.seed;
  if (ref) {
    doc["optimal_weight"] = ref->optimal_weight;
    doc["success"] = top_is_optimal(report.counts, *ref);
  }
  write_text_file(dir / "counts.json", counts_document(report.counts, ref).dump(2) + "\n");
  write_text_file(dir / "report.json", doc.dump(2) + "\n");
  write_text_file(dir / "histogram.svg", histogram_svg(report.rows));
  if (!a.dump_state.empty()) dump_statevector(a.dump_state, run<double>(circuit, ck.parameters));

  for (const auto& r : report.rows) {
    out << r.bitstring << "  p=" << r.probability << "  energy=" << r.energy << "  weight=" << r.total_weight
        << (r.feasible ? "  feasible" : "  infeasible");
    if (r.optimal && *r.optimal) out << "  optimal";
    out << "\n";
  }
  return 0;
}

int cmd_report(const std::string& input, const std::string& output, std::size_t top_k, std::ostream& out) {
  const std::string text = read_all(input);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Failure(input + " is empty");
  std::string svg;
  if (text.rfind("iteration,", 0) == 0) {
    const auto records = trace_from_csv(text);
    if (records.empty()) throw Failure(input + " has no trace rows");
    svg = trace_svg(records);
  } else {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Failure(input + ": neither a trace CSV nor JSON (" + e.what() + ")");
    }
    std::vector<ReportRow> rows;
    if (doc.contains("top")) {
      rows = rows_from_report_json(doc);
    } else if (doc.contains("counts")) {
      const auto counts = counts_from_json(doc);
      std::vector<std::string> optima;
      if (doc.contains("optima")) optima = doc.at("optima").get<std::vector<std::string>>();
      std::vector<std::pair<BasisIndex, std::uint64_t>> ranked(counts.counts.begin(), counts.counts.end());
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      if (ranked.size() > top_k) ranked.resize(top_k);
      for (const auto& [s, c] : ranked) {
        ReportRow row;
        row.state = s;
        row.bitstring = basis_string(s, counts.n_qubits);
        row.count = c;
        row.probability = counts.frequency(s);
        if (doc.contains("optima")) row.optimal = std::find(optima.begin(), optima.end(), row.bitstring) != optima.end();
        rows.push_back(std::move(row));
      }
    } else {
      throw Failure(input + ": JSON has neither \"counts\" nor \"top\"");
    }
    if (rows.empty()) throw Failure(input + " has no outcomes to plot");
    svg = histogram_svg(rows, "Probability histogram");
  }
  write_text_file(output, svg);
  out << "wrote " << output << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cargo loading with a multi-angle layered variational quantum algorithm"};
  app.name("cargoload");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (falls back to CARGOLOAD_THREADS)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a seeded synthetic instance");
  g->add_option("--seed", gen.seed, "Generator seed")->required();
  g->add_option("-n,--containers", gen.n, "Number of containers")->check(CLI::PositiveNumber);
  g->add_option("-m,--slots", gen.m, "Number of slots")->check(CLI::PositiveNumber);
  g->add_option("-o,--out", gen.out, "Output instance file")->required();
  g->add_flag("--force", gen.force, "Overwrite an existing file");
  g->add_option("--capacity-fraction", gen.gen.capacity_fraction, "w_max as a fraction of total weight");
  g->add_option("--cog-window", gen.gen.cog_window, "CoG window as a fraction of the hold half-length");
  g->add_option("--shear-scale", gen.gen.shear_scale, "Center shear limit as a fraction of total weight");
  g->add_option("--shear-taper", gen.gen.shear_taper, "Edge/center shear limit ratio");
  g->add_flag("--real-weights", gen.real_weights, "Draw real-valued instead of whole-kG weights");

  std::string exact_path;
  auto* e = app.add_subcommand("exact", "Solve an instance exactly by enumeration");
  e->add_option("instance", exact_path, "Instance file")->required();

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "Run the hybrid variational optimization");
  o->add_option("instance", opt.instance, "Instance file")->required();
  o->add_option("-c,--config", opt.config, "Run-config JSON");
  o->add_option("-o,--out", opt.out_dir, "Output directory")->required();
  o->add_option("--seed", opt.seed, "Seed (overrides the run config)");
  o->add_option("--max-iterations", opt.max_iterations, "Objective evaluation budget");
  o->add_option("--shots", opt.shots, "Shots per evaluation");
  o->add_option("--epsilon", opt.epsilon, "CVaR tail fraction");
  o->add_option("--method", opt.method, "nelder_mead, spsa or cobyla");
  o->add_flag("--exact-mode", opt.exact_mode, "Use the exact output distribution instead of shots");
  o->add_option("--qubit-budget", opt.qubit_budget, "Largest instance to simulate")->check(CLI::Range(1, 28));
  o->add_option("--top-k", opt.top_k, "Rows in the histogram report");
  o->add_option("--dump-state", opt.dump_state, "Write the final statevector to this file");

  InferArgs inf;
  auto* i = app.add_subcommand("infer", "Sample a circuit at checkpointed parameters");
  i->add_option("instance", inf.instance, "Instance file")->required();
  i->add_option("--checkpoint", inf.checkpoint, "Parameter checkpoint")->required();
  i->add_option("-o,--out", inf.out_dir, "Output directory")->required();
  i->add_option("--seed", inf.seed, "Sampling seed")->required();
  i->add_option("--shots", inf.shots, "Shots")->check(CLI::PositiveNumber);
  i->add_option("-c,--config", inf.config, "Run-config JSON (penalty section)");
  i->add_option("--top-k", inf.top_k, "Rows in the histogram report");
  i->add_option("--qubit-budget", inf.qubit_budget, "Largest instance to simulate")->check(CLI::Range(1, 28));
  i->add_option("--dump-state", inf.dump_state, "Write the statevector to this file");

  std::string report_in, report_out;
  std::size_t report_top_k = kDefaultTopK;
  auto* r = app.add_subcommand("report", "Render a trace CSV or counts/report JSON as SVG");
  r->add_option("input", report_in, "trace.csv, counts.json or report.json")->required();
  r->add_option("-o,--out", report_out, "Output SVG")->required();
  r->add_option("--top-k", report_top_k, "Bars to draw for counts files");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    apply_threads(threads);
    if (*g) return cmd_gen(gen, out);
    if (*e) return cmd_exact(exact_path, out);
    if (*o) return cmd_optimize(opt, out);
    if (*i) return cmd_infer(inf, out);
    if (*r) return cmd_report(report_in, report_out, report_top_k, out);
  } catch (const std::exception& ex) {
    err << "cargoload: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cargoload::cli

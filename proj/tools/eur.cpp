// eur: command-line front end for the entropic-uncertainty toolkit.
//
//   eur bounds        --state <label|path> (--family-a <a> | --measurements <path>) [--bounds scb,lmf,rpz]
//   eur sweep         [--from 0 --to 1 --steps 101] [--state zero,minus1] [--format csv|json]
//   eur tomo          (--record <path> | --state <path>) [--target <path>]
//   eur pulse-verify  [--table <path>] [--dump-table]
//
// Exit status: 0 success, 1 usage error, 2 validation/data-quality error,
// 3 a bound or table row failed verification (or an internal error).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eur/bounds.hpp"
#include "eur/family.hpp"
#include "eur/io.hpp"
#include "eur/pulse.hpp"
#include "eur/tomography.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kInvalid = 2, kFailed = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string measurements_path;
  std::optional<double> family_a;
  std::vector<std::string> states;
  std::string bounds_list = "scb,lmf,rpz";
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 101;
  std::string format = "csv";
  std::string out_path;
  std::string record_path;
  std::string target_path;
  std::string table_path;
  bool dump_table = false;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw eur::ValidationError("cannot write '" + cfg.out_path + "'");
  out << text;
}

void emit(const RunConfig& cfg, const json& doc) { emit(cfg, doc.dump(2) + "\n"); }

double dominance_slack() {
  const char* env = std::getenv("EUR_TOL");
  if (!env || !*env) return eur::kValidationTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 0.0)) throw UsageError(std::string("EUR_TOL: not a non-negative number: ") + env);
  return v;
}

eur::BoundSelection parse_selection(const std::string& list) {
  eur::BoundSelection sel{false, false, false};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "scb") sel.scb = true;
    else if (item == "lmf") sel.lmf = true;
    else if (item == "rpz") sel.rpz = true;
    else throw UsageError("--bounds: unknown bound '" + item + "'");
  }
  return sel;
}

int cmd_bounds(const RunConfig& cfg) {
  if (cfg.states.size() != 1) throw UsageError("bounds: exactly one --state is required");
  if (cfg.measurements_path.empty() == !cfg.family_a.has_value())
    throw UsageError("bounds: give exactly one of --measurements or --family-a");
  const auto state = eur::io::resolve_state(cfg.states.front());
  const auto ms = cfg.family_a ? eur::build_family(eur::FamilyParameter(*cfg.family_a))
                               : eur::io::parse_measurements(eur::io::read_json_file(cfg.measurements_path));
  const auto rep = eur::bound_report(ms, state.rho, dominance_slack(), parse_selection(cfg.bounds_list));
  json doc = eur::io::report_json(rep);
  doc["state"] = state.label;
  if (cfg.family_a) doc["family_a"] = *cfg.family_a;
  emit(cfg, doc);
  return rep.all_satisfied() ? kOk : kFailed;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto grid = eur::uniform_grid(cfg.from, cfg.to, cfg.steps);
  std::vector<eur::LabeledState> states;
  if (cfg.states.empty()) {
    states = eur::reference_states();
  } else {
    for (const auto& label : cfg.states) {
      bool found = false;
      for (auto& s : eur::reference_states())
        if (s.label == label) {
          states.push_back(s);
          found = true;
        }
      if (!found) throw eur::ValidationError("sweep: unknown state label '" + label + "'");
    }
  }
  const auto rows = eur::sweep(grid, states);
  if (cfg.format == "json") emit(cfg, eur::io::sweep_json(rows));
  else emit(cfg, eur::io::sweep_csv(rows));
  return kOk;
}

int cmd_tomo(const RunConfig& cfg) {
  if (cfg.record_path.empty() == cfg.states.empty())
    throw UsageError("tomo: give exactly one of --record or --state");
  std::optional<eur::StateVector> target;
  if (!cfg.target_path.empty()) {
    const json t = eur::io::read_json_file(cfg.target_path);
    if (!t.is_object() || !t.contains("ket")) throw eur::ValidationError("target: expected {\"ket\": [...]}");
    target = eur::io::parse_vector(t.at("ket"), "target.ket");
    if (!target->is_normalized()) throw eur::ValidationError("target.ket: vector is not normalized");
  }

  eur::TomographyRecord rec;
  std::optional<eur::ComplexMatrix> source;
  if (!cfg.record_path.empty()) {
    rec = eur::io::parse_record(eur::io::read_json_file(cfg.record_path));
  } else {
    if (cfg.states.size() != 1) throw UsageError("tomo: exactly one --state");
    const std::string& spec = cfg.states.front();
    if (spec == "zero" || spec == "minus1" || spec == "mixed") source = eur::io::resolve_state(spec).rho.matrix();
    else source = eur::io::parse_state_matrix(eur::io::read_json_file(spec));
    rec = eur::simulate_projections(*source);
  }

  const auto res = eur::reconstruct(rec, target);
  json doc;
  doc["record"] = eur::io::record_json(rec);
  doc["rho"] = eur::io::matrix_json(res.rho.matrix());
  doc["raw_rho"] = eur::io::matrix_json(res.raw_rho);
  doc["vn_entropy"] = res.vn_entropy;
  if (res.fidelity_vs_target) doc["fidelity_vs_target"] = *res.fidelity_vs_target;
  if (res.raw_fidelity_vs_target) doc["raw_fidelity_vs_target"] = *res.raw_fidelity_vs_target;
  if (source) doc["roundtrip_max_error"] = eur::max_abs_diff(res.raw_rho, *source);
  emit(cfg, doc);
  return kOk;
}

int cmd_pulse_verify(const RunConfig& cfg) {
  const auto rows = cfg.table_path.empty() ? eur::projection_table()
                                           : eur::io::parse_table(eur::io::read_json_file(cfg.table_path));
  if (cfg.dump_table) {
    emit(cfg, eur::io::table_json(rows));
    return kOk;
  }
  const auto results = eur::verify_table(rows);
  json doc;
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    list.push_back({{"label", r.label}, {"fidelity", r.fidelity}, {"conjugate_fidelity", r.conjugate_fidelity}, {"passed", r.passed}});
  }
  doc["rows"] = list;
  doc["passed"] = passed;
  doc["total"] = results.size();
  doc["all_passed"] = passed == results.size();
  emit(cfg, doc);
  return passed == results.size() ? kOk : kFailed;
}

int fail(const char* kind, const std::string& msg, int code) {
  std::string line = msg;
  for (auto& ch : line)
    if (ch == '\n') ch = ' ';
  std::cerr << "eur: error[" << kind << "]: " << line << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic uncertainty bounds, qutrit tomography and pulse-table checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* bounds = app.add_subcommand("bounds", "Entropy sum and lower bounds for one state");
  bounds->add_option("--measurements", cfg.measurements_path, "Measurement document (JSON)");
  bounds->add_option("--family-a", cfg.family_a, "Use the M1/M2/M3(a) family at this a");
  bounds->add_option("--state", cfg.states, "State label (zero, minus1, mixed) or state document")->required();
  bounds->add_option("--bounds", cfg.bounds_list, "Comma-separated subset of scb,lmf,rpz");
  bounds->add_option("--out", cfg.out_path, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Entropy sum and bounds over a grid of a");
  sweep->add_option("--from", cfg.from, "First a");
  sweep->add_option("--to", cfg.to, "Last a");
  sweep->add_option("--steps", cfg.steps, "Grid points (>= 2)");
  sweep->add_option("--state", cfg.states, "Reference state labels")->delimiter(',');
  sweep->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", cfg.out_path, "Output path (default stdout)");

  auto* tomo = app.add_subcommand("tomo", "Reconstruct a qutrit state from projection values");
  tomo->add_option("--record", cfg.record_path, "Tomography record (JSON, 12 values)");
  tomo->add_option("--state", cfg.states, "Simulate the record from this state instead");
  tomo->add_option("--target", cfg.target_path, "Target ket document for fidelity");
  tomo->add_option("--out", cfg.out_path, "Output path (default stdout)");

  auto* pulse = app.add_subcommand("pulse-verify", "Check pulse sequences against their target eigenvectors");
  pulse->add_option("--table", cfg.table_path, "Table document (default: built-in 17-row table)");
  pulse->add_flag("--dump-table", cfg.dump_table, "Print the table as a document and exit");
  pulse->add_option("--out", cfg.out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kUsage);
  }

  try {
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (tomo->parsed()) return cmd_tomo(cfg);
    if (pulse->parsed()) return cmd_pulse_verify(cfg);
    return fail("usage", "no command", kUsage);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kUsage);
  } catch (const eur::DataQualityError& e) {
    return fail("data", e.what(), kInvalid);
  } catch (const eur::CapacityError& e) {
    return fail("capacity", e.what(), kInvalid);
  } catch (const eur::ValidationError& e) {
    return fail("validation", e.what(), kInvalid);
  } catch (const nlohmann::json::exception& e) {
    return fail("validation", e.what(), kInvalid);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kFailed);
  }
}

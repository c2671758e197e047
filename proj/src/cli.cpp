// Copyright 2026 The qpt Authors
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

#include "qpt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpt/campaign.hpp"
#include "qpt/channels.hpp"
#include "qpt/fidelity_stats.hpp"
#include "qpt/gates.hpp"
#include "qpt/phase_qubit.hpp"
#include "qpt/protocols.hpp"
#include "qpt/tomography.hpp"

namespace qpt::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kConfigKeys = {"gate",   "noise_p",    "protocol", "shots",
                                              "runs",   "seed",       "output_dir", "bins",
                                              "max_iterations", "j_max"};
const std::vector<std::string> kConfigGates = {"sqiswap", "iswap", "cnot", "identity"};
const std::vector<std::string> kConfigProtocols = {"standard", "tetrahedron", "both"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    out += (out.empty() ? "" : ", ") + s;
  }
  return out;
}

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ConfigError("config field '" + field + "': " + message);
}

std::int64_t integer_field(const json& j, const std::string& field, std::int64_t min_value) {
  const json& v = j.at(field);
  if (!v.is_number()) {
    field_error(field, "must be a number");
  }
  const double d = v.get<double>();
  if (v.is_number_float() && (std::floor(d) != d || std::abs(d) > 9.0e15)) {
    field_error(field, "must be an integer");
  }
  const std::int64_t n = v.is_number_float() ? static_cast<std::int64_t>(d) : v.get<std::int64_t>();
  if (n < min_value) {
    field_error(field, "must be >= " + std::to_string(min_value));
  }
  return n;
}

std::string choice_field(const json& j, const std::string& field,
                         const std::vector<std::string>& valid) {
  const json& v = j.at(field);
  if (!v.is_string()) {
    field_error(field, "must be a string (valid: " + join(valid) + ")");
  }
  const auto s = v.get<std::string>();
  if (std::find(valid.begin(), valid.end(), s) == valid.end()) {
    field_error(field, "unknown value '" + s + "' (valid: " + join(valid) + ")");
  }
  return s;
}

// Line/column of a byte offset, for parse diagnostics.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
  f << contents;
}

std::filesystem::path ensure_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

Gate experiment_gate(const ExperimentConfig& cfg) {
  return gate_by_name(cfg.gate);
}

ChiMatrix experiment_truth(const ExperimentConfig& cfg) {
  NoiseModel model;
  model.kind = cfg.noise_p > 0.0 ? NoiseModel::Kind::depolarizing : NoiseModel::Kind::none;
  model.p = cfg.noise_p;
  model.base = experiment_gate(cfg);
  return noisy_chi(model);
}

void require(const ExperimentConfig& cfg, const std::string& field, const std::string& command) {
  if (!cfg.provided.contains(field)) {
    throw ConfigError("config field '" + field + "' is required by '" + command + "'");
  }
}

ProtocolKind single_protocol(const ExperimentConfig& cfg, const std::string& command) {
  require(cfg, "protocol", command);
  if (cfg.protocol == "both") {
    throw ConfigError("config field 'protocol': '" + command +
                      "' needs a single protocol (standard or tetrahedron)");
  }
  return protocol_from_string(cfg.protocol);
}

json bloch_json(const std::vector<BlochState>& states) {
  json arr = json::array();
  for (const auto& s : states) {
    arr.push_back({s.bloch.x(), s.bloch.y(), s.bloch.z()});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_physics(double ic, double ie, double c, int levels, std::ostream& out, std::ostream& err) {
  const phase_qubit::PhaseQubitParams params(ic, ie, c);
  if (!params.deep_josephson_regime()) {
    err << "warning: E_J/E_C = " << params.josephson_energy() / params.charging_energy()
        << " < 100, harmonic phase-qubit approximation is questionable\n";
  }
  json j = {{"phi0", phase_qubit::equilibrium_phase(params)},
            {"omega_J", params.josephson_frequency()},
            {"omega_p", phase_qubit::plasma_frequency(params)},
            {"E_C", params.charging_energy()},
            {"E_J", params.josephson_energy()},
            {"deep_josephson_regime", params.deep_josephson_regime()},
            {"levels", phase_qubit::harmonic_levels(params, levels)}};
  out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_gate(const std::string& name, std::optional<double> gt, std::ostream& out) {
  json j;
  if (name == "cnot_sqiswap") {
    const CnotDecomposition d = cnot_via_sqiswap();
    j = matrix_to_json(d.gate.matrix);
    j["label"] = d.gate.label;
    j["rotation_convention"] = std::string(to_string(d.convention));
    j["global_phase"] = {d.match.phase.real(), d.match.phase.imag()};
    j["residual"] = d.match.residual;
  } else {
    const Gate g = gate_by_name(name, gt);
    j = matrix_to_json(g.matrix);
    j["label"] = g.label;
  }
  out << j.dump(2) << "\n";
  return kSuccess;
}

std::string chi_grid_csv(const ChiMatrix& chi) {
  const ComplexMatrix& m = chi.matrix();
  const Index n = m.rows();
  std::ostringstream csv;
  csv << "normalization,part,row";
  for (Index c = 0; c < n; ++c) {
    csv << ",c" << c;
  }
  csv << "\n";
  const std::pair<const char*, double> norms[] = {{"unit_trace", 1.0},
                                                  {"trace_S", static_cast<double>(chi.dim())}};
  for (const auto& [label, scale] : norms) {
    for (const char* part : {"re", "im"}) {
      for (Index r = 0; r < n; ++r) {
        csv << label << "," << part << "," << r;
        for (Index c = 0; c < n; ++c) {
          const Complex z = m(r, c) * scale;
          csv << "," << format_double(part[0] == 'r' ? z.real() : z.imag());
        }
        csv << "\n";
      }
    }
  }
  return csv.str();
}

int cmd_chi_export(const std::string& gate, std::optional<double> gt, double p,
                   const std::string& basis_name, const std::string& out_dir, std::ostream& out) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("p must lie in [0,1]");
  }
  if (basis_name != "pauli" && basis_name != "natural") {
    throw ConfigError("unknown basis '" + basis_name + "' (valid: pauli, natural)");
  }
  NoiseModel model;
  model.kind = p > 0.0 ? NoiseModel::Kind::depolarizing : NoiseModel::Kind::none;
  model.p = p;
  model.base = gate_by_name(gate, gt);
  const ChiMatrix natural = noisy_chi(model);
  const int n_qubits = natural.dim() == 4 ? 2 : 1;
  const ProcessBasis basis = pauli_basis(n_qubits);
  const ChiMatrix chi = basis_name == "pauli" ? change_basis(natural, basis) : natural;

  json j = {{"S", chi.dim()},
            {"basis", std::string(to_string(chi.basis()))},
            {"gate", gate},
            {"noise_p", p},
            {"normalization", "unit_trace"},
            {"matrix", matrix_to_json(chi.matrix())},
            {"matrix_trace_S", matrix_to_json(chi.trace_dim_matrix())}};
  if (chi.basis() == ChiBasis::pauli) {
    j["labels"] = basis.labels;
  }
  const auto dir = ensure_dir(out_dir);
  write_file(dir / "chi.json", j.dump(2) + "\n");
  write_file(dir / "chi_grid.csv", chi_grid_csv(chi));
  out << json({{"files", {(dir / "chi.json").string(), (dir / "chi_grid.csv").string()}}}).dump(2)
      << "\n";
  return kSuccess;
}

int cmd_protocol_show(const std::string& name, int qubits, std::ostream& out) {
  const Protocol proto = build_protocol(protocol_from_string(name), qubits);
  json povm_sizes = json::array();
  for (const auto& povm : proto.povms()) {
    povm_sizes.push_back(povm.effects.size());
  }
  json j = {{"name", std::string(to_string(proto.kind()))},
            {"n_qubits", proto.n_qubits()},
            {"dim", proto.dim()},
            {"bloch_vectors", bloch_json(proto.states())},
            {"input_count", proto.inputs().size()},
            {"povm_count", proto.povms().size()},
            {"outcomes_per_povm", proto.outcomes_per_config()},
            {"configurations", proto.config_count()},
            {"outcome_pairs", proto.outcome_count()},
            {"design_rank", proto.design_rank()},
            {"informationally_complete", proto.informationally_complete()}};
  out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_simulate(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig cfg = load_config(config_path);
  require(cfg, "shots", "simulate");
  const ProtocolKind kind = single_protocol(cfg, "simulate");
  const Protocol proto = build_protocol(kind, 2);
  const ChiMatrix truth = experiment_truth(cfg);
  const CountsRecord counts = simulate_counts(truth, proto, cfg.shots, cfg.seed);
  const Eigen::VectorXd p = outcome_probabilities(truth, proto);

  std::ostringstream csv;
  csv << "config,input,povm,outcome,probability,count\n";
  const std::size_t k = proto.outcomes_per_config();
  for (std::size_t r = 0; r < proto.outcome_count(); ++r) {
    const std::size_t c = r / k;
    csv << c << "," << proto.input_of(c) << "," << proto.povm_of(c) << "," << r % k << ","
        << format_double(p(static_cast<Index>(r))) << "," << counts.counts[r] << "\n";
  }
  const auto dir = ensure_dir(cfg.output_dir);
  write_file(dir / "counts.csv", csv.str());
  json j = {{"gate", cfg.gate},
            {"noise_p", cfg.noise_p},
            {"protocol", cfg.protocol},
            {"shots", cfg.shots},
            {"seed", cfg.seed},
            {"configurations", proto.config_count()},
            {"outcomes", proto.outcome_count()},
            {"file", (dir / "counts.csv").string()}};
  out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_reconstruct(const std::string& config_path, bool strict, bool with_chi, std::ostream& out,
                    std::ostream& err) {
  const ExperimentConfig cfg = load_config(config_path);
  require(cfg, "shots", "reconstruct");
  const ProtocolKind kind = single_protocol(cfg, "reconstruct");
  const Protocol proto = build_protocol(kind, 2);
  const ChiMatrix truth = experiment_truth(cfg);
  const CountsRecord counts = simulate_counts(truth, proto, cfg.shots, cfg.seed);
  MleOptions options;
  options.max_iterations = cfg.max_iterations;
  options.init_seed = cfg.seed;
  const ReconstructionResult res = mle_reconstruct(counts, proto, options);
  const double f = process_fidelity(res.chi_hat, truth);

  json j = {{"gate", cfg.gate},
            {"noise_p", cfg.noise_p},
            {"protocol", cfg.protocol},
            {"shots", cfg.shots},
            {"seed", cfg.seed},
            {"fidelity", f},
            {"dF", std::clamp(1.0 - f, 0.0, 1.0)},
            {"iterations", res.iterations},
            {"converged", res.converged},
            {"tp_residual", res.tp_residual},
            {"log_likelihood", res.log_likelihood.back()}};
  if (with_chi) {
    j["chi"] = matrix_to_json(res.chi_hat.matrix());
  }
  out << j.dump(2) << "\n";
  if (strict && !res.converged) {
    err << "error: reconstruction did not converge within " << cfg.max_iterations
        << " iterations\n";
    return kNumericalError;
  }
  return kSuccess;
}

int cmd_compare(const std::string& config_path, bool strict, int threads, std::ostream& out,
                std::ostream& err) {
  const ExperimentConfig cfg = load_config(config_path);
  if (cfg.protocol != "both") {
    throw ConfigError("config field 'protocol': 'compare' runs both protocols, use \"both\"");
  }
  CampaignConfig campaign;
  campaign.gate = experiment_gate(cfg);
  campaign.noise_p = cfg.noise_p;
  campaign.protocols = {ProtocolKind::standard, ProtocolKind::tetrahedron};
  campaign.shots = cfg.shots;
  campaign.runs = cfg.runs;
  campaign.seed = cfg.seed;
  campaign.max_iterations = cfg.max_iterations;

  const auto results = run_campaign(campaign, threads);

  int nonconverged = 0;
  for (const auto& ps : results) {
    for (const auto& s : ps.samples) {
      nonconverged += s.converged ? 0 : 1;
    }
  }
  if (strict && nonconverged > 0) {
    err << "error: " << nonconverged << " reconstructions did not converge\n";
    return kNumericalError;
  }

  std::ostringstream samples;
  samples << "run,protocol,F,dF,converged\n";
  for (const auto& ps : results) {
    for (const auto& s : ps.samples) {
      samples << s.run << "," << to_string(ps.protocol) << "," << format_double(s.fidelity) << ","
              << format_double(s.loss) << "," << (s.converged ? 1 : 0) << "\n";
    }
  }

  const auto std_loss = results[0].losses();
  const auto tet_loss = results[1].losses();
  const double upper = std::max(*std::max_element(std_loss.begin(), std_loss.end()),
                                *std::max_element(tet_loss.begin(), tet_loss.end()));
  const Histogram h_std = empirical_density(std_loss, cfg.bins, upper);
  const Histogram h_tet = empirical_density(tet_loss, cfg.bins, upper);
  std::ostringstream density;
  density << "bin_center,density_std,density_tet\n";
  for (std::size_t k = 0; k < h_std.centers.size(); ++k) {
    density << format_double(h_std.centers[k]) << "," << format_double(h_std.density[k]) << ","
            << format_double(h_tet.density[k]) << "\n";
  }

  const ProtocolComparison cmp = compare_protocols(std_loss, tet_loss, 1000, cfg.seed);
  auto fitted_nu = [&](const std::vector<double>& losses) -> json {
    try {
      return effective_dof(gx2_fit(losses, cfg.j_max));
    } catch (const std::invalid_argument&) {
      return nullptr;
    }
  };
  json summary = {{"gate", cfg.gate},
                  {"noise_p", cfg.noise_p},
                  {"shots", cfg.shots},
                  {"runs", cfg.runs},
                  {"seed", cfg.seed},
                  {"mean_std", cmp.mean_standard},
                  {"mean_tet", cmp.mean_tetrahedron},
                  {"ratio", cmp.ratio},
                  {"ci_low", cmp.ci_low},
                  {"ci_high", cmp.ci_high},
                  {"fitted_nu", {{"standard", fitted_nu(std_loss)},
                                 {"tetrahedron", fitted_nu(tet_loss)}}},
                  {"nonconverged", nonconverged}};

  const auto dir = ensure_dir(cfg.output_dir);
  write_file(dir / "samples.csv", samples.str());
  write_file(dir / "density.csv", density.str());
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << summary.dump(2) << "\n";
  return kSuccess;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte);
    throw ConfigError("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw ConfigError("unknown config key '" + key + "' (valid keys: " + join(kConfigKeys) + ")");
    }
    cfg.provided.insert(key);
  }
  if (j.contains("gate")) {
    cfg.gate = choice_field(j, "gate", kConfigGates);
  }
  if (j.contains("noise_p")) {
    if (!j["noise_p"].is_number()) {
      field_error("noise_p", "must be a number");
    }
    cfg.noise_p = j["noise_p"].get<double>();
    if (!(cfg.noise_p >= 0.0 && cfg.noise_p <= 1.0)) {
      field_error("noise_p", "p must lie in [0,1]");
    }
  }
  if (j.contains("protocol")) {
    cfg.protocol = choice_field(j, "protocol", kConfigProtocols);
  }
  if (j.contains("shots")) {
    cfg.shots = integer_field(j, "shots", 1);
  }
  if (j.contains("runs")) {
    cfg.runs = static_cast<int>(integer_field(j, "runs", 1));
  }
  if (j.contains("seed")) {
    cfg.seed = static_cast<std::uint64_t>(integer_field(j, "seed", 0));
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) {
      field_error("output_dir", "must be a string");
    }
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("bins")) {
    cfg.bins = static_cast<int>(integer_field(j, "bins", 2));
  }
  if (j.contains("max_iterations")) {
    cfg.max_iterations = static_cast<int>(integer_field(j, "max_iterations", 1));
  }
  if (j.contains("j_max")) {
    cfg.j_max = static_cast<int>(integer_field(j, "j_max", 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process tomography toolkit for phase-qubit gates", "qpt"};
  app.require_subcommand(1);

  double ic = 0.0;
  double ie = 0.0;
  double capacitance = 0.0;
  int levels = 2;
  auto* physics = app.add_subcommand("physics", "Phase-qubit operating point (JSON)");
  physics->add_option("--ic", ic, "Critical current [A]")->required();
  physics->add_option("--ie", ie, "Bias current [A]")->required();
  physics->add_option("--capacitance,-C", capacitance, "Junction capacitance [F]")->required();
  physics->add_option("--levels", levels, "Highest harmonic level index")->capture_default_str();

  std::string gate_name;
  std::optional<double> gt;
  auto* gate = app.add_subcommand("gate", "Print a gate matrix (JSON)");
  gate->add_option("name", gate_name,
                   "identity | sqiswap | iswap | cnot | cnot_sqiswap | interaction")
      ->required();
  gate->add_option("--gt", gt, "Pulse phase g*t for 'interaction'");

  auto* chi = app.add_subcommand("chi", "Process-matrix utilities");
  chi->require_subcommand(1);
  std::string chi_gate = "sqiswap";
  std::optional<double> chi_gt;
  double chi_p = 0.0;
  std::string chi_basis = "pauli";
  std::string chi_out = ".";
  auto* chi_export = chi->add_subcommand("export", "Write chi.json and chi_grid.csv");
  chi_export->add_option("--gate", chi_gate)->capture_default_str();
  chi_export->add_option("--gt", chi_gt);
  chi_export->add_option("--p", chi_p, "Depolarizing weight")->capture_default_str();
  chi_export->add_option("--basis", chi_basis, "pauli | natural")->capture_default_str();
  chi_export->add_option("--out-dir", chi_out)->capture_default_str();

  auto* protocol = app.add_subcommand("protocol", "Tomography protocol utilities");
  protocol->require_subcommand(1);
  std::string proto_name = "tetrahedron";
  int proto_qubits = 2;
  auto* show = protocol->add_subcommand("show", "Describe a protocol (JSON)");
  show->add_option("--name", proto_name, "standard | tetrahedron")->capture_default_str();
  show->add_option("--qubits", proto_qubits)->capture_default_str();

  std::string config_path;
  bool strict = false;
  bool with_chi = false;
  int threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Simulate counts, write counts.csv");
  simulate->add_option("--config", config_path)->required();
  auto* reconstruct = app.add_subcommand("reconstruct", "Simulate + MLE reconstruction (JSON)");
  reconstruct->add_option("--config", config_path)->required();
  reconstruct->add_flag("--strict", strict, "Fail (exit 3) on non-convergence");
  reconstruct->add_flag("--with-chi", with_chi, "Include the reconstructed chi");
  auto* compare = app.add_subcommand("compare", "Standard vs tetrahedron fidelity-loss campaign");
  compare->add_option("--config", config_path)->required();
  compare->add_flag("--strict", strict, "Fail (exit 3) on any non-convergence");
  compare->add_option("--threads", threads, "Worker threads (default: QPT_THREADS or all)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (*physics) {
      return cmd_physics(ic, ie, capacitance, levels, out, err);
    }
    if (*gate) {
      return cmd_gate(gate_name, gt, out);
    }
    if (*chi_export) {
      return cmd_chi_export(chi_gate, chi_gt, chi_p, chi_basis, chi_out, out);
    }
    if (*show) {
      return cmd_protocol_show(proto_name, proto_qubits, out);
    }
    if (*simulate) {
      return cmd_simulate(config_path, out);
    }
    if (*reconstruct) {
      return cmd_reconstruct(config_path, strict, with_chi, out, err);
    }
    if (*compare) {
      return cmd_compare(config_path, strict, threads, out, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kConfigError;
}

}  // namespace qpt::cli

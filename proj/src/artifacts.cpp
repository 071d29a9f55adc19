#include "idlms/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

namespace {

std::string hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string curves_csv(const RunArtifacts& artifacts) {
  std::ostringstream out;
  out << "cycle,algorithm,msd_linear,msd_db\n";
  const std::pair<const char*, const MsdCurve*> curves[] = {
      {"idlms", &artifacts.idlms_avg}, {"proposed", &artifacts.proposed_avg}};
  for (const auto& [name, curve] : curves) {
    for (int i = 0; i < curve->size(); ++i) {
      const double linear = curve->values[static_cast<std::size_t>(i)];
      out << (i + 1) << ',' << name << ',' << format_double(linear) << ','
          << format_double(to_decibels(linear)) << '\n';
    }
  }
  return out.str();
}

std::string nodes_csv(const RunArtifacts& artifacts) {
  std::ostringstream out;
  out << "node_id,sigma2_true,sigma2_est,mu_k\n";
  for (const auto& diag : artifacts.diagnostics) {
    out << diag.node_id << ',' << format_double(diag.sigma2_true) << ','
        << format_double(diag.sigma2_est) << ',' << format_double(diag.mu)
        << '\n';
  }
  return out.str();
}

std::string run_manifest(const RunArtifacts& artifacts,
                         std::uint64_t curves_checksum,
                         std::uint64_t nodes_checksum) {
  std::ostringstream out;
  out << "# run manifest\n"
      << "# --- configuration (reload-able as a config file) ---\n"
      << serialize_config(artifacts.config)
      << "# --- seed derivation ---\n"
      << "# run_seed(i) = splitmix64(master_seed + 0x9e3779b97f4a7c15 * (i + 1))\n"
      << "# --- per-run seeds and stream checksums ---\n"
      << "# both algorithms consume the stream named by each checksum\n";
  for (std::size_t r = 0; r < artifacts.run_seeds.size(); ++r) {
    out << "run_" << r << "_seed = " << artifacts.run_seeds[r] << '\n'
        << "run_" << r << "_stream_fnv1a64 = " << hex(artifacts.stream_checksums[r])
        << '\n';
  }
  out << "# --- artifact checksums ---\n"
      << "msd_curves_csv_fnv1a64 = " << hex(curves_checksum) << '\n'
      << "nodes_csv_fnv1a64 = " << hex(nodes_checksum) << '\n'
      << "# --- timing (excluded from determinism guarantees) ---\n"
      << "wall_clock_seconds = " << format_double(artifacts.wall_seconds) << '\n';
  return out.str();
}

std::string axis_dir_name(const ExperimentConfig& cfg, double value) {
  return to_string(cfg.sweep_axis) + "_" + format_double(value);
}

std::string summary_csv(const SweepArtifacts& artifacts) {
  std::ostringstream out;
  out << "axis,value,algorithm,steady_state_msd_linear,steady_state_msd_db,"
         "final_msd_linear,convergence_cycles,convergence_node_updates\n";
  for (const auto& row : artifacts.summary) {
    out << to_string(artifacts.config.sweep_axis) << ','
        << format_double(row.sweep_value) << ',' << row.algorithm << ','
        << format_double(row.steady_state) << ','
        << format_double(to_decibels(row.steady_state)) << ','
        << format_double(row.final_msd) << ',';
    if (row.convergence_cycles) out << *row.convergence_cycles;
    out << ',';
    if (row.convergence_node_updates) out << *row.convergence_node_updates;
    out << '\n';
  }
  return out.str();
}

std::string sweep_manifest(const SweepArtifacts& artifacts,
                           std::uint64_t summary_checksum) {
  std::ostringstream out;
  out << "# sweep manifest\n"
      << "# --- configuration ---\n"
      << serialize_config(artifacts.config)
      << "# --- sweep points ---\n";
  for (std::size_t p = 0; p < artifacts.points.size(); ++p) {
    out << "point_" << p << "_dir = "
        << axis_dir_name(artifacts.config, artifacts.config.sweep_values[p])
        << '\n';
  }
  out << "# --- ordinal checks (proposed algorithm, ascending sweep value) ---\n";
  if (artifacts.checks.computed) {
    out << "steady_state_non_increasing = "
        << (artifacts.checks.steady_state_non_increasing ? "true" : "false") << '\n'
        << "final_msd_non_increasing = "
        << (artifacts.checks.final_msd_non_increasing ? "true" : "false") << '\n';
    if (artifacts.checks.convergence_all_reached) {
      out << "convergence_cycles_non_decreasing = "
          << (artifacts.checks.convergence_cycles_non_decreasing ? "true" : "false")
          << '\n';
    } else {
      out << "convergence_cycles_non_decreasing = n/a (threshold not reached at "
             "some point)\n";
    }
  } else {
    out << "# single sweep point, nothing to compare\n";
  }
  out << "# --- artifact checksums ---\n"
      << "summary_csv_fnv1a64 = " << hex(summary_checksum) << '\n'
      << "# --- timing (excluded from determinism guarantees) ---\n"
      << "wall_clock_seconds = " << format_double(artifacts.wall_seconds) << '\n';
  return out.str();
}

}  // namespace

void export_artifacts(const RunArtifacts& artifacts,
                      const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + out_dir.string() +
                             ": " + ec.message());

  const std::string curves = curves_csv(artifacts);
  const std::string nodes = nodes_csv(artifacts);
  write_file(out_dir / "msd_curves.csv", curves);
  write_file(out_dir / "nodes.csv", nodes);
  write_file(out_dir / "manifest.txt",
             run_manifest(artifacts, fnv1a64(curves.data(), curves.size()),
                          fnv1a64(nodes.data(), nodes.size())));
}

void export_sweep_artifacts(const SweepArtifacts& artifacts,
                            const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + out_dir.string() +
                             ": " + ec.message());

  for (std::size_t p = 0; p < artifacts.points.size(); ++p) {
    export_artifacts(
        artifacts.points[p],
        out_dir / axis_dir_name(artifacts.config, artifacts.config.sweep_values[p]));
  }
  const std::string summary = summary_csv(artifacts);
  write_file(out_dir / "summary.csv", summary);
  write_file(out_dir / "sweep_manifest.txt",
             sweep_manifest(artifacts, fnv1a64(summary.data(), summary.size())));
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Fnv1a64 hash;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
    hash.update(buf, static_cast<std::size_t>(in.gcount()));
  return hash.digest();
}

}  // namespace idlms

#pragma once

#include <cstdint>
#include <filesystem>

#include "idlms/experiment.hpp"

namespace idlms {

// Writes msd_curves.csv, nodes.csv and manifest.txt into out_dir. Numeric
// columns use shortest round-trip formatting, so re-reading reproduces the
// in-memory doubles exactly.
void export_artifacts(const RunArtifacts& artifacts,
                      const std::filesystem::path& out_dir);

// One subdirectory per sweep point (each with the full artifact set), plus
// summary.csv and sweep_manifest.txt at the top level.
void export_sweep_artifacts(const SweepArtifacts& artifacts,
                            const std::filesystem::path& out_dir);

std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace idlms

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "speechml/dataset.hpp"

namespace speechml {

/// One recording: unique id, WAV path (relative paths resolve against the
/// manifest's directory), binary label, score in [0, 1].
struct ManifestRow {
  std::string id;
  std::string path;
  int label = 0;
  double score = 0.0;
};

struct Manifest {
  std::vector<ManifestRow> rows;
  std::filesystem::path source_dir;

  std::filesystem::path resolve_path(const ManifestRow& row) const {
    std::filesystem::path p(row.path);
    return p.is_absolute() ? p : source_dir / p;
  }
};

/// Strict parse of the id,path,label,score format; duplicate ids, non-binary
/// labels and out-of-range scores are rejected.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestRow>& rows);

/// Recording-level feature values keyed by id; columns follow
/// feature_schema() exactly.
struct FeatureTable {
  std::vector<std::string> ids;
  DataMatrix values;  // rows x kFeatureCount
};

FeatureTable read_feature_table(const std::filesystem::path& path);
void write_feature_table(const std::filesystem::path& path,
                         const FeatureTable& table);

/// Shortest exact decimal form that round-trips a double (17 significant
/// digits).
std::string format_double(double v);

}  // namespace speechml

#pragma once

#include <filesystem>
#include <string>

#include "evclust/evidence.hpp"
#include "evclust/neural.hpp"
#include "evclust/partition.hpp"

// Serialization of the on-disk formats. All loaders throw std::runtime_error
// with the offending path in the message.
namespace evclust::io {

// {"frame_size": n, "evidences": [{"focal": [..1-based..], "mass": m}, ...]}
std::string evidence_to_json(const EvidenceSet& es, int indent = 2);
EvidenceSet evidence_from_json(const std::string& text);
void save_evidence(const std::filesystem::path& path, const EvidenceSet& es);
EvidenceSet load_evidence(const std::filesystem::path& path);

// {"r": ..., "assignment": [...], "mcf": ..., "cluster_conflicts": [...]}
std::string partition_to_json(const Partition& p, int indent = 2);

// Network constants keyed by field name. Reading fills absent keys with the
// defaults; writing omits eb while it is the derive-at-run-time NaN.
std::string params_to_json(const neural::NetParams& params, int indent = 2);
neural::NetParams params_from_json(const std::string& text);
neural::NetParams load_params(const std::filesystem::path& path);

// Tab-separated output-voltage matrix, one row per line, %.4f entries.
void write_snapshot_frame(const std::filesystem::path& path, const Matrix& V);
Matrix read_snapshot_frame(const std::filesystem::path& path);

// Plain-text PGM (P2), gray = round(255 * V): width is the cluster count,
// height the evidence count.
void write_pgm(const std::filesystem::path& path, const Matrix& V);

}  // namespace evclust::io

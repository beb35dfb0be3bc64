#include "evclust/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evclust::io {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

json parse(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error(what + ": malformed JSON");
  }
  return j;
}

}  // namespace

std::string evidence_to_json(const EvidenceSet& es, int indent) {
  json items = json::array();
  for (const SimpleSupport& s : es.items()) {
    items.push_back({{"focal", s.focal.elements()}, {"mass", s.mass}});
  }
  json j{{"frame_size", es.frame().size()}, {"evidences", std::move(items)}};
  return j.dump(indent) + "\n";
}

EvidenceSet evidence_from_json(const std::string& text) {
  const json j = parse(text, "evidence");
  if (!j.is_object() || !j.contains("frame_size") || !j.contains("evidences")) {
    throw std::runtime_error("evidence: need frame_size and evidences");
  }
  if (!j["frame_size"].is_number_integer()) {
    throw std::runtime_error("evidence: frame_size must be an integer");
  }
  Frame frame(j["frame_size"].get<int>());
  if (!j["evidences"].is_array()) {
    throw std::runtime_error("evidence: evidences must be an array");
  }
  std::vector<SimpleSupport> items;
  items.reserve(j["evidences"].size());
  for (const json& e : j["evidences"]) {
    if (!e.is_object() || !e.contains("focal") || !e.contains("mass") ||
        !e["focal"].is_array() || !e["mass"].is_number()) {
      throw std::runtime_error("evidence: each entry needs a focal array and a mass");
    }
    const auto elements = e["focal"].get<std::vector<int>>();
    SimpleSupport s{FocalSet::from_elements(elements), e["mass"].get<Scalar>()};
    validate(frame, s);
    items.push_back(s);
  }
  return EvidenceSet(frame, std::move(items));
}

void save_evidence(const std::filesystem::path& path, const EvidenceSet& es) {
  write_file(path, evidence_to_json(es));
}

EvidenceSet load_evidence(const std::filesystem::path& path) {
  try {
    return evidence_from_json(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string partition_to_json(const Partition& p, int indent) {
  json j{{"r", p.cluster_count()},
         {"assignment", p.assignment()},
         {"mcf", p.metaconflict()},
         {"cluster_conflicts", p.cluster_conflicts()}};
  return j.dump(indent) + "\n";
}

std::string params_to_json(const neural::NetParams& params, int indent) {
  json j{{"eta", params.eta},
         {"u0", params.u0},
         {"ri", params.ri},
         {"gi", params.gi},
         {"dti", params.dti},
         {"noise_amp", params.noise_amp},
         {"snap_threshold", params.snap_threshold},
         {"max_iterations", params.max_iterations}};
  if (!std::isnan(params.eb)) {
    j["eb"] = params.eb;
  }
  return j.dump(indent) + "\n";
}

neural::NetParams params_from_json(const std::string& text) {
  const json j = parse(text, "params");
  if (!j.is_object()) {
    throw std::runtime_error("params: top level must be an object");
  }
  neural::NetParams p;
  const auto number = [&](const char* key, Scalar fallback) {
    if (!j.contains(key)) {
      return fallback;
    }
    if (!j[key].is_number()) {
      throw std::runtime_error(std::string("params: ") + key + " must be a number");
    }
    return j[key].get<Scalar>();
  };
  p.eta = number("eta", p.eta);
  p.u0 = number("u0", p.u0);
  p.ri = number("ri", p.ri);
  p.gi = number("gi", p.gi);
  p.dti = number("dti", p.dti);
  p.eb = number("eb", p.eb);
  p.noise_amp = number("noise_amp", p.noise_amp);
  p.snap_threshold = number("snap_threshold", p.snap_threshold);
  if (j.contains("max_iterations")) {
    if (!j["max_iterations"].is_number_integer()) {
      throw std::runtime_error("params: max_iterations must be an integer");
    }
    p.max_iterations = j["max_iterations"].get<int>();
  }
  return p;
}

neural::NetParams load_params(const std::filesystem::path& path) {
  try {
    return params_from_json(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_snapshot_frame(const std::filesystem::path& path, const Matrix& V) {
  std::ostringstream out;
  char cell[32];
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
      std::snprintf(cell, sizeof cell, "%.4f", V(i, j));
      if (j > 0) {
        out << '\t';
      }
      out << cell;
    }
    out << '\n';
  }
  write_file(path, std::move(out).str());
}

Matrix read_snapshot_frame(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<Scalar>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::vector<Scalar> row;
    Scalar v;
    while (fields >> v) {
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::runtime_error(path.string() + ": empty frame");
  }
  Matrix V(rows.size(), rows.front().size());
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
      V(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return V;
}

void write_pgm(const std::filesystem::path& path, const Matrix& V) {
  std::ostringstream out;
  out << "P2\n" << V.cols() << ' ' << V.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
      const long gray = std::lround(255.0 * std::clamp(V(i, j), Scalar(0), Scalar(1)));
      if (j > 0) {
        out << ' ';
      }
      out << gray;
    }
    out << '\n';
  }
  write_file(path, std::move(out).str());
}

}  // namespace evclust::io

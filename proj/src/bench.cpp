#include "evclust/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "evclust/lattice.hpp"
#include "evclust/oracle.hpp"
#include "evclust/partition.hpp"

namespace evclust::bench {

std::string to_string(Method method) {
  switch (method) {
    case Method::iterative:
      return "iterative";
    case Method::neural:
      return "neural";
    case Method::oracle:
      return "oracle";
  }
  throw std::invalid_argument("to_string: unknown method");
}

Method method_from_string(std::string_view name) {
  if (name == "iterative") {
    return Method::iterative;
  }
  if (name == "neural") {
    return Method::neural;
  }
  if (name == "oracle") {
    return Method::oracle;
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t x = splitmix64(base);
  x = splitmix64(x ^ a);
  x = splitmix64(x ^ b);
  x = splitmix64(x ^ c);
  return x;
}

namespace {

std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string conflicts_json(std::span<const Scalar> conflicts) {
  std::string out = "[";
  for (std::size_t i = 0; i < conflicts.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += compact(conflicts[i]);
  }
  out += ']';
  return out;
}

void fill_from_partition(RunRecord& rec, const Partition& p) {
  rec.mcf = p.metaconflict();
  rec.cluster_conflicts = p.cluster_conflicts();
  rec.assignment = p.assignment();
}

}  // namespace

std::string run_record_to_json(const RunRecord& record, int indent) {
  nlohmann::json j{
      {"size", record.size},
      {"method", to_string(record.method)},
      {"run_id", record.run_id},
      {"seed", record.seed},
      {"problem_seed", record.problem_seed},
      {"clusters", record.clusters},
      {"mcf", record.mcf},
      {"iterations", record.iterations},
      {"wall_ms", record.wall_ms},
      {"converged", record.converged},
      {"cluster_conflicts", record.cluster_conflicts},
      {"assignment", record.assignment},
  };
  if (!record.error.empty()) {
    j["error"] = record.error;
  }
  return j.dump(indent) + "\n";
}

RunRecord run_single(const EvidenceSet& es, int clusters, Method method,
                     const neural::NetParams& params, std::uint64_t seed) {
  RunRecord rec;
  rec.size = es.frame().size();
  rec.method = method;
  rec.seed = seed;
  rec.clusters = clusters;
  rec.mcf = std::numeric_limits<Scalar>::quiet_NaN();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (method) {
      case Method::iterative: {
        OptimizeResult opt = iterative_optimize(random_partition(es, clusters, seed));
        rec.iterations = static_cast<int>(opt.trace.size());
        rec.converged = true;
        fill_from_partition(rec, opt.partition);
        break;
      }
      case Method::neural: {
        neural::NeuralResult res = neural::run(es, clusters, params, seed);
        rec.iterations = res.iterations;
        rec.converged = res.converged;
        if (res.partition) {
          fill_from_partition(rec, *res.partition);
        }
        break;
      }
      case Method::oracle: {
        OracleResult res = brute_force_min(es, clusters);
        rec.iterations = static_cast<int>(res.evaluated);
        rec.converged = true;
        fill_from_partition(rec, Partition(es, res.argmin, clusters));
        break;
      }
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.converged = false;
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  if (config.runs_per_size < 1) {
    throw std::invalid_argument("run_experiment: runs_per_size must be positive");
  }
  if (config.methods.empty()) {
    throw std::invalid_argument("run_experiment: no methods configured");
  }
  std::vector<RunRecord> records;
  for (int n : config.sizes) {
    std::vector<EvidenceSet> problems;
    std::vector<std::uint64_t> problem_seeds;
    problems.reserve(static_cast<std::size_t>(config.runs_per_size));
    for (int run = 0; run < config.runs_per_size; ++run) {
      ProblemSpec spec;
      spec.frame_size = n;
      spec.mass_low = config.mass_low;
      spec.mass_high = config.mass_high;
      spec.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(n), 0,
                              static_cast<std::uint64_t>(run));
      problems.push_back(generate_lattice_problem(spec));
      problem_seeds.push_back(spec.seed);
    }
    neural::NetParams params = config.net_params;
    if (config.scale_inhibition) {
      params = neural::scale_params(config.net_params, problems.front().size(), n);
    }
    for (Method method : config.methods) {
      const auto method_tag = 1 + static_cast<std::uint64_t>(method);
      for (int run = 0; run < config.runs_per_size; ++run) {
        const std::uint64_t seed = derive_seed(
            config.base_seed, static_cast<std::uint64_t>(n), method_tag,
            static_cast<std::uint64_t>(run));
        RunRecord rec = run_single(problems[static_cast<std::size_t>(run)], n,
                                   method, params, seed);
        rec.run_id = run;
        rec.problem_seed = problem_seeds[static_cast<std::size_t>(run)];
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "size,method,run_id,seed,mcf,iterations,wall_ms,converged,"
         "cluster_conflicts_json\n";
  for (const RunRecord& r : records) {
    out << r.size << ',' << to_string(r.method) << ',' << r.run_id << ',' << r.seed
        << ',' << compact(r.mcf) << ',' << r.iterations << ',' << compact(r.wall_ms)
        << ',' << (r.converged ? "true" : "false") << ",\""
        << conflicts_json(r.cluster_conflicts) << "\"\n";
  }
}

std::vector<Summary> summarize(std::span<const RunRecord> records) {
  std::map<std::pair<int, int>, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    groups[{r.size, static_cast<int>(r.method)}].push_back(&r);
  }
  std::vector<Summary> out;
  out.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    Summary s;
    s.size = key.first;
    s.method = static_cast<Method>(key.second);
    s.runs = static_cast<int>(group.size());

    std::vector<Scalar> mcfs;
    double wall = 0.0;
    int timed = 0;
    int clusters = s.size;
    for (const RunRecord* r : group) {
      clusters = r->clusters;
      if (!r->error.empty()) {
        continue;
      }
      wall += r->wall_ms;
      ++timed;
      if (r->converged && !std::isnan(r->mcf)) {
        ++s.converged;
        mcfs.push_back(r->mcf);
      }
    }
    if (mcfs.empty()) {
      const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
      s.best_mcf = s.median_mcf = s.mean_mcf = s.mean_cluster_conflict = nan;
    } else {
      std::sort(mcfs.begin(), mcfs.end());
      s.best_mcf = mcfs.front();
      const std::size_t half = mcfs.size() / 2;
      s.median_mcf = mcfs.size() % 2 == 1 ? mcfs[half]
                                          : (mcfs[half - 1] + mcfs[half]) / 2;
      s.mean_mcf = std::accumulate(mcfs.begin(), mcfs.end(), Scalar(0)) /
                   static_cast<Scalar>(mcfs.size());
      s.mean_cluster_conflict = average_cluster_conflict(s.mean_mcf, clusters);
    }
    s.mean_wall_ms = timed > 0 ? wall / timed : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<Scalar> reference_mean_mcf(int frame_size) {
  switch (frame_size) {
    case 3:
      return 0.016;
    case 4:
      return 0.059;
    case 5:
      return 0.076;
    case 6:
      return 0.398;
    case 7:
      return 0.856;
    default:
      return std::nullopt;
  }
}

std::string summaries_to_json(std::span<const Summary> summaries, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Summary& s : summaries) {
    nlohmann::json j{{"size", s.size},
                     {"method", to_string(s.method)},
                     {"runs", s.runs},
                     {"converged", s.converged},
                     {"best_mcf", s.best_mcf},
                     {"median_mcf", s.median_mcf},
                     {"mean_mcf", s.mean_mcf},
                     {"mean_wall_ms", s.mean_wall_ms},
                     {"mean_cluster_conflict", s.mean_cluster_conflict}};
    if (s.method == Method::neural) {
      if (const auto ref = reference_mean_mcf(s.size)) {
        j["reference_mean_mcf"] = *ref;
      }
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(indent) + "\n";
}

std::string comparison_table(std::span<const Summary> summaries) {
  std::ostringstream out;
  char line[192];
  std::snprintf(line, sizeof line, "%4s  %-9s  %4s  %4s  %12s  %12s  %12s  %8s  %10s\n",
                "size", "method", "runs", "conv", "best_mcf", "median_mcf",
                "mean_mcf", "ref_mean", "mean_ms");
  out << line;
  for (const Summary& s : summaries) {
    char best[24], median[24], mean[24], ref[24];
    std::snprintf(best, sizeof best, "%.6g", s.best_mcf);
    std::snprintf(median, sizeof median, "%.6g", s.median_mcf);
    std::snprintf(mean, sizeof mean, "%.6g", s.mean_mcf);
    const auto reference =
        s.method == Method::neural ? reference_mean_mcf(s.size) : std::nullopt;
    if (reference) {
      std::snprintf(ref, sizeof ref, "%.3f", *reference);
    } else {
      std::snprintf(ref, sizeof ref, "-");
    }
    std::snprintf(line, sizeof line, "%4d  %-9s  %4d  %4d  %12s  %12s  %12s  %8s  %10.3f\n",
                  s.size, to_string(s.method).c_str(), s.runs, s.converged, best,
                  median, mean, ref, s.mean_wall_ms);
    out << line;
  }
  return out.str();
}

}  // namespace evclust::bench

#include "evclust/lattice.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace evclust {

EvidenceSet generate_lattice_problem(const ProblemSpec& spec) {
  if (spec.frame_size < 2 || spec.frame_size > Frame::kMaxSize)
    throw std::invalid_argument("lattice frame size must lie in [2, 24]");
  if (!(spec.mass_low > 0.0 && spec.mass_low <= spec.mass_high &&
        spec.mass_high < 1.0))
    throw std::invalid_argument("mass bounds must satisfy 0 < low <= high < 1");

  Frame frame(spec.frame_size);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<Scalar> mass(spec.mass_low, spec.mass_high);

  std::vector<SimpleSupport> items;
  const std::uint32_t full = frame.full_mask();
  items.reserve(full);
  for (std::uint32_t bits = 1; bits <= full; ++bits)
    items.push_back({FocalSet{bits}, mass(rng)});
  return EvidenceSet(frame, std::move(items));
}

Partition canonical_partition(const EvidenceSet& es, int cluster_count,
                              Scalar domain_conflict) {
  if (cluster_count < 1)
    throw std::invalid_argument("cluster count must be at least 1");
  std::vector<int> assignment(static_cast<std::size_t>(es.size()));
  for (int i = 0; i < es.size(); ++i) {
    const int lowest = std::countr_zero(es.item(i).focal.bits);
    assignment[static_cast<std::size_t>(i)] = std::min(lowest, cluster_count - 1);
  }
  return Partition(es, std::move(assignment), cluster_count, domain_conflict);
}

ConflictOdds conflict_probability(int n) {
  if (n < 2 || n > Frame::kMaxSize)
    throw std::invalid_argument("frame size must lie in [2, 24]");
  ConflictOdds odds;
  std::int64_t choose = 1;  // C(n, j), updated exactly step by step
  for (int j = 1; j <= n - 1; ++j) {
    choose = choose * (n - j + 1) / j;
    odds.conflicting += choose * ((std::int64_t{1} << (n - j)) - 1);
  }
  const std::int64_t subsets = (std::int64_t{1} << n) - 1;
  odds.total = subsets * subsets - subsets;
  odds.value = static_cast<Scalar>(odds.conflicting) / static_cast<Scalar>(odds.total);
  return odds;
}

Scalar average_cluster_conflict(Scalar mcf, int n) {
  if (!(mcf >= 0.0 && mcf <= 1.0))
    throw std::domain_error("metaconflict must lie in [0, 1]");
  if (n < 1) throw std::invalid_argument("cluster count must be at least 1");
  return 1.0 - std::pow(1.0 - mcf, 1.0 / n);
}

}  // namespace evclust

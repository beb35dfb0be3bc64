#include "evclust/partition.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace evclust {

Partition::Partition(const EvidenceSet& es, std::vector<int> assignment,
                     int cluster_count, Scalar domain_conflict)
    : es_(&es),
      assignment_(std::move(assignment)),
      clusters_(cluster_count),
      c0_(domain_conflict) {
  if (clusters_ < 1)
    throw std::invalid_argument("cluster count must be at least 1");
  if (static_cast<int>(assignment_.size()) != es.size())
    throw std::invalid_argument("assignment length must match evidence count");
  for (int c : assignment_)
    if (c < 0 || c >= clusters_)
      throw std::invalid_argument("cluster index out of range");
  if (!(c0_ >= 0.0 && c0_ <= 1.0))
    throw std::invalid_argument("domain conflict must lie in [0, 1]");
  conflicts_ = recomputed_conflicts();
}

Scalar Partition::metaconflict() const {
  return evclust::metaconflict(c0_, conflicts_);
}

std::vector<int> Partition::members(int cluster) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (assignment_[static_cast<std::size_t>(i)] == cluster) out.push_back(i);
  return out;
}

void Partition::apply(const MoveCandidate& move) {
  if (move.evidence_index < 0 || move.evidence_index >= size())
    throw std::out_of_range("evidence index out of range");
  if (cluster_of(move.evidence_index) != move.from_cluster)
    throw std::invalid_argument("move does not match the current assignment");
  if (move.to_cluster < 0 || move.to_cluster >= clusters_ ||
      move.to_cluster == move.from_cluster)
    throw std::invalid_argument("invalid target cluster");
  assignment_[static_cast<std::size_t>(move.evidence_index)] = move.to_cluster;
  conflicts_[static_cast<std::size_t>(move.from_cluster)] = move.new_from_conflict;
  conflicts_[static_cast<std::size_t>(move.to_cluster)] = move.new_to_conflict;
}

std::vector<Scalar> Partition::recomputed_conflicts() const {
  std::vector<Scalar> out(static_cast<std::size_t>(clusters_), 0.0);
  std::vector<MassFunction> acc(static_cast<std::size_t>(clusters_),
                                MassFunction(es_->frame()));
  for (int i = 0; i < size(); ++i)
    acc[static_cast<std::size_t>(assignment_[static_cast<std::size_t>(i)])].fold(
        es_->item(i));
  for (int c = 0; c < clusters_; ++c)
    out[static_cast<std::size_t>(c)] = acc[static_cast<std::size_t>(c)].conflict_mass();
  return out;
}

MoveCandidate evaluate_transfer(const Partition& p, int evidence_index, int to_cluster) {
  if (evidence_index < 0 || evidence_index >= p.size())
    throw std::out_of_range("evidence index out of range");
  if (to_cluster < 0 || to_cluster >= p.cluster_count())
    throw std::out_of_range("target cluster out of range");
  const int from = p.cluster_of(evidence_index);
  if (from == to_cluster)
    throw std::invalid_argument("evidence already lives in the target cluster");

  std::vector<int> source, target;
  for (int i = 0; i < p.size(); ++i) {
    const int c = p.cluster_of(i);
    if (c == from && i != evidence_index) source.push_back(i);
    if (c == to_cluster) target.push_back(i);
  }
  target.push_back(evidence_index);
  std::sort(target.begin(), target.end());  // fold in evidence order

  MoveCandidate m;
  m.evidence_index = evidence_index;
  m.from_cluster = from;
  m.to_cluster = to_cluster;
  m.new_from_conflict = combine_conflict(p.evidence(), source);
  m.new_to_conflict = combine_conflict(p.evidence(), target);

  Scalar plausibility = 1.0 - p.domain_conflict();
  for (int c = 0; c < p.cluster_count(); ++c) {
    const Scalar conflict = c == from          ? m.new_from_conflict
                            : c == to_cluster ? m.new_to_conflict
                                              : p.cluster_conflicts()[static_cast<std::size_t>(c)];
    plausibility *= 1.0 - conflict;
  }
  m.new_metaconflict = 1.0 - plausibility;
  return m;
}

bool is_favorable(const Partition& p, const MoveCandidate& move) {
  return move.new_metaconflict < p.metaconflict() - kFavorableTol;
}

OptimizeResult iterative_optimize(Partition start) {
  OptimizeResult result{std::move(start), {}};
  Partition& p = result.partition;
  if (p.cluster_count() < 2) return result;  // no place to transfer anything

  for (;;) {
    std::optional<MoveCandidate> best;
    for (int q = 0; q < p.size(); ++q) {
      for (int j = 0; j < p.cluster_count(); ++j) {
        if (j == p.cluster_of(q)) continue;
        MoveCandidate cand = evaluate_transfer(p, q, j);
        if (!best || cand.new_metaconflict < best->new_metaconflict)
          best = cand;
      }
    }
    if (!best || !is_favorable(p, *best)) break;
    p.apply(*best);
    result.trace.push_back(*best);
  }
  return result;
}

Partition random_partition(const EvidenceSet& es, int cluster_count,
                           std::uint64_t seed, Scalar domain_conflict) {
  if (cluster_count < 1)
    throw std::invalid_argument("cluster count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, cluster_count - 1);
  std::vector<int> assignment(static_cast<std::size_t>(es.size()));
  for (auto& a : assignment) a = pick(rng);
  return Partition(es, std::move(assignment), cluster_count, domain_conflict);
}

}  // namespace evclust

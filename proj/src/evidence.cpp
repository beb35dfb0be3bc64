#include "evclust/evidence.hpp"

#include <cmath>
#include <stdexcept>

namespace evclust {

Frame::Frame(int size) : size_(size) {
  if (size < 1 || size > kMaxSize)
    throw std::invalid_argument("frame size must lie in [1, 24]");
}

FocalSet FocalSet::from_elements(std::span<const int> elements) {
  std::uint32_t bits = 0;
  for (int e : elements) {
    if (e < 1 || e > Frame::kMaxSize)
      throw std::invalid_argument("frame element out of range");
    bits |= 1u << (e - 1);
  }
  return FocalSet{bits};
}

std::vector<int> FocalSet::elements() const {
  std::vector<int> out;
  for (int e = 0; e < Frame::kMaxSize; ++e)
    if (bits & (1u << e)) out.push_back(e + 1);
  return out;
}

void validate(const Frame& frame, const SimpleSupport& s) {
  if (s.focal.empty())
    throw std::invalid_argument("focal set must be nonempty");
  if (!s.focal.within(frame))
    throw std::invalid_argument("focal set exceeds the frame");
  if (!(s.mass > 0.0 && s.mass < 1.0))
    throw std::invalid_argument("mass must lie in (0, 1)");
}

MassFunction::MassFunction(const Frame& frame) {
  entries_[frame.full_mask()] = 1.0;
}

void MassFunction::fold(const SimpleSupport& s) {
  std::map<std::uint32_t, Scalar> next;
  const Scalar m = s.mass;
  for (const auto& [bits, mass] : entries_) {
    const std::uint32_t cut = bits & s.focal.bits;
    if (cut == 0u)
      conflict_ += mass * m;
    else
      next[cut] += mass * m;
    next[bits] += mass * (1.0 - m);  // intersection with the frame remainder
  }
  entries_ = std::move(next);
}

Scalar MassFunction::total_mass() const {
  Scalar sum = conflict_;
  for (const auto& [bits, mass] : entries_) {
    (void)bits;
    sum += mass;
  }
  return sum;
}

Scalar pairwise_conflict(const SimpleSupport& a, const SimpleSupport& b) {
  return a.focal.intersects(b.focal) ? 0.0 : a.mass * b.mass;
}

Scalar weight_of_conflict(Scalar c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::domain_error("conflict must lie in [0, 1]");
  return -std::log1p(-c);
}

Scalar combine_conflict(const Frame& frame, std::span<const SimpleSupport> items) {
  MassFunction acc(frame);
  for (const auto& s : items) acc.fold(s);
  return acc.conflict_mass();
}

Scalar metaconflict(Scalar domain_conflict, std::span<const Scalar> cluster_conflicts) {
  if (!(domain_conflict >= 0.0 && domain_conflict <= 1.0))
    throw std::domain_error("domain conflict must lie in [0, 1]");
  Scalar plausibility = 1.0 - domain_conflict;
  for (Scalar c : cluster_conflicts) {
    if (!(c >= 0.0 && c < 1.0))
      throw std::domain_error("cluster conflict must lie in [0, 1)");
    plausibility *= 1.0 - c;
  }
  return 1.0 - plausibility;
}

EvidenceSet::EvidenceSet(Frame frame, std::vector<SimpleSupport> items)
    : frame_(frame), items_(std::move(items)) {
  for (const auto& s : items_) validate(frame_, s);
  const int n = static_cast<int>(items_.size());
  conflict_.setZero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      conflict_(j, k) = conflict_(k, j) =
          pairwise_conflict(items_[static_cast<std::size_t>(j)],
                            items_[static_cast<std::size_t>(k)]);
  weight_ = conflict_.unaryExpr([](Scalar c) { return weight_of_conflict(c); });
}

Scalar combine_conflict(const EvidenceSet& es, std::span<const int> members) {
  MassFunction acc(es.frame());
  for (int i : members) acc.fold(es.item(i));
  return acc.conflict_mass();
}

}  // namespace evclust

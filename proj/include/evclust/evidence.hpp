#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace evclust {

using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// Absolute tolerance for conflict-value comparisons, shared by the test
// suites.
inline constexpr Scalar kConflictTol = 1e-12;

// Frame of discernment {1, ..., size}; element k occupies bit k-1 of a
// focal-set mask.
class Frame {
 public:
  static constexpr int kMaxSize = 24;  // focal sets are 32-bit masks

  explicit Frame(int size);

  int size() const { return size_; }
  std::uint32_t full_mask() const { return (1u << size_) - 1u; }

 private:
  int size_;
};

// Subset of a frame stored as a bitmask. Propositions are nonempty; the
// empty mask only ever appears as the conflict slot of a MassFunction.
struct FocalSet {
  std::uint32_t bits = 0;

  constexpr FocalSet() = default;
  constexpr explicit FocalSet(std::uint32_t mask) : bits(mask) {}

  static FocalSet from_elements(std::span<const int> elements);  // 1-based

  std::vector<int> elements() const;  // sorted, 1-based
  bool empty() const { return bits == 0u; }
  bool intersects(FocalSet other) const { return (bits & other.bits) != 0u; }
  bool within(const Frame& frame) const {
    return (bits & ~frame.full_mask()) == 0u;
  }

  friend constexpr bool operator==(FocalSet, FocalSet) = default;
};

// One piece of evidence: a nonempty focal set carrying mass in (0, 1), the
// rest of the mass resting on the whole frame.
struct SimpleSupport {
  FocalSet focal;
  Scalar mass = 0.5;
};

// Throws std::invalid_argument if s is not a valid support over frame.
void validate(const Frame& frame, const SimpleSupport& s);

// Unnormalized Dempster accumulator. Mass landing on the empty set stays in
// a separate conflict slot and is never renormalized, so after folding a
// sequence of supports conflict_mass() is exactly the combination conflict.
class MassFunction {
 public:
  explicit MassFunction(const Frame& frame);

  void fold(const SimpleSupport& s);

  Scalar conflict_mass() const { return conflict_; }
  Scalar total_mass() const;  // conflict plus all focal masses; stays at 1
  const std::map<std::uint32_t, Scalar>& entries() const { return entries_; }

 private:
  std::map<std::uint32_t, Scalar> entries_;
  Scalar conflict_ = 0.0;
};

// m_j * m_k when the focal sets are disjoint, zero otherwise.
Scalar pairwise_conflict(const SimpleSupport& a, const SimpleSupport& b);

// -log(1 - c), natural logarithm, in [0, inf]. c must lie in [0, 1].
Scalar weight_of_conflict(Scalar c);

// Exact conflict of combining all listed supports; empty and singleton
// lists combine without conflict.
Scalar combine_conflict(const Frame& frame, std::span<const SimpleSupport> items);

// 1 - (1 - c0) * prod_i (1 - c_i).
Scalar metaconflict(Scalar domain_conflict, std::span<const Scalar> cluster_conflicts);

// Ordered evidence collection with precomputed pairwise conflict and weight
// matrices. Both matrices are symmetric with zero diagonal; the weight
// matrix is the entrywise weight_of_conflict of the conflict matrix.
class EvidenceSet {
 public:
  EvidenceSet(Frame frame, std::vector<SimpleSupport> items);

  const Frame& frame() const { return frame_; }
  int size() const { return static_cast<int>(items_.size()); }
  const SimpleSupport& item(int i) const { return items_[static_cast<std::size_t>(i)]; }
  const std::vector<SimpleSupport>& items() const { return items_; }
  const Matrix& conflict_matrix() const { return conflict_; }
  const Matrix& weight_matrix() const { return weight_; }

 private:
  Frame frame_;
  std::vector<SimpleSupport> items_;
  Matrix conflict_;
  Matrix weight_;
};

// Exact conflict of the cluster formed by the given evidence indices,
// folded in index order.
Scalar combine_conflict(const EvidenceSet& es, std::span<const int> members);

}  // namespace evclust

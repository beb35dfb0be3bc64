#include <bit>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "evclust/lattice.hpp"
#include "test_util.hpp"

using namespace evclust;

namespace {

// Ordered pairs of distinct nonempty subsets of {1..n} with empty
// intersection, counted one pair at a time.
ConflictOdds count_disjoint_pairs(int n) {
  ConflictOdds odds;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t a = 1; a <= full; ++a)
    for (std::uint32_t b = 1; b <= full; ++b) {
      if (a == b) continue;
      ++odds.total;
      if ((a & b) == 0) ++odds.conflicting;
    }
  odds.value = static_cast<Scalar>(odds.conflicting) / static_cast<Scalar>(odds.total);
  return odds;
}

}  // namespace

TEST_CASE("lattice problems enumerate every nonempty subset once") {
  const EvidenceSet es = generate_lattice_problem({.frame_size = 4, .seed = 3});
  REQUIRE(es.size() == 15);
  for (int i = 0; i < es.size(); ++i) {
    CHECK(es.item(i).focal.bits == static_cast<std::uint32_t>(i + 1));
    CHECK(es.item(i).mass >= 0.001);
    CHECK(es.item(i).mass < 0.999);
  }
}

TEST_CASE("lattice masses respect custom bounds and the seed") {
  const ProblemSpec spec{.frame_size = 3, .mass_low = 0.4, .mass_high = 0.6, .seed = 9};
  const EvidenceSet a = generate_lattice_problem(spec);
  const EvidenceSet b = generate_lattice_problem(spec);
  ProblemSpec other = spec;
  other.seed = 10;
  const EvidenceSet c = generate_lattice_problem(other);
  bool any_differ = false;
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.item(i).mass == b.item(i).mass);
    CHECK(a.item(i).mass >= 0.4);
    CHECK(a.item(i).mass <= 0.6);
    if (a.item(i).mass != c.item(i).mass) any_differ = true;
  }
  CHECK(any_differ);
}

TEST_CASE("lattice generation validates its inputs") {
  CHECK_THROWS_AS(generate_lattice_problem({.frame_size = 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_lattice_problem({.frame_size = 25}), std::invalid_argument);
  CHECK_THROWS_AS(generate_lattice_problem({.frame_size = 3, .mass_low = 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_lattice_problem({.frame_size = 3, .mass_high = 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      generate_lattice_problem({.frame_size = 3, .mass_low = 0.7, .mass_high = 0.3}),
      std::invalid_argument);
}

TEST_CASE("canonical partition groups by lowest element and kills all conflict") {
  for (int n = 3; n <= 6; ++n) {
    const EvidenceSet es =
        generate_lattice_problem({.frame_size = n, .seed = static_cast<std::uint64_t>(n)});
    const Partition p = canonical_partition(es, n);
    for (int i = 0; i < es.size(); ++i)
      CHECK(p.cluster_of(i) == std::countr_zero(es.item(i).focal.bits));
    CHECK(p.metaconflict() < 1e-12);
  }
}

TEST_CASE("canonical partition clamps overflow clusters") {
  const EvidenceSet es = generate_lattice_problem({.frame_size = 4, .seed = 1});
  const Partition p = canonical_partition(es, 2);
  for (int i = 0; i < es.size(); ++i) {
    const int lowest = std::countr_zero(es.item(i).focal.bits);
    CHECK(p.cluster_of(i) == std::min(lowest, 1));
  }
  CHECK_THROWS_AS(canonical_partition(es, 0), std::invalid_argument);
}

TEST_CASE("conflict probability carries exact integer counts") {
  const ConflictOdds n2 = conflict_probability(2);
  CHECK(n2.conflicting == 2);
  CHECK(n2.total == 6);
  const ConflictOdds n6 = conflict_probability(6);
  CHECK(n6.conflicting == 602);
  CHECK(n6.total == 3906);
  CHECK(n6.value == doctest::Approx(602.0 / 3906.0).epsilon(1e-15));
  CHECK_THROWS_AS(conflict_probability(1), std::invalid_argument);
  CHECK_THROWS_AS(conflict_probability(25), std::invalid_argument);
}

TEST_CASE("conflict probability matches pair-by-pair counting") {
  for (int n = 2; n <= 8; ++n) {
    const ConflictOdds closed = conflict_probability(n);
    const ConflictOdds brute = count_disjoint_pairs(n);
    CHECK(closed.conflicting == brute.conflicting);
    CHECK(closed.total == brute.total);
  }
}

TEST_CASE("average cluster conflict inverts an equal-conflict metaconflict") {
  for (Scalar mcf : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    for (int n : {1, 3, 5, 8}) {
      const Scalar avg = average_cluster_conflict(mcf, n);
      CHECK(avg >= 0.0);
      CHECK(avg <= mcf + 1e-15);
      const std::vector<Scalar> conflicts(static_cast<std::size_t>(n), avg);
      CHECK(metaconflict(0.0, conflicts) == doctest::Approx(mcf).epsilon(1e-12));
    }
  }
  CHECK(average_cluster_conflict(1.0, 4) == 1.0);
  CHECK_THROWS_AS(average_cluster_conflict(-0.1, 3), std::domain_error);
  CHECK_THROWS_AS(average_cluster_conflict(1.1, 3), std::domain_error);
  CHECK_THROWS_AS(average_cluster_conflict(0.5, 0), std::invalid_argument);
}

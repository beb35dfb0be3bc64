#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "evclust/evidence.hpp"
#include "test_util.hpp"

using namespace evclust;

TEST_CASE("frame bounds and masks") {
  CHECK(Frame(1).full_mask() == 0x1u);
  CHECK(Frame(5).full_mask() == 0x1fu);
  CHECK(Frame(24).full_mask() == 0xffffffu);
  CHECK_THROWS_AS(Frame(0), std::invalid_argument);
  CHECK_THROWS_AS(Frame(25), std::invalid_argument);
}

TEST_CASE("focal sets round-trip through element lists") {
  const FocalSet s = FocalSet::from_elements(std::vector<int>{3, 1, 5});
  CHECK(s.bits == 0b10101u);
  CHECK(s.elements() == std::vector<int>{1, 3, 5});
  CHECK(FocalSet{}.empty());
  CHECK(FocalSet{0b011u}.intersects(FocalSet{0b110u}));
  CHECK_FALSE(FocalSet{0b001u}.intersects(FocalSet{0b110u}));
  CHECK(FocalSet{0b111u}.within(Frame(3)));
  CHECK_FALSE(FocalSet{0b1000u}.within(Frame(3)));
  CHECK_THROWS_AS(FocalSet::from_elements(std::vector<int>{0}), std::invalid_argument);
  CHECK_THROWS_AS(FocalSet::from_elements(std::vector<int>{25}), std::invalid_argument);
}

TEST_CASE("support validation") {
  const Frame frame(3);
  CHECK_NOTHROW(validate(frame, {FocalSet{0b101u}, 0.4}));
  CHECK_THROWS_AS(validate(frame, {FocalSet{0u}, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(validate(frame, {FocalSet{0b1000u}, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(validate(frame, {FocalSet{0b1u}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(frame, {FocalSet{0b1u}, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(frame, {FocalSet{0b1u}, -0.1}), std::invalid_argument);
}

TEST_CASE("single fold splits mass between focal set and frame") {
  const Frame frame(3);
  MassFunction m(frame);
  m.fold({FocalSet{0b011u}, 0.3});
  CHECK(m.conflict_mass() == 0.0);
  CHECK(m.entries().at(0b011u) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m.entries().at(0b111u) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("disjoint pair conflict is the mass product") {
  const Frame frame(2);
  MassFunction m(frame);
  m.fold({FocalSet{0b01u}, 0.6});
  m.fold({FocalSet{0b10u}, 0.7});
  CHECK(m.conflict_mass() == doctest::Approx(0.42).epsilon(1e-15));
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("three equal singletons conflict at one half") {
  const Frame frame(3);
  const std::vector<SimpleSupport> items{
      {FocalSet{0b001u}, 0.5}, {FocalSet{0b010u}, 0.5}, {FocalSet{0b100u}, 0.5}};
  CHECK(combine_conflict(frame, items) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pairwise-intersecting doubletons conflict only jointly") {
  const Frame frame(3);
  const std::vector<SimpleSupport> items{
      {FocalSet{0b011u}, 0.5}, {FocalSet{0b110u}, 0.5}, {FocalSet{0b101u}, 0.5}};
  // no pairwise conflict, yet the triple intersection is empty
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = j + 1; k < 3; ++k)
      CHECK(pairwise_conflict(items[j], items[k]) == 0.0);
  CHECK(combine_conflict(frame, items) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("empty and singleton combinations are conflict-free") {
  const Frame frame(4);
  CHECK(combine_conflict(frame, std::span<const SimpleSupport>{}) == 0.0);
  const std::vector<SimpleSupport> one{{FocalSet{0b1u}, 0.99}};
  CHECK(combine_conflict(frame, one) == 0.0);
}

TEST_CASE("fold conflict matches selection enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> frame_size(2, 6);
  std::uniform_int_distribution<int> count(2, 10);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = frame_size(rng);
    const EvidenceSet es = testutil::random_evidence_set(n, count(rng), rng());
    const Scalar folded = combine_conflict(es.frame(), es.items());
    const Scalar enumerated = testutil::enumeration_conflict(es.frame(), es.items());
    CHECK(folded == doctest::Approx(enumerated).epsilon(1e-12));
  }
}

TEST_CASE("fold order does not change the conflict") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    EvidenceSet es = testutil::random_evidence_set(5, 8, rng());
    std::vector<SimpleSupport> shuffled = es.items();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(combine_conflict(es.frame(), es.items()) ==
          doctest::Approx(combine_conflict(es.frame(), shuffled)).epsilon(1e-12));
  }
}

TEST_CASE("weight of conflict") {
  CHECK(weight_of_conflict(0.0) == 0.0);
  CHECK(weight_of_conflict(0.25) == doctest::Approx(0.2876820724517809).epsilon(1e-15));
  CHECK(std::isinf(weight_of_conflict(1.0)));
  CHECK_THROWS_AS(weight_of_conflict(-0.01), std::domain_error);
  CHECK_THROWS_AS(weight_of_conflict(1.01), std::domain_error);
}

TEST_CASE("weights add where plausibilities multiply") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<Scalar> conflict(0.0, 0.99);
  for (int rep = 0; rep < 1000; ++rep) {
    const Scalar c1 = conflict(rng);
    const Scalar c2 = conflict(rng);
    const Scalar joint = 1.0 - (1.0 - c1) * (1.0 - c2);
    CHECK(weight_of_conflict(joint) ==
          doctest::Approx(weight_of_conflict(c1) + weight_of_conflict(c2)).epsilon(1e-9));
  }
}

TEST_CASE("metaconflict identity and domain checks") {
  const std::vector<Scalar> cs{0.1, 0.2, 0.5};
  CHECK(metaconflict(0.0, cs) ==
        doctest::Approx(1.0 - 0.9 * 0.8 * 0.5).epsilon(1e-15));
  CHECK(metaconflict(0.25, cs) ==
        doctest::Approx(1.0 - 0.75 * 0.9 * 0.8 * 0.5).epsilon(1e-15));
  CHECK(metaconflict(0.0, std::span<const Scalar>{}) == 0.0);
  CHECK_THROWS_AS(metaconflict(-0.1, cs), std::domain_error);
  const std::vector<Scalar> bad{1.0};
  CHECK_THROWS_AS(metaconflict(0.0, bad), std::domain_error);
}

TEST_CASE("metaconflict is nondecreasing in each cluster conflict") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<Scalar> conflict(0.0, 0.9);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Scalar> cs(4);
    for (auto& c : cs) c = conflict(rng);
    const Scalar before = metaconflict(0.1, cs);
    std::uniform_int_distribution<std::size_t> which(0, cs.size() - 1);
    cs[which(rng)] += 0.05;
    CHECK(metaconflict(0.1, cs) >= before - 1e-15);
  }
}

TEST_CASE("evidence set matrices agree with pairwise definitions") {
  const EvidenceSet es = testutil::random_evidence_set(5, 12, 99);
  const Matrix& c = es.conflict_matrix();
  const Matrix& w = es.weight_matrix();
  REQUIRE(c.rows() == 12);
  REQUIRE(c.cols() == 12);
  for (int j = 0; j < es.size(); ++j) {
    CHECK(c(j, j) == 0.0);
    CHECK(w(j, j) == 0.0);
    for (int k = 0; k < es.size(); ++k) {
      CHECK(c(j, k) == c(k, j));
      CHECK(c(j, k) == pairwise_conflict(es.item(j), es.item(k)));
      CHECK(w(j, k) == weight_of_conflict(c(j, k)));
    }
  }
}

TEST_CASE("evidence set rejects invalid supports") {
  const Frame frame(3);
  CHECK_THROWS_AS(EvidenceSet(frame, {{FocalSet{0b1000u}, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(EvidenceSet(frame, {{FocalSet{0b1u}, 1.5}}), std::invalid_argument);
}

TEST_CASE("member-list combination matches direct combination") {
  const EvidenceSet es = testutil::random_evidence_set(4, 9, 7);
  const std::vector<int> members{1, 3, 4, 8};
  std::vector<SimpleSupport> picked;
  for (int i : members) picked.push_back(es.item(i));
  CHECK(combine_conflict(es, members) ==
        doctest::Approx(combine_conflict(es.frame(), picked)).epsilon(1e-15));
}

TEST_CASE("pairwise weights overestimate on pairwise-disjoint clusters") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<Scalar> mass(0.05, 0.95);
  std::uniform_int_distribution<int> count(2, 6);
  for (int rep = 0; rep < 300; ++rep) {
    // disjoint focal sets: a random partition of the frame's elements
    const Frame frame(6);
    const int k = count(rng);
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(k), 0u);
    std::uniform_int_distribution<int> owner(0, k - 1);
    for (int e = 0; e < frame.size(); ++e)
      masks[static_cast<std::size_t>(owner(rng))] |= 1u << e;
    std::vector<SimpleSupport> items;
    for (std::uint32_t m : masks)
      if (m != 0u) items.push_back({FocalSet{m}, mass(rng)});
    if (items.size() < 2) continue;

    Scalar pair_sum = 0.0;
    for (std::size_t j = 0; j < items.size(); ++j)
      for (std::size_t l = j + 1; l < items.size(); ++l)
        pair_sum += weight_of_conflict(pairwise_conflict(items[j], items[l]));
    const Scalar exact = weight_of_conflict(combine_conflict(frame, items));
    CHECK(pair_sum >= exact - 1e-12);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "certreg/median_cert.hpp"
#include "certreg/oracle.hpp"
#include "certreg/rng.hpp"

using namespace certreg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

VoteSet random_votes(SplitMix64& rng, std::size_t max_t, bool odd_only) {
  std::size_t t = static_cast<std::size_t>(rng.next_int(odd_only ? 1 : 0,
                                                        static_cast<std::int64_t>(max_t)));
  if (odd_only && t % 2 == 0) ++t;
  VoteSet votes;
  for (std::size_t i = 0; i < t; ++i)
    votes.values.push_back(rng.next_in(-10.0, 10.0));
  votes.threshold = rng.next_in(-10.0, 10.0);
  return votes;
}
}  // namespace

TEST_CASE("median order statistics") {
  CHECK(median({2, 3, 4, 5, 6}) == 4);
  CHECK(median({}) == kInf);
  CHECK(median({1, 3}) == 2);
  CHECK(median({5}) == 5);
  CHECK(median({3, 1, 2, 4}) == 2.5);
}

TEST_CASE("swap certificates") {
  const Certificate fig = cert_swap({{2, 3, 4, 5, 6}, 5.4});
  REQUIRE(fig.is_robust());
  CHECK(fig.radius() == 1);

  const Certificate zeros = cert_swap({{0, 0, 0}, 0.0});
  CHECK(zeros.radius() == 1);

  CHECK_FALSE(cert_swap({{2, 3, 4, 5, 6}, 1.0}).is_robust());
  CHECK_THROWS_AS(cert_swap({{1, 2}, 3.0}), std::invalid_argument);
}

TEST_CASE("insertion/deletion certificates") {
  CHECK(cert_insert_delete({{2, 3, 4, 5, 6}, 5.4}).radius() == 2);
  CHECK(cert_insert_delete({{2, 3, 4, 5, 6}, 5.5}, Tightness::Tight).radius() == 3);
  CHECK(cert_insert_delete({{2, 3, 4, 5, 6}, 5.5}).radius() == 2);
  CHECK(cert_insert_delete({{0, 0, 0}, 0.0}).radius() == 2);
  CHECK_FALSE(cert_insert_delete({{}, 3.0}).is_robust());

  // Even cardinality is allowed here.
  CHECK(cert_insert_delete({{1, 2, 3, 9}, 5.0}).radius() == 1);
}

TEST_CASE("weighted swap certificates") {
  const WeightedVoteSet fig{{{2, 3, 4, 5, 6}, 5.4}, {3, 4, 5, 6, 7}};
  CHECK(cert_weighted_swap(fig).radius() == 6);
  CHECK(weighted_swap_naive_bound(fig) == 3);

  const WeightedVoteSet unit{{{2, 3, 4, 5, 6}, 5.4}, {1, 1, 1, 1, 1}};
  CHECK(cert_weighted_swap(unit).radius() == 1);

  CHECK_THROWS_AS(cert_weighted_swap({{{1, 2, 3}, 2.0}, {1, 0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cert_weighted_swap({{{1, 2, 3}, 2.0}, {1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cert_weighted_swap({{{1, 2}, 2.0}, {1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("binarization") {
  const VoteSet fig{{2, 3, 4, 5, 6}, 5.4};
  const VoteSet bin = binarize(fig);
  CHECK(bin.threshold == 0.0);
  CHECK(bin.values == std::vector<double>{-1, -1, -1, -1, 1});
  CHECK(binarize({{6}, 5.4}).values == std::vector<double>{1});
  CHECK(cert_swap(bin) == cert_swap(fig));
}

TEST_CASE("lower-side and two-sided certificates") {
  const Certificate lower = cert_lower_side({{2, 3, 4, 5, 6}, 2.0}, Paradigm::Swap);
  REQUIRE(lower.is_robust());
  CHECK(lower.radius() == 2);
  CHECK(lower.side() == BoundSide::LowerOnly);

  CHECK_FALSE(cert_lower_side({{2, 3, 4, 5, 6}, 10.0}, Paradigm::Swap).is_robust());
  CHECK(cert_lower_side({{0, 0, 0}, 0.0}, Paradigm::Swap).radius() == 1);

  const Certificate two = cert_two_sided({2, 3, 4, 5, 6}, 2.0, 5.4, Paradigm::Swap);
  REQUIRE(two.is_robust());
  CHECK(two.radius() == 1);
  CHECK(two.side() == BoundSide::TwoSided);

  CHECK(cert_two_sided({4}, 4.0, 4.0, Paradigm::Swap).radius() == 0);
  CHECK_FALSE(cert_two_sided({2, 3, 4, 5, 6}, 5.0, 5.4, Paradigm::Swap).is_robust());
  CHECK_THROWS_AS(cert_two_sided({1}, 2.0, 1.0, Paradigm::Swap),
                  std::invalid_argument);
}

TEST_CASE("insertion/deletion doubles the swap radius on odd sets") {
  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const VoteSet votes = random_votes(rng, 21, /*odd_only=*/true);
    const Certificate swap = cert_swap(votes);
    const Certificate ins = cert_insert_delete(votes);
    REQUIRE(swap.is_robust() == ins.is_robust());
    if (swap.is_robust()) CHECK(ins.radius() == 2 * swap.radius());
  }
}

TEST_CASE("binarization preserves every closed-form certificate") {
  SplitMix64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const VoteSet votes = random_votes(rng, 21, /*odd_only=*/true);
    const VoteSet bin = binarize(votes);
    CHECK(cert_swap(votes) == cert_swap(bin));
    CHECK(cert_insert_delete(votes) == cert_insert_delete(bin));

    WeightedVoteSet weighted{votes, {}};
    for (std::size_t j = 0; j < votes.size(); ++j)
      weighted.costs.push_back(rng.next_int(1, 4));
    const WeightedVoteSet weighted_bin{bin, weighted.costs};
    CHECK(cert_weighted_swap(weighted) == cert_weighted_swap(weighted_bin));
  }
}

TEST_CASE("unit costs reproduce the unweighted swap bound") {
  SplitMix64 rng(13);
  for (int i = 0; i < 400; ++i) {
    const VoteSet votes = random_votes(rng, 15, /*odd_only=*/true);
    const WeightedVoteSet unit{votes,
                               std::vector<std::int64_t>(votes.size(), 1)};
    CHECK(cert_weighted_swap(unit) == cert_swap(votes));
  }
}

TEST_CASE("raising any single cost never lowers the weighted radius") {
  SplitMix64 rng(14);
  for (int i = 0; i < 400; ++i) {
    VoteSet votes = random_votes(rng, 11, /*odd_only=*/true);
    votes.threshold = std::abs(votes.threshold);  // keep some robust cases
    WeightedVoteSet weighted{votes, {}};
    for (std::size_t j = 0; j < votes.size(); ++j)
      weighted.costs.push_back(rng.next_int(1, 4));
    const Certificate base = cert_weighted_swap(weighted);
    const std::size_t bump =
        static_cast<std::size_t>(rng.next_below(votes.size() ? votes.size() : 1));
    if (weighted.costs.empty()) continue;
    WeightedVoteSet bumped = weighted;
    bumped.costs[bump] += rng.next_int(1, 3);
    const Certificate after = cert_weighted_swap(bumped);
    REQUIRE(base.is_robust() == after.is_robust());
    if (base.is_robust()) CHECK(after.radius() >= base.radius());
  }
}

TEST_CASE("inserting a huge value matches deleting the minimum") {
  SplitMix64 rng(15);
  for (int i = 0; i < 500; ++i) {
    VoteSet votes = random_votes(rng, 16, /*odd_only=*/false);
    if (votes.size() < 2) continue;
    std::vector<double> inserted = votes.values;
    inserted.push_back(kInf);
    std::vector<double> deleted = votes.values;
    deleted.erase(std::min_element(deleted.begin(), deleted.end()));
    CHECK(median(inserted) == median(deleted));
  }
}

TEST_CASE("closed forms agree with the brute-force oracles") {
  SplitMix64 rng(16);
  for (int i = 0; i < 300; ++i) {
    const VoteSet votes = random_votes(rng, 9, /*odd_only=*/true);
    const AttackBudgetResult oracle = oracle_swap(votes);
    const Certificate cert = cert_swap(votes);
    REQUIRE(cert.is_robust() == oracle.robust);
    if (cert.is_robust()) CHECK(cert.radius() == oracle.optimal_r);
  }
  for (int i = 0; i < 300; ++i) {
    const VoteSet votes = random_votes(rng, 9, /*odd_only=*/false);
    const AttackBudgetResult oracle = oracle_insert_delete(votes);
    const Certificate tight = cert_insert_delete(votes, Tightness::Tight);
    const Certificate standard = cert_insert_delete(votes);
    REQUIRE(tight.is_robust() == oracle.robust);
    if (oracle.robust) {
      CHECK(tight.radius() == oracle.optimal_r);
      CHECK(standard.radius() <= oracle.optimal_r);
      CHECK(standard.radius() >= oracle.optimal_r - 1);
    }
  }
  for (int i = 0; i < 300; ++i) {
    const VoteSet votes = random_votes(rng, 9, /*odd_only=*/true);
    WeightedVoteSet weighted{votes, {}};
    for (std::size_t j = 0; j < votes.size(); ++j)
      weighted.costs.push_back(rng.next_int(1, 4));
    const AttackBudgetResult oracle = oracle_weighted_swap(weighted);
    const Certificate cert = cert_weighted_swap(weighted);
    REQUIRE(cert.is_robust() == oracle.robust);
    if (cert.is_robust()) CHECK(cert.radius() == oracle.optimal_r);
  }
}

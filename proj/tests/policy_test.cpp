#include "pirouting/policy.hpp"

#include <gtest/gtest.h>

#include <list>

namespace pirouting {
namespace {

using namespace pirouting::literals;

Path abc() { return Path{{"A"_hub, "B"_hub, "C"_hub}, 2.0, 20.0}; }

TEST(BaselinePolicyTest, FollowsThePath) {
  EXPECT_EQ(baseline_next_hop(abc(), "A"_hub), "B"_hub);
  EXPECT_EQ(baseline_next_hop(abc(), "B"_hub), "C"_hub);
  EXPECT_THROW(baseline_next_hop(abc(), "C"_hub), AlreadyAtDestination);
  EXPECT_THROW(baseline_next_hop(abc(), "Q"_hub), NotOnPath);
}

std::vector<QueuedCandidates> queue_of(std::initializer_list<std::vector<HubId>> hops) {
  std::vector<QueuedCandidates> q;
  int i = 0;
  for (const auto& h : hops) q.push_back({"other" + std::to_string(i++), h});
  return q;
}

TEST(ConsolidationTest, Examples) {
  EXPECT_EQ(consolidation_score(std::vector<QueuedCandidates>{}, "B"_hub, "me"), 0.0);
  const auto all = queue_of({{"B"_hub}, {"B"_hub, "C"_hub}, {"A"_hub, "B"_hub}, {"B"_hub}});
  EXPECT_EQ(consolidation_score(all, "B"_hub, "me"), 1.0);
  const auto one = queue_of({{"B"_hub}, {"C"_hub}, {"C"_hub}, {"D"_hub}});
  EXPECT_EQ(consolidation_score(one, "B"_hub, "me"), 0.25);
}

TEST(ConsolidationTest, IgnoresTheShipmentItself) {
  std::vector<QueuedCandidates> q{{"me", {"B"_hub}}, {"x", {"C"_hub}}};
  EXPECT_EQ(consolidation_score(q, "B"_hub, "me"), 0.0);
  EXPECT_EQ(consolidation_score(q, "C"_hub, "me"), 1.0);
}

TEST(ConsolidationTest, AcceptsAnyQueueShape) {
  struct Entry {
    std::string shipment_id;
    std::list<HubId> next_hops;
    double extra = 0;
  };
  const std::list<Entry> q{{"a", {"B"_hub}, 1}, {"b", {"C"_hub}, 2}};
  EXPECT_EQ(consolidation_score(q, "B"_hub, "me"), 0.5);
}

/// O -> B (1 h) -> D (3 h) and O -> C (1 h) -> D (4 h): via-times 4 h and 5 h.
struct PolicyFixture {
  Network net;
  MinTimeTable table;
  CandidateSet cs;
};

PolicyFixture fixture(std::vector<HubId> next_hops, double c_tail = 4.0) {
  std::vector<Hub> hubs{{"O"_hub, "", geo::GeoPoint(0, 0), false},
                        {"B"_hub, "", geo::GeoPoint(1, 1), false},
                        {"C"_hub, "", geo::GeoPoint(-1, 1), false},
                        {"D"_hub, "", geo::GeoPoint(0, 3), true}};
  std::vector<Arc> arcs{{"O"_hub, "B"_hub, 1, 97}, {"O"_hub, "C"_hub, 1, 97}, {"B"_hub, "D"_hub, 3, 155},
                        {"C"_hub, "D"_hub, c_tail, 155}};
  auto net = Network::build(hubs, arcs);
  auto table = min_time_table(net, "D"_hub);
  CandidateSet cs;
  cs.origin_of_search = "O"_hub;
  cs.destination = "D"_hub;
  cs.next_hops = std::move(next_hops);
  return PolicyFixture{std::move(net), std::move(table), std::move(cs)};
}

TEST(DirectionalPolicyTest, SingleCandidate) {
  const auto f = fixture({"C"_hub});
  const auto d = directional_next_hop(f.net, f.cs, f.table, std::vector<QueuedCandidates>{}, "me", {});
  EXPECT_EQ(d.chosen, "C"_hub);
  EXPECT_EQ(d.mode, RoutingMode::Directional);
  EXPECT_EQ(d.shipment_id, "me");
}

TEST(DirectionalPolicyTest, ConsolidationBreaksEqualTimes) {
  const auto f = fixture({"B"_hub, "C"_hub}, 3.0);
  const auto q = queue_of({{"C"_hub}});
  const auto d = directional_next_hop(f.net, f.cs, f.table, q, "me", PolicyWeights{1.0, 0.5});
  EXPECT_EQ(d.chosen, "C"_hub);
  EXPECT_DOUBLE_EQ(d.score_breakdown.at("C"_hub).total, 0.5);
  EXPECT_DOUBLE_EQ(d.score_breakdown.at("B"_hub).total, 1.0);
}

TEST(DirectionalPolicyTest, HandEvaluatedScores) {
  const auto f = fixture({"B"_hub, "C"_hub});
  const auto q = queue_of({{"B"_hub, "C"_hub}, {"C"_hub}, {"C"_hub}, {"C"_hub}});
  const auto d = directional_next_hop(f.net, f.cs, f.table, q, "me", PolicyWeights{1.0, 0.5});
  const auto& b = d.score_breakdown.at("B"_hub);
  const auto& c = d.score_breakdown.at("C"_hub);
  EXPECT_DOUBLE_EQ(b.time_score, 1.0);
  EXPECT_DOUBLE_EQ(b.consolidation_score, 0.25);
  EXPECT_DOUBLE_EQ(b.total, 0.875);
  EXPECT_DOUBLE_EQ(c.time_score, 1.25);
  EXPECT_DOUBLE_EQ(c.consolidation_score, 1.0);
  EXPECT_DOUBLE_EQ(c.total, 0.75);
  EXPECT_EQ(d.chosen, "C"_hub);
}

TEST(DirectionalPolicyTest, TiesGoToSmallerHubId) {
  const auto f = fixture({"C"_hub, "B"_hub}, 3.0);
  const auto d = directional_next_hop(f.net, f.cs, f.table, std::vector<QueuedCandidates>{}, "me", {});
  EXPECT_EQ(d.chosen, "B"_hub);
}

TEST(DirectionalPolicyTest, ArgminInvariantUnderWeightScaling) {
  const auto f = fixture({"B"_hub, "C"_hub});
  const auto q = queue_of({{"C"_hub}, {"C"_hub}, {"B"_hub}});
  for (double k : {0.1, 1.0, 3.0, 100.0}) {
    for (double wc : {0.0, 0.2, 0.5, 1.0, 2.0}) {
      const auto base = directional_next_hop(f.net, f.cs, f.table, q, "me", PolicyWeights{1.0, wc});
      const auto scaled = directional_next_hop(f.net, f.cs, f.table, q, "me", PolicyWeights{k, k * wc});
      EXPECT_EQ(base.chosen, scaled.chosen) << k << " " << wc;
    }
  }
}

TEST(DirectionalPolicyTest, Errors) {
  const auto empty = fixture({});
  EXPECT_THROW(directional_next_hop(empty.net, empty.cs, empty.table, std::vector<QueuedCandidates>{}, "me", {}),
               EmptyCandidates);
  EXPECT_THROW((PolicyWeights{-1.0, 0.5}.validate()), ConfigError);
  EXPECT_THROW((PolicyWeights{0.0, 0.0}.validate()), ConfigError);
  EXPECT_NO_THROW(PolicyWeights{}.validate());
}

TEST(RoutingModeTest, ParseAndPrint) {
  EXPECT_EQ(parse_routing_mode("baseline"), RoutingMode::Baseline);
  EXPECT_EQ(parse_routing_mode("directional"), RoutingMode::Directional);
  EXPECT_EQ(to_string(RoutingMode::Directional), "directional");
  EXPECT_THROW(parse_routing_mode("fastest"), ConfigError);
}

}  // namespace
}  // namespace pirouting

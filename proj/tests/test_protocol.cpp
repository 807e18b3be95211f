#include <gtest/gtest.h>

#include <vector>

#include "wbasn/protocol.hpp"
#include "wbasn/rng.hpp"

using namespace wbasn;

namespace {

std::vector<Sink> corrected_sinks() { return six_sink_preset(SinkPlacement::Corrected); }
std::vector<Sink> goals() { return goal_sink_preset(106, 68); }

PlayerSnapshot at(int id, double x, double y, bool alive = true) { return {id, {x, y}, alive, 1.0, 0.0}; }

} // namespace

TEST(Presets, ProtocolsCarryTheirTriggerAndSinks) {
    FieldConfig f{106, 68, SinkPlacement::Corrected, {}};
    auto fame = thefame_config();
    EXPECT_EQ(fame.trigger, TriggerKind::Threshold);
    EXPECT_EQ(fame.max_hops, 1);
    EXPECT_EQ(sinks_for(ProtocolName::TheFame, f).size(), 6u);

    auto wstm = wstm_config();
    EXPECT_EQ(wstm.trigger, TriggerKind::Periodic);
    EXPECT_EQ(wstm.period_s, 10);
    EXPECT_EQ(wstm.max_hops, 10);
    auto g = sinks_for(ProtocolName::Wstm, f);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].position.x, 0.0);
    EXPECT_EQ(g[0].position.y, 34.0);
    EXPECT_EQ(g[1].position.x, 106.0);
}

TEST(Presets, ValidationRejectsMismatchedTrigger) {
    auto p = thefame_config();
    p.trigger = TriggerKind::Periodic;
    EXPECT_THROW(validate(p), ValidationError);
    auto w = wstm_config();
    w.max_hops = 0;
    EXPECT_THROW(validate(w), ValidationError);
}

TEST(TheFameRoute, Examples) {
    auto r = thefame_route(at(0, 1, 34), corrected_sinks());
    ASSERT_EQ(r.hop_count(), 1);
    EXPECT_EQ(r.sink_id(), 1);
    EXPECT_EQ(r.hops[0].distance, 1.0);

    auto z = thefame_route(at(3, 51, 0), corrected_sinks());
    EXPECT_EQ(z.hop_count(), 1);
    EXPECT_EQ(z.sink_id(), 3);
    EXPECT_EQ(z.hops[0].distance, 0.0);
}

TEST(TheFameRoute, AlwaysOneHop) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        auto r = thefame_route(at(i, rng.uniform(0, 106), rng.uniform(0, 68)), corrected_sinks());
        EXPECT_EQ(r.hop_count(), 1);
        EXPECT_EQ(r.hops[0].from, player_node(i));
    }
}

TEST(WstmRoute, GoalkeeperGoesDirect) {
    std::vector<PlayerSnapshot> ps{at(0, 2, 34), at(1, 30, 30), at(2, 50, 40)};
    auto r = wstm_route(0, ps, goals(), 10);
    ASSERT_TRUE(r);
    ASSERT_EQ(r->hop_count(), 1);
    EXPECT_EQ(r->hops[0].to, sink_node(1));
    EXPECT_EQ(r->hops[0].distance, 2.0);
}

TEST(WstmRoute, RelayBetweenHolderAndSink) {
    std::vector<PlayerSnapshot> ps{at(0, 20, 34), at(1, 10, 34)};
    auto r = wstm_route(0, ps, goals(), 10);
    ASSERT_TRUE(r);
    ASSERT_EQ(r->hop_count(), 2);
    EXPECT_EQ(r->hops[0].from, player_node(0));
    EXPECT_EQ(r->hops[0].to, player_node(1));
    EXPECT_EQ(r->hops[0].distance, 10.0);
    EXPECT_EQ(r->hops[1].to, sink_node(1));
    EXPECT_EQ(r->hops[1].distance, 10.0);
}

TEST(WstmRoute, NoAliveRelaysMeansDirect) {
    std::vector<PlayerSnapshot> ps{at(0, 40, 34), at(1, 10, 34, false), at(2, 5, 30, false)};
    auto r = wstm_route(0, ps, goals(), 10);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->hop_count(), 1);
    EXPECT_EQ(r->hops[0].distance, 40.0);
}

TEST(WstmRoute, HopCapYieldsNoRoute) {
    std::vector<PlayerSnapshot> ps{at(0, 30, 34), at(1, 20, 34)};
    EXPECT_FALSE(wstm_route(0, ps, goals(), 1));
    EXPECT_TRUE(wstm_route(0, ps, goals(), 2));
}

TEST(WstmRoute, EquidistantPeerBlocksDirectWithoutOfferingRelay) {
    // peer is exactly as far from the sink, so the holder is not strictly
    // closest and there is no strictly closer relay
    std::vector<PlayerSnapshot> ps{at(0, 0, 24), at(1, 0, 44)};
    EXPECT_FALSE(wstm_route(0, ps, goals(), 10));
}

TEST(WstmRoute, UnknownOriginThrows) {
    std::vector<PlayerSnapshot> ps{at(0, 30, 34)};
    EXPECT_THROW(wstm_route(5, ps, goals(), 10), Error);
}

TEST(WstmRoute, RouteInvariantsOnRandomSnapshots) {
    Rng rng(77);
    auto sinks = goals();
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform() * 21);
        std::vector<PlayerSnapshot> ps;
        for (int i = 0; i < n; ++i) ps.push_back(at(i, rng.uniform(0, 106), rng.uniform(0, 68), rng.bernoulli(0.8)));
        ps[0].alive = true;
        auto r = wstm_route(0, ps, sinks, 10);
        if (!r) continue;
        ASSERT_GE(r->hop_count(), 1);
        ASSERT_LE(r->hop_count(), 10);
        Point target = nearest_sink(ps[0].position, sinks).position;
        double prev = distance(ps[0].position, target);
        for (std::size_t h = 0; h < r->hops.size(); ++h) {
            const Hop& hop = r->hops[h];
            if (h > 0) {
                ASSERT_EQ(hop.from, r->hops[h - 1].to);
            }
            if (h + 1 < r->hops.size()) {
                ASSERT_EQ(hop.to.kind, NodeRef::Kind::Player);
                const auto& relay = ps[hop.to.id];
                ASSERT_TRUE(relay.alive);
                double left = distance(relay.position, target);
                ASSERT_LT(left, prev);
                prev = left;
            } else {
                ASSERT_EQ(hop.to.kind, NodeRef::Kind::Sink);
            }
        }
    }
}

TEST(Trigger, TheFameWithoutEventsIsSilent) {
    std::uint64_t id = 0;
    std::vector<PlayerSnapshot> ps{at(0, 1, 1)};
    EXPECT_TRUE(trigger_transmissions(thefame_config(), 10, {}, ps, 1024, id).empty());
    EXPECT_EQ(id, 0u);
}

TEST(Trigger, TheFameOnePacketPerEventFromAlivePlayers) {
    std::uint64_t id = 5;
    std::vector<PlayerSnapshot> ps{at(0, 1, 1), at(1, 2, 2, false)};
    std::vector<FatigueEvent> ev{{0, 12, FatigueCause::Distance, 11.0}, {1, 12, FatigueCause::Distance, 11.2}};
    auto out = trigger_transmissions(thefame_config(), 12, ev, ps, 1024, id);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].id, 5u);
    EXPECT_EQ(out[0].origin, 0);
    EXPECT_EQ(out[0].kind, PacketKind::FatigueEvent);
    EXPECT_EQ(std::get<FatigueEvent>(out[0].payload).value, 11.0);
    EXPECT_EQ(id, 6u);
}

TEST(Trigger, WstmPeriodic) {
    std::vector<PlayerSnapshot> ps;
    for (int i = 0; i < 22; ++i) ps.push_back(at(i, i, 10));
    std::uint64_t id = 0;
    auto on = trigger_transmissions(wstm_config(), 30, {}, ps, 1024, id);
    EXPECT_EQ(on.size(), 22u);
    EXPECT_EQ(id, 22u);
    EXPECT_TRUE(trigger_transmissions(wstm_config(), 31, {}, ps, 1024, id).empty());
    ps[3].alive = false;
    EXPECT_EQ(trigger_transmissions(wstm_config(), 40, {}, ps, 1024, id).size(), 21u);
}

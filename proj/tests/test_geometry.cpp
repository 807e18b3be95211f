#include <gtest/gtest.h>

#include <cmath>

#include "wbasn/geometry.hpp"
#include "wbasn/rng.hpp"

using namespace wbasn;

namespace {

FieldConfig literal_field() {
    return {106.0, 68.0, SinkPlacement::PaperLiteral, six_sink_preset(SinkPlacement::PaperLiteral)};
}

FieldConfig corrected_field() {
    return {106.0, 68.0, SinkPlacement::Corrected, six_sink_preset(SinkPlacement::Corrected)};
}

} // namespace

TEST(Distance, Examples) {
    EXPECT_EQ(distance({0, 0}, {3, 4}), 5.0);
    EXPECT_EQ(distance({17, 0}, {17, 0}), 0.0);
    EXPECT_EQ(distance({0, 34}, {106, 34}), 106.0);
}

TEST(Distance, MetricLawsOnRandomTriples) {
    Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        Point a{rng.uniform(-200, 200), rng.uniform(-200, 200)};
        Point b{rng.uniform(-200, 200), rng.uniform(-200, 200)};
        Point c{rng.uniform(-200, 200), rng.uniform(-200, 200)};
        EXPECT_EQ(distance(a, a), 0.0);
        EXPECT_EQ(distance(a, b), distance(b, a));
        EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
    }
}

TEST(SinkPresets, LiteralTableCoordinates) {
    auto s = six_sink_preset(SinkPlacement::PaperLiteral);
    ASSERT_EQ(s.size(), 6u);
    std::vector<Point> want{{0, 34}, {17, 0}, {51, 0}, {106, 34}, {17, 106}, {51, 106}};
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(s[i].id, static_cast<int>(i + 1));
        EXPECT_EQ(s[i].position.x, want[i].x);
        EXPECT_EQ(s[i].position.y, want[i].y);
    }
}

TEST(SinkPresets, CorrectedSinksSitOnBoundary) {
    auto f = corrected_field();
    EXPECT_NO_THROW(validate(f));
    for (const auto& s : f.sinks) EXPECT_TRUE(on_boundary(s.position, f));
    EXPECT_EQ(f.sinks[4].position.y, 68.0);
    EXPECT_EQ(f.sinks[5].position.y, 68.0);
}

TEST(SinkPresets, LiteralModeSkipsBoundaryCheck) {
    EXPECT_NO_THROW(validate(literal_field()));
    auto bad = corrected_field();
    bad.sinks = six_sink_preset(SinkPlacement::PaperLiteral);
    EXPECT_THROW(validate(bad), ValidationError);
}

TEST(FieldValidation, RejectsBadDimensionsAndDuplicateIds) {
    auto f = corrected_field();
    f.length = 0;
    EXPECT_THROW(validate(f), ValidationError);
    f = corrected_field();
    f.sinks[1].id = f.sinks[0].id;
    EXPECT_THROW(validate(f), ValidationError);
}

TEST(NearestSink, Examples) {
    auto r = nearest_sink({1, 34}, literal_field());
    EXPECT_EQ(r.sink_id, 1);
    EXPECT_EQ(r.distance, 1.0);

    r = nearest_sink({0, 34}, literal_field());
    EXPECT_EQ(r.sink_id, 1);
    EXPECT_EQ(r.distance, 0.0);

    r = nearest_sink({53, 34}, corrected_field());
    EXPECT_TRUE(r.sink_id == 3 || r.sink_id == 6);
    EXPECT_DOUBLE_EQ(r.distance, std::sqrt(2.0 * 2.0 + 34.0 * 34.0));
}

TEST(NearestSink, TieGoesToLowestId) {
    // (53,34) is equidistant from (51,0) and (51,68)
    EXPECT_EQ(nearest_sink({53, 34}, corrected_field()).sink_id, 3);
}

TEST(NearestSink, EmptySetThrows) {
    EXPECT_THROW(nearest_sink({1, 1}, std::vector<Sink>{}), EmptySinkSet);
}

TEST(NearestSink, NoConfiguredSinkIsCloser) {
    Rng rng(5);
    for (auto f : {literal_field(), corrected_field()}) {
        for (int i = 0; i < 2000; ++i) {
            Point p{rng.uniform(0, 106), rng.uniform(0, 68)};
            auto r = nearest_sink(p, f);
            for (const auto& s : f.sinks) EXPECT_LE(r.distance, distance(p, s.position));
        }
    }
}

TEST(Clamp, Examples) {
    auto f = corrected_field();
    auto a = clamp_to_field({50, 30}, f);
    EXPECT_EQ(a.x, 50.0);
    EXPECT_EQ(a.y, 30.0);
    auto b = clamp_to_field({-3, 30}, f);
    EXPECT_EQ(b.x, 0.0);
    EXPECT_EQ(b.y, 30.0);
    auto c = clamp_to_field({200, 200}, f);
    EXPECT_EQ(c.x, 106.0);
    EXPECT_EQ(c.y, 68.0);
}

TEST(Clamp, Idempotent) {
    auto f = corrected_field();
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        Point p{rng.uniform(-300, 300), rng.uniform(-300, 300)};
        Point once = clamp_to_field(p, f);
        Point twice = clamp_to_field(once, f);
        EXPECT_EQ(once.x, twice.x);
        EXPECT_EQ(once.y, twice.y);
        EXPECT_TRUE(inside_field(once, f));
    }
}

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "movable/movable.hpp"
#include "support/oracles.hpp"

using namespace movable;
namespace mt = movable::testing;

namespace {

Point rotate_about(Point center, Point p, double angle) {
  // Counter-clockwise on screen, i.e. with y pointing up.
  const double dx = p.x - center.x;
  const double dy = center.y - p.y;
  const double c = std::cos(angle), s = std::sin(angle);
  return {center.x + dx * c - dy * s, center.y - (dx * s + dy * c)};
}

Point scale_about(Point center, Point p, double k) {
  return {center.x + k * (p.x - center.x), center.y + k * (p.y - center.y)};
}

Skyscrapers::View view_of(Point origin, double theta, double phi, double scale, double axis_len = 10.0) {
  Skyscrapers::View v;
  v.origin = origin;
  v.theta = theta;
  v.phi = phi;
  v.scale = scale;
  v.axis_len = axis_len;
  return v;
}

}  // namespace

// --- RectPlot --------------------------------------------------------------

TEST(RectPlot, FrameAndNodes) {
  const RectPlot plot({{0, 0}, {200, 100}}, 6);
  EXPECT_EQ(plot.frame(), (Rect{{-6, -6}, {206, 106}}));
  const Contour c = plot.contour();
  ASSERT_EQ(c.nodes.size(), 8u);
  ASSERT_EQ(c.connections.size(), 4u);
  EXPECT_EQ(c.nodes[0].position, (Point{-6, -6}));
  EXPECT_EQ(c.nodes[1].position, (Point{206, -6}));
  EXPECT_EQ(c.nodes[2].position, (Point{206, 106}));
  EXPECT_EQ(c.nodes[3].position, (Point{-6, 106}));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(c.nodes[i].freedom, Freedom::free);
  EXPECT_EQ(c.nodes[4].position, (Point{100, -6}));
  EXPECT_EQ(c.nodes[4].freedom, Freedom::vertical_only);
  EXPECT_EQ(c.nodes[5].freedom, Freedom::horizontal_only);
  EXPECT_EQ(c.nodes[6].freedom, Freedom::vertical_only);
  EXPECT_EQ(c.nodes[7].freedom, Freedom::horizontal_only);
}

TEST(RectPlot, InteriorIsInsensitive) {
  const RectPlot plot({{0, 0}, {200, 100}}, 6);
  EXPECT_EQ(hit_test(plot.contour(), {100, 50}), ContourHit{NoHit{}});
}

TEST(RectPlot, ZeroMarginFrameIsArea) {
  const RectPlot plot({{0, 0}, {200, 100}}, 0);
  EXPECT_EQ(plot.frame(), plot.area());
}

TEST(RectPlot, CornerDragKeepsOppositeCorner) {
  RectPlot plot({{0, 0}, {100, 80}});
  // Node 2 (BR) sits at the area corner inflated by the margin.
  plot.on_node_move(2, {120 + kPlotMargin, 90 + kPlotMargin});
  EXPECT_EQ(plot.area(), (Rect{{0, 0}, {120, 90}}));
}

TEST(RectPlot, TopEdgeDrag) {
  RectPlot plot({{0, 0}, {100, 80}});
  const Point top = plot.contour().nodes[4].position;
  const Point accepted = plot.on_node_move(4, {top.x, top.y - 10});
  EXPECT_EQ(plot.area(), (Rect{{0, -10}, {100, 80}}));
  EXPECT_EQ(accepted, (Point{50, -16}));
}

TEST(RectPlot, MinSizeClamp) {
  RectPlot plot({{0, 0}, {100, 80}}, kPlotMargin, 20);
  const Point accepted = plot.on_node_move(5, {5 + kPlotMargin, 40});
  EXPECT_EQ(plot.area().width(), 20);
  EXPECT_EQ(accepted.x, 20 + kPlotMargin);
}

TEST(RectPlot, RejectsBadParameters) {
  EXPECT_THROW(RectPlot({{0, 0}, {10, 100}}), ValidationError);
  EXPECT_THROW(RectPlot({{0, 0}, {100, 100}}, -1), ValidationError);
  EXPECT_THROW(RectPlot({{10, 0}, {0, 100}}), ValidationError);
}

TEST(RectPlot, RandomDragsRespectMinSize) {
  mt::Rng rng(404);
  for (int round = 0; round < 200; ++round) {
    RectPlot plot(mt::random_rect(rng, 500, 30, 300), mt::uniform(rng, 0, 10), mt::uniform(rng, 5, 25));
    for (int i = 0; i < 50; ++i) {
      const NodeId id = mt::pick(rng, 8);
      plot.on_node_move(id, {mt::uniform(rng, -100, 700), mt::uniform(rng, -100, 700)});
      ASSERT_GE(plot.area().width(), plot.min_size());
      ASSERT_GE(plot.area().height(), plot.min_size());
    }
  }
}

// --- ScaleStrip ------------------------------------------------------------

TEST(ScaleStrip, HorizontalOnlyEnds) {
  const ScaleStrip s(10, 110, 50);
  const Contour c = s.contour();
  ASSERT_EQ(c.nodes.size(), 2u);
  EXPECT_EQ(c.nodes[0].freedom, Freedom::horizontal_only);
  EXPECT_EQ(c.nodes[1].freedom, Freedom::horizontal_only);
  EXPECT_EQ(c.connections.size(), 1u);
}

TEST(ScaleStrip, StretchAndClamp) {
  ScaleStrip s(10, 110, 50, 3, 20, Rect{{0, 40}, {150, 60}});
  s.on_node_move(1, {140, 50});
  EXPECT_EQ(s.x1(), 140);
  s.on_node_move(1, {400, 50});
  EXPECT_EQ(s.x1(), 150);
  s.on_node_move(1, {12, 50});
  EXPECT_EQ(s.x1(), 30);
  s.on_node_move(0, {-50, 50});
  EXPECT_EQ(s.x0(), 0);
}

TEST(ScaleStrip, ThroughMoverKeepsY) {
  Scene scene;
  const auto id = scene.add(ScaleStrip(10, 110, 50));
  ASSERT_EQ(scene.catch_at({110, 50}), id);
  scene.move_to({130, 90});
  const auto* s = scene.find(id)->get_if<ScaleStrip>();
  EXPECT_EQ(s->x1(), 130);
  EXPECT_EQ(s->y(), 50);
}

// --- Skyscrapers -----------------------------------------------------------

TEST(Skyscrapers, ProjectionClosedForms) {
  const Skyscrapers flat(view_of({0, 0}, 0, 0, 1));
  EXPECT_EQ(flat.project({3, 5, 2}), (Point{3, -2}));

  const Skyscrapers quarter(view_of({0, 0}, std::numbers::pi / 2, 0, 1));
  const Point q = quarter.project({3, 5, 2});
  EXPECT_NEAR(q.x, -5, 1e-12);
  EXPECT_NEAR(q.y, -2, 1e-12);
}

TEST(Skyscrapers, ProjectionFrozenValue) {
  // Frozen from an independent evaluation of the view formulas.
  const Skyscrapers s(view_of({300, 200}, 0.7, 0.4, 20));
  const Point p = s.project({1, 2, 3});
  EXPECT_NEAR(p.x, 289.5281362561821, 1e-9);
  EXPECT_NEAR(p.y, 127.80519361482469, 1e-9);
}

TEST(Skyscrapers, ProjectionMatchesReference) {
  mt::Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    const Point o{mt::uniform(rng, -500, 500), mt::uniform(rng, -500, 500)};
    const double th = mt::uniform(rng, -7, 7), ph = mt::uniform(rng, 0, std::numbers::pi / 2),
                 sc = mt::uniform(rng, 0.1, 50);
    const Skyscrapers s(view_of(o, th, ph, sc));
    const double x = mt::uniform(rng, -20, 20), y = mt::uniform(rng, -20, 20), z = mt::uniform(rng, 0, 20);
    const Point got = s.project({x, y, z});
    const Point want = mt::ref_project(o, th, ph, sc, x, y, z);
    ASSERT_NEAR(got.x, want.x, 1e-9);
    ASSERT_NEAR(got.y, want.y, 1e-9);
  }
}

TEST(Skyscrapers, ContourShape) {
  const Skyscrapers s(view_of({0, 0}, 0, 0, 1, 10));
  const Contour c = s.contour();
  ASSERT_EQ(c.nodes.size(), 4u);
  EXPECT_EQ(c.nodes[0].position, (Point{0, 0}));
  EXPECT_EQ(c.nodes[1].position, (Point{10, 0}));
  EXPECT_EQ(c.nodes[2].position, (Point{0, 0}));
  EXPECT_EQ(c.nodes[3].position, (Point{0, -10}));
  ASSERT_EQ(c.connections.size(), 3u);
  for (const auto& k : c.connections) EXPECT_EQ(k.node_a, 0u);
}

TEST(Skyscrapers, RadialDragScales) {
  Skyscrapers s(view_of({200, 200}, 0.4, 0.6, 10));
  const Contour c = s.contour();
  s.on_node_move(1, scale_about(c.nodes[0].position, c.nodes[1].position, 1.5));
  EXPECT_NEAR(s.view().theta, 0.4, 1e-12);
  EXPECT_NEAR(s.view().scale, 15, 1e-9);
}

TEST(Skyscrapers, RotationDragTurns) {
  Skyscrapers s(view_of({200, 200}, 0.4, 0.6, 10));
  const Contour c = s.contour();
  s.on_node_move(1, rotate_about(c.nodes[0].position, c.nodes[1].position, std::numbers::pi / 6));
  EXPECT_NEAR(s.view().theta, 0.4 + std::numbers::pi / 6, 1e-12);
  EXPECT_NEAR(s.view().scale, 10, 1e-9);
}

TEST(Skyscrapers, CombinedDragTracksReference) {
  const Point origin{300, 250};
  const double phi = 0.5;
  Skyscrapers s(view_of(origin, 0.5, phi, 10, 8));
  const Contour c = s.contour();
  const Point target = rotate_about(c.nodes[0].position, scale_about(c.nodes[0].position, c.nodes[1].position, 1.2), 0.3);
  const Point accepted = s.on_node_move(1, target);
  EXPECT_NEAR(s.view().theta, 0.8, 1e-12);
  EXPECT_NEAR(s.view().scale, 12, 1e-9);
  const Point want = mt::ref_project(origin, 0.8, phi, 12, 8, 0, 0);
  EXPECT_NEAR(accepted.x, want.x, 1e-9);
  EXPECT_NEAR(accepted.y, want.y, 1e-9);
}

TEST(Skyscrapers, ZEndDrivesElevationWithinBounds) {
  Skyscrapers s(view_of({0, 0}, 0.2, 0.5, 10));
  const Contour c = s.contour();
  s.on_node_move(3, rotate_about(c.nodes[0].position, c.nodes[3].position, -0.2));
  EXPECT_NEAR(s.view().phi, 0.3, 1e-12);
  for (int i = 0; i < 10; ++i) {
    const Contour k = s.contour();
    s.on_node_move(3, rotate_about(k.nodes[0].position, k.nodes[3].position, 0.5));
    ASSERT_GE(s.view().phi, 0.0);
    ASSERT_LE(s.view().phi, std::numbers::pi / 2);
  }
}

TEST(Skyscrapers, DragThroughOriginIsIgnored) {
  Skyscrapers s(view_of({50, 50}, 0.2, 0.5, 10));
  const Skyscrapers before = s;
  s.on_node_move(1, {50, 50});
  EXPECT_EQ(s, before);
}

TEST(Skyscrapers, NodeZeroMovesOrigin) {
  Skyscrapers s(view_of({50, 50}, 0.2, 0.5, 10));
  EXPECT_EQ(s.on_node_move(0, {70, 40}), (Point{70, 40}));
  EXPECT_EQ(s.view().origin, (Point{70, 40}));
}

TEST(Skyscrapers, ContourEqualsReprojectionAfterDrags) {
  mt::Rng rng(8080);
  Skyscrapers s(view_of({400, 300}, 0.3, 0.7, 15, 10));
  for (int i = 0; i < 1000; ++i) {
    const Contour c = s.contour();
    const NodeId id = mt::pick(rng, 4);
    const Point p{c.nodes[id].position.x + mt::uniform(rng, -30, 30), c.nodes[id].position.y + mt::uniform(rng, -30, 30)};
    s.on_node_move(id, p);
    const auto& v = s.view();
    ASSERT_GT(v.scale, 0.0);
    ASSERT_GE(v.phi, 0.0);
    ASSERT_LE(v.phi, std::numbers::pi / 2);
    const Contour after = s.contour();
    const double L = v.axis_len;
    const Point want[4] = {mt::ref_project(v.origin, v.theta, v.phi, v.scale, 0, 0, 0),
                           mt::ref_project(v.origin, v.theta, v.phi, v.scale, L, 0, 0),
                           mt::ref_project(v.origin, v.theta, v.phi, v.scale, 0, L, 0),
                           mt::ref_project(v.origin, v.theta, v.phi, v.scale, 0, 0, L)};
    for (int k = 0; k < 4; ++k) {
      ASSERT_NEAR(after.nodes[k].position.x, want[k].x, 1e-9);
      ASSERT_NEAR(after.nodes[k].position.y, want[k].y, 1e-9);
    }
  }
}

TEST(Skyscrapers, PaintOrderExamples) {
  const Skyscrapers s(view_of({0, 0}, 0, 0.5, 10), {{0, 2, 1}, {0, 10, 1}});
  EXPECT_EQ(s.paint_order(), (std::vector<std::size_t>{1, 0}));
}

TEST(Skyscrapers, PaintOrderReversesWithHalfTurn) {
  mt::Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    std::vector<Tower> towers;
    for (int i = 0; i < 12; ++i) towers.push_back({mt::uniform(rng, 0, 10), mt::uniform(rng, 0, 10), 1});
    const double th = mt::uniform(rng, -3, 3);
    const auto a = Skyscrapers(view_of({0, 0}, th, 0.5, 10), towers).paint_order();
    auto b = Skyscrapers(view_of({0, 0}, th + std::numbers::pi, 0.5, 10), towers).paint_order();
    std::reverse(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Skyscrapers, PaintOrderMatchesBruteForce) {
  mt::Rng rng(13);
  for (int round = 0; round < 200; ++round) {
    std::vector<Tower> towers;
    const std::size_t n = 1 + mt::pick(rng, 15);
    for (std::size_t i = 0; i < n; ++i) {
      // Integer footprints make exact ties common.
      towers.push_back({double(mt::pick(rng, 4)), double(mt::pick(rng, 4)), 1});
    }
    const double th = mt::coin(rng) ? 0.0 : mt::uniform(rng, -3, 3);
    const Skyscrapers s(view_of({0, 0}, th, 0.5, 10), towers);
    std::vector<std::size_t> want(n);
    std::iota(want.begin(), want.end(), std::size_t{0});
    // Selection sort: repeatedly take the farthest remaining, lowest index first.
    std::vector<std::size_t> order;
    while (!want.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < want.size(); ++k) {
        const auto d = [&](std::size_t i) { return towers[i].x * std::sin(th) + towers[i].y * std::cos(th); };
        if (d(want[k]) > d(want[best])) best = k;
      }
      order.push_back(want[best]);
      want.erase(want.begin() + static_cast<std::ptrdiff_t>(best));
    }
    EXPECT_EQ(s.paint_order(), order);
  }
}

TEST(Skyscrapers, RejectsBadViews) {
  EXPECT_THROW(Skyscrapers(view_of({0, 0}, 0, 0.5, 0)), ValidationError);
  EXPECT_THROW(Skyscrapers(view_of({0, 0}, 0, -0.1, 1)), ValidationError);
  EXPECT_THROW(Skyscrapers(view_of({0, 0}, 0, 2.0, 1)), ValidationError);
  EXPECT_THROW(Skyscrapers(view_of({0, 0}, 0, 0.5, 1), {{0, 0, -1}}), ValidationError);
}

// --- BallGraph -------------------------------------------------------------

TEST(BallGraph, AddToEmpty) {
  BallGraph g;
  g.add_ball({10, 10}, 6);
  const Contour c = g.contour();
  EXPECT_EQ(c.nodes.size(), 1u);
  EXPECT_EQ(c.connections.size(), 0u);
  EXPECT_EQ(c.nodes[0].shape, NodeShape{DiscShape{6}});
}

TEST(BallGraph, RemoveDropsIncidentLinks) {
  BallGraph g({{{0, 0}, 5}, {{50, 0}, 5}, {{25, 40}, 5}}, {{0, 1}, {1, 2}, {2, 0}});
  g.remove_ball(1);
  EXPECT_EQ(g.balls().size(), 2u);
  ASSERT_EQ(g.links().size(), 1u);
  EXPECT_EQ(g.links()[0], (Link{1, 0}));
  EXPECT_THROW(g.remove_ball(5), ValidationError);
  EXPECT_THROW(g.add_link(0, 7), ValidationError);
}

TEST(BallGraph, DragBallMovesItsLinks) {
  Scene scene;
  const auto id = scene.add(BallGraph({{{0, 0}, 5}, {{50, 0}, 5}, {{25, 40}, 5}}, {{0, 1}, {1, 2}, {2, 0}}));
  ASSERT_EQ(scene.catch_at({0, 0}), id);
  scene.move_to({10, 0});
  const auto* g = scene.find(id)->get_if<BallGraph>();
  EXPECT_EQ(g->balls()[0].center, (Point{10, 0}));
  EXPECT_EQ(g->balls()[1].center, (Point{50, 0}));
  EXPECT_EQ(g->balls()[2].center, (Point{25, 40}));
  const Contour c = g->contour();
  EXPECT_EQ(c.nodes[c.connections[0].node_a].position, (Point{10, 0}));
}

// --- Tile and GroupProxy ---------------------------------------------------

TEST(Tile, VerticesAreEmptyNodes) {
  const Tile t({{0, 0}, {40, 0}, {40, 40}, {0, 40}});
  const Contour c = t.contour();
  for (const Node& n : c.nodes) EXPECT_EQ(n.freedom, Freedom::none);
  EXPECT_EQ(hit_test(c, {20, 20}), ContourHit{NoHit{}});
  EXPECT_TRUE(std::holds_alternative<ConnectionHit>(hit_test(c, {0, 0})));
}

TEST(Tile, EdgeDragTranslates) {
  Scene scene;
  const auto id = scene.add(Tile({{0, 0}, {40, 0}, {40, 40}, {0, 40}}));
  ASSERT_EQ(scene.catch_at({20, 0}), id);
  scene.move_to({27, -3});
  EXPECT_EQ(scene.find(id)->get_if<Tile>()->vertices(),
            (std::vector<Point>{{7, -3}, {47, -3}, {47, 37}, {7, 37}}));
}

TEST(Tile, RejectsDegeneratePolygon) {
  EXPECT_THROW(Tile({{0, 0}, {10, 10}, {20, 20}}), ValidationError);
  EXPECT_THROW(Tile({{0, 0}, {10, 0}}), ValidationError);
}

TEST(Tile, NodeMoveIsContractViolation) {
  Tile t({{0, 0}, {40, 0}, {40, 40}, {0, 40}});
  EXPECT_THROW(t.on_node_move(0, {1, 1}), std::logic_error);
}

TEST(GroupProxy, EdgeDragTranslatesRect) {
  Scene scene;
  const auto id = scene.add(GroupProxy({{100, 100}, {200, 160}}, 42));
  ASSERT_EQ(scene.catch_at({150, 100}), id);
  scene.move_to({140, 120});
  const auto* g = scene.find(id)->get_if<GroupProxy>();
  EXPECT_EQ(g->rect(), (Rect{{90, 120}, {190, 180}}));
  EXPECT_EQ(g->payload(), 42u);
}

TEST(GroupProxy, CornersAreEmpty) {
  const GroupProxy g({{0, 0}, {10, 10}});
  const Contour c = g.contour();
  ASSERT_EQ(c.nodes.size(), 4u);
  for (const Node& n : c.nodes) EXPECT_EQ(n.freedom, Freedom::none);
  EXPECT_EQ(c.connections.size(), 4u);
}

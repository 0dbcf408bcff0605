#include "prefab/site_generator.hpp"

#include "prefab/errors.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <string>

namespace prefab {

namespace {

// A bay is a horizontal partition boxed in by four upright walls: one at
// each end and one centred above and below it. The partition cannot slide
// out until one of them has gone. The box leaves the partition +-2.05 m of
// play, so for radii up to 2 m its nearest node is free; all panels are
// 4 m long, so no lattice step of pitch <= 4 m can jump across one.
constexpr double kHalfLength = 2.0;
constexpr double kHalfThickness = 0.15;
constexpr double kEndOffset = 4.2;       // partition centre to end walls
constexpr double kCapOffset = 4.2;       // partition centre to cap wall centre
constexpr double kBayPitch = 14.0;
constexpr double kFreePitch = 5.0;
constexpr double kMargin = 30.0;
constexpr double kYardDepth = 30.0;      // platform edge to staging strip
constexpr double kStripDepth = 10.0;
constexpr double kPlatformDepth = 2.0 * (kCapOffset + kHalfLength);
constexpr double kJitter = 0.25;

struct Layout {
  std::size_t bays = 0;
  std::size_t free_walls = 0;
};

Layout decompose(std::size_t n) {
  Layout l;
  l.bays = n / 5;
  l.free_walls = n % 5;
  return l;
}

// std::uniform_real_distribution is not portable across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Scene generate_site(std::size_t wall_count, std::uint64_t seed) {
  if (wall_count < 4) {
    throw PreconditionError("generate_site needs at least 4 walls");
  }
  const Layout layout = decompose(wall_count);
  std::mt19937_64 rng(seed);

  const double upright = std::numbers::pi / 2.0;
  const double height = 2.0 * (kStripDepth + kYardDepth) + kPlatformDepth;
  const double mid_y = height / 2.0;

  struct Placement {
    std::string id;
    Pose placed;
  };
  std::vector<Placement> partitions;
  std::vector<Placement> boxes;
  std::vector<Placement> free_walls;

  double x = kMargin;
  for (std::size_t b = 0; b < layout.bays; ++b) {
    const double cx = x + kBayPitch / 2.0 + kJitter * (2.0 * unit(rng) - 1.0);
    const double cy = mid_y + kJitter * (2.0 * unit(rng) - 1.0);
    const std::string bay = "b" + std::to_string(b + 1);
    partitions.push_back({bay + "_p", Pose(cx, cy, 0.0)});
    boxes.push_back({bay + "_s", Pose(cx, cy - kCapOffset, upright)});
    boxes.push_back({bay + "_e", Pose(cx + kEndOffset, cy, upright)});
    boxes.push_back({bay + "_n", Pose(cx, cy + kCapOffset, upright)});
    boxes.push_back({bay + "_w", Pose(cx - kEndOffset, cy, upright)});
    x += kBayPitch;
  }
  for (std::size_t f = 0; f < layout.free_walls; ++f) {
    const double fx = x + kFreePitch / 2.0;
    const double fy = mid_y + kJitter * (2.0 * unit(rng) - 1.0);
    free_walls.push_back({"f" + std::to_string(f + 1), Pose(fx, fy, upright)});
    x += kFreePitch;
  }

  // Partitions first: they are the walls the scheduler has to defer.
  std::vector<Placement> all = partitions;
  all.insert(all.end(), boxes.begin(), boxes.end());
  all.insert(all.end(), free_walls.begin(), free_walls.end());

  // Staging strips below and above the platform. Each wall is parked on
  // the side it leaves from, roughly in line with where it stands, so
  // transit runs across open yard.
  const double low_row = kStripDepth / 2.0;
  const double high_row = height - kStripDepth / 2.0;
  double low_x = kMargin / 2.0;
  double high_x = kMargin / 2.0;

  Scene scene;
  scene.name = "site_" + std::to_string(wall_count);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Placement& p = all[k];
    Wall w;
    w.id = p.id;
    w.footprint = WallFootprint(kHalfLength, kHalfThickness);
    w.placed = p.placed;
    const char side = p.id.back();
    const bool low = side == 'p' || side == 's' || side == 'w' ||
                     (p.id.front() == 'f' && k % 2 == 0);
    double& cursor = low ? low_x : high_x;
    const double row = low ? low_row : high_row;
    if (p.placed.yaw == 0.0) {
      const double sx = std::max(cursor, p.placed.x() - kHalfLength - 1.0) + kHalfLength + 1.0;
      w.staging = Pose(sx, row, 0.0);
      cursor = sx + kHalfLength + 1.0;
    } else {
      const double sx = std::max(cursor, p.placed.x() - 1.0) + 1.0;
      w.staging = Pose(sx, row, upright);
      cursor = sx + 1.0;
    }
    scene.walls.push_back(std::move(w));
  }
  const double width = std::max({x + kMargin, low_x + kMargin, high_x + kMargin});
  scene.bounds.min = Vec2(0.0, 0.0);
  scene.bounds.max = Vec2(width, height);
  scene.validate();
  return scene;
}

}  // namespace prefab

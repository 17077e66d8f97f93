#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spikeplan/geometry.hpp"
#include "spikeplan/trajectory.hpp"

namespace spikeplan {

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// Convex, counter-clockwise vertex order.
struct ConvexPolygon {
    std::vector<Vec2> vertices;
};

struct Obstacle {
    int id = 0;
    std::variant<Circle, ConvexPolygon> shape;
};

/// 2D workspace with static obstacles and an ordered waypoint tour.
struct World {
    std::string name;
    Vec2 lo{-1.0, -1.0};
    Vec2 hi{1.0, 1.0};
    std::vector<Obstacle> obstacles;
    std::vector<Vec2> waypoints;

    /// Destination waypoint indices whose straight-line leg from the previous
    /// waypoint crosses an obstacle.
    std::vector<int> blocked_legs() const;
};

struct Contact {
    double t = 0.0;  // parametric position on the query segment
    Vec2 point;
};

/// First intersection of the directed segment a -> b with the obstacle
/// boundary (minimal parametric t). A start point on or inside the obstacle
/// reports contact at t = 0.
std::optional<Contact> collides(const Vec2& a, const Vec2& b, const Obstacle& obstacle);

/// Boundary-inclusive containment.
bool contains(const Obstacle& obstacle, const Vec2& p);

struct ExecutionResult {
    Trajectory executed;   // same length as the mental trajectory
    bool collided = false;
    std::optional<Vec2> contact;
    int obstacle_id = -1;
    int contact_step = -1;
};

/// Ideal tracking of the mental trajectory with a safety stop: motion follows
/// the plan exactly until the first obstacle contact, then holds position
/// (backed off a hair from the boundary) for the remaining timesteps.
/// tracking_noise > 0 adds Gaussian noise to the tracked reference.
ExecutionResult execute(const Trajectory& mental, const World& world, double tracking_noise = 0.0,
                        uint64_t noise_seed = 0);

/// Shipped reconstructions of the evaluation scenes: "paper-sim" (four
/// waypoints, one non-symmetric obstacle on the right leg) and
/// "paper-transfer" (adds a circular obstacle on the top leg).
World make_preset(const std::string& name);

World load_world(const std::string& path);
void save_world(const World& world, const std::string& path);
std::string world_to_json(const World& world);
World world_from_json(const std::string& text);

/// Resolve a preset name or a .json path.
World resolve_world(const std::string& spec);

}  // namespace spikeplan

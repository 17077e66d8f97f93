#include "spikeplan/world.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spikeplan/rng.hpp"

namespace spikeplan {

namespace {

constexpr double kContactBackoff = 1e-6;

bool circle_contains(const Circle& c, const Vec2& p) { return distance(p, c.center) <= c.radius; }

bool polygon_contains(const ConvexPolygon& poly, const Vec2& p) {
    const size_t n = poly.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly.vertices[i];
        const Vec2& b = poly.vertices[(i + 1) % n];
        if ((b - a).cross(p - a) < 0.0) return false;  // CCW: inside means left of every edge
    }
    return true;
}

std::optional<Contact> circle_collides(const Vec2& a, const Vec2& b, const Circle& c) {
    if (circle_contains(c, a)) return Contact{0.0, a};
    const Vec2 d = b - a;
    const Vec2 f = a - c.center;
    const double qa = d.norm2();
    if (qa == 0.0) return std::nullopt;
    const double qb = 2.0 * f.dot(d);
    const double qc = f.norm2() - c.radius * c.radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t0 = (-qb - sq) / (2.0 * qa);
    if (t0 < 0.0 || t0 > 1.0) return std::nullopt;
    return Contact{t0, a + t0 * d};
}

Vec2 circle_boundary_point(const Circle& c, const Vec2& p) {
    const Vec2 d = p - c.center;
    const double len = d.norm();
    if (len == 0.0) return {c.center.x + c.radius, c.center.y};
    return c.center + d * (c.radius / len);
}

Vec2 polygon_boundary_point(const ConvexPolygon& poly, const Vec2& p) {
    const size_t n = poly.vertices.size();
    Vec2 best = poly.vertices[0];
    double best_d = (p - best).norm2();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly.vertices[i];
        const Vec2& b = poly.vertices[(i + 1) % n];
        const Vec2 e = b - a;
        const double t = clamp(e.norm2() > 0.0 ? (p - a).dot(e) / e.norm2() : 0.0, 0.0, 1.0);
        const Vec2 q = a + t * e;
        const double d = (p - q).norm2();
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

/// Nearest point on the obstacle boundary, nudged outward so the result is
/// strictly outside.
Vec2 escape_point(const Obstacle& obs, const Vec2& p) {
    if (const auto* c = std::get_if<Circle>(&obs.shape)) {
        const Vec2 q = circle_boundary_point(*c, p);
        const Vec2 d = q - c->center;
        return q + d * (kContactBackoff / c->radius);
    }
    const auto& poly = std::get<ConvexPolygon>(obs.shape);
    const Vec2 q = polygon_boundary_point(poly, p);
    // centroid points inward for a convex polygon
    Vec2 centroid{0.0, 0.0};
    for (const auto& v : poly.vertices) centroid += v;
    centroid = centroid * (1.0 / static_cast<double>(poly.vertices.size()));
    const Vec2 d = q - centroid;
    const double len = d.norm();
    return len > 0.0 ? q + d * (kContactBackoff / len) : q;
}

std::optional<Contact> polygon_collides(const Vec2& a, const Vec2& b, const ConvexPolygon& poly) {
    if (polygon_contains(poly, a)) return Contact{0.0, a};
    const Vec2 d = b - a;
    const size_t n = poly.vertices.size();
    std::optional<Contact> best;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& v0 = poly.vertices[i];
        const Vec2& v1 = poly.vertices[(i + 1) % n];
        const Vec2 e = v1 - v0;
        const double denom = d.cross(e);
        if (denom == 0.0) continue;  // parallel / collinear grazing counts as a miss
        const Vec2 w = v0 - a;
        const double t = w.cross(e) / denom;
        const double s = w.cross(d) / denom;
        if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0) continue;
        if (!best || t < best->t) best = Contact{t, a + t * d};
    }
    return best;
}

}  // namespace

std::optional<Contact> collides(const Vec2& a, const Vec2& b, const Obstacle& obstacle) {
    if (const auto* c = std::get_if<Circle>(&obstacle.shape)) return circle_collides(a, b, *c);
    return polygon_collides(a, b, std::get<ConvexPolygon>(obstacle.shape));
}

bool contains(const Obstacle& obstacle, const Vec2& p) {
    if (const auto* c = std::get_if<Circle>(&obstacle.shape)) return circle_contains(*c, p);
    return polygon_contains(std::get<ConvexPolygon>(obstacle.shape), p);
}

std::vector<int> World::blocked_legs() const {
    std::vector<int> blocked;
    const int n = static_cast<int>(waypoints.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& from = waypoints[(i + n - 1) % n];
        const Vec2& to = waypoints[i];
        for (const auto& obs : obstacles) {
            if (collides(from, to, obs)) {
                blocked.push_back(i);
                break;
            }
        }
    }
    return blocked;
}

ExecutionResult execute(const Trajectory& mental, const World& world, double tracking_noise, uint64_t noise_seed) {
    if (mental.length() == 0) throw std::invalid_argument("execute: empty trajectory");

    ExecutionResult result;
    std::vector<Vec2> out(static_cast<size_t>(mental.length()));
    Rng rng(noise_seed);

    // A reference that starts on (or inside) an obstacle cannot be tracked;
    // the safety controller parks the tracker on the boundary instead.
    Vec2 cur = mental.states[0];
    for (const auto& obs : world.obstacles) {
        if (contains(obs, cur)) {
            cur = escape_point(obs, cur);
            result.collided = true;
            result.contact = mental.states[0];
            result.obstacle_id = obs.id;
            result.contact_step = 0;
            break;
        }
    }
    out[0] = cur;

    for (int i = 1; i < mental.length(); ++i) {
        if (result.collided) {
            out[i] = cur;
            continue;
        }
        Vec2 target = mental.states[i];
        if (tracking_noise > 0.0) {
            target.x = clamp(target.x + rng.normal(0.0, tracking_noise), world.lo.x, world.hi.x);
            target.y = clamp(target.y + rng.normal(0.0, tracking_noise), world.lo.y, world.hi.y);
        }

        std::optional<Contact> first;
        int hit_id = -1;
        for (const auto& obs : world.obstacles) {
            const auto c = collides(cur, target, obs);
            if (c && (!first || c->t < first->t)) {
                first = c;
                hit_id = obs.id;
            }
        }

        if (first) {
            // stop a hair before the boundary so follow-up segments can leave
            const Vec2 d = first->point - cur;
            const double len = d.norm();
            cur = len > kContactBackoff ? first->point - d * (kContactBackoff / len) : cur;
            result.collided = true;
            result.contact = first->point;
            result.obstacle_id = hit_id;
            result.contact_step = i;
        } else {
            cur = target;
        }
        out[i] = cur;
    }

    result.executed = Trajectory(std::move(out), mental.dt, world.lo, world.hi);
    return result;
}

World make_preset(const std::string& name) {
    World w;
    w.lo = {-1.0, -1.0};
    w.hi = {1.0, 1.0};
    w.waypoints = {{-0.5, -0.5}, {0.35, -0.5}, {0.66, 0.38}, {-0.5, 0.5}};

    // Reconstruction of the evaluation scenes; the published figures show the
    // layout but not exact coordinates. One non-symmetric convex obstacle
    // sits on the right leg; its faces are oblique to the leg and it reaches
    // farther into the interior than outward.
    Obstacle blocker;
    blocker.id = 0;
    blocker.shape = ConvexPolygon{{{0.42, -0.22}, {0.66, 0.06}, {0.40, 0.26}, {0.16, -0.04}}};

    if (name == "paper-sim") {
        w.name = name;
        w.obstacles = {blocker};
        return w;
    }
    if (name == "paper-transfer") {
        w.name = name;
        Obstacle extra;
        extra.id = 1;
        extra.shape = Circle{{0.0, 0.53}, 0.16};
        w.obstacles = {blocker, extra};
        return w;
    }
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

namespace {

void validate_world(const World& w) {
    if (w.hi.x <= w.lo.x || w.hi.y <= w.lo.y) throw std::runtime_error("world: empty bounds");
    if (w.waypoints.size() < 2) throw std::runtime_error("world: need at least two waypoints");
    auto in_bounds = [&](const Vec2& p) { return p.x >= w.lo.x && p.x <= w.hi.x && p.y >= w.lo.y && p.y <= w.hi.y; };
    for (const auto& p : w.waypoints)
        if (!in_bounds(p)) throw std::runtime_error("world: waypoint out of bounds");
    for (const auto& obs : w.obstacles) {
        if (const auto* c = std::get_if<Circle>(&obs.shape)) {
            if (c->radius <= 0.0) throw std::runtime_error("world: degenerate circle");
            if (!in_bounds(c->center)) throw std::runtime_error("world: obstacle out of bounds");
        } else {
            const auto& poly = std::get<ConvexPolygon>(obs.shape);
            if (poly.vertices.size() < 3) throw std::runtime_error("world: degenerate polygon");
            double area2 = 0.0;
            const size_t n = poly.vertices.size();
            for (size_t i = 0; i < n; ++i) {
                const Vec2& a = poly.vertices[i];
                const Vec2& b = poly.vertices[(i + 1) % n];
                if ((b - a).cross(poly.vertices[(i + 2) % n] - b) < 0.0)
                    throw std::runtime_error("world: polygon must be convex and counter-clockwise");
                area2 += a.cross(b);
                if (!in_bounds(a)) throw std::runtime_error("world: obstacle out of bounds");
            }
            if (area2 <= 0.0) throw std::runtime_error("world: degenerate polygon");
        }
        for (const auto& p : w.waypoints)
            if (contains(obs, p)) throw std::runtime_error("world: waypoint inside obstacle");
    }
}

}  // namespace

std::string world_to_json(const World& world) {
    nlohmann::ordered_json j;
    j["format"] = "spikeplan-world";
    j["version"] = 1;
    j["name"] = world.name;
    j["bounds"] = {{"lo", {world.lo.x, world.lo.y}}, {"hi", {world.hi.x, world.hi.y}}};
    j["obstacles"] = nlohmann::ordered_json::array();
    for (const auto& obs : world.obstacles) {
        nlohmann::ordered_json o;
        o["id"] = obs.id;
        if (const auto* c = std::get_if<Circle>(&obs.shape)) {
            o["type"] = "circle";
            o["center"] = {c->center.x, c->center.y};
            o["radius"] = c->radius;
        } else {
            const auto& poly = std::get<ConvexPolygon>(obs.shape);
            o["type"] = "polygon";
            auto verts = nlohmann::ordered_json::array();
            for (const auto& v : poly.vertices) verts.push_back({v.x, v.y});
            o["vertices"] = verts;
        }
        j["obstacles"].push_back(o);
    }
    j["waypoints"] = nlohmann::ordered_json::array();
    for (const auto& p : world.waypoints) j["waypoints"].push_back({p.x, p.y});
    return j.dump(2) + "\n";
}

World world_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("world: parse error: ") + e.what());
    }
    try {
        if (j.at("format") != "spikeplan-world") throw std::runtime_error("world: not a world file");
        if (j.at("version") != 1) throw std::runtime_error("world: unsupported version");
        World w;
        w.name = j.value("name", "");
        w.lo = {j.at("bounds").at("lo").at(0), j.at("bounds").at("lo").at(1)};
        w.hi = {j.at("bounds").at("hi").at(0), j.at("bounds").at("hi").at(1)};
        for (const auto& o : j.at("obstacles")) {
            Obstacle obs;
            obs.id = o.at("id");
            const std::string type = o.at("type");
            if (type == "circle") {
                obs.shape = Circle{{o.at("center").at(0), o.at("center").at(1)}, o.at("radius")};
            } else if (type == "polygon") {
                ConvexPolygon poly;
                for (const auto& v : o.at("vertices")) poly.vertices.push_back({v.at(0), v.at(1)});
                obs.shape = poly;
            } else {
                throw std::runtime_error("world: unknown obstacle type '" + type + "'");
            }
            w.obstacles.push_back(std::move(obs));
        }
        for (const auto& p : j.at("waypoints")) w.waypoints.push_back({p.at(0), p.at(1)});
        validate_world(w);
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("world: malformed field: ") + e.what());
    }
}

World load_world(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("world: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return world_from_json(ss.str());
}

void save_world(const World& world, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("world: cannot write '" + path + "'");
    out << world_to_json(world);
}

World resolve_world(const std::string& spec) {
    if (spec == "paper-sim" || spec == "paper-transfer") return make_preset(spec);
    return load_world(spec);
}

}  // namespace spikeplan

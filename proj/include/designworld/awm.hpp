#pragma once

// Attention/working memory: a toroidal 3D grid written along a random walk
// and searched outward from the write pointer within a bounded radius.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "designworld/proposition.hpp"
#include "designworld/rng.hpp"

namespace designworld {

inline constexpr int kDefaultGridSize = 16;
inline constexpr double kMaxRadius = 16.0;

struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;
    auto operator<=>(const Coord&) const = default;
};

std::string to_string(Coord c);

// Search radius, in grid units. Fractional values are allowed.
class Radius {
public:
    constexpr Radius() = default;
    explicit Radius(double value);

    double value() const noexcept { return value_; }
    auto operator<=>(const Radius&) const = default;

private:
    double value_ = 0.0;
};

// Squared toroidal Euclidean distance: per-axis minimal wrap difference, then L2.
int toroidal_distance_sq(Coord a, Coord b, int size = kDefaultGridSize);

// Every locus within `radius` of `center`, nearest first; equal distances are
// ordered lexicographically by signed offset (dx, dy, dz).
std::vector<Coord> sphere(Coord center, Radius radius, int size = kDefaultGridSize);
std::size_t sphere_size(Radius radius, int size = kDefaultGridSize);

struct Trace {
    Proposition prop;
    Coord locus;
    std::uint64_t timestamp = 0;
};

struct Retrieval {
    std::optional<Proposition> found;
    std::uint64_t steps = 0;
    // Timestamp of the returned trace, 0 when nothing was found.
    std::uint64_t timestamp = 0;

    explicit operator bool() const noexcept { return found.has_value(); }
};

using PropositionMatcher = std::function<bool(const Proposition&)>;

class AwmGrid {
public:
    explicit AwmGrid(std::uint64_t seed, int size = kDefaultGridSize, Coord start = {});

    // Moves the pointer to one of the six axis neighbours, uniformly.
    Coord advance_pointer();

    // Advance, then append a trace at the new pointer locus.
    void store(Proposition prop);

    // Spherical search from the pointer. Charges the visited loci to
    // retrieval_steps(); the pointer does not move.
    Retrieval retrieve(const PropositionMatcher& match, Radius radius);

    // Same search without touching any counter.
    Retrieval peek(const PropositionMatcher& match, Radius radius) const;

    Coord pointer() const noexcept { return pointer_; }
    int size() const noexcept { return size_; }
    std::uint64_t retrieval_steps() const noexcept { return retrieval_steps_; }
    std::uint64_t store_count() const noexcept { return clock_; }
    std::size_t trace_count() const noexcept { return traces_.size(); }
    std::span<const Trace> traces() const noexcept { return traces_; }

    // Traces stored at `locus`, oldest first.
    std::vector<Trace> cell(Coord locus) const;

    // One line per trace: "(x,y,z) t=<timestamp> <proposition>".
    std::string dump() const;

    bool operator==(const AwmGrid& other) const;

private:
    std::size_t cell_index(Coord c) const noexcept {
        return (static_cast<std::size_t>(c.x) * size_ + c.y) * size_ + c.z;
    }

    int size_;
    Coord pointer_;
    Rng rng_;
    std::uint64_t clock_ = 0;
    std::uint64_t retrieval_steps_ = 0;
    std::vector<Trace> traces_;
    std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace designworld

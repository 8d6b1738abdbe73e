#include "designworld/awm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

namespace designworld {

namespace {

struct Offset {
    int dx, dy, dz;
    int d2;
};

// Offsets of every locus of the torus from an origin, sorted in search order,
// plus the inverse map (wrapped offset -> position in that order).
struct SphereTable {
    int size = 0;
    std::vector<Offset> order;
    std::vector<int> dist_sq;          // parallel to order, non-decreasing
    std::vector<std::uint32_t> rank;   // indexed by wrapped (dx, dy, dz)

    explicit SphereTable(int n) : size(n) {
        const int lo = -((n - 1) / 2);
        const int hi = n / 2;
        order.reserve(static_cast<std::size_t>(n) * n * n);
        for (int dx = lo; dx <= hi; ++dx)
            for (int dy = lo; dy <= hi; ++dy)
                for (int dz = lo; dz <= hi; ++dz)
                    order.push_back({dx, dy, dz, dx * dx + dy * dy + dz * dz});
        std::stable_sort(order.begin(), order.end(),
                         [](const Offset& a, const Offset& b) { return a.d2 < b.d2; });
        dist_sq.reserve(order.size());
        rank.assign(order.size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto& o = order[i];
            dist_sq.push_back(o.d2);
            rank[wrapped_index(o.dx, o.dy, o.dz)] = static_cast<std::uint32_t>(i);
        }
    }

    std::size_t wrapped_index(int dx, int dy, int dz) const noexcept {
        auto w = [this](int d) { return static_cast<std::size_t>(((d % size) + size) % size); };
        return (w(dx) * size + w(dy)) * size + w(dz);
    }

    std::size_t count_within(double radius) const {
        const double r2 = radius * radius + 1e-9;
        auto it = std::upper_bound(dist_sq.begin(), dist_sq.end(), r2,
                                   [](double v, int d2) { return v < static_cast<double>(d2); });
        return static_cast<std::size_t>(it - dist_sq.begin());
    }
};

const SphereTable& sphere_table(int size) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<SphereTable>> tables;
    std::lock_guard lock(mu);
    auto& slot = tables[size];
    if (!slot) slot = std::make_unique<SphereTable>(size);
    return *slot;
}

int wrap(int v, int size) noexcept { return ((v % size) + size) % size; }

constexpr std::array<std::array<int, 3>, 6> kNeighbours{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
}};

}  // namespace

std::string to_string(Coord c) { return fmt::format("({},{},{})", c.x, c.y, c.z); }

Radius::Radius(double value) : value_(value) {
    if (!(value >= 0.0 && value <= kMaxRadius)) {
        throw std::invalid_argument(fmt::format("radius {} outside [0, {}]", value, kMaxRadius));
    }
}

int toroidal_distance_sq(Coord a, Coord b, int size) {
    auto axis = [size](int u, int v) {
        const int d = wrap(u - v, size);
        return std::min(d, size - d);
    };
    const int dx = axis(a.x, b.x);
    const int dy = axis(a.y, b.y);
    const int dz = axis(a.z, b.z);
    return dx * dx + dy * dy + dz * dz;
}

std::vector<Coord> sphere(Coord center, Radius radius, int size) {
    const auto& table = sphere_table(size);
    const std::size_t n = table.count_within(radius.value());
    std::vector<Coord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& o = table.order[i];
        out.push_back({wrap(center.x + o.dx, size), wrap(center.y + o.dy, size),
                       wrap(center.z + o.dz, size)});
    }
    return out;
}

std::size_t sphere_size(Radius radius, int size) {
    return sphere_table(size).count_within(radius.value());
}

AwmGrid::AwmGrid(std::uint64_t seed, int size, Coord start)
    : size_(size),
      pointer_{wrap(start.x, size), wrap(start.y, size), wrap(start.z, size)},
      rng_(seed),
      cells_(static_cast<std::size_t>(size) * size * size) {
    if (size < 2) throw std::invalid_argument("grid size must be at least 2");
}

Coord AwmGrid::advance_pointer() {
    const auto& step = kNeighbours[rng_.below(kNeighbours.size())];
    pointer_ = {wrap(pointer_.x + step[0], size_), wrap(pointer_.y + step[1], size_),
                wrap(pointer_.z + step[2], size_)};
    return pointer_;
}

void AwmGrid::store(Proposition prop) {
    advance_pointer();
    const auto index = static_cast<std::uint32_t>(traces_.size());
    traces_.push_back({std::move(prop), pointer_, ++clock_});
    cells_[cell_index(pointer_)].push_back(index);
}

// Equivalent to walking sphere(pointer, radius) and stopping at the first
// locus holding a match, but computed from each matching trace's position in
// the search order so the cost is independent of the radius.
Retrieval AwmGrid::peek(const PropositionMatcher& match, Radius radius) const {
    const auto& table = sphere_table(size_);
    const std::size_t limit = table.count_within(radius.value());

    std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
    const Trace* best = nullptr;
    for (const auto& t : traces_) {
        if (!match(t.prop)) continue;
        const auto r = table.rank[table.wrapped_index(t.locus.x - pointer_.x, t.locus.y - pointer_.y,
                                                      t.locus.z - pointer_.z)];
        if (r < best_rank || (r == best_rank && t.timestamp > best->timestamp)) {
            best_rank = r;
            best = &t;
        }
    }

    Retrieval out;
    if (best != nullptr && best_rank < limit) {
        out.found = best->prop;
        out.steps = best_rank + 1;
        out.timestamp = best->timestamp;
    } else {
        out.steps = limit;
    }
    return out;
}

Retrieval AwmGrid::retrieve(const PropositionMatcher& match, Radius radius) {
    auto out = peek(match, radius);
    retrieval_steps_ += out.steps;
    return out;
}

std::vector<Trace> AwmGrid::cell(Coord locus) const {
    const Coord c{wrap(locus.x, size_), wrap(locus.y, size_), wrap(locus.z, size_)};
    std::vector<Trace> out;
    for (auto i : cells_[cell_index(c)]) out.push_back(traces_[i]);
    return out;
}

std::string AwmGrid::dump() const {
    std::string out;
    for (const auto& t : traces_) {
        out += fmt::format("{} t={} {}\n", to_string(t.locus), t.timestamp, to_string(t.prop));
    }
    return out;
}

bool AwmGrid::operator==(const AwmGrid& o) const {
    if (size_ != o.size_ || pointer_ != o.pointer_ || clock_ != o.clock_ ||
        retrieval_steps_ != o.retrieval_steps_ || traces_.size() != o.traces_.size() || !(rng_ == o.rng_)) {
        return false;
    }
    for (std::size_t i = 0; i < traces_.size(); ++i) {
        const auto& a = traces_[i];
        const auto& b = o.traces_[i];
        if (a.prop != b.prop || a.locus != b.locus || a.timestamp != b.timestamp) return false;
    }
    return true;
}

}  // namespace designworld

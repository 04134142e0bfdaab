#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "heis/point.hpp"

namespace heis {

struct Box {
    double x0 = -1.0, x1 = 1.0;
    double y0 = -1.0, y1 = 1.0;
    double t0 = -1.0, t1 = 1.0;

    bool contains(const Point& g) const {
        return g.x >= x0 && g.x <= x1 && g.y >= y0 && g.y <= y1 && g.t >= t0 && g.t <= t1;
    }
    double volume() const { return (x1 - x0) * (y1 - y0) * (t1 - t0); }
};

struct Region {
    Box box;
    int nx = 21, ny = 21, nt = 21;

    Region() = default;
    Region(Box b, int n) : box(b), nx(n), ny(n), nt(n) { check(); }
    Region(Box b, int nx_, int ny_, int nt_) : box(b), nx(nx_), ny(ny_), nt(nt_) { check(); }

    void check() const {
        if (nx < 1 || ny < 1 || nt < 1) throw std::invalid_argument("region: empty grid");
        if (!(box.x0 <= box.x1 && box.y0 <= box.y1 && box.t0 <= box.t1))
            throw std::invalid_argument("region: degenerate box");
    }
};

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    if (n == 1) {
        v[0] = 0.5 * (a + b);
        return v;
    }
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

// Deterministic uniform generator; the distribution code is ours so output
// is identical across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int n) { return static_cast<int>(uniform() * n) % n; }

private:
    std::mt19937_64 eng_;
};

}  // namespace heis

#pragma once

#include <functional>
#include <vector>

#include "heis/calculus.hpp"
#include "heis/field.hpp"

namespace heis {

struct ChainNode {
    Point g;
    HVector p;
};

// Sequence (g_i, p_i) with g_{i+1} in H_{g_i} and p_i a subgradient at g_i.
struct Chain {
    std::vector<ChainNode> nodes;
};

// Throws if consecutive nodes violate horizontal-plane membership.
void validate_chain(const Chain& c);

// Telescoped sum of <p_i, xi1(g_{i+1}) - xi1(g_i)>.
double chain_sum(const Chain& c);

// Sum of <p_{i+1} - p_i, xi1(g_{i+1}) - xi1(g_i)>; bounds the reconstruction gap.
double gap_bound(const Chain& c);

using SubgradientSelector = std::function<HVector(const Point&)>;

// Broken-line chain from g0 to g: one, two or three horizontal segments
// depending on the relative position of g and H_{g0}, each refined into N
// pieces. p_i defaults to the horizontal gradient.
Chain build_chain(const Field& u, const Point& g0, const Point& g, int N,
                  const SubgradientSelector* selector = nullptr);

struct ReconstructResult {
    double value = 0.0;  // chain-sum approximation of u(g) - u(g0)
    int n_used = 0;
    double gap = 0.0;    // u(g) - u(g0) - value
};

// Doubles N from 8 until the gap drops below eps; N capped at 2^20.
ReconstructResult reconstruct(const Field& u, const Point& g0, const Point& g, double eps,
                              const SubgradientSelector* selector = nullptr);

}  // namespace heis

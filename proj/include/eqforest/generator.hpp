#pragma once

#include <cstdint>

#include "eqforest/drawing.hpp"

namespace eqforest {

// All generators draw from mt19937 with modulo reduction and a
// hand-rolled Fisher-Yates shuffle, so a fixed seed reproduces the same
// graph on every platform.

// Connected planar graph with girth >= min_girth: a random spanning tree
// plus greedy random edge insertion under planarity and girth guards.
// target_edges < 0 means "as dense as the guards allow".
Graph random_planar(int n, int min_girth, std::uint32_t seed, int target_edges = -1);

// Augments a planar graph with up to max_crossings crossing edge pairs.
// Each crossing uses four previously unused vertices (clusters are
// disjoint by construction) and is kept only if the two new edges
// respect the girth floor, the density bound, and leave the planarized
// skeleton planar.
Drawing ic_augment(const Graph& planar, int max_crossings, std::uint32_t seed,
                   int min_girth = 3);

// K_k plus t extra vertices, each adjacent to all of the K_k.
// Requires k >= 2 and t >= 2k-3.
Graph sharpness_example(int k, int t);

// Path on path_len vertices plus a universal vertex (outerplanar fan).
Graph fan_example(int path_len);

Graph star(int delta);     // K_{1,delta}; center is vertex 0
Graph cycle(int n);        // C_n, n >= 3
Graph complete(int k);     // K_k

// Replaces every edge by a path with r+1 edges (r new vertices per
// edge); multiplies the girth by r+1.
Graph subdivide(const Graph& g, int r);

}  // namespace eqforest

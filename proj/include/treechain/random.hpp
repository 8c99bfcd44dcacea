#pragma once

#include "treechain/simplicial.hpp"

#include <random>

namespace treechain::random {

using Engine = std::mt19937_64;

/// Random labelled tree on `n` vertices (opaque labels 0..n-1), embedded with
/// x = preorder index and y = depth, which never produces crossings.
SimplicialGraph random_tree(int n, Engine& rng);

/// Random simplicial map: a BFS walk over the (connected) source that sends
/// each new vertex to its parent's image or to a neighbour of it. The result
/// is simplicial only when the source is a forest.
SimplicialMapping random_simplicial_map(GraphPtr source, GraphPtr target, Engine& rng);

/// Uniform rational in [0,1] with the given denominator; endpoints included.
Rational random_unit(Engine& rng, long denominator);

} // namespace treechain::random

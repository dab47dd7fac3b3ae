#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace clusterkit {

// Hard cap for graph-order operations; at n = 9 there are 2^36 edge sets,
// which is the practical enumeration ceiling at desk scale.
inline constexpr int kDefaultNMax = 9;

// Bell(12) = 4,213,597; larger m is refused.
inline constexpr int kMaxPartitionSize = 12;

inline constexpr int pair_count(int n) { return n * (n - 1) / 2; }

// Flat index of the unordered pair {i, j}, 0 <= i < j < n, ordered
// lexicographically: (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline int pair_index(int i, int j, int n) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Edge set on n labeled vertices, packed as a bitmask over pair_index.
struct LabeledGraph {
    int n_vertices = 1;
    std::uint64_t edges = 0;

    bool has_edge(int i, int j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return (edges >> pair_index(i, j, n_vertices)) & 1u;
    }
    int edge_count() const { return __builtin_popcountll(edges); }
};

// True iff all vertices lie in one component (single vertex counts).
bool is_connected(const LabeledGraph& g);

// Streams every connected labeled graph on n vertices exactly once, by
// filtering all 2^(n(n-1)/2) edge sets. Return false from the visitor to
// stop early. Throws std::invalid_argument for n < 1 or n > n_max.
void enumerate_connected_graphs(int n,
                                const std::function<bool(const LabeledGraph&)>& visit,
                                int n_max = kDefaultNMax);

// |C_n| via the anchored-component recursion (all minus those whose
// component containing vertex 0 is proper); O(3^n), no enumeration.
std::uint64_t connected_graph_count(int n, int n_max = kDefaultNMax);

// Partition of {0, ..., m-1} into disjoint nonempty blocks covering everything.
struct SetPartition {
    int m = 1;
    std::vector<std::vector<int>> blocks;
};

// Streams every set partition of {0,...,m-1} exactly once
// (restricted-growth strings). Return false to stop early.
void enumerate_set_partitions(int m,
                              const std::function<bool(const SetPartition&)>& visit);

std::uint64_t set_partition_count(int m);

}  // namespace clusterkit

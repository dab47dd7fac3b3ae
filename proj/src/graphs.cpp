#include "clusterkit/graphs.hpp"

#include <stdexcept>
#include <string>

#include "clusterkit/errors.hpp"

namespace clusterkit {

bool is_connected(const LabeledGraph& g) {
    const int n = g.n_vertices;
    if (n <= 1) return true;
    std::uint32_t seen = 1u;  // vertex 0
    std::uint32_t stack = 1u;
    while (stack) {
        const int v = __builtin_ctz(stack);
        stack &= stack - 1;
        for (int u = 0; u < n; ++u) {
            if (!(seen >> u & 1u) && g.has_edge(v, u)) {
                seen |= 1u << u;
                stack |= 1u << u;
            }
        }
    }
    return seen == (1u << n) - 1u;
}

void enumerate_connected_graphs(int n,
                                const std::function<bool(const LabeledGraph&)>& visit,
                                int n_max) {
    if (n < 1 || n > n_max)
        throw std::invalid_argument("enumerate_connected_graphs: n must be in [1, " +
                                    std::to_string(n_max) + "], got " + std::to_string(n));
    const std::uint64_t total = 1ull << pair_count(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        LabeledGraph g{n, mask};
        if (is_connected(g) && !visit(g)) return;
    }
}

std::uint64_t connected_graph_count(int n, int n_max) {
    if (n < 1 || n > n_max)
        throw std::invalid_argument("connected_graph_count: n out of range");
    // all[V] = 2^(p(p-1)/2) graphs on a p-subset; conn[V] by subtracting the
    // graphs whose component containing the lowest vertex of V is proper.
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<std::uint64_t> all(full + 1), conn(full + 1);
    all[0] = 1;
    for (std::uint32_t v = 1; v <= full; ++v)
        all[v] = 1ull << pair_count(__builtin_popcount(v));
    for (std::uint32_t v = 1; v <= full; ++v) {
        const std::uint32_t anchor = v & -v;
        std::uint64_t proper = 0;
        // submasks w of v that contain the anchor, w != v
        const std::uint32_t rest = v ^ anchor;
        for (std::uint32_t s = rest; s > 0; s = (s - 1) & rest) {
            const std::uint32_t w = (s ^ rest) | anchor;  // complement within rest
            proper += conn[w] * all[v ^ w];
        }
        conn[v] = all[v] - proper;
    }
    return conn[full];
}

void enumerate_set_partitions(int m,
                              const std::function<bool(const SetPartition&)>& visit) {
    if (m < 1 || m > kMaxPartitionSize)
        throw std::invalid_argument("enumerate_set_partitions: m must be in [1, " +
                                    std::to_string(kMaxPartitionSize) + "]");
    // Restricted-growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
    std::vector<int> rgs(m, 0);
    auto emit = [&]() {
        SetPartition p;
        p.m = m;
        int k = 0;
        for (int v : rgs) k = std::max(k, v + 1);
        p.blocks.assign(k, {});
        for (int i = 0; i < m; ++i) p.blocks[rgs[i]].push_back(i);
        return visit(p);
    };
    for (;;) {
        if (!emit()) return;
        int i = m - 1;
        for (; i > 0; --i) {
            int cap = 0;
            for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j] + 1);
            if (rgs[i] < cap) break;
        }
        if (i == 0) return;
        ++rgs[i];
        for (int j = i + 1; j < m; ++j) rgs[j] = 0;
    }
}

std::uint64_t set_partition_count(int m) {
    std::uint64_t count = 0;
    enumerate_set_partitions(m, [&](const SetPartition&) {
        ++count;
        return true;
    });
    return count;
}

}  // namespace clusterkit

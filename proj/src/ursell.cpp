#include "clusterkit/ursell.hpp"

#include <limits>

namespace clusterkit {

double min_connectivity_cost(const EdgeWeightMatrix<double>& c) {
    const int n = c.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (c.at(i, j) < 0.0)
                throw std::invalid_argument("min_connectivity_cost: negative edge cost");
    if (n == 1) return 0.0;
    // Prim on the complete graph.
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    in_tree[0] = true;
    for (int j = 1; j < n; ++j) best[j] = c.at(0, j);
    double total = 0.0;
    for (int added = 1; added < n; ++added) {
        int pick = -1;
        for (int j = 0; j < n; ++j)
            if (!in_tree[j] && (pick == -1 || best[j] < best[pick])) pick = j;
        total += best[pick];
        in_tree[pick] = true;
        for (int j = 0; j < n; ++j)
            if (!in_tree[j] && c.at(pick, j) < best[j]) best[j] = c.at(pick, j);
    }
    return total;
}

}  // namespace clusterkit

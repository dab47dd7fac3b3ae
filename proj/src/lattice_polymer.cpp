#include "clusterkit/models/lattice_polymer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

namespace clusterkit::models {

namespace {

constexpr std::uint64_t kPolymerCountCap = 2'000'000;

std::string site_key(const std::vector<int>& sorted_sites) {
    return std::string(reinterpret_cast<const char*>(sorted_sites.data()),
                       sorted_sites.size() * sizeof(int));
}

bool sorted_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return false;
}

}  // namespace

double golden_ratio() { return (std::sqrt(5.0) + 1.0) / 2.0; }

double polymer_eta(int d) {
    const double phi = golden_ratio();
    return 2.0 * std::log(2.0 * d * phi) + 1.0 / phi;
}

void LatticePolymerParams::validate() const {
    if (dimension < 1) throw std::invalid_argument("lattice polymers: dimension must be >= 1");
    if (static_cast<int>(box.size()) != dimension)
        throw std::invalid_argument("lattice polymers: box must list one extent per axis");
    for (int e : box)
        if (e < 1) throw std::invalid_argument("lattice polymers: box extents must be >= 1");
    if (max_polymer_size < 1)
        throw std::invalid_argument("lattice polymers: max_polymer_size must be >= 1");
    if (max_polymer_size > 12)
        throw CapacityError("lattice polymers: max_polymer_size above the enumeration cap (12)");
    if (weight_rule == WeightRule::user) {
        for (int s = 1; s <= max_polymer_size; ++s)
            if (!user_weights.count(s))
                throw std::invalid_argument("lattice polymers: user weight missing for size " +
                                            std::to_string(s));
    }
}

LatticePolymerSystem enumerate_lattice_polymers(const LatticePolymerParams& params) {
    params.validate();
    const int d = params.dimension;
    std::uint64_t cells = 1;
    for (int e : params.box) cells *= static_cast<std::uint64_t>(e);

    // strides for flat site indexing
    std::vector<int> stride(d, 1);
    for (int k = 1; k < d; ++k) stride[k] = stride[k - 1] * params.box[k - 1];
    auto coord_of = [&](int flat, int axis) { return flat / stride[axis] % params.box[axis]; };

    auto neighbors = [&](int flat, std::vector<int>& out) {
        out.clear();
        for (int axis = 0; axis < d; ++axis) {
            const int c = coord_of(flat, axis);
            if (c > 0) out.push_back(flat - stride[axis]);
            if (c + 1 < params.box[axis]) out.push_back(flat + stride[axis]);
        }
    };

    const double eta = polymer_eta(d);
    auto weight_of_size = [&](int s) {
        return params.weight_rule == LatticePolymerParams::WeightRule::paper_default
                   ? std::exp(-eta * s)
                   : params.user_weights.at(s);
    };

    LatticePolymerSystem sys;
    std::set<std::string> seen;
    std::vector<std::vector<int>> level;
    for (std::uint64_t s = 0; s < cells; ++s) level.push_back({static_cast<int>(s)});
    std::vector<int> nbuf;
    for (int size = 1; size <= params.max_polymer_size && !level.empty(); ++size) {
        std::vector<std::vector<int>> next;
        for (auto& poly : level) {
            sys.site_sets.push_back(poly);
            sys.sizes.push_back(size);
            if (sys.site_sets.size() > kPolymerCountCap)
                throw CapacityError("lattice polymers: enumeration exceeded the polymer cap");
            if (size == params.max_polymer_size) continue;
            for (int site : poly) {
                neighbors(site, nbuf);
                for (int nb : nbuf) {
                    if (std::binary_search(poly.begin(), poly.end(), nb)) continue;
                    std::vector<int> grown;
                    grown.reserve(poly.size() + 1);
                    grown.insert(grown.end(), poly.begin(), poly.end());
                    grown.insert(std::lower_bound(grown.begin(), grown.end(), nb), nb);
                    if (seen.insert(site_key(grown)).second) next.push_back(std::move(grown));
                }
            }
        }
        level = std::move(next);
    }

    const std::size_t p = sys.site_sets.size();
    sys.space.label = "lattice polymers";
    sys.space.ids.reserve(p);
    sys.space.weights.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
        std::ostringstream id;
        for (std::size_t k = 0; k < sys.site_sets[i].size(); ++k)
            id << (k ? "+" : "") << sys.site_sets[i][k];
        sys.space.ids.push_back(id.str());
        sys.space.weights.emplace_back(weight_of_size(sys.sizes[i]), 0.0);
    }
    std::vector<std::vector<bool>> overlap(p, std::vector<bool>(p, false));
    for (std::size_t i = 0; i < p; ++i) {
        overlap[i][i] = true;
        for (std::size_t j = i + 1; j < p; ++j)
            overlap[i][j] = overlap[j][i] = sorted_intersect(sys.site_sets[i], sys.site_sets[j]);
    }
    sys.kernel = hard_core_kernel(std::move(overlap));
    return sys;
}

std::vector<std::uint64_t> origin_polymer_counts(int d, int max_n) {
    if (d < 1 || max_n < 1) throw std::invalid_argument("origin_polymer_counts: bad arguments");
    if (max_n > 10) throw CapacityError("origin_polymer_counts: size cap is 10");
    // sites are coordinate vectors; sets are kept sorted for canonical keys
    using Site = std::vector<int>;
    auto key_of = [](const std::vector<Site>& sites) {
        std::string k;
        for (const Site& s : sites)
            k.append(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(int));
        return k;
    };
    std::vector<std::uint64_t> counts(max_n, 0);
    std::vector<std::vector<Site>> level = {{Site(d, 0)}};
    counts[0] = 1;
    std::set<std::string> seen;
    for (int size = 2; size <= max_n; ++size) {
        std::vector<std::vector<Site>> next;
        for (const auto& poly : level) {
            for (const Site& s : poly) {
                for (int axis = 0; axis < d; ++axis) {
                    for (int dir = -1; dir <= 1; dir += 2) {
                        Site nb = s;
                        nb[axis] += dir;
                        if (std::binary_search(poly.begin(), poly.end(), nb)) continue;
                        std::vector<Site> grown = poly;
                        grown.insert(std::lower_bound(grown.begin(), grown.end(), nb), nb);
                        if (seen.insert(key_of(grown)).second) next.push_back(std::move(grown));
                    }
                }
            }
        }
        counts[size - 1] = next.size();
        if (next.size() > 5'000'000)
            throw CapacityError("origin_polymer_counts: enumeration exploded");
        level = std::move(next);
        seen.clear();
    }
    return counts;
}

GoldenRatioReport golden_ratio_criterion(const LatticePolymerParams& params) {
    if (params.weight_rule != LatticePolymerParams::WeightRule::paper_default)
        throw std::invalid_argument("golden_ratio_criterion: requires the default weight rule");
    GoldenRatioReport rep;
    const double phi = golden_ratio();
    const int d = params.dimension;
    rep.eta = polymer_eta(d);
    rep.phi_inverse = 1.0 / phi;
    // sum_{n>=1} (2d)^{2n} e^{-(eta - 1/phi) n} is geometric with ratio 1/phi^2
    rep.geometric_ratio = (2.0 * d) * (2.0 * d) * std::exp(-(rep.eta - 1.0 / phi));
    rep.dominating_sum = rep.geometric_ratio / (1.0 - rep.geometric_ratio);
    rep.identity_error = std::abs(rep.dominating_sum - rep.phi_inverse);

    const LatticePolymerSystem sys = enumerate_lattice_polymers(params);
    WeightFunctions wf;
    wf.a.resize(sys.sizes.size());
    for (std::size_t i = 0; i < sys.sizes.size(); ++i) wf.a[i] = sys.sizes[i] / phi;
    rep.kp = kp_check(sys.space, sys.kernel, wf);
    rep.passed = rep.identity_error <= 1e-12 && rep.kp.passed;
    return rep;
}

}  // namespace clusterkit::models

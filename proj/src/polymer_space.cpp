#include "clusterkit/polymer_space.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "clusterkit/parallel.hpp"

namespace clusterkit {

int max_threads() {
    const char* env = std::getenv("CLUSTERKIT_THREADS");
    if (!env || !*env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v < 1 ? 1 : static_cast<int>(v);
}

double DiscretePolymerSpace::total_variation() const {
    double s = 0.0;
    for (const Cplx& w : weights) s += std::abs(w);
    return s;
}

bool DiscretePolymerSpace::real_valued() const {
    for (const Cplx& w : weights)
        if (w.imag() != 0.0) return false;
    return true;
}

void DiscretePolymerSpace::validate() const {
    if (ids.size() != weights.size())
        throw std::invalid_argument("polymer space: ids and weights sizes differ");
    std::set<std::string> seen(ids.begin(), ids.end());
    if (seen.size() != ids.size())
        throw std::invalid_argument("polymer space: duplicate polymer id");
}

InteractionKernel hard_core_kernel(std::vector<std::vector<bool>> overlap) {
    const std::size_t n = overlap.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (overlap[i].size() != n) throw std::invalid_argument("hard-core kernel: not square");
        for (std::size_t j = 0; j < n; ++j)
            if (overlap[i][j] != overlap[j][i])
                throw std::invalid_argument("hard-core kernel: overlap must be symmetric");
    }
    InteractionKernel k;
    k.hard_core = true;
    k.stability_certified = true;
    k.zeta = [m = std::move(overlap)](std::size_t i, std::size_t j) {
        return m[i][j] ? Cplx(-1.0) : Cplx(0.0);
    };
    return k;
}

InteractionKernel matrix_kernel(std::vector<std::vector<Cplx>> zeta) {
    const std::size_t n = zeta.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (zeta[i].size() != n) throw std::invalid_argument("matrix kernel: not square");
        for (std::size_t j = 0; j < n; ++j)
            if (zeta[i][j] != zeta[j][i])
                throw std::invalid_argument("matrix kernel: zeta must be symmetric");
    }
    InteractionKernel k;
    bool hc = true, stable = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            hc = hc && (zeta[i][j] == Cplx(0.0) || zeta[i][j] == Cplx(-1.0));
            stable = stable && std::abs(Cplx(1.0) + zeta[i][j]) <= 1.0 + 1e-12;
        }
    k.hard_core = hc;
    k.stability_certified = stable;
    k.zeta = [m = std::move(zeta)](std::size_t i, std::size_t j) { return m[i][j]; };
    return k;
}

InteractionKernel zero_kernel() {
    InteractionKernel k;
    k.stability_certified = true;
    k.zeta = [](std::size_t, std::size_t) { return Cplx(0.0); };
    return k;
}

Cplx checked_zeta(const InteractionKernel& k, std::size_t i, std::size_t j) {
    const Cplx z = k.zeta(i, j);
    if (k.stability_certified && std::abs(Cplx(1.0) + z) > 1.0 + 1e-12)
        throw NumericalError("stability certificate violated: |1+zeta| = " +
                             std::to_string(std::abs(Cplx(1.0) + z)));
    return z;
}

WeightFunctions WeightFunctions::plain(std::size_t n, double a_value) {
    WeightFunctions w;
    w.a.assign(n, a_value);
    return w;
}

void WeightFunctions::validate(std::size_t n) const {
    if (!a.empty() && a.size() != n)
        throw std::invalid_argument("weight functions: a has wrong length");
    if (!b.empty() && b.size() != n)
        throw std::invalid_argument("weight functions: b has wrong length");
    for (double v : a)
        if (v < 0) throw std::invalid_argument("weight functions: a must be nonnegative");
    for (double v : b)
        if (v < 0) throw std::invalid_argument("weight functions: b must be nonnegative");
    if (!c.empty()) {
        if (c.size() != n) throw std::invalid_argument("weight functions: c has wrong size");
        for (std::size_t i = 0; i < n; ++i) {
            if (c[i].size() != n)
                throw std::invalid_argument("weight functions: c has wrong size");
            for (std::size_t j = 0; j < n; ++j) {
                if (c[i][j] < 0)
                    throw std::invalid_argument("weight functions: c must be nonnegative");
                if (c[i][j] != c[j][i])
                    throw std::invalid_argument("weight functions: c must be symmetric");
            }
        }
    }
}

Cplx zeta_c(const InteractionKernel& k, const WeightFunctions& w, std::size_t i, std::size_t j) {
    return checked_zeta(k, i, j) * std::exp(w.c_at(i, j));
}

Cplx integrate(const DiscretePolymerSpace& space,
               const std::function<Cplx(std::size_t)>& f,
               bool absolute) {
    Cplx acc(0.0);
    for (std::size_t i = 0; i < space.size(); ++i)
        acc += f(i) * (absolute ? Cplx(std::abs(space.weights[i])) : space.weights[i]);
    return acc;
}

McEstimate mc_integrate(const ContinuousPolymerSpace& space,
                        const std::function<double(const Point&)>& f,
                        std::uint64_t n_samples, std::uint64_t seed, int threads) {
    if (n_samples < 2) throw std::invalid_argument("mc_integrate: need n_samples >= 2");
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    struct ChunkSums {
        double s = 0.0, s2 = 0.0;
    };
    auto chunk_fn = [&](std::size_t c) {
        ChunkSums out;
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n_samples, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, i);
            const ContinuousSample s = space.draw(rng);
            const double v = s.weight * f(s.x);
            if (!std::isfinite(v))
                throw NumericalError("mc_integrate: non-finite integrand at sample " +
                                     std::to_string(i));
            out.s += v;
            out.s2 += v * v;
        }
        return out;
    };
    const auto chunks = parallel_map_chunks<ChunkSums>(n_chunks, chunk_fn, threads);
    double s = 0.0, s2 = 0.0;
    for (const auto& c : chunks) {
        s += c.s;
        s2 += c.s2;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = s / n;
    const double var = std::max(0.0, s2 / n - mean * mean);
    McEstimate e;
    e.mean = mean;
    e.std_error = std::sqrt(var / n);
    e.n_samples = n_samples;
    return e;
}

ContinuousPolymerSpace uniform_box_space(std::vector<std::pair<double, double>> box,
                                         double mass_density) {
    if (box.empty()) throw std::invalid_argument("uniform_box_space: empty box");
    double volume = 1.0;
    for (const auto& [lo, hi] : box) {
        if (hi <= lo) throw std::invalid_argument("uniform_box_space: degenerate axis");
        volume *= hi - lo;
    }
    ContinuousPolymerSpace s;
    s.dimension = static_cast<int>(box.size());
    s.total_mass = mass_density * volume;
    s.domain = box;
    s.draw = [box = std::move(box), w = mass_density * volume](RngStream& rng) {
        ContinuousSample out;
        out.x.reserve(box.size());
        for (const auto& [lo, hi] : box) out.x.push_back(rng.uniform(lo, hi));
        out.weight = w;
        return out;
    };
    return s;
}

Point uniform_ball_point(RngStream& rng, const Point& center, double radius) {
    const int d = static_cast<int>(center.size());
    // isotropic direction from gaussians, radius from U^(1/d)
    Point g(d);
    for (int i = 0; i < d; i += 2) {
        double a, b;
        rng.normal_pair(a, b);
        g[i] = a;
        if (i + 1 < d) g[i + 1] = b;
    }
    double norm2 = 0.0;
    for (double v : g) norm2 += v * v;
    double norm = std::sqrt(norm2);
    if (norm == 0.0) norm = 1.0;
    const double r = radius * std::pow(rng.uniform(), 1.0 / d);
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = center[i] + r * g[i] / norm;
    return x;
}

double ball_volume(int d, double radius) {
    if (d < 1) throw std::invalid_argument("ball_volume: dimension must be positive");
    const double pi = 3.14159265358979323846264338327950288;
    // closed forms up to d = 3, the Gamma formula beyond
    switch (d) {
        case 1: return 2.0 * radius;
        case 2: return pi * radius * radius;
        case 3: return 4.0 / 3.0 * pi * radius * radius * radius;
        default:
            return std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(radius, d);
    }
}

}  // namespace clusterkit

#include "clusterkit/expansion.hpp"

#include <cmath>

namespace clusterkit {

SeriesReport log_partition_series_mc(const ContinuousPolymerSpace& space,
                                     const ContinuousKernel& kernel, int max_order,
                                     const McSeriesOptions& opt) {
    if (max_order < 1 || max_order > kDefaultNMax)
        throw CapacityError("log_partition_series_mc: max_order must be in [1, n_max]");
    if (!kernel.stability_certified)
        throw std::invalid_argument("log_partition_series_mc: kernel is not stability certified");
    if (opt.n_samples < 2) throw std::invalid_argument("log_partition_series_mc: need samples");

    SeriesReport rep;
    rep.truncation_order = max_order;
    Cplx partial(0.0);
    constexpr std::uint64_t kChunk = 1024;
    for (int n = 1; n <= max_order; ++n) {
        const std::uint64_t n_chunks = (opt.n_samples + kChunk - 1) / kChunk;
        struct Sums {
            double s = 0.0, s2 = 0.0;
        };
        auto chunk_fn = [&](std::size_t c) {
            Sums out;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(opt.n_samples, lo + kChunk);
            std::vector<Point> pts(n);
            for (std::uint64_t i = lo; i < hi; ++i) {
                RngStream rng(opt.seed, (static_cast<std::uint64_t>(n) << 32) | i);
                double w = 1.0;
                for (int k = 0; k < n; ++k) {
                    ContinuousSample s = space.draw(rng);
                    pts[k] = std::move(s.x);
                    w *= s.weight;
                }
                EdgeWeightMatrix<double> zm(n);
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) {
                        const double z = kernel.zeta(pts[a], pts[b]);
                        if (std::abs(1.0 + z) > 1.0 + 1e-12)
                            throw NumericalError(
                                "stability certificate violated in sampled kernel");
                        zm.set(a, b, z);
                    }
                const double v = w * ursell(zm);
                if (!std::isfinite(v))
                    throw NumericalError("log_partition_series_mc: non-finite term at sample " +
                                         std::to_string(i));
                out.s += v;
                out.s2 += v * v;
            }
            return out;
        };
        const auto chunks = parallel_map_chunks<Sums>(n_chunks, chunk_fn, opt.threads);
        double s = 0.0, s2 = 0.0;
        for (const auto& c : chunks) {
            s += c.s;
            s2 += c.s2;
        }
        const double nn = static_cast<double>(opt.n_samples);
        const double mean = s / nn;
        const double var = std::max(0.0, s2 / nn - mean * mean);
        partial += mean;
        rep.orders.push_back({n, Cplx(mean), partial, std::sqrt(var / nn)});
    }
    return rep;
}

}  // namespace clusterkit

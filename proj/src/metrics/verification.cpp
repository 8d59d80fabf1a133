#include "creasegen/errors.hpp"
#include "creasegen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>

namespace creasegen::metrics {

namespace {

void require_scores(const ScoreSet& scores, const char* op) {
    if (scores.genuine.empty() || scores.impostor.empty()) {
        throw DomainError(std::string(op) + ": genuine and impostor scores must be non-empty");
    }
}

/// Number of elements of an ascending range strictly greater than t.
std::size_t count_above(const std::vector<double>& ascending, double t) {
    return static_cast<std::size_t>(ascending.end() - std::upper_bound(ascending.begin(), ascending.end(), t));
}

/// Largest k in [0, n-1] with k / n <= far.
std::size_t far_index(double far, std::size_t n) {
    const double nd = static_cast<double>(n);
    auto k = static_cast<std::size_t>(std::min(std::floor(far * nd), nd - 1.0));
    while (k + 1 < n && static_cast<double>(k + 1) / nd <= far) {
        ++k;
    }
    while (k > 0 && static_cast<double>(k) / nd > far) {
        --k;
    }
    return k;
}

TarResult tar_sorted(const std::vector<double>& genuine, const std::vector<double>& impostor, double far) {
    const std::size_t n = impostor.size();
    const std::size_t k = far_index(far, n);
    TarResult r;
    r.target_far = far;
    r.threshold = impostor[n - 1 - k];
    r.achieved_far = static_cast<double>(count_above(impostor, r.threshold)) / static_cast<double>(n);
    r.tar = static_cast<double>(count_above(genuine, r.threshold)) / static_cast<double>(genuine.size());
    r.under_resolved = far * static_cast<double>(n) < 1.0;
    return r;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TarResult tar_at_far(const ScoreSet& scores, double far) {
    if (!(far > 0.0 && far <= 1.0)) {
        throw DomainError("tar_at_far: far must lie in (0, 1]");
    }
    require_scores(scores, "tar_at_far");
    return tar_sorted(sorted(scores.genuine), sorted(scores.impostor), far);
}

EerResult eer(const ScoreSet& scores) {
    require_scores(scores, "eer");
    const std::vector<double> genuine = sorted(scores.genuine);
    const std::vector<double> impostor = sorted(scores.impostor);
    std::vector<double> thresholds;
    thresholds.reserve(genuine.size() + impostor.size());
    std::merge(genuine.begin(), genuine.end(), impostor.begin(), impostor.end(), std::back_inserter(thresholds));
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    const auto p = static_cast<std::int64_t>(genuine.size());
    const auto n = static_cast<std::int64_t>(impostor.size());

    // Integer counts at each threshold; FAR - FRR scaled by n * p is exact.
    const std::size_t m = thresholds.size();
    std::vector<std::int64_t> above(m);
    std::vector<std::int64_t> rejected(m);
    for (std::size_t i = 0, g = 0, im = 0; i < m; ++i) {
        while (g < genuine.size() && genuine[g] <= thresholds[i]) {
            ++g;
        }
        while (im < impostor.size() && impostor[im] <= thresholds[i]) {
            ++im;
        }
        above[i] = n - static_cast<std::int64_t>(im);
        rejected[i] = static_cast<std::int64_t>(g);
    }
    auto diff = [&](std::size_t i) { return above[i] * p - rejected[i] * n; };
    auto far_at = [&](std::int64_t count) { return static_cast<double>(count) / static_cast<double>(n); };

    // Virtual start below every score: FAR = 1, FRR = 0.
    std::int64_t prev_above = n;
    std::int64_t prev_diff = n * p;
    double prev_threshold = thresholds.front();
    for (std::size_t i = 0; i < m; ++i) {
        const std::int64_t d = diff(i);
        if (d == 0) {
            // The last threshold has FAR = 0 and FRR = 1, so the run of
            // zeros ends before it.
            std::size_t j = i + 1;
            while (diff(j) == 0) {
                ++j;
            }
            return {far_at(above[i]), 0.5 * (thresholds[i] + thresholds[j])};
        }
        if (d < 0) {
            const double w = static_cast<double>(prev_diff) / static_cast<double>(prev_diff - d);
            const double far0 = far_at(prev_above);
            const double far1 = far_at(above[i]);
            return {far0 + w * (far1 - far0), prev_threshold + w * (thresholds[i] - prev_threshold)};
        }
        prev_above = above[i];
        prev_diff = d;
        prev_threshold = thresholds[i];
    }
    throw DomainError("eer: no crossing found");
}

std::vector<RocPoint> roc_curve(const ScoreSet& scores, std::size_t n_points) {
    if (n_points < 2) {
        throw DomainError("roc_curve: n_points must be at least 2");
    }
    require_scores(scores, "roc_curve");
    const std::vector<double> genuine = sorted(scores.genuine);
    const std::vector<double> impostor = sorted(scores.impostor);
    const double lo = std::log(1.0 / static_cast<double>(impostor.size()));
    std::vector<RocPoint> curve;
    curve.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double far = std::exp(lo * (1.0 - static_cast<double>(i) / static_cast<double>(n_points - 1)));
        if (i == 0) {
            far = 1.0 / static_cast<double>(impostor.size());
        } else if (i + 1 == n_points) {
            far = 1.0;
        }
        const TarResult r = tar_sorted(genuine, impostor, far);
        curve.push_back({far, r.tar, r.threshold, r.achieved_far});
    }
    return curve;
}

std::string roc_csv(const std::vector<RocPoint>& curve) {
    std::string out = "far,tar\n";
    char buf[64];
    for (const RocPoint& p : curve) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.far, p.tar);
        out += buf;
    }
    return out;
}

} // namespace creasegen::metrics

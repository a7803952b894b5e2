#include "fragnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "fragnet/error.hpp"

namespace fragnet {

Ccdf ccdf(const std::vector<double>& values) {
    if (values.empty()) {
        throw Error(ErrorKind::empty_input, "ccdf of empty sample");
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::non_positive_value,
                        "ccdf requires positive finite values");
        }
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    Ccdf out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        // #{v >= sorted[i]} = N - (count strictly below)
        out.points.emplace_back(sorted[i],
                                (n - static_cast<double>(i)) / n);
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        i = j;
    }
    return out;
}

namespace {

// Merge sort on the y sequence counting the exchanges needed, i.e. the
// number of discordant pairs (Knight's algorithm).
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf,
                          std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t swaps = merge_count(v, buf, lo, mid) +
                          merge_count(v, buf, mid, hi);
    std::size_t a = lo, b = mid, o = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) {
            swaps += mid - a;
            buf[o++] = v[b++];
        } else {
            buf[o++] = v[a++];
        }
    }
    while (a < mid) buf[o++] = v[a++];
    while (b < hi) buf[o++] = v[b++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
              buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

std::uint64_t tie_pairs(const std::vector<double>& sorted_keys) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i < sorted_keys.size()) {
        std::size_t j = i;
        while (j < sorted_keys.size() && sorted_keys[j] == sorted_keys[i]) ++j;
        const std::uint64_t t = j - i;
        total += t * (t - 1) / 2;
        i = j;
    }
    return total;
}

}  // namespace

KendallResult kendall_tau(const std::vector<double>& x,
                          const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        throw Error(ErrorKind::length_mismatch,
                    "kendall_tau needs two equal-length samples with n >= 2");
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
        std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
        throw Error(ErrorKind::degenerate_input,
                    "kendall_tau undefined for a constant sample");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    // tie counts: n1 over x groups, n2 over y groups, n3 over joint groups
    std::uint64_t n1 = 0, n3 = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && x[order[j]] == x[order[i]]) ++j;
            const std::uint64_t t = j - i;
            n1 += t * (t - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && y[order[b]] == y[order[a]]) ++b;
                const std::uint64_t u = b - a;
                n3 += u * (u - 1) / 2;
                a = b;
            }
            i = j;
        }
    }
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    std::vector<double> buf(n);
    const std::uint64_t swaps = merge_count(ys, buf, 0, n);
    // ys is sorted now
    const std::uint64_t n2 = tie_pairs(ys);

    const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const double concordant_minus_discordant =
        static_cast<double>(n0) - static_cast<double>(n1) -
        static_cast<double>(n2) + static_cast<double>(n3) -
        2.0 * static_cast<double>(swaps);
    const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                         std::sqrt(static_cast<double>(n0 - n2));

    KendallResult res;
    res.tau = concordant_minus_discordant / denom;
    const double nn = static_cast<double>(n);
    const double sigma = std::sqrt(2.0 * (2.0 * nn + 5.0) /
                                   (9.0 * nn * (nn - 1.0)));
    res.sigma_multiples = res.tau / sigma;
    return res;
}

TailFit loglog_fit(const std::vector<double>& x,
                   const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size()) {
        throw Error(ErrorKind::length_mismatch,
                    "loglog_fit needs equal-length samples");
    }
    if (n < 3) {
        throw Error(ErrorKind::degenerate_input,
                    "loglog_fit needs at least 3 points");
    }
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) ||
            !std::isfinite(y[i])) {
            throw Error(ErrorKind::non_positive_value,
                        "loglog_fit requires positive finite values");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double nn = static_cast<double>(n);
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / nn;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / nn;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw Error(ErrorKind::degenerate_input,
                    "loglog_fit undefined when all x coincide");
    }
    TailFit fit;
    fit.n_points = static_cast<int>(n);
    fit.exponent = sxy / sxx;

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (ly[i] - my) - fit.exponent * (lx[i] - mx);
        ssr += r * r;
    }
    const double var = ssr / (nn - 2.0);
    const double se = std::sqrt(var / sxx);
    const boost::math::students_t dist(nn - 2.0);
    fit.ci95 = boost::math::quantile(dist, 0.975) * se;
    return fit;
}

}  // namespace fragnet

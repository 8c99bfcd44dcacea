#pragma once

#include <omp.h>

#include <climits>
#include <optional>
#include <utility>
#include <vector>

// Pair-scan kernels shared by the cover checkers. Each kernel has a serial
// reference and an OpenMP version; both return the lexicographically first
// hit so results do not depend on thread scheduling.

namespace treechain::kernels {

enum class Exec { Serial, Parallel };

struct PairHit {
    int row = 0;
    int col = 0;

    friend bool operator==(const PairHit&, const PairHit&) = default;
};

template <typename Bad>
std::optional<PairHit> first_pair_serial(int rows, int cols, Bad&& bad)
{
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bad(r, c)) return PairHit{r, c};
    return std::nullopt;
}

template <typename Bad>
std::optional<PairHit> first_pair_parallel(int rows, int cols, Bad&& bad)
{
    long long best = LLONG_MAX;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : best)
    for (int r = 0; r < rows; ++r) {
        if (static_cast<long long>(r) * cols >= best) continue;
        for (int c = 0; c < cols; ++c) {
            if (bad(r, c)) {
                long long at = static_cast<long long>(r) * cols + c;
                if (at < best) best = at;
                break;
            }
        }
    }
    if (best == LLONG_MAX) return std::nullopt;
    return PairHit{static_cast<int>(best / cols), static_cast<int>(best % cols)};
}

template <typename Bad>
std::optional<PairHit> first_pair(Exec exec, int rows, int cols, Bad&& bad)
{
    if (exec == Exec::Serial) return first_pair_serial(rows, cols, bad);
    return first_pair_parallel(rows, cols, bad);
}

/// First hit over unordered pairs {r, c} with r < c.
template <typename Bad>
std::optional<PairHit> first_upper_pair(Exec exec, int n, Bad&& bad)
{
    return first_pair(exec, n, n, [&](int r, int c) { return r < c && bad(r, c); });
}

/// Minimum of `value(r, c)` over pairs accepted by `keep`, with an optional
/// cheap lower bound used to skip pairs that cannot improve the minimum.
/// T must be totally ordered; returns nullopt when no pair is kept.
template <typename T, typename Keep, typename Value, typename Bound>
std::optional<std::pair<T, PairHit>> min_over_pairs(Exec exec, int rows, int cols, Keep&& keep, Value&& value, Bound&& lower_bound)
{
    int threads = exec == Exec::Serial ? 1 : omp_get_max_threads();
    std::vector<std::optional<std::pair<T, PairHit>>> local(threads);
    auto scan_row = [&](int r, std::optional<std::pair<T, PairHit>>& best) {
        for (int c = 0; c < cols; ++c) {
            if (!keep(r, c)) continue;
            if (best && !(lower_bound(r, c) < best->first)) continue;
            T v = value(r, c);
            if (!best || v < best->first) best = std::make_pair(std::move(v), PairHit{r, c});
        }
    };
    if (exec == Exec::Serial) {
        for (int r = 0; r < rows; ++r) scan_row(r, local[0]);
    } else {
#pragma omp parallel for schedule(dynamic, 2)
        for (int r = 0; r < rows; ++r) scan_row(r, local[omp_get_thread_num()]);
    }
    std::optional<std::pair<T, PairHit>> best;
    for (auto& candidate : local) {
        if (!candidate) continue;
        bool better = !best || candidate->first < best->first
                      || (!(best->first < candidate->first)
                          && std::make_pair(candidate->second.row, candidate->second.col)
                                 < std::make_pair(best->second.row, best->second.col));
        if (better) best = std::move(candidate);
    }
    return best;
}

} // namespace treechain::kernels

#include "fogalloc/assignment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fogalloc {

CostMatrix build_cost_matrix(const CostTable& fog, const CostTable& cloud) {
    if (fog.size() != cloud.size())
        throw std::invalid_argument(
            fmt::format("build_cost_matrix: {} fog rows vs {} cloud rows", fog.size(), cloud.size()));
    const std::size_t rows = fog.size();
    const std::size_t n_fog = rows ? fog[0].size() : 0;
    const std::size_t n_cloud = rows ? cloud[0].size() : 0;
    for (std::size_t r = 0; r < rows; ++r)
        if (fog[r].size() != n_fog || cloud[r].size() != n_cloud)
            throw std::invalid_argument(fmt::format("build_cost_matrix: ragged row {}", r));

    double max_finite = 0.0;
    for (const auto* table : {&fog, &cloud})
        for (const auto& row : *table)
            for (const auto& cell : row)
                if (cell) max_finite = std::max(max_finite, std::abs(*cell));

    CostMatrix m;
    m.big_m = 2.0 * (static_cast<double>(rows) * max_finite + 1.0);
    m.cost = Matrix(rows, n_fog + rows * n_cloud, m.big_m);
    m.column_nodes.reserve(m.cost.cols);
    for (std::size_t n = 0; n < n_fog; ++n) m.column_nodes.push_back(NodeRef::fog(n));
    for (std::size_t c = 0; c < n_cloud; ++c)
        for (std::size_t k = 0; k < rows; ++k) m.column_nodes.push_back(NodeRef::cloud(c));

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t n = 0; n < n_fog; ++n)
            if (fog[r][n]) m.cost(r, n) = *fog[r][n];
        for (std::size_t c = 0; c < n_cloud; ++c)
            if (cloud[r][c])
                for (std::size_t k = 0; k < rows; ++k) m.cost(r, n_fog + c * rows + k) = *cloud[r][c];
    }
    return m;
}

Assignment hungarian(const Matrix& cost) {
    const std::size_t n = cost.rows;
    const std::size_t m = cost.cols;
    if (n > m) throw std::invalid_argument(fmt::format("hungarian: {} rows exceed {} columns", n, m));
    for (double v : cost.data)
        if (!std::isfinite(v)) throw std::invalid_argument("hungarian: non-finite cost entry");

    Assignment out;
    if (n == 0) return out;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
    std::vector<double> min_slack(m + 1);
    std::vector<char> used(m + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        owner[0] = i;
        std::size_t j0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = owner[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double slack = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (slack < min_slack[j]) {
                    min_slack[j] = slack;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    out.column_of_row.assign(n, 0);
    for (std::size_t j = 1; j <= m; ++j)
        if (owner[j] != 0) out.column_of_row[owner[j] - 1] = j - 1;
    for (std::size_t r = 0; r < n; ++r) out.total_cost += cost(r, out.column_of_row[r]);
    return out;
}

std::vector<NodeRef> extract_allocation(const Assignment& assignment, const CostMatrix& matrix) {
    std::vector<NodeRef> nodes;
    nodes.reserve(assignment.column_of_row.size());
    for (std::size_t col : assignment.column_of_row) nodes.push_back(matrix.column_nodes.at(col));
    return nodes;
}

namespace {

void enumerate(const Matrix& cost, std::size_t row, std::vector<std::size_t>& current, std::vector<char>& taken,
               double partial, bool prune, Assignment& best) {
    if (prune && partial >= best.total_cost) return;
    if (row == cost.rows) {
        if (partial >= best.total_cost) return;
        best.total_cost = partial;
        best.column_of_row = current;
        return;
    }
    for (std::size_t c = 0; c < cost.cols; ++c) {
        if (taken[c]) continue;
        taken[c] = 1;
        current[row] = c;
        enumerate(cost, row + 1, current, taken, partial + cost(row, c), prune, best);
        taken[c] = 0;
    }
}

}  // namespace

Assignment brute_force_assign(const Matrix& cost) {
    if (cost.rows > 8) throw std::invalid_argument("brute_force_assign: more than 8 rows");
    if (cost.rows > cost.cols) throw std::invalid_argument("brute_force_assign: rows exceed columns");
    Assignment best;
    best.total_cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> current(cost.rows, 0);
    std::vector<char> taken(cost.cols, 0);
    // Branch-and-bound is only valid when partial sums cannot decrease.
    const bool prune = std::all_of(cost.data.begin(), cost.data.end(), [](double v) { return v >= 0.0; });
    enumerate(cost, 0, current, taken, 0.0, prune, best);
    if (cost.rows == 0) best.total_cost = 0.0;
    return best;
}

}  // namespace fogalloc

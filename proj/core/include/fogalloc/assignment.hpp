#pragma once

// Linear assignment of requests to nodes.
//
// Rows are requests. The first |F| columns are fog nodes; each cloud then
// contributes |R| identical columns so any number of requests can land on
// it while every fog node takes at most one.

#include "fogalloc/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fogalloc {

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct CostMatrix {
    Matrix cost;
    std::vector<NodeRef> column_nodes;
    /// Finite sentinel for infeasible cells, larger than any assignment made
    /// only of feasible cells.
    double big_m = 0.0;

    bool is_big_m(std::size_t r, std::size_t c) const { return cost(r, c) == big_m; }
};

/// One entry per (request, node); std::nullopt marks an infeasible pair.
using CostTable = std::vector<std::vector<std::optional<double>>>;

/// Builds the |R| x (|F| + |R||C|) matrix. `fog` is |R| x |F| and `cloud` is
/// |R| x |C|. Throws std::invalid_argument on ragged input.
CostMatrix build_cost_matrix(const CostTable& fog, const CostTable& cloud);

struct Assignment {
    std::vector<std::size_t> column_of_row;
    double total_cost = 0.0;
};

/// Minimum-cost assignment of every row to a distinct column (rows <= cols)
/// using the shortest augmenting path form of the Hungarian method,
/// O(rows^2 * cols). Ties are broken deterministically by scan order.
/// Throws std::invalid_argument if rows > cols or an entry is not finite.
Assignment hungarian(const Matrix& cost);

/// Node chosen for each row; replicated cloud columns collapse onto their
/// cloud.
std::vector<NodeRef> extract_allocation(const Assignment& assignment, const CostMatrix& matrix);

/// Exhaustive search over injective row -> column maps. Test oracle; rows
/// must not exceed 8.
Assignment brute_force_assign(const Matrix& cost);

}  // namespace fogalloc

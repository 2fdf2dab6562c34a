#pragma once

#include <cstddef>
#include <vector>

#include "hypctrl/core.hpp"

namespace hypctrl {

/// Values of one cell's reconstruction polynomial at the three Gauss-Lobatto
/// nodes (left edge, center, right edge).
template <typename T>
struct NodeValues {
    T left{};
    T center{};
    T right{};
};

/// Simpson average (left + 4 center + right) / 6; equals the cell average of
/// any quadratic with these node values.
template <typename T>
T simpson_average(const NodeValues<T>& v) {
    return (1.0 / 6.0) * (v.left + 4.0 * v.center + v.right);
}

enum class Side { Left, Right };

/// Linear weights and regularization shared by the interior and boundary
/// reconstructions.
struct CwenoWeights {
    static constexpr double d0 = 0.5;
    static constexpr double d1 = 0.25;
    static constexpr double d2 = 0.25;
};

/// Third-order CWENO with Z-weights on the central stencil (j-1, j, j+1).
/// Returns the node values of the reconstruction in the middle cell.
NodeValues<double> cweno3_interior(double a_minus, double a_0, double a_plus, double dx);

/// One-sided third-order reconstruction for a boundary cell.
/// side == Left:  (a_1, a_2, a_3) are cells 1, 2, 3; the result lives in cell 1.
/// side == Right: (a_1, a_2, a_3) are cells N-2, N-1, N; the result lives in cell N.
NodeValues<double> cwenob_boundary(double a_1, double a_2, double a_3, double dx, Side side);

/// Per-cell node values for the whole domain plus the outgoing boundary traces.
struct Reconstruction {
    std::vector<NodeValues<Pair>> cells;

    /// R+ leaving through x = L (right node of the last cell).
    double trace_out_plus() const { return cells.back().right.plus; }
    /// R- leaving through x = 0 (left node of the first cell).
    double trace_out_minus() const { return cells.front().left.minus; }

    std::size_t size() const { return cells.size(); }
};

Reconstruction reconstruct_all(const RiemannState& state, const Grid& grid);

}  // namespace hypctrl

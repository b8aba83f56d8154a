#include "lmcx/homology.hpp"

#include <algorithm>
#include <cmath>

namespace lmcx {

Eigen::SparseMatrix<double> hodge_laplacian_1(const BoundaryMatrices& b) {
    const Eigen::SparseMatrix<double> b1 = b.b1.cast<double>();
    const Eigen::SparseMatrix<double> b2 = b.b2.cast<double>();
    Eigen::SparseMatrix<double> l1 = Eigen::SparseMatrix<double>(b1.transpose()) * b1;
    if (b2.cols() > 0) l1 += b2 * Eigen::SparseMatrix<double>(b2.transpose());
    return l1;
}

FlowResult flow_to_kernel(const Eigen::SparseMatrix<double>& l1, const Eigen::VectorXd& x0,
                          double tol, long max_iters) {
    const long m = l1.rows();
    FlowResult result;
    result.x = x0;
    if (m == 0) {
        result.converged = true;
        return result;
    }
    if (max_iters < 0) max_iters = 200 * m;

    // Gershgorin upper bound on lambda_max keeps explicit Euler contractive.
    double bound = 0.0;
    for (int col = 0; col < l1.outerSize(); ++col) {
        double row_sum = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(l1, col); it; ++it)
            row_sum += std::abs(it.value());
        bound = std::max(bound, row_sum);
    }
    if (bound == 0.0) {
        result.converged = true;
        return result;
    }
    const double h = 1.0 / bound;

    Eigen::VectorXd residual(m);
    for (long iter = 0; iter <= max_iters; ++iter) {
        residual.noalias() = l1 * result.x;
        result.residual = residual.lpNorm<Eigen::Infinity>();
        result.iterations = iter;
        if (result.residual <= tol) {
            result.converged = true;
            return result;
        }
        if (iter == max_iters) break;
        result.x -= h * residual;
    }
    return result;
}

Eigen::VectorXd tighten_l1(const Eigen::VectorXd& x, const Eigen::SparseMatrix<int>& b2,
                           const TightenParams& params) {
    if (b2.cols() == 0 || x.size() == 0) return x;

    const Eigen::SparseMatrix<double> b2d = b2.cast<double>();
    const double alpha0 = params.alpha0_scale * x.lpNorm<Eigen::Infinity>();
    if (alpha0 == 0.0) return x;

    Eigen::VectorXd z = Eigen::VectorXd::Zero(b2.cols());
    Eigen::VectorXd best_y = x;
    double best_norm = x.lpNorm<1>();

    Eigen::VectorXd y(x.size());
    Eigen::VectorXd sign(x.size());
    for (long k = 1; k <= params.max_iters; ++k) {
        y.noalias() = b2d * z;
        y += x;
        const double norm1 = y.lpNorm<1>();
        if (norm1 < best_norm) {
            best_norm = norm1;
            best_y = y;
        }
        for (Eigen::Index i = 0; i < y.size(); ++i)
            sign[i] = y[i] > 0.0 ? 1.0 : (y[i] < 0.0 ? -1.0 : 0.0);
        const double alpha = alpha0 / std::sqrt(static_cast<double>(k));
        z.noalias() -= alpha * (b2d.transpose() * sign);
    }
    return best_y;
}

HoleCycleSet extract_holes(const Eigen::VectorXd& y, const BoundaryMatrices& b,
                           double zeta_factor,
                           const std::map<LandmarkId, bool>& obstacle_adjacent) {
    HoleCycleSet holes;
    holes.y = y;
    const long m = y.size();
    if (m == 0) return holes;

    double mean = 0.0;
    for (long i = 0; i < m; ++i) mean += std::abs(y[i]);
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (long i = 0; i < m; ++i) {
        const double d = std::abs(y[i]) - mean;
        var += d * d;
    }
    const double zeta = zeta_factor * std::sqrt(var / static_cast<double>(m));

    std::vector<Edge> selected;
    for (long i = 0; i < m; ++i)
        if (std::abs(y[i]) > zeta) selected.push_back(b.edge_index[i]);
    if (selected.empty()) return holes;

    std::vector<LandmarkId> verts;
    for (const auto& e : selected) {
        verts.push_back(e[0]);
        verts.push_back(e[1]);
    }
    Graph g(std::move(verts));
    for (const auto& e : selected) g.add_edge(e[0], e[1]);

    for (const auto& comp_vertices : connected_components(g)) {
        HoleComponent comp;
        comp.vertices.insert(comp_vertices.begin(), comp_vertices.end());
        for (const auto& e : selected)
            if (comp.vertices.count(e[0])) comp.edges.insert(e);
        bool all_obstacle = true;
        for (const LandmarkId v : comp.vertices) {
            const auto it = obstacle_adjacent.find(v);
            if (it == obstacle_adjacent.end() || !it->second) {
                all_obstacle = false;
                break;
            }
        }
        if (!all_obstacle) holes.components.push_back(std::move(comp));
    }
    return holes;
}

}  // namespace lmcx

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <set>
#include <vector>

#include "lmcx/complex.hpp"

namespace lmcx {

// First-order Hodge Laplacian L1 = B1^T B1 + B2 B2^T. Symmetric positive
// semidefinite; its kernel dimension equals the first Betti number.
Eigen::SparseMatrix<double> hodge_laplacian_1(const BoundaryMatrices& b);

struct FlowResult {
    Eigen::VectorXd x;
    double residual = 0.0;  // ||L1 x||_inf at exit
    long iterations = 0;
    bool converged = false;
};

// Integrates x' = -L1 x by explicit Euler with step 1/lambda_max (Gershgorin
// bound) until ||L1 x||_inf <= tol. The limit is the projection of x0 onto
// ker L1; non-convergence within max_iters (default 200*m) is reported, not
// thrown.
FlowResult flow_to_kernel(const Eigen::SparseMatrix<double>& l1, const Eigen::VectorXd& x0,
                          double tol = 1e-9, long max_iters = -1);

struct TightenParams {
    double alpha0_scale = 0.01;  // alpha_0 = scale * ||x||_inf
    long max_iters = 4000;
};

// Shrinks a harmonic cycle toward the l1-tightest homologous cycle via the
// subgradient iteration z <- z - alpha_k B2^T sgn(B2 z + x) with z0 = 0 and
// alpha_k = alpha_0 / sqrt(k). Returns y = x + B2 z_best for the best-seen
// iterate, so ||y||_1 <= ||x||_1 always.
Eigen::VectorXd tighten_l1(const Eigen::VectorXd& x, const Eigen::SparseMatrix<int>& b2,
                           const TightenParams& params = {});

struct HoleComponent {
    std::set<LandmarkId> vertices;
    std::set<Edge> edges;
};

struct HoleCycleSet {
    std::vector<HoleComponent> components;  // ordered by smallest vertex id
    Eigen::VectorXd y;

    bool empty() const { return components.empty(); }
};

// Thresholds |y| at zeta = zeta_factor * stddev(|y|), groups the surviving
// edges into connected components, and drops components whose vertices are all
// obstacle-adjacent (those bound real obstacles, not unexplored regions).
HoleCycleSet extract_holes(const Eigen::VectorXd& y, const BoundaryMatrices& b,
                           double zeta_factor,
                           const std::map<LandmarkId, bool>& obstacle_adjacent);

}  // namespace lmcx

// Copyright 2026 The procmat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROCMAT_SOLVER_HPP
#define PROCMAT_SOLVER_HPP

#include <string>
#include <vector>

#include "procmat/labeled_operator.hpp"

namespace procmat {

/// Named Hermitian block variables of a feasibility problem.
struct BlockSpec {
    std::string name;
    int side = 1;
    double trace_bound = 16.0;  // bound on Tr of any feasible value, for certificates
};

struct BlockVec {
    std::vector<Mat> blocks;

    static BlockVec zeros(const std::vector<BlockSpec> &specs);
    BlockVec &operator+=(const BlockVec &o);
    BlockVec &operator-=(const BlockVec &o);
    BlockVec &operator*=(double s);
    double dot(const BlockVec &o) const;  // Re sum_k Tr[A_k^dag B_k]
    double norm() const;
    void hermitize();
    void clip_to_psd();
    void clip_to_nsd();
    /// Most negative eigenvalue over all blocks (0 when all PSD).
    double min_eigenvalue() const;
    /// sum_k max(lambda_max(block_k), 0) * weight_k.
    double weighted_positive_part(const std::vector<double> &weights) const;
};

/// One linear term of an equation: coeff times the block, with some of its
/// wires traced out, the rest routed to equation wire positions, and identity
/// factors inserted at unrouted equation positions.
struct WireMapTerm {
    int block = 0;
    double coeff = 1.0;
    std::vector<int> block_dims;     // wire dims of the block, in order
    std::vector<int> eq_from_block;  // per equation wire: block position or -1 (insert)

    void apply(const Mat &x, const std::vector<int> &eq_dims, Mat &out) const;
    void apply_adjoint(const Mat &eq_value, const std::vector<int> &eq_dims, Mat &out) const;
};

/// Scalar (1x1 equation) term coeff * Tr[g x] with Hermitian g.
struct TraceTerm {
    int block = 0;
    double coeff = 1.0;
    Mat g;
};

struct Equation {
    std::string name;
    std::vector<int> eq_dims;  // empty means a scalar equation
    std::vector<WireMapTerm> wire_terms;
    std::vector<TraceTerm> trace_terms;
    Mat rhs;

    Eigen::Index side() const;
};

/// The affine constraints {x : A x = b} with matrix-free apply/adjoint.
struct ConstraintSet {
    std::vector<BlockSpec> blocks;
    std::vector<Equation> equations;

    std::vector<Mat> apply(const BlockVec &x) const;
    BlockVec apply_adjoint(const std::vector<Mat> &y) const;
    std::vector<Mat> residuals(const BlockVec &x) const;  // A x - b
    double residual_max_abs(const BlockVec &x) const;
};

/// Least-squares projector onto {Ax = b}: factors A A^T once; reusable across
/// constraint sets that share the structure (same A) but differ in rhs.
class AffineProjector {
   public:
    explicit AffineProjector(const ConstraintSet &cs);

    BlockVec project(const ConstraintSet &cs, const BlockVec &x) const;
    /// Component of x in the row space of A (orthogonal complement of the
    /// affine set's direction space).
    BlockVec row_space_component(const ConstraintSet &cs, const BlockVec &x) const;

   private:
    Eigen::VectorXd pack(const std::vector<Mat> &eq_values) const;
    std::vector<Mat> unpack(const Eigen::VectorXd &v) const;
    std::vector<Eigen::Index> offsets_;
    std::vector<Eigen::Index> sides_;
    Eigen::Index dim_ = 0;
    Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

enum class SolverStatus { Feasible, Infeasible, Inconclusive };

const char *solver_status_name(SolverStatus s);

struct FeasibilityOptions {
    double feas_tol = 1e-7;
    double infeas_margin = 1e-6;
    int max_iterations = 50000;
    int witness_iterations = 6000;
    int check_every = 25;
    // Switch to the witness phase after this many consecutive stalled
    // residual checks.
    int stall_checks = 8;
};

struct FeasibilityOutcome {
    SolverStatus status = SolverStatus::Inconclusive;
    BlockVec point;       // PSD-side iterate (feasible decomposition when Feasible)
    double residual = 0;  // max constraint violation of `point`
    int iterations = 0;
    // Witness data, populated when a certificate was attempted: a unit block
    // vector with negative-semidefinite blocks, orthogonal to the constraint
    // null space, whose value on the affine set exceeds the certified margin.
    BlockVec witness;
    double witness_value = 0;   // <witness, affine point>
    double witness_margin = 0;  // certified lower bound on the cone/affine gap
    double witness_psd_defect = 0;
    double witness_null_defect = 0;
};

/// Alternating projections between the PSD cone product and the affine
/// constraint set (Dykstra correction on the cone side); when stalled,
/// attempts a separating-hyperplane certificate from the plain
/// alternating-projection gap pair. Infeasibility is only reported with a
/// verified certificate.
FeasibilityOutcome solve_feasibility(
    const ConstraintSet &cs, const FeasibilityOptions &opt, const AffineProjector *shared = nullptr);

/// Post-hoc check of a returned decomposition: max of constraint violation,
/// Hermiticity defect and PSD defect over all blocks.
double verify_decomposition(const ConstraintSet &cs, const BlockVec &point);

}  // namespace procmat

#endif

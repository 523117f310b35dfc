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

#include "procmat/solver.hpp"

#include <cmath>
#include <memory>

namespace procmat {

namespace {

int product_of(const std::vector<int> &dims) {
    int p = 1;
    for (int d : dims) {
        p *= d;
    }
    return p;
}

void decompose(int index, const std::vector<int> &dims, std::vector<int> &digits) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

void clip_spectrum(Mat &m, bool keep_positive) {
    Mat h = (m + m.adjoint()) / 2.0;
    if (h.rows() == 1) {
        double v = h(0, 0).real();
        m(0, 0) = keep_positive ? std::max(v, 0.0) : std::min(v, 0.0);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        ev(i) = keep_positive ? std::max(ev(i), 0.0) : std::min(ev(i), 0.0);
    }
    m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eig_of(const Mat &m) {
    Mat h = (m + m.adjoint()) / 2.0;
    if (h.rows() == 1) {
        return h(0, 0).real();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eig_of(const Mat &m) {
    Mat h = (m + m.adjoint()) / 2.0;
    if (h.rows() == 1) {
        return h(0, 0).real();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

}  // namespace

BlockVec BlockVec::zeros(const std::vector<BlockSpec> &specs) {
    BlockVec v;
    v.blocks.reserve(specs.size());
    for (const auto &s : specs) {
        v.blocks.push_back(Mat::Zero(s.side, s.side));
    }
    return v;
}

BlockVec &BlockVec::operator+=(const BlockVec &o) {
    for (size_t k = 0; k < blocks.size(); ++k) {
        blocks[k] += o.blocks[k];
    }
    return *this;
}

BlockVec &BlockVec::operator-=(const BlockVec &o) {
    for (size_t k = 0; k < blocks.size(); ++k) {
        blocks[k] -= o.blocks[k];
    }
    return *this;
}

BlockVec &BlockVec::operator*=(double s) {
    for (auto &b : blocks) {
        b *= s;
    }
    return *this;
}

double BlockVec::dot(const BlockVec &o) const {
    double total = 0;
    for (size_t k = 0; k < blocks.size(); ++k) {
        total += blocks[k].conjugate().cwiseProduct(o.blocks[k]).sum().real();
    }
    return total;
}

double BlockVec::norm() const {
    return std::sqrt(std::max(0.0, dot(*this)));
}

void BlockVec::hermitize() {
    for (auto &b : blocks) {
        b = ((b + b.adjoint().eval()) / 2.0).eval();
    }
}

void BlockVec::clip_to_psd() {
    for (auto &b : blocks) {
        clip_spectrum(b, true);
    }
}

void BlockVec::clip_to_nsd() {
    for (auto &b : blocks) {
        clip_spectrum(b, false);
    }
}

double BlockVec::min_eigenvalue() const {
    double worst = 0;
    for (const auto &b : blocks) {
        worst = std::min(worst, min_eig_of(b));
    }
    return worst;
}

double BlockVec::weighted_positive_part(const std::vector<double> &weights) const {
    double total = 0;
    for (size_t k = 0; k < blocks.size(); ++k) {
        total += std::max(max_eig_of(blocks[k]), 0.0) * weights[k];
    }
    return total;
}

void WireMapTerm::apply(const Mat &x, const std::vector<int> &eq_dims, Mat &out) const {
    const int eq_wires = static_cast<int>(eq_dims.size());
    const int block_wires = static_cast<int>(block_dims.size());
    std::vector<bool> routed(block_wires, false);
    for (int src : eq_from_block) {
        if (src >= 0) {
            routed[src] = true;
        }
    }
    std::vector<int> traced, traced_dims;
    for (int k = 0; k < block_wires; ++k) {
        if (!routed[k]) {
            traced.push_back(k);
            traced_dims.push_back(block_dims[k]);
        }
    }
    const int eq_side = product_of(eq_dims);
    const int t_total = product_of(traced_dims);
    std::vector<int> er(eq_wires), ec(eq_wires), td(traced.size());
    std::vector<int> strides(block_wires, 1);
    for (int k = block_wires - 2; k >= 0; --k) {
        strides[k] = strides[k + 1] * block_dims[k + 1];
    }
    for (int r = 0; r < eq_side; ++r) {
        decompose(r, eq_dims, er);
        for (int c = 0; c < eq_side; ++c) {
            decompose(c, eq_dims, ec);
            bool delta_ok = true;
            for (int q = 0; q < eq_wires && delta_ok; ++q) {
                if (eq_from_block[q] < 0) {
                    delta_ok = er[q] == ec[q];
                }
            }
            if (!delta_ok) {
                continue;
            }
            complex val(0, 0);
            for (int t = 0; t < t_total; ++t) {
                decompose(t, traced_dims, td);
                int ri = 0, ci = 0;
                for (int q = 0; q < eq_wires; ++q) {
                    int src = eq_from_block[q];
                    if (src >= 0) {
                        ri += er[q] * strides[src];
                        ci += ec[q] * strides[src];
                    }
                }
                for (size_t s = 0; s < traced.size(); ++s) {
                    ri += td[s] * strides[traced[s]];
                    ci += td[s] * strides[traced[s]];
                }
                val += x(ri, ci);
            }
            out(r, c) += coeff * val;
        }
    }
}

void WireMapTerm::apply_adjoint(const Mat &eq_value, const std::vector<int> &eq_dims, Mat &out) const {
    const int eq_wires = static_cast<int>(eq_dims.size());
    const int block_wires = static_cast<int>(block_dims.size());
    std::vector<bool> routed(block_wires, false);
    for (int src : eq_from_block) {
        if (src >= 0) {
            routed[src] = true;
        }
    }
    std::vector<int> traced;
    for (int k = 0; k < block_wires; ++k) {
        if (!routed[k]) {
            traced.push_back(k);
        }
    }
    const int block_side = product_of(block_dims);
    std::vector<int> br(block_wires), bc(block_wires);
    std::vector<int> eq_strides(eq_wires, 1);
    for (int k = eq_wires - 2; k >= 0; --k) {
        eq_strides[k] = eq_strides[k + 1] * eq_dims[k + 1];
    }
    std::vector<int> inserts, insert_dims;
    for (int q = 0; q < eq_wires; ++q) {
        if (eq_from_block[q] < 0) {
            inserts.push_back(q);
            insert_dims.push_back(eq_dims[q]);
        }
    }
    const int i_total = product_of(insert_dims);
    std::vector<int> idg(inserts.size());
    for (int r = 0; r < block_side; ++r) {
        decompose(r, block_dims, br);
        for (int c = 0; c < block_side; ++c) {
            decompose(c, block_dims, bc);
            bool delta_ok = true;
            for (int k : traced) {
                delta_ok = delta_ok && br[k] == bc[k];
            }
            if (!delta_ok) {
                continue;
            }
            complex val(0, 0);
            for (int t = 0; t < i_total; ++t) {
                decompose(t, insert_dims, idg);
                int ri = 0, ci = 0;
                for (int q = 0; q < eq_wires; ++q) {
                    int src = eq_from_block[q];
                    if (src >= 0) {
                        ri += br[src] * eq_strides[q];
                        ci += bc[src] * eq_strides[q];
                    }
                }
                for (size_t s = 0; s < inserts.size(); ++s) {
                    ri += idg[s] * eq_strides[inserts[s]];
                    ci += idg[s] * eq_strides[inserts[s]];
                }
                val += eq_value(ri, ci);
            }
            out(r, c) += coeff * val;
        }
    }
}

Eigen::Index Equation::side() const {
    Eigen::Index s = 1;
    for (int d : eq_dims) {
        s *= d;
    }
    return s;
}

std::vector<Mat> ConstraintSet::apply(const BlockVec &x) const {
    std::vector<Mat> out;
    out.reserve(equations.size());
    for (const auto &eq : equations) {
        Mat m = Mat::Zero(eq.side(), eq.side());
        for (const auto &term : eq.wire_terms) {
            term.apply(x.blocks[term.block], eq.eq_dims, m);
        }
        for (const auto &term : eq.trace_terms) {
            m(0, 0) += term.coeff * term.g.conjugate().cwiseProduct(x.blocks[term.block]).sum();
        }
        out.push_back(std::move(m));
    }
    return out;
}

BlockVec ConstraintSet::apply_adjoint(const std::vector<Mat> &y) const {
    BlockVec out = BlockVec::zeros(blocks);
    for (size_t e = 0; e < equations.size(); ++e) {
        const auto &eq = equations[e];
        for (const auto &term : eq.wire_terms) {
            term.apply_adjoint(y[e], eq.eq_dims, out.blocks[term.block]);
        }
        for (const auto &term : eq.trace_terms) {
            out.blocks[term.block] += term.coeff * y[e](0, 0).real() * term.g;
        }
    }
    return out;
}

std::vector<Mat> ConstraintSet::residuals(const BlockVec &x) const {
    std::vector<Mat> r = apply(x);
    for (size_t e = 0; e < equations.size(); ++e) {
        r[e] -= equations[e].rhs;
    }
    return r;
}

double ConstraintSet::residual_max_abs(const BlockVec &x) const {
    double worst = 0;
    for (const auto &m : residuals(x)) {
        if (m.size() > 0) {
            worst = std::max(worst, m.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

AffineProjector::AffineProjector(const ConstraintSet &cs) {
    const double sqrt2 = std::sqrt(2.0);
    offsets_.clear();
    sides_.clear();
    Eigen::Index dim = 0;
    for (const auto &eq : cs.equations) {
        offsets_.push_back(dim);
        Eigen::Index s = eq.side();
        sides_.push_back(s);
        dim += s * s;  // s reals on the diagonal + 2 per off-diagonal pair
    }
    dim_ = dim;
    (void)sqrt2;
    // Assemble A A^T column by column through the structured apply/adjoint.
    Eigen::MatrixXd gram(dim_, dim_);
    for (Eigen::Index col = 0; col < dim_; ++col) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
        e(col) = 1.0;
        std::vector<Mat> y = unpack(e);
        gram.col(col) = pack(cs.apply(cs.apply_adjoint(y)));
    }
    // Tiny ridge guards against redundant constraints; the projection defect
    // this introduces is measured by the certificate bounds downstream.
    double scale = std::max(gram.diagonal().maxCoeff(), 1.0);
    gram.diagonal().array() += 1e-12 * scale;
    ldlt_.compute(gram);
}

Eigen::VectorXd AffineProjector::pack(const std::vector<Mat> &eq_values) const {
    const double s2 = std::sqrt(2.0);
    Eigen::VectorXd v(dim_);
    for (size_t e = 0; e < eq_values.size(); ++e) {
        const Mat &m = eq_values[e];
        Eigen::Index base = offsets_[e];
        Eigen::Index s = sides_[e];
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < s; ++i) {
            v(base + k++) = m(i, i).real();
        }
        for (Eigen::Index i = 0; i < s; ++i) {
            for (Eigen::Index j = i + 1; j < s; ++j) {
                v(base + k++) = s2 * m(i, j).real();
                v(base + k++) = s2 * m(i, j).imag();
            }
        }
    }
    return v;
}

std::vector<Mat> AffineProjector::unpack(const Eigen::VectorXd &v) const {
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    std::vector<Mat> out;
    out.reserve(sides_.size());
    for (size_t e = 0; e < sides_.size(); ++e) {
        Eigen::Index base = offsets_[e];
        Eigen::Index s = sides_[e];
        Mat m = Mat::Zero(s, s);
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < s; ++i) {
            m(i, i) = v(base + k++);
        }
        for (Eigen::Index i = 0; i < s; ++i) {
            for (Eigen::Index j = i + 1; j < s; ++j) {
                double re = v(base + k++) * inv_s2;
                double im = v(base + k++) * inv_s2;
                m(i, j) = complex(re, im);
                m(j, i) = complex(re, -im);
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

BlockVec AffineProjector::project(const ConstraintSet &cs, const BlockVec &x) const {
    Eigen::VectorXd r = pack(cs.residuals(x));
    Eigen::VectorXd u = ldlt_.solve(r);
    BlockVec correction = cs.apply_adjoint(unpack(u));
    BlockVec out = x;
    out -= correction;
    out.hermitize();
    return out;
}

BlockVec AffineProjector::row_space_component(const ConstraintSet &cs, const BlockVec &x) const {
    Eigen::VectorXd ax = pack(cs.apply(x));
    Eigen::VectorXd u = ldlt_.solve(ax);
    BlockVec out = cs.apply_adjoint(unpack(u));
    out.hermitize();
    return out;
}

const char *solver_status_name(SolverStatus s) {
    switch (s) {
        case SolverStatus::Feasible:
            return "feasible";
        case SolverStatus::Infeasible:
            return "infeasible";
        case SolverStatus::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

double verify_decomposition(const ConstraintSet &cs, const BlockVec &point) {
    double worst = cs.residual_max_abs(point);
    for (const auto &b : point.blocks) {
        worst = std::max(worst, std::max(0.0, -min_eig_of(b)));
        worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

FeasibilityOutcome solve_feasibility(
    const ConstraintSet &cs, const FeasibilityOptions &opt, const AffineProjector *shared) {
    FeasibilityOutcome result;
    std::unique_ptr<AffineProjector> owned;
    const AffineProjector *proj = shared;
    if (proj == nullptr) {
        owned = std::make_unique<AffineProjector>(cs);
        proj = owned.get();
    }

    BlockVec x = proj->project(cs, BlockVec::zeros(cs.blocks));
    x.clip_to_psd();
    BlockVec correction = BlockVec::zeros(cs.blocks);

    // Dykstra phase; the correction applies to the cone projection only since
    // the affine set needs none.
    int it = 0;
    int stalled = 0;
    double prev_residual = -1;
    for (; it < opt.max_iterations; ++it) {
        BlockVec y = proj->project(cs, x);
        BlockVec z = y;
        z += correction;
        BlockVec cone = z;
        cone.clip_to_psd();
        correction = z;
        correction -= cone;
        x = cone;
        if (it % opt.check_every == opt.check_every - 1) {
            double res = cs.residual_max_abs(x);
            if (res <= opt.feas_tol) {
                result.status = SolverStatus::Feasible;
                result.point = x;
                result.residual = res;
                result.iterations = it + 1;
                return result;
            }
            if (prev_residual >= 0 && std::abs(res - prev_residual) <= 1e-4 * res) {
                if (++stalled >= opt.stall_checks && res > 10 * opt.feas_tol) {
                    break;  // likely infeasible; go find a certificate
                }
            } else {
                stalled = 0;
            }
            prev_residual = res;
        }
    }

    // Witness phase: plain alternating projections converge to the minimal
    // gap pair (affine point, cone point); their difference separates the
    // sets when the gap is positive.
    BlockVec affine_point = proj->project(cs, x);
    BlockVec cone_point = affine_point;
    cone_point.clip_to_psd();
    double prev_gap = -1;
    for (int wit = 0; wit < opt.witness_iterations; ++wit) {
        affine_point = proj->project(cs, cone_point);
        cone_point = affine_point;
        cone_point.clip_to_psd();
        ++it;
        if (wit % opt.check_every == opt.check_every - 1) {
            double res = cs.residual_max_abs(cone_point);
            if (res <= opt.feas_tol) {
                result.status = SolverStatus::Feasible;
                result.point = cone_point;
                result.residual = res;
                result.iterations = it;
                return result;
            }
            BlockVec diff = affine_point;
            diff -= cone_point;
            double gap = diff.norm();
            if (prev_gap >= 0 && std::abs(gap - prev_gap) <= 1e-9 * gap) {
                break;
            }
            prev_gap = gap;
        }
    }
    BlockVec normal = affine_point;
    normal -= cone_point;
    result.iterations = it;
    result.point = cone_point;
    result.residual = cs.residual_max_abs(cone_point);
    if (normal.norm() <= 0) {
        return result;
    }

    // Clean the witness: alternate between the constraint row space (so its
    // value is constant on the affine set) and the NSD cone product (so it is
    // nonpositive on the PSD cone product), then bound the leftover defects.
    for (int round = 0; round < 4; ++round) {
        normal = proj->row_space_component(cs, normal);
        normal.clip_to_nsd();
    }
    normal = proj->row_space_component(cs, normal);
    double nn = normal.norm();
    if (nn <= 0) {
        return result;
    }
    normal *= 1.0 / nn;

    double value = normal.dot(affine_point);
    std::vector<double> bounds;
    double r_sq = 0;
    for (const auto &b : cs.blocks) {
        bounds.push_back(b.trace_bound);
        r_sq += b.trace_bound * b.trace_bound;
    }
    double psd_defect = normal.weighted_positive_part(bounds);
    BlockVec row_again = proj->row_space_component(cs, normal);
    BlockVec null_part = normal;
    null_part -= row_again;
    double null_defect = null_part.norm();
    double feasible_norm_bound = std::sqrt(r_sq);
    double margin = value - psd_defect - null_defect * (feasible_norm_bound + affine_point.norm());

    result.witness = normal;
    result.witness_value = value;
    result.witness_psd_defect = psd_defect;
    result.witness_null_defect = null_defect;
    result.witness_margin = margin;
    if (margin >= opt.infeas_margin) {
        result.status = SolverStatus::Infeasible;
    }
    return result;
}

}  // namespace procmat

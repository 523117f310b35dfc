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

#ifndef PROCMAT_LABELED_OPERATOR_HPP
#define PROCMAT_LABELED_OPERATOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "procmat/errors.hpp"

namespace procmat {

using complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// A named tensor factor. Every wire in this toolkit is a qubit, but the
/// calculus below works for any finite dimension.
struct SpaceLabel {
    std::string name;
    int dim = 2;

    bool operator==(const SpaceLabel &other) const {
        return name == other.name && dim == other.dim;
    }
};

/// A square operator on an ordered tensor product of named wires.
///
/// The first space is the most significant index (Kronecker convention), so
/// the flat row index of the multi-index (i_0, ..., i_{k-1}) is
/// sum_j i_j * prod_{l>j} dim_l.
class LabeledOperator {
   public:
    LabeledOperator() = default;
    LabeledOperator(std::vector<SpaceLabel> spaces, Mat entries);

    const std::vector<SpaceLabel> &spaces() const {
        return spaces_;
    }
    const Mat &matrix() const {
        return entries_;
    }
    Mat &matrix() {
        return entries_;
    }
    Eigen::Index side() const {
        return entries_.rows();
    }
    int wire_count() const {
        return static_cast<int>(spaces_.size());
    }

    bool has_space(const std::string &name) const;
    int space_index(const std::string &name) const;  // throws UnknownLabel
    std::vector<std::string> space_names() const;

    double trace_real() const {
        return entries_.trace().real();
    }

    /// Renames a wire in place; dimensions are untouched.
    void rename_space(const std::string &from, const std::string &to);

    /// Max absolute entrywise difference, after permuting `other` into this
    /// operator's wire order. Throws WireMismatch if the wire sets differ.
    double max_abs_diff(const LabeledOperator &other) const;

    bool is_hermitian(double tol = 1e-9) const;
    double min_eigenvalue() const;  // of the Hermitian part

   private:
    std::vector<SpaceLabel> spaces_;
    Mat entries_;
};

/// A vector on an ordered tensor product of named wires. Used for pure
/// process vectors and unnormalized Choi vectors.
class LabeledKet {
   public:
    LabeledKet() = default;
    LabeledKet(std::vector<SpaceLabel> spaces, Vec entries);

    const std::vector<SpaceLabel> &spaces() const {
        return spaces_;
    }
    const Vec &vector() const {
        return entries_;
    }
    Vec &vector() {
        return entries_;
    }
    Eigen::Index size() const {
        return entries_.size();
    }
    int wire_count() const {
        return static_cast<int>(spaces_.size());
    }
    int space_index(const std::string &name) const;
    std::vector<std::string> space_names() const;
    double squared_norm() const {
        return entries_.squaredNorm();
    }
    void rename_space(const std::string &from, const std::string &to);

   private:
    std::vector<SpaceLabel> spaces_;
    Vec entries_;
};

/// Choi vector of a single-qubit map: two wires of equal dimension.
using ChoiVector = LabeledKet;

// --- operator calculus ---

LabeledOperator tensor(const LabeledOperator &a, const LabeledOperator &b);
LabeledOperator permute_spaces(const LabeledOperator &a, const std::vector<std::string> &order);
LabeledOperator partial_trace(const LabeledOperator &a, const std::set<std::string> &names);
LabeledOperator partial_transpose(const LabeledOperator &a, const std::set<std::string> &names);

/// Contraction over the wires the two operands share (matched by name).
/// Disjoint wire sets degrade to a tensor product; identical wire sets to the
/// 1x1 trace pairing.
LabeledOperator link_product(const LabeledOperator &a, const LabeledOperator &b);

// --- ket calculus ---

LabeledKet tensor(const LabeledKet &a, const LabeledKet &b);
LabeledKet permute_spaces(const LabeledKet &a, const std::vector<std::string> &order);

/// Adds two kets defined on the same wire set, permuting `b` as needed.
LabeledKet add(const LabeledKet &a, const LabeledKet &b);

/// Contraction of two kets over their shared wires (no conjugation). This is
/// the vector shadow of the link product: outer(ket_link(a, b)) equals
/// link_product(outer(a), outer(b)).
LabeledKet ket_link(const LabeledKet &a, const LabeledKet &b);

/// |v><v| as a dense operator.
LabeledOperator outer(const LabeledKet &v);

/// Tr_names |v><v| as a dense operator on the remaining wires, computed
/// without materializing the full outer product.
LabeledOperator trace_outer(const LabeledKet &v, const std::set<std::string> &names);

// --- single-qubit primitives ---

/// Identity for 0, the Hadamard for 1.
Mat hadamard_power(int x);

/// Unnormalized Choi vector sum_i |i>^in (x) U|i>^out of a unitary U.
ChoiVector choi_vector_of_unitary(const Mat &u, const SpaceLabel &in, const SpaceLabel &out);

/// Identity on the given wires.
LabeledOperator identity_operator(const std::vector<SpaceLabel> &spaces);

/// Computational basis ket |bits> on the given wires (all dim 2).
LabeledKet basis_ket(const std::vector<SpaceLabel> &spaces, const std::vector<int> &bits);

/// Single-qubit ket H^h |bit| on one wire.
LabeledKet qubit_ket(const std::string &wire, int bit, int hadamard);

}  // namespace procmat

#endif

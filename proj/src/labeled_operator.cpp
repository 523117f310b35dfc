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

#include "procmat/labeled_operator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace procmat {

namespace {

Eigen::Index product_dim(const std::vector<SpaceLabel> &spaces) {
    Eigen::Index d = 1;
    for (const auto &s : spaces) {
        d *= s.dim;
    }
    return d;
}

void check_unique_names(const std::vector<SpaceLabel> &spaces) {
    std::unordered_set<std::string> seen;
    for (const auto &s : spaces) {
        if (s.dim < 1) {
            throw Error(ErrorKind::DimensionMismatch, "space '" + s.name + "' has dim < 1");
        }
        if (!seen.insert(s.name).second) {
            throw Error(ErrorKind::DuplicateLabel, "duplicate space name '" + s.name + "'");
        }
    }
}

// Strides for the mixed-radix index, first space most significant.
std::vector<Eigen::Index> strides_of(const std::vector<SpaceLabel> &spaces) {
    std::vector<Eigen::Index> st(spaces.size(), 1);
    for (int j = static_cast<int>(spaces.size()) - 2; j >= 0; --j) {
        st[j] = st[j + 1] * spaces[j + 1].dim;
    }
    return st;
}

// Flat index permutation: entry i of the result is the source flat index of
// the state whose digits in `order`-wire layout come from the original wires.
std::vector<Eigen::Index> permutation_map(
    const std::vector<SpaceLabel> &spaces, const std::vector<int> &order) {
    const auto n = spaces.size();
    std::vector<SpaceLabel> new_spaces(n);
    for (size_t k = 0; k < n; ++k) {
        new_spaces[k] = spaces[order[k]];
    }
    auto src_strides = strides_of(spaces);
    auto dst_strides = strides_of(new_spaces);
    Eigen::Index total = product_dim(spaces);
    std::vector<Eigen::Index> map(total);
    std::vector<int> digits(n, 0);
    for (Eigen::Index i = 0; i < total; ++i) {
        Eigen::Index rem = i;
        Eigen::Index src = 0;
        for (size_t k = 0; k < n; ++k) {
            Eigen::Index digit = rem / dst_strides[k];
            rem %= dst_strides[k];
            src += digit * src_strides[order[k]];
        }
        map[i] = src;
    }
    return map;
}

std::vector<int> resolve_order(
    const std::vector<SpaceLabel> &spaces, const std::vector<std::string> &order) {
    if (order.size() != spaces.size()) {
        throw Error(ErrorKind::LengthMismatch, "permutation order has wrong length");
    }
    std::vector<int> idx;
    idx.reserve(order.size());
    std::vector<bool> used(spaces.size(), false);
    for (const auto &name : order) {
        int found = -1;
        for (size_t j = 0; j < spaces.size(); ++j) {
            if (!used[j] && spaces[j].name == name) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0) {
            throw Error(ErrorKind::UnknownLabel, "space '" + name + "' not available for permutation");
        }
        used[found] = true;
        idx.push_back(found);
    }
    return idx;
}

}  // namespace

LabeledOperator::LabeledOperator(std::vector<SpaceLabel> spaces, Mat entries)
    : spaces_(std::move(spaces)), entries_(std::move(entries)) {
    check_unique_names(spaces_);
    Eigen::Index d = product_dim(spaces_);
    if (entries_.rows() != d || entries_.cols() != d) {
        throw Error(ErrorKind::DimensionMismatch, "matrix side does not match product of wire dims");
    }
    if (!entries_.allFinite()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix entries must be finite");
    }
}

bool LabeledOperator::has_space(const std::string &name) const {
    for (const auto &s : spaces_) {
        if (s.name == name) {
            return true;
        }
    }
    return false;
}

int LabeledOperator::space_index(const std::string &name) const {
    for (size_t j = 0; j < spaces_.size(); ++j) {
        if (spaces_[j].name == name) {
            return static_cast<int>(j);
        }
    }
    throw Error(ErrorKind::UnknownLabel, "no space named '" + name + "'");
}

std::vector<std::string> LabeledOperator::space_names() const {
    std::vector<std::string> names;
    names.reserve(spaces_.size());
    for (const auto &s : spaces_) {
        names.push_back(s.name);
    }
    return names;
}

void LabeledOperator::rename_space(const std::string &from, const std::string &to) {
    int j = space_index(from);
    if (from == to) {
        return;
    }
    if (has_space(to)) {
        throw Error(ErrorKind::DuplicateLabel, "rename target '" + to + "' already present");
    }
    spaces_[j].name = to;
}

double LabeledOperator::max_abs_diff(const LabeledOperator &other) const {
    auto mine = space_names();
    LabeledOperator aligned = permute_spaces(other, mine);
    for (size_t j = 0; j < spaces_.size(); ++j) {
        if (aligned.spaces()[j].dim != spaces_[j].dim) {
            throw Error(ErrorKind::WireMismatch, "wire '" + spaces_[j].name + "' dims differ");
        }
    }
    return (entries_ - aligned.matrix()).cwiseAbs().maxCoeff();
}

bool LabeledOperator::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double LabeledOperator::min_eigenvalue() const {
    Mat h = (entries_ + entries_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

LabeledKet::LabeledKet(std::vector<SpaceLabel> spaces, Vec entries)
    : spaces_(std::move(spaces)), entries_(std::move(entries)) {
    check_unique_names(spaces_);
    if (entries_.size() != product_dim(spaces_)) {
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match product of wire dims");
    }
}

int LabeledKet::space_index(const std::string &name) const {
    for (size_t j = 0; j < spaces_.size(); ++j) {
        if (spaces_[j].name == name) {
            return static_cast<int>(j);
        }
    }
    throw Error(ErrorKind::UnknownLabel, "no space named '" + name + "'");
}

std::vector<std::string> LabeledKet::space_names() const {
    std::vector<std::string> names;
    names.reserve(spaces_.size());
    for (const auto &s : spaces_) {
        names.push_back(s.name);
    }
    return names;
}

void LabeledKet::rename_space(const std::string &from, const std::string &to) {
    int j = space_index(from);
    if (from == to) {
        return;
    }
    for (const auto &s : spaces_) {
        if (s.name == to) {
            throw Error(ErrorKind::DuplicateLabel, "rename target '" + to + "' already present");
        }
    }
    spaces_[j].name = to;
}

LabeledOperator tensor(const LabeledOperator &a, const LabeledOperator &b) {
    std::vector<SpaceLabel> spaces = a.spaces();
    for (const auto &s : b.spaces()) {
        if (a.has_space(s.name)) {
            throw Error(ErrorKind::DuplicateLabel, "tensor operands share space '" + s.name + "'");
        }
        spaces.push_back(s);
    }
    Eigen::Index da = a.side(), db = b.side();
    Mat out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    return LabeledOperator(std::move(spaces), std::move(out));
}

LabeledOperator permute_spaces(const LabeledOperator &a, const std::vector<std::string> &order) {
    auto idx = resolve_order(a.spaces(), order);
    bool identity = true;
    for (size_t k = 0; k < idx.size(); ++k) {
        identity = identity && idx[k] == static_cast<int>(k);
    }
    if (identity) {
        return a;
    }
    auto map = permutation_map(a.spaces(), idx);
    std::vector<SpaceLabel> new_spaces;
    new_spaces.reserve(idx.size());
    for (int j : idx) {
        new_spaces.push_back(a.spaces()[j]);
    }
    Eigen::Index d = a.side();
    Mat out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out(i, j) = a.matrix()(map[i], map[j]);
        }
    }
    return LabeledOperator(std::move(new_spaces), std::move(out));
}

LabeledOperator partial_trace(const LabeledOperator &a, const std::set<std::string> &names) {
    for (const auto &n : names) {
        a.space_index(n);  // throws UnknownLabel
    }
    if (names.empty()) {
        return a;
    }
    // Move traced wires to the front, keep the rest in original order.
    std::vector<std::string> order;
    std::vector<SpaceLabel> kept;
    for (const auto &s : a.spaces()) {
        if (names.count(s.name)) {
            order.push_back(s.name);
        }
    }
    for (const auto &s : a.spaces()) {
        if (!names.count(s.name)) {
            order.push_back(s.name);
            kept.push_back(s);
        }
    }
    LabeledOperator p = permute_spaces(a, order);
    Eigen::Index dt = 1;
    for (const auto &n : names) {
        dt *= a.spaces()[a.space_index(n)].dim;
    }
    Eigen::Index dr = a.side() / dt;
    Mat out = Mat::Zero(dr, dr);
    for (Eigen::Index t = 0; t < dt; ++t) {
        out += p.matrix().block(t * dr, t * dr, dr, dr);
    }
    if (kept.empty()) {
        kept = {};  // 1x1 result with no wires
    }
    return LabeledOperator(std::move(kept), std::move(out));
}

LabeledOperator partial_transpose(const LabeledOperator &a, const std::set<std::string> &names) {
    for (const auto &n : names) {
        a.space_index(n);
    }
    if (names.empty()) {
        return a;
    }
    auto strides = strides_of(a.spaces());
    std::vector<int> t_idx;
    for (size_t j = 0; j < a.spaces().size(); ++j) {
        if (names.count(a.spaces()[j].name)) {
            t_idx.push_back(static_cast<int>(j));
        }
    }
    Eigen::Index d = a.side();
    Mat out(d, d);
    std::vector<int> row_digits(a.spaces().size()), col_digits(a.spaces().size());
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::Index rem = i;
        for (size_t k = 0; k < a.spaces().size(); ++k) {
            row_digits[k] = static_cast<int>(rem / strides[k]);
            rem %= strides[k];
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            rem = j;
            for (size_t k = 0; k < a.spaces().size(); ++k) {
                col_digits[k] = static_cast<int>(rem / strides[k]);
                rem %= strides[k];
            }
            Eigen::Index si = 0, sj = 0;
            for (size_t k = 0; k < a.spaces().size(); ++k) {
                int rd = row_digits[k], cd = col_digits[k];
                if (names.count(a.spaces()[k].name)) {
                    std::swap(rd, cd);
                }
                si += rd * strides[k];
                sj += cd * strides[k];
            }
            out(i, j) = a.matrix()(si, sj);
        }
    }
    return LabeledOperator(a.spaces(), std::move(out));
}

LabeledOperator link_product(const LabeledOperator &a, const LabeledOperator &b) {
    // Partition wires: X only in a, Y shared, Z only in b.
    std::vector<SpaceLabel> xs, ys, zs;
    for (const auto &s : a.spaces()) {
        if (b.has_space(s.name)) {
            if (b.spaces()[b.space_index(s.name)].dim != s.dim) {
                throw Error(ErrorKind::DimensionMismatch, "shared space '" + s.name + "' has differing dims");
            }
            ys.push_back(s);
        } else {
            xs.push_back(s);
        }
    }
    for (const auto &s : b.spaces()) {
        if (!a.has_space(s.name)) {
            zs.push_back(s);
        }
    }
    std::vector<std::string> a_order, b_order;
    for (const auto &s : xs) {
        a_order.push_back(s.name);
    }
    for (const auto &s : ys) {
        a_order.push_back(s.name);
        b_order.push_back(s.name);
    }
    for (const auto &s : zs) {
        b_order.push_back(s.name);
    }
    LabeledOperator ap = permute_spaces(a, a_order);
    LabeledOperator bp = permute_spaces(b, b_order);
    Eigen::Index dx = 1, dy = 1, dz = 1;
    for (const auto &s : xs) {
        dx *= s.dim;
    }
    for (const auto &s : ys) {
        dy *= s.dim;
    }
    for (const auto &s : zs) {
        dz *= s.dim;
    }
    // R[(x,z),(x',z')] = sum_{y,y'} A[(x,y'),(x',y)] B[(y',z),(y,z')]
    const Mat &A = ap.matrix();
    const Mat &B = bp.matrix();
    Mat out = Mat::Zero(dx * dz, dx * dz);
    for (Eigen::Index x = 0; x < dx; ++x) {
        for (Eigen::Index xp = 0; xp < dx; ++xp) {
            for (Eigen::Index y = 0; y < dy; ++y) {
                for (Eigen::Index yp = 0; yp < dy; ++yp) {
                    const complex av = A(x * dy + yp, xp * dy + y);
                    if (av == complex(0.0, 0.0)) {
                        continue;
                    }
                    for (Eigen::Index z = 0; z < dz; ++z) {
                        for (Eigen::Index zp = 0; zp < dz; ++zp) {
                            out(x * dz + z, xp * dz + zp) += av * B(yp * dz + z, y * dz + zp);
                        }
                    }
                }
            }
        }
    }
    std::vector<SpaceLabel> out_spaces = xs;
    out_spaces.insert(out_spaces.end(), zs.begin(), zs.end());
    return LabeledOperator(std::move(out_spaces), std::move(out));
}

LabeledKet tensor(const LabeledKet &a, const LabeledKet &b) {
    std::vector<SpaceLabel> spaces = a.spaces();
    for (const auto &s : b.spaces()) {
        for (const auto &t : a.spaces()) {
            if (t.name == s.name) {
                throw Error(ErrorKind::DuplicateLabel, "tensor operands share space '" + s.name + "'");
            }
        }
        spaces.push_back(s);
    }
    Eigen::Index da = a.size(), db = b.size();
    Vec out(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        out.segment(i * db, db) = a.vector()(i) * b.vector();
    }
    return LabeledKet(std::move(spaces), std::move(out));
}

LabeledKet permute_spaces(const LabeledKet &a, const std::vector<std::string> &order) {
    auto idx = resolve_order(a.spaces(), order);
    bool identity = true;
    for (size_t k = 0; k < idx.size(); ++k) {
        identity = identity && idx[k] == static_cast<int>(k);
    }
    if (identity) {
        return a;
    }
    auto map = permutation_map(a.spaces(), idx);
    std::vector<SpaceLabel> new_spaces;
    for (int j : idx) {
        new_spaces.push_back(a.spaces()[j]);
    }
    Vec out(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out(i) = a.vector()(map[i]);
    }
    return LabeledKet(std::move(new_spaces), std::move(out));
}

LabeledKet add(const LabeledKet &a, const LabeledKet &b) {
    LabeledKet bp = permute_spaces(b, a.space_names());
    return LabeledKet(a.spaces(), a.vector() + bp.vector());
}

LabeledKet ket_link(const LabeledKet &a, const LabeledKet &b) {
    std::vector<SpaceLabel> xs, ys, zs;
    auto b_names = b.space_names();
    auto b_has = [&](const std::string &n) {
        return std::find(b_names.begin(), b_names.end(), n) != b_names.end();
    };
    for (const auto &s : a.spaces()) {
        if (b_has(s.name)) {
            if (b.spaces()[b.space_index(s.name)].dim != s.dim) {
                throw Error(ErrorKind::DimensionMismatch, "shared space '" + s.name + "' has differing dims");
            }
            ys.push_back(s);
        } else {
            xs.push_back(s);
        }
    }
    for (const auto &s : b.spaces()) {
        bool shared = false;
        for (const auto &y : ys) {
            shared = shared || y.name == s.name;
        }
        if (!shared) {
            zs.push_back(s);
        }
    }
    std::vector<std::string> a_order, b_order;
    for (const auto &s : xs) {
        a_order.push_back(s.name);
    }
    for (const auto &s : ys) {
        a_order.push_back(s.name);
        b_order.push_back(s.name);
    }
    for (const auto &s : zs) {
        b_order.push_back(s.name);
    }
    LabeledKet ap = permute_spaces(a, a_order);
    LabeledKet bp = permute_spaces(b, b_order);
    Eigen::Index dx = 1, dy = 1, dz = 1;
    for (const auto &s : xs) {
        dx *= s.dim;
    }
    for (const auto &s : ys) {
        dy *= s.dim;
    }
    for (const auto &s : zs) {
        dz *= s.dim;
    }
    Eigen::Map<const Mat> A(ap.vector().data(), dy, dx);  // column-major: A(y, x)
    Eigen::Map<const Mat> B(bp.vector().data(), dz, dy);
    // g[(x,z)] = sum_y a[(x,y)] b[(y,z)]
    Mat G = (B * A).transpose();  // G(x, z)
    Vec out(dx * dz);
    for (Eigen::Index x = 0; x < dx; ++x) {
        out.segment(x * dz, dz) = G.row(x).transpose();
    }
    std::vector<SpaceLabel> out_spaces = xs;
    out_spaces.insert(out_spaces.end(), zs.begin(), zs.end());
    return LabeledKet(std::move(out_spaces), std::move(out));
}

LabeledOperator outer(const LabeledKet &v) {
    return LabeledOperator(v.spaces(), v.vector() * v.vector().adjoint());
}

LabeledOperator trace_outer(const LabeledKet &v, const std::set<std::string> &names) {
    for (const auto &n : names) {
        v.space_index(n);
    }
    std::vector<std::string> order;
    std::vector<SpaceLabel> kept;
    for (const auto &s : v.spaces()) {
        if (names.count(s.name)) {
            order.push_back(s.name);
        }
    }
    for (const auto &s : v.spaces()) {
        if (!names.count(s.name)) {
            order.push_back(s.name);
            kept.push_back(s);
        }
    }
    LabeledKet p = permute_spaces(v, order);
    Eigen::Index dt = 1;
    for (const auto &n : names) {
        dt *= v.spaces()[v.space_index(n)].dim;
    }
    Eigen::Index dr = v.size() / dt;
    // v laid out as (t, r) with r least significant: M(r, t) in column-major.
    Eigen::Map<const Mat> M(p.vector().data(), dr, dt);
    Mat out = M * M.adjoint();  // out(r, r') = sum_t v[(t,r)] conj(v[(t,r')])
    return LabeledOperator(std::move(kept), std::move(out));
}

Mat hadamard_power(int x) {
    if (x != 0 && x != 1) {
        throw Error(ErrorKind::LengthMismatch, "hadamard_power argument must be a bit");
    }
    Mat m(2, 2);
    if (x == 0) {
        m << 1, 0, 0, 1;
    } else {
        const double s = 1.0 / std::sqrt(2.0);
        m << s, s, s, -s;
    }
    return m;
}

ChoiVector choi_vector_of_unitary(const Mat &u, const SpaceLabel &in, const SpaceLabel &out) {
    if (u.rows() != in.dim || u.cols() != in.dim || in.dim != out.dim) {
        throw Error(ErrorKind::DimensionMismatch, "unitary side must match wire dims");
    }
    Mat defect = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-9) {
        throw Error(ErrorKind::NotUnitary, "matrix is not unitary to tolerance 1e-9");
    }
    Vec v(static_cast<Eigen::Index>(in.dim) * out.dim);
    for (int i = 0; i < in.dim; ++i) {
        v.segment(static_cast<Eigen::Index>(i) * out.dim, out.dim) = u.col(i);
    }
    return ChoiVector({in, out}, std::move(v));
}

LabeledOperator identity_operator(const std::vector<SpaceLabel> &spaces) {
    Eigen::Index d = 1;
    for (const auto &s : spaces) {
        d *= s.dim;
    }
    return LabeledOperator(spaces, Mat::Identity(d, d));
}

LabeledKet basis_ket(const std::vector<SpaceLabel> &spaces, const std::vector<int> &bits) {
    if (bits.size() != spaces.size()) {
        throw Error(ErrorKind::LengthMismatch, "bit word length must match wire count");
    }
    Eigen::Index d = 1, idx = 0;
    for (size_t j = 0; j < spaces.size(); ++j) {
        if (bits[j] < 0 || bits[j] >= spaces[j].dim) {
            throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
        }
        idx = idx * spaces[j].dim + bits[j];
        d *= spaces[j].dim;
    }
    Vec v = Vec::Zero(d);
    v(idx) = 1.0;
    return LabeledKet(spaces, std::move(v));
}

LabeledKet qubit_ket(const std::string &wire, int bit, int hadamard) {
    Vec v = hadamard_power(hadamard).col(bit);
    return LabeledKet({{wire, 2}}, std::move(v));
}

}  // namespace procmat

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "procmat/labeled_operator.hpp"

using namespace procmat;

namespace {

LabeledOperator random_operator(const std::vector<SpaceLabel> &spaces, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Index d = 1;
    for (const auto &s : spaces) {
        d *= s.dim;
    }
    Mat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = complex(gauss(rng), gauss(rng));
        }
    }
    return LabeledOperator(spaces, std::move(m));
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat proj(int bit) {
    Mat m = Mat::Zero(2, 2);
    m(bit, bit) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("tensor of identities is the identity") {
    LabeledOperator a({{"X", 2}}, Mat::Identity(2, 2));
    LabeledOperator b({{"Y", 2}}, Mat::Identity(2, 2));
    LabeledOperator t = tensor(a, b);
    CHECK(t.side() == 4);
    CHECK((t.matrix() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor of basis projectors") {
    LabeledOperator a({{"X", 2}}, proj(0));
    LabeledOperator b({{"Y", 2}}, proj(1));
    LabeledOperator t = tensor(a, b);
    Mat expected = Mat::Zero(4, 4);
    expected(1, 1) = 1.0;  // |01><01|
    CHECK((t.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor trace factorizes on random operators") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        LabeledOperator a = random_operator({{"X", 2}}, rng);
        LabeledOperator b = random_operator({{"Y", 2}}, rng);
        complex lhs = tensor(a, b).matrix().trace();
        complex rhs = a.matrix().trace() * b.matrix().trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("tensor rejects duplicate labels") {
    LabeledOperator a({{"X", 2}}, Mat::Identity(2, 2));
    CHECK_THROWS_AS(tensor(a, a), Error);
}

TEST_CASE("permute on a basis projector swaps the bits") {
    LabeledOperator p01 = tensor(
        LabeledOperator({{"X", 2}}, proj(0)), LabeledOperator({{"Y", 2}}, proj(1)));
    LabeledOperator swapped = permute_spaces(p01, {"Y", "X"});
    Mat expected = Mat::Zero(4, 4);
    expected(2, 2) = 1.0;  // |10><10| on (Y, X)
    CHECK(swapped.spaces()[0].name == "Y");
    CHECK((swapped.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("permute round trip restores the operator exactly") {
    std::mt19937_64 rng(11);
    LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}, {"Z", 2}}, rng);
    LabeledOperator p = permute_spaces(a, {"Z", "X", "Y"});
    LabeledOperator back = permute_spaces(p, {"X", "Y", "Z"});
    CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("permute with an unknown label throws") {
    LabeledOperator a({{"X", 2}}, Mat::Identity(2, 2));
    CHECK_THROWS_AS(permute_spaces(a, {"Q"}), Error);
}

TEST_CASE("partial trace of a product splits off the traced factor") {
    std::mt19937_64 rng(3);
    LabeledOperator rho = random_operator({{"Y", 2}}, rng);
    LabeledOperator a = tensor(LabeledOperator({{"X", 2}}, proj(0)), rho);
    LabeledOperator reduced = partial_trace(a, {"Y"});
    Mat expected = rho.matrix().trace() * proj(0);
    CHECK((reduced.matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("full trace gives a 1x1 matrix") {
    std::mt19937_64 rng(5);
    LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}}, rng);
    LabeledOperator t = partial_trace(a, {"X", "Y"});
    CHECK(t.side() == 1);
    CHECK(std::abs(t.matrix()(0, 0) - a.matrix().trace()) < 1e-13);
}

TEST_CASE("partial trace preserves the trace") {
    std::mt19937_64 rng(9);
    LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}, {"Z", 2}}, rng);
    CHECK(std::abs(partial_trace(a, {"Y"}).matrix().trace() - a.matrix().trace()) < 1e-12);
}

TEST_CASE("partial transpose moves basis matrix indices") {
    // |01><10| on (X, Y) -> |00><11| after transposing Y.
    Mat m = Mat::Zero(4, 4);
    m(1, 2) = 1.0;
    LabeledOperator a({{"X", 2}, {"Y", 2}}, m);
    LabeledOperator t = partial_transpose(a, {"Y"});
    Mat expected = Mat::Zero(4, 4);
    expected(0, 3) = 1.0;
    CHECK((t.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full transpose of a Hermitian operator conjugates it") {
    std::mt19937_64 rng(13);
    LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}}, rng);
    a.matrix() = (a.matrix() + a.matrix().adjoint()).eval();
    LabeledOperator t = partial_transpose(a, {"X", "Y"});
    CHECK((t.matrix() - a.matrix().conjugate()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial transpose is an involution") {
    std::mt19937_64 rng(17);
    LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}, {"Z", 2}}, rng);
    LabeledOperator round = partial_transpose(partial_transpose(a, {"Y", "Z"}), {"Y", "Z"});
    CHECK((round.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identity-channel link relabels a state") {
    std::mt19937_64 rng(19);
    LabeledOperator rho = random_operator({{"X", 2}}, rng);
    LabeledOperator id_choi = outer(choi_vector_of_unitary(Mat::Identity(2, 2), {"X", 2}, {"Y", 2}));
    LabeledOperator out = link_product(rho, id_choi);
    CHECK(out.spaces()[0].name == "Y");
    CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fully shared link is the trace pairing") {
    std::mt19937_64 rng(23);
    LabeledOperator a = random_operator({{"X", 2}}, rng);
    LabeledOperator b = random_operator({{"X", 2}}, rng);
    LabeledOperator out = link_product(a, b);
    CHECK(out.side() == 1);
    complex expected = (a.matrix().transpose() * b.matrix()).trace();
    CHECK(std::abs(out.matrix()(0, 0) - expected) < 1e-12);
}

TEST_CASE("disjoint link is the tensor product") {
    std::mt19937_64 rng(29);
    LabeledOperator a = random_operator({{"X", 2}}, rng);
    LabeledOperator b = random_operator({{"Z", 2}}, rng);
    LabeledOperator out = link_product(a, b);
    CHECK((out.matrix() - kron(a.matrix(), b.matrix())).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("link product against the definition on random operators") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}}, rng);
        LabeledOperator b = random_operator({{"Y", 2}, {"Z", 2}}, rng);
        LabeledOperator out = link_product(a, b);
        // Tr_Y[(A (x) 1_Z)^{T_Y} (1_X (x) B)]
        LabeledOperator lhs = tensor(a, LabeledOperator({{"Z", 2}}, Mat::Identity(2, 2)));
        LabeledOperator rhs = tensor(LabeledOperator({{"X", 2}}, Mat::Identity(2, 2)), b);
        rhs = permute_spaces(rhs, {"X", "Y", "Z"});
        LabeledOperator prod(
            lhs.spaces(), partial_transpose(lhs, {"Y"}).matrix() * rhs.matrix());
        LabeledOperator expected = partial_trace(prod, {"Y"});
        CHECK(out.max_abs_diff(expected) < 1e-12);
    }
}

TEST_CASE("link product is commutative and associative on random triples") {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 40; ++k) {
        LabeledOperator a = random_operator({{"X", 2}, {"Y", 2}}, rng);
        LabeledOperator b = random_operator({{"Y", 2}, {"Z", 2}}, rng);
        LabeledOperator c = random_operator({{"Z", 2}, {"W", 2}}, rng);
        CHECK(link_product(a, b).max_abs_diff(link_product(b, a)) < 1e-10);
        LabeledOperator left = link_product(link_product(a, b), c);
        LabeledOperator right = link_product(a, link_product(b, c));
        CHECK(left.max_abs_diff(right) < 1e-10);
    }
}

TEST_CASE("channel Choi contracted with a state is normalized") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        // Random unitary channel Choi on (X, Y).
        Mat g(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                g(i, j) = complex(gauss(rng), gauss(rng));
            }
        }
        Eigen::HouseholderQR<Mat> qr(g);
        Mat u = qr.householderQ();
        LabeledOperator choi = outer(choi_vector_of_unitary(u, {"X", 2}, {"Y", 2}));
        Vec psi(2);
        psi << complex(gauss(rng), gauss(rng)), complex(gauss(rng), gauss(rng));
        psi.normalize();
        LabeledOperator rho({{"X", 2}}, psi * psi.adjoint());
        LabeledOperator out = link_product(choi, rho);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
    }
}

TEST_CASE("choi vectors of standard unitaries") {
    ChoiVector id = choi_vector_of_unitary(Mat::Identity(2, 2), {"X", 2}, {"Xp", 2});
    Vec expected(4);
    expected << 1, 0, 0, 1;  // |00> + |11>
    CHECK((id.vector() - expected).cwiseAbs().maxCoeff() == 0.0);

    Mat x(2, 2);
    x << 0, 1, 1, 0;
    ChoiVector flip = choi_vector_of_unitary(x, {"X", 2}, {"Xp", 2});
    expected << 0, 1, 1, 0;  // |01> + |10>
    CHECK((flip.vector() - expected).cwiseAbs().maxCoeff() == 0.0);

    ChoiVector had = choi_vector_of_unitary(hadamard_power(1), {"X", 2}, {"Xp", 2});
    const double s = 1.0 / std::sqrt(2.0);
    Vec h_expected(4);
    h_expected << s, s, s, -s;
    CHECK((had.vector() - h_expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("choi vector rejects non-unitaries") {
    Mat bad(2, 2);
    bad << 1, 0, 0, 2;
    CHECK_THROWS_AS(choi_vector_of_unitary(bad, {"X", 2}, {"Y", 2}), Error);
}

TEST_CASE("hadamard powers") {
    CHECK((hadamard_power(0) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    Mat h = hadamard_power(1);
    CHECK(std::abs(h(0, 0).real() - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(h(1, 1).real() + 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(((h * h) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ket link mirrors the operator link on rank-1 operators") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_ket = [&](const std::vector<SpaceLabel> &spaces) {
        Eigen::Index d = 1;
        for (const auto &s : spaces) {
            d *= s.dim;
        }
        Vec v(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            v(i) = complex(gauss(rng), gauss(rng));
        }
        return LabeledKet(spaces, std::move(v));
    };
    for (int k = 0; k < 10; ++k) {
        LabeledKet a = random_ket({{"X", 2}, {"Y", 2}});
        LabeledKet b = random_ket({{"Y", 2}, {"Z", 2}});
        LabeledOperator via_kets = outer(ket_link(a, b));
        LabeledOperator via_ops = link_product(outer(a), outer(b));
        CHECK(via_kets.max_abs_diff(via_ops) < 1e-10);
    }
}

TEST_CASE("trace_outer matches tracing the outer product") {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(8);
    for (int i = 0; i < 8; ++i) {
        v(i) = complex(gauss(rng), gauss(rng));
    }
    LabeledKet ket({{"X", 2}, {"Y", 2}, {"Z", 2}}, v);
    LabeledOperator direct = trace_outer(ket, {"Y"});
    LabeledOperator full = partial_trace(outer(ket), {"Y"});
    CHECK(direct.max_abs_diff(full) < 1e-12);
}

// Copyright 2026 The pqcdse Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pqcdse/observables.hpp"

using namespace pqcdse;

namespace {

StateVector random_state(int n, std::mt19937_64 &rng) {
    auto v = oracle::haar_state(std::size_t{1} << n, rng);
    return StateVector::from_amplitudes(std::vector<Complex>(v.begin(), v.end()));
}

StateVector plus_state(int n) {
    std::vector<Complex> a(std::size_t{1} << n, Complex(1.0));
    return StateVector::from_amplitudes(a);
}

double dense_expectation(const StateVector &s, const Observable &obs) {
    oracle::Vector v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return (v.adjoint() * oracle::observable_matrix(obs) * v)(0, 0).real();
}

} // namespace

TEST(Tfim, TermsAndWeights) {
    const auto h = tfim(4, 1.0, 1.0);
    ASSERT_EQ(h.terms().size(), 7u);
    int zz = 0, x = 0;
    for (const auto &t : h.terms()) {
        EXPECT_DOUBLE_EQ(t.weight, -1.0);
        zz += t.paulis.find("ZZ") != std::string::npos ? 1 : 0;
        x += t.paulis.find('X') != std::string::npos ? 1 : 0;
    }
    EXPECT_EQ(zz, 3);
    EXPECT_EQ(x, 4);
}

TEST(Tfim, ZeroFieldLeavesSingleBond) {
    const auto h = tfim(2, 1.0, 0.0);
    ASSERT_EQ(h.terms().size(), 1u);
    EXPECT_EQ(h.terms()[0].paulis, "ZZ");
    EXPECT_DOUBLE_EQ(h.terms()[0].weight, -1.0);
}

TEST(Tfim, GroundLikeExpectation) {
    EXPECT_NEAR(expectation(StateVector(4), tfim(4, 1, 1)), -3.0, 1e-14);
}

TEST(Tfim, TooFewQubitsRejected) {
    EXPECT_THROW(tfim(1, 1, 1), std::invalid_argument);
    EXPECT_THROW(heisenberg(1), std::invalid_argument);
}

TEST(Heisenberg, TermsAndExpectations) {
    const auto h = heisenberg(4);
    EXPECT_EQ(h.terms().size(), 9u);
    EXPECT_NEAR(expectation(StateVector(4), h), 3.0, 1e-14);
    const auto singlet =
        StateVector::from_amplitudes({0.0, 1.0, -1.0, 0.0});
    EXPECT_NEAR(expectation(singlet, heisenberg(2)), -3.0, 1e-14);
}

TEST(LocalX, TermsAndExpectations) {
    EXPECT_NEAR(expectation(plus_state(4), local_x(4)), 4.0, 1e-14);
    EXPECT_NEAR(expectation(StateVector(4), local_x(4)), 0.0, 1e-14);
    const auto one = local_x(1);
    ASSERT_EQ(one.terms().size(), 1u);
    EXPECT_EQ(one.terms()[0].paulis, "X");
}

TEST(Observable, ValidationAndMerging) {
    EXPECT_THROW(Observable(2, {{1.0, "XQ"}}), std::invalid_argument);
    EXPECT_THROW(Observable(2, {{1.0, "XXX"}}), std::invalid_argument);
    const Observable merged(2, {{1.0, "XZ"}, {0.5, "XZ"}, {2.0, "YY"}});
    ASSERT_EQ(merged.terms().size(), 2u);
    EXPECT_DOUBLE_EQ(merged.weight_norm(), 3.5);
}

TEST(Observable, SelectorStrings) {
    EXPECT_EQ(make_hamiltonian("tfim", 4).terms().size(), 7u);
    EXPECT_EQ(make_hamiltonian("heisenberg", 4).terms().size(), 9u);
    EXPECT_EQ(make_hamiltonian("localx", 4).terms().size(), 4u);
    EXPECT_THROW(make_hamiltonian("ising", 4), std::invalid_argument);
    EXPECT_TRUE(is_known_hamiltonian("localx"));
    EXPECT_FALSE(is_known_hamiltonian("xy"));
}

TEST(Observable, MatchesDenseMatrixOracle) {
    std::mt19937_64 rng(21);
    const Observable mixed(3, {{0.3, "XYZ"}, {-1.2, "YIY"}, {0.7, "ZZI"}, {0.1, "IIX"}});
    for (const Observable *obs : {&mixed}) {
        for (int i = 0; i < 20; ++i) {
            const auto s = random_state(3, rng);
            EXPECT_NEAR(expectation(s, *obs), dense_expectation(s, *obs), 1e-12);
        }
    }
    for (const auto &obs : {tfim(4, 1, 1), heisenberg(4), local_x(4)}) {
        for (int i = 0; i < 10; ++i) {
            const auto s = random_state(4, rng);
            EXPECT_NEAR(expectation(s, obs), dense_expectation(s, obs), 1e-12);
        }
    }
}

TEST(Observable, HermitianAndBounded) {
    std::mt19937_64 rng(22);
    for (const auto &obs : {tfim(4, 1, 1), heisenberg(4), local_x(4),
                            Observable(4, {{0.5, "XYZI"}, {-2.0, "YYYY"}})}) {
        for (int i = 0; i < 50; ++i) {
            const auto s = random_state(4, rng);
            const auto e = expectation_complex(s, obs);
            EXPECT_LT(std::abs(e.imag()), 1e-10);
            EXPECT_LE(std::abs(e.real()), obs.weight_norm() + 1e-12);
        }
    }
}

TEST(Observable, ZeroCouplingTfimIsNegatedLocalField) {
    std::mt19937_64 rng(23);
    const double h = 0.7;
    for (int i = 0; i < 50; ++i) {
        const auto s = random_state(4, rng);
        EXPECT_NEAR(expectation(s, tfim(4, 0.0, h)), -h * expectation(s, local_x(4)), 1e-12);
    }
}

TEST(Observable, DimensionMismatchThrows) {
    EXPECT_THROW(expectation(StateVector(3), tfim(4, 1, 1)), std::invalid_argument);
}

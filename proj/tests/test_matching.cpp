#include <doctest.h>

#include "graphval/errors.hpp"
#include "graphval/matching.hpp"
#include "oracles.hpp"

using namespace graphval;

namespace {
const Graph p2(2, {{0, 1}});
const Graph p3(3, {{0, 1}, {1, 2}});
const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
}  // namespace

TEST_CASE("permutation type") {
    CHECK_THROWS_AS(Permutation({0, 0}), ValidationError);
    CHECK_THROWS_AS(Permutation({0, 2}), ValidationError);
    CHECK_THROWS_AS(Permutation({}), ValidationError);
    const Permutation p({2, 0, 1});
    CHECK(p.inverse().mapping() == std::vector<int>{1, 2, 0});
    CHECK(p.extended(5).mapping() == std::vector<int>{2, 0, 1, 3, 4});
    CHECK_THROWS_AS(p.extended(2), ValidationError);
}

TEST_CASE("pad_laplacian") {
    Eigen::MatrixXd m(2, 2);
    m << 1, -1, -1, 1;
    const Eigen::MatrixXd padded = pad_laplacian(m, 3);
    CHECK(padded.row(2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(padded.col(2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(padded.topLeftCorner(2, 2) == m);

    CHECK(pad_laplacian(m, 2) == m);
    CHECK(pad_laplacian(Eigen::MatrixXd::Zero(1, 1), 2) == Eigen::MatrixXd::Zero(2, 2));
    CHECK_THROWS_AS(pad_laplacian(m, 1), ValidationError);
}

TEST_CASE("solve_assignment on tiny cases") {
    Eigen::MatrixXd id(2, 2);
    id << 1, 0, 0, 1;
    CHECK(solve_assignment(id).mapping() == std::vector<int>{0, 1});

    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(solve_assignment(swap).mapping() == std::vector<int>{1, 0});

    Eigen::MatrixXd bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(solve_assignment(bad), ValidationError);
    Eigen::MatrixXd inf2 = Eigen::MatrixXd::Zero(2, 2);
    inf2(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_assignment(inf2), ValidationError);
}

TEST_CASE("solve_assignment breaks ties lexicographically") {
    CHECK(solve_assignment(Eigen::MatrixXd::Ones(3, 3)).mapping() ==
          std::vector<int>{0, 1, 2});

    Eigen::MatrixXd ring(3, 3);
    ring << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    // Optima are (1,2,0) and (2,0,1); the first is lexicographically smaller.
    CHECK(solve_assignment(ring).mapping() == std::vector<int>{1, 2, 0});
}

TEST_CASE("solve_assignment matches exhaustive search") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd profit(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                profit(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            }
        }
        const auto got = solve_assignment(profit).mapping();
        const auto expected = oracles::best_assignment(profit);
        CHECK(got == expected);
        CHECK(oracles::assignment_value(profit, got) ==
              oracles::assignment_value(profit, expected));
    }
    // Integer-valued profits force exact ties.
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        Eigen::MatrixXd profit(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                profit(i, j) = static_cast<double>(rng() % 3);
            }
        }
        CHECK(solve_assignment(profit).mapping() == oracles::best_assignment(profit));
    }
}

TEST_CASE("spectral_match recovers self- and shuffle-alignment") {
    CHECK(spectral_match(p3, p3).residual <= 1e-9);

    const Graph shuffled = p3.relabeled({2, 0, 1});
    const MatchResult m = spectral_match(p3, shuffled);
    CHECK(m.residual <= 1e-9);
    CHECK(oracles::min_alignment_residual(p3, shuffled) <= 1e-9);
}

TEST_CASE("spectral_match on unequal sizes hits the exhaustive optimum") {
    const MatchResult m = spectral_match(p2, k3);
    const double oracle = oracles::min_alignment_residual(p2, k3);
    CHECK(m.residual == doctest::Approx(oracle).epsilon(1e-9));
    // K3's Laplacian is invariant under conjugation, so the optimum is the
    // same for all six permutations: sqrt(2.5).
    CHECK(oracle == doctest::Approx(std::sqrt(2.5)).epsilon(1e-9));
}

TEST_CASE("spectral_match residual is invariant to relabeling g2") {
    // Generic spectra keep the assignment argmax unique, so the solver
    // re-finds the same alignment after a relabel. Equal sizes: padding one
    // side would reintroduce a repeated zero eigenvalue.
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 5);
        const Graph g1 = oracles::generic_graph(n, 0.5, rng);
        const Graph g2 = oracles::generic_graph(n, 0.5, rng);
        const Graph g2s = g2.relabeled(oracles::random_relabeling(g2.node_count(), rng));
        const double r1 = spectral_match(g1, g2).residual;
        const double r2 = spectral_match(g1, g2s).residual;
        CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
    }
}

TEST_CASE("spectral_match recovers isomorphisms of generic connected graphs") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = oracles::generic_graph(5 + static_cast<int>(rng() % 6), 0.5, rng);
        const Graph shuffled =
            g.relabeled(oracles::random_relabeling(g.node_count(), rng));
        CHECK(spectral_match(g, shuffled).residual <= 1e-6);
    }
}

TEST_CASE("conformity_error basics") {
    const Permutation id3 = Permutation::identity(3);
    CHECK(conformity_error(p3, p3, id3, id3) == 0.0);

    const Permutation arbitrary({2, 0, 1});
    CHECK(conformity_error(k3, k3, arbitrary, arbitrary) == 0.0);

    const double direct =
        (pad_laplacian(normalized_laplacian(p2), 3) - normalized_laplacian(k3)).norm();
    CHECK(conformity_error(p2, k3, id3, id3) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(direct == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));

    CHECK_THROWS_AS(conformity_error(p2, k3, Permutation::identity(2), id3),
                    ValidationError);
    CHECK_THROWS_AS(conformity_error(k3, k3, Permutation::identity(2),
                                     Permutation::identity(2)),
                    ValidationError);
}

TEST_CASE("transitivity bound") {
    const MatchResult a{Permutation::identity(2), 0.0};
    const MatchResult b{Permutation::identity(2), 0.0};
    CHECK(transitivity_bound(a, b) == 0.0);
    const MatchResult c{Permutation::identity(2), 1.5};
    const MatchResult d{Permutation::identity(2), 2.5};
    CHECK(transitivity_bound(c, d) == 4.0);
}

TEST_CASE("matching through a key graph never exceeds the transitivity bound") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g1 = oracles::random_graph(3 + static_cast<int>(rng() % 8), 0.4, rng);
        const Graph g2 = oracles::random_graph(3 + static_cast<int>(rng() % 8), 0.4, rng);
        const Graph key = oracles::random_graph(3 + static_cast<int>(rng() % 8), 0.4, rng);
        const MatchResult m1 = spectral_match(key, g1);
        const MatchResult m2 = spectral_match(key, g2);
        const int n = std::max(m1.permutation.size(), m2.permutation.size());
        const double err = conformity_error(g1, g2, m1.permutation.extended(n),
                                            m2.permutation.extended(n));
        CHECK(err <= transitivity_bound(m1, m2) + 1e-9);
    }
}

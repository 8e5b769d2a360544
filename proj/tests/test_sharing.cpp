#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "lsimamab/sharing.hpp"

using namespace lsimamab;

TEST_CASE("balanced: 20 agents over 10 arms gives two sharers per arm") {
    const auto s = make_balanced_instance(10, 20);
    const auto sizes = s.share_set_sizes(10);
    for (int size : sizes) CHECK_EQ(size, 2);
}

TEST_CASE("balanced: minimal coverage") {
    const auto s = make_balanced_instance(2, 2);
    CHECK_EQ(s.profiles[0].shared_arms, std::vector<int>{0});
    CHECK_EQ(s.profiles[1].shared_arms, std::vector<int>{1});
}

TEST_CASE("balanced: remainder lands on the lowest arms first") {
    // 25 = 2*10 + 5: arms 0..4 get three sharers, arms 5..9 get two
    const auto sizes = make_balanced_instance(10, 25).share_set_sizes(10);
    for (int i = 0; i < 5; ++i) CHECK_EQ(sizes[static_cast<std::size_t>(i)], 3);
    for (int i = 5; i < 10; ++i) CHECK_EQ(sizes[static_cast<std::size_t>(i)], 2);
}

TEST_CASE("balanced: too few agents fails coverage") {
    CHECK_THROWS_AS(make_balanced_instance(10, 9), std::invalid_argument);
}

TEST_CASE("imbalanced: degenerate even split") {
    const auto sizes = make_imbalanced_instance(10, 10).share_set_sizes(10);
    for (int size : sizes) CHECK_EQ(size, 1);
}

TEST_CASE("imbalanced: 802 agents over 10 arms") {
    // (802 - 2) / 8 = 100 sharers on every arm past the first two
    const auto sizes = make_imbalanced_instance(10, 802).share_set_sizes(10);
    CHECK_EQ(sizes[0], 1);
    CHECK_EQ(sizes[1], 1);
    for (int i = 2; i < 10; ++i) CHECK_EQ(sizes[static_cast<std::size_t>(i)], 100);
}

TEST_CASE("imbalanced: coverage impossible") {
    CHECK_THROWS_AS(make_imbalanced_instance(3, 2), std::invalid_argument);
}

TEST_CASE("random instance is deterministic under a fixed seed") {
    Rng a(4242), b(4242);
    const auto [model1, sharing1] = make_random_instance(10, 37, a);
    const auto [model2, sharing2] = make_random_instance(10, 37, b);
    CHECK_EQ(model1.means, model2.means);
    REQUIRE_EQ(sharing1.n_agents(), sharing2.n_agents());
    for (int m = 0; m < sharing1.n_agents(); ++m)
        CHECK_EQ(sharing1.profiles[static_cast<std::size_t>(m)].shared_arms,
                 sharing2.profiles[static_cast<std::size_t>(m)].shared_arms);
}

TEST_CASE("random instance always covers every arm") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto [model, sharing] = make_random_instance(7, 7 + static_cast<int>(seed % 5), rng);
        CHECK(sharing.fully_covered(7));
        for (double mu : model.means) CHECK((mu >= 0.0 && mu < 1.0));
    }
}

TEST_CASE("random sharing sizes match the multinomial") {
    // 10 arms, 1e4 agents: one pinned sharer per arm plus (M-N)/N expected
    // extras. Across S seeds the mean of |S_i| lands within 3 sigma/sqrt(S)
    // of 1 + (M-N)/N, with sigma^2 = (M-N) p (1-p).
    const int n_arms = 10;
    const int n_agents = 10000;
    const int n_seeds = 100;
    const double p = 1.0 / n_arms;
    const double expected = 1.0 + (n_agents - n_arms) * p;
    const double sigma = std::sqrt((n_agents - n_arms) * p * (1.0 - p));
    const double tol = 3.0 * sigma / std::sqrt(static_cast<double>(n_seeds));

    std::vector<double> mean_sizes(n_arms, 0.0);
    for (int seed = 0; seed < n_seeds; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed) + 1000);
        const auto [model, sharing] = make_random_instance(n_arms, n_agents, rng);
        const auto sizes = sharing.share_set_sizes(n_arms);
        for (int i = 0; i < n_arms; ++i)
            mean_sizes[static_cast<std::size_t>(i)] += static_cast<double>(sizes[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n_arms; ++i) {
        mean_sizes[static_cast<std::size_t>(i)] /= n_seeds;
        CHECK(std::abs(mean_sizes[static_cast<std::size_t>(i)] - expected) <= tol);
    }
}

TEST_CASE("multi-share ring covers every arm twice per ten agents") {
    const auto s = make_multi_share_instance(10, 20);
    CHECK_EQ(s.profiles[0].shared_arms, std::vector<int>({0, 1}));
    CHECK_EQ(s.profiles[9].shared_arms, std::vector<int>({0, 9}));
    const auto sizes = s.share_set_sizes(10);
    for (int size : sizes) CHECK_EQ(size, 4);
}

TEST_CASE("structure validation") {
    SharingStructure s;
    s.profiles = {{0, {0, 2}}, {1, {}}};
    CHECK_NOTHROW(s.validate(3));
    CHECK(!s.fully_covered(3));
    s.profiles[0].shared_arms = {2, 0};
    CHECK_THROWS_AS(s.validate(3), std::invalid_argument);
    s.profiles[0].shared_arms = {0, 3};
    CHECK_THROWS_AS(s.validate(3), std::invalid_argument);
}

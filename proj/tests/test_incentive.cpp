#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lsimamab/incentive.hpp"
#include "lsimamab/rng.hpp"

using namespace lsimamab;

namespace {

AgentLedger ledger_of(std::vector<long long> explore, std::vector<long long> commit) {
    AgentLedger l;
    l.explore_counts = std::move(explore);
    l.commit_counts = std::move(commit);
    return l;
}

constexpr double kSpreadSq = 0.035898384862245413;   // (sqrt 2 - sqrt 1.5)^2
constexpr double kSpreadQuad = 0.0012886940357178906;

}  // namespace

TEST_CASE("settlement units at pinned logs") {
    // count 128, log hook 4, B = 1: sqrt(8 * 4 * 4 / 128) = 1
    CHECK_EQ(compensation_unit(128, 4.0, 1.0), doctest::Approx(1.0).epsilon(1e-14));
    // cost unit collapses to sqrt(spread^4 / 512) when count equals the log
    CHECK_EQ(cost_unit(4, 4.0, 1.0), doctest::Approx(0.0015864994606086398).epsilon(1e-12));
    CHECK_EQ(cost_unit(4, 4.0, 1.0),
             doctest::Approx(std::sqrt(kSpreadQuad / 512.0)).epsilon(1e-12));
    CHECK_THROWS_AS(compensation_unit(0, 4.0, 1.0), std::logic_error);
    CHECK_THROWS_AS(compensation_unit(5, 4.0, 0.5), std::invalid_argument);
}

TEST_CASE("compensation over eliminated arms") {
    const double log_hook = 4.0;
    SUBCASE("no eliminated arms pays nothing") {
        const std::vector<long long> counts = {100, 50};
        const std::vector<std::uint8_t> active = {1, 1};
        const auto ledger = ledger_of({60, 40}, {0, 0});
        CHECK_EQ(compute_compensation(ledger, counts, active, log_hook, 1.0), 0.0);
    }
    SUBCASE("five pulls of one eliminated arm at unit 1") {
        const std::vector<long long> counts = {100, 128};
        const std::vector<std::uint8_t> active = {1, 0};
        const auto ledger = ledger_of({0, 3}, {0, 2});
        CHECK_EQ(compute_compensation(ledger, counts, active, log_hook, 1.0),
                 doctest::Approx(5.0).epsilon(1e-14));
    }
    SUBCASE("eliminated arm with zero count is an internal inconsistency") {
        const std::vector<long long> counts = {100, 0};
        const std::vector<std::uint8_t> active = {1, 0};
        const auto ledger = ledger_of({1, 0}, {0, 0});
        CHECK_THROWS_AS(compute_compensation(ledger, counts, active, log_hook, 1.0),
                        std::logic_error);
    }
}

TEST_CASE("oracle settlement values") {
    // two-arm oracle: arm 1 eliminated, N = 221, T = 1000, B = 1;
    // frozen with 40-digit arithmetic
    const double log_t = std::log(1000.0);
    const std::vector<long long> counts = {222, 221};
    const std::vector<std::uint8_t> active = {1, 0};
    const auto agent2 = ledger_of({0, 221}, {779, 0});
    const double com = compute_compensation(agent2, counts, active, log_t, 1.0);
    CHECK_EQ(com, doctest::Approx(221.0240831515011).epsilon(1e-9));
    const double cost = compute_cost(counts, active, log_t, 1.0);
    CHECK_EQ(cost, doctest::Approx(0.06198755938123061).epsilon(1e-9));
    // the agent who never pulled the dead arm collects nothing
    const auto agent1 = ledger_of({222, 0}, {778, 0});
    CHECK_EQ(compute_compensation(agent1, counts, active, log_t, 1.0), 0.0);
}

TEST_CASE("cost with and without the agent's own broadcasts") {
    const double log_hook = 4.0;
    const std::vector<long long> counts = {200, 128};
    const std::vector<std::uint8_t> active = {1, 0};
    const double everyone = compute_cost(counts, active, log_hook, 1.0);
    const auto sharer = ledger_of({0, 28}, {0, 0});
    const double received_only =
        compute_cost_excluding_own(sharer, counts, active, log_hook, 1.0);
    CHECK_EQ(everyone, doctest::Approx(128.0 * cost_unit(128, log_hook, 1.0)));
    CHECK_EQ(received_only, doctest::Approx(100.0 * cost_unit(128, log_hook, 1.0)));
    CHECK(received_only < everyone);
}

TEST_CASE("no eliminated arms means zero cost") {
    const std::vector<long long> counts = {10, 20};
    const std::vector<std::uint8_t> active = {1, 1};
    CHECK_EQ(compute_cost(counts, active, 4.0, 1.0), 0.0);
}

TEST_CASE("gap bracket") {
    SUBCASE("upper closed form at log hook 1, count 32") {
        const auto b = delta_bracket_log(32, 1.0, 1.0);
        CHECK_EQ(b.upper, doctest::Approx(1.0).epsilon(1e-14));
        CHECK_EQ(b.lower, doctest::Approx(std::sqrt(kSpreadSq / 32.0)).epsilon(1e-12));
        CHECK(b.lower < b.upper);
    }
    SUBCASE("lower closed form at count 1") {
        const auto b = delta_bracket_log(1, 1.0, 1.0);
        CHECK_EQ(b.lower, doctest::Approx(0.1894686909815061).epsilon(1e-12));
    }
    SUBCASE("oracle bracket contains the true gap") {
        const auto b = delta_bracket(221, 1000, 1.0);
        CHECK_EQ(b.lower, doctest::Approx(0.03349729897526812).epsilon(1e-10));
        CHECK_EQ(b.upper, doctest::Approx(1.0001089735362041).epsilon(1e-10));
        CHECK(b.lower <= 0.5);
        CHECK(0.5 <= b.upper);
    }
    SUBCASE("lower stays below upper across counts") {
        for (long long n = 1; n < 5000; n = n * 3 + 1) {
            const auto b = delta_bracket(n, 100000, 2.5);
            CHECK(b.lower < b.upper);
        }
    }
    CHECK_THROWS_AS(delta_bracket(0, 1000, 1.0), std::logic_error);
}

TEST_CASE("ucb pull floor") {
    const double spread = std::sqrt(2.0) - std::sqrt(1.5);
    CHECK_EQ(ucb_pull_floor_log(spread, 4.0), 1);
    CHECK_EQ(ucb_pull_floor(0.5, 1000), 1);  // ceil(0.2480) = 1
    // diverges as the gap shrinks
    CHECK(ucb_pull_floor(0.01, 1000) > ucb_pull_floor(0.02, 1000));
    CHECK(ucb_pull_floor(0.02, 1000) > ucb_pull_floor(0.2, 1000));
    CHECK_THROWS_AS(ucb_pull_floor(0.0, 1000), std::invalid_argument);
    CHECK_THROWS_AS(ucb_pull_floor(-0.5, 1000), std::invalid_argument);
}

TEST_CASE("individual rationality verdicts") {
    const ArmModel model = ArmModel::bernoulli_arms({0.9, 0.4});
    IncentiveOutcome outcome;
    outcome.raw_regret = {10.0, 10.0, 10.0};
    outcome.compensation = {0.0, 0.0, 5.0};
    outcome.cost = {0.0, 2.0, 2.0};
    const double ucb_regret = 10.0;
    const auto report = check_ir(outcome, ucb_regret, model, 100000);
    CHECK(report.verdict[0]);   // boundary: equality passes
    CHECK(!report.verdict[1]);  // cost with no compensation is a strict violation
    CHECK(report.verdict[2]);
    CHECK(report.horizon_condition_met);  // 1e5 / ln^2(1e5) = 754 > 2 / (4 * 0.5^4)
}

TEST_CASE("ir horizon condition") {
    const ArmModel tight = ArmModel::bernoulli_arms({0.9, 0.88});
    // gap 0.02: N / (4 gap^4) = 2 / (4 * 1.6e-7) = 3.1e6 >> T / ln^2 T
    CHECK(!ir_horizon_condition(tight, 100000));
    const ArmModel no_gap = ArmModel::bernoulli_arms({0.5, 0.5});
    CHECK(!ir_horizon_condition(no_gap, 100000));
}

TEST_CASE("profit identity is exact bookkeeping") {
    Rng rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const int n_agents = 1 + static_cast<int>(rng.below(8));
        IncentiveOutcome outcome;
        double com_sum = 0.0, cost_sum = 0.0;
        for (int m = 0; m < n_agents; ++m) {
            const double com = rng.uniform01() * 100.0;
            const double cost = rng.uniform01() * 10.0;
            outcome.compensation.push_back(com);
            outcome.cost.push_back(cost);
            outcome.controller_profit += cost - com;
            com_sum += com;
            cost_sum += cost;
        }
        CHECK_EQ(outcome.controller_profit,
                 doctest::Approx(cost_sum - com_sum).epsilon(1e-12));
    }
}

#include <sstream>
#include <vector>

#include "cleanup/agents.hpp"
#include "doctest.h"

using namespace cleanup;

TEST_CASE("action table layout") {
    CHECK(action_count(false, 2) == 7);
    CHECK(action_count(true, 2) == 10);
    CHECK(action_from_index(kActMoveUp) == Action{ActionKind::MoveUp, 0});
    CHECK(action_from_index(kActClean) == Action{ActionKind::Clean, 0});
    CHECK(action_from_index(kActPick) == Action{ActionKind::Pick, 0});
    CHECK(action_from_index(7) == Action{ActionKind::ChooseTeam, 0});
    CHECK(action_from_index(9) == Action{ActionKind::ChooseTeam, 2});
}

TEST_CASE("greedy cleaner rules") {
    GreedyCleanerPolicy policy;
    SplitMix64 rng(1);

    Observation obs;
    obs.region = Region::Open;
    obs.wasteInReach = 2;
    CHECK(policy.act(obs, rng) == kActClean);

    obs.wasteInReach = 0;
    CHECK(policy.act(obs, rng) == kActMoveUp);  // toward the river

    obs.region = Region::Orchard;
    CHECK(policy.act(obs, rng) == kActMoveUp);

    obs.region = Region::RiverBank;
    bool sawLeft = false;
    bool sawRight = false;
    for (int i = 0; i < 50; ++i) {
        const int a = policy.act(obs, rng);
        CHECK((a == kActMoveLeft || a == kActMoveRight));
        sawLeft = sawLeft || a == kActMoveLeft;
        sawRight = sawRight || a == kActMoveRight;
    }
    CHECK(sawLeft);
    CHECK(sawRight);
}

TEST_CASE("greedy picker rules") {
    GreedyPickerPolicy policy;
    SplitMix64 rng(2);

    Observation obs;
    obs.region = Region::RiverBank;
    obs.applesInReach = 0;
    CHECK(policy.act(obs, rng) == kActMoveDown);  // toward the orchard

    obs.applesInReach = 3;
    CHECK(policy.act(obs, rng) == kActPick);

    obs.applesInReach = 0;
    obs.region = Region::Orchard;
    for (int i = 0; i < 50; ++i) {
        const int a = policy.act(obs, rng);
        CHECK(a >= kActMoveUp);
        CHECK(a <= kActMoveRight);
    }
}

TEST_CASE("random policy never chooses a team") {
    RandomPolicy policy;
    SplitMix64 rng(3);
    Observation obs;
    std::vector<int> counts(kBasicActionCount, 0);
    for (int i = 0; i < 7000; ++i) {
        const int a = policy.act(obs, rng);
        REQUIRE(a >= 0);
        REQUIRE(a < kBasicActionCount);
        ++counts[a];
    }
    for (const int c : counts) CHECK(c > 0);
}

TEST_CASE("epsilon 1 explores uniformly") {
    QLearnerPolicy::Params params;
    params.epsilonStart = 1.0;
    QLearnerPolicy policy(params);
    SplitMix64 rng(17);
    Observation obs;
    std::vector<int> counts(kBasicActionCount, 0);
    const int draws = 10500;
    for (int i = 0; i < draws; ++i) ++counts[policy.act(obs, rng)];
    // expectation 1500 per action; 5 sigma is about 190
    for (const int c : counts) {
        CHECK(c > 1500 - 190);
        CHECK(c < 1500 + 190);
    }
}

TEST_CASE("epsilon 0 is greedy with lowest-index tie-break") {
    QLearnerPolicy::Params params;
    params.epsilonStart = 0.0;
    params.epsilonFloor = 0.0;
    QLearnerPolicy policy(params);
    SplitMix64 rng(4);
    Observation obs;
    CHECK(policy.act(obs, rng) == 0);  // empty table: everything ties at 0

    // reward action 6 in this state, it becomes the greedy pick
    policy.update(Transition{obs.key(), kActPick, 1.0, obs.key() + 1, true});
    CHECK(policy.act(obs, rng) == kActPick);
}

TEST_CASE("q-learning update arithmetic") {
    QLearnerPolicy::Params params;
    params.alpha = 0.1;
    params.gamma = 0.9;
    QLearnerPolicy policy(params);

    SUBCASE("single reward") {
        policy.update(Transition{10, 2, 1.0, 11, false});
        CHECK(policy.q(10, 2) == doctest::Approx(0.1));
    }
    SUBCASE("zero reward leaves zero") {
        policy.update(Transition{10, 2, 0.0, 11, false});
        CHECK(policy.q(10, 2) == doctest::Approx(0.0));
    }
    SUBCASE("terminal uses no bootstrap") {
        QLearnerPolicy::Params p2;
        p2.alpha = 0.5;
        p2.gamma = 0.9;
        QLearnerPolicy learner(p2);
        learner.update(Transition{20, 1, 5.0, 10, false});  // Q(20,1) becomes 2.5
        learner.update(Transition{30, 0, 1.0, 20, true});   // terminal ignores Q(20,*)
        CHECK(learner.q(30, 0) == doctest::Approx(0.5));
    }
    SUBCASE("bootstrap uses the max of the next row") {
        policy.update(Transition{11, 3, 1.0, 12, false});  // Q(11,3) = 0.1
        policy.update(Transition{10, 0, 0.0, 11, false});
        CHECK(policy.q(10, 0) == doctest::Approx(0.1 * 0.9 * 0.1));
    }
}

TEST_CASE("epsilon decays linearly to the floor and stays there") {
    QLearnerPolicy::Params params;
    params.epsilonStart = 1.0;
    params.epsilonFloor = 0.05;
    params.epsilonDecayFraction = 0.8;
    QLearnerPolicy policy(params);

    const int episodes = 500;
    double previous = 1.1;
    for (int e = 0; e < episodes; ++e) {
        policy.begin_episode(e, episodes);
        CHECK(policy.epsilon() <= previous);
        previous = policy.epsilon();
    }
    CHECK(previous == doctest::Approx(0.05));
    policy.begin_episode(0, episodes);
    CHECK(policy.epsilon() == doctest::Approx(1.0));
    policy.begin_episode(400, episodes);
    CHECK(policy.epsilon() == doctest::Approx(0.05));
}

TEST_CASE("policy snapshots round-trip") {
    QLearnerPolicy::Params params;
    QLearnerPolicy policy(params);
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i) {
        policy.update(Transition{rng.next_below(50), static_cast<int>(rng.next_below(7)),
                                 rng.next_unit() * 2.0 - 0.5, rng.next_below(50), false});
    }
    std::ostringstream out;
    policy.save(out);

    QLearnerPolicy loaded(params);
    std::istringstream in(out.str());
    loaded.load(in);
    CHECK(loaded.table_size() == policy.table_size());
    for (uint64_t key = 0; key < 50; ++key) {
        for (int a = 0; a < 7; ++a) CHECK(loaded.q(key, a) == policy.q(key, a));
    }

    std::ostringstream again;
    loaded.save(again);
    CHECK(again.str() == out.str());
}

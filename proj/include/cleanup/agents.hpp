#pragma once
// Policy interface, scripted baselines, and an independent tabular Q-learner.
// Policies see exactly the Observation type, never identity labels; each agent
// owns its policy instance and rng stream.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "cleanup/action.hpp"
#include "cleanup/env.hpp"
#include "cleanup/rng.hpp"

namespace cleanup {

// Fixed action table. Indices 0..6 are the basic actions; with team actions
// enabled, index 7+k maps to ChooseTeam(slot = k) for k in 0..teamSlots.
inline constexpr int kActMoveUp = 0;
inline constexpr int kActMoveDown = 1;
inline constexpr int kActMoveLeft = 2;
inline constexpr int kActMoveRight = 3;
inline constexpr int kActStay = 4;
inline constexpr int kActClean = 5;
inline constexpr int kActPick = 6;
inline constexpr int kBasicActionCount = 7;

int action_count(bool teamActions, int teamSlots);
Action action_from_index(int index);

struct Transition {
    uint64_t obsKey = 0;
    int actionIndex = 0;
    double reward = 0.0;  // shared material + shaping
    uint64_t nextObsKey = 0;
    bool terminal = false;
};

class Policy {
public:
    virtual ~Policy() = default;
    virtual int act(const Observation& obs, SplitMix64& rng) = 0;
    virtual void update(const Transition&) {}              // scripted: no-op
    virtual void begin_episode(int /*episode*/, int /*totalEpisodes*/) {}
};

// Clean whenever waste is in reach; otherwise head for the river (sidestepping
// every fourth approach step so two agents meeting head-on cannot pin each
// other), and once at the bank sweep it laterally so every column gets covered.
class GreedyCleanerPolicy final : public Policy {
public:
    int act(const Observation& obs, SplitMix64& rng) override;
    void begin_episode(int, int) override {
        heading_ = 0;
        patrolSteps_ = 0;
        approachSteps_ = 0;
    }

private:
    int heading_ = 0;  // -1 left, +1 right, 0 undecided
    int patrolSteps_ = 0;
    int approachSteps_ = 0;
};

// Pick whenever apples are in reach; otherwise head for the orchard (with the
// same anti-pinning sidestep), and once inside roam it.
class GreedyPickerPolicy final : public Policy {
public:
    int act(const Observation& obs, SplitMix64& rng) override;
    void begin_episode(int, int) override { approachSteps_ = 0; }

private:
    int approachSteps_ = 0;
};

// Uniform over the seven basic actions; never chooses a team.
class RandomPolicy final : public Policy {
public:
    int act(const Observation& obs, SplitMix64& rng) override;
};

// One-step Q-learning over the packed observation key, epsilon-greedy with a
// linear per-episode epsilon decay. The table grows only on first update.
class QLearnerPolicy final : public Policy {
public:
    struct Params {
        double alpha = 0.1;
        double gamma = 0.95;
        double epsilonStart = 1.0;
        double epsilonFloor = 0.05;
        double epsilonDecayFraction = 0.8;  // fraction of episodes spent decaying
        bool teamActions = false;
        int teamSlots = 2;                  // highest selectable slot
    };

    explicit QLearnerPolicy(Params params);

    int act(const Observation& obs, SplitMix64& rng) override;
    void update(const Transition& t) override;
    void begin_episode(int episode, int totalEpisodes) override;

    double epsilon() const { return epsilon_; }
    int action_count() const { return actionCount_; }
    double q(uint64_t obsKey, int actionIndex) const;
    size_t table_size() const { return table_.size(); }

    // Flat text snapshot: one "key action value" triple per line.
    void save(std::ostream& out) const;
    void load(std::istream& in);

private:
    Params params_;
    int actionCount_;
    double epsilon_;
    std::map<uint64_t, std::vector<double>> table_;
};

}  // namespace cleanup

#pragma once
// Episode log: everything needed to replay an episode and compute all metrics
// offline. Replaying the logged actions through the engine from (config, seed)
// reproduces the logged outcomes exactly.

#include <cstdint>
#include <vector>

#include "cleanup/action.hpp"
#include "cleanup/config.hpp"
#include "cleanup/env.hpp"
#include "cleanup/identity.hpp"
#include "cleanup/teams.hpp"

namespace cleanup {

struct StepRecord {
    std::vector<Action> actions;
    StepOutcome outcome;
    bool operator==(const StepRecord&) const = default;
};

struct EpisodeLog {
    EnvConfig config;
    uint64_t seed = 0;
    std::vector<Identity> identities;   // experimenter-visible only
    std::vector<int> initialTeams;      // slot per agent at step 0
    std::vector<StepRecord> steps;
    TeamRegistry finalTeams;
    bool operator==(const EpisodeLog&) const = default;
};

}  // namespace cleanup

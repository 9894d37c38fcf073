#pragma once
// Gridworld state machine: river/orchard topology, waste and apple dynamics,
// agent movement, and the clean/pick action effects.
//
// Step phases, in fixed order:
//   1. team-change actions (agent-index order)
//   2. movement, resolved in a randomized agent order drawn from the env rng;
//      moves into walls, river cells or occupied cells become Stay
//   3. Clean/Pick effects, same randomized order
//   4. waste spawn: with wasteSpawnProb one uniformly chosen clean river cell
//   5. apple spawn: each empty orchard cell independently, at the current
//      pollution's spawn probability
//   6. material rewards pooled and shared within teams
//   7. identity-utility shaping (private, post-sharing); step counter advances

#include <cstdint>
#include <span>
#include <vector>

#include "cleanup/action.hpp"
#include "cleanup/config.hpp"
#include "cleanup/identity.hpp"
#include "cleanup/rng.hpp"
#include "cleanup/teams.hpp"

namespace cleanup {

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell&) const = default;
};

enum class Region : uint8_t { RiverBank, Open, Orchard };

// Agent-local feature bundle. Deliberately excludes every identity label;
// specializations surface only through the last-step effect magnitudes.
struct Observation {
    Region region = Region::Open;
    int wasteInReach = 0;
    int applesInReach = 0;
    int pollutionBucket = 0;   // five equal bins over [0, 1]
    int teamSizeBucket = 0;    // 0: solo, 1: size 2-3, 2: size >= 4
    bool switchAllowed = false;
    int lastApplesHarvested = 0;
    int lastWasteCleaned = 0;

    // Packed state key for tabular learners (fields clamped to their bit widths).
    uint64_t key() const;
    bool operator==(const Observation&) const = default;
};

struct AgentRecord {
    int id = 0;
    Cell pos;
    Identity identity = Identity::ApplePicker;
    int lastApplesHarvested = 0;
    int lastWasteCleaned = 0;
    double totalMaterialReward = 0.0;
    double totalShapingReward = 0.0;
    bool operator==(const AgentRecord&) const = default;
};

// Row-major boolean grid over the full board; flags are only ever set inside
// the region they belong to (waste in river rows, apples in orchard rows).
struct FlagGrid {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> cells;

    static FlagGrid sized(int width, int height) {
        return FlagGrid{width, height, std::vector<uint8_t>(
                            static_cast<size_t>(width) * height, 0)};
    }
    bool at(int row, int col) const { return cells[static_cast<size_t>(row) * width + col] != 0; }
    void set(int row, int col, bool v) { cells[static_cast<size_t>(row) * width + col] = v ? 1 : 0; }
    int count() const;
    bool operator==(const FlagGrid&) const = default;
};

struct EnvState {
    int step = 0;
    FlagGrid waste;
    FlagGrid apples;
    std::vector<AgentRecord> agents;
    TeamRegistry teams;
    SplitMix64 rng;
    bool operator==(const EnvState&) const = default;
};

struct AgentOutcome {
    double materialReward = 0.0;  // post-sharing
    double shapingReward = 0.0;
    int applesHarvested = 0;
    int wasteCleaned = 0;
    bool proposedTeamChange = false;
    int teamChangeFrom = 0;
    int teamChangeTo = 0;
    bool teamChangeAccepted = false;
    bool operator==(const AgentOutcome&) const = default;
};

struct StepOutcome {
    std::vector<AgentOutcome> agents;
    double pollutionLevel = 0.0;  // end of step
    int applesSpawned = 0;
    int wasteSpawned = 0;
    bool operator==(const StepOutcome&) const = default;
};

// Fresh episode state. Draw order from the seed: waste placement, agent
// placement, identity assignment. Waste count is initialPollution * riverCells
// rounded half-to-even; agents land on distinct open-ground cells; teams come
// from config.initialTeams (everyone solo when empty).
EnvState new_env(const EnvConfig& config, uint64_t seed);

// |wasteCells| / |river cells|.
double pollution_level(const EnvState& state, const EnvConfig& config);

// appleSpawnMax * max(0, 1 - pollution/depletionThreshold); exactly 0 at or
// above the threshold.
double apple_spawn_probability(double pollution, const EnvConfig& config);

// Advances one step (phases above). Requires one action per agent and an
// unfinished episode.
StepOutcome step(EnvState& state, const EnvConfig& config, std::span<const Action> actions);

// Removes up to the agent's clean capacity of waste cells within reach,
// nearest first, row-major tie-break. Returns the count removed.
int apply_clean(EnvState& state, int agentId, const EnvConfig& config);

// Same for apples; the caller credits count * appleReward as raw reward.
int apply_pick(EnvState& state, int agentId, const EnvConfig& config);

Observation observe(const EnvState& state, int agentId, const EnvConfig& config);

Region region_of(const EnvConfig& config, Cell pos);

int count_waste(const EnvState& state);
int count_apples(const EnvState& state);

}  // namespace cleanup

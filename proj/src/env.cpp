#include "cleanup/env.hpp"

#include <algorithm>
#include <string>

#include "cleanup/errors.hpp"
#include "cleanup/util.hpp"

namespace cleanup {

namespace {

constexpr uint64_t clamp_bits(int v, int maxValue) {
    if (v < 0) return 0;
    return static_cast<uint64_t>(v > maxValue ? maxValue : v);
}

void require_agent(const EnvState& state, int agentId) {
    if (agentId < 0 || agentId >= static_cast<int>(state.agents.size()))
        throw LookupError("unknown agent id " + std::to_string(agentId));
}

struct ReachTarget {
    int dist;
    Cell cell;
};

// Cells with a set flag within Chebyshev reach, nearest first, row-major
// tie-break. The box scan is already row-major, so a stable sort on distance
// keeps that order within each ring.
std::vector<ReachTarget> flagged_in_reach(const FlagGrid& grid, Cell pos, int reach) {
    std::vector<ReachTarget> found;
    const int r0 = std::max(0, pos.row - reach);
    const int r1 = std::min(grid.height - 1, pos.row + reach);
    const int c0 = std::max(0, pos.col - reach);
    const int c1 = std::min(grid.width - 1, pos.col + reach);
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            if (grid.at(r, c)) {
                const int dist = std::max(std::abs(r - pos.row), std::abs(c - pos.col));
                found.push_back(ReachTarget{dist, Cell{r, c}});
            }
        }
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const ReachTarget& a, const ReachTarget& b) { return a.dist < b.dist; });
    return found;
}

int remove_in_reach(FlagGrid& grid, Cell pos, int reach, int capacity) {
    int removed = 0;
    for (const auto& target : flagged_in_reach(grid, pos, reach)) {
        if (removed >= capacity) break;
        grid.set(target.cell.row, target.cell.col, false);
        ++removed;
    }
    return removed;
}

}  // namespace

int FlagGrid::count() const {
    int n = 0;
    for (const uint8_t c : cells) n += c;
    return n;
}

int count_waste(const EnvState& state) { return state.waste.count(); }
int count_apples(const EnvState& state) { return state.apples.count(); }

Region region_of(const EnvConfig& config, Cell pos) {
    if (config.isOrchardRow(pos.row)) return Region::Orchard;
    // Agents are never inside the river, so distance to it is distance to the
    // nearest river row.
    const int rowDist = std::max({config.riverRows.first - pos.row,
                                  pos.row - config.riverRows.last, 0});
    if (rowDist <= config.reachRadius) return Region::RiverBank;
    return Region::Open;
}

uint64_t Observation::key() const {
    uint64_t k = 0;
    k |= clamp_bits(static_cast<int>(region), 3);
    k |= clamp_bits(wasteInReach, 15) << 2;
    k |= clamp_bits(applesInReach, 15) << 6;
    k |= clamp_bits(pollutionBucket, 7) << 10;
    k |= clamp_bits(teamSizeBucket, 3) << 13;
    k |= static_cast<uint64_t>(switchAllowed ? 1 : 0) << 15;
    k |= clamp_bits(lastApplesHarvested, 15) << 16;
    k |= clamp_bits(lastWasteCleaned, 15) << 20;
    return k;
}

EnvState new_env(const EnvConfig& config, uint64_t seed) {
    validate_or_throw(config);

    EnvState state;
    state.rng = SplitMix64(seed);
    state.waste = FlagGrid::sized(config.width, config.height);
    state.apples = FlagGrid::sized(config.width, config.height);

    // Waste placement: the nearest achievable pollution fraction.
    const int riverCells = config.riverCellCount();
    int wasteCount = static_cast<int>(round_half_even(config.initialPollution * riverCells));
    wasteCount = std::clamp(wasteCount, 0, riverCells);
    for (const int idx : sample_distinct(riverCells, wasteCount, state.rng)) {
        const int row = config.riverRows.first + idx / config.width;
        const int col = idx % config.width;
        state.waste.set(row, col, true);
    }

    // Agents on distinct open-ground cells.
    std::vector<Cell> openCells;
    openCells.reserve(config.openCellCount());
    for (int row = 0; row < config.height; ++row) {
        if (config.isRiverRow(row) || config.isOrchardRow(row)) continue;
        for (int col = 0; col < config.width; ++col) openCells.push_back(Cell{row, col});
    }
    const auto chosen = sample_distinct(static_cast<int>(openCells.size()),
                                        config.numAgents, state.rng);
    state.agents.resize(config.numAgents);
    for (int i = 0; i < config.numAgents; ++i) {
        state.agents[i].id = i;
        state.agents[i].pos = openCells[chosen[i]];
    }

    const auto identities = assign_identities(config.numAgents, config.identityRatio, state.rng);
    for (int i = 0; i < config.numAgents; ++i) state.agents[i].identity = identities[i];

    state.teams = make_registry(config.numAgents, config.initialTeams);
    return state;
}

double pollution_level(const EnvState& state, const EnvConfig& config) {
    return static_cast<double>(state.waste.count()) /
           static_cast<double>(config.riverCellCount());
}

double apple_spawn_probability(double pollution, const EnvConfig& config) {
    const double scaled = 1.0 - pollution / config.depletionThreshold;
    if (scaled <= 0.0) return 0.0;
    return config.appleSpawnMax * scaled;
}

int apply_clean(EnvState& state, int agentId, const EnvConfig& config) {
    require_agent(state, agentId);
    const auto& agent = state.agents[agentId];
    const int capacity = effect_magnitude(agent.identity, ActionKind::Clean, config);
    return remove_in_reach(state.waste, agent.pos, config.reachRadius, capacity);
}

int apply_pick(EnvState& state, int agentId, const EnvConfig& config) {
    require_agent(state, agentId);
    const auto& agent = state.agents[agentId];
    const int capacity = effect_magnitude(agent.identity, ActionKind::Pick, config);
    return remove_in_reach(state.apples, agent.pos, config.reachRadius, capacity);
}

StepOutcome step(EnvState& state, const EnvConfig& config, std::span<const Action> actions) {
    const int n = config.numAgents;
    if (static_cast<int>(actions.size()) != n)
        throw ProtocolError("step: need exactly one action per agent");
    if (state.step >= config.episodeLength)
        throw LifecycleError("step: episode already finished");

    StepOutcome out;
    out.agents.resize(n);

    // Phase 1: team changes, agent-index order.
    for (int i = 0; i < n; ++i) {
        if (actions[i].kind != ActionKind::ChooseTeam) continue;
        auto& rec = out.agents[i];
        rec.proposedTeamChange = true;
        rec.teamChangeFrom = state.teams.members[i].slot;
        rec.teamChangeTo = actions[i].teamSlot;
        rec.teamChangeAccepted =
            propose_team_change(state.teams, i, actions[i].teamSlot, state.step, config);
    }

    // Phase 2: movement in a randomized order; blocked moves become Stay.
    const auto order = random_permutation(n, state.rng);
    for (const int i : order) {
        int dr = 0;
        int dc = 0;
        switch (actions[i].kind) {
            case ActionKind::MoveUp: dr = -1; break;
            case ActionKind::MoveDown: dr = 1; break;
            case ActionKind::MoveLeft: dc = -1; break;
            case ActionKind::MoveRight: dc = 1; break;
            default: continue;
        }
        const Cell target{state.agents[i].pos.row + dr, state.agents[i].pos.col + dc};
        if (target.row < 0 || target.row >= config.height || target.col < 0 ||
            target.col >= config.width)
            continue;
        if (config.isRiverRow(target.row)) continue;
        bool occupied = false;
        for (const auto& other : state.agents) {
            if (other.id != i && other.pos == target) {
                occupied = true;
                break;
            }
        }
        if (!occupied) state.agents[i].pos = target;
    }

    // Phase 3: clean/pick effects, same randomized order.
    for (const int i : order) {
        if (actions[i].kind == ActionKind::Clean) {
            out.agents[i].wasteCleaned = apply_clean(state, i, config);
        } else if (actions[i].kind == ActionKind::Pick) {
            out.agents[i].applesHarvested = apply_pick(state, i, config);
        }
    }
    for (int i = 0; i < n; ++i) {
        state.agents[i].lastApplesHarvested = out.agents[i].applesHarvested;
        state.agents[i].lastWasteCleaned = out.agents[i].wasteCleaned;
    }

    // Phase 4: waste spawn on one uniformly chosen clean river cell.
    std::vector<Cell> cleanRiver;
    for (int row = config.riverRows.first; row <= config.riverRows.last; ++row) {
        for (int col = 0; col < config.width; ++col) {
            if (!state.waste.at(row, col)) cleanRiver.push_back(Cell{row, col});
        }
    }
    if (!cleanRiver.empty() && state.rng.next_bernoulli(config.wasteSpawnProb)) {
        const auto pick = cleanRiver[state.rng.next_below(cleanRiver.size())];
        state.waste.set(pick.row, pick.col, true);
        out.wasteSpawned = 1;
    }

    out.pollutionLevel = pollution_level(state, config);

    // Phase 5: apple spawn per empty orchard cell, row-major.
    const double spawnProb = apple_spawn_probability(out.pollutionLevel, config);
    for (int row = config.orchardRows.first; row <= config.orchardRows.last; ++row) {
        for (int col = 0; col < config.width; ++col) {
            if (state.apples.at(row, col)) continue;
            if (state.rng.next_bernoulli(spawnProb)) {
                state.apples.set(row, col, true);
                ++out.applesSpawned;
            }
        }
    }

    // Phase 6: pooled material rewards, shared equally within teams.
    std::vector<double> raw(n, 0.0);
    for (int i = 0; i < n; ++i) raw[i] = out.agents[i].applesHarvested * config.appleReward;
    const auto shared = share_rewards(raw, state.teams);
    for (int i = 0; i < n; ++i) {
        out.agents[i].materialReward = shared[i];
        state.agents[i].totalMaterialReward += shared[i];
    }

    // Phase 7: private identity-utility shaping, never pooled.
    for (int i = 0; i < n; ++i) {
        const double shaping =
            identity_utility(state.agents[i].identity, out.agents[i].applesHarvested,
                             out.agents[i].wasteCleaned, config);
        out.agents[i].shapingReward = shaping;
        state.agents[i].totalShapingReward += shaping;
    }

    ++state.step;
    return out;
}

Observation observe(const EnvState& state, int agentId, const EnvConfig& config) {
    require_agent(state, agentId);
    const auto& agent = state.agents[agentId];

    Observation obs;
    obs.region = region_of(config, agent.pos);

    const int reach = config.reachRadius;
    const int r0 = std::max(0, agent.pos.row - reach);
    const int r1 = std::min(config.height - 1, agent.pos.row + reach);
    const int c0 = std::max(0, agent.pos.col - reach);
    const int c1 = std::min(config.width - 1, agent.pos.col + reach);
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            if (state.waste.at(r, c)) ++obs.wasteInReach;
            if (state.apples.at(r, c)) ++obs.applesInReach;
        }
    }

    const double pollution = pollution_level(state, config);
    obs.pollutionBucket = std::min(4, static_cast<int>(pollution * 5.0));

    const int slot = state.teams.members[agentId].slot;
    const int size = slot > 0 ? state.teams.teamSize(slot) : 1;
    obs.teamSizeBucket = size <= 1 ? 0 : (size <= 3 ? 1 : 2);

    obs.switchAllowed = switch_allowed_now(state.teams, agentId, state.step, config);
    obs.lastApplesHarvested = agent.lastApplesHarvested;
    obs.lastWasteCleaned = agent.lastWasteCleaned;
    return obs;
}

}  // namespace cleanup

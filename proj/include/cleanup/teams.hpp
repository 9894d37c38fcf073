#pragma once
// Team membership, switching rules, and equal reward sharing. Slots form a
// fixed namespace 1..n plus 0 = solo; "creating" a team is being first to
// choose an empty slot. Joining needs no consent from existing members.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cleanup/config.hpp"
#include "cleanup/identity.hpp"

namespace cleanup {

inline constexpr int kNeverChanged = -1;

struct TeamMembership {
    int slot = 0;
    int lastChangeStep = kNeverChanged;
    int changeCount = 0;
    bool operator==(const TeamMembership&) const = default;
};

struct TeamRegistry {
    std::vector<TeamMembership> members;

    int agentCount() const { return static_cast<int>(members.size()); }
    int slotOf(int agentId) const;
    // Members sharing slot `slot` (> 0); a solo agent is always a team of 1.
    int teamSize(int slot) const;

    bool operator==(const TeamRegistry&) const = default;
};

// initialSlots empty = everyone solo; otherwise one slot per agent.
TeamRegistry make_registry(int n, const std::vector<int>& initialSlots);

// Whether the interval / change-count / lock gates allow this agent to change
// teams at `step` (target-independent part of the acceptance rule).
bool switch_allowed_now(const TeamRegistry& registry, int agentId, int step,
                        const EnvConfig& config);

// Accepts iff targetSlot differs from the current slot and switch_allowed_now
// holds. On accept the slot, lastChangeStep and changeCount are updated; on
// reject the registry is untouched.
bool propose_team_change(TeamRegistry& registry, int agentId, int targetSlot,
                         int step, const EnvConfig& config);

// Equal split inside each team (slot > 0); solo agents keep their own raw
// reward. The sum is conserved up to additive rounding.
std::vector<double> share_rewards(const std::vector<double>& rawRewards,
                                  const TeamRegistry& registry);

struct TeamComposition {
    int slot = 0;  // 0 for a solo entry
    int size = 0;
    int cleaners = 0;
    int pickers = 0;
    bool operator==(const TeamComposition&) const = default;
};

struct CompositionSummary {
    // Occupied slots ascending, then one size-1 entry per solo agent (by id).
    std::vector<TeamComposition> teams;
    double meanTeamSize = 0.0;
    std::map<int, int> sizeHistogram;                    // size -> team count
    std::map<std::pair<int, int>, int> mixHistogram;     // (cleaners, pickers) -> count
    int cleanersTotal = 0;
    int pickersTotal = 0;
};

CompositionSummary team_composition_stats(const TeamRegistry& registry,
                                          const std::vector<Identity>& identities);

}  // namespace cleanup

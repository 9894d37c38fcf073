#pragma once
// Hidden per-agent specializations. An identity is assigned once per episode,
// never appears in observations, and only shows through action capacities and
// the private utility-shaping term.

#include <cstdint>
#include <vector>

#include "cleanup/action.hpp"
#include "cleanup/config.hpp"
#include "cleanup/rng.hpp"

namespace cleanup {

enum class Identity : uint8_t { RiverCleaner, ApplePicker };

inline char identity_letter(Identity id) {
    return id == Identity::RiverCleaner ? 'C' : 'P';
}

struct IdentityProfile {
    int cleanCapacity = 1;
    int harvestCapacity = 1;
    ActionKind conformingAction = ActionKind::Pick;
};

IdentityProfile identity_profile(Identity identity, const EnvConfig& config);

// Exactly round_half_even(identityRatio * n) agents become river cleaners;
// which ones is a uniform draw from rng. Counts are exact, not per-agent coin
// flips, so the population composition is a controlled variable.
std::vector<Identity> assign_identities(int n, double identityRatio, SplitMix64& rng);

// Capacity of `action` (Clean or Pick) for an agent of this identity.
int effect_magnitude(Identity identity, ActionKind action, const EnvConfig& config);

// Utility shaping for one step's realized effects: +bonus when the conforming
// productive action had positive effect, -cost when the non-conforming one
// did, 0 otherwise. Private to the agent; never pooled with team rewards.
double identity_utility(Identity identity, int applesHarvested, int wasteCleaned,
                        const EnvConfig& config);

}  // namespace cleanup

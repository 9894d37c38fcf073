#include "cleanup/identity.hpp"

#include "cleanup/errors.hpp"
#include "cleanup/util.hpp"

namespace cleanup {

IdentityProfile identity_profile(Identity identity, const EnvConfig& config) {
    if (identity == Identity::RiverCleaner) {
        return IdentityProfile{config.cleanerCleanCapacity, config.baseHarvestCapacity,
                               ActionKind::Clean};
    }
    return IdentityProfile{config.baseCleanCapacity, config.pickerHarvestCapacity,
                           ActionKind::Pick};
}

std::vector<Identity> assign_identities(int n, double identityRatio, SplitMix64& rng) {
    std::vector<Identity> out(n, Identity::ApplePicker);
    const auto cleaners = static_cast<int>(round_half_even(identityRatio * n));
    for (const int idx : sample_distinct(n, cleaners, rng)) {
        out[idx] = Identity::RiverCleaner;
    }
    return out;
}

int effect_magnitude(Identity identity, ActionKind action, const EnvConfig& config) {
    switch (action) {
        case ActionKind::Clean:
            return identity == Identity::RiverCleaner ? config.cleanerCleanCapacity
                                                      : config.baseCleanCapacity;
        case ActionKind::Pick:
            return identity == Identity::ApplePicker ? config.pickerHarvestCapacity
                                                     : config.baseHarvestCapacity;
        default:
            throw ProtocolError("effect_magnitude: action must be Clean or Pick");
    }
}

double identity_utility(Identity identity, int applesHarvested, int wasteCleaned,
                        const EnvConfig& config) {
    const bool cleaned = wasteCleaned > 0;
    const bool harvested = applesHarvested > 0;
    if (identity == Identity::RiverCleaner) {
        if (cleaned) return config.identityUtilityBonus;
        if (harvested) return -config.identityUtilityCost;
    } else {
        if (harvested) return config.identityUtilityBonus;
        if (cleaned) return -config.identityUtilityCost;
    }
    return 0.0;
}

}  // namespace cleanup

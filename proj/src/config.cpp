#include "cleanup/config.hpp"

#include <sstream>

#include "cleanup/errors.hpp"

namespace cleanup {

std::vector<std::string> validate(const EnvConfig& c) {
    std::vector<std::string> bad;
    auto fail = [&bad](const std::string& msg) { bad.push_back(msg); };

    if (c.width < 1) fail("width: must be >= 1");
    if (c.height < 1) fail("height: must be >= 1");
    if (c.riverRows.first < 0 || c.riverRows.last >= c.height || c.riverRows.first > c.riverRows.last)
        fail("riverRows: must be a non-empty row range inside the grid");
    if (c.orchardRows.first < 0 || c.orchardRows.last >= c.height ||
        c.orchardRows.first > c.orchardRows.last)
        fail("orchardRows: must be a non-empty row range inside the grid");
    if (c.reachRadius < 1) fail("reachRadius: must be >= 1");

    if (bad.empty()) {
        if (c.riverRows.last >= c.orchardRows.first)
            fail("riverRows/orchardRows: river rows must lie above the orchard rows");
        else if (c.orchardRows.first - c.riverRows.last - 1 < 2 * c.reachRadius) {
            std::ostringstream msg;
            msg << "riverRows/orchardRows: regions must be separated by >= "
                << 2 * c.reachRadius << " open rows (2*reachRadius)";
            fail(msg.str());
        }
    }

    if (c.numAgents < 1) fail("numAgents: must be >= 1");
    if (bad.empty() && c.numAgents > c.openCellCount()) {
        std::ostringstream msg;
        msg << "numAgents: must not exceed open-ground cells (" << c.openCellCount() << ")";
        fail(msg.str());
    }
    if (c.episodeLength < 1) fail("episodeLength: must be >= 1");

    if (c.wasteSpawnProb < 0.0 || c.wasteSpawnProb > 1.0) fail("wasteSpawnProb ∈ [0,1]");
    if (c.appleSpawnMax < 0.0 || c.appleSpawnMax > 1.0) fail("appleSpawnMax ∈ [0,1]");
    if (!(c.depletionThreshold > 0.0) || c.depletionThreshold > 1.0)
        fail("depletionThreshold ∈ (0,1]");
    if (c.initialPollution < 0.0 || c.initialPollution > 1.0) fail("initialPollution ∈ [0,1]");
    if (c.appleReward < 0.0) fail("appleReward: must be >= 0");

    if (c.baseCleanCapacity < 1) fail("baseCleanCapacity: must be >= 1");
    if (c.cleanerCleanCapacity < 1) fail("cleanerCleanCapacity: must be >= 1");
    if (c.baseHarvestCapacity < 1) fail("baseHarvestCapacity: must be >= 1");
    if (c.pickerHarvestCapacity < 1) fail("pickerHarvestCapacity: must be >= 1");
    if (c.cleanerCleanCapacity < c.baseCleanCapacity)
        fail("cleanerCleanCapacity: must be >= baseCleanCapacity");
    if (c.pickerHarvestCapacity < c.baseHarvestCapacity)
        fail("pickerHarvestCapacity: must be >= baseHarvestCapacity");

    if (c.identityRatio < 0.0 || c.identityRatio > 1.0) fail("identityRatio ∈ [0,1]");
    if (c.identityUtilityBonus < 0.0) fail("identityUtilityBonus: must be >= 0");
    if (c.identityUtilityCost < 0.0) fail("identityUtilityCost: must be >= 0");

    if (c.switchInterval < 0) fail("switchInterval: must be >= 0");
    if (c.maxSwitches && *c.maxSwitches < 0) fail("maxSwitches: must be >= 0 or 'unlimited'");
    if (c.lockStep && *c.lockStep < 0) fail("lockStep: must be >= 0 or 'none'");

    if (!c.initialTeams.empty()) {
        if (static_cast<int>(c.initialTeams.size()) != c.numAgents)
            fail("initialTeams: must list exactly one slot per agent");
        for (const int slot : c.initialTeams) {
            if (slot < 0 || slot > c.numAgents) {
                fail("initialTeams: slots must be in [0, numAgents]");
                break;
            }
        }
    }

    return bad;
}

void validate_or_throw(const EnvConfig& config) {
    const auto bad = validate(config);
    if (bad.empty()) return;
    std::string joined = "invalid configuration: ";
    for (size_t i = 0; i < bad.size(); ++i) {
        if (i > 0) joined += "; ";
        joined += bad[i];
    }
    throw ConfigError(joined);
}

}  // namespace cleanup

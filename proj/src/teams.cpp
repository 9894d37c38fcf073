#include "cleanup/teams.hpp"

#include <map>
#include <string>

#include "cleanup/errors.hpp"

namespace cleanup {

namespace {

void require_agent(const TeamRegistry& registry, int agentId) {
    if (agentId < 0 || agentId >= registry.agentCount()) {
        throw LookupError("unknown agent id " + std::to_string(agentId));
    }
}

}  // namespace

int TeamRegistry::slotOf(int agentId) const {
    require_agent(*this, agentId);
    return members[agentId].slot;
}

int TeamRegistry::teamSize(int slot) const {
    if (slot <= 0) return 1;
    int size = 0;
    for (const auto& m : members) {
        if (m.slot == slot) ++size;
    }
    return size;
}

TeamRegistry make_registry(int n, const std::vector<int>& initialSlots) {
    TeamRegistry registry;
    registry.members.resize(n);
    if (!initialSlots.empty()) {
        if (static_cast<int>(initialSlots.size()) != n)
            throw ProtocolError("initial team slots: need exactly one per agent");
        for (int i = 0; i < n; ++i) {
            if (initialSlots[i] < 0 || initialSlots[i] > n)
                throw ProtocolError("initial team slots: slot out of [0, n]");
            registry.members[i].slot = initialSlots[i];
        }
    }
    return registry;
}

bool switch_allowed_now(const TeamRegistry& registry, int agentId, int step,
                        const EnvConfig& config) {
    require_agent(registry, agentId);
    const auto& m = registry.members[agentId];
    if (m.lastChangeStep != kNeverChanged && step - m.lastChangeStep < config.switchInterval)
        return false;
    if (config.maxSwitches && m.changeCount >= *config.maxSwitches) return false;
    if (config.lockStep && step >= *config.lockStep) return false;
    return true;
}

bool propose_team_change(TeamRegistry& registry, int agentId, int targetSlot, int step,
                         const EnvConfig& config) {
    require_agent(registry, agentId);
    if (targetSlot < 0 || targetSlot > registry.agentCount())
        throw ProtocolError("team slot must be in [0, n]");

    auto& m = registry.members[agentId];
    if (targetSlot == m.slot) return false;
    if (!switch_allowed_now(registry, agentId, step, config)) return false;

    m.slot = targetSlot;
    m.lastChangeStep = step;
    m.changeCount += 1;
    return true;
}

std::vector<double> share_rewards(const std::vector<double>& rawRewards,
                                  const TeamRegistry& registry) {
    if (rawRewards.size() != registry.members.size())
        throw ProtocolError("share_rewards: one raw reward per agent required");

    std::map<int, double> teamSum;
    std::map<int, int> teamCount;
    for (size_t i = 0; i < rawRewards.size(); ++i) {
        const int slot = registry.members[i].slot;
        if (slot > 0) {
            teamSum[slot] += rawRewards[i];
            teamCount[slot] += 1;
        }
    }

    std::vector<double> shared(rawRewards.size(), 0.0);
    for (size_t i = 0; i < rawRewards.size(); ++i) {
        const int slot = registry.members[i].slot;
        shared[i] = slot > 0 ? teamSum[slot] / teamCount[slot] : rawRewards[i];
    }
    return shared;
}

CompositionSummary team_composition_stats(const TeamRegistry& registry,
                                          const std::vector<Identity>& identities) {
    if (identities.size() != registry.members.size())
        throw ProtocolError("team_composition_stats: identities must align with agents");

    CompositionSummary summary;
    std::map<int, TeamComposition> bySlot;
    for (size_t i = 0; i < registry.members.size(); ++i) {
        const int slot = registry.members[i].slot;
        const bool cleaner = identities[i] == Identity::RiverCleaner;
        (cleaner ? summary.cleanersTotal : summary.pickersTotal) += 1;
        if (slot > 0) {
            auto& team = bySlot[slot];
            team.slot = slot;
            team.size += 1;
            (cleaner ? team.cleaners : team.pickers) += 1;
        }
    }
    for (const auto& [slot, team] : bySlot) summary.teams.push_back(team);
    for (size_t i = 0; i < registry.members.size(); ++i) {
        if (registry.members[i].slot == 0) {
            const bool cleaner = identities[i] == Identity::RiverCleaner;
            summary.teams.push_back(TeamComposition{0, 1, cleaner ? 1 : 0, cleaner ? 0 : 1});
        }
    }

    for (const auto& team : summary.teams) {
        summary.sizeHistogram[team.size] += 1;
        summary.mixHistogram[{team.cleaners, team.pickers}] += 1;
    }
    summary.meanTeamSize = summary.teams.empty()
                               ? 0.0
                               : static_cast<double>(registry.agentCount()) /
                                     static_cast<double>(summary.teams.size());
    return summary;
}

}  // namespace cleanup

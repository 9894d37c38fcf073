#include "cleanup/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cleanup/errors.hpp"

namespace cleanup {

namespace {

void require_complete(const EpisodeLog& log) {
    if (static_cast<int>(log.steps.size()) != log.config.episodeLength)
        throw ProtocolError("episode log is incomplete");
}

}  // namespace

double collective_return(const EpisodeLog& log) {
    require_complete(log);
    double total = 0.0;
    for (const auto& rec : log.steps) {
        for (const auto& agent : rec.outcome.agents) total += agent.materialReward;
    }
    return total;
}

double gini(const std::vector<double>& perAgentTotals) {
    if (perAgentTotals.empty()) throw ProtocolError("gini: empty input");
    double sum = 0.0;
    for (const double v : perAgentTotals) sum += v;
    if (sum <= 0.0) return 0.0;

    // Sorted form of the pairwise-difference definition:
    // sum_i (2i - n + 1) * x_(i) / (n * sum), i zero-based ascending.
    std::vector<double> sorted = perAgentTotals;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        weighted += (2.0 * static_cast<double>(i) - n + 1.0) * sorted[i];
    }
    return weighted / (n * sum);
}

std::vector<std::optional<double>> identity_conformance_rate(const EpisodeLog& log) {
    require_complete(log);
    const auto n = log.identities.size();
    std::vector<long long> productive(n, 0);
    std::vector<long long> conforming(n, 0);

    for (const auto& rec : log.steps) {
        for (size_t i = 0; i < n; ++i) {
            const auto& agent = rec.outcome.agents[i];
            const bool cleaned = agent.wasteCleaned > 0;
            const bool harvested = agent.applesHarvested > 0;
            if (!cleaned && !harvested) continue;
            productive[i] += 1;
            const bool conformed = log.identities[i] == Identity::RiverCleaner ? cleaned : harvested;
            if (conformed) conforming[i] += 1;
        }
    }

    std::vector<std::optional<double>> rates(n);
    for (size_t i = 0; i < n; ++i) {
        if (productive[i] > 0) {
            rates[i] = static_cast<double>(conforming[i]) / static_cast<double>(productive[i]);
        }
    }
    return rates;
}

TeamDynamicsSummary team_dynamics_summary(const EpisodeLog& log) {
    require_complete(log);
    const int n = static_cast<int>(log.identities.size());

    TeamDynamicsSummary summary;
    summary.acceptedChanges.assign(n, 0);
    summary.rejectedChanges.assign(n, 0);

    // Replay membership from the initial slots and the logged accepted events.
    std::vector<int> slots = log.initialTeams;
    if (slots.empty()) slots.assign(n, 0);

    double meanSizeSum = 0.0;
    for (const auto& rec : log.steps) {
        for (int i = 0; i < n; ++i) {
            const auto& agent = rec.outcome.agents[i];
            if (!agent.proposedTeamChange) continue;
            if (agent.teamChangeAccepted) {
                summary.acceptedChanges[i] += 1;
                slots[i] = agent.teamChangeTo;
            } else {
                summary.rejectedChanges[i] += 1;
            }
        }

        std::map<int, int> sizeBySlot;
        int entries = 0;
        for (int i = 0; i < n; ++i) {
            if (slots[i] > 0) {
                sizeBySlot[slots[i]] += 1;
            } else {
                ++entries;  // each solo agent is its own size-1 entry
                summary.teamSizeStepCounts[1] += 1;
            }
        }
        for (const auto& [slot, size] : sizeBySlot) {
            (void)slot;
            ++entries;
            summary.teamSizeStepCounts[size] += 1;
        }
        meanSizeSum += static_cast<double>(n) / static_cast<double>(entries);
    }
    summary.meanTeamSize = log.steps.empty() ? 0.0 : meanSizeSum / static_cast<double>(log.steps.size());
    summary.finalComposition = team_composition_stats(log.finalTeams, log.identities);
    return summary;
}

}  // namespace cleanup

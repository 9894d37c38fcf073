#pragma once
// Cooperation and team-structure metrics over episode logs. Pure functions;
// collective return counts material reward only, never shaping.

#include <map>
#include <optional>
#include <vector>

#include "cleanup/log.hpp"
#include "cleanup/teams.hpp"

namespace cleanup {

// Sum of all agents' post-sharing material rewards over the episode.
double collective_return(const EpisodeLog& log);

// Gini coefficient of a non-negative vector; 0 when the sum is zero.
double gini(const std::vector<double>& perAgentTotals);

// Per agent: fraction of productive-effect steps that used the
// identity-conforming action; nullopt when the agent was never productive.
std::vector<std::optional<double>> identity_conformance_rate(const EpisodeLog& log);

struct TeamDynamicsSummary {
    std::vector<int> acceptedChanges;             // per agent
    std::vector<int> rejectedChanges;             // per agent
    std::map<int, long long> teamSizeStepCounts;  // size -> (step, entry) occurrences
    double meanTeamSize = 0.0;                    // time-weighted over steps
    CompositionSummary finalComposition;
};

TeamDynamicsSummary team_dynamics_summary(const EpisodeLog& log);

}  // namespace cleanup

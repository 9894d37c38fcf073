#pragma once
// Experiment harness: strict config parsing, seeded episode runs, seed-sweep
// execution with CSV/replay/timeseries outputs.
//
// Per-seed stream derivation (pinned so results are portable):
//   root = SplitMix64(seed)
//   envSeedStream = SplitMix64(root.next_u64())   -> one env seed per episode
//   policySeedStream = SplitMix64(root.next_u64()) -> one rng seed per agent
// Policies and their rng streams persist across the episodes of one seed.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cleanup/agents.hpp"
#include "cleanup/config.hpp"
#include "cleanup/log.hpp"

namespace cleanup {

enum class PolicyKind { GreedyCleaner, GreedyPicker, Random, QLearner };

const char* to_string(PolicyKind kind);

struct ExperimentSpec {
    EnvConfig env;
    std::vector<PolicyKind> policies;  // resolved to numAgents entries
    QLearnerPolicy::Params learner;
    int episodes = 1;
    std::vector<uint64_t> seeds;       // at least one
    std::string outputDir = "out";
    bool writeReplays = false;
    bool writeTimeseries = false;
    bool savePolicies = false;
};

// Strict parser for the sectioned key=value format ([env], [identity],
// [teams], [agents], [experiment]). Unknown sections or keys are hard errors;
// missing keys take documented defaults; all domain violations are reported
// together. Syntax errors carry the line number.
ExperimentSpec parse_config(const std::string& text);

// Fully resolved spec echoing every effective value, in config-file syntax,
// with the simulation config hash in a leading comment.
std::string echo_spec(const ExperimentSpec& spec);

// FNV-1a over the canonical [env]/[identity]/[teams]/[agents] values (seed and
// [experiment] excluded); stamps replays so outputs are traceable to a config.
uint64_t sim_config_hash(const ExperimentSpec& spec);

std::unique_ptr<Policy> make_policy(PolicyKind kind, const QLearnerPolicy::Params& params);

// One full episode: policies act on observations, the env steps, learners see
// transitions, and every step is logged.
EpisodeLog run_episode(const EnvConfig& config, uint64_t envSeed,
                       std::vector<std::unique_ptr<Policy>>& policies,
                       std::vector<SplitMix64>& policyRngs);

// One results.csv row. Column order is fixed:
// seed,episode,collective_return,gini,mean_pollution,total_apples,
// total_cleaned,team_switches_accepted,team_switches_rejected,
// mean_team_size,conformance_mean
struct EpisodeMetricsRow {
    uint64_t seed = 0;
    int episode = 0;
    double collectiveReturn = 0.0;
    double gini = 0.0;
    double meanPollution = 0.0;
    long long totalApples = 0;
    long long totalCleaned = 0;
    long long switchesAccepted = 0;
    long long switchesRejected = 0;
    double meanTeamSize = 0.0;
    double conformanceMean = 0.0;  // NaN when no agent had a defined rate
};

EpisodeMetricsRow episode_metrics_row(const EpisodeLog& log, uint64_t seed, int episode);

std::string csv_header();
std::string csv_row(const EpisodeMetricsRow& row);

struct ExperimentSummary {
    int seedCount = 0;
    int rowCount = 0;
    double meanCollectiveReturn = 0.0;    // over per-seed episode means
    double stddevCollectiveReturn = 0.0;  // population stddev over seeds
    std::string resultsPath;
};

// Full sweep: validates the spec, opens outputs first, runs seeds in parallel
// (each seed's pipeline fully isolated), merges rows in seed order.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

}  // namespace cleanup

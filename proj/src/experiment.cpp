#include "cleanup/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>

#include "cleanup/env.hpp"
#include "cleanup/errors.hpp"
#include "cleanup/metrics.hpp"
#include "cleanup/replay.hpp"
#include "cleanup/util.hpp"

namespace fs = std::filesystem;

namespace cleanup {

namespace {

// ---------------------------------------------------------------- logging --

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CLEANUP_LOG");
        if (env == nullptr) return LogLevel::Info;
        const std::string v(env);
        if (v == "quiet") return LogLevel::Quiet;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}

void log_line(LogLevel level, const std::string& msg) {
    if (static_cast<int>(log_level()) < static_cast<int>(level)) return;
    const std::lock_guard<std::mutex> lock(log_mutex());
    std::fputs((msg + "\n").c_str(), stderr);
}

// ----------------------------------------------------------------- parser --

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (const char c : s) {
        if (c == sep) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(trim(current));
    return parts;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

long long to_int(const std::string& value, const std::string& key, int line) {
    long long out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        parse_fail(line, key + ": expected an integer, got '" + value + "'");
    return out;
}

uint64_t to_u64(const std::string& value, const std::string& key, int line) {
    uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        parse_fail(line, key + ": expected an unsigned integer, got '" + value + "'");
    return out;
}

double to_double(const std::string& value, const std::string& key, int line) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        parse_fail(line, key + ": expected a number, got '" + value + "'");
    return out;
}

bool to_bool(const std::string& value, const std::string& key, int line) {
    if (value == "true") return true;
    if (value == "false") return false;
    parse_fail(line, key + ": expected true or false, got '" + value + "'");
}

RowRange to_row_range(const std::string& value, const std::string& key, int line) {
    const auto dash = value.find('-');
    if (dash == std::string::npos)
        parse_fail(line, key + ": expected a row range like 0-2, got '" + value + "'");
    RowRange range;
    range.first = static_cast<int>(to_int(trim(value.substr(0, dash)), key, line));
    range.last = static_cast<int>(to_int(trim(value.substr(dash + 1)), key, line));
    return range;
}

PolicyKind to_policy(const std::string& value, int line) {
    if (value == "greedy_cleaner") return PolicyKind::GreedyCleaner;
    if (value == "greedy_picker") return PolicyKind::GreedyPicker;
    if (value == "random") return PolicyKind::Random;
    if (value == "qlearner") return PolicyKind::QLearner;
    parse_fail(line, "policies: unknown policy kind '" + value +
                         "' (greedy_cleaner, greedy_picker, random, qlearner)");
}

}  // namespace

const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::GreedyCleaner: return "greedy_cleaner";
        case PolicyKind::GreedyPicker: return "greedy_picker";
        case PolicyKind::Random: return "random";
        case PolicyKind::QLearner: return "qlearner";
    }
    return "?";
}

ExperimentSpec parse_config(const std::string& text) {
    ExperimentSpec spec;
    bool initialPollutionSet = false;
    bool seedsSet = false;
    std::vector<PolicyKind> policyList;

    std::istringstream in(text);
    std::string rawLine;
    std::string section;
    int lineNo = 0;

    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rawLine;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(lineNo, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "env" && section != "identity" && section != "teams" &&
                section != "agents" && section != "experiment")
                parse_fail(lineNo, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(lineNo, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) parse_fail(lineNo, "empty key");
        if (section.empty()) parse_fail(lineNo, "key '" + key + "' outside any section");

        auto& env = spec.env;
        if (section == "env") {
            if (key == "width") env.width = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "height") env.height = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "riverRows") env.riverRows = to_row_range(value, key, lineNo);
            else if (key == "orchardRows") env.orchardRows = to_row_range(value, key, lineNo);
            else if (key == "numAgents") env.numAgents = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "episodeLength") env.episodeLength = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "wasteSpawnProb") env.wasteSpawnProb = to_double(value, key, lineNo);
            else if (key == "appleSpawnMax") env.appleSpawnMax = to_double(value, key, lineNo);
            else if (key == "depletionThreshold") env.depletionThreshold = to_double(value, key, lineNo);
            else if (key == "initialPollution") {
                env.initialPollution = to_double(value, key, lineNo);
                initialPollutionSet = true;
            }
            else if (key == "appleReward") env.appleReward = to_double(value, key, lineNo);
            else if (key == "reachRadius") env.reachRadius = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "seed") env.seed = to_u64(value, key, lineNo);
            else parse_fail(lineNo, "unknown key '" + key + "' in section [env]");
        } else if (section == "identity") {
            if (key == "identityRatio") env.identityRatio = to_double(value, key, lineNo);
            else if (key == "identityUtilityBonus") env.identityUtilityBonus = to_double(value, key, lineNo);
            else if (key == "identityUtilityCost") env.identityUtilityCost = to_double(value, key, lineNo);
            else if (key == "baseCleanCapacity") env.baseCleanCapacity = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "cleanerCleanCapacity") env.cleanerCleanCapacity = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "baseHarvestCapacity") env.baseHarvestCapacity = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "pickerHarvestCapacity") env.pickerHarvestCapacity = static_cast<int>(to_int(value, key, lineNo));
            else parse_fail(lineNo, "unknown key '" + key + "' in section [identity]");
        } else if (section == "teams") {
            if (key == "switchInterval") env.switchInterval = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "maxSwitches") {
                if (value == "unlimited") env.maxSwitches.reset();
                else env.maxSwitches = static_cast<int>(to_int(value, key, lineNo));
            }
            else if (key == "lockStep") {
                if (value == "none") env.lockStep.reset();
                else env.lockStep = static_cast<int>(to_int(value, key, lineNo));
            }
            else if (key == "initialTeams") {
                env.initialTeams.clear();
                if (value != "solo") {
                    for (const auto& part : split(value, ','))
                        env.initialTeams.push_back(static_cast<int>(to_int(part, key, lineNo)));
                }
            }
            else parse_fail(lineNo, "unknown key '" + key + "' in section [teams]");
        } else if (section == "agents") {
            if (key == "policies") {
                policyList.clear();
                for (const auto& part : split(value, ',')) policyList.push_back(to_policy(part, lineNo));
            }
            else if (key == "alpha") spec.learner.alpha = to_double(value, key, lineNo);
            else if (key == "gamma") spec.learner.gamma = to_double(value, key, lineNo);
            else if (key == "epsilonStart") spec.learner.epsilonStart = to_double(value, key, lineNo);
            else if (key == "epsilonFloor") spec.learner.epsilonFloor = to_double(value, key, lineNo);
            else if (key == "epsilonDecayFraction") spec.learner.epsilonDecayFraction = to_double(value, key, lineNo);
            else if (key == "enableTeamActions") spec.learner.teamActions = to_bool(value, key, lineNo);
            else if (key == "teamSlots") spec.learner.teamSlots = static_cast<int>(to_int(value, key, lineNo));
            else parse_fail(lineNo, "unknown key '" + key + "' in section [agents]");
        } else {  // experiment
            if (key == "episodes") spec.episodes = static_cast<int>(to_int(value, key, lineNo));
            else if (key == "seeds") {
                spec.seeds.clear();
                for (const auto& part : split(value, ',')) spec.seeds.push_back(to_u64(part, key, lineNo));
                seedsSet = true;
            }
            else if (key == "outputDir") spec.outputDir = value;
            else if (key == "writeReplays") spec.writeReplays = to_bool(value, key, lineNo);
            else if (key == "writeTimeseries") spec.writeTimeseries = to_bool(value, key, lineNo);
            else if (key == "savePolicies") spec.savePolicies = to_bool(value, key, lineNo);
            else parse_fail(lineNo, "unknown key '" + key + "' in section [experiment]");
        }
    }

    // Resolution: initial pollution tracks the threshold unless set explicitly.
    if (!initialPollutionSet) spec.env.initialPollution = spec.env.depletionThreshold;
    if (!seedsSet || spec.seeds.empty()) spec.seeds = {spec.env.seed};

    if (policyList.empty()) policyList.assign(1, PolicyKind::QLearner);
    if (policyList.size() == 1 && spec.env.numAgents > 1) {
        policyList.assign(spec.env.numAgents, policyList[0]);
    }
    spec.policies = policyList;

    // Domain validation: report everything at once.
    std::vector<std::string> bad = validate(spec.env);
    if (static_cast<int>(spec.policies.size()) != spec.env.numAgents)
        bad.push_back("policies: need one policy per agent (or a single kind for all)");
    if (spec.episodes < 1) bad.push_back("episodes: must be >= 1");
    if (spec.seeds.empty()) bad.push_back("seeds: must list at least one seed");
    if (!(spec.learner.alpha > 0.0) || spec.learner.alpha > 1.0) bad.push_back("alpha ∈ (0,1]");
    if (spec.learner.gamma < 0.0 || !(spec.learner.gamma < 1.0)) bad.push_back("gamma ∈ [0,1)");
    if (spec.learner.epsilonStart < 0.0 || spec.learner.epsilonStart > 1.0)
        bad.push_back("epsilonStart ∈ [0,1]");
    if (spec.learner.epsilonFloor < 0.0 || spec.learner.epsilonFloor > spec.learner.epsilonStart)
        bad.push_back("epsilonFloor ∈ [0, epsilonStart]");
    if (!(spec.learner.epsilonDecayFraction > 0.0) || spec.learner.epsilonDecayFraction > 1.0)
        bad.push_back("epsilonDecayFraction ∈ (0,1]");
    if (spec.learner.teamSlots < 0 || spec.learner.teamSlots > spec.env.numAgents)
        bad.push_back("teamSlots: must be in [0, numAgents]");
    if (spec.outputDir.empty()) bad.push_back("outputDir: must not be empty");

    if (!bad.empty()) {
        std::string joined = "invalid configuration: ";
        for (size_t i = 0; i < bad.size(); ++i) {
            if (i > 0) joined += "; ";
            joined += bad[i];
        }
        throw ConfigError(joined);
    }
    return spec;
}

// ------------------------------------------------------------------- echo --

namespace {

std::string render_sim_sections(const ExperimentSpec& spec, bool includeSeed) {
    const auto& env = spec.env;
    std::ostringstream out;
    out << "[env]\n";
    out << "width = " << env.width << '\n';
    out << "height = " << env.height << '\n';
    out << "riverRows = " << env.riverRows.first << '-' << env.riverRows.last << '\n';
    out << "orchardRows = " << env.orchardRows.first << '-' << env.orchardRows.last << '\n';
    out << "numAgents = " << env.numAgents << '\n';
    out << "episodeLength = " << env.episodeLength << '\n';
    out << "wasteSpawnProb = " << format_double(env.wasteSpawnProb) << '\n';
    out << "appleSpawnMax = " << format_double(env.appleSpawnMax) << '\n';
    out << "depletionThreshold = " << format_double(env.depletionThreshold) << '\n';
    out << "initialPollution = " << format_double(env.initialPollution) << '\n';
    out << "appleReward = " << format_double(env.appleReward) << '\n';
    out << "reachRadius = " << env.reachRadius << '\n';
    if (includeSeed) out << "seed = " << env.seed << '\n';
    out << "\n[identity]\n";
    out << "identityRatio = " << format_double(env.identityRatio) << '\n';
    out << "identityUtilityBonus = " << format_double(env.identityUtilityBonus) << '\n';
    out << "identityUtilityCost = " << format_double(env.identityUtilityCost) << '\n';
    out << "baseCleanCapacity = " << env.baseCleanCapacity << '\n';
    out << "cleanerCleanCapacity = " << env.cleanerCleanCapacity << '\n';
    out << "baseHarvestCapacity = " << env.baseHarvestCapacity << '\n';
    out << "pickerHarvestCapacity = " << env.pickerHarvestCapacity << '\n';
    out << "\n[teams]\n";
    out << "switchInterval = " << env.switchInterval << '\n';
    out << "maxSwitches = "
        << (env.maxSwitches ? std::to_string(*env.maxSwitches) : std::string("unlimited")) << '\n';
    out << "lockStep = " << (env.lockStep ? std::to_string(*env.lockStep) : std::string("none"))
        << '\n';
    out << "initialTeams = ";
    if (env.initialTeams.empty()) {
        out << "solo";
    } else {
        for (size_t i = 0; i < env.initialTeams.size(); ++i) {
            if (i > 0) out << ',';
            out << env.initialTeams[i];
        }
    }
    out << '\n';
    out << "\n[agents]\n";
    out << "policies = ";
    for (size_t i = 0; i < spec.policies.size(); ++i) {
        if (i > 0) out << ',';
        out << to_string(spec.policies[i]);
    }
    out << '\n';
    out << "alpha = " << format_double(spec.learner.alpha) << '\n';
    out << "gamma = " << format_double(spec.learner.gamma) << '\n';
    out << "epsilonStart = " << format_double(spec.learner.epsilonStart) << '\n';
    out << "epsilonFloor = " << format_double(spec.learner.epsilonFloor) << '\n';
    out << "epsilonDecayFraction = " << format_double(spec.learner.epsilonDecayFraction) << '\n';
    out << "enableTeamActions = " << (spec.learner.teamActions ? "true" : "false") << '\n';
    out << "teamSlots = " << spec.learner.teamSlots << '\n';
    return out.str();
}

}  // namespace

uint64_t sim_config_hash(const ExperimentSpec& spec) {
    return fnv1a64(render_sim_sections(spec, /*includeSeed=*/false));
}

std::string echo_spec(const ExperimentSpec& spec) {
    std::ostringstream out;
    char hashHex[17];
    std::snprintf(hashHex, sizeof(hashHex), "%016llx",
                  static_cast<unsigned long long>(sim_config_hash(spec)));
    out << "# resolved configuration\n";
    out << "# configHash " << hashHex << '\n';
    out << render_sim_sections(spec, /*includeSeed=*/true);
    out << "\n[experiment]\n";
    out << "episodes = " << spec.episodes << '\n';
    out << "seeds = ";
    for (size_t i = 0; i < spec.seeds.size(); ++i) {
        if (i > 0) out << ',';
        out << spec.seeds[i];
    }
    out << '\n';
    out << "outputDir = " << spec.outputDir << '\n';
    out << "writeReplays = " << (spec.writeReplays ? "true" : "false") << '\n';
    out << "writeTimeseries = " << (spec.writeTimeseries ? "true" : "false") << '\n';
    out << "savePolicies = " << (spec.savePolicies ? "true" : "false") << '\n';
    return out.str();
}

// ------------------------------------------------------------------- runs --

std::unique_ptr<Policy> make_policy(PolicyKind kind, const QLearnerPolicy::Params& params) {
    switch (kind) {
        case PolicyKind::GreedyCleaner: return std::make_unique<GreedyCleanerPolicy>();
        case PolicyKind::GreedyPicker: return std::make_unique<GreedyPickerPolicy>();
        case PolicyKind::Random: return std::make_unique<RandomPolicy>();
        case PolicyKind::QLearner: return std::make_unique<QLearnerPolicy>(params);
    }
    throw ProtocolError("unknown policy kind");
}

EpisodeLog run_episode(const EnvConfig& config, uint64_t envSeed,
                       std::vector<std::unique_ptr<Policy>>& policies,
                       std::vector<SplitMix64>& policyRngs) {
    const int n = config.numAgents;
    if (static_cast<int>(policies.size()) != n || static_cast<int>(policyRngs.size()) != n)
        throw ProtocolError("run_episode: one policy and rng stream per agent required");

    EnvState state = new_env(config, envSeed);

    EpisodeLog log;
    log.config = config;
    log.seed = envSeed;
    log.identities.reserve(n);
    for (const auto& agent : state.agents) log.identities.push_back(agent.identity);
    log.initialTeams.resize(n);
    for (int i = 0; i < n; ++i) log.initialTeams[i] = state.teams.members[i].slot;
    log.steps.reserve(config.episodeLength);

    std::vector<Observation> obs(n);
    std::vector<Observation> nextObs(n);
    std::vector<int> actionIndex(n);
    std::vector<Action> actions(n);

    for (int t = 0; t < config.episodeLength; ++t) {
        for (int i = 0; i < n; ++i) {
            obs[i] = observe(state, i, config);
            actionIndex[i] = policies[i]->act(obs[i], policyRngs[i]);
            actions[i] = action_from_index(actionIndex[i]);
        }
        StepOutcome outcome = step(state, config, actions);
        const bool terminal = t + 1 == config.episodeLength;
        for (int i = 0; i < n; ++i) {
            nextObs[i] = observe(state, i, config);
            const double reward = outcome.agents[i].materialReward + outcome.agents[i].shapingReward;
            policies[i]->update(Transition{obs[i].key(), actionIndex[i], reward,
                                           nextObs[i].key(), terminal});
        }
        log.steps.push_back(StepRecord{actions, std::move(outcome)});
    }

    log.finalTeams = state.teams;
    return log;
}

EpisodeMetricsRow episode_metrics_row(const EpisodeLog& log, uint64_t seed, int episode) {
    EpisodeMetricsRow row;
    row.seed = seed;
    row.episode = episode;
    row.collectiveReturn = collective_return(log);

    const int n = static_cast<int>(log.identities.size());
    std::vector<double> perAgent(n, 0.0);
    double pollutionSum = 0.0;
    for (const auto& rec : log.steps) {
        pollutionSum += rec.outcome.pollutionLevel;
        for (int i = 0; i < n; ++i) {
            perAgent[i] += rec.outcome.agents[i].materialReward;
            row.totalApples += rec.outcome.agents[i].applesHarvested;
            row.totalCleaned += rec.outcome.agents[i].wasteCleaned;
        }
    }
    row.gini = gini(perAgent);
    row.meanPollution = log.steps.empty() ? 0.0 : pollutionSum / static_cast<double>(log.steps.size());

    const auto dynamics = team_dynamics_summary(log);
    for (int i = 0; i < n; ++i) {
        row.switchesAccepted += dynamics.acceptedChanges[i];
        row.switchesRejected += dynamics.rejectedChanges[i];
    }
    row.meanTeamSize = dynamics.meanTeamSize;

    const auto rates = identity_conformance_rate(log);
    double rateSum = 0.0;
    int rated = 0;
    for (const auto& rate : rates) {
        if (rate) {
            rateSum += *rate;
            ++rated;
        }
    }
    row.conformanceMean = rated > 0 ? rateSum / rated : std::nan("");
    return row;
}

std::string csv_header() {
    return "seed,episode,collective_return,gini,mean_pollution,total_apples,total_cleaned,"
           "team_switches_accepted,team_switches_rejected,mean_team_size,conformance_mean";
}

std::string csv_row(const EpisodeMetricsRow& row) {
    std::ostringstream out;
    out << row.seed << ',' << row.episode << ',' << format_double(row.collectiveReturn) << ','
        << format_double(row.gini) << ',' << format_double(row.meanPollution) << ','
        << row.totalApples << ',' << row.totalCleaned << ',' << row.switchesAccepted << ','
        << row.switchesRejected << ',' << format_double(row.meanTeamSize) << ','
        << format_double(row.conformanceMean);
    return out.str();
}

namespace {

struct SeedOutput {
    std::vector<EpisodeMetricsRow> rows;
    double meanCollective = 0.0;
};

SeedOutput run_seed(const ExperimentSpec& spec, uint64_t seed, uint64_t configHash) {
    SplitMix64 root(seed);
    SplitMix64 envSeeds(root.next_u64());
    SplitMix64 policySeeds(root.next_u64());

    std::vector<std::unique_ptr<Policy>> policies;
    std::vector<SplitMix64> policyRngs;
    policies.reserve(spec.policies.size());
    policyRngs.reserve(spec.policies.size());
    for (const PolicyKind kind : spec.policies) {
        policies.push_back(make_policy(kind, spec.learner));
        policyRngs.emplace_back(policySeeds.next_u64());
    }

    std::ofstream timeseries;
    if (spec.writeTimeseries) {
        const auto path = fs::path(spec.outputDir) / ("timeseries_s" + std::to_string(seed) + ".csv");
        timeseries.open(path, std::ios::binary);
        if (!timeseries) throw IoError("cannot write " + path.string());
        timeseries << "seed,episode,step,pollution,apples_spawned,waste_spawned,"
                      "apples_harvested,waste_cleaned,team_changes_accepted,team_changes_rejected\n";
    }

    SeedOutput out;
    for (int episode = 0; episode < spec.episodes; ++episode) {
        for (auto& policy : policies) policy->begin_episode(episode, spec.episodes);
        const uint64_t envSeed = envSeeds.next_u64();
        const EpisodeLog log = run_episode(spec.env, envSeed, policies, policyRngs);
        out.rows.push_back(episode_metrics_row(log, seed, episode));
        out.meanCollective += out.rows.back().collectiveReturn;

        if (spec.writeReplays) {
            const auto path = fs::path(spec.outputDir) /
                              ("replay_s" + std::to_string(seed) + "_e" + std::to_string(episode) + ".txt");
            std::ofstream sink(path, std::ios::binary);
            if (!sink) throw IoError("cannot write " + path.string());
            write_replay(log, sink, configHash);
        }
        if (spec.writeTimeseries) {
            for (size_t s = 0; s < log.steps.size(); ++s) {
                const auto& outc = log.steps[s].outcome;
                long long harvested = 0;
                long long cleaned = 0;
                long long accepted = 0;
                long long rejected = 0;
                for (const auto& agent : outc.agents) {
                    harvested += agent.applesHarvested;
                    cleaned += agent.wasteCleaned;
                    if (agent.proposedTeamChange) {
                        (agent.teamChangeAccepted ? accepted : rejected) += 1;
                    }
                }
                timeseries << seed << ',' << episode << ',' << s << ','
                           << format_double(outc.pollutionLevel) << ',' << outc.applesSpawned << ','
                           << outc.wasteSpawned << ',' << harvested << ',' << cleaned << ','
                           << accepted << ',' << rejected << '\n';
            }
        }
        log_line(LogLevel::Debug, "seed " + std::to_string(seed) + " episode " +
                                      std::to_string(episode) + " return " +
                                      format_double(out.rows.back().collectiveReturn));
    }
    out.meanCollective /= static_cast<double>(spec.episodes);

    if (spec.savePolicies) {
        for (size_t i = 0; i < policies.size(); ++i) {
            const auto* learner = dynamic_cast<const QLearnerPolicy*>(policies[i].get());
            if (learner == nullptr) continue;
            const auto path = fs::path(spec.outputDir) /
                              ("policy_s" + std::to_string(seed) + "_a" + std::to_string(i) + ".txt");
            std::ofstream sink(path, std::ios::binary);
            if (!sink) throw IoError("cannot write " + path.string());
            learner->save(sink);
        }
    }
    return out;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
    validate_or_throw(spec.env);
    if (spec.seeds.empty()) throw ConfigError("invalid configuration: seeds: must list at least one seed");
    if (spec.episodes < 1) throw ConfigError("invalid configuration: episodes: must be >= 1");
    if (static_cast<int>(spec.policies.size()) != spec.env.numAgents)
        throw ConfigError("invalid configuration: policies: need one policy per agent");

    // Open outputs before any simulation so I/O problems surface immediately.
    std::error_code ec;
    fs::create_directories(spec.outputDir, ec);
    const auto resultsPath = fs::path(spec.outputDir) / "results.csv";
    std::ofstream results(resultsPath, std::ios::binary);
    if (ec || !results) throw IoError("cannot write " + resultsPath.string());

    {
        std::ofstream resolved(fs::path(spec.outputDir) / "config.resolved.ini", std::ios::binary);
        if (!resolved) throw IoError("cannot write config.resolved.ini in " + spec.outputDir);
        resolved << echo_spec(spec);
    }

    const uint64_t configHash = sim_config_hash(spec);

    // Seeds run in parallel; each pipeline is fully isolated and rows are
    // merged in seed-list order regardless of completion order.
    std::vector<std::future<SeedOutput>> futures;
    futures.reserve(spec.seeds.size());
    for (const uint64_t seed : spec.seeds) {
        futures.push_back(std::async(std::launch::async,
                                     [&spec, seed, configHash] { return run_seed(spec, seed, configHash); }));
    }

    ExperimentSummary summary;
    summary.seedCount = static_cast<int>(spec.seeds.size());
    summary.resultsPath = resultsPath.string();

    results << csv_header() << '\n';
    std::vector<double> seedMeans;
    seedMeans.reserve(spec.seeds.size());
    for (size_t i = 0; i < futures.size(); ++i) {
        SeedOutput out = futures[i].get();
        for (const auto& row : out.rows) {
            results << csv_row(row) << '\n';
            ++summary.rowCount;
        }
        seedMeans.push_back(out.meanCollective);
        log_line(LogLevel::Info, "seed " + std::to_string(spec.seeds[i]) +
                                     " done: mean collective return " +
                                     format_double(out.meanCollective));
    }
    results.flush();
    if (!results) throw IoError("failed writing " + resultsPath.string());

    double mean = 0.0;
    for (const double m : seedMeans) mean += m;
    mean /= static_cast<double>(seedMeans.size());
    double var = 0.0;
    for (const double m : seedMeans) var += (m - mean) * (m - mean);
    var /= static_cast<double>(seedMeans.size());
    summary.meanCollectiveReturn = mean;
    summary.stddevCollectiveReturn = std::sqrt(var);
    return summary;
}

}  // namespace cleanup

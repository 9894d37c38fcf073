#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cleanup/errors.hpp"
#include "cleanup/experiment.hpp"
#include "doctest.h"

using namespace cleanup;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("cleanup_test_" + name);
    fs::remove_all(dir);
    return dir;
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (const char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

}  // namespace

TEST_CASE("empty document resolves to the documented defaults") {
    const auto spec = parse_config("");
    CHECK(spec.env.width == 18);
    CHECK(spec.env.height == 10);
    CHECK(spec.env.numAgents == 4);
    CHECK(spec.env.episodeLength == 1000);
    CHECK(spec.env.initialPollution == doctest::Approx(0.85));
    CHECK(spec.policies.size() == 4);
    CHECK(spec.policies[0] == PolicyKind::QLearner);
    CHECK(spec.episodes == 1);
    CHECK(spec.seeds == std::vector<uint64_t>{0});
}

TEST_CASE("initialPollution follows an overridden threshold") {
    const auto spec = parse_config("[env]\ndepletionThreshold = 0.25\n");
    CHECK(spec.env.initialPollution == doctest::Approx(0.25));
    const auto pinned = parse_config("[env]\ndepletionThreshold = 0.25\ninitialPollution = 0.1\n");
    CHECK(pinned.env.initialPollution == doctest::Approx(0.1));
}

TEST_CASE("domain violations are collected and name the field") {
    try {
        parse_config("[identity]\nidentityRatio = 1.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("identityRatio ∈ [0,1]") != std::string::npos);
    }

    try {
        parse_config("[env]\nnumAgents = 0\n[experiment]\nepisodes = 0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("numAgents") != std::string::npos);
        CHECK(msg.find("episodes") != std::string::npos);
    }
}

TEST_CASE("unknown keys and sections are hard errors with line numbers") {
    try {
        parse_config("[identity]\nidentiyRatio = 0.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("identiyRatio") != std::string::npos);
        CHECK(msg.find("unknown key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[enviroment]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[env]\nwidth 18\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("width = 18\n"), ConfigError);  // key before any section
}

TEST_CASE("values parse with comments, whitespace and lists") {
    const std::string text =
        "# experiment configuration\n"
        "[env]\n"
        "width = 20   # wider\n"
        "riverRows = 0-1\n"
        "orchardRows = 5-9\n"
        "seed = 7\n"
        "[teams]\n"
        "maxSwitches = unlimited\n"
        "lockStep = 400\n"
        "initialTeams = 1, 1, 2, 0\n"
        "[agents]\n"
        "policies = greedy_cleaner, greedy_picker, random, qlearner\n"
        "[experiment]\n"
        "seeds = 3,5,8\n"
        "episodes = 2\n";
    const auto spec = parse_config(text);
    CHECK(spec.env.width == 20);
    CHECK(spec.env.riverRows == RowRange{0, 1});
    CHECK(!spec.env.maxSwitches.has_value());
    CHECK(spec.env.lockStep == 400);
    CHECK(spec.env.initialTeams == std::vector<int>{1, 1, 2, 0});
    REQUIRE(spec.policies.size() == 4);
    CHECK(spec.policies[0] == PolicyKind::GreedyCleaner);
    CHECK(spec.policies[3] == PolicyKind::QLearner);
    CHECK(spec.seeds == std::vector<uint64_t>{3, 5, 8});
    CHECK(spec.episodes == 2);
}

TEST_CASE("a single policy kind broadcasts to all agents") {
    const auto spec = parse_config("[agents]\npolicies = greedy_picker\n");
    REQUIRE(spec.policies.size() == 4);
    for (const auto kind : spec.policies) CHECK(kind == PolicyKind::GreedyPicker);
}

TEST_CASE("echo contains the hash and every effective value, and re-parses") {
    auto spec = parse_config("[env]\nnumAgents = 3\n[agents]\npolicies = random\n");
    const auto echo = echo_spec(spec);
    CHECK(echo.find("# configHash ") != std::string::npos);
    CHECK(echo.find("numAgents = 3") != std::string::npos);
    CHECK(echo.find("policies = random,random,random") != std::string::npos);

    const auto reparsed = parse_config(echo);
    CHECK(reparsed.env == spec.env);
    CHECK(reparsed.policies == spec.policies);
    CHECK(sim_config_hash(reparsed) == sim_config_hash(spec));
}

TEST_CASE("hash ignores the seed but tracks simulation values") {
    auto a = parse_config("");
    auto b = parse_config("[env]\nseed = 99\n");
    CHECK(sim_config_hash(a) == sim_config_hash(b));
    auto c = parse_config("[env]\nwasteSpawnProb = 0.25\n");
    CHECK(sim_config_hash(a) != sim_config_hash(c));
}

TEST_CASE("run_experiment writes one csv row per seed and episode") {
    ExperimentSpec spec = parse_config(
        "[env]\nepisodeLength = 60\n"
        "[agents]\npolicies = greedy_cleaner,greedy_cleaner,greedy_picker,greedy_picker\n");
    spec.seeds = {1, 2, 3};
    spec.episodes = 2;
    spec.outputDir = fresh_dir("rows").string();

    const auto summary = run_experiment(spec);
    CHECK(summary.rowCount == 6);
    CHECK(summary.seedCount == 3);

    const auto csv = slurp(fs::path(spec.outputDir) / "results.csv");
    CHECK(count_lines(csv) == 7);  // header + 6 rows
    CHECK(csv.rfind("seed,episode,collective_return,gini,mean_pollution,total_apples,"
                    "total_cleaned,team_switches_accepted,team_switches_rejected,"
                    "mean_team_size,conformance_mean\n", 0) == 0);
    fs::remove_all(spec.outputDir);
}

TEST_CASE("identical specs produce byte-identical outputs") {
    ExperimentSpec spec = parse_config(
        "[env]\nepisodeLength = 80\n"
        "[teams]\ninitialTeams = 1,1,1,1\n"
        "[agents]\npolicies = greedy_cleaner,greedy_cleaner,greedy_picker,greedy_picker\n"
        "[experiment]\nseeds = 5,6\nwriteReplays = true\nwriteTimeseries = true\n");
    spec.outputDir = fresh_dir("det_a").string();
    run_experiment(spec);

    ExperimentSpec spec2 = spec;
    spec2.outputDir = fresh_dir("det_b").string();
    run_experiment(spec2);

    for (const char* name : {"results.csv", "replay_s5_e0.txt", "replay_s6_e0.txt",
                             "timeseries_s5.csv", "timeseries_s6.csv"}) {
        CHECK(slurp(fs::path(spec.outputDir) / name) == slurp(fs::path(spec2.outputDir) / name));
    }
    fs::remove_all(spec.outputDir);
    fs::remove_all(spec2.outputDir);
}

TEST_CASE("unwritable output fails before simulating") {
    ExperimentSpec spec = parse_config("");
    spec.outputDir = "/proc/definitely/not/writable";
    CHECK_THROWS_AS(run_experiment(spec), IoError);
}

TEST_CASE("learners run end to end with team actions enabled") {
    ExperimentSpec spec = parse_config(
        "[env]\nepisodeLength = 40\nnumAgents = 2\n"
        "[agents]\npolicies = qlearner\nenableTeamActions = true\nteamSlots = 2\n"
        "[experiment]\nepisodes = 3\n");
    spec.outputDir = fresh_dir("learners").string();
    const auto summary = run_experiment(spec);
    CHECK(summary.rowCount == 3);
    fs::remove_all(spec.outputDir);
}

TEST_CASE("accepted team changes in logs respect interval, count and lock rules") {
    ExperimentSpec spec = parse_config(
        "[env]\nnumAgents = 3\nepisodeLength = 80\n"
        "[teams]\nswitchInterval = 5\nmaxSwitches = 3\nlockStep = 50\n"
        "[agents]\npolicies = qlearner\nenableTeamActions = true\nteamSlots = 2\n"
        "epsilonFloor = 1.0\nepsilonStart = 1.0\n");  // stay exploratory: many proposals

    SplitMix64 root(404);
    SplitMix64 envSeeds(root.next_u64());
    SplitMix64 policySeeds(root.next_u64());
    std::vector<std::unique_ptr<Policy>> policies;
    std::vector<SplitMix64> rngs;
    for (int i = 0; i < 3; ++i) {
        policies.push_back(make_policy(PolicyKind::QLearner, spec.learner));
        rngs.emplace_back(policySeeds.next_u64());
    }
    const auto log = run_episode(spec.env, envSeeds.next_u64(), policies, rngs);

    long long proposals = 0;
    std::vector<std::vector<int>> acceptedSteps(3);
    for (size_t s = 0; s < log.steps.size(); ++s) {
        for (int i = 0; i < 3; ++i) {
            const auto& agent = log.steps[s].outcome.agents[i];
            if (!agent.proposedTeamChange) continue;
            ++proposals;
            if (agent.teamChangeAccepted) acceptedSteps[i].push_back(static_cast<int>(s));
        }
    }
    CHECK(proposals > 10);  // exploration really exercised the action
    for (int i = 0; i < 3; ++i) {
        CHECK(static_cast<int>(acceptedSteps[i].size()) <= 3);
        for (size_t k = 0; k < acceptedSteps[i].size(); ++k) {
            CHECK(acceptedSteps[i][k] < 50);
            if (k > 0) CHECK(acceptedSteps[i][k] - acceptedSteps[i][k - 1] >= 5);
        }
    }
}

TEST_CASE("replay headers carry the echoed config hash") {
    ExperimentSpec spec = parse_config(
        "[env]\nepisodeLength = 20\n"
        "[experiment]\nwriteReplays = true\n");
    spec.outputDir = fresh_dir("hash").string();
    run_experiment(spec);

    const auto echo = echo_spec(spec);
    const auto tag = echo.substr(echo.find("# configHash ") + 13, 16);
    const auto replay = slurp(fs::path(spec.outputDir) / "replay_s0_e0.txt");
    // the header seed is the episode's env seed, derived from experiment seed 0
    CHECK(replay.find("# config " + tag + " seed ") != std::string::npos);
    fs::remove_all(spec.outputDir);
}

TEST_CASE("policy snapshots are written when requested") {
    ExperimentSpec spec = parse_config(
        "[env]\nepisodeLength = 30\nnumAgents = 2\n"
        "[agents]\npolicies = qlearner,greedy_picker\n"
        "[experiment]\nsavePolicies = true\n");
    spec.outputDir = fresh_dir("snapshots").string();
    run_experiment(spec);
    CHECK(fs::exists(fs::path(spec.outputDir) / "policy_s0_a0.txt"));
    CHECK(!fs::exists(fs::path(spec.outputDir) / "policy_s0_a1.txt"));  // scripted: none
    fs::remove_all(spec.outputDir);
}

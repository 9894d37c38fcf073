#pragma once
// Every tunable knob of one experiment environment. Field names match the
// config-file keys one to one; see README for the file format.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cleanup {

struct RowRange {
    int first = 0;
    int last = 0;
    bool contains(int row) const { return row >= first && row <= last; }
    int count() const { return last - first + 1; }
    bool operator==(const RowRange&) const = default;
};

struct EnvConfig {
    // Topology. River rows lie above the orchard rows; everything between is
    // open ground. The river is impassable: agents clean from bank cells.
    int width = 18;
    int height = 10;
    RowRange riverRows{0, 2};
    RowRange orchardRows{5, 9};

    int numAgents = 4;
    int episodeLength = 1000;

    // Dynamics. The default threshold sits above the highest pollution a
    // dedicated cleaner crew cannot influence (waste beyond clean reach can
    // never be removed), so sustained cooperation stays possible while a
    // non-cleaning population still shuts growth off entirely.
    double wasteSpawnProb = 0.5;       // per step: one clean river cell fouls
    double appleSpawnMax = 0.05;       // per empty orchard cell at zero pollution
    double depletionThreshold = 0.85;  // pollution at/above which growth stops
    double initialPollution = 0.85;    // defaults to depletionThreshold
    double appleReward = 1.0;
    int reachRadius = 1;               // Chebyshev reach of Clean/Pick

    // Specialization capacities.
    int baseCleanCapacity = 1;
    int cleanerCleanCapacity = 3;
    int baseHarvestCapacity = 1;
    int pickerHarvestCapacity = 3;

    // Identity assignment and utility shaping.
    double identityRatio = 0.5;        // fraction assigned river-cleaner
    double identityUtilityBonus = 0.0; // gain for a conforming productive step
    double identityUtilityCost = 0.0;  // loss for a non-conforming one

    // Team switching rules.
    int switchInterval = 25;                 // min steps between one agent's changes
    std::optional<int> maxSwitches;          // nullopt = unlimited
    std::optional<int> lockStep;             // nullopt = never lock
    std::vector<int> initialTeams;           // empty = everyone solo; else one slot per agent

    uint64_t seed = 0;

    bool isRiverRow(int row) const { return riverRows.contains(row); }
    bool isOrchardRow(int row) const { return orchardRows.contains(row); }
    int riverCellCount() const { return riverRows.count() * width; }
    int orchardCellCount() const { return orchardRows.count() * width; }
    int openCellCount() const {
        return (height - riverRows.count() - orchardRows.count()) * width;
    }

    bool operator==(const EnvConfig&) const = default;
};

// All violated constraints, each naming the field; empty when valid.
std::vector<std::string> validate(const EnvConfig& config);

// Throws ConfigError listing every violation.
void validate_or_throw(const EnvConfig& config);

}  // namespace cleanup

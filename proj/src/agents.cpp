#include "cleanup/agents.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cleanup/errors.hpp"
#include "cleanup/util.hpp"

namespace cleanup {

int action_count(bool teamActions, int teamSlots) {
    return kBasicActionCount + (teamActions ? teamSlots + 1 : 0);
}

Action action_from_index(int index) {
    switch (index) {
        case kActMoveUp: return Action{ActionKind::MoveUp, 0};
        case kActMoveDown: return Action{ActionKind::MoveDown, 0};
        case kActMoveLeft: return Action{ActionKind::MoveLeft, 0};
        case kActMoveRight: return Action{ActionKind::MoveRight, 0};
        case kActStay: return Action{ActionKind::Stay, 0};
        case kActClean: return Action{ActionKind::Clean, 0};
        case kActPick: return Action{ActionKind::Pick, 0};
        default:
            if (index < 0) throw ProtocolError("action index out of range");
            return Action{ActionKind::ChooseTeam, index - kBasicActionCount};
    }
}

int GreedyCleanerPolicy::act(const Observation& obs, SplitMix64& rng) {
    if (obs.wasteInReach > 0) return kActClean;
    if (obs.region != Region::RiverBank) {
        if (++approachSteps_ % 4 == 0)
            return rng.next_bernoulli(0.5) ? kActMoveLeft : kActMoveRight;
        return kActMoveUp;
    }
    // Nothing to clean here: sweep the bank. Hold a heading and reverse on a
    // fixed cadence, so a wall can only pin the patrol briefly.
    if (heading_ == 0) heading_ = rng.next_bernoulli(0.5) ? -1 : 1;
    if (++patrolSteps_ % 8 == 0) heading_ = -heading_;
    return heading_ < 0 ? kActMoveLeft : kActMoveRight;
}

int GreedyPickerPolicy::act(const Observation& obs, SplitMix64& rng) {
    if (obs.applesInReach > 0) return kActPick;
    if (obs.region != Region::Orchard) {
        if (++approachSteps_ % 4 == 0)
            return rng.next_bernoulli(0.5) ? kActMoveLeft : kActMoveRight;
        return kActMoveDown;
    }
    // Roam the orchard until something grows nearby.
    switch (rng.next_below(4)) {
        case 0: return kActMoveUp;
        case 1: return kActMoveDown;
        case 2: return kActMoveLeft;
        default: return kActMoveRight;
    }
}

int RandomPolicy::act(const Observation&, SplitMix64& rng) {
    return static_cast<int>(rng.next_below(kBasicActionCount));
}

QLearnerPolicy::QLearnerPolicy(Params params)
    : params_(params),
      actionCount_(cleanup::action_count(params.teamActions, params.teamSlots)),
      epsilon_(params.epsilonStart) {}

int QLearnerPolicy::act(const Observation& obs, SplitMix64& rng) {
    if (rng.next_unit() < epsilon_) {
        return static_cast<int>(rng.next_below(static_cast<uint64_t>(actionCount_)));
    }
    const auto it = table_.find(obs.key());
    if (it == table_.end()) return 0;
    int best = 0;
    for (int a = 1; a < actionCount_; ++a) {
        if (it->second[a] > it->second[best]) best = a;  // ties keep the lowest index
    }
    return best;
}

void QLearnerPolicy::update(const Transition& t) {
    double bootstrap = 0.0;
    if (!t.terminal) {
        const auto next = table_.find(t.nextObsKey);
        if (next != table_.end()) {
            bootstrap = next->second[0];
            for (const double v : next->second) bootstrap = std::max(bootstrap, v);
        }
        // absent row: all actions still at the default value 0
    }
    auto& row = table_[t.obsKey];
    if (row.empty()) row.assign(actionCount_, 0.0);
    double& q = row[t.actionIndex];
    q += params_.alpha * (t.reward + params_.gamma * bootstrap - q);
}

void QLearnerPolicy::begin_episode(int episode, int totalEpisodes) {
    const auto span = std::max(
        1LL, round_half_even(params_.epsilonDecayFraction * totalEpisodes));
    if (episode >= span) {
        epsilon_ = params_.epsilonFloor;
        return;
    }
    const double t = static_cast<double>(episode) / static_cast<double>(span);
    epsilon_ = params_.epsilonStart + (params_.epsilonFloor - params_.epsilonStart) * t;
}

double QLearnerPolicy::q(uint64_t obsKey, int actionIndex) const {
    const auto it = table_.find(obsKey);
    if (it == table_.end()) return 0.0;
    return it->second[actionIndex];
}

void QLearnerPolicy::save(std::ostream& out) const {
    for (const auto& [key, row] : table_) {
        for (int a = 0; a < actionCount_; ++a) {
            out << key << ' ' << a << ' ' << format_double(row[a]) << '\n';
        }
    }
}

void QLearnerPolicy::load(std::istream& in) {
    table_.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        uint64_t key = 0;
        int action = 0;
        std::string value;
        if (!(fields >> key >> action >> value) || action < 0 || action >= actionCount_)
            throw IoError("malformed policy snapshot line: " + line);
        double v = 0.0;
        const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
        if (res.ec != std::errc{}) throw IoError("malformed policy value: " + value);
        auto& row = table_[key];
        if (row.empty()) row.assign(actionCount_, 0.0);
        row[action] = v;
    }
}

}  // namespace cleanup

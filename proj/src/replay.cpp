#include "cleanup/replay.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "cleanup/errors.hpp"

namespace cleanup {

namespace {

std::string legend_line(const EnvState& state) {
    std::ostringstream line;
    line << "# teams";
    for (const auto& agent : state.agents) {
        line << ' ' << agent.id << ':' << identity_letter(agent.identity) << '/'
             << state.teams.members[agent.id].slot;
    }
    return line.str();
}

void write_frame(std::ostream& sink, int step, const EnvState& state, const EnvConfig& config) {
    sink << "# step " << step << '\n';
    for (const auto& line : render_grid(state, config)) sink << line << '\n';
    sink << legend_line(state) << '\n';
}

std::string hex16(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace

std::vector<std::string> render_grid(const EnvState& state, const EnvConfig& config) {
    std::vector<std::string> lines;
    lines.reserve(config.height);
    for (int row = 0; row < config.height; ++row) {
        std::string line(config.width, '.');
        for (int col = 0; col < config.width; ++col) {
            if (config.isRiverRow(row)) {
                line[col] = state.waste.at(row, col) ? 'W' : '~';
            } else if (state.apples.at(row, col)) {
                line[col] = 'A';
            }
        }
        lines.push_back(std::move(line));
    }
    for (const auto& agent : state.agents) {
        lines[agent.pos.row][agent.pos.col] = static_cast<char>('0' + agent.id % 10);
    }
    return lines;
}

ParsedGrid parse_grid_lines(const std::vector<std::string>& lines) {
    ParsedGrid parsed;
    for (size_t row = 0; row < lines.size(); ++row) {
        for (size_t col = 0; col < lines[row].size(); ++col) {
            const char c = lines[row][col];
            const Cell cell{static_cast<int>(row), static_cast<int>(col)};
            if (c == 'W') {
                parsed.waste.push_back(cell);
            } else if (c == 'A') {
                parsed.apples.push_back(cell);
            } else if (c >= '0' && c <= '9') {
                parsed.agents.emplace_back(c - '0', cell);
            } else if (c != '~' && c != '.') {
                throw IoError("unexpected grid character '" + std::string(1, c) + "'");
            }
        }
    }
    return parsed;
}

void write_replay(const EpisodeLog& log, std::ostream& sink, uint64_t configHash) {
    EnvState state = new_env(log.config, log.seed);

    sink << "# replay v1\n";
    sink << "# config " << hex16(configHash) << " seed " << log.seed << '\n';
    sink << "# grid " << log.config.width << 'x' << log.config.height << " agents "
         << log.config.numAgents << '\n';

    write_frame(sink, 0, state, log.config);
    for (size_t s = 0; s < log.steps.size(); ++s) {
        const auto& rec = log.steps[s];
        const StepOutcome outcome = step(state, log.config, rec.actions);
        if (!(outcome == rec.outcome))
            throw ProtocolError("episode log does not replay at step " + std::to_string(s));
        write_frame(sink, static_cast<int>(s) + 1, state, log.config);
    }
    sink << "# end\n";
}

void print_replay_file(std::istream& in, std::ostream& out) {
    std::string line;
    if (!std::getline(in, line) || line != "# replay v1")
        throw IoError("not a replay file (missing '# replay v1' header)");
    out << line << '\n';

    bool sawEnd = false;
    std::vector<std::string> gridLines;
    auto flushGrid = [&]() {
        if (gridLines.empty()) return;
        parse_grid_lines(gridLines);  // structural validation only
        gridLines.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            flushGrid();
            sawEnd = line == "# end";
        } else if (!line.empty()) {
            gridLines.push_back(line);
        }
        out << line << '\n';
    }
    flushGrid();
    if (!sawEnd) throw IoError("truncated replay file (missing '# end')");
}

}  // namespace cleanup

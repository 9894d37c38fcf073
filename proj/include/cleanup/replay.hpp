#pragma once
// Line-oriented replay files: a header with config hash and seed, then one
// grid render per step ('~' clean river, 'W' waste, '.' ground, 'A' apple,
// digits 0-9 agent ids) plus a team/identity legend line per frame.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cleanup/env.hpp"
#include "cleanup/log.hpp"

namespace cleanup {

std::vector<std::string> render_grid(const EnvState& state, const EnvConfig& config);

// Grid cells recovered from a render; agents occlude whatever they stand on.
struct ParsedGrid {
    std::vector<Cell> waste;
    std::vector<Cell> apples;
    std::vector<std::pair<int, Cell>> agents;  // digit, position
};

ParsedGrid parse_grid_lines(const std::vector<std::string>& lines);

// Re-simulates the logged episode and writes every frame (initial state plus
// one per step). Throws ProtocolError if the log does not replay.
void write_replay(const EpisodeLog& log, std::ostream& sink, uint64_t configHash);

// Validates a replay stream's structure and pretty-prints it.
void print_replay_file(std::istream& in, std::ostream& out);

}  // namespace cleanup

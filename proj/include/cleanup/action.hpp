#pragma once
#include <cstdint>

namespace cleanup {

enum class ActionKind : uint8_t {
    MoveUp,
    MoveDown,
    MoveLeft,
    MoveRight,
    Stay,
    Clean,
    Pick,
    ChooseTeam,
};

// ChooseTeam carries the requested slot; slot 0 means "no team" (solo).
struct Action {
    ActionKind kind = ActionKind::Stay;
    int teamSlot = 0;
    bool operator==(const Action&) const = default;
};

inline const char* to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::MoveUp: return "MoveUp";
        case ActionKind::MoveDown: return "MoveDown";
        case ActionKind::MoveLeft: return "MoveLeft";
        case ActionKind::MoveRight: return "MoveRight";
        case ActionKind::Stay: return "Stay";
        case ActionKind::Clean: return "Clean";
        case ActionKind::Pick: return "Pick";
        case ActionKind::ChooseTeam: return "ChooseTeam";
    }
    return "?";
}

}  // namespace cleanup

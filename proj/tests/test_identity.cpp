#include "cleanup/identity.hpp"
#include "cleanup/errors.hpp"
#include "doctest.h"

using namespace cleanup;

namespace {

int cleaner_count(const std::vector<Identity>& ids) {
    int n = 0;
    for (const auto id : ids) {
        if (id == Identity::RiverCleaner) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("assignment hits the exact rounded count") {
    SplitMix64 rng(3);
    CHECK(cleaner_count(assign_identities(4, 0.5, rng)) == 2);
    CHECK(cleaner_count(assign_identities(4, 0.0, rng)) == 0);
    CHECK(cleaner_count(assign_identities(4, 1.0, rng)) == 4);
    // round-half-even: 0.5 * 5 = 2.5 -> 2
    CHECK(cleaner_count(assign_identities(5, 0.5, rng)) == 2);
}

TEST_CASE("exact count holds for every seed") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        SplitMix64 rng(seed);
        CHECK(cleaner_count(assign_identities(7, 0.5, rng)) == 4);  // round(3.5) -> 4
    }
}

TEST_CASE("assignment placement varies with the seed") {
    SplitMix64 a(1);
    SplitMix64 b(2);
    const auto ia = assign_identities(8, 0.5, a);
    bool anyDifferent = false;
    for (uint64_t seed = 2; seed < 12 && !anyDifferent; ++seed) {
        SplitMix64 rng(seed);
        anyDifferent = assign_identities(8, 0.5, rng) != ia;
    }
    CHECK(anyDifferent);
}

TEST_CASE("effect magnitudes follow the capacity table") {
    EnvConfig config;
    CHECK(effect_magnitude(Identity::RiverCleaner, ActionKind::Clean, config) == 3);
    CHECK(effect_magnitude(Identity::RiverCleaner, ActionKind::Pick, config) == 1);
    CHECK(effect_magnitude(Identity::ApplePicker, ActionKind::Pick, config) == 3);
    CHECK(effect_magnitude(Identity::ApplePicker, ActionKind::Clean, config) == 1);
    CHECK_THROWS_AS(effect_magnitude(Identity::ApplePicker, ActionKind::Stay, config),
                    ProtocolError);
}

TEST_CASE("identity profile mirrors the config") {
    EnvConfig config;
    const auto cleaner = identity_profile(Identity::RiverCleaner, config);
    CHECK(cleaner.cleanCapacity == 3);
    CHECK(cleaner.harvestCapacity == 1);
    CHECK(cleaner.conformingAction == ActionKind::Clean);
    const auto picker = identity_profile(Identity::ApplePicker, config);
    CHECK(picker.cleanCapacity == 1);
    CHECK(picker.harvestCapacity == 3);
    CHECK(picker.conformingAction == ActionKind::Pick);
}

TEST_CASE("identity utility rewards conforming productive steps") {
    EnvConfig config;
    config.identityUtilityBonus = 0.1;
    config.identityUtilityCost = 0.1;
    CHECK(identity_utility(Identity::RiverCleaner, 0, 2, config) == doctest::Approx(0.1));
    CHECK(identity_utility(Identity::RiverCleaner, 1, 0, config) == doctest::Approx(-0.1));
    CHECK(identity_utility(Identity::RiverCleaner, 0, 0, config) == 0.0);
    CHECK(identity_utility(Identity::ApplePicker, 2, 0, config) == doctest::Approx(0.1));
    CHECK(identity_utility(Identity::ApplePicker, 0, 1, config) == doctest::Approx(-0.1));

    // Shaping disabled by default.
    EnvConfig defaults;
    CHECK(identity_utility(Identity::RiverCleaner, 0, 3, defaults) == 0.0);
    CHECK(identity_utility(Identity::ApplePicker, 0, 3, defaults) == 0.0);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/rc.hpp"

namespace majmech {

/// Bloc-formation profile text: one line "votes: aabbb", then one line per
/// agent "i: j,k" listing agent i's nominations (all agent ids 1-based).
BFProfile parse_bf_profile(const std::string& text);
std::string format_bf_profile(const BFProfile& profile);

/// Stage-one votes as a string: 'a', 'b', or '-' for abstain.
VotingProfile parse_voting_profile(const std::string& text);

/// Line-oriented "key: value" scenario file. Unknown keys are rejected with
/// the offending line number.
struct Scenario {
    std::optional<int> n;
    std::optional<std::string> prefs;
    std::optional<std::string> mechanism;  // bf | rc
    std::optional<std::string> variant;    // baseline | abstention | supermajority | even
    std::optional<int> k;
    std::optional<Rational> q;
    std::optional<std::string> mode;  // full | shares
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> votes;    // rc-play stage-one actions
    std::optional<std::string> confirm;  // truthful | always-y | always-n
};

Scenario parse_scenario(const std::string& text);

/// Variant resolution shared by the CLI and scenario handling.
RCVariant make_rc_variant(const std::string& name, int k);

}  // namespace majmech

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/rc.hpp"

namespace majmech {

/// A strict stochastic-dominance improvement found for one agent; replaying
/// `to` through the mechanism must reproduce `after`.
struct BFDeviationWitness {
    AgentId agent = 0;
    BFMessage from;
    BFMessage to;
    Lottery before;
    Lottery after;
    std::string str() const;
};

struct RCDeviationWitness {
    AgentId agent = 0;
    VoteAction from = VoteAction::VoteA;
    VoteAction to = VoteAction::VoteA;
    Lottery before;
    Lottery after;
    std::string str() const;
};

/// Enumeration guards. Exhaustive scans refuse to start when the profile
/// space exceeds the budget; the defaults admit n <= 5 for bloc formation
/// (12^5 = 248,832) and n <= 9 for random confirmations (3^9 = 19,683).
struct Budget {
    std::uint64_t bf_profiles = 1'000'000;
    std::uint64_t rc_profiles = 20'000;
};

/// Nash check for one bloc-formation profile: nullopt iff no agent has a
/// unilateral message she strictly SD-prefers. The scan is deterministic:
/// agents ascending, vote a before b, nomination sets lexicographic; the
/// first improvement found is returned.
std::optional<BFDeviationWitness> is_nash_bf(const BFProfile& profile,
                                             const PreferenceProfile& R);

/// All pure Nash equilibria of the bloc-formation game with their outcomes,
/// in deterministic profile order.
std::vector<std::pair<BFProfile, Lottery>> enumerate_nash_bf(const PreferenceProfile& R,
                                                             const Budget& budget = {},
                                                             int jobs = 1);

/// Voting profiles sustainable as subgame-perfect equilibria of the
/// random-confirmations game: the confirmation continuation is the validated
/// closed-form outcome (each subgame is re-solved by backward induction and
/// must agree, else InvariantViolation), and no agent may have a voting-stage
/// deviation she strictly SD-prefers under the expected outcome.
std::vector<std::pair<VotingProfile, Lottery>> rc_sustainable_profiles(
    const PreferenceProfile& R, const RCVariant& variant, const Budget& budget = {});

/// First profitable voting-stage deviation from `v`, if any (agents
/// ascending, actions in a, b, abstain order).
std::optional<RCDeviationWitness> rc_voting_deviation(const VotingProfile& v,
                                                      const PreferenceProfile& R,
                                                      const RCVariant& variant);

/// Full-strategy-space SPE oracle at n=3 (baseline only): enumerates every
/// confirmation reply assignment of every subgame via the one-shot-deviation
/// property, then every selection of subgame equilibria, and returns the
/// exact set of whole-game SPE outcome lotteries. Independent of the
/// closed-form continuation used by rc_sustainable_profiles.
std::set<Lottery> spe_oracle_n3(const PreferenceProfile& R, const RCVariant& variant);

struct MechanismId {
    enum class Kind : std::uint8_t { BF, RC } kind = Kind::BF;
    RCVariant variant;  // meaningful for RC only

    static MechanismId bf() { return {Kind::BF, RCVariant::baseline()}; }
    static MechanismId rc(RCVariant v) { return {Kind::RC, v}; }
    std::string str() const { return kind == Kind::BF ? "bf" : variant.str(); }
};

struct ReportRow {
    std::string prefs;
    std::int64_t eq_count = 0;
    std::vector<Lottery> outcomes;  // sorted, unique
    bool pass = false;
    std::string note;  // witness or failure detail, empty when passing
};

/// Per-preference-profile verification that every equilibrium outcome matches
/// the target rule and at least one equilibrium exists.
struct ImplementationReport {
    std::string mechanism;
    int n = 0;
    std::vector<ReportRow> rows;
    bool pass = false;

    std::string machine_text() const;  // stable line format, "format: 1" header
    std::string table_text() const;    // human-readable
};

ImplementationReport verify_implementation(const MechanismId& mechanism, int n,
                                           const Budget& budget = {}, int jobs = 1);

/// Structural checks for one bloc-admitting profile: effective bloc exists,
/// is unique, equals the intersection of all blocs, is strongly connected
/// with no nomination leaving it, and every member's vote flip empties the
/// bloc set.
struct BlocStructureCheck {
    bool has_bloc = false;
    bool effective_found = false;
    bool intersection_identity = false;
    bool strongly_connected = false;
    bool closed = false;
    bool member_flips_break_all = false;

    bool all_ok() const {
        return has_bloc && effective_found && intersection_identity && strongly_connected &&
               closed && member_flips_break_all;
    }
};

BlocStructureCheck check_bloc_structure(const BFProfile& profile);

/// Sampled property verification for sizes beyond the exhaustive budget:
/// random bloc-admitting profiles, all structural checks above.
struct SampledBfReport {
    int n = 0;
    int samples = 0;
    int violations = 0;
    std::uint64_t seed = 0;

    bool pass() const { return violations == 0; }
    std::string text() const;
};

SampledBfReport sampled_bf_check(int n, int samples, std::uint64_t seed);

}  // namespace majmech

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/equilibrium.hpp"
#include "majmech/errors.hpp"
#include "majmech/io.hpp"
#include "majmech/random.hpp"

using namespace majmech;

namespace {

PreferenceProfile prefs(const std::string& s) { return PreferenceProfile::from_string(s); }

BFMessage msg(char vote, std::vector<AgentId> noms_1based) {
    for (AgentId& j : noms_1based) --j;
    return BFMessage{alt_from_char(vote), std::move(noms_1based)};
}

BFProfile two_bloc_profile() {
    return BFProfile(5, {msg('b', {4, 5}), msg('b', {1, 3}), msg('b', {1, 2}),
                         msg('b', {1, 5}), msg('b', {1, 4})});
}

}  // namespace

TEST_CASE("is_nash_bf: a majority bloc at its favourite outcome passes") {
    // Agents 1-3 form a bloc for a; agents 4-5 cannot move the outcome.
    const BFProfile profile(5, {msg('a', {2, 3}), msg('a', {1, 3}), msg('a', {1, 2}),
                                msg('b', {1, 5}), msg('b', {1, 4})});
    CHECK(bf_outcome(profile) == Lottery::degenerate(Alt::A));
    CHECK_FALSE(is_nash_bf(profile, prefs("aaabb")));
}

TEST_CASE("is_nash_bf: the all-b bloc profile has an agent-1 witness") {
    const BFProfile profile = two_bloc_profile();
    const auto witness = is_nash_bf(profile, prefs("aaabb"));
    REQUIRE(witness);
    CHECK(witness->agent == 0);
    CHECK(witness->to.vote == Alt::A);
    // Replay: the witness must reproduce the claimed strict improvement.
    const Lottery replay = bf_outcome(profile.with_message(witness->agent, witness->to));
    CHECK(replay == witness->after);
    CHECK(sd_strictly_better(Alt::A, witness->after, witness->before));
    // The vote flip that keeps the nominations is also a strict improvement.
    const Lottery flip = bf_outcome(profile.with_message(0, msg('a', {4, 5})));
    CHECK(sd_strictly_better(Alt::A, flip, witness->before));
    CHECK(flip.pA == Rational(4, 10));
}

TEST_CASE("is_nash_bf witnesses replay on random profiles") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const BFProfile profile = random_bf_profile(5, rng);
        std::vector<Alt> types;
        for (int i = 0; i < 5; ++i) types.push_back(rng.below(2) ? Alt::B : Alt::A);
        const PreferenceProfile R(types);
        if (const auto witness = is_nash_bf(profile, R)) {
            CHECK(bf_outcome(profile) == witness->before);
            const Lottery replay = bf_outcome(profile.with_message(witness->agent, witness->to));
            CHECK(replay == witness->after);
            CHECK(sd_strictly_better(R.pref(witness->agent), witness->after, witness->before));
        }
    }
}

TEST_CASE("enumerate_nash_bf at n=3: every equilibrium selects the majority option") {
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        std::vector<Alt> types;
        for (int i = 0; i < 3; ++i) types.push_back(((bits >> (2 - i)) & 1u) ? Alt::B : Alt::A);
        const PreferenceProfile R(types);
        const auto equilibria = enumerate_nash_bf(R);
        CHECK_FALSE(equilibria.empty());
        const Lottery target = Lottery::degenerate(maj(R));
        for (const auto& [profile, outcome] : equilibria) {
            CHECK(outcome == target);
            CHECK_FALSE(is_nash_bf(profile, R));  // agreement with the direct check
        }
    }
}

TEST_CASE("enumeration honours the budget guard") {
    CHECK_THROWS_AS(enumerate_nash_bf(prefs("aaabbba")), CapacityError);  // 40^7
    Budget tiny;
    tiny.rc_profiles = 10;
    CHECK_THROWS_AS(rc_sustainable_profiles(prefs("aaabb"), RCVariant::baseline(), tiny),
                    CapacityError);
}

TEST_CASE("rc_sustainable_profiles at n=5 implements the majority rule") {
    const auto R = prefs("aaabb");
    const auto sustained = rc_sustainable_profiles(R, RCVariant::baseline());
    CHECK_FALSE(sustained.empty());
    for (const auto& [v, outcome] : sustained) CHECK(outcome == Lottery::degenerate(Alt::A));

    // Unanimous b is not sustained; the witness is a majority agent moving to a.
    VotingProfile all_b = parse_voting_profile("bbbbb");
    CHECK(std::none_of(sustained.begin(), sustained.end(),
                       [&](const auto& entry) { return entry.first == all_b; }));
    const auto witness = rc_voting_deviation(all_b, R, RCVariant::baseline());
    REQUIRE(witness);
    CHECK(witness->agent <= 2);
    CHECK(witness->to == VoteAction::VoteA);
    CHECK(sd_strictly_better(Alt::A, witness->after, witness->before));
}

TEST_CASE("supermajority k=3 with one status-quo supporter keeps the status quo") {
    const auto R = prefs("abbbb");  // one agent prefers sq
    const auto sustained = rc_sustainable_profiles(R, RCVariant::supermajority(3));
    CHECK_FALSE(sustained.empty());
    for (const auto& [v, outcome] : sustained) CHECK(outcome == Lottery::degenerate(Alt::A));
}

TEST_CASE("spe_oracle_n3 equals the sustainability outcomes") {
    CHECK(spe_oracle_n3(prefs("aab"), RCVariant::baseline()) ==
          std::set<Lottery>{Lottery::degenerate(Alt::A)});
    CHECK(spe_oracle_n3(prefs("bbb"), RCVariant::baseline()) ==
          std::set<Lottery>{Lottery::degenerate(Alt::B)});
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        std::vector<Alt> types;
        for (int i = 0; i < 3; ++i) types.push_back(((bits >> (2 - i)) & 1u) ? Alt::B : Alt::A);
        const PreferenceProfile R(types);
        std::set<Lottery> shortcut;
        for (const auto& [v, outcome] : rc_sustainable_profiles(R, RCVariant::baseline()))
            shortcut.insert(outcome);
        CHECK(spe_oracle_n3(R, RCVariant::baseline()) == shortcut);
    }
    CHECK_THROWS_AS(spe_oracle_n3(prefs("aaabb"), RCVariant::baseline()), CapacityError);
    CHECK_THROWS_AS(spe_oracle_n3(prefs("aab"), RCVariant::abstention()), DomainError);
}

TEST_CASE("verify_implementation small sizes") {
    const Budget budget;
    const auto bf3 = verify_implementation(MechanismId::bf(), 3, budget, 2);
    CHECK(bf3.pass);
    CHECK(bf3.rows.size() == 8);

    const auto bf4 = verify_implementation(MechanismId::bf(), 4, budget, 2);
    CHECK(bf4.pass);
    // Tied preference rows must land exactly on the even lottery.
    for (const auto& row : bf4.rows) {
        const PreferenceProfile R = PreferenceProfile::from_string(row.prefs);
        if (R.count(Alt::A) == 2) {
            REQUIRE(row.outcomes.size() == 1);
            CHECK(row.outcomes.front() == Lottery::half());
        }
    }

    CHECK(verify_implementation(MechanismId::rc(RCVariant::baseline()), 3, budget, 2).pass);
    CHECK(verify_implementation(MechanismId::rc(RCVariant::abstention()), 3, budget, 2).pass);
    CHECK(verify_implementation(MechanismId::rc(RCVariant::even_n()), 4, budget, 2).pass);
}

TEST_CASE("reports are deterministic and carry the stable line format") {
    const auto a = verify_implementation(MechanismId::rc(RCVariant::baseline()), 3, Budget{}, 2);
    const auto b = verify_implementation(MechanismId::rc(RCVariant::baseline()), 3, Budget{}, 1);
    CHECK(a.machine_text() == b.machine_text());
    const auto bf1 = verify_implementation(MechanismId::bf(), 4, Budget{}, 1);
    const auto bf3 = verify_implementation(MechanismId::bf(), 4, Budget{}, 3);
    CHECK(bf1.machine_text() == bf3.machine_text());
    CHECK(a.machine_text().rfind("format: 1\n", 0) == 0);
    CHECK(a.machine_text().find("R=aab eq_count=") != std::string::npos);
    CHECK(a.machine_text().find("aggregate: pass=true") != std::string::npos);
}

TEST_CASE("failing rows embed their witness line") {
    ImplementationReport report;
    report.mechanism = "bf";
    report.n = 3;
    ReportRow row;
    row.prefs = "aab";
    row.eq_count = 1;
    row.outcomes = {Lottery::degenerate(Alt::B)};
    row.pass = false;
    row.note = "equilibrium with off-target outcome: votes=bbb noms=2|1|1 outcome=pA=0/1";
    report.rows.push_back(row);
    report.pass = false;
    const std::string text = report.machine_text();
    CHECK(text.find("pass=false") != std::string::npos);
    CHECK(text.find("witness: ") != std::string::npos);
    CHECK(text.find("votes=bbb") != std::string::npos);
    CHECK(report.table_text().find("FAIL") != std::string::npos);
}

TEST_CASE("bloc structure checks hold on random bloc profiles") {
    SplitMix64 rng(2718);
    for (int trial = 0; trial < 300; ++trial) {
        const BFProfile profile = random_bf_profile_with_bloc(5, rng);
        CHECK(check_bloc_structure(profile).all_ok());
    }
    const auto sampled = sampled_bf_check(5, 200, 42);
    CHECK(sampled.pass());
    CHECK(sampled.violations == 0);
}

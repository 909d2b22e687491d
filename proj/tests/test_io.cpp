#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "majmech/errors.hpp"
#include "majmech/io.hpp"

using namespace majmech;

namespace {

const char* kTwoBlocProfile =
    "votes: bbbbb\n"
    "1: 4,5\n"
    "2: 1,3\n"
    "3: 1,2\n"
    "4: 1,5\n"
    "5: 1,4\n";

}  // namespace

TEST_CASE("profile text round-trips") {
    const BFProfile profile = parse_bf_profile(kTwoBlocProfile);
    CHECK(profile.n() == 5);
    CHECK(profile.vote(0) == Alt::B);
    CHECK(profile.message(0).nominations == std::vector<AgentId>{3, 4});
    const std::string text = format_bf_profile(profile);
    const BFProfile again = parse_bf_profile(text);
    CHECK(again.messages() == profile.messages());
}

TEST_CASE("profile diagnostics name the line and field") {
    CHECK_THROWS_WITH_AS(parse_bf_profile("votes: aab\n1: 2\n2: 1\n"),
                         doctest::Contains("2 nomination lines for n=3"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_bf_profile("votes: aab\n1: 2\n1: 3\n2: 1\n"),
                         doctest::Contains("duplicate"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_bf_profile("votes: aab\n1: 2\n2: 1\n3: 9\n"),
                         doctest::Contains("line 4"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_bf_profile("votes: aab\n1: 2,3\n2: 1\n3: 1\n"),
                         doctest::Contains("agent 1"), ValidationError);  // count != p
    CHECK_THROWS_AS(parse_bf_profile("1: 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_bf_profile(""), ValidationError);
}

TEST_CASE("voting string parsing") {
    const VotingProfile v = parse_voting_profile("ab-ab");
    CHECK(v.n() == 5);
    CHECK(v.at(2) == VoteAction::Abstain);
    CHECK(v.str() == "ab-ab");
    CHECK_THROWS_AS(parse_voting_profile("abxab"), ValidationError);
    CHECK_THROWS_AS(parse_voting_profile(""), ValidationError);
}

TEST_CASE("scenario parsing with diagnostics") {
    const Scenario s = parse_scenario(
        "format: 1\n"
        "# comment\n"
        "n: 5\n"
        "prefs: aaabb\n"
        "mechanism: rc\n"
        "variant: supermajority\n"
        "k: 2\n"
        "q: 3/10\n"
        "mode: shares\n"
        "seed: 77\n"
        "budget: 1000\n"
        "votes: ab-ab\n"
        "confirm: always-y\n");
    CHECK(s.n == 5);
    CHECK(s.prefs == "aaabb");
    CHECK(s.mechanism == "rc");
    CHECK(s.variant == "supermajority");
    CHECK(s.k == 2);
    CHECK(s.q == Rational(3, 10));
    CHECK(s.mode == "shares");
    CHECK(s.seed == 77);
    CHECK(s.budget == 1000);
    CHECK(s.votes == "ab-ab");
    CHECK(s.confirm == "always-y");

    CHECK_THROWS_WITH_AS(parse_scenario("n: 5\nbogus: 1\n"),
                         doctest::Contains("scenario line 2"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_scenario("n: five\n"), doctest::Contains("integer"),
                         ValidationError);
    CHECK_THROWS_AS(parse_scenario("mode: loud\n"), ValidationError);
    CHECK_THROWS_AS(parse_scenario("q: x/y\n"), ValidationError);
}

TEST_CASE("variant resolution") {
    CHECK(make_rc_variant("baseline", 1).kind == RCVariant::Kind::Baseline);
    CHECK(make_rc_variant("abstention", 1).kind == RCVariant::Kind::Abstention);
    CHECK(make_rc_variant("supermajority", 2).k == 2);
    CHECK(make_rc_variant("even", 1).kind == RCVariant::Kind::EvenN);
    CHECK_THROWS_AS(make_rc_variant("quorum", 1), ValidationError);
}

#include "majmech/suite.hpp"

#include <algorithm>

#include "majmech/bayes.hpp"
#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/equilibrium.hpp"
#include "majmech/errors.hpp"
#include "majmech/io.hpp"
#include "majmech/rc.hpp"

namespace majmech {

namespace {

BFMessage msg(Alt vote, std::vector<AgentId> noms_1based) {
    for (AgentId& j : noms_1based) --j;
    return BFMessage{vote, std::move(noms_1based)};
}

/// The five-agent all-b profile whose nomination graph admits the two blocs
/// {1,4,5} and {1,2,3,4,5}.
BFProfile two_bloc_profile() {
    return BFProfile(5, {msg(Alt::B, {4, 5}), msg(Alt::B, {1, 3}), msg(Alt::B, {1, 2}),
                         msg(Alt::B, {1, 5}), msg(Alt::B, {1, 4})});
}

/// A 3-vs-2 profile with no blocs at all (the minority-vote closure always
/// escapes its side).
BFProfile no_bloc_profile() {
    return BFProfile(5, {msg(Alt::A, {2, 5}), msg(Alt::A, {1, 3}), msg(Alt::A, {1, 4}),
                         msg(Alt::B, {1, 5}), msg(Alt::B, {1, 4})});
}

std::string bloc_list(const std::vector<Bloc>& blocs) {
    std::string s;
    for (std::size_t i = 0; i < blocs.size(); ++i) {
        if (i) s += ",";
        s += blocs[i].str();
    }
    return s;
}

ReproItem bloc_analysis_item() {
    ReproItem item;
    item.name = "bloc-analysis";
    const BFProfile profile = two_bloc_profile();
    const auto blocs = find_all_blocs(profile);
    const auto effective = find_effective_bloc(profile);
    const std::uint32_t small = (1u << 0) | (1u << 3) | (1u << 4);  // {1,4,5}
    const std::uint32_t all = (1u << 5) - 1u;

    bool ok = blocs.size() == 2 && blocs[0].mask == small && blocs[1].mask == all &&
              effective && effective->mask == small;

    const auto deviation = bloc_breaking_deviation(profile, 0);
    ok = ok && deviation && deviation->vote == Alt::A &&
         deviation->nominations == std::vector<AgentId>{3, 4};
    Lottery after;
    if (deviation) {
        const BFProfile deviated = profile.with_message(0, *deviation);
        ok = ok && find_all_blocs(deviated).empty();
        after = bf_outcome(deviated);
        ok = ok && after.pA == Rational(4, 10);
    }
    item.pass = ok;
    item.detail = "blocs " + bloc_list(blocs) + "; effective " +
                  (effective ? effective->str() : "none") + "; agent 1 deviation " +
                  (deviation ? deviation->str() : "none") + " -> " + after.str();
    return item;
}

ReproItem transcripts_item() {
    ReproItem item;
    item.name = "deviation-transcripts";
    const PreferenceProfile R = PreferenceProfile::from_string("aaabb");
    const RCVariant variant = RCVariant::baseline();
    const auto truthful = truthful_confirmation(R);

    // Unanimous b, committee drawn as (1,2,3): three N replies, outcome b.
    const std::uint64_t seed_123 = find_seed_for_order(5, 3, {0, 1, 2});
    const auto row1 = play_rc(parse_voting_profile("bbbbb"), truthful, variant, seed_123);
    bool ok = row1.outcome == Lottery::degenerate(Alt::B) && row1.stages == 4;

    // After agent 1's deviation to a, committee (1,2,5): N, N, Y, outcome b.
    const std::uint64_t seed_125 = find_seed_for_order(5, 3, {0, 1, 4});
    const auto row2 = play_rc(parse_voting_profile("abbbb"), truthful, variant, seed_125);
    ok = ok && row2.outcome == Lottery::degenerate(Alt::B) && row2.stages == 4;

    // Same deviation, committee (1,2,3): all N, outcome is the vote-share
    // lottery 1/5a+4/5b.
    const auto row3 = play_rc(parse_voting_profile("abbbb"), truthful, variant, seed_123);
    ok = ok && row3.outcome.pA == Rational(1, 5);

    item.pass = ok;
    item.detail = "outcomes " + row1.outcome.pretty() + ", " + row2.outcome.pretty() + ", " +
                  row3.outcome.pretty();
    return item;
}

ReproItem graph_profiles_item() {
    ReproItem item;
    item.name = "graph-profiles";
    const auto none = find_all_blocs(no_bloc_profile());
    const BFProfile two = two_bloc_profile();
    const auto blocs = find_all_blocs(two);
    const auto effective = find_effective_bloc(two);
    const std::uint32_t small = (1u << 0) | (1u << 3) | (1u << 4);
    const std::uint32_t all = (1u << 5) - 1u;
    const bool full_rejected = effective && effective->mask != all;
    item.pass = none.empty() && blocs.size() == 2 && effective && effective->mask == small &&
                full_rejected;
    item.detail = "no-bloc profile has " + std::to_string(none.size()) +
                  " blocs; two-bloc profile has " + bloc_list(blocs) + ", effective " +
                  (effective ? effective->str() : "none");
    return item;
}

ReproItem two_voter_item() {
    ReproItem item;
    item.name = "two-voter-equilibrium";
    const PreferenceProfile R = PreferenceProfile::from_string("aaabb");
    const RCVariant variant = RCVariant::abstention();
    const VotingProfile v = parse_voting_profile("aa---");

    const auto witness = rc_voting_deviation(v, R, variant);
    const Lottery outcome = expected_outcome(v, R, variant);
    const auto played = play_rc(v, constant_confirmation(ConfAction::Y), variant, 0);

    item.pass = !witness && outcome == Lottery::degenerate(Alt::A) && played.stages == 2 &&
                played.votes_cast == 3 &&
                played.outcome == Lottery::degenerate(Alt::A);
    item.detail = "votes " + v.str() + ": outcome " + outcome.pretty() + ", " +
                  std::to_string(played.votes_cast) + " votes across " +
                  std::to_string(played.stages) + " stages";
    return item;
}

}  // namespace

std::uint64_t find_seed_for_order(int n, int size, const std::vector<int>& order) {
    for (std::uint64_t seed = 0; seed < 1'000'000; ++seed) {
        SplitMix64 rng(seed);
        if (draw_ordered(n, size, rng) == order) return seed;
    }
    throw CapacityError("no seed below 1e6 draws the requested order");
}

std::string ReproReport::text() const {
    std::string out = "reproduce-paper\n";
    for (const ReproItem& item : items) {
        out += std::string(item.pass ? "[PASS] " : "[FAIL] ") + item.name + ": " + item.detail +
               "\n";
    }
    out += std::string("aggregate: pass=") + (pass ? "true" : "false") + "\n";
    return out;
}

ReproReport reproduce_reference_scenarios() {
    ReproReport report;
    report.items.push_back(bloc_analysis_item());
    report.items.push_back(transcripts_item());
    report.items.push_back(graph_profiles_item());
    report.items.push_back(two_voter_item());
    report.pass = std::all_of(report.items.begin(), report.items.end(),
                              [](const ReproItem& i) { return i.pass; });
    return report;
}

std::string full_suite_report(std::uint64_t seed, int jobs) {
    std::string out;
    const Budget budget;

    out += verify_implementation(MechanismId::bf(), 3, budget, jobs).machine_text();
    out += verify_implementation(MechanismId::bf(), 4, budget, jobs).machine_text();
    out += verify_implementation(MechanismId::bf(), 5, budget, jobs).machine_text();
    out += verify_implementation(MechanismId::rc(RCVariant::baseline()), 3, budget, jobs)
               .machine_text();
    out += verify_implementation(MechanismId::rc(RCVariant::baseline()), 5, budget, jobs)
               .machine_text();
    out += verify_implementation(MechanismId::rc(RCVariant::baseline()), 7, budget, jobs)
               .machine_text();
    out += verify_implementation(MechanismId::rc(RCVariant::abstention()), 5, budget, jobs)
               .machine_text();
    for (int k = 1; k <= 3; ++k)
        out += verify_implementation(MechanismId::rc(RCVariant::supermajority(k)), 5, budget,
                                     jobs)
                   .machine_text();
    out += verify_implementation(MechanismId::rc(RCVariant::even_n()), 4, budget, jobs)
               .machine_text();

    for (DisclosureMode mode : {DisclosureMode::FullProfile, DisclosureMode::SharesOnly})
        out += verify_truthful_pbe(5, BeliefModel(Rational(1, 2)), mode).text();
    out += "bne-n3: count=" +
           std::to_string(
               enumerate_bne_voting_n3(BeliefModel(Rational(1, 2)), DisclosureMode::FullProfile)
                   .size()) +
           "\n";

    out += sampled_bf_check(7, 500, seed).text();
    out += reproduce_reference_scenarios().text();

    const PreferenceProfile R = PreferenceProfile::from_string("aaabb");
    out += play_rc(parse_voting_profile("abbbb"), truthful_confirmation(R),
                   RCVariant::baseline(), seed)
               .transcript();
    return out;
}

}  // namespace majmech

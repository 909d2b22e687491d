// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every expected value is pinned here in code, exact rational comparisons
// throughout, and each criterion carries its wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "majmech/bayes.hpp"
#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/equilibrium.hpp"
#include "majmech/io.hpp"
#include "majmech/rc.hpp"
#include "majmech/suite.hpp"

using namespace majmech;

namespace {

int g_failures = 0;
int g_jobs = 2;

void run_criterion(int number, const std::string& name, double limit_seconds,
                   const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > limit_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("exceeded time budget");
    }
    std::printf("[%s] criterion %2d: %s (%.2fs%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                elapsed, detail.empty() ? "" : ("; " + detail).c_str());
    if (!ok) ++g_failures;
}

PreferenceProfile prefs(const std::string& s) { return PreferenceProfile::from_string(s); }

BFMessage msg(char vote, std::vector<AgentId> noms_1based) {
    for (AgentId& j : noms_1based) --j;
    return BFMessage{alt_from_char(vote), std::move(noms_1based)};
}

std::vector<ConfirmationDraw> all_ordered_draws(int n, int size) {
    std::vector<ConfirmationDraw> out;
    for (auto committee : all_committees(n, size)) {
        std::sort(committee.begin(), committee.end());
        do {
            out.push_back(committee);
        } while (std::next_permutation(committee.begin(), committee.end()));
    }
    return out;
}

bool criterion1_table1(std::string& detail) {
    const auto R = prefs("aaabb");
    const auto v = parse_voting_profile("abbbb");
    const RCVariant base = RCVariant::baseline();

    const auto inside = confirmation_spe(v, {0, 1, 2}, R, base);
    if (!inside.singleton() || !(inside.only().pA == Rational(1, 5))) {
        detail = "committee {1,2,3} expected pA=1/5";
        return false;
    }
    const auto with5 = confirmation_spe(v, {0, 1, 4}, R, base);
    if (!with5.singleton() || !(with5.only().pA == Rational(0))) {
        detail = "committee {1,2,5} expected pA=0";
        return false;
    }
    const auto unanimous = confirmation_spe(parse_voting_profile("bbbbb"), {0, 1, 2}, R, base);
    if (!unanimous.singleton() || !(unanimous.only().pA == Rational(0))) {
        detail = "unanimous b expected pA=0";
        return false;
    }
    return true;
}

bool criterion2_example2(std::string& detail) {
    const BFProfile profile(5, {msg('b', {4, 5}), msg('b', {1, 3}), msg('b', {1, 2}),
                                msg('b', {1, 5}), msg('b', {1, 4})});
    const auto blocs = find_all_blocs(profile);
    const std::uint32_t small = 0b11001;  // {1,4,5}
    const std::uint32_t all = 0b11111;
    if (blocs.size() != 2 || blocs[0].mask != small || blocs[1].mask != all) {
        detail = "bloc set mismatch";
        return false;
    }
    const auto effective = find_effective_bloc(profile);
    if (!effective || effective->mask != small) {
        detail = "effective bloc mismatch";
        return false;
    }
    BFMessage flip = profile.message(0);
    flip.vote = Alt::A;
    const BFProfile deviated = profile.with_message(0, flip);
    if (!find_all_blocs(deviated).empty()) {
        detail = "vote flip left a bloc";
        return false;
    }
    if (!(bf_outcome(deviated).pA == Rational(4, 10))) {
        detail = "post-deviation outcome expected pA=4/10";
        return false;
    }
    return true;
}

bool criterion3_bf_implementation(std::string& detail) {
    const auto r3 = verify_implementation(MechanismId::bf(), 3, Budget{}, g_jobs);
    if (!r3.pass) {
        detail = "n=3 failed";
        return false;
    }
    const auto r5 = verify_implementation(MechanismId::bf(), 5, Budget{}, g_jobs);
    if (!r5.pass) {
        detail = "n=5 failed";
        return false;
    }
    for (const auto& report : {r3, r5})
        for (const auto& row : report.rows)
            if (row.eq_count < 1 || row.outcomes.size() != 1 ||
                !(row.outcomes.front() == Lottery::degenerate(maj(prefs(row.prefs)))))
                return false;
    return true;
}

bool criterion4_bf_even(std::string& detail) {
    const auto report = verify_implementation(MechanismId::bf(), 4, Budget{}, g_jobs);
    if (!report.pass) {
        detail = "n=4 report failed";
        return false;
    }
    for (const auto& row : report.rows) {
        const PreferenceProfile R = prefs(row.prefs);
        const auto target = maj_even(R);
        if (row.eq_count < 1 || row.outcomes.size() != 1) return false;
        if (target.size() == 1) {
            if (!(row.outcomes.front() == Lottery::degenerate(*target.begin()))) return false;
        } else if (!(row.outcomes.front() == Lottery::half())) {
            return false;
        }
    }
    return true;
}

bool criterion5_structure_suites(std::string& detail) {
    for (int n : {5, 7}) {
        const auto report = sampled_bf_check(n, 10000, 20240801ull + static_cast<unsigned>(n));
        if (report.violations != 0) {
            detail = "violations at n=" + std::to_string(n) + ": " +
                     std::to_string(report.violations);
            return false;
        }
    }
    return true;
}

bool criterion6_induction_and_oracle(std::string& detail) {
    const RCVariant base = RCVariant::baseline();
    for (int n : {3, 5}) {
        const int committee = (n - 1) / 2 + 1;
        const auto draws = all_ordered_draws(n, committee);
        for (std::uint32_t rbits = 0; rbits < (1u << n); ++rbits) {
            std::vector<Alt> types;
            for (int i = 0; i < n; ++i)
                types.push_back(((rbits >> (n - 1 - i)) & 1u) ? Alt::B : Alt::A);
            const PreferenceProfile R(types);
            for (std::uint32_t vbits = 0; vbits < (1u << n); ++vbits) {
                VotingProfile v;
                for (int i = 0; i < n; ++i)
                    v.votes.push_back(((vbits >> (n - 1 - i)) & 1u) ? VoteAction::VoteB
                                                                    : VoteAction::VoteA);
                for (const auto& draw : draws) {
                    const auto spe = confirmation_spe(v, draw, R, base);
                    std::vector<AgentId> committee_set = draw;
                    std::sort(committee_set.begin(), committee_set.end());
                    if (!spe.singleton() ||
                        !(spe.only() == confirmation_outcome(v, committee_set, R, base))) {
                        detail = "singleton mismatch at n=" + std::to_string(n);
                        return false;
                    }
                }
            }
        }
    }
    for (std::uint32_t rbits = 0; rbits < 8; ++rbits) {
        std::vector<Alt> types;
        for (int i = 0; i < 3; ++i) types.push_back(((rbits >> (2 - i)) & 1u) ? Alt::B : Alt::A);
        const PreferenceProfile R(types);
        std::set<Lottery> shortcut;
        for (const auto& [v, outcome] : rc_sustainable_profiles(R, base)) shortcut.insert(outcome);
        if (spe_oracle_n3(R, base) != shortcut) {
            detail = "oracle mismatch at R=" + R.str();
            return false;
        }
    }
    return true;
}

bool criterion7_rc_implementation(std::string& detail) {
    for (int n : {3, 5, 7}) {
        const auto report =
            verify_implementation(MechanismId::rc(RCVariant::baseline()), n, Budget{}, g_jobs);
        if (!report.pass) {
            detail = "n=" + std::to_string(n);
            return false;
        }
        for (const auto& row : report.rows)
            if (row.outcomes.size() != 1 ||
                !(row.outcomes.front() == Lottery::degenerate(maj(prefs(row.prefs)))))
                return false;
    }
    return true;
}

bool criterion8_abstention(std::string& detail) {
    const auto report =
        verify_implementation(MechanismId::rc(RCVariant::abstention()), 5, Budget{}, g_jobs);
    if (!report.pass) {
        detail = "abstention n=5 report failed";
        return false;
    }
    // Two-voter equilibrium for every preference profile's majority option:
    // check the canonical R=(a,a,a,b,b) instance end to end.
    const auto R = prefs("aaabb");
    const auto v = parse_voting_profile("aa---");
    if (rc_voting_deviation(v, R, RCVariant::abstention())) {
        detail = "two-voter profile has a profitable deviation";
        return false;
    }
    const auto played = play_rc(v, constant_confirmation(ConfAction::Y),
                                RCVariant::abstention(), 0);
    if (played.votes_cast != 3 || played.stages != 2 ||
        !(played.outcome == Lottery::degenerate(Alt::A))) {
        detail = "two-voter transcript expected 3 votes across 2 stages";
        return false;
    }
    return true;
}

bool criterion9_supermajority(std::string& detail) {
    for (int k = 1; k <= 3; ++k) {
        const auto report = verify_implementation(MechanismId::rc(RCVariant::supermajority(k)),
                                                  5, Budget{}, g_jobs);
        if (!report.pass) {
            detail = "k=" + std::to_string(k);
            return false;
        }
        for (const auto& row : report.rows)
            if (row.outcomes.size() != 1 ||
                !(row.outcomes.front() == Lottery::degenerate(maj_k(prefs(row.prefs), k))))
                return false;
        if (t_bar(Alt::A, RCVariant::supermajority(k), 5) != 2 + k ||
            t_bar(Alt::B, RCVariant::supermajority(k), 5) != 4 - k) {
            detail = "t_bar mismatch at k=" + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool criterion10_rc_even(std::string& detail) {
    const auto report =
        verify_implementation(MechanismId::rc(RCVariant::even_n()), 4, Budget{}, g_jobs);
    if (!report.pass) {
        detail = "even n=4 report failed";
        return false;
    }
    // Tied preferences: the truthful tie profile and a unanimous profile both
    // verify as equilibria with the pinned outcomes.
    const auto R = prefs("abab");
    const auto sustained = rc_sustainable_profiles(R, RCVariant::even_n());
    VotingProfile truthful;
    for (AgentId i = 0; i < 4; ++i) truthful.votes.push_back(vote_for(R.pref(i)));
    bool truthful_ok = false, unanimous_ok = false;
    for (const auto& [v, outcome] : sustained) {
        if (v == truthful && outcome == Lottery::half()) truthful_ok = true;
        if ((v.count(Alt::A) == 4 || v.count(Alt::B) == 4) && outcome.is_degenerate())
            unanimous_ok = true;
    }
    if (!truthful_ok || !unanimous_ok) {
        detail = "tied-R existence checks failed";
        return false;
    }
    return true;
}

bool criterion11_incomplete_information(std::string& detail) {
    for (int n : {3, 5}) {
        for (const Rational q : {Rational(3, 10), Rational(1, 2), Rational(7, 10)}) {
            for (DisclosureMode mode :
                 {DisclosureMode::FullProfile, DisclosureMode::SharesOnly}) {
                const auto report = verify_truthful_pbe(n, BeliefModel(q), mode);
                if (!report.pass || !report.strict_vote_a || !report.strict_vote_b) {
                    detail = "pbe n=" + std::to_string(n) + " q=" + q.str() + " mode=" +
                             mode_str(mode);
                    return false;
                }
            }
        }
    }
    for (const Rational q : {Rational(3, 10), Rational(1, 2), Rational(7, 10)}) {
        for (DisclosureMode mode : {DisclosureMode::FullProfile, DisclosureMode::SharesOnly}) {
            const auto entries = enumerate_bne_voting_n3(BeliefModel(q), mode);
            if (entries.empty()) {
                detail = "no BNE found";
                return false;
            }
            for (const auto& entry : entries) {
                for (std::uint32_t bits = 0; bits < 8; ++bits) {
                    std::vector<Alt> types;
                    for (int i = 0; i < 3; ++i)
                        types.push_back(((bits >> (2 - i)) & 1u) ? Alt::B : Alt::A);
                    if (!(entry.realization_outcomes[bits] ==
                          Lottery::degenerate(maj(PreferenceProfile(types))))) {
                        detail = "BNE with off-majority outcome";
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool criterion12_determinism(std::string& detail) {
    const std::string first = full_suite_report(424242, g_jobs);
    const std::string second = full_suite_report(424242, g_jobs);
    if (first != second) {
        detail = "reports differ between runs";
        return false;
    }
    if (first.find("1/5a+4/5b") == std::string::npos) {
        detail = "reference lottery line missing from the suite report";
        return false;
    }
    return true;
}

}  // namespace

int main() {
    g_jobs = std::max(1u, std::thread::hardware_concurrency());
    std::printf("acceptance suite (jobs=%d)\n", g_jobs);

    run_criterion(1, "confirmation-stage outcomes around the worked deviation", 1.0,
                  criterion1_table1);
    run_criterion(2, "bloc analysis of the worked five-agent profile", 1.0, criterion2_example2);
    run_criterion(3, "bloc formation implements majority at n=3 and n=5", 120.0,
                  criterion3_bf_implementation);
    run_criterion(4, "bloc formation with even n=4 lands on the even lottery at ties", 5.0,
                  criterion4_bf_even);
    run_criterion(5, "effective-bloc and deviation suites, 10k profiles at n=5 and n=7", 120.0,
                  criterion5_structure_suites);
    run_criterion(6, "backward induction singleton plus full SPE oracle equivalence", 300.0,
                  criterion6_induction_and_oracle);
    run_criterion(7, "random confirmations implement majority at n=3,5,7", 60.0,
                  criterion7_rc_implementation);
    run_criterion(8, "abstention variant and the two-voter equilibrium", 60.0,
                  criterion8_abstention);
    run_criterion(9, "supermajority variants k=1,2,3 at n=5", 60.0, criterion9_supermajority);
    run_criterion(10, "even-n random confirmations at n=4", 10.0, criterion10_rc_even);
    run_criterion(11, "incomplete information: truthful PBE and n=3 BNE scan", 120.0,
                  criterion11_incomplete_information);
    run_criterion(12, "byte-identical reports across consecutive runs", 600.0,
                  criterion12_determinism);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", g_failures);
    return 1;
}

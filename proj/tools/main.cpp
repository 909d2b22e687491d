// Command-line front end: outcome evaluation, seeded play, exhaustive
// equilibrium verification, and the bundled reference scenarios.
//
// Exit codes: 0 all checks passed, 1 a verification failed (a witness is
// printed), 2 malformed input or an enumeration over budget.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "majmech/bayes.hpp"
#include "majmech/bf.hpp"
#include "majmech/core.hpp"
#include "majmech/equilibrium.hpp"
#include "majmech/errors.hpp"
#include "majmech/io.hpp"
#include "majmech/rc.hpp"
#include "majmech/suite.hpp"

namespace {

using namespace majmech;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct CommonOpts {
    std::string scenario_path;
    std::string prefs;
    std::string variant = "baseline";
    int k = 1;
    std::string votes;
    std::string confirm = "truthful";
    std::string mode = "both";
    std::string q = "1/2";
    std::uint64_t seed = 0;
    std::uint64_t budget_bf = Budget{}.bf_profiles;
    std::uint64_t budget_rc = Budget{}.rc_profiles;
    int jobs = 1;
    int sample = 10000;
};

// Scenario values fill any option the user left at its default.
void apply_scenario(CommonOpts& o) {
    if (o.scenario_path.empty()) return;
    const Scenario s = parse_scenario(read_file(o.scenario_path));
    if (s.prefs && o.prefs.empty()) o.prefs = *s.prefs;
    if (s.variant) o.variant = *s.variant;
    if (s.k) o.k = *s.k;
    if (s.votes && o.votes.empty()) o.votes = *s.votes;
    if (s.confirm) o.confirm = *s.confirm;
    if (s.mode) o.mode = *s.mode;
    if (s.q) o.q = s.q->str();
    if (s.seed) o.seed = *s.seed;
    if (s.budget) {
        o.budget_bf = *s.budget;
        o.budget_rc = *s.budget;
    }
}

Budget make_budget(const CommonOpts& o) { return Budget{o.budget_bf, o.budget_rc}; }

int cmd_bf_outcome(const std::string& path) {
    const BFProfile profile = parse_bf_profile(read_file(path));
    const auto blocs = find_all_blocs(profile);
    std::cout << "n: " << profile.n() << "\n";
    std::cout << "blocs:";
    if (blocs.empty()) std::cout << " none";
    for (const Bloc& b : blocs) std::cout << " " << b.str() << "->" << to_char(b.supports);
    std::cout << "\n";
    const auto effective = find_effective_bloc(profile);
    std::cout << "effective: " << (effective ? effective->str() : "none") << "\n";
    for (AgentId i = 0; i < profile.n(); ++i)
        std::cout << "eta agent " << (i + 1) << ": " << eta_agent(profile, i).str() << "\n";
    const Lottery outcome = bf_outcome(profile);
    std::cout << "outcome: " << outcome.str() << " (" << outcome.pretty() << ")\n";
    return 0;
}

int cmd_bf_equilibria(const CommonOpts& o, int show) {
    const PreferenceProfile R = PreferenceProfile::from_string(o.prefs);
    const auto equilibria = enumerate_nash_bf(R, make_budget(o), o.jobs);
    std::set<Lottery> outcomes;
    for (const auto& [profile, outcome] : equilibria) outcomes.insert(outcome);
    std::cout << "format: 1\n";
    std::cout << "mechanism: bf\n";
    std::cout << "R=" << R.str() << " eq_count=" << equilibria.size() << " outcomes=[";
    bool first = true;
    for (const Lottery& l : outcomes) {
        if (!first) std::cout << ",";
        std::cout << l.pA.str();
        first = false;
    }
    std::cout << "]\n";
    for (int i = 0; i < show && i < static_cast<int>(equilibria.size()); ++i) {
        std::cout << "equilibrium " << (i + 1) << " (outcome "
                  << equilibria[static_cast<std::size_t>(i)].second.pretty() << "):\n"
                  << format_bf_profile(equilibria[static_cast<std::size_t>(i)].first);
    }
    return 0;
}

int cmd_rc_play(const CommonOpts& o) {
    const VotingProfile votes = parse_voting_profile(o.votes);
    const RCVariant variant = make_rc_variant(o.variant, o.k);
    ConfirmationStrategy confirm;
    if (o.confirm == "truthful") {
        if (o.prefs.empty())
            throw ValidationError("truthful confirmation needs --prefs");
        confirm = truthful_confirmation(PreferenceProfile::from_string(o.prefs));
    } else if (o.confirm == "always-y") {
        confirm = constant_confirmation(ConfAction::Y);
    } else if (o.confirm == "always-n") {
        confirm = constant_confirmation(ConfAction::N);
    } else {
        throw ValidationError("confirm '" + o.confirm + "' unknown");
    }
    std::cout << play_rc(votes, confirm, variant, o.seed).transcript();
    return 0;
}

int cmd_rc_equilibria(const CommonOpts& o) {
    const PreferenceProfile R = PreferenceProfile::from_string(o.prefs);
    const RCVariant variant = make_rc_variant(o.variant, o.k);
    const auto sustained = rc_sustainable_profiles(R, variant, make_budget(o));
    std::cout << "format: 1\n";
    std::cout << "mechanism: " << variant.str() << "\n";
    std::cout << "R=" << R.str() << " eq_count=" << sustained.size() << "\n";
    for (const auto& [v, outcome] : sustained)
        std::cout << "v=" << v.str() << " outcome=" << outcome.str() << "\n";
    return 0;
}

std::uint64_t bf_profile_space(int n) {
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    std::uint64_t choose = 1;
    for (int i = 1; i <= p; ++i)
        choose = choose * static_cast<std::uint64_t>(n - 1 - p + i) / static_cast<std::uint64_t>(i);
    const std::uint64_t msgs = 2 * choose;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > (1ull << 62) / msgs) return UINT64_MAX;
        total *= msgs;
    }
    return total;
}

int cmd_verify(const std::string& mechanism, int n, const CommonOpts& o, bool sampled) {
    if (mechanism == "bf") {
        if (sampled || bf_profile_space(n) > o.budget_bf) {
            const auto report = sampled_bf_check(n, o.sample, o.seed);
            std::cout << report.text();
            return report.pass() ? 0 : 1;
        }
        const auto report = verify_implementation(MechanismId::bf(), n, make_budget(o), o.jobs);
        std::cout << report.table_text() << report.machine_text();
        return report.pass ? 0 : 1;
    }
    if (mechanism != "rc")
        throw ValidationError("mechanism '" + mechanism + "' unknown (bf or rc)");
    const RCVariant variant = make_rc_variant(o.variant, o.k);
    const auto report =
        verify_implementation(MechanismId::rc(variant), n, make_budget(o), o.jobs);
    std::cout << report.table_text() << report.machine_text();
    return report.pass ? 0 : 1;
}

int cmd_bayes_verify(int n, const CommonOpts& o) {
    const BeliefModel beliefs{Rational::parse(o.q)};
    bool pass = true;
    std::vector<DisclosureMode> modes;
    if (o.mode == "full") modes = {DisclosureMode::FullProfile};
    else if (o.mode == "shares") modes = {DisclosureMode::SharesOnly};
    else modes = {DisclosureMode::FullProfile, DisclosureMode::SharesOnly};

    for (DisclosureMode mode : modes) {
        const auto report = verify_truthful_pbe(n, beliefs, mode);
        std::cout << report.text();
        pass = pass && report.pass;
    }
    if (n == 3) {
        for (DisclosureMode mode : modes) {
            const auto entries = enumerate_bne_voting_n3(beliefs, mode);
            bool outcomes_ok = !entries.empty();
            for (const auto& entry : entries) {
                for (std::uint32_t bits = 0; bits < 8; ++bits) {
                    std::vector<Alt> types;
                    for (int i = 0; i < 3; ++i)
                        types.push_back(((bits >> (2 - i)) & 1u) ? Alt::B : Alt::A);
                    const PreferenceProfile R(types);
                    if (!(entry.realization_outcomes[bits] == Lottery::degenerate(maj(R))))
                        outcomes_ok = false;
                }
            }
            std::cout << "bne-n3: mode=" << mode_str(mode) << " count=" << entries.size()
                      << " majority_outcomes=" << (outcomes_ok ? "true" : "false") << "\n";
            pass = pass && outcomes_ok;
        }
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bloc-formation and random-confirmations voting mechanisms"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string profile_path;
    std::string mechanism;
    int n = 0;
    int show = 3;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", opts.scenario_path, "scenario file (key: value lines)");
        cmd->add_option("--seed", opts.seed, "64-bit random seed");
        cmd->add_option("--jobs", opts.jobs, "worker threads for enumeration");
        cmd->add_option("--budget", opts.budget_bf, "max bf profile space")
            ->group("budget");
        cmd->add_option("--rc-budget", opts.budget_rc, "max rc profile space")
            ->group("budget");
    };

    auto* bf_outcome_cmd =
        app.add_subcommand("bf-outcome", "evaluate one bloc-formation profile file");
    bf_outcome_cmd->add_option("profile", profile_path, "profile file")->required();

    auto* bf_eq = app.add_subcommand("bf-equilibria", "enumerate pure Nash equilibria");
    bf_eq->add_option("--n", n, "number of agents");
    bf_eq->add_option("--prefs", opts.prefs, "preference string, e.g. aaabb");
    bf_eq->add_option("--show", show, "equilibria to print in full");
    add_common(bf_eq);

    auto* rc_play = app.add_subcommand("rc-play", "seeded forward play with a transcript");
    rc_play->add_option("--prefs", opts.prefs, "preference string");
    rc_play->add_option("--votes", opts.votes, "stage-one actions, e.g. ab-ab");
    rc_play->add_option("--variant", opts.variant, "baseline|abstention|supermajority|even");
    rc_play->add_option("--k", opts.k, "supermajority threshold");
    rc_play->add_option("--confirm", opts.confirm, "truthful|always-y|always-n");
    add_common(rc_play);

    auto* rc_eq = app.add_subcommand("rc-equilibria", "enumerate sustainable voting profiles");
    rc_eq->add_option("--prefs", opts.prefs, "preference string");
    rc_eq->add_option("--variant", opts.variant, "baseline|abstention|supermajority|even");
    rc_eq->add_option("--k", opts.k, "supermajority threshold");
    add_common(rc_eq);

    auto* verify = app.add_subcommand("verify", "exhaustive implementation check");
    verify->add_option("mechanism", mechanism, "bf or rc")->required();
    verify->add_option("--n", n, "number of agents")->required();
    verify->add_option("--variant", opts.variant, "rc variant");
    verify->add_option("--k", opts.k, "supermajority threshold");
    bool sampled = false;
    verify->add_flag("--sampled", sampled, "force sampled property mode (bf)");
    verify->add_option("--sample", opts.sample, "sample count in sampled mode");
    add_common(verify);

    auto* bayes = app.add_subcommand("bayes-verify", "incomplete-information checks");
    bayes->add_option("--n", n, "number of agents")->required();
    bayes->add_option("--q", opts.q, "prior probability of preferring a, e.g. 3/10");
    bayes->add_option("--mode", opts.mode, "full|shares|both");
    add_common(bayes);

    auto* repro = app.add_subcommand("reproduce-paper", "replay the bundled reference scenarios");
    add_common(repro);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_scenario(opts);
        if (bf_outcome_cmd->parsed()) return cmd_bf_outcome(profile_path);
        if (bf_eq->parsed()) return cmd_bf_equilibria(opts, show);
        if (rc_play->parsed()) return cmd_rc_play(opts);
        if (rc_eq->parsed()) return cmd_rc_equilibria(opts);
        if (verify->parsed()) return cmd_verify(mechanism, n, opts, sampled);
        if (bayes->parsed()) return cmd_bayes_verify(n, opts);
        if (repro->parsed()) {
            const auto report = reproduce_reference_scenarios();
            std::cout << report.text();
            return report.pass ? 0 : 1;
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

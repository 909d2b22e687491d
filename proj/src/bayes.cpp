#include "majmech/bayes.hpp"

#include <algorithm>
#include <array>

#include "majmech/errors.hpp"

namespace majmech {

namespace {

constexpr int kMaxBayesAgents = 9;

void check_bayes_n(int n) {
    if (n % 2 == 0) throw ParityError("incomplete-information analysis requires odd n");
    if (n < 3 || n > kMaxBayesAgents - 2)
        throw CapacityError("incomplete-information analysis supports odd n in [3, 7]");
}

// Other agents in ascending id order; bit k of a realization index is the
// type of others[k] (set = prefers B).
std::vector<AgentId> others_of(AgentId agent, int n) {
    std::vector<AgentId> out;
    for (AgentId j = 0; j < n; ++j)
        if (j != agent) out.push_back(j);
    return out;
}

Alt type_of_bit(std::uint32_t bits, int k) { return ((bits >> k) & 1u) ? Alt::B : Alt::A; }

Rational realization_prior(std::uint32_t bits, int count, const BeliefModel& beliefs) {
    Rational p(1);
    for (int k = 0; k < count; ++k) p *= beliefs.type_prob(type_of_bit(bits, k));
    return p;
}

}  // namespace

std::string mode_str(DisclosureMode mode) {
    return mode == DisclosureMode::FullProfile ? "full" : "shares";
}

TypeStrategy TypeStrategy::truthful() {
    TypeStrategy s;
    s.voting = VotingMap{Alt::A, Alt::B};
    s.confirm = [](Alt own_type, Alt winner, const VotingProfile&, DisclosureMode,
                   int) -> ConfAction {
        return own_type == winner ? ConfAction::Y : ConfAction::N;
    };
    return s;
}

Lottery expected_vote_payoff(AgentId agent, Alt own_type, Alt action,
                             const std::vector<TypeStrategy>& strategies,
                             const BeliefModel& beliefs, DisclosureMode /*mode*/) {
    const int n = static_cast<int>(strategies.size());
    check_bayes_n(n);
    if (agent < 0 || agent >= n) throw DomainError("agent out of range");
    const auto others = others_of(agent, n);
    const int m = static_cast<int>(others.size());
    const RCVariant variant = RCVariant::baseline();

    Rational pA(0);
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        const Rational prior = realization_prior(bits, m, beliefs);
        VotingProfile v;
        v.votes.resize(static_cast<std::size_t>(n));
        std::vector<Alt> prefs(static_cast<std::size_t>(n));
        for (int k = 0; k < m; ++k) {
            const AgentId j = others[static_cast<std::size_t>(k)];
            const Alt t = type_of_bit(bits, k);
            prefs[static_cast<std::size_t>(j)] = t;
            v.votes[static_cast<std::size_t>(j)] =
                vote_for(strategies[static_cast<std::size_t>(j)].voting.vote(t));
        }
        prefs[static_cast<std::size_t>(agent)] = own_type;
        v.votes[static_cast<std::size_t>(agent)] = vote_for(action);
        const PreferenceProfile R(std::move(prefs));
        pA += prior * expected_outcome(v, R, variant).pA;
    }
    return Lottery(pA);
}

std::set<ConfAction> confirmation_best_response_beliefs(
    const ConfirmationQuery& query, const std::vector<TypeStrategy>& strategies,
    const BeliefModel& beliefs) {
    const int n = static_cast<int>(strategies.size());
    check_bayes_n(n);
    const RCVariant variant = RCVariant::baseline();
    if (query.votes.n() != n) throw ValidationError("query votes disagree with n");
    const int committee = static_cast<int>(query.order.size());
    if (committee != query.votes.p() + 1)
        throw PreconditionError("committee of size " + std::to_string(committee) +
                                ", expected p+1");
    if (query.position < 0 || query.position >= committee)
        throw DomainError("position outside the committee order");
    const AgentId me = query.order[static_cast<std::size_t>(query.position)];
    const Alt winner = *vote_winner(query.votes, variant);
    const Lottery beta = beta_lottery(query.votes, variant);

    const auto others = others_of(me, n);
    const int m = static_cast<int>(others.size());
    std::vector<int> slot_of(static_cast<std::size_t>(n), -1);
    for (int k = 0; k < m; ++k) slot_of[static_cast<std::size_t>(others[static_cast<std::size_t>(k)])] = k;

    const int my_vote_a = is_abstain(query.votes.at(me))
                              ? 0
                              : (vote_alt(query.votes.at(me)) == Alt::A ? 1 : 0);
    const int total_a = query.votes.count(Alt::A);

    Rational mass(0);       // total posterior weight
    Rational n_path_pA(0);  // weight-averaged outcome of announcing N

    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        // Disclosure consistency.
        bool consistent = true;
        if (query.mode == DisclosureMode::FullProfile) {
            for (int k = 0; k < m && consistent; ++k) {
                const AgentId j = others[static_cast<std::size_t>(k)];
                const Alt voted = strategies[static_cast<std::size_t>(j)].voting.vote(
                    type_of_bit(bits, k));
                consistent = vote_for(voted) == query.votes.at(j);
            }
        } else {
            int a_votes = my_vote_a;
            for (int k = 0; k < m; ++k) {
                const AgentId j = others[static_cast<std::size_t>(k)];
                if (strategies[static_cast<std::size_t>(j)].voting.vote(type_of_bit(bits, k)) ==
                    Alt::A)
                    ++a_votes;
            }
            consistent = a_votes == total_a;
        }
        if (!consistent) continue;

        // History consistency: every predecessor must have announced N under
        // her strategy given this realization.
        for (int s = 0; s < query.position && consistent; ++s) {
            const AgentId pred = query.order[static_cast<std::size_t>(s)];
            const int slot = slot_of[static_cast<std::size_t>(pred)];
            const Alt pred_type = type_of_bit(bits, slot);
            const ConfAction reply = strategies[static_cast<std::size_t>(pred)].confirm(
                pred_type, winner, query.votes, query.mode, s);
            consistent = reply == ConfAction::N;
        }
        if (!consistent) continue;

        const Rational weight = realization_prior(bits, m, beliefs);
        mass += weight;

        // Successors play on after my N; first Y elects the winner, an all-N
        // tail lands on the beta lottery.
        Lottery n_outcome = beta;
        for (int s = query.position + 1; s < committee; ++s) {
            const AgentId succ = query.order[static_cast<std::size_t>(s)];
            const Alt succ_type = type_of_bit(bits, slot_of[static_cast<std::size_t>(succ)]);
            if (strategies[static_cast<std::size_t>(succ)].confirm(succ_type, winner, query.votes,
                                                                   query.mode, s) ==
                ConfAction::Y) {
                n_outcome = Lottery::degenerate(winner);
                break;
            }
        }
        n_path_pA += weight * n_outcome.pA;
    }

    if (mass.is_zero())
        throw BeliefError("information set unreachable under the posted strategies");

    const Lottery yes = Lottery::degenerate(winner);
    const Lottery no = Lottery(n_path_pA / mass);
    switch (sd_compare(query.own_type, yes, no)) {
        case SdComparison::FirstStrictlyPreferred: return {ConfAction::Y};
        case SdComparison::SecondStrictlyPreferred: return {ConfAction::N};
        case SdComparison::Indifferent: return {ConfAction::Y, ConfAction::N};
    }
    return {};
}

namespace {

// All ordered committees of size `size` from n agents.
std::vector<std::vector<AgentId>> ordered_committees(int n, int size) {
    std::vector<std::vector<AgentId>> out;
    std::vector<AgentId> current;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    const std::function<void()> rec = [&]() {
        if (static_cast<int>(current.size()) == size) {
            out.push_back(current);
            return;
        }
        for (AgentId j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            current.push_back(j);
            rec();
            current.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    rec();
    return out;
}

}  // namespace

std::string TruthfulPbeReport::text() const {
    return "truthful-pbe: n=" + std::to_string(n) + " q=" + qA.str() + " mode=" +
           mode_str(mode) + " infosets=" + std::to_string(infosets_checked) +
           " strict_a=" + (strict_vote_a ? "true" : "false") +
           " strict_b=" + (strict_vote_b ? "true" : "false") +
           " pass=" + (pass ? "true" : "false") +
           (detail.empty() ? "" : " detail=" + detail) + "\n";
}

TruthfulPbeReport verify_truthful_pbe(int n, const BeliefModel& beliefs, DisclosureMode mode) {
    check_bayes_n(n);
    TruthfulPbeReport report;
    report.n = n;
    report.qA = beliefs.qA;
    report.mode = mode;
    const std::vector<TypeStrategy> strategies(static_cast<std::size_t>(n),
                                               TypeStrategy::truthful());

    // Voting stage: truthfulness must be strictly better for both types of
    // every agent.
    report.strict_vote_a = true;
    report.strict_vote_b = true;
    for (AgentId i = 0; i < n; ++i) {
        for (Alt type : {Alt::A, Alt::B}) {
            const Lottery truth = expected_vote_payoff(i, type, type, strategies, beliefs, mode);
            const Lottery lie =
                expected_vote_payoff(i, type, other(type), strategies, beliefs, mode);
            const bool strict = truth.prob(type) > lie.prob(type);
            if (type == Alt::A) report.strict_vote_a = report.strict_vote_a && strict;
            else report.strict_vote_b = report.strict_vote_b && strict;
            if (!strict && report.detail.empty())
                report.detail = "agent " + std::to_string(i + 1) + " type " + to_char(type) +
                                " lacks a strict voting incentive";
        }
    }

    // Confirmation stage: at every reachable information set the truthful
    // reply must be a best response. Information sets are enumerated from
    // full type realizations and deduplicated per disclosure mode.
    bool confirmation_ok = true;
    const int committee = (n - 1) / 2 + 1;
    const auto orders = ordered_committees(n, committee);
    const RCVariant variant = RCVariant::baseline();
    for (const auto& order : orders) {
        for (int t = 0; t < committee && confirmation_ok; ++t) {
            std::set<std::string> seen;
            for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
                VotingProfile votes;
                std::vector<Alt> types(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    types[static_cast<std::size_t>(i)] = ((bits >> (n - 1 - i)) & 1u)
                                                             ? Alt::B
                                                             : Alt::A;
                    votes.votes.push_back(vote_for(types[static_cast<std::size_t>(i)]));
                }
                const Alt winner = *vote_winner(votes, variant);
                // The node is reached in this realization iff every
                // predecessor opposes the winner (truthful replies).
                bool reached = true;
                for (int s = 0; s < t && reached; ++s)
                    reached = types[static_cast<std::size_t>(
                                  order[static_cast<std::size_t>(s)])] != winner;
                if (!reached) continue;

                const AgentId me = order[static_cast<std::size_t>(t)];
                const Alt own_type = types[static_cast<std::size_t>(me)];
                const std::string key = mode == DisclosureMode::FullProfile
                                            ? votes.str()
                                            : std::to_string(votes.count(Alt::A)) + ":" +
                                                  to_char(own_type);
                if (!seen.insert(key).second) continue;

                ConfirmationQuery query{order, t, own_type, votes, mode};
                const auto best = confirmation_best_response_beliefs(query, strategies, beliefs);
                ++report.infosets_checked;
                const ConfAction truthful =
                    own_type == winner ? ConfAction::Y : ConfAction::N;
                if (!best.count(truthful)) {
                    confirmation_ok = false;
                    if (report.detail.empty())
                        report.detail = "truthful reply rejected at order position " +
                                        std::to_string(t + 1) + ", votes " + votes.str();
                    break;
                }
            }
        }
        if (!confirmation_ok) break;
    }

    report.pass = report.strict_vote_a && report.strict_vote_b && confirmation_ok;
    return report;
}

std::optional<BneWitness> bne_voting_deviation(const std::vector<VotingMap>& maps,
                                               const BeliefModel& beliefs, DisclosureMode mode) {
    const int n = static_cast<int>(maps.size());
    std::vector<TypeStrategy> strategies(static_cast<std::size_t>(n), TypeStrategy::truthful());
    for (int i = 0; i < n; ++i) strategies[static_cast<std::size_t>(i)].voting = maps[static_cast<std::size_t>(i)];

    for (AgentId i = 0; i < n; ++i) {
        for (Alt type : {Alt::A, Alt::B}) {
            const Alt current = maps[static_cast<std::size_t>(i)].vote(type);
            const Lottery now = expected_vote_payoff(i, type, current, strategies, beliefs, mode);
            const Lottery alt =
                expected_vote_payoff(i, type, other(current), strategies, beliefs, mode);
            if (alt.prob(type) > now.prob(type))
                return BneWitness{i, type, other(current), now, alt};
        }
    }
    return std::nullopt;
}

std::vector<BneEntry> enumerate_bne_voting_n3(const BeliefModel& beliefs, DisclosureMode mode) {
    constexpr int n = 3;
    const std::array<VotingMap, 4> all_maps = {
        VotingMap{Alt::A, Alt::A}, VotingMap{Alt::A, Alt::B},
        VotingMap{Alt::B, Alt::A}, VotingMap{Alt::B, Alt::B}};

    std::vector<BneEntry> found;
    for (int m0 = 0; m0 < 4; ++m0)
        for (int m1 = 0; m1 < 4; ++m1)
            for (int m2 = 0; m2 < 4; ++m2) {
                const std::vector<VotingMap> maps = {all_maps[static_cast<std::size_t>(m0)],
                                                     all_maps[static_cast<std::size_t>(m1)],
                                                     all_maps[static_cast<std::size_t>(m2)]};
                if (bne_voting_deviation(maps, beliefs, mode)) continue;

                BneEntry entry;
                entry.maps = maps;
                for (std::uint32_t bits = 0; bits < 8; ++bits) {
                    std::vector<Alt> types(n);
                    VotingProfile v;
                    for (int i = 0; i < n; ++i) {
                        types[static_cast<std::size_t>(i)] =
                            ((bits >> (n - 1 - i)) & 1u) ? Alt::B : Alt::A;
                        v.votes.push_back(vote_for(
                            maps[static_cast<std::size_t>(i)].vote(types[static_cast<std::size_t>(i)])));
                    }
                    const PreferenceProfile R(types);
                    entry.realization_outcomes.push_back(
                        expected_outcome(v, R, RCVariant::baseline()));
                }
                found.push_back(std::move(entry));
            }
    return found;
}

}  // namespace majmech

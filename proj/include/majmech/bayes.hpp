#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "majmech/core.hpp"
#include "majmech/rc.hpp"

namespace majmech {

/// I.i.d. prior: each other agent prefers A with probability qA. The open
/// interval keeps every pivotal event at positive prior probability.
struct BeliefModel {
    Rational qA;

    explicit BeliefModel(Rational q) : qA(q) {
        if (!(qA > Rational(0)) || !(qA < Rational(1)))
            throw DomainError("belief qA=" + qA.str() + " must lie strictly inside (0,1)");
    }

    Rational type_prob(Alt t) const { return t == Alt::A ? qA : Rational(1) - qA; }
};

/// What the mechanism announces after the voting stage.
enum class DisclosureMode : std::uint8_t { FullProfile, SharesOnly };

std::string mode_str(DisclosureMode mode);

/// Type-contingent first-stage vote.
struct VotingMap {
    Alt when_a = Alt::A;
    Alt when_b = Alt::B;

    Alt vote(Alt type) const { return type == Alt::A ? when_a : when_b; }
    bool truthful() const { return when_a == Alt::A && when_b == Alt::B; }
    std::string str() const {
        return std::string("a->") + to_char(when_a) + ",b->" + to_char(when_b);
    }
    friend bool operator==(const VotingMap&, const VotingMap&) = default;
};

/// Confirmation reply as a function of own type, the announced winner, the
/// disclosed first-stage information, and the node (position; reaching the
/// node implies exactly `position` prior N announcements).
using ConfirmRule = std::function<ConfAction(Alt own_type, Alt winner, const VotingProfile& votes,
                                             DisclosureMode mode, int position)>;

struct TypeStrategy {
    VotingMap voting;
    ConfirmRule confirm;

    /// Truthful voting plus "Y iff the winner is my preferred option".
    static TypeStrategy truthful();
};

/// Interim expected payoff of casting `action` with type `own_type`: exact
/// sum over the 2^(n-1) type realizations of the others, their induced votes,
/// and the uniform committee draw with equilibrium confirmation continuation.
/// The continuation outcome is disclosure-independent, so `mode` does not
/// move the value; it is part of the contract surface.
Lottery expected_vote_payoff(AgentId agent, Alt own_type, Alt action,
                             const std::vector<TypeStrategy>& strategies,
                             const BeliefModel& beliefs, DisclosureMode mode);

/// One confirmation decision node from the mover's point of view. Reaching
/// position t means every predecessor in the order announced N.
struct ConfirmationQuery {
    std::vector<AgentId> order;  // announced committee order
    int position = 0;            // 0-based; the mover is order[position]
    Alt own_type = Alt::A;
    VotingProfile votes;         // realized stage-one votes
    DisclosureMode mode = DisclosureMode::FullProfile;
};

/// Exact best-reply set at a reachable confirmation node: posterior over the
/// others' types by enumeration (conditioning on the disclosed information
/// and on the predecessors' N announcements under their posted strategies),
/// then a stochastic-dominance comparison of announcing Y against letting the
/// successors play on. Throws BeliefError at an unreachable node.
std::set<ConfAction> confirmation_best_response_beliefs(const ConfirmationQuery& query,
                                                        const std::vector<TypeStrategy>& strategies,
                                                        const BeliefModel& beliefs);

struct TruthfulPbeReport {
    int n = 0;
    Rational qA;
    DisclosureMode mode = DisclosureMode::FullProfile;
    bool pass = false;
    bool strict_vote_a = false;  // voting incentive strict for type a
    bool strict_vote_b = false;
    int infosets_checked = 0;
    std::string detail;

    std::string text() const;
};

/// Checks that truthful voting plus truthful confirmation is a perfect
/// Bayesian equilibrium: strict voting incentives for both types of every
/// agent, and the truthful reply is a best response at every reachable
/// confirmation information set under Bayes-consistent beliefs.
TruthfulPbeReport verify_truthful_pbe(int n, const BeliefModel& beliefs, DisclosureMode mode);

struct BneWitness {
    AgentId agent = 0;
    Alt type = Alt::A;
    Alt better_vote = Alt::A;
    Lottery before;
    Lottery after;
};

/// Nullopt iff no type of any agent strictly prefers the other vote under the
/// interim expected payoff.
std::optional<BneWitness> bne_voting_deviation(const std::vector<VotingMap>& maps,
                                               const BeliefModel& beliefs, DisclosureMode mode);

struct BneEntry {
    std::vector<VotingMap> maps;
    /// Expected outcome for each full type realization, indexed with agent 1
    /// in the most significant bit, bit clear = type a.
    std::vector<Lottery> realization_outcomes;
};

/// All type-contingent pure-voting Bayes-Nash equilibria at n=3 (4^3 strategy
/// profiles), confirmation handled by the equilibrium continuation.
std::vector<BneEntry> enumerate_bne_voting_n3(const BeliefModel& beliefs, DisclosureMode mode);

}  // namespace majmech

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "majmech/core.hpp"
#include "majmech/random.hpp"

namespace majmech {

/// The four flavours of the random-confirmations mechanism.
struct RCVariant {
    enum class Kind : std::uint8_t { Baseline, Abstention, Supermajority, EvenN };

    Kind kind = Kind::Baseline;
    int k = 0;  // supermajority threshold, 1 <= k <= p+1

    static RCVariant baseline() { return {Kind::Baseline, 0}; }
    static RCVariant abstention() { return {Kind::Abstention, 0}; }
    static RCVariant supermajority(int k) { return {Kind::Supermajority, k}; }
    static RCVariant even_n() { return {Kind::EvenN, 0}; }

    bool allows_abstain() const { return kind == Kind::Abstention; }
    bool allows_tie() const { return kind == Kind::Abstention || kind == Kind::EvenN; }

    /// Throws on an (n, variant) combination the mechanism does not define.
    void validate_for(int n) const;
    std::string str() const;

    friend bool operator==(const RCVariant&, const RCVariant&) = default;
};

enum class VoteAction : std::uint8_t { VoteA = 0, VoteB = 1, Abstain = 2 };

inline VoteAction vote_for(Alt x) { return x == Alt::A ? VoteAction::VoteA : VoteAction::VoteB; }
inline bool is_abstain(VoteAction v) { return v == VoteAction::Abstain; }
Alt vote_alt(VoteAction v);  // throws on Abstain
char vote_char(VoteAction v);

/// First-stage vote profile.
struct VotingProfile {
    std::vector<VoteAction> votes;

    int n() const { return static_cast<int>(votes.size()); }
    int p() const { return n() % 2 == 1 ? (n() - 1) / 2 : n() / 2; }
    VoteAction at(AgentId i) const { return votes[static_cast<std::size_t>(i)]; }
    int count(Alt x) const;
    int participants() const { return count(Alt::A) + count(Alt::B); }
    VotingProfile with_vote(AgentId i, VoteAction v) const;
    std::string str() const;  // "ab-ab", '-' for abstain

    friend bool operator==(const VotingProfile&, const VotingProfile&) = default;
};

/// The drawn, ordered confirmation committee.
using ConfirmationDraw = std::vector<AgentId>;

enum class ConfAction : std::uint8_t { Y, N };

/// Set of lotteries achievable as subgame-perfect outcomes of one
/// confirmation subgame.
struct OutcomeSet {
    std::set<Lottery> lotteries;

    bool singleton() const { return lotteries.size() == 1; }
    const Lottery& only() const;
};

/// Stage-one winner; nullopt is a tie, which only the abstention and even-n
/// variants can produce. Under the supermajority variant the winner is the
/// threshold rule applied to the votes, not the plurality.
std::optional<Alt> vote_winner(const VotingProfile& v, const RCVariant& variant);

/// Off-equilibrium lottery of the confirmation stage: vote shares out of n,
/// or out of the participants under abstention.
Lottery beta_lottery(const VotingProfile& v, const RCVariant& variant);

/// Confirmation committee size under the supermajority variant: p+k when the
/// status quo (A) won stage one, p+2-k when the alternative (B) won.
int t_bar(Alt winner, const RCVariant& variant, int n);

/// Committee size for any variant (p+1 except supermajority).
int committee_size(std::optional<Alt> winner, const RCVariant& variant, int n);

/// Exact set of SPE outcomes of the confirmation subgame after votes `v` and
/// ordered draw `draw`, by backward induction with set-valued best responses:
/// an indifferent agent contributes both continuations.
OutcomeSet confirmation_spe(const VotingProfile& v, const ConfirmationDraw& draw,
                            const PreferenceProfile& R, const RCVariant& variant);

/// Closed-form confirmation outcome: the stage winner if some committee
/// member prefers it, otherwise the beta lottery; an even-weights lottery on
/// a tied first stage. Depends on the committee only as a set.
Lottery confirmation_outcome(const VotingProfile& v, const std::vector<AgentId>& committee,
                       const PreferenceProfile& R, const RCVariant& variant);

/// Exact expectation of confirmation_outcome over the uniform committee draw.
Lottery expected_outcome(const VotingProfile& v, const PreferenceProfile& R,
                         const RCVariant& variant);

/// Confirmation reply rule used by forward simulation. Returning nullopt
/// means the strategy is undefined at the reached history, which is a
/// simulation error.
using ConfirmationStrategy =
    std::function<std::optional<ConfAction>(AgentId agent, Alt winner, int position,
                                            int prior_noes)>;

ConfirmationStrategy truthful_confirmation(const PreferenceProfile& R);
ConfirmationStrategy constant_confirmation(ConfAction reply);

struct RCPlayResult {
    std::vector<std::string> lines;     // transcript, one action per line
    Lottery outcome;                    // terminal lottery (possibly degenerate)
    ConfirmationDraw committee;         // drawn order; empty when stage one ties
    int stages = 0;                     // 1 voting stage + confirmation steps
    int votes_cast = 0;                 // non-abstain announcements, both stages

    std::string transcript() const;     // lines + final "outcome: pA=<num>/<den>"
};

/// Plays one full game: fixed stage-one votes, seeded committee draw,
/// confirmation replies from `confirm`. Identical seeds give identical
/// transcripts.
RCPlayResult play_rc(const VotingProfile& votes, const ConfirmationStrategy& confirm,
                     const RCVariant& variant, std::uint64_t seed);

/// All committees (as sorted agent sets) of the given size, in lexicographic
/// order.
std::vector<std::vector<AgentId>> all_committees(int n, int size);

}  // namespace majmech

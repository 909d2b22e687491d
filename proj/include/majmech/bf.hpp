#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "majmech/core.hpp"
#include "majmech/random.hpp"

namespace majmech {

/// One agent's message in the bloc-formation mechanism: a vote plus a
/// nomination of exactly p other agents.
struct BFMessage {
    Alt vote = Alt::A;
    std::vector<AgentId> nominations;  // sorted, size p, sender excluded

    friend bool operator==(const BFMessage&, const BFMessage&) = default;
    std::string str() const;  // e.g. "(a,{4,5})", 1-based
};

class BFProfile {
  public:
    BFProfile(int n, std::vector<BFMessage> messages);

    int n() const { return n_; }
    int p() const { return n_ % 2 == 1 ? (n_ - 1) / 2 : n_ / 2; }
    const BFMessage& message(AgentId i) const { return messages_[static_cast<std::size_t>(i)]; }
    const std::vector<BFMessage>& messages() const { return messages_; }
    Alt vote(AgentId i) const { return messages_[static_cast<std::size_t>(i)].vote; }

    BFProfile with_message(AgentId i, BFMessage m) const;

    /// Throws ValidationError naming the offending agent (1-based).
    void validate() const;

  private:
    int n_;
    std::vector<BFMessage> messages_;
};

/// Directed nomination graph: entry (i,j) = 1 iff agent i nominated agent j.
/// Rows are stored as bitmasks; every row has popcount exactly p.
class NominationGraph {
  public:
    explicit NominationGraph(std::vector<std::uint32_t> rows);

    int n() const { return static_cast<int>(rows_.size()); }
    bool edge(AgentId i, AgentId j) const {
        return (rows_[static_cast<std::size_t>(i)] >> j) & 1u;
    }
    std::uint32_t row(AgentId i) const { return rows_[static_cast<std::size_t>(i)]; }
    int row_sum(AgentId i) const;
    int col_sum(AgentId j) const;  // number of agents nominating j

  private:
    std::vector<std::uint32_t> rows_;
};

NominationGraph build_graph(const BFProfile& profile);

/// A set of at least p+1 agents, all voting `supports`, whose nominations all
/// stay inside the set.
struct Bloc {
    std::vector<AgentId> members;  // sorted
    Alt supports = Alt::A;
    std::uint32_t mask = 0;

    friend bool operator==(const Bloc& x, const Bloc& y) {
        return x.mask == y.mask && x.supports == y.supports;
    }
    std::string str() const;  // "{1,4,5}" 1-based
};

/// True iff the profile admits at least one bloc (in favor of either option).
bool has_bloc(const BFProfile& profile);

/// All blocs, sorted by (size, members). Every bloc is a union of
/// nomination-reachability closures of agents whose closure is vote-uniform;
/// the subset brute force in the tests certifies this enumeration.
std::vector<Bloc> find_all_blocs(const BFProfile& profile);

/// The unique strongly connected bloc, when any bloc exists. Computed as the
/// sink strongly connected component of the union of all blocs and
/// cross-checked against the intersection of the enumerated blocs; a mismatch
/// throws InvariantViolation rather than returning anything.
std::optional<Bloc> find_effective_bloc(const BFProfile& profile);

/// Nomination share of agent i: |{j != i : i in c_j}| / (n*p), exact.
Rational eta_agent(const BFProfile& profile, AgentId i);

/// Off-bloc lottery: pA is the total nomination share of agents voting A.
Lottery eta_lottery(const BFProfile& profile);

/// Mechanism outcome: degenerate on x when a bloc in favor of x exists,
/// otherwise the eta lottery.
Lottery bf_outcome(const BFProfile& profile);

/// For a profile admitting a bloc: a message for agent i after which no bloc
/// remains. Members of the effective bloc get their vote-flipped message
/// (guaranteed to work; violation throws). Non-members are searched over
/// their entire message space and get nullopt when nothing works.
std::optional<BFMessage> bloc_breaking_deviation(const BFProfile& profile, AgentId i);

/// Canonical enumeration of one agent's message space: votes A before B,
/// nomination sets in lexicographic order. Shared by the equilibrium scan
/// and the deviation search so witness order is reproducible.
class MessageSpace {
  public:
    MessageSpace(int n, AgentId agent);

    int size() const { return static_cast<int>(messages_.size()); }
    const BFMessage& at(int index) const { return messages_[static_cast<std::size_t>(index)]; }
    int index_of(const BFMessage& m) const;

  private:
    std::vector<BFMessage> messages_;
};

/// Uniformly random valid profile.
BFProfile random_bf_profile(int n, SplitMix64& rng);

/// Random profile conditioned on admitting at least one bloc: a random
/// majority-or-larger set is wired up as a bloc and everything else is drawn
/// freely; half the time a few agents are then re-drawn at random, keeping
/// the perturbation only if some bloc survives.
BFProfile random_bf_profile_with_bloc(int n, SplitMix64& rng);

}  // namespace majmech

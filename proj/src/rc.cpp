#include "majmech/rc.hpp"

#include <algorithm>

#include "majmech/errors.hpp"

namespace majmech {

void RCVariant::validate_for(int n) const {
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    switch (kind) {
        case Kind::Baseline:
        case Kind::Abstention:
            if (n % 2 == 0) throw ParityError(str() + " requires odd n");
            if (n < 3) throw ValidationError(str() + " requires n >= 3");
            break;
        case Kind::Supermajority:
            if (n % 2 == 0) throw ParityError(str() + " requires odd n");
            if (n < 3) throw ValidationError(str() + " requires n >= 3");
            if (k < 1 || k > p + 1)
                throw DomainError("supermajority threshold k=" + std::to_string(k) +
                                  " outside [1, p+1]");
            break;
        case Kind::EvenN:
            if (n % 2 == 1) throw ParityError(str() + " requires even n");
            if (n < 2) throw ValidationError(str() + " requires n >= 2");
            break;
    }
}

std::string RCVariant::str() const {
    switch (kind) {
        case Kind::Baseline: return "rc-baseline";
        case Kind::Abstention: return "rc-abstention";
        case Kind::Supermajority: return "rc-supermajority-k" + std::to_string(k);
        case Kind::EvenN: return "rc-even";
    }
    return "rc-?";
}

Alt vote_alt(VoteAction v) {
    if (v == VoteAction::VoteA) return Alt::A;
    if (v == VoteAction::VoteB) return Alt::B;
    throw PreconditionError("abstention carries no alternative");
}

char vote_char(VoteAction v) {
    switch (v) {
        case VoteAction::VoteA: return 'a';
        case VoteAction::VoteB: return 'b';
        case VoteAction::Abstain: return '-';
    }
    return '?';
}

int VotingProfile::count(Alt x) const {
    return static_cast<int>(std::count(votes.begin(), votes.end(), vote_for(x)));
}

VotingProfile VotingProfile::with_vote(AgentId i, VoteAction v) const {
    VotingProfile out = *this;
    out.votes[static_cast<std::size_t>(i)] = v;
    return out;
}

std::string VotingProfile::str() const {
    std::string s;
    s.reserve(votes.size());
    for (VoteAction v : votes) s.push_back(vote_char(v));
    return s;
}

const Lottery& OutcomeSet::only() const {
    if (!singleton())
        throw InvariantViolation("outcome set has " + std::to_string(lotteries.size()) +
                                 " elements, expected a singleton");
    return *lotteries.begin();
}

namespace {

void check_votes(const VotingProfile& v, const RCVariant& variant) {
    variant.validate_for(v.n());
    if (!variant.allows_abstain()) {
        for (AgentId i = 0; i < v.n(); ++i)
            if (is_abstain(v.at(i)))
                throw ValidationError("agent " + std::to_string(i + 1) +
                                      " abstains outside the abstention variant");
    }
}

}  // namespace

std::optional<Alt> vote_winner(const VotingProfile& v, const RCVariant& variant) {
    check_votes(v, variant);
    const int na = v.count(Alt::A);
    const int nb = v.count(Alt::B);
    if (variant.kind == RCVariant::Kind::Supermajority)
        return nb >= v.p() + variant.k ? Alt::B : Alt::A;
    if (na == nb) {
        if (!variant.allows_tie())
            throw InvariantViolation("tie in a variant that cannot produce one");
        return std::nullopt;
    }
    return na > nb ? Alt::A : Alt::B;
}

Lottery beta_lottery(const VotingProfile& v, const RCVariant& variant) {
    check_votes(v, variant);
    if (variant.kind == RCVariant::Kind::Abstention) {
        const int participants = v.participants();
        if (participants == 0)
            throw PreconditionError("beta lottery undefined with zero participants");
        return Lottery(Rational(v.count(Alt::A), participants));
    }
    return Lottery(Rational(v.count(Alt::A), v.n()));
}

int t_bar(Alt winner, const RCVariant& variant, int n) {
    if (variant.kind != RCVariant::Kind::Supermajority)
        throw DomainError("t_bar is defined for the supermajority variant only");
    variant.validate_for(n);
    const int p = (n - 1) / 2;
    return winner == Alt::A ? p + variant.k : p + 2 - variant.k;
}

int committee_size(std::optional<Alt> winner, const RCVariant& variant, int n) {
    variant.validate_for(n);
    if (variant.kind == RCVariant::Kind::Supermajority) {
        if (!winner) throw PreconditionError("supermajority stage one cannot tie");
        return t_bar(*winner, variant, n);
    }
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    return p + 1;
}

OutcomeSet confirmation_spe(const VotingProfile& v, const ConfirmationDraw& draw,
                            const PreferenceProfile& R, const RCVariant& variant) {
    check_votes(v, variant);
    const auto winner = vote_winner(v, variant);
    if (!winner)
        throw PreconditionError("tied first stage has no confirmation subgame");
    const int want = committee_size(winner, variant, v.n());
    if (static_cast<int>(draw.size()) != want)
        throw PreconditionError("draw of size " + std::to_string(draw.size()) +
                                ", expected t_bar=" + std::to_string(want));

    const Lottery approve = Lottery::degenerate(*winner);
    OutcomeSet spe;
    spe.lotteries.insert(beta_lottery(v, variant));  // all-N terminal
    for (int t = static_cast<int>(draw.size()) - 1; t >= 0; --t) {
        const Alt pref = R.pref(draw[static_cast<std::size_t>(t)]);
        OutcomeSet next;
        for (const Lottery& cont : spe.lotteries) {
            switch (sd_compare(pref, approve, cont)) {
                case SdComparison::FirstStrictlyPreferred: next.lotteries.insert(approve); break;
                case SdComparison::SecondStrictlyPreferred: next.lotteries.insert(cont); break;
                case SdComparison::Indifferent:
                    next.lotteries.insert(approve);
                    next.lotteries.insert(cont);
                    break;
            }
        }
        spe = std::move(next);
    }
    return spe;
}

Lottery confirmation_outcome(const VotingProfile& v, const std::vector<AgentId>& committee,
                       const PreferenceProfile& R, const RCVariant& variant) {
    check_votes(v, variant);
    const auto winner = vote_winner(v, variant);
    if (!winner) return Lottery::half();
    const int want = committee_size(winner, variant, v.n());
    if (static_cast<int>(committee.size()) != want)
        throw PreconditionError("committee of size " + std::to_string(committee.size()) +
                                ", expected t_bar=" + std::to_string(want));
    for (AgentId i : committee)
        if (R.prefers(i, *winner)) return Lottery::degenerate(*winner);
    return beta_lottery(v, variant);
}

std::vector<std::vector<AgentId>> all_committees(int n, int size) {
    std::vector<std::vector<AgentId>> out;
    std::vector<AgentId> pick(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) pick[static_cast<std::size_t>(k)] = k;
    for (;;) {
        out.push_back(pick);
        int k = size - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - size + k) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < size; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Lottery expected_outcome(const VotingProfile& v, const PreferenceProfile& R,
                         const RCVariant& variant) {
    check_votes(v, variant);
    const auto winner = vote_winner(v, variant);
    if (!winner) return Lottery::half();
    const int size = committee_size(winner, variant, v.n());
    const auto committees = all_committees(v.n(), size);
    Rational pA(0);
    for (const auto& committee : committees)
        pA += confirmation_outcome(v, committee, R, variant).pA;
    return Lottery(pA / Rational(static_cast<std::int64_t>(committees.size())));
}

ConfirmationStrategy truthful_confirmation(const PreferenceProfile& R) {
    return [R](AgentId agent, Alt winner, int, int) -> std::optional<ConfAction> {
        return R.prefers(agent, winner) ? ConfAction::Y : ConfAction::N;
    };
}

ConfirmationStrategy constant_confirmation(ConfAction reply) {
    return [reply](AgentId, Alt, int, int) -> std::optional<ConfAction> { return reply; };
}

std::string RCPlayResult::transcript() const {
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    out += "outcome: " + outcome.str() + "\n";
    return out;
}

RCPlayResult play_rc(const VotingProfile& votes, const ConfirmationStrategy& confirm,
                     const RCVariant& variant, std::uint64_t seed) {
    check_votes(votes, variant);
    RCPlayResult result;
    result.stages = 1;
    for (AgentId i = 0; i < votes.n(); ++i) {
        result.lines.push_back("stage 1: agent " + std::to_string(i + 1) + " -> " +
                               vote_char(votes.at(i)));
        if (!is_abstain(votes.at(i))) ++result.votes_cast;
    }

    const auto winner = vote_winner(votes, variant);
    if (!winner) {
        result.outcome = Lottery::half();
        return result;
    }

    SplitMix64 rng(seed);
    const int size = committee_size(winner, variant, votes.n());
    result.committee = draw_ordered(votes.n(), size, rng);

    int noes = 0;
    for (int t = 0; t < size; ++t) {
        const AgentId agent = result.committee[static_cast<std::size_t>(t)];
        const auto reply = confirm(agent, *winner, t, noes);
        if (!reply)
            throw SimulationError("no confirmation reply defined for agent " +
                                  std::to_string(agent + 1) + " at stage " +
                                  std::to_string(2 + t) + " after " + std::to_string(noes) +
                                  " N announcements");
        ++result.stages;
        ++result.votes_cast;
        result.lines.push_back("stage " + std::to_string(result.stages) + ": agent " +
                               std::to_string(agent + 1) + " -> " +
                               (*reply == ConfAction::Y ? "Y" : "N"));
        if (*reply == ConfAction::Y) {
            result.outcome = Lottery::degenerate(*winner);
            return result;
        }
        ++noes;
    }
    result.outcome = beta_lottery(votes, variant);
    return result;
}

}  // namespace majmech

#include "majmech/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <thread>

#include "majmech/errors.hpp"

namespace majmech {

namespace {

constexpr int kMaxAgents = 16;

// Per-agent message tables for the exhaustive bloc-formation scan: nomination
// masks and vote bits indexed by the canonical message index (vote a before
// b, nomination sets lexicographic).
struct BfEnum {
    int n = 0;
    int p = 0;
    int msg_count = 0;
    std::uint32_t full = 0;
    std::vector<MessageSpace> spaces;              // one per agent
    std::vector<std::vector<std::uint32_t>> rows;  // [agent][msg] nomination mask
    std::vector<std::vector<std::uint8_t>> is_a;   // [agent][msg] vote == A
    std::array<std::uint64_t, kMaxAgents> stride{};
    std::uint64_t total = 1;

    explicit BfEnum(int n_agents) : n(n_agents) {
        if (n < 2 || n > kMaxAgents)
            throw CapacityError("bloc-formation enumeration supports 2 <= n <= " +
                                std::to_string(kMaxAgents));
        p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
        full = (1u << n) - 1u;
        for (AgentId i = 0; i < n; ++i) {
            spaces.emplace_back(n, i);
            std::vector<std::uint32_t> r;
            std::vector<std::uint8_t> a;
            for (int m = 0; m < spaces.back().size(); ++m) {
                const BFMessage& msg = spaces.back().at(m);
                std::uint32_t mask = 0;
                for (AgentId j : msg.nominations) mask |= (1u << j);
                r.push_back(mask);
                a.push_back(msg.vote == Alt::A ? 1 : 0);
            }
            rows.push_back(std::move(r));
            is_a.push_back(std::move(a));
        }
        msg_count = spaces.front().size();
        for (int i = n - 1; i >= 0; --i) {
            stride[static_cast<std::size_t>(i)] = total;
            total *= static_cast<std::uint64_t>(msg_count);
        }
    }

    void decode(std::uint64_t index, std::array<int, kMaxAgents>& digits) const {
        for (int i = n - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(index % msg_count);
            index /= static_cast<std::uint64_t>(msg_count);
        }
    }

    bool advance(std::array<int, kMaxAgents>& digits) const {
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[static_cast<std::size_t>(i)] < msg_count) return true;
            digits[static_cast<std::size_t>(i)] = 0;
        }
        return false;
    }

    BFProfile profile_at(const std::array<int, kMaxAgents>& digits) const {
        std::vector<BFMessage> msgs;
        msgs.reserve(static_cast<std::size_t>(n));
        for (AgentId i = 0; i < n; ++i)
            msgs.push_back(spaces[static_cast<std::size_t>(i)].at(
                digits[static_cast<std::size_t>(i)]));
        return BFProfile(n, std::move(msgs));
    }
};

bool closed_subset_exists(const std::array<std::uint32_t, kMaxAgents>& rows,
                          std::uint32_t voters, int min_size) {
    if (std::popcount(voters) < min_size) return false;
    std::uint32_t v = voters;
    while (v != 0) {
        const int seed = std::countr_zero(v);
        v &= v - 1;
        std::uint32_t members = 1u << seed;
        std::uint32_t frontier = members;
        bool ok = true;
        while (frontier != 0) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f != 0) {
                const int j = std::countr_zero(f);
                f &= f - 1;
                next |= rows[static_cast<std::size_t>(j)];
            }
            if (next & ~voters) {
                ok = false;
                break;
            }
            frontier = next & ~members;
            members |= next;
        }
        if (ok) return true;
    }
    return false;
}

Lottery bf_outcome_from_digits(const BfEnum& e, const std::array<int, kMaxAgents>& digits) {
    std::array<std::uint32_t, kMaxAgents> rows{};
    std::uint32_t voters_a = 0;
    for (int i = 0; i < e.n; ++i) {
        const int d = digits[static_cast<std::size_t>(i)];
        rows[static_cast<std::size_t>(i)] = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
        if (e.is_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]) voters_a |= (1u << i);
    }
    if (closed_subset_exists(rows, voters_a, e.p + 1)) return Lottery::degenerate(Alt::A);
    if (closed_subset_exists(rows, e.full & ~voters_a, e.p + 1)) return Lottery::degenerate(Alt::B);

    std::int64_t received_by_a = 0;
    std::uint32_t va = voters_a;
    while (va != 0) {
        const int i = std::countr_zero(va);
        va &= va - 1;
        for (int j = 0; j < e.n; ++j)
            received_by_a += static_cast<int>((rows[static_cast<std::size_t>(j)] >> i) & 1u);
    }
    return Lottery(Rational(received_by_a, static_cast<std::int64_t>(e.n) * e.p));
}

std::vector<Lottery> build_outcome_table(const BfEnum& e, int jobs) {
    std::vector<Lottery> table(e.total);
    jobs = std::clamp(jobs, 1, 64);
    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        std::array<int, kMaxAgents> digits{};
        e.decode(lo, digits);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            table[idx] = bf_outcome_from_digits(e, digits);
            e.advance(digits);
        }
    };
    if (jobs == 1 || e.total < 4096) {
        worker(0, e.total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (e.total + static_cast<std::uint64_t>(jobs) - 1) /
                                    static_cast<std::uint64_t>(jobs);
        for (int t = 0; t < jobs; ++t) {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
            const std::uint64_t hi = std::min(e.total, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return table;
}

// Preference bitmask helpers: bit i set means agent i prefers B. Index order
// makes R strings enumerate as "aa..a", "aa..b", ...
PreferenceProfile prefs_from_index(std::uint32_t r, int n) {
    std::vector<Alt> prefs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        prefs[static_cast<std::size_t>(i)] = ((r >> (n - 1 - i)) & 1u) ? Alt::B : Alt::A;
    return PreferenceProfile(std::move(prefs));
}

std::string join_outcomes(const std::vector<Lottery>& outcomes) {
    std::string s = "[";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (i) s += ",";
        s += outcomes[i].pA.str();
    }
    return s + "]";
}

std::string bf_profile_witness(const BFProfile& profile, const Lottery& outcome) {
    std::string s = "votes=";
    for (AgentId i = 0; i < profile.n(); ++i) s += to_char(profile.vote(i));
    s += " noms=";
    for (AgentId i = 0; i < profile.n(); ++i) {
        if (i) s += "|";
        const auto& noms = profile.message(i).nominations;
        for (std::size_t k = 0; k < noms.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(noms[k] + 1);
        }
    }
    s += " outcome=" + outcome.str();
    return s;
}

// Streaming Nash scan over the whole profile space for one preference
// profile. Calls `on_equilibrium` in enumeration order.
template <typename Fn>
void scan_nash_bf(const BfEnum& e, const std::vector<Lottery>& table,
                  const PreferenceProfile& R, Fn&& on_equilibrium) {
    std::array<int, kMaxAgents> digits{};
    std::array<Alt, kMaxAgents> pref{};
    for (int i = 0; i < e.n; ++i) pref[static_cast<std::size_t>(i)] = R.pref(i);

    for (std::uint64_t idx = 0; idx < e.total; ++idx) {
        const Lottery& base = table[idx];
        bool equilibrium = true;
        for (int i = 0; i < e.n && equilibrium; ++i) {
            const int d = digits[static_cast<std::size_t>(i)];
            const std::uint64_t stride = e.stride[static_cast<std::size_t>(i)];
            const std::uint64_t row_base = idx - static_cast<std::uint64_t>(d) * stride;
            const Alt want = pref[static_cast<std::size_t>(i)];
            for (int m = 0; m < e.msg_count; ++m) {
                if (m == d) continue;
                const Lottery& dev = table[row_base + static_cast<std::uint64_t>(m) * stride];
                if (dev.prob(want) > base.prob(want)) {
                    equilibrium = false;
                    break;
                }
            }
        }
        if (equilibrium) on_equilibrium(idx, digits, base);
        e.advance(digits);
    }
}

std::vector<VoteAction> rc_actions(const RCVariant& variant) {
    std::vector<VoteAction> actions = {VoteAction::VoteA, VoteAction::VoteB};
    if (variant.allows_abstain()) actions.push_back(VoteAction::Abstain);
    return actions;
}

// Expected outcomes for every voting profile, validating on the way that each
// confirmation subgame solved by backward induction is a singleton equal to
// the closed form.
std::vector<Lottery> rc_expected_table(const PreferenceProfile& R, const RCVariant& variant,
                                       const Budget& budget, std::uint64_t& total_out) {
    const int n = R.n();
    variant.validate_for(n);
    const auto actions = rc_actions(variant);
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= actions.size();
        if (total > budget.rc_profiles)
            throw CapacityError("rc profile space exceeds budget of " +
                                std::to_string(budget.rc_profiles) +
                                " profiles; raise --budget or use sampling");
    }
    total_out = total;

    std::map<int, std::vector<std::vector<AgentId>>> committees_by_size;
    std::vector<Lottery> expected(total);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        VotingProfile v;
        v.votes.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v.votes[static_cast<std::size_t>(i)] = actions[static_cast<std::size_t>(
                digits[static_cast<std::size_t>(i)])];

        const auto winner = vote_winner(v, variant);
        if (!winner) {
            expected[idx] = Lottery::half();
        } else {
            const int size = committee_size(winner, variant, n);
            auto it = committees_by_size.find(size);
            if (it == committees_by_size.end())
                it = committees_by_size.emplace(size, all_committees(n, size)).first;
            Rational acc(0);
            for (const auto& committee : it->second) {
                const OutcomeSet spe = confirmation_spe(v, committee, R, variant);
                const Lottery closed = confirmation_outcome(v, committee, R, variant);
                if (!spe.singleton() || !(spe.only() == closed))
                    throw InvariantViolation(
                        "backward induction disagrees with the closed-form confirmation "
                        "outcome at v=" + v.str());
                acc += closed.pA;
            }
            expected[idx] = Lottery(acc / Rational(static_cast<std::int64_t>(it->second.size())));
        }

        for (int i = n - 1; i >= 0; --i) {
            if (++digits[static_cast<std::size_t>(i)] <
                static_cast<int>(actions.size()))
                break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
    }
    return expected;
}

}  // namespace

std::string BFDeviationWitness::str() const {
    return "agent " + std::to_string(agent + 1) + ": " + from.str() + " -> " + to.str() +
           ", " + before.str() + " -> " + after.str();
}

std::string RCDeviationWitness::str() const {
    return std::string("agent ") + std::to_string(agent + 1) + ": " + vote_char(from) +
           " -> " + vote_char(to) + ", " + before.str() + " -> " + after.str();
}

std::optional<BFDeviationWitness> is_nash_bf(const BFProfile& profile,
                                             const PreferenceProfile& R) {
    profile.validate();
    if (profile.n() != R.n())
        throw ValidationError("profile and preferences disagree on n");
    const Lottery base = bf_outcome(profile);
    for (AgentId i = 0; i < profile.n(); ++i) {
        const MessageSpace space(profile.n(), i);
        const Alt want = R.pref(i);
        for (int m = 0; m < space.size(); ++m) {
            const BFMessage& candidate = space.at(m);
            if (candidate == profile.message(i)) continue;
            const Lottery dev = bf_outcome(profile.with_message(i, candidate));
            if (dev.prob(want) > base.prob(want))
                return BFDeviationWitness{i, profile.message(i), candidate, base, dev};
        }
    }
    return std::nullopt;
}

std::vector<std::pair<BFProfile, Lottery>> enumerate_nash_bf(const PreferenceProfile& R,
                                                             const Budget& budget, int jobs) {
    const BfEnum e(R.n());
    if (e.total > budget.bf_profiles)
        throw CapacityError("bloc-formation profile space " + std::to_string(e.total) +
                            " exceeds budget of " + std::to_string(budget.bf_profiles) +
                            "; raise --budget or use sampled checks");
    const auto table = build_outcome_table(e, jobs);
    std::vector<std::pair<BFProfile, Lottery>> out;
    scan_nash_bf(e, table, R,
                 [&](std::uint64_t, const std::array<int, kMaxAgents>& digits,
                     const Lottery& outcome) { out.emplace_back(e.profile_at(digits), outcome); });
    return out;
}

std::vector<std::pair<VotingProfile, Lottery>> rc_sustainable_profiles(
    const PreferenceProfile& R, const RCVariant& variant, const Budget& budget) {
    const int n = R.n();
    const auto actions = rc_actions(variant);
    std::uint64_t total = 0;
    const auto expected = rc_expected_table(R, variant, budget, total);

    std::vector<std::uint64_t> stride(static_cast<std::size_t>(n), 1);
    for (int i = n - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] =
            stride[static_cast<std::size_t>(i + 1)] * actions.size();

    std::vector<std::pair<VotingProfile, Lottery>> sustained;
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const int d = digits[static_cast<std::size_t>(i)];
            const Alt want = R.pref(i);
            const std::uint64_t row_base =
                idx - static_cast<std::uint64_t>(d) * stride[static_cast<std::size_t>(i)];
            for (std::size_t m = 0; m < actions.size(); ++m) {
                if (static_cast<int>(m) == d) continue;
                const Lottery& dev = expected[row_base + m * stride[static_cast<std::size_t>(i)]];
                if (dev.prob(want) > expected[idx].prob(want)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            VotingProfile v;
            v.votes.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                v.votes[static_cast<std::size_t>(i)] =
                    actions[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
            sustained.emplace_back(std::move(v), expected[idx]);
        }
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[static_cast<std::size_t>(i)] < static_cast<int>(actions.size())) break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
    }
    return sustained;
}

std::optional<RCDeviationWitness> rc_voting_deviation(const VotingProfile& v,
                                                      const PreferenceProfile& R,
                                                      const RCVariant& variant) {
    const Lottery base = expected_outcome(v, R, variant);
    for (AgentId i = 0; i < v.n(); ++i) {
        const Alt want = R.pref(i);
        for (VoteAction action : rc_actions(variant)) {
            if (action == v.at(i)) continue;
            const Lottery dev = expected_outcome(v.with_vote(i, action), R, variant);
            if (dev.prob(want) > base.prob(want))
                return RCDeviationWitness{i, v.at(i), action, base, dev};
        }
    }
    return std::nullopt;
}

std::set<Lottery> spe_oracle_n3(const PreferenceProfile& R, const RCVariant& variant) {
    if (variant.kind != RCVariant::Kind::Baseline)
        throw DomainError("the full SPE oracle covers the baseline variant only");
    if (R.n() != 3)
        throw CapacityError("full strategy-space SPE oracle is exhaustive only at n=3");

    // Eight voting profiles, six ordered draws of two distinct agents.
    std::vector<VotingProfile> vs;
    for (int bits = 0; bits < 8; ++bits) {
        VotingProfile v;
        for (int i = 0; i < 3; ++i)
            v.votes.push_back(((bits >> (2 - i)) & 1) ? VoteAction::VoteB : VoteAction::VoteA);
        vs.push_back(std::move(v));
    }
    std::vector<ConfirmationDraw> draws;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) draws.push_back({i, j});

    // Subgame SPE outcome lists via the one-shot-deviation property over all
    // reply assignments (two binary decision nodes per subgame).
    std::vector<std::vector<std::vector<Lottery>>> outcomes(
        vs.size(), std::vector<std::vector<Lottery>>(draws.size()));
    for (std::size_t vi = 0; vi < vs.size(); ++vi) {
        const Alt winner = *vote_winner(vs[vi], variant);
        const Lottery approve = Lottery::degenerate(winner);
        const Lottery beta = beta_lottery(vs[vi], variant);
        for (std::size_t di = 0; di < draws.size(); ++di) {
            const Alt pref1 = R.pref(draws[di][0]);
            const Alt pref2 = R.pref(draws[di][1]);
            std::set<Lottery> found;
            for (ConfAction r1 : {ConfAction::Y, ConfAction::N})
                for (ConfAction r2 : {ConfAction::Y, ConfAction::N}) {
                    const Lottery out2 = r2 == ConfAction::Y ? approve : beta;
                    const Lottery out2_alt = r2 == ConfAction::Y ? beta : approve;
                    if (sd_strictly_better(pref2, out2_alt, out2)) continue;
                    const Lottery out1 = r1 == ConfAction::Y ? approve : out2;
                    const Lottery out1_alt = r1 == ConfAction::Y ? out2 : approve;
                    if (sd_strictly_better(pref1, out1_alt, out1)) continue;
                    found.insert(out1);
                }
            outcomes[vi][di].assign(found.begin(), found.end());
        }
    }

    // Every selection of one subgame equilibrium outcome per (v, draw). The
    // closed-form uniqueness result makes this a single selection in
    // practice; the guard keeps the oracle honest if it ever is not.
    std::uint64_t selections = 1;
    for (const auto& per_v : outcomes)
        for (const auto& cell : per_v) {
            selections *= cell.size();
            if (selections > 4096)
                throw CapacityError("subgame equilibrium selections exceed oracle capacity");
        }

    std::set<Lottery> result;
    std::vector<std::size_t> choice(vs.size() * draws.size(), 0);
    for (std::uint64_t sel = 0; sel < selections; ++sel) {
        // Expected outcome of each voting profile under this selection.
        std::vector<Lottery> ev(vs.size());
        for (std::size_t vi = 0; vi < vs.size(); ++vi) {
            Rational acc(0);
            for (std::size_t di = 0; di < draws.size(); ++di)
                acc += outcomes[vi][di][choice[vi * draws.size() + di]].pA;
            ev[vi] = Lottery(acc / Rational(static_cast<std::int64_t>(draws.size())));
        }
        for (std::size_t vi = 0; vi < vs.size(); ++vi) {
            bool nash = true;
            for (int i = 0; i < 3 && nash; ++i) {
                const std::size_t flipped = vi ^ (1u << (2 - i));
                if (ev[flipped].prob(R.pref(i)) > ev[vi].prob(R.pref(i))) nash = false;
            }
            if (nash) result.insert(ev[vi]);
        }
        for (std::size_t slot = 0; slot < choice.size(); ++slot) {
            const std::size_t limit =
                outcomes[slot / draws.size()][slot % draws.size()].size();
            if (++choice[slot] < limit) break;
            choice[slot] = 0;
        }
    }
    return result;
}

namespace {

ReportRow bf_report_row(const BfEnum& e, const std::vector<Lottery>& table,
                        const PreferenceProfile& R) {
    ReportRow row;
    row.prefs = R.str();
    std::set<Lottery> seen;
    std::vector<Lottery> targets;
    if (R.odd()) {
        targets.push_back(Lottery::degenerate(maj(R)));
    } else {
        const auto m = maj_even(R);
        if (m.size() == 1)
            targets.push_back(Lottery::degenerate(*m.begin()));
        else
            targets.push_back(Lottery::half());
    }
    bool outcomes_ok = true;
    scan_nash_bf(e, table, R,
                 [&](std::uint64_t, const std::array<int, kMaxAgents>& digits,
                     const Lottery& outcome) {
                     ++row.eq_count;
                     seen.insert(outcome);
                     if (!(outcome == targets.front()) && row.note.empty()) {
                         outcomes_ok = false;
                         row.note = "equilibrium with off-target outcome: " +
                                    bf_profile_witness(e.profile_at(digits), outcome);
                     }
                 });
    row.outcomes.assign(seen.begin(), seen.end());
    row.pass = outcomes_ok && row.eq_count > 0;
    if (row.eq_count == 0) row.note = "no equilibrium exists";
    return row;
}

ReportRow rc_report_row(const PreferenceProfile& R, const RCVariant& variant,
                        const Budget& budget) {
    ReportRow row;
    row.prefs = R.str();
    const auto sustained = rc_sustainable_profiles(R, variant, budget);
    std::set<Lottery> seen;
    for (const auto& [v, out] : sustained) seen.insert(out);
    row.eq_count = static_cast<std::int64_t>(sustained.size());
    row.outcomes.assign(seen.begin(), seen.end());

    const bool even_tie = variant.kind == RCVariant::Kind::EvenN &&
                          R.count(Alt::A) == R.count(Alt::B);
    if (even_tie) {
        // Existence checks only: the truthful tie profile with the
        // even-weights outcome, and some unanimous profile with a degenerate
        // outcome. Whatever else shows up is recorded, not judged.
        VotingProfile truthful;
        for (AgentId i = 0; i < R.n(); ++i) truthful.votes.push_back(vote_for(R.pref(i)));
        bool truthful_ok = false;
        bool unanimous_ok = false;
        for (const auto& [v, out] : sustained) {
            if (v == truthful && out == Lottery::half()) truthful_ok = true;
            const bool unanimous =
                v.count(Alt::A) == v.n() || v.count(Alt::B) == v.n();
            if (unanimous && out.is_degenerate()) unanimous_ok = true;
        }
        row.pass = truthful_ok && unanimous_ok;
        if (!truthful_ok) row.note = "truthful tie profile not sustained at even weights";
        else if (!unanimous_ok) row.note = "no unanimous profile sustained at a degenerate outcome";
        return row;
    }

    Lottery target;
    switch (variant.kind) {
        case RCVariant::Kind::Baseline:
        case RCVariant::Kind::Abstention:
            target = Lottery::degenerate(maj(R));
            break;
        case RCVariant::Kind::Supermajority:
            target = Lottery::degenerate(maj_k(R, variant.k));
            break;
        case RCVariant::Kind::EvenN:
            target = Lottery::degenerate(*maj_even(R).begin());
            break;
    }
    bool outcomes_ok = true;
    for (const auto& [v, out] : sustained) {
        if (!(out == target)) {
            outcomes_ok = false;
            if (row.note.empty())
                row.note = "sustained profile with off-target outcome: v=" + v.str() +
                           " outcome=" + out.str();
        }
    }
    row.pass = outcomes_ok && row.eq_count > 0;
    if (row.eq_count == 0) row.note = "no sustainable voting profile";
    return row;
}

}  // namespace

ImplementationReport verify_implementation(const MechanismId& mechanism, int n,
                                           const Budget& budget, int jobs) {
    ImplementationReport report;
    report.mechanism = mechanism.str();
    report.n = n;
    const std::uint32_t num_r = 1u << n;
    report.rows.resize(num_r);
    jobs = std::clamp(jobs, 1, 64);

    if (mechanism.kind == MechanismId::Kind::BF) {
        const BfEnum e(n);
        if (e.total > budget.bf_profiles)
            throw CapacityError("bloc-formation profile space " + std::to_string(e.total) +
                                " exceeds budget of " + std::to_string(budget.bf_profiles) +
                                "; raise --budget or use sampled checks");
        const auto table = build_outcome_table(e, jobs);
        auto worker = [&](int tid) {
            for (std::uint32_t r = static_cast<std::uint32_t>(tid); r < num_r;
                 r += static_cast<std::uint32_t>(jobs))
                report.rows[r] = bf_report_row(e, table, prefs_from_index(r, n));
        };
        if (jobs == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
    } else {
        auto worker = [&](int tid) {
            for (std::uint32_t r = static_cast<std::uint32_t>(tid); r < num_r;
                 r += static_cast<std::uint32_t>(jobs))
                report.rows[r] = rc_report_row(prefs_from_index(r, n), mechanism.variant, budget);
        };
        if (jobs == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
    }

    report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                              [](const ReportRow& r) { return r.pass; });
    return report;
}

std::string ImplementationReport::machine_text() const {
    std::string s = "format: 1\n";
    s += "mechanism: " + mechanism + "\n";
    s += "n: " + std::to_string(n) + "\n";
    for (const ReportRow& row : rows) {
        s += "R=" + row.prefs + " eq_count=" + std::to_string(row.eq_count) +
             " outcomes=" + join_outcomes(row.outcomes) +
             " pass=" + (row.pass ? "true" : "false") + "\n";
        if (!row.pass && !row.note.empty()) s += "witness: " + row.note + "\n";
    }
    s += std::string("aggregate: pass=") + (pass ? "true" : "false") + "\n";
    return s;
}

std::string ImplementationReport::table_text() const {
    std::string s = "mechanism " + mechanism + ", n=" + std::to_string(n) + ": " +
                    (pass ? "PASS" : "FAIL") + "\n";
    s += "  preferences | equilibria | outcomes\n";
    for (const ReportRow& row : rows) {
        std::string outs;
        for (std::size_t i = 0; i < row.outcomes.size(); ++i) {
            if (i) outs += ", ";
            outs += row.outcomes[i].pretty();
        }
        s += "  " + row.prefs + "  | " + std::to_string(row.eq_count) + " | {" + outs + "}" +
             (row.pass ? "" : "  <- FAIL " + row.note) + "\n";
    }
    return s;
}

BlocStructureCheck check_bloc_structure(const BFProfile& profile) {
    BlocStructureCheck check;
    const auto blocs = find_all_blocs(profile);
    check.has_bloc = !blocs.empty();
    if (!check.has_bloc) return check;

    std::optional<Bloc> effective;
    try {
        effective = find_effective_bloc(profile);
    } catch (const InvariantViolation&) {
        return check;  // counted as a violation by the caller
    }
    if (!effective) return check;
    check.effective_found = true;

    std::uint32_t intersection = blocs.front().mask;
    for (const Bloc& b : blocs) intersection &= b.mask;
    check.intersection_identity = effective->mask == intersection;

    const NominationGraph graph = build_graph(profile);
    check.strongly_connected = true;
    check.closed = true;
    for (AgentId i : effective->members) {
        if (graph.row(i) & ~effective->mask) check.closed = false;
        // Reachability within the bloc must cover the whole bloc.
        std::uint32_t seen = 1u << i;
        std::uint32_t frontier = seen;
        while (frontier != 0) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f != 0) {
                const int j = std::countr_zero(f);
                f &= f - 1;
                next |= graph.row(j) & effective->mask;
            }
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen != effective->mask) check.strongly_connected = false;
    }

    check.member_flips_break_all = true;
    for (AgentId i : effective->members) {
        BFMessage flipped = profile.message(i);
        flipped.vote = other(flipped.vote);
        if (has_bloc(profile.with_message(i, flipped))) {
            check.member_flips_break_all = false;
            break;
        }
    }
    return check;
}

SampledBfReport sampled_bf_check(int n, int samples, std::uint64_t seed) {
    SampledBfReport report;
    report.n = n;
    report.samples = samples;
    report.seed = seed;
    SplitMix64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const BFProfile profile = random_bf_profile_with_bloc(n, rng);
        if (!check_bloc_structure(profile).all_ok()) ++report.violations;
    }
    return report;
}

std::string SampledBfReport::text() const {
    return "sampled bf check: n=" + std::to_string(n) + " samples=" + std::to_string(samples) +
           " seed=" + std::to_string(seed) + " violations=" + std::to_string(violations) +
           " pass=" + (pass() ? "true" : "false") + "\n";
}

}  // namespace majmech

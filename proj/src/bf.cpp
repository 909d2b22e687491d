#include "majmech/bf.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "majmech/errors.hpp"

namespace majmech {

namespace {

std::string agent_set_str(std::uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i) {
        if ((mask >> i) & 1u) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

std::vector<AgentId> mask_to_members(std::uint32_t mask) {
    std::vector<AgentId> out;
    for (int i = 0; i < 32; ++i)
        if ((mask >> i) & 1u) out.push_back(i);
    return out;
}

std::uint32_t full_mask(int n) { return (n == 32) ? ~0u : ((1u << n) - 1u); }

// Row bitmasks of the nomination graph, unvalidated.
std::vector<std::uint32_t> nomination_rows(const BFProfile& profile) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(profile.n()), 0u);
    for (AgentId i = 0; i < profile.n(); ++i)
        for (AgentId j : profile.message(i).nominations)
            rows[static_cast<std::size_t>(i)] |= (1u << j);
    return rows;
}

// Reachability closure of `seed` (inclusive). If the closure ever leaves
// `allowed`, returns nullopt early.
std::optional<std::uint32_t> closure_within(const std::vector<std::uint32_t>& rows,
                                            int seed, std::uint32_t allowed) {
    std::uint32_t members = 1u << seed;
    if (members & ~allowed) return std::nullopt;
    std::uint32_t frontier = members;
    while (frontier != 0) {
        std::uint32_t next = 0;
        std::uint32_t f = frontier;
        while (f != 0) {
            const int j = std::countr_zero(f);
            f &= f - 1;
            next |= rows[static_cast<std::size_t>(j)];
        }
        if (next & ~allowed) return std::nullopt;
        frontier = next & ~members;
        members |= next;
    }
    return members;
}

// Distinct vote-uniform nomination-closed sets in favor of x, as masks.
// Every such set is a union of per-agent closures contained in voters_x.
std::vector<std::uint32_t> closed_sets_for(const std::vector<std::uint32_t>& rows,
                                           std::uint32_t voters_x) {
    std::vector<std::uint32_t> seeds;
    std::uint32_t v = voters_x;
    while (v != 0) {
        const int i = std::countr_zero(v);
        v &= v - 1;
        if (auto cl = closure_within(rows, i, voters_x))
            if (std::find(seeds.begin(), seeds.end(), *cl) == seeds.end())
                seeds.push_back(*cl);
    }
    std::set<std::uint32_t> unions;
    const std::size_t m = seeds.size();
    for (std::uint64_t pick = 1; pick < (1ull << m); ++pick) {
        std::uint32_t u = 0;
        for (std::size_t s = 0; s < m; ++s)
            if ((pick >> s) & 1ull) u |= seeds[s];
        unions.insert(u);
    }
    return {unions.begin(), unions.end()};
}

Bloc make_bloc(std::uint32_t mask, Alt supports) {
    return Bloc{mask_to_members(mask), supports, mask};
}

std::uint32_t voters_of(const BFProfile& profile, Alt x) {
    std::uint32_t mask = 0;
    for (AgentId i = 0; i < profile.n(); ++i)
        if (profile.vote(i) == x) mask |= (1u << i);
    return mask;
}

// Tarjan strongly connected components of the subgraph induced on `sub`.
struct SccResult {
    std::vector<std::uint32_t> components;
};

SccResult tarjan_scc(const std::vector<std::uint32_t>& rows, std::uint32_t sub, int n) {
    SccResult result;
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int counter = 0;

    // Iterative DFS; frames carry the not-yet-visited out-neighbours.
    struct Frame {
        int node;
        std::uint32_t pending;
    };
    for (int root = 0; root < n; ++root) {
        if (!((sub >> root) & 1u) || index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames;
        index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        frames.push_back({root, rows[static_cast<std::size_t>(root)] & sub});
        while (!frames.empty()) {
            Frame& fr = frames.back();
            if (fr.pending != 0) {
                const int w = std::countr_zero(fr.pending);
                fr.pending &= fr.pending - 1;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = lowlink[static_cast<std::size_t>(w)] =
                        counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    frames.push_back({w, rows[static_cast<std::size_t>(w)] & sub});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    lowlink[static_cast<std::size_t>(fr.node)] =
                        std::min(lowlink[static_cast<std::size_t>(fr.node)],
                                 index[static_cast<std::size_t>(w)]);
                }
            } else {
                const int v = fr.node;
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().node;
                    lowlink[static_cast<std::size_t>(parent)] =
                        std::min(lowlink[static_cast<std::size_t>(parent)],
                                 lowlink[static_cast<std::size_t>(v)]);
                }
                if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    std::uint32_t comp = 0;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        comp |= (1u << w);
                    } while (w != v);
                    result.components.push_back(comp);
                }
            }
        }
    }
    return result;
}

}  // namespace

std::string BFMessage::str() const {
    std::string s = "(";
    s += to_char(vote);
    s += ",{";
    for (std::size_t k = 0; k < nominations.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(nominations[k] + 1);
    }
    return s + "})";
}

BFProfile::BFProfile(int n, std::vector<BFMessage> messages)
    : n_(n), messages_(std::move(messages)) {
    for (auto& m : messages_) std::sort(m.nominations.begin(), m.nominations.end());
    validate();
}

BFProfile BFProfile::with_message(AgentId i, BFMessage m) const {
    std::vector<BFMessage> msgs = messages_;
    msgs[static_cast<std::size_t>(i)] = std::move(m);
    return BFProfile(n_, std::move(msgs));
}

void BFProfile::validate() const {
    if (n_ < 3 && n_ % 2 == 1)
        throw ValidationError("bloc-formation profile needs n >= 3 for odd n");
    if (n_ < 2 || n_ > 31)
        throw ValidationError("bloc-formation profile needs 2 <= n <= 31");
    if (static_cast<int>(messages_.size()) != n_)
        throw ValidationError("profile has " + std::to_string(messages_.size()) +
                              " messages, expected n=" + std::to_string(n_));
    for (AgentId i = 0; i < n_; ++i) {
        const auto& m = messages_[static_cast<std::size_t>(i)];
        const std::string who = "agent " + std::to_string(i + 1);
        if (static_cast<int>(m.nominations.size()) != p())
            throw ValidationError(who + " nominates " + std::to_string(m.nominations.size()) +
                                  " agents, expected p=" + std::to_string(p()));
        for (std::size_t k = 0; k < m.nominations.size(); ++k) {
            const AgentId j = m.nominations[k];
            if (j < 0 || j >= n_)
                throw ValidationError(who + " nominates out-of-range agent " +
                                      std::to_string(j + 1));
            if (j == i) throw ValidationError(who + " nominates herself");
            if (k > 0 && m.nominations[k - 1] == j)
                throw ValidationError(who + " nominates agent " + std::to_string(j + 1) +
                                      " twice");
        }
    }
}

NominationGraph::NominationGraph(std::vector<std::uint32_t> rows) : rows_(std::move(rows)) {}

int NominationGraph::row_sum(AgentId i) const {
    return std::popcount(rows_[static_cast<std::size_t>(i)]);
}

int NominationGraph::col_sum(AgentId j) const {
    int c = 0;
    for (std::uint32_t row : rows_) c += static_cast<int>((row >> j) & 1u);
    return c;
}

NominationGraph build_graph(const BFProfile& profile) {
    profile.validate();
    return NominationGraph(nomination_rows(profile));
}

std::string Bloc::str() const { return agent_set_str(mask); }

bool has_bloc(const BFProfile& profile) {
    const auto rows = nomination_rows(profile);
    for (Alt x : {Alt::A, Alt::B}) {
        const std::uint32_t voters = voters_of(profile, x);
        std::uint32_t v = voters;
        while (v != 0) {
            const int i = std::countr_zero(v);
            v &= v - 1;
            if (closure_within(rows, i, voters)) return true;
        }
    }
    return false;
}

std::vector<Bloc> find_all_blocs(const BFProfile& profile) {
    profile.validate();
    const auto rows = nomination_rows(profile);
    std::vector<Bloc> blocs;
    Alt support_seen = Alt::A;
    bool any = false;
    for (Alt x : {Alt::A, Alt::B}) {
        for (std::uint32_t mask : closed_sets_for(rows, voters_of(profile, x))) {
            if (any && support_seen != x)
                throw InvariantViolation("blocs for both options in one profile");
            any = true;
            support_seen = x;
            blocs.push_back(make_bloc(mask, x));
        }
    }
    std::sort(blocs.begin(), blocs.end(), [](const Bloc& l, const Bloc& r) {
        if (l.members.size() != r.members.size()) return l.members.size() < r.members.size();
        return l.members < r.members;
    });
    // Minimum size p+1 is forced by closedness; assert rather than trust.
    for (const Bloc& b : blocs)
        if (static_cast<int>(b.members.size()) < profile.p() + 1)
            throw InvariantViolation("bloc " + b.str() + " smaller than p+1");
    return blocs;
}

std::optional<Bloc> find_effective_bloc(const BFProfile& profile) {
    const std::vector<Bloc> blocs = find_all_blocs(profile);
    if (blocs.empty()) return std::nullopt;

    const auto rows = nomination_rows(profile);
    std::uint32_t everything = 0;
    std::uint32_t intersection = full_mask(profile.n());
    for (const Bloc& b : blocs) {
        everything |= b.mask;
        intersection &= b.mask;
    }

    // Sink SCC of the union of all blocs: the component with no outgoing
    // nomination inside the union (the union is closed, so none at all).
    const SccResult scc = tarjan_scc(rows, everything, profile.n());
    std::optional<std::uint32_t> sink;
    for (std::uint32_t comp : scc.components) {
        bool leaves = false;
        std::uint32_t c = comp;
        while (c != 0 && !leaves) {
            const int i = std::countr_zero(c);
            c &= c - 1;
            if (rows[static_cast<std::size_t>(i)] & ~comp) leaves = true;
        }
        if (!leaves) {
            if (sink)
                throw InvariantViolation("two sink components among blocs of one profile");
            sink = comp;
        }
    }
    if (!sink) throw InvariantViolation("bloc union has no sink component");

    // Cross-check the two characterizations of the effective bloc.
    if (*sink != intersection)
        throw InvariantViolation("sink component " + agent_set_str(*sink) +
                                 " differs from bloc intersection " +
                                 agent_set_str(intersection));
    return make_bloc(*sink, blocs.front().supports);
}

Rational eta_agent(const BFProfile& profile, AgentId i) {
    profile.validate();
    int received = 0;
    for (AgentId j = 0; j < profile.n(); ++j) {
        if (j == i) continue;
        const auto& noms = profile.message(j).nominations;
        if (std::find(noms.begin(), noms.end(), i) != noms.end()) ++received;
    }
    return Rational(received, static_cast<std::int64_t>(profile.n()) * profile.p());
}

Lottery eta_lottery(const BFProfile& profile) {
    profile.validate();
    const auto rows = nomination_rows(profile);
    std::int64_t received_by_a_voters = 0;
    for (AgentId i = 0; i < profile.n(); ++i) {
        if (profile.vote(i) != Alt::A) continue;
        for (AgentId j = 0; j < profile.n(); ++j)
            received_by_a_voters += static_cast<int>((rows[static_cast<std::size_t>(j)] >> i) & 1u);
    }
    return Lottery(Rational(received_by_a_voters,
                            static_cast<std::int64_t>(profile.n()) * profile.p()));
}

Lottery bf_outcome(const BFProfile& profile) {
    const auto rows = nomination_rows(profile);
    for (Alt x : {Alt::A, Alt::B}) {
        const std::uint32_t voters = voters_of(profile, x);
        std::uint32_t v = voters;
        while (v != 0) {
            const int i = std::countr_zero(v);
            v &= v - 1;
            if (closure_within(rows, i, voters)) return Lottery::degenerate(x);
        }
    }
    return eta_lottery(profile);
}

std::optional<BFMessage> bloc_breaking_deviation(const BFProfile& profile, AgentId i) {
    if (!has_bloc(profile))
        throw PreconditionError("bloc_breaking_deviation requires a profile with a bloc");
    const Bloc effective = *find_effective_bloc(profile);

    if ((effective.mask >> i) & 1u) {
        // Vote flip with unchanged nominations empties the bloc set.
        BFMessage flipped = profile.message(i);
        flipped.vote = other(flipped.vote);
        if (has_bloc(profile.with_message(i, flipped)))
            throw InvariantViolation("vote flip by effective-bloc member " +
                                     std::to_string(i + 1) + " left a bloc standing");
        return flipped;
    }

    // Outside the effective bloc nothing can work (the effective bloc's
    // messages are untouched), but the contract is exhaustive search, not
    // graph reasoning.
    const MessageSpace space(profile.n(), i);
    for (int idx = 0; idx < space.size(); ++idx) {
        if (!has_bloc(profile.with_message(i, space.at(idx)))) return space.at(idx);
    }
    return std::nullopt;
}

MessageSpace::MessageSpace(int n, AgentId agent) {
    std::vector<AgentId> candidates;
    for (AgentId j = 0; j < n; ++j)
        if (j != agent) candidates.push_back(j);
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;

    std::vector<std::vector<AgentId>> nom_sets;
    std::vector<int> pick(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) pick[static_cast<std::size_t>(k)] = k;
    const int m = static_cast<int>(candidates.size());
    for (;;) {
        std::vector<AgentId> noms(static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k)
            noms[static_cast<std::size_t>(k)] = candidates[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
        nom_sets.push_back(std::move(noms));
        int k = p - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - p + k) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < p; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }

    for (Alt vote : {Alt::A, Alt::B})
        for (const auto& noms : nom_sets) messages_.push_back(BFMessage{vote, noms});
}

int MessageSpace::index_of(const BFMessage& m) const {
    for (int i = 0; i < size(); ++i)
        if (messages_[static_cast<std::size_t>(i)] == m) return i;
    throw ValidationError("message " + m.str() + " not in message space");
}

BFProfile random_bf_profile(int n, SplitMix64& rng) {
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    std::vector<BFMessage> msgs;
    msgs.reserve(static_cast<std::size_t>(n));
    for (AgentId i = 0; i < n; ++i) {
        std::vector<AgentId> others;
        for (AgentId j = 0; j < n; ++j)
            if (j != i) others.push_back(j);
        for (int t = 0; t < p; ++t) {
            const int j = t + static_cast<int>(rng.below(others.size() - static_cast<std::size_t>(t)));
            std::swap(others[static_cast<std::size_t>(t)], others[static_cast<std::size_t>(j)]);
        }
        others.resize(static_cast<std::size_t>(p));
        msgs.push_back(BFMessage{rng.below(2) ? Alt::B : Alt::A, std::move(others)});
    }
    return BFProfile(n, std::move(msgs));
}

BFProfile random_bf_profile_with_bloc(int n, SplitMix64& rng) {
    const int p = n % 2 == 1 ? (n - 1) / 2 : n / 2;
    const int size = p + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - p)));
    const std::vector<int> order = draw_ordered(n, n, rng);
    std::vector<bool> in_bloc(static_cast<std::size_t>(n), false);
    std::vector<AgentId> bloc_members;
    for (int t = 0; t < size; ++t) {
        in_bloc[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = true;
        bloc_members.push_back(order[static_cast<std::size_t>(t)]);
    }
    const Alt supported = rng.below(2) ? Alt::B : Alt::A;

    std::vector<BFMessage> msgs(static_cast<std::size_t>(n));
    for (AgentId i = 0; i < n; ++i) {
        std::vector<AgentId> pool;
        if (in_bloc[static_cast<std::size_t>(i)]) {
            for (AgentId j : bloc_members)
                if (j != i) pool.push_back(j);
        } else {
            for (AgentId j = 0; j < n; ++j)
                if (j != i) pool.push_back(j);
        }
        for (int t = 0; t < p; ++t) {
            const int j = t + static_cast<int>(rng.below(pool.size() - static_cast<std::size_t>(t)));
            std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(p));
        const Alt vote = in_bloc[static_cast<std::size_t>(i)]
                             ? supported
                             : (rng.below(2) ? Alt::B : Alt::A);
        msgs[static_cast<std::size_t>(i)] = BFMessage{vote, std::move(pool)};
    }
    BFProfile profile(n, std::move(msgs));

    // Occasional random rewrites widen coverage beyond freshly built blocs.
    if (rng.below(2) == 0) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            const AgentId victim = static_cast<AgentId>(rng.below(static_cast<std::uint64_t>(n)));
            SplitMix64 sub = rng.fork();
            BFProfile fresh = random_bf_profile(n, sub);
            BFProfile candidate = profile.with_message(victim, fresh.message(victim));
            if (has_bloc(candidate)) profile = candidate;
        }
    }
    return profile;
}

}  // namespace majmech

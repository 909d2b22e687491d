#include "majmech/io.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "majmech/errors.hpp"

namespace majmech {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> non_empty_lines(const std::string& text, std::vector<int>* numbers) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(raw);
        if (line.empty() || line.front() == '#') continue;
        lines.push_back(line);
        if (numbers) numbers->push_back(lineno);
    }
    return lines;
}

long long parse_int(const std::string& value, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError(what + ": expected an integer, got '" + value + "'");
    }
}

}  // namespace

BFProfile parse_bf_profile(const std::string& text) {
    std::vector<int> numbers;
    const auto lines = non_empty_lines(text, &numbers);
    if (lines.empty()) throw ValidationError("profile: empty input");
    const std::string& head = lines.front();
    if (head.rfind("votes:", 0) != 0)
        throw ValidationError("profile line " + std::to_string(numbers.front()) +
                              ": expected 'votes: ...'");
    const std::string votes = strip(head.substr(6));
    const int n = static_cast<int>(votes.size());
    if (static_cast<int>(lines.size()) != n + 1)
        throw ValidationError("profile: got " + std::to_string(lines.size() - 1) +
                              " nomination lines for n=" + std::to_string(n));

    std::vector<BFMessage> messages(static_cast<std::size_t>(n));
    std::vector<bool> filled(static_cast<std::size_t>(n), false);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string where = "profile line " + std::to_string(numbers[li]);
        const auto colon = lines[li].find(':');
        if (colon == std::string::npos)
            throw ValidationError(where + ": expected 'i: j,k'");
        const long long agent = parse_int(strip(lines[li].substr(0, colon)), where);
        if (agent < 1 || agent > n)
            throw ValidationError(where + ": agent " + std::to_string(agent) +
                                  " outside [1," + std::to_string(n) + "]");
        if (filled[static_cast<std::size_t>(agent - 1)])
            throw ValidationError(where + ": duplicate nominations for agent " +
                                  std::to_string(agent));
        filled[static_cast<std::size_t>(agent - 1)] = true;

        BFMessage msg;
        msg.vote = alt_from_char(votes[static_cast<std::size_t>(agent - 1)]);
        std::istringstream rest(lines[li].substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const std::string tok = strip(item);
            if (tok.empty()) throw ValidationError(where + ": empty nomination entry");
            const long long target = parse_int(tok, where);
            if (target < 1 || target > n)
                throw ValidationError(where + ": nominee " + std::to_string(target) +
                                      " outside [1," + std::to_string(n) + "]");
            msg.nominations.push_back(static_cast<AgentId>(target - 1));
        }
        messages[static_cast<std::size_t>(agent - 1)] = std::move(msg);
    }
    for (int i = 0; i < n; ++i)
        if (!filled[static_cast<std::size_t>(i)])
            throw ValidationError("profile: no nomination line for agent " +
                                  std::to_string(i + 1));
    return BFProfile(n, std::move(messages));  // structural invariants checked here
}

std::string format_bf_profile(const BFProfile& profile) {
    std::string out = "votes: ";
    for (AgentId i = 0; i < profile.n(); ++i) out.push_back(to_char(profile.vote(i)));
    out.push_back('\n');
    for (AgentId i = 0; i < profile.n(); ++i) {
        out += std::to_string(i + 1) + ":";
        const auto& noms = profile.message(i).nominations;
        for (std::size_t k = 0; k < noms.size(); ++k)
            out += (k ? "," : " ") + std::to_string(noms[k] + 1);
        out.push_back('\n');
    }
    return out;
}

VotingProfile parse_voting_profile(const std::string& text) {
    VotingProfile v;
    for (char c : strip(text)) {
        if (c == 'a' || c == 'A') v.votes.push_back(VoteAction::VoteA);
        else if (c == 'b' || c == 'B') v.votes.push_back(VoteAction::VoteB);
        else if (c == '-') v.votes.push_back(VoteAction::Abstain);
        else
            throw ValidationError(std::string("votes: unknown action '") + c +
                                  "' (expected a, b or -)");
    }
    if (v.votes.empty()) throw ValidationError("votes: empty");
    return v;
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::vector<int> numbers;
    const auto lines = non_empty_lines(text, &numbers);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string where = "scenario line " + std::to_string(numbers[li]);
        const auto colon = lines[li].find(':');
        if (colon == std::string::npos)
            throw ValidationError(where + ": expected 'key: value'");
        const std::string key = strip(lines[li].substr(0, colon));
        const std::string value = strip(lines[li].substr(colon + 1));
        if (value.empty()) throw ValidationError(where + ": empty value for '" + key + "'");

        if (key == "format") {
            if (value != "1") throw ValidationError(where + ": unsupported format " + value);
        } else if (key == "n") {
            s.n = static_cast<int>(parse_int(value, where));
        } else if (key == "prefs") {
            s.prefs = value;
        } else if (key == "mechanism") {
            if (value != "bf" && value != "rc")
                throw ValidationError(where + ": mechanism must be bf or rc");
            s.mechanism = value;
        } else if (key == "variant") {
            s.variant = value;
        } else if (key == "k") {
            s.k = static_cast<int>(parse_int(value, where));
        } else if (key == "q") {
            try {
                s.q = Rational::parse(value);
            } catch (const std::invalid_argument&) {
                throw ValidationError(where + ": cannot parse q '" + value + "'");
            }
        } else if (key == "mode") {
            if (value != "full" && value != "shares")
                throw ValidationError(where + ": mode must be full or shares");
            s.mode = value;
        } else if (key == "seed") {
            s.seed = static_cast<std::uint64_t>(parse_int(value, where));
        } else if (key == "budget") {
            s.budget = static_cast<std::uint64_t>(parse_int(value, where));
        } else if (key == "votes") {
            s.votes = value;
        } else if (key == "confirm") {
            if (value != "truthful" && value != "always-y" && value != "always-n")
                throw ValidationError(where + ": confirm must be truthful, always-y or always-n");
            s.confirm = value;
        } else {
            throw ValidationError(where + ": unknown key '" + key + "'");
        }
    }
    return s;
}

RCVariant make_rc_variant(const std::string& name, int k) {
    if (name == "baseline") return RCVariant::baseline();
    if (name == "abstention") return RCVariant::abstention();
    if (name == "supermajority") return RCVariant::supermajority(k);
    if (name == "even") return RCVariant::even_n();
    throw ValidationError("variant '" + name +
                          "' unknown (baseline, abstention, supermajority, even)");
}

}  // namespace majmech

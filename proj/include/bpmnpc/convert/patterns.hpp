#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bpmnpc/calculus/term.hpp"
#include "bpmnpc/convert/config.hpp"

namespace bpmnpc::conv {

class ConversionError : public std::runtime_error {
public:
    enum class Kind {
        EmptyFlows,
        BadM,
        MissingMessageMeta,
        MissingGroup,
        MissingMeta,
        UnsupportedNode,
        ValidationRequired,
        NameClash,
        BadCondition,
    };

    ConversionError(Kind kind, std::string subject, const std::string& what)
        : std::runtime_error(what), kind_(kind), subject_(std::move(subject)) {}

    Kind kind() const { return kind_; }
    /// Node, flow, or process the error is about.
    const std::string& subject() const { return subject_; }

private:
    Kind kind_;
    std::string subject_;
};

inline const char* to_string(ConversionError::Kind k) {
    using K = ConversionError::Kind;
    switch (k) {
    case K::EmptyFlows: return "EmptyFlows";
    case K::BadM: return "BadM";
    case K::MissingMessageMeta: return "MissingMessageMeta";
    case K::MissingGroup: return "MissingGroup";
    case K::MissingMeta: return "MissingMeta";
    case K::UnsupportedNode: return "UnsupportedNode";
    case K::ValidationRequired: return "ValidationRequired";
    case K::NameClash: return "NameClash";
    case K::BadCondition: return "BadCondition";
    }
    return "?";
}

/// The token binder and its type.
struct TokenSpec {
    std::string value = "t";
    calc::PrivType type = calc::PrivType::basic("Token");

    static TokenSpec from(const ConversionConfig& cfg) { return {cfg.token_value_name, cfg.token_type()}; }
};

enum class SplitKind { Parallel, Exclusive };

/// ∏ fᵢ!<t>.0 or ∑ fᵢ!<t>.0; one flow gives the Sequence pattern.
inline calc::Process split_pattern(SplitKind kind, const std::vector<calc::Name>& outflows, const calc::Name& token) {
    if (outflows.empty()) throw ConversionError(ConversionError::Kind::EmptyFlows, "", "split needs at least one flow");
    std::vector<calc::Process> outs;
    for (const auto& f : outflows) outs.push_back(calc::output(f, token));
    return kind == SplitKind::Parallel ? calc::par_all(outs) : calc::choice_all(outs);
}

struct JoinKind {
    enum class Tag { Choice, NofN, MofN } tag = Tag::Choice;
    std::size_t m = 0;

    static JoinKind choice() { return {Tag::Choice, 0}; }
    static JoinKind n_of_n() { return {Tag::NofN, 0}; }
    static JoinKind m_of_n(std::size_t m) { return {Tag::MofN, m}; }
};

namespace detail {

inline calc::Process receive_token(const calc::Name& chan, const TokenSpec& tok, calc::Process cont) {
    return calc::input(chan, tok.value, tok.type, std::move(cont));
}

/// h(t)…h(t) repeated `times`, then `cont`.
inline calc::Process repeat_receive(const calc::Name& h, std::size_t times, const TokenSpec& tok, calc::Process cont) {
    for (std::size_t i = 0; i < times; ++i) cont = receive_token(h, tok, std::move(cont));
    return cont;
}

/// ∏ fᵢ(t).h!<t>.0
inline calc::Process forward_all(const std::vector<calc::Name>& inflows, const calc::Name& h, const TokenSpec& tok) {
    std::vector<calc::Process> fwd;
    for (const auto& f : inflows) fwd.push_back(receive_token(f, tok, calc::output(h, calc::Name{tok.value})));
    return calc::par_all(fwd);
}

}  // namespace detail

/// Incoming patterns. `cont` may use the token binder. Fresh names h, r are
/// bound around the whole composition.
inline calc::Process join_pattern(JoinKind kind, const std::vector<calc::Name>& inflows, const calc::Process& cont,
                                  const calc::Group& group, FreshNames& fresh, const TokenSpec& tok = {}) {
    using calc::Name;
    if (inflows.empty()) throw ConversionError(ConversionError::Kind::EmptyFlows, "", "join needs at least one flow");
    const std::size_t n = inflows.size();
    const calc::PrivType chan_type = calc::PrivType::group_type(group, tok.type);

    switch (kind.tag) {
    case JoinKind::Tag::Choice: {
        std::vector<calc::Process> alts;
        for (const auto& f : inflows) alts.push_back(detail::receive_token(f, tok, cont));
        return calc::choice_all(alts);
    }
    case JoinKind::Tag::NofN: {
        if (n == 1) return detail::receive_token(inflows.front(), tok, cont);
        Name h = fresh_name(fresh);
        calc::Process body = calc::par(detail::repeat_receive(h, n, tok, cont), detail::forward_all(inflows, h, tok));
        return calc::new_name(h.base, chan_type, std::move(body));
    }
    case JoinKind::Tag::MofN: {
        if (kind.m < 1 || kind.m > n)
            throw ConversionError(ConversionError::Kind::BadM, "",
                                  "m-of-n needs 1 <= m <= n, got m=" + std::to_string(kind.m) + ", n=" + std::to_string(n));
        Name h = fresh_name(fresh);
        Name r = fresh_name(fresh);
        calc::Process counter = detail::repeat_receive(
            h, kind.m, tok, calc::output(r, Name{tok.value}, detail::repeat_receive(h, n - kind.m, tok, calc::nil())));
        calc::Process body = calc::par(detail::receive_token(r, tok, cont),
                                       calc::par(detail::forward_all(inflows, h, tok), std::move(counter)));
        return calc::new_name(h.base, chan_type, calc::new_name(r.base, chan_type, std::move(body)));
    }
    }
    return cont;
}

/// f₁(t).f₂(t)…fₙ(t).cont: waits for every flow in the given order.
inline calc::Process sync_pattern(const std::vector<calc::Name>& inflows, calc::Process cont, const TokenSpec& tok = {}) {
    if (inflows.empty()) throw ConversionError(ConversionError::Kind::EmptyFlows, "", "join needs at least one flow");
    for (auto it = inflows.rbegin(); it != inflows.rend(); ++it) cont = detail::receive_token(*it, tok, std::move(cont));
    return cont;
}

}  // namespace bpmnpc::conv

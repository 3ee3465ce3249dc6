#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/semantics/step.hpp"
#include "check.hpp"

namespace bpmnpc::testing {

/// `tau`, `x?a`, `x!y` or `x!(new b:T)`; names may carry `~k` indices.
inline calc::Label parse_label(const std::string& text) {
    using namespace calc;
    auto name_of = [](const std::string& s) {
        auto tilde = s.find('~');
        if (tilde == std::string::npos) return Name{s};
        return Name{s.substr(0, tilde), std::stoul(s.substr(tilde + 1))};
    };
    if (text == "tau") return label::Tau{};
    if (auto q = text.find('?'); q != std::string::npos) return label::In{name_of(text.substr(0, q)), text.substr(q + 1)};
    auto bang = text.find('!');
    if (bang == std::string::npos) throw std::invalid_argument("bad label " + text);
    std::string chan = text.substr(0, bang), rest = text.substr(bang + 1);
    if (rest.rfind("(new ", 0) == 0) {
        auto colon = rest.find(':');
        return label::BoundOut{name_of(chan), rest.substr(5, colon - 5),
                               parse_type(rest.substr(colon + 1, rest.size() - colon - 2))};
    }
    return label::Out{name_of(chan), name_of(rest)};
}

struct ExpectedStep {
    std::string label;
    std::string target;
};

struct LtsCase {
    std::string rule;
    std::string term;
    std::vector<ExpectedStep> steps;
};

/// Hand-derived complete step sets, a few per rule.
inline const std::vector<LtsCase>& lts_cases() {
    static const std::vector<LtsCase> cases{
        {"In", "x(a:T).a!<a>.0", {{"x?a", "a!<a>.0"}}},
        {"In", "y(b:U).b(c:T).c!<b>.0", {{"y?b", "b(c:T).c!<b>.0"}}},
        {"In", "x~1(a:T).a!<x>.0", {{"x~1?a", "a!<x>.0"}}},
        {"Out", "x!<y>.0", {{"x!y", "0"}}},
        {"Out", "x!<x>.y!<x>.0", {{"x!x", "y!<x>.0"}}},
        {"Silent", "tau.x!<y>.0", {{"tau", "x!<y>.0"}}},
        {"Silent", "tau.tau.0", {{"tau", "tau.0"}}},
        {"Repl", "!x!<y>.0", {{"x!y", "0 | !x!<y>.0"}}},
        {"Repl", "!tau.a!<b>.0", {{"tau", "a!<b>.0 | !tau.a!<b>.0"}}},
        {"Choice", "x!<y>.0 + tau.0", {{"x!y", "0"}, {"tau", "0"}}},
        {"Choice", "a(b:T).b!<b>.0 + c!<d>.0", {{"a?b", "b!<b>.0"}, {"c!d", "0"}}},
        {"CondT", "if x=x then y!<z>.0 else tau.0", {{"y!z", "0"}}},
        {"CondT", "if ok=ok then f!<t>.0 else g!<t>.0", {{"f!t", "0"}}},
        {"CondF", "if x=y then a!<b>.0 else tau.c!<d>.0", {{"tau", "c!<d>.0"}}},
        {"CondF", "if x~1=x then a!<b>.0 else b!<c>.0", {{"b!c", "0"}}},
        {"CondF", "if m=ok then f!<t>.0 else 0", {}},
        {"ResGS", "(group G)[G,u]{x!<y>.0}", {{"x!y", "(group G)[G,u]{0}"}}},
        {"ResGS",
         "(group R)([R,u]{tau.a!<b>.0} || [R,w]{c(d:T).0})",
         {{"tau", "(group R)([R,u]{a!<b>.0} || [R,w]{c(d:T).0})"}, {"c?d", "(group R)([R,u]{tau.a!<b>.0} || [R,w]{0})"}}},
        {"ResGP", "[G,u]{tau.x!<y>.0}", {{"tau", "[G,u]{x!<y>.0}"}}},
        {"ResGP", "[G,u]{x(a:T).a!<a>.0 + y!<z>.0}", {{"x?a", "[G,u]{a!<a>.0}"}, {"y!z", "[G,u]{0}"}}},
        {"Open", "(new a:T)x!<a>.0", {{"x!(new a:T)", "0"}}},
        {"Open", "(new a:T)x!<a>.a(b:U).0", {{"x!(new a:T)", "a(b:U).0"}}},
        {"Open", "(new a:T)[G,u]{x!<a>.a!<y>.0}", {{"x!(new a:T)", "[G,u]{a!<y>.0}"}}},
        {"ResN", "(new a:T)(x!<y>.0 | a!<y>.0)", {{"x!y", "(new a:T)a!<y>.0"}}},
        {"ResN", "(new a:T)x!<a~1>.0", {{"x!a", "0"}}},
        {"ResN", "(new a:T)a!<b>.0", {}},
        {"ResN", "(new a:T)[G,u]{tau.a!<y>.0}", {{"tau", "(new a:T)[G,u]{a!<y>.0}"}}},
        {"Comm",
         "x(a:T).a!<a>.0 | x!<z>.0",
         {{"tau", "z!<z>.0"}, {"x?a", "a!<a>.0 | x!<z>.0"}, {"x!z", "x(a:T).a!<a>.0"}}},
        {"Comm",
         "x!<y>.0 | x(b:T).b!<c>.0 | x(d:T).0",
         {{"tau", "y!<c>.0 | x(d:T).0"},
          {"tau", "x(b:T).b!<c>.0"},
          {"x!y", "x(b:T).b!<c>.0 | x(d:T).0"},
          {"x?b", "x!<y>.0 | b!<c>.0 | x(d:T).0"},
          {"x?d", "x!<y>.0 | x(b:T).b!<c>.0"}}},
        {"Comm",
         "x(a:T).y!<a>.0 | x!<a>.0",
         {{"tau", "y!<a>.0"}, {"x?a", "y!<a>.0 | x!<a~1>.0"}, {"x!a", "x(a:T).y!<a>.0"}}},
        {"Comm",
         "[G,u]{x!<y>.0} || [H,w]{x(a:T).a!<a>.0}",
         {{"tau", "[H,w]{y!<y>.0}"},
          {"x!y", "[H,w]{x(a:T).a!<a>.0}"},
          {"x?a", "[G,u]{x!<y>.0} || [H,w]{a!<a>.0}"}}},
        {"Close",
         "(new b:T)x!<b>.0 | x(a:T).0",
         {{"tau", "0"}, {"x!(new b:T)", "x(a:T).0"}, {"x?a", "(new b:T)x!<b>.0"}}},
        {"Close",
         "(new b:T)x!<b>.b!<c>.0 | x(a:T).a(d:U).d!<a>.0",
         {{"tau", "(new b:T)(b!<c>.0 | b(d:U).d!<b>.0)"},
          {"x!(new b:T)", "b!<c>.0 | x(a:T).a(d:U).d!<a>.0"},
          {"x?a", "(new b:T)x!<b>.b!<c>.0 | a(d:U).d!<a>.0"}}},
        {"Close",
         "(new b:T)x!<b>.0 | x(a:T).a!<b>.0",
         {{"tau", "(new b:T)b!<b~1>.0"},
          {"x!(new b:T)", "x(a:T).a!<b~1>.0"},
          {"x?a", "(new b:T)x!<b>.0 | a!<b>.0"}}},
        {"Par", "x!<y>.0 | tau.0", {{"tau", "x!<y>.0"}, {"x!y", "tau.0"}}},
        {"Par", "x(a:T).0 | a!<b>.0", {{"a!b", "x(a:T).0"}, {"x?a", "a~1!<b>.0"}}},
        {"Par", "[G,u]{tau.0} || [H,w]{x!<y>.0}", {{"tau", "[H,w]{x!<y>.0}"}, {"x!y", "[G,u]{tau.0}"}}},
        {"Congr", "0 | x!<y>.0 | 0", {{"x!y", "0"}}},
        {"Congr", "(new a:T)0 | (x!<y>.0 + x!<y>.0)", {{"x!y", "0"}}},
        {"Congr", "!0 | tau.0", {{"tau", "0"}}},
    };
    return cases;
}

template <calc::Term T>
std::vector<std::string> actual_keys(const T& t) {
    std::vector<std::string> keys;
    for (const auto& tr : sem::step(t)) keys.push_back(sem::transition_key(tr));
    std::sort(keys.begin(), keys.end());
    return keys;
}

template <calc::Term T>
std::vector<std::string> expected_keys(const LtsCase& c) {
    std::vector<std::string> keys;
    for (const auto& e : c.steps) {
        auto target = calc::parse_term(e.target);
        keys.push_back(sem::transition_key(sem::Transition<T>{parse_label(e.label), std::get<T>(target)}));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline std::string join_keys(const std::vector<std::string>& keys) {
    std::string out;
    for (const auto& k : keys) out += "\n    " + k;
    return out.empty() ? " (none)" : out;
}

inline std::string check_lts_case(const LtsCase& c) {
    calc::AnyTerm t = calc::parse_term(c.term);
    std::vector<std::string> got, want;
    if (const auto* p = std::get_if<calc::Process>(&t)) {
        got = actual_keys(*p);
        want = expected_keys<calc::Process>(c);
    } else {
        got = actual_keys(std::get<calc::System>(t));
        want = expected_keys<calc::System>(c);
    }
    if (got == want) return "";
    return c.rule + " " + c.term + "\n  got:" + join_keys(got) + "\n  expected:" + join_keys(want);
}

inline std::vector<Check> lts_checks() {
    std::vector<Check> out;
    for (const auto& c : lts_cases()) out.push_back({c.rule + ": " + c.term, [&c] { return check_lts_case(c); }});
    return out;
}

}  // namespace bpmnpc::testing

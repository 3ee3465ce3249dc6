#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bpmnpc/calculus/print.hpp"
#include "bpmnpc/convert/converter.hpp"

namespace bpmnpc::emit {

/// Target syntax of the emitted module. The defaults are provisional names.
struct EmitTemplate {
    std::string module_name = "BPMN-SYSTEM";
    /// Sort per role: group, purpose, type, value, system, context, process.
    std::map<std::string, std::string> sorts{
        {"group", "Group"},   {"purpose", "Purpose"}, {"type", "Type"},       {"value", "Value"},
        {"system", "System"}, {"context", "Context"}, {"process", "Process"},
    };
    std::string header = "including PRIVACY-CALCULUS .";
    std::string footer;
    std::string system_symbol = "S";
    std::string context_symbol = "ctx";

    const std::string& sort(const std::string& role) const { return sorts.at(role); }
};

namespace detail {

inline void indented(std::ostringstream& os, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) os << (line.empty() ? "" : "  ") << line << '\n';
}

}  // namespace detail

inline std::string render_context(const std::map<calc::Name, calc::PrivType>& context) {
    if (context.empty()) return "none";
    std::string out;
    for (const auto& [n, t] : context) {
        if (!out.empty()) out += " , ";
        out += calc::to_string(n) + " : " + calc::to_string(t, false);
    }
    return out;
}

/// Module text: header, constant declarations, system and context equations, footer.
inline std::string render_module(const conv::ConversionOutput& out, const EmitTemplate& tpl = {}) {
    std::ostringstream os;
    auto op = [&](const std::string& id, const std::string& role) {
        os << "  op " << id << " : -> " << tpl.sort(role) << " .\n";
    };
    const auto& d = out.declarations;
    os << "mod " << tpl.module_name << " is\n";
    detail::indented(os, tpl.header);
    for (const auto& [g, _] : d.groups) op(g, "group");
    for (const auto& u : d.purposes) op(u, "purpose");
    for (const auto& t : d.basic_types) op(t, "type");
    std::set<std::string> values;
    for (const auto& [x, domain] : d.context_vars) {
        op(x, "type");
        for (const auto& v : domain)
            if (values.insert(v).second) op(v, "value");
    }
    for (const auto& p : d.process_vars) op(p, "process");
    op(tpl.system_symbol, "system");
    op(tpl.context_symbol, "context");
    os << "  eq " << tpl.system_symbol << " = " << calc::print_term(out.system, {.inline_domains = false}) << " .\n";
    os << "  eq " << tpl.context_symbol << " = " << render_context(out.context) << " .\n";
    detail::indented(os, tpl.footer);
    os << "endm\n";
    return os.str();
}

}  // namespace bpmnpc::emit

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "bpmnpc/bpmn/validate.hpp"
#include "bpmnpc/bpmn/xml.hpp"
#include "bpmnpc/calculus/congruence.hpp"
#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/convert/converter.hpp"
#include "bpmnpc/emit/config_json.hpp"
#include "bpmnpc/emit/module.hpp"
#include "bpmnpc/emit/trace.hpp"

namespace bpmnpc::emit {

struct CliInvocation {
    /// convert, validate, trace or parse-term.
    std::string command;
    std::string input_path;
    std::optional<std::string> config_path;
    std::optional<std::string> output_path;
    std::size_t max_states = 10000;
    std::size_t max_depth = 1000;
    bool all_traces = false;
};

enum ExitCode : int { Ok = 0, Failure = 1, Truncated = 2 };

namespace detail {

struct CliFailure {
    std::string message;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{"cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to a sibling temporary file, then renames it over `path`.
inline void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CliFailure{"cannot write '" + tmp.string() + "'"};
        out << text;
        out.flush();
        if (!out) throw CliFailure{"cannot write '" + tmp.string() + "'"};
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CliFailure{"cannot replace '" + path + "'"};
    }
}

inline bpmn::Diagram load_diagram(const std::string& path) {
    std::string xml = read_file(path);
    return bpmn::parse_diagram(xml);
}

inline ToolConfig require_config(const CliInvocation& inv) {
    if (!inv.config_path) throw CliFailure{inv.command + " requires --config"};
    return load_tool_config(read_file(*inv.config_path));
}

/// Parses and validates; prints violations to `err` and fails if any.
inline bpmn::Diagram load_valid_diagram(const CliInvocation& inv, std::ostream& err) {
    bpmn::Diagram d = load_diagram(inv.input_path);
    auto violations = bpmn::validate(d);
    if (!violations.empty()) {
        for (const auto& v : violations) err << to_string(v) << '\n';
        throw CliFailure{"diagram violates " + std::to_string(violations.size()) + " rule(s)"};
    }
    return d;
}

inline void emit_text(const CliInvocation& inv, const std::string& text, std::ostream& out) {
    if (inv.output_path)
        write_atomically(*inv.output_path, text);
    else
        out << text;
}

inline int cmd_validate(const CliInvocation& inv, std::ostream& out) {
    auto violations = bpmn::validate(load_diagram(inv.input_path));
    for (const auto& v : violations) out << to_string(v) << '\n';
    return violations.empty() ? Ok : Failure;
}

inline int cmd_convert(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    ToolConfig cfg = require_config(inv);
    bpmn::Diagram d = load_valid_diagram(inv, err);
    conv::ConversionOutput conv = conv::convert_collaboration(d, cfg.conversion);
    emit_text(inv, render_module(conv, cfg.emit), out);
    return Ok;
}

inline int cmd_trace(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    if (inv.max_states < 1 || inv.max_depth < 1) throw CliFailure{"--max-states and --max-depth must be at least 1"};
    ToolConfig cfg = require_config(inv);
    bpmn::Diagram d = load_valid_diagram(inv, err);
    conv::ConversionOutput conv = conv::convert_collaboration(d, cfg.conversion);
    TraceReport report = trace_conversion(conv, inv.max_states, inv.max_depth);

    std::ostringstream text;
    if (inv.all_traces) {
        for (const auto& run : report.runs)
            for (const auto& tr : run.traces) text << sem::format_trace(tr) << '\n';
    } else {
        text << "traces " << report.trace_count() << '\n';
    }
    emit_text(inv, text.str(), out);
    if (report.truncated) {
        err << "exploration stopped at --max-states " << inv.max_states << " / --max-depth " << inv.max_depth
            << "; traces are incomplete\n";
        return Truncated;
    }
    for (const auto& run : report.runs)
        if (!run.error.empty()) throw CliFailure{run.error};
    return Ok;
}

inline int cmd_parse_term(const CliInvocation& inv, std::ostream& out) {
    std::string text = read_file(inv.input_path);
    calc::AnyTerm t = calc::parse_term(text);
    std::string canon = std::visit([](const auto& x) { return calc::congruence_key(x); }, t);
    emit_text(inv, canon + "\n", out);
    return Ok;
}

}  // namespace detail

/// Runs one command; diagnostics go to `err`. Returns the process exit status.
inline int run_cli(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    try {
        if (inv.command == "validate") return detail::cmd_validate(inv, out);
        if (inv.command == "convert") return detail::cmd_convert(inv, out, err);
        if (inv.command == "trace") return detail::cmd_trace(inv, out, err);
        if (inv.command == "parse-term") return detail::cmd_parse_term(inv, out);
        err << "error: unknown command '" << inv.command << "'\n";
    } catch (const detail::CliFailure& e) {
        err << "error: " << e.message << '\n';
    } catch (const bpmn::ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ConfigError& e) {
        err << "error: config: " << e.what() << '\n';
    } catch (const conv::ConversionError& e) {
        err << "error: conversion (" << conv::to_string(e.kind()) << "): " << e.what() << '\n';
    } catch (const calc::SyntaxError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return Failure;
}

}  // namespace bpmnpc::emit

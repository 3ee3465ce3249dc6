#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bpmnpc/calculus/term.hpp"
#include "bpmnpc/convert/converter.hpp"
#include "bpmnpc/semantics/explore.hpp"

namespace bpmnpc::emit {

/// The converted system with its phantom channels driven and drained.
struct ClosedSystem {
    calc::System system;
    /// `channel=value` for every driven ContextVar channel, in phantom order.
    std::vector<std::string> choices;
};

inline const calc::Group& environment_group() {
    static const calc::Group g = calc::Group::atom("Env");
    return g;
}

/// Incoming phantom channels get a driver sending one message (each value of a
/// ContextVar type in turn, one closed system per combination); outgoing ones get
/// a sink receiving one message. Drivers and sinks run as `[Env,env]{...}`.
inline std::vector<ClosedSystem> close_system(const conv::ConversionOutput& out) {
    using namespace calc;
    std::vector<std::vector<std::pair<Process, std::string>>> options;
    std::vector<Process> fixed;
    for (const auto& ph : out.phantoms) {
        Name chan{ph.channel};
        if (!ph.incoming) {
            fixed.push_back(input(chan, ph.message, ph.type, nil()));
        } else if (ph.type.is_context_var()) {
            std::vector<std::pair<Process, std::string>> alts;
            for (const auto& v : ph.type.domain()) alts.push_back({output(chan, Name{v}), ph.channel + "=" + v});
            options.push_back(std::move(alts));
        } else {
            fixed.push_back(new_name(ph.message, ph.type, output(chan, Name{ph.message})));
        }
    }
    std::vector<ClosedSystem> result;
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
        std::vector<Process> env = fixed;
        ClosedSystem cs;
        for (std::size_t i = 0; i < options.size(); ++i) {
            env.push_back(options[i][pick[i]].first);
            cs.choices.push_back(options[i][pick[i]].second);
        }
        cs.system = env.empty() ? out.system : sys_par(out.system, lift(environment_group(), "env", par_all(env)));
        result.push_back(std::move(cs));
        std::size_t i = 0;
        while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == options.size()) break;
    }
    return result;
}

struct TraceRun {
    ClosedSystem closed;
    sem::TransitionGraph<calc::System> graph;
    /// Empty when the graph is truncated or cyclic.
    std::vector<sem::Trace> traces;
    std::string error;
};

struct TraceReport {
    std::vector<TraceRun> runs;
    bool truncated = false;

    std::size_t trace_count() const {
        std::size_t n = 0;
        for (const auto& r : runs) n += r.traces.size();
        return n;
    }
};

/// τ-only exploration of every closed system.
inline TraceReport trace_conversion(const conv::ConversionOutput& out, std::size_t max_states, std::size_t max_depth) {
    TraceReport report;
    for (auto& cs : close_system(out)) {
        TraceRun run{std::move(cs), {}, {}, {}};
        run.graph = sem::explore(run.closed.system, {max_states, max_depth, true});
        if (run.graph.truncated) {
            report.truncated = true;
            run.error = "exploration truncated";
        } else {
            try {
                run.traces = sem::maximal_traces(run.graph);
            } catch (const sem::TraceError& e) {
                run.error = e.what();
            }
        }
        report.runs.push_back(std::move(run));
    }
    return report;
}

}  // namespace bpmnpc::emit

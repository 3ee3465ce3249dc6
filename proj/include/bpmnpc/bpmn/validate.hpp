#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bpmnpc/bpmn/model.hpp"

namespace bpmnpc::bpmn {

enum class ViolationCode {
    START_HAS_IN,
    END_HAS_OUT,
    MISSING_START,
    MISSING_END,
    MISSING_OUT,
    TASK_MULTI_IN,
    TASK_MULTI_MSG,
    SUBPROC_MULTI_IN,
    SUBPROC_MSGFLOW,
    INTERMEDIATE_MULTI_IN,
    GATEWAY_DEGENERATE,
    EXCLUSIVE_NOT_CONVERGING,
    COND_NOT_FROM_RECEIVE,
    MSGFLOW_SAME_POOL,
    ORPHAN_NODE,
    BACKWARD_FLOW,
};

inline constexpr ViolationCode all_violation_codes[] = {
    ViolationCode::START_HAS_IN,     ViolationCode::END_HAS_OUT,           ViolationCode::MISSING_START,
    ViolationCode::MISSING_END,      ViolationCode::MISSING_OUT,           ViolationCode::TASK_MULTI_IN,
    ViolationCode::TASK_MULTI_MSG,   ViolationCode::SUBPROC_MULTI_IN,      ViolationCode::SUBPROC_MSGFLOW,
    ViolationCode::INTERMEDIATE_MULTI_IN, ViolationCode::GATEWAY_DEGENERATE, ViolationCode::EXCLUSIVE_NOT_CONVERGING,
    ViolationCode::COND_NOT_FROM_RECEIVE, ViolationCode::MSGFLOW_SAME_POOL, ViolationCode::ORPHAN_NODE,
    ViolationCode::BACKWARD_FLOW,
};

inline const char* to_string(ViolationCode c) {
    switch (c) {
    case ViolationCode::START_HAS_IN: return "START_HAS_IN";
    case ViolationCode::END_HAS_OUT: return "END_HAS_OUT";
    case ViolationCode::MISSING_START: return "MISSING_START";
    case ViolationCode::MISSING_END: return "MISSING_END";
    case ViolationCode::MISSING_OUT: return "MISSING_OUT";
    case ViolationCode::TASK_MULTI_IN: return "TASK_MULTI_IN";
    case ViolationCode::TASK_MULTI_MSG: return "TASK_MULTI_MSG";
    case ViolationCode::SUBPROC_MULTI_IN: return "SUBPROC_MULTI_IN";
    case ViolationCode::SUBPROC_MSGFLOW: return "SUBPROC_MSGFLOW";
    case ViolationCode::INTERMEDIATE_MULTI_IN: return "INTERMEDIATE_MULTI_IN";
    case ViolationCode::GATEWAY_DEGENERATE: return "GATEWAY_DEGENERATE";
    case ViolationCode::EXCLUSIVE_NOT_CONVERGING: return "EXCLUSIVE_NOT_CONVERGING";
    case ViolationCode::COND_NOT_FROM_RECEIVE: return "COND_NOT_FROM_RECEIVE";
    case ViolationCode::MSGFLOW_SAME_POOL: return "MSGFLOW_SAME_POOL";
    case ViolationCode::ORPHAN_NODE: return "ORPHAN_NODE";
    case ViolationCode::BACKWARD_FLOW: return "BACKWARD_FLOW";
    }
    return "?";
}

struct Violation {
    ViolationCode code;
    std::string node_or_flow;
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(const Violation& v) {
    return std::string(to_string(v.code)) + " " + v.node_or_flow + " " + v.message;
}

namespace detail {

/// Sequence flows closing a cycle, found by depth-first search from nodes in id order.
inline std::vector<const SequenceFlow*> back_edges(const ProcessGraph& g) {
    std::map<std::string, std::vector<const SequenceFlow*>> succ;
    for (const auto& [id, _] : g.nodes) succ[id] = g.outgoing(id);
    std::map<std::string, int> color;
    std::vector<const SequenceFlow*> out;
    auto visit = [&](auto&& self, const std::string& n) -> void {
        color[n] = 1;
        for (const auto* f : succ[n]) {
            int c = color[f->target];
            if (c == 1)
                out.push_back(f);
            else if (c == 0)
                self(self, f->target);
        }
        color[n] = 2;
    };
    // Start Events first so that forward edges of a valid layout are tree edges.
    for (const auto* s : g.start_events())
        if (!color[s->id]) visit(visit, s->id);
    for (const auto& [id, _] : g.nodes)
        if (!color[id]) visit(visit, id);
    return out;
}

inline void validate_graph(const ProcessGraph& g, std::vector<Violation>& out) {
    using VC = ViolationCode;
    auto add = [&](VC c, const std::string& id, std::string msg) { out.push_back({c, id, std::move(msg)}); };

    auto starts = g.start_events();
    bool has_end = std::any_of(g.nodes.begin(), g.nodes.end(),
                               [](const auto& kv) { return kv.second.kind == NodeKind::EndEvent; });
    std::string scope = g.parent ? "sub-process" : "process";
    if (starts.empty()) add(VC::MISSING_START, g.id, scope + " has no Start Event");
    if (!has_end) add(VC::MISSING_END, g.id, scope + " has no End Event");

    std::set<std::string> reached;
    for (const auto* s : starts) {
        auto r = reachable_from(g, s->id);
        reached.insert(r.begin(), r.end());
    }

    for (const auto& [id, n] : g.nodes) {
        std::size_t in = g.incoming(id).size();
        std::size_t out_n = g.outgoing(id).size();
        auto count = [](std::size_t k) { return std::to_string(k); };
        switch (n.kind) {
        case NodeKind::StartEvent:
            if (in > 0) add(VC::START_HAS_IN, id, "Start Event has " + count(in) + " incoming sequence flow(s)");
            break;
        case NodeKind::EndEvent:
            if (out_n > 0) add(VC::END_HAS_OUT, id, "End Event has " + count(out_n) + " outgoing sequence flow(s)");
            break;
        case NodeKind::Task:
            if (in != 1) add(VC::TASK_MULTI_IN, id, "Task has " + count(in) + " incoming sequence flows, expected 1");
            break;
        case NodeKind::SubProcess:
            if (in != 1)
                add(VC::SUBPROC_MULTI_IN, id, "Sub-Process has " + count(in) + " incoming sequence flows, expected 1");
            break;
        case NodeKind::IntermediateCatchEvent:
        case NodeKind::IntermediateThrowEvent:
            if (in != 1)
                add(VC::INTERMEDIATE_MULTI_IN, id,
                    "Intermediate Event has " + count(in) + " incoming sequence flows, expected 1");
            break;
        case NodeKind::ParallelGateway:
        case NodeKind::ExclusiveGateway:
            if (in == 0 || out_n == 0)
                add(VC::GATEWAY_DEGENERATE, id,
                    "Gateway has " + count(in) + " incoming and " + count(out_n) + " outgoing sequence flows");
            if (n.kind == NodeKind::ExclusiveGateway && out_n > 1)
                add(VC::EXCLUSIVE_NOT_CONVERGING, id,
                    "Exclusive Gateway has " + count(out_n) + " outgoing sequence flows, expected 1");
            break;
        }
        bool may_end = n.kind == NodeKind::EndEvent || n.kind == NodeKind::SubProcess || n.is_gateway();
        if (!may_end && out_n == 0) add(VC::MISSING_OUT, id, std::string(to_string(n.kind)) + " has no outgoing sequence flow");
        if (n.kind != NodeKind::StartEvent && !starts.empty() && !reached.contains(id))
            add(VC::ORPHAN_NODE, id, "not reachable from any Start Event");
    }

    for (const auto& f : g.sequence_flows) {
        if (!f.condition) continue;
        const FlowNode* src = g.find(f.source);
        if (!src || src->kind != NodeKind::Task || src->task_kind != TaskKind::Receive)
            add(VC::COND_NOT_FROM_RECEIVE, f.id, "conditional flow leaves '" + f.source + "', which is not a Receive Task");
    }

    for (const auto* f : back_edges(g))
        add(VC::BACKWARD_FLOW, f->id, "sequence flow '" + f->source + "' -> '" + f->target + "' closes a cycle");

    for (const auto& [_, n] : g.nodes)
        if (n.body) validate_graph(*n.body, out);
}

inline void validate_message_flows(const Diagram& d, std::vector<Violation>& out) {
    using VC = ViolationCode;
    const auto* c = d.collaboration();
    if (!c) return;
    std::map<std::string, std::pair<int, int>> task_msgs;  // in, out
    for (const auto& m : c->message_flows) {
        const Participant* ps = pool_of(d, m.source);
        const Participant* pt = pool_of(d, m.target);
        if (ps && pt && ps == pt)
            out.push_back({VC::MSGFLOW_SAME_POOL, m.id, "message flow stays inside pool '" + ps->id + "'"});
        for (bool is_source : {true, false}) {
            const std::string& end = is_source ? m.source : m.target;
            auto loc = locate(d, end);
            if (!loc) continue;
            if (loc->node->kind == NodeKind::SubProcess)
                out.push_back({VC::SUBPROC_MSGFLOW, m.id, "message flow attached to Sub-Process '" + end + "'"});
            if (loc->node->kind == NodeKind::Task) {
                auto& [in, o] = task_msgs[end];
                (is_source ? o : in) += 1;
            }
        }
    }
    for (const auto& [id, io] : task_msgs)
        if (io.first > 1 || io.second > 1)
            out.push_back({VC::TASK_MULTI_MSG, id,
                           "Task has " + std::to_string(io.first) + " incoming and " + std::to_string(io.second) +
                               " outgoing message flows"});
}

}  // namespace detail

/// All rule violations, graph by graph (outermost first), then message-flow rules.
inline std::vector<Violation> validate(const Diagram& d) {
    std::vector<Violation> out;
    if (const auto* p = d.single_process()) {
        detail::validate_graph(*p, out);
    } else {
        for (const auto& part : d.collaboration()->participants)
            if (const auto* g = part.process()) detail::validate_graph(*g, out);
    }
    detail::validate_message_flows(d, out);
    return out;
}

}  // namespace bpmnpc::bpmn

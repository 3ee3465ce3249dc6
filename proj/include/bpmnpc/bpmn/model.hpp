#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bpmnpc::bpmn {

enum class TaskKind { Abstract, Send, Receive, User, Manual };

enum class NodeKind {
    StartEvent,
    EndEvent,
    IntermediateCatchEvent,
    IntermediateThrowEvent,
    Task,
    ParallelGateway,
    ExclusiveGateway,
    SubProcess,
};

inline const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::StartEvent: return "startEvent";
    case NodeKind::EndEvent: return "endEvent";
    case NodeKind::IntermediateCatchEvent: return "intermediateCatchEvent";
    case NodeKind::IntermediateThrowEvent: return "intermediateThrowEvent";
    case NodeKind::Task: return "task";
    case NodeKind::ParallelGateway: return "parallelGateway";
    case NodeKind::ExclusiveGateway: return "exclusiveGateway";
    case NodeKind::SubProcess: return "subProcess";
    }
    return "?";
}

inline const char* to_string(TaskKind k) {
    switch (k) {
    case TaskKind::Abstract: return "task";
    case TaskKind::Send: return "sendTask";
    case TaskKind::Receive: return "receiveTask";
    case TaskKind::User: return "userTask";
    case TaskKind::Manual: return "manualTask";
    }
    return "?";
}

struct ProcessGraph;

struct FlowNode {
    std::string id;
    std::optional<std::string> name;
    NodeKind kind = NodeKind::Task;
    /// Start/End: carries a message event definition.
    bool is_message = false;
    TaskKind task_kind = TaskKind::Abstract;
    /// SubProcess only.
    std::shared_ptr<const ProcessGraph> body;
    bool multi_instance_parallel = false;

    bool is_gateway() const { return kind == NodeKind::ParallelGateway || kind == NodeKind::ExclusiveGateway; }
    bool is_intermediate() const {
        return kind == NodeKind::IntermediateCatchEvent || kind == NodeKind::IntermediateThrowEvent;
    }

    friend bool operator==(const FlowNode& a, const FlowNode& b);
};

/// `message == value` or `message != value`.
struct Condition {
    enum class Op { Eq, Neq };
    Op op = Op::Eq;
    std::string message;
    std::string value;
    friend bool operator==(const Condition&, const Condition&) = default;
};

inline std::string to_string(const Condition& c) {
    return c.message + (c.op == Condition::Op::Eq ? " == " : " != ") + c.value;
}

struct SequenceFlow {
    std::string id;
    std::string source;
    std::string target;
    std::optional<Condition> condition;
    friend bool operator==(const SequenceFlow&, const SequenceFlow&) = default;
};

struct ProcessGraph {
    std::string id;
    std::optional<std::string> name;
    /// Ordered by id, which fixes node iteration order everywhere.
    std::map<std::string, FlowNode> nodes;
    std::vector<SequenceFlow> sequence_flows;
    /// Id of the enclosing Sub-Process node, for Sub-Process bodies.
    std::optional<std::string> parent;

    friend bool operator==(const ProcessGraph&, const ProcessGraph&) = default;

    const FlowNode* find(const std::string& node_id) const {
        auto it = nodes.find(node_id);
        return it == nodes.end() ? nullptr : &it->second;
    }

    /// Flows sorted by id.
    std::vector<const SequenceFlow*> incoming(const std::string& node_id) const {
        return select([&](const SequenceFlow& f) { return f.target == node_id; });
    }
    std::vector<const SequenceFlow*> outgoing(const std::string& node_id) const {
        return select([&](const SequenceFlow& f) { return f.source == node_id; });
    }

    std::vector<const FlowNode*> start_events() const {
        std::vector<const FlowNode*> out;
        for (const auto& [_, n] : nodes)
            if (n.kind == NodeKind::StartEvent) out.push_back(&n);
        return out;
    }

private:
    template <class Pred>
    std::vector<const SequenceFlow*> select(Pred pred) const {
        std::vector<const SequenceFlow*> out;
        for (const auto& f : sequence_flows)
            if (pred(f)) out.push_back(&f);
        std::sort(out.begin(), out.end(), [](const SequenceFlow* a, const SequenceFlow* b) { return a->id < b->id; });
        return out;
    }
};

inline bool operator==(const FlowNode& a, const FlowNode& b) {
    if (a.id != b.id || a.name != b.name || a.kind != b.kind || a.is_message != b.is_message ||
        a.task_kind != b.task_kind || a.multi_instance_parallel != b.multi_instance_parallel)
        return false;
    if (!a.body || !b.body) return !a.body && !b.body;
    return *a.body == *b.body;
}

struct BlackBox {
    friend bool operator==(const BlackBox&, const BlackBox&) = default;
};

struct Participant {
    std::string id;
    std::optional<std::string> name;
    std::variant<ProcessGraph, BlackBox> body;

    bool is_black_box() const { return std::holds_alternative<BlackBox>(body); }
    const ProcessGraph* process() const { return std::get_if<ProcessGraph>(&body); }

    friend bool operator==(const Participant&, const Participant&) = default;
};

struct MessageFlow {
    std::string id;
    std::optional<std::string> name;
    /// Node id or participant id.
    std::string source;
    std::string target;
    /// Assumed from configuration rather than drawn.
    bool phantom = false;
    friend bool operator==(const MessageFlow&, const MessageFlow&) = default;
};

struct Collaboration {
    std::string id;
    std::vector<Participant> participants;
    std::vector<MessageFlow> message_flows;
    friend bool operator==(const Collaboration&, const Collaboration&) = default;
};

struct Diagram {
    std::variant<ProcessGraph, Collaboration> kind;

    bool is_collaboration() const { return std::holds_alternative<Collaboration>(kind); }
    const ProcessGraph* single_process() const { return std::get_if<ProcessGraph>(&kind); }
    const Collaboration* collaboration() const { return std::get_if<Collaboration>(&kind); }

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

class UnknownNode : public std::invalid_argument {
public:
    explicit UnknownNode(const std::string& id) : std::invalid_argument("unknown node '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

/// Forward closure over sequence flows, including `start`.
inline std::set<std::string> reachable_from(const ProcessGraph& p, const std::string& start) {
    if (!p.find(start)) throw UnknownNode(start);
    std::set<std::string> seen{start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
        std::string n = queue.front();
        queue.pop_front();
        for (const auto& f : p.sequence_flows)
            if (f.source == n && p.find(f.target) && seen.insert(f.target).second) queue.push_back(f.target);
    }
    return seen;
}

/// Every graph in `p`, outermost first: `p` and all Sub-Process bodies (depth-first, by node id).
inline void for_each_graph(const ProcessGraph& p, const auto& fn) {
    fn(p);
    for (const auto& [_, n] : p.nodes)
        if (n.body) for_each_graph(*n.body, fn);
}

/// Location of a node: the graph containing it and the pool (participant) it lies in.
struct NodeLocation {
    const FlowNode* node = nullptr;
    const ProcessGraph* graph = nullptr;
    const Participant* participant = nullptr;
};

inline std::optional<NodeLocation> locate_in(const ProcessGraph& p, const std::string& id, const Participant* owner) {
    std::optional<NodeLocation> found;
    for_each_graph(p, [&](const ProcessGraph& g) {
        if (found) return;
        if (const FlowNode* n = g.find(id)) found = NodeLocation{n, &g, owner};
    });
    return found;
}

inline std::optional<NodeLocation> locate(const Diagram& d, const std::string& id) {
    if (const auto* p = d.single_process()) return locate_in(*p, id, nullptr);
    for (const auto& part : d.collaboration()->participants)
        if (const auto* g = part.process())
            if (auto loc = locate_in(*g, id, &part)) return loc;
    return std::nullopt;
}

inline const Participant* find_participant(const Collaboration& c, const std::string& id) {
    for (const auto& p : c.participants)
        if (p.id == id) return &p;
    return nullptr;
}

/// Pool of a message-flow endpoint (participant id or node id inside one).
inline const Participant* pool_of(const Diagram& d, const std::string& endpoint) {
    const auto* c = d.collaboration();
    if (!c) return nullptr;
    if (const auto* p = find_participant(*c, endpoint)) return p;
    if (auto loc = locate(d, endpoint)) return loc->participant;
    return nullptr;
}

/// Drawn message flows with the given node as target (incoming) or source (outgoing), by id.
inline std::vector<const MessageFlow*> message_flows_at(const Diagram& d, const std::string& node_id, bool incoming) {
    std::vector<const MessageFlow*> out;
    if (const auto* c = d.collaboration())
        for (const auto& m : c->message_flows)
            if ((incoming ? m.target : m.source) == node_id) out.push_back(&m);
    std::sort(out.begin(), out.end(), [](const MessageFlow* a, const MessageFlow* b) { return a->id < b->id; });
    return out;
}

}  // namespace bpmnpc::bpmn

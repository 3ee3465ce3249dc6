#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bpmnpc/bpmn/model.hpp"
#include "bpmnpc/bpmn/validate.hpp"
#include "bpmnpc/calculus/cinni.hpp"
#include "bpmnpc/calculus/print.hpp"
#include "bpmnpc/calculus/term.hpp"
#include "bpmnpc/convert/config.hpp"
#include "bpmnpc/convert/patterns.hpp"

namespace bpmnpc::conv {

/// A message travelling over a (real or phantom) message flow.
struct MessageBinding {
    calc::Name channel;
    std::string message;
    calc::PrivType type;
};

/// Everything convert_node needs besides the node itself.
struct NodeContext {
    /// Sequence-flow ids, ascending.
    std::vector<std::string> in_flows;
    std::vector<std::string> out_flows;
    /// Guards on outgoing flows, by flow id.
    std::map<std::string, bpmn::Condition> conditions;
    std::vector<MessageBinding> messages_in;
    std::vector<MessageBinding> messages_out;
    /// Group the enclosing top-level process runs for.
    calc::Group group;
    /// Set for End Events of Sub-Process bodies: replaces the final 0.
    std::optional<calc::Process> end_continuation;
    /// Converts a Sub-Process body given the continuation for its End Events.
    std::function<calc::Process(const bpmn::ProcessGraph&, const calc::Process&)> convert_body;
};

struct PhantomChannel {
    std::string node_id;
    std::string channel;
    std::string message;
    calc::PrivType type;
    calc::PrivType channel_type;
    /// True when the node receives on the channel.
    bool incoming = true;
};

struct Declarations {
    std::map<std::string, calc::GroupKind> groups;
    std::set<std::string> purposes;
    std::set<std::string> basic_types;
    /// Context-variable id to its domain.
    std::map<std::string, std::vector<std::string>> context_vars;
    std::set<std::string> process_vars;

    friend bool operator==(const Declarations&, const Declarations&) = default;
};

struct ConversionOutput {
    calc::System system;
    std::map<calc::Name, calc::PrivType> context;
    Declarations declarations;
    std::vector<PhantomChannel> phantoms;
};

namespace detail {

inline std::vector<calc::Name> as_names(const std::vector<std::string>& ids) {
    return {ids.begin(), ids.end()};
}

[[noreturn]] inline void fail(ConversionError::Kind k, const std::string& subject, const std::string& what) {
    throw ConversionError(k, subject, what);
}

inline const MessageBinding& single_message(const std::vector<MessageBinding>& ms, const std::string& node,
                                            const char* direction) {
    if (ms.size() != 1)
        fail(ConversionError::Kind::UnsupportedNode, node,
             "'" + node + "' needs exactly one " + direction + " message flow, has " + std::to_string(ms.size()));
    return ms.front();
}

inline std::size_t single_in(const NodeContext& ctx, const std::string& node) {
    if (ctx.in_flows.size() != 1)
        fail(ConversionError::Kind::ValidationRequired, node,
             "'" + node + "' needs exactly one incoming sequence flow, has " + std::to_string(ctx.in_flows.size()));
    return 0;
}

inline calc::Process guarded(const calc::Process& p, const bpmn::Condition& c, const MessageBinding& received) {
    calc::Name x{received.message};
    calc::Name v{c.value};
    return c.op == bpmn::Condition::Op::Eq ? calc::when_equal(x, v, p) : calc::when_unequal(x, v, p);
}

}  // namespace detail

/// Term for one flow node.
inline calc::Process convert_node(const bpmn::FlowNode& node, const NodeContext& ctx, const ConversionConfig& cfg,
                                  FreshNames& fresh) {
    using namespace calc;
    using bpmn::NodeKind;
    using K = ConversionError::Kind;
    const TokenSpec tok = TokenSpec::from(cfg);
    const Name t{tok.value};
    auto out_split = [&] {
        if (ctx.out_flows.empty()) detail::fail(K::EmptyFlows, node.id, "'" + node.id + "' has no outgoing sequence flow");
        return split_pattern(SplitKind::Parallel, detail::as_names(ctx.out_flows), t);
    };
    auto receive = [&](Process cont) {
        detail::single_in(ctx, node.id);
        return input(Name{ctx.in_flows.front()}, tok.value, tok.type, std::move(cont));
    };
    auto no_messages = [&](const std::vector<MessageBinding>& ms, const char* what) {
        if (!ms.empty())
            detail::fail(K::UnsupportedNode, node.id, "'" + node.id + "' cannot have " + what + " message flows");
    };

    switch (node.kind) {
    case NodeKind::StartEvent: {
        no_messages(ctx.messages_out, "outgoing");
        Process body = new_name(tok.value, tok.type, out_split());
        if (ctx.messages_in.empty()) return body;
        std::vector<Process> alts;
        for (const auto& m : ctx.messages_in) alts.push_back(input(m.channel, m.message, m.type, body));
        return choice_all(alts);
    }
    case NodeKind::EndEvent: {
        no_messages(ctx.messages_in, "incoming");
        Process tail = ctx.end_continuation.value_or(nil());
        std::vector<Process> parts;
        for (std::size_t j = 0; j < ctx.messages_out.size(); ++j) {
            const auto& m = ctx.messages_out[j];
            Process k = j + 1 == ctx.messages_out.size() ? tail : nil();
            parts.push_back(new_name(m.message, m.type, output(m.channel, Name{m.message}, std::move(k))));
        }
        Process d = parts.empty() ? tail : par_all(parts);
        if (ctx.in_flows.empty())
            detail::fail(K::ValidationRequired, node.id, "End Event '" + node.id + "' has no incoming sequence flow");
        return join_pattern(JoinKind::n_of_n(), detail::as_names(ctx.in_flows), d, ctx.group, fresh, tok);
    }
    case NodeKind::IntermediateCatchEvent: {
        no_messages(ctx.messages_out, "outgoing");
        const auto& m = detail::single_message(ctx.messages_in, node.id, "incoming");
        return receive(input(m.channel, m.message, m.type, out_split()));
    }
    case NodeKind::IntermediateThrowEvent: {
        no_messages(ctx.messages_in, "incoming");
        const auto& m = detail::single_message(ctx.messages_out, node.id, "outgoing");
        return receive(new_name(m.message, m.type, output(m.channel, Name{m.message}, out_split())));
    }
    case NodeKind::ParallelGateway: {
        no_messages(ctx.messages_in, "incoming");
        no_messages(ctx.messages_out, "outgoing");
        if (ctx.in_flows.empty())
            detail::fail(K::ValidationRequired, node.id, "Gateway '" + node.id + "' has no incoming sequence flow");
        return join_pattern(JoinKind::n_of_n(), detail::as_names(ctx.in_flows), out_split(), ctx.group, fresh, tok);
    }
    case NodeKind::ExclusiveGateway: {
        no_messages(ctx.messages_in, "incoming");
        no_messages(ctx.messages_out, "outgoing");
        if (ctx.in_flows.empty())
            detail::fail(K::ValidationRequired, node.id, "Gateway '" + node.id + "' has no incoming sequence flow");
        return join_pattern(JoinKind::choice(), detail::as_names(ctx.in_flows), out_split(), ctx.group, fresh, tok);
    }
    case NodeKind::Task: {
        if (ctx.messages_in.size() > 1 || ctx.messages_out.size() > 1)
            detail::fail(K::ValidationRequired, node.id, "Task '" + node.id + "' has more than one message flow per direction");
        const MessageBinding* received = ctx.messages_in.empty() ? nullptr : &ctx.messages_in.front();
        if (ctx.out_flows.empty()) detail::fail(K::EmptyFlows, node.id, "'" + node.id + "' has no outgoing sequence flow");
        std::vector<Process> outs;
        for (const auto& f : ctx.out_flows) {
            Process o = output(Name{f}, t);
            auto c = ctx.conditions.find(f);
            if (c != ctx.conditions.end()) {
                const auto& cond = c->second;
                if (!received)
                    detail::fail(K::BadCondition, f, "condition on '" + f + "' but '" + node.id + "' receives no message");
                if (cond.message != received->message)
                    detail::fail(K::BadCondition, f,
                                 "condition on '" + f + "' tests '" + cond.message + "' but the received message is '" +
                                     received->message + "'");
                const auto& ty = received->type;
                if (!ty.is_context_var() ||
                    std::find(ty.domain().begin(), ty.domain().end(), cond.value) == ty.domain().end())
                    detail::fail(K::BadCondition, f,
                                 "value '" + cond.value + "' is not in the domain of " + to_string(ty));
                o = detail::guarded(o, cond, *received);
            }
            outs.push_back(std::move(o));
        }
        Process tail = par_all(outs);
        if (!ctx.messages_out.empty()) {
            const auto& m = ctx.messages_out.front();
            tail = new_name(m.message, m.type, output(m.channel, Name{m.message}, std::move(tail)));
        }
        bool communicates = node.task_kind == bpmn::TaskKind::Send || node.task_kind == bpmn::TaskKind::Receive;
        if (!communicates) tail = silent(std::move(tail));
        if (received) tail = input(received->channel, received->message, received->type, std::move(tail));
        return receive(std::move(tail));
    }
    case NodeKind::SubProcess: {
        no_messages(ctx.messages_in, "incoming");
        no_messages(ctx.messages_out, "outgoing");
        if (!node.body || !ctx.convert_body)
            detail::fail(K::UnsupportedNode, node.id, "Sub-Process '" + node.id + "' has no body to convert");
        Process cont = ctx.out_flows.empty() ? nil() : out_split();
        Process body = ctx.convert_body(*node.body, cont);
        if (node.multi_instance_parallel) body = repl(std::move(body));
        return receive(std::move(body));
    }
    }
    detail::fail(K::UnsupportedNode, node.id, "unsupported node '" + node.id + "'");
}

/// Free-standing Declarations builder: every group, purpose, type and process
/// variable mentioned in `s` or in the context types.
inline Declarations collect_declarations(const calc::System& s, const std::map<calc::Name, calc::PrivType>& context) {
    using namespace calc;
    Declarations d;
    auto group = [&](const Group& g) {
        for (const Group* a : g.atoms()) d.groups.emplace(a->id(), a->kind());
    };
    auto type = [&](auto&& self, const PrivType& t) -> void {
        switch (t.kind()) {
        case PrivType::Kind::Basic: d.basic_types.insert(t.id()); break;
        case PrivType::Kind::ContextVar: d.context_vars[t.id()] = t.domain(); break;
        case PrivType::Kind::GroupType:
            group(t.group());
            self(self, t.inner());
            break;
        }
    };
    auto proc = [&](auto&& self, const Process& p) -> void {
        std::visit(overloaded{
                       [](const proc::Empty&) {},
                       [&](const proc::Var& v) { d.process_vars.insert(v.id); },
                       [&](const proc::Input& in) {
                           type(type, in.type);
                           self(self, in.cont);
                       },
                       [&](const proc::Output& o) { self(self, o.cont); },
                       [&](const proc::Silent& x) { self(self, x.cont); },
                       [&](const proc::NewName& nn) {
                           type(type, nn.type);
                           self(self, nn.cont);
                       },
                       [&](const proc::Par& pp) {
                           self(self, pp.left);
                           self(self, pp.right);
                       },
                       [&](const proc::Choice& c) {
                           self(self, c.left);
                           self(self, c.right);
                       },
                       [&](const proc::Cond& c) {
                           self(self, c.then_p);
                           self(self, c.else_p);
                       },
                       [&](const proc::Repl& r) { self(self, r.body); },
                   },
                   p.node().v);
    };
    auto sys = [&](auto&& self, const System& x) -> void {
        std::visit(overloaded{
                       [](const sys::Empty&) {},
                       [&](const sys::NewName& nn) {
                           type(type, nn.type);
                           self(self, nn.cont);
                       },
                       [&](const sys::Par& pp) {
                           self(self, pp.left);
                           self(self, pp.right);
                       },
                       [&](const sys::GroupBind& g) {
                           group(g.group);
                           self(self, g.cont);
                       },
                       [&](const sys::Lift& l) {
                           group(l.group);
                           d.purposes.insert(l.purpose);
                           proc(proc, l.body);
                       },
                   },
                   x.node().v);
    };
    sys(sys, s);
    for (const auto& [_, t] : context) type(type, t);
    return d;
}

/// Diagram to system. One instance per conversion: it owns the fresh-name counter.
class Converter {
public:
    Converter(const bpmn::Diagram& d, const ConversionConfig& cfg)
        : diagram_(d), cfg_(cfg), fresh_(cfg.fresh_prefix, reserved_identifiers(d, cfg)) {}

    ConversionOutput run() {
        using K = ConversionError::Kind;
        auto violations = bpmn::validate(diagram_);
        if (!violations.empty())
            detail::fail(K::ValidationRequired, violations.front().node_or_flow,
                         "diagram is not valid: " + to_string(violations.front()) +
                             (violations.size() > 1 ? " (and " + std::to_string(violations.size() - 1) + " more)" : ""));
        check_names();
        check_phantom_targets();

        ConversionOutput out;
        if (const auto* g = diagram_.single_process()) {
            const ProcessMeta& meta = meta_for({g->id});
            out.system = calc::lift(meta.group, meta.purpose, convert_graph(*g, meta.group, std::nullopt));
        } else {
            out.system = convert_collaboration_system(*diagram_.collaboration());
        }
        out.context = context_;
        out.phantoms = phantoms_;
        for (const auto& n : calc::free_names(out.system))
            if (!out.context.contains(n))
                detail::fail(K::MissingMeta, calc::to_string(n), "free name '" + calc::to_string(n) + "' has no type");
        out.declarations = collect_declarations(out.system, out.context);
        return out;
    }

    /// ⟦M⟧ for a process graph, without group/purpose: binders for its sequence
    /// flows around a choice, over Start Events, of the nodes each one reaches.
    calc::Process convert_graph(const bpmn::ProcessGraph& g, const calc::Group& group,
                                const std::optional<calc::Process>& end_cont) {
        using K = ConversionError::Kind;
        auto starts = g.start_events();
        if (starts.empty()) detail::fail(K::ValidationRequired, g.id, "'" + g.id + "' has no Start Event");
        std::vector<calc::Process> summands;
        std::set<std::string> covered;
        for (const auto* s : starts) {
            auto reach = bpmn::reachable_from(g, s->id);
            covered.insert(reach.begin(), reach.end());
            std::vector<calc::Process> parts;
            for (const auto& id : reach) parts.push_back(convert_in_graph(*g.find(id), g, group, end_cont));
            summands.push_back(calc::par_all(parts));
        }
        calc::Process body = calc::choice_all(summands);
        std::vector<std::string> bound;
        for (const auto& f : g.sequence_flows)
            if (covered.contains(f.source) && covered.contains(f.target)) bound.push_back(f.id);
        std::sort(bound.begin(), bound.end());
        const calc::PrivType ft = calc::PrivType::group_type(group, cfg_.token_type());
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) body = calc::new_name(*it, ft, std::move(body));
        return body;
    }

    NodeContext context_for(const bpmn::FlowNode& n, const bpmn::ProcessGraph& g, const calc::Group& group,
                            const std::optional<calc::Process>& end_cont) {
        NodeContext ctx;
        for (const auto* f : g.incoming(n.id)) ctx.in_flows.push_back(f->id);
        for (const auto* f : g.outgoing(n.id)) {
            ctx.out_flows.push_back(f->id);
            if (f->condition) ctx.conditions.emplace(f->id, *f->condition);
        }
        ctx.messages_in = messages(n, group, true);
        ctx.messages_out = messages(n, group, false);
        ctx.group = group;
        if (n.kind == bpmn::NodeKind::EndEvent) ctx.end_continuation = end_cont;
        ctx.convert_body = [this, group](const bpmn::ProcessGraph& body, const calc::Process& cont) {
            return convert_graph(body, group, cont);
        };
        for (const auto& [flow, c] : ctx.conditions) {
            if (ctx.messages_in.empty()) continue;
            const auto& ty = ctx.messages_in.front().type;
            if (ty.is_context_var()) add_context(calc::Name{c.value}, ty, flow);
        }
        return ctx;
    }

private:
    calc::Process convert_in_graph(const bpmn::FlowNode& n, const bpmn::ProcessGraph& g, const calc::Group& group,
                                   const std::optional<calc::Process>& end_cont) {
        return convert_node(n, context_for(n, g, group, end_cont), cfg_, fresh_);
    }

    static bool needs_message(const bpmn::FlowNode& n, bool incoming) {
        using bpmn::NodeKind;
        using bpmn::TaskKind;
        if (incoming)
            return (n.kind == NodeKind::StartEvent && n.is_message) || n.kind == NodeKind::IntermediateCatchEvent ||
                   (n.kind == NodeKind::Task && n.task_kind == TaskKind::Receive);
        return (n.kind == NodeKind::EndEvent && n.is_message) || n.kind == NodeKind::IntermediateThrowEvent ||
               (n.kind == NodeKind::Task && n.task_kind == TaskKind::Send);
    }

    std::vector<MessageBinding> messages(const bpmn::FlowNode& n, const calc::Group& group, bool incoming) {
        using K = ConversionError::Kind;
        std::vector<MessageBinding> out;
        for (const auto* mf : bpmn::message_flows_at(diagram_, n.id, incoming)) {
            auto it = cfg_.messages.find(mf->id);
            if (it == cfg_.messages.end())
                detail::fail(K::MissingMessageMeta, mf->id, "no message configured for message flow '" + mf->id + "'");
            out.push_back({calc::Name{mf->id}, it->second.name, it->second.type});
        }
        if (out.empty() && needs_message(n, incoming)) {
            auto it = cfg_.phantoms.find(n.id);
            if (it == cfg_.phantoms.end())
                detail::fail(K::MissingMessageMeta, n.id,
                             "'" + n.id + "' needs an " + (incoming ? "incoming" : "outgoing") +
                                 " message but has no message flow and no phantom configured");
            const PhantomMeta& ph = it->second;
            calc::PrivType chan_type = ph.channel_type.value_or(calc::PrivType::group_type(group, ph.type));
            out.push_back({calc::Name{ph.channel}, ph.name, ph.type});
            add_context(calc::Name{ph.channel}, chan_type, n.id);
            if (!recorded_phantoms_.contains(n.id)) {
                recorded_phantoms_.insert(n.id);
                phantoms_.push_back({n.id, ph.channel, ph.name, ph.type, chan_type, incoming});
            }
        }
        std::set<std::string> names;
        for (const auto& m : out)
            if (!names.insert(m.message).second && !incoming)
                detail::fail(K::NameClash, n.id, "'" + n.id + "' sends two messages named '" + m.message + "'");
        return out;
    }

    void add_context(const calc::Name& n, const calc::PrivType& t, const std::string& where) {
        auto [it, inserted] = context_.emplace(n, t);
        if (!inserted && !(it->second == t))
            detail::fail(ConversionError::Kind::NameClash, where,
                         "'" + calc::to_string(n) + "' is used with types " + calc::to_string(it->second) + " and " +
                             calc::to_string(t));
    }

    const ProcessMeta& meta_for(std::initializer_list<std::string> keys) {
        for (const auto& k : keys) {
            auto it = cfg_.processes.find(k);
            if (it != cfg_.processes.end()) {
                if (it->second.group.empty())
                    detail::fail(ConversionError::Kind::MissingGroup, k, "process '" + k + "' has no group");
                return it->second;
            }
        }
        detail::fail(ConversionError::Kind::MissingMeta, *keys.begin(),
                     "no group/purpose configured for '" + *keys.begin() + "'");
    }

    const ProcessMeta& meta_for(const bpmn::Participant& p) {
        if (const auto* g = p.process()) return meta_for({p.id, g->id});
        return meta_for({p.id});
    }

    static std::string var_id(const calc::Group& g) {
        std::string out = "P_";
        auto ids = g.atom_ids();
        for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "_" : "") + ids[i];
        return out;
    }

    calc::System convert_collaboration_system(const bpmn::Collaboration& c) {
        using K = ConversionError::Kind;
        std::vector<const bpmn::Participant*> parts;
        for (const auto& p : c.participants) parts.push_back(&p);
        std::sort(parts.begin(), parts.end(), [](auto* a, auto* b) { return a->id < b->id; });

        std::vector<calc::System> lifted;
        for (const auto* p : parts) {
            const ProcessMeta& meta = meta_for(*p);
            if (const auto* g = p->process())
                lifted.push_back(calc::lift(meta.group, meta.purpose, convert_graph(*g, meta.group, std::nullopt)));
            else
                lifted.push_back(calc::lift(meta.group, meta.purpose, calc::var(var_id(meta.group))));
        }
        calc::System body = calc::sys_par_all(lifted);

        std::vector<const bpmn::MessageFlow*> flows;
        for (const auto& m : c.message_flows) flows.push_back(&m);
        std::sort(flows.begin(), flows.end(), [](auto* a, auto* b) { return a->id < b->id; });
        std::vector<calc::Group> unions;
        std::vector<std::pair<std::string, calc::PrivType>> binders;
        for (const auto* m : flows) {
            const bpmn::Participant* src = bpmn::pool_of(diagram_, m->source);
            const bpmn::Participant* tgt = bpmn::pool_of(diagram_, m->target);
            if (!src || !tgt) detail::fail(K::ValidationRequired, m->id, "message flow '" + m->id + "' has no pool");
            calc::Group u = calc::Group::unite(meta_for(*src).group, meta_for(*tgt).group);
            auto it = cfg_.messages.find(m->id);
            if (it == cfg_.messages.end())
                detail::fail(K::MissingMessageMeta, m->id, "no message configured for message flow '" + m->id + "'");
            binders.emplace_back(m->id, calc::PrivType::group_type(u, it->second.type));
            if (std::find(unions.begin(), unions.end(), u) == unions.end()) unions.push_back(u);
        }
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = calc::sys_new(it->first, it->second, body);
        for (auto it = unions.rbegin(); it != unions.rend(); ++it) body = calc::group_bind(*it, body);
        return body;
    }

    /// Identifiers fresh names must avoid: everything the diagram or configuration names.
    static std::set<std::string> reserved_identifiers(const bpmn::Diagram& d, const ConversionConfig& cfg) {
        std::set<std::string> ids{cfg.token_type_name, cfg.token_value_name};
        auto graph = [&](const bpmn::ProcessGraph& g) {
            bpmn::for_each_graph(g, [&](const bpmn::ProcessGraph& x) {
                ids.insert(x.id);
                for (const auto& [id, _] : x.nodes) ids.insert(id);
                for (const auto& f : x.sequence_flows) {
                    ids.insert(f.id);
                    if (f.condition) {
                        ids.insert(f.condition->message);
                        ids.insert(f.condition->value);
                    }
                }
            });
        };
        if (const auto* g = d.single_process()) graph(*g);
        if (const auto* c = d.collaboration()) {
            ids.insert(c->id);
            for (const auto& p : c->participants) {
                ids.insert(p.id);
                if (const auto* g = p.process()) graph(*g);
            }
            for (const auto& m : c->message_flows) ids.insert(m.id);
        }
        for (const auto& [k, m] : cfg.processes) {
            ids.insert(k);
            ids.insert(m.purpose);
            for (const auto& a : m.group.atom_ids()) ids.insert(a);
        }
        for (const auto& [k, m] : cfg.messages) {
            ids.insert(k);
            ids.insert(m.name);
        }
        for (const auto& [k, m] : cfg.phantoms) {
            ids.insert(k);
            ids.insert(m.channel);
            ids.insert(m.name);
        }
        return ids;
    }

    /// Token and message binders must not capture channel names.
    void check_names() {
        using K = ConversionError::Kind;
        std::set<std::string> channels;
        std::set<std::string> others;
        auto graph = [&](const bpmn::ProcessGraph& g) {
            bpmn::for_each_graph(g, [&](const bpmn::ProcessGraph& x) {
                others.insert(x.id);
                for (const auto& [id, _] : x.nodes) others.insert(id);
                for (const auto& f : x.sequence_flows) {
                    channels.insert(f.id);
                    if (f.condition) others.insert(f.condition->value);
                }
            });
        };
        if (const auto* g = diagram_.single_process()) graph(*g);
        if (const auto* c = diagram_.collaboration()) {
            for (const auto& p : c->participants) {
                others.insert(p.id);
                if (const auto* g = p.process()) graph(*g);
            }
            for (const auto& m : c->message_flows) channels.insert(m.id);
        }
        for (const auto& [_, ph] : cfg_.phantoms) channels.insert(ph.channel);

        const std::string& t = cfg_.token_value_name;
        if (channels.contains(t) || others.contains(t))
            detail::fail(K::NameClash, t, "token value name '" + t + "' is also used by the diagram");
        auto check_message = [&](const std::string& m, const std::string& where) {
            if (m == t) detail::fail(K::NameClash, where, "message name '" + m + "' equals the token value name");
            if (channels.contains(m))
                detail::fail(K::NameClash, where, "message name '" + m + "' equals a channel name");
        };
        for (const auto& [k, m] : cfg_.messages) check_message(m.name, k);
        for (const auto& [k, m] : cfg_.phantoms) check_message(m.name, k);
    }

    void check_phantom_targets() {
        for (const auto& [node_id, _] : cfg_.phantoms) {
            auto loc = bpmn::locate(diagram_, node_id);
            if (!loc)
                detail::fail(ConversionError::Kind::MissingMeta, node_id,
                             "phantom configured for unknown node '" + node_id + "'");
            bool in_needed = needs_message(*loc->node, true) && bpmn::message_flows_at(diagram_, node_id, true).empty();
            bool out_needed = needs_message(*loc->node, false) && bpmn::message_flows_at(diagram_, node_id, false).empty();
            if (!in_needed && !out_needed)
                detail::fail(ConversionError::Kind::UnsupportedNode, node_id,
                             "phantom configured for '" + node_id + "', which needs no assumed message flow");
        }
    }

    const bpmn::Diagram& diagram_;
    const ConversionConfig& cfg_;
    FreshNames fresh_;
    std::map<calc::Name, calc::PrivType> context_;
    std::vector<PhantomChannel> phantoms_;
    std::set<std::string> recorded_phantoms_;
};

inline ConversionOutput convert_collaboration(const bpmn::Diagram& d, const ConversionConfig& cfg) {
    return Converter(d, cfg).run();
}

/// Top-level process as a system G,u{⟦M⟧}.
inline calc::System convert_process(const bpmn::ProcessGraph& p, const ConversionConfig& cfg) {
    return Converter(bpmn::Diagram{p}, cfg).run().system;
}

/// Sub-Process style conversion: no group/purpose decoration.
inline calc::Process convert_process_body(const bpmn::ProcessGraph& p, const ConversionConfig& cfg,
                                          const calc::Group& group,
                                          const std::optional<calc::Process>& end_cont = std::nullopt) {
    bpmn::Diagram d{p};
    Converter c(d, cfg);
    return c.convert_graph(p, group, end_cont);
}

}  // namespace bpmnpc::conv

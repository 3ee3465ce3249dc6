#pragma once

#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "bpmnpc/bpmn/model.hpp"

namespace bpmnpc::bpmn {

class ParseError : public std::runtime_error {
public:
    enum class Kind { MalformedXml, UnresolvedReference, UnsupportedElement };

    ParseError(Kind kind, std::string element, std::string id, const std::string& what)
        : std::runtime_error(what), kind_(kind), element_(std::move(element)), id_(std::move(id)) {}

    Kind kind() const { return kind_; }
    /// Element or attribute kind involved (UnsupportedElement), else empty.
    const std::string& element() const { return element_; }
    const std::string& id() const { return id_; }

private:
    Kind kind_;
    std::string element_;
    std::string id_;
};

namespace detail {

namespace pt = boost::property_tree;

inline std::string_view local_name(std::string_view key) {
    auto colon = key.rfind(':');
    return colon == std::string_view::npos ? key : key.substr(colon + 1);
}

inline bool is_meta_key(std::string_view key) { return key == "<xmlattr>" || key == "<xmlcomment>" || key == "<xmltext>"; }

inline std::optional<std::string> attr(const pt::ptree& node, const std::string& name) {
    if (auto a = node.get_child_optional("<xmlattr>"))
        for (const auto& [k, v] : *a)
            if (local_name(k) == name) return v.data();
    return std::nullopt;
}

inline std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] inline void unsupported(std::string_view element, const std::string& id) {
    throw ParseError(ParseError::Kind::UnsupportedElement, std::string(element), id,
                     "unsupported element '" + std::string(element) + "'" + (id.empty() ? "" : " at '" + id + "'"));
}

[[noreturn]] inline void malformed(const std::string& what) {
    throw ParseError(ParseError::Kind::MalformedXml, "", "", what);
}

[[noreturn]] inline void unresolved(const std::string& id, const std::string& ref) {
    throw ParseError(ParseError::Kind::UnresolvedReference, "", id, "'" + id + "' references unknown '" + ref + "'");
}

inline const std::set<std::string, std::less<>>& excluded_elements() {
    static const std::set<std::string, std::less<>> s{
        "laneSet",           "lane",
        "dataObject",        "dataObjectReference",
        "dataStore",         "dataStoreReference",
        "dataInput",         "dataOutput",
        "dataInputAssociation", "dataOutputAssociation",
        "boundaryEvent",     "complexGateway",
        "inclusiveGateway",  "eventBasedGateway",
        "scriptTask",        "serviceTask",
        "businessRuleTask",  "callActivity",
        "transaction",       "adHocSubProcess",
        "choreography",      "choreographyTask",
        "subChoreography",   "callChoreography",
        "intermediateEvent", "implicitThrowEvent",
        "standardLoopCharacteristics", "multiInstanceLoopCharacteristics",
    };
    return s;
}

inline const std::set<std::string, std::less<>>& ignored_elements() {
    static const std::set<std::string, std::less<>> s{
        "incoming", "outgoing", "documentation", "extensionElements", "textAnnotation",
        "association", "group", "ioSpecification", "property", "category",
    };
    return s;
}

inline std::optional<Condition> parse_condition(const std::string& text) {
    static const std::regex re(R"(^\s*([A-Za-z_][A-Za-z0-9_-]*)\s*(==|!=)\s*([A-Za-z_][A-Za-z0-9_-]*)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) return std::nullopt;
    return Condition{m[2] == "==" ? Condition::Op::Eq : Condition::Op::Neq, m[1], m[3]};
}

class Reader {
public:
    Diagram read(std::istream& in) {
        pt::ptree doc;
        try {
            pt::read_xml(in, doc, pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
        } catch (const pt::xml_parser_error& e) {
            malformed(std::string("malformed XML: ") + e.what());
        }
        const pt::ptree* defs = nullptr;
        for (const auto& [k, v] : doc)
            if (local_name(k) == "definitions") defs = &v;
        if (!defs) malformed("missing definitions element");

        std::map<std::string, const pt::ptree*> processes;
        std::vector<const pt::ptree*> collaborations;
        for (const auto& [k, v] : *defs) {
            if (is_meta_key(k)) continue;
            auto ln = local_name(k);
            if (ln == "process") {
                std::string id = required_id(v, "process");
                processes.emplace(id, &v);
            } else if (ln == "collaboration") {
                collaborations.push_back(&v);
            } else if (excluded_elements().contains(ln) || ln == "conversation") {
                unsupported(ln, attr(v, "id").value_or(""));
            }
        }

        if (collaborations.size() > 1) unsupported("collaboration", attr(*collaborations[1], "id").value_or(""));
        if (collaborations.empty()) {
            if (processes.empty()) malformed("no process element");
            if (processes.size() > 1) unsupported("process", std::next(processes.begin())->first);
            const auto& [id, node] = *processes.begin();
            return Diagram{read_graph(*node, id, std::nullopt)};
        }
        return Diagram{read_collaboration(*collaborations.front(), processes)};
    }

private:
    std::string required_id(const pt::ptree& node, std::string_view what) {
        auto id = attr(node, "id");
        if (!id || id->empty()) malformed(std::string(what) + " without id");
        if (!ids_.insert(*id).second) malformed("duplicate id '" + *id + "'");
        return *id;
    }

    Collaboration read_collaboration(const pt::ptree& node, const std::map<std::string, const pt::ptree*>& processes) {
        Collaboration c;
        c.id = required_id(node, "collaboration");
        std::set<std::string> used;
        std::vector<const pt::ptree*> flows;
        for (const auto& [k, v] : node) {
            if (is_meta_key(k)) continue;
            auto ln = local_name(k);
            if (ln == "participant") {
                Participant p;
                p.id = required_id(v, "participant");
                p.name = attr(v, "name");
                if (v.get_child_optional("participantMultiplicity") || has_child(v, "participantMultiplicity"))
                    unsupported("participantMultiplicity", p.id);
                auto ref = attr(v, "processRef");
                if (ref) {
                    auto it = processes.find(*ref);
                    if (it == processes.end()) unresolved(p.id, *ref);
                    if (!used.insert(*ref).second) unsupported("shared processRef", p.id);
                    ProcessGraph g = read_graph(*it->second, *ref, std::nullopt);
                    if (g.nodes.empty() && g.sequence_flows.empty())
                        p.body = BlackBox{};
                    else
                        p.body = std::move(g);
                } else {
                    p.body = BlackBox{};
                }
                c.participants.push_back(std::move(p));
            } else if (ln == "messageFlow") {
                flows.push_back(&v);
            } else if (excluded_elements().contains(ln) || ln == "conversation" || ln == "conversationLink") {
                unsupported(ln, attr(v, "id").value_or(""));
            }
        }
        for (const auto& [id, _] : processes)
            if (!used.contains(id)) unsupported("process outside any participant", id);
        if (c.participants.empty()) malformed("collaboration '" + c.id + "' has no participant");

        Diagram probe{c};
        for (const auto* v : flows) {
            MessageFlow m;
            m.id = required_id(*v, "messageFlow");
            m.name = attr(*v, "name");
            m.source = attr(*v, "sourceRef").value_or("");
            m.target = attr(*v, "targetRef").value_or("");
            for (const auto& end : {m.source, m.target})
                if (!find_participant(c, end) && !locate(probe, end)) unresolved(m.id, end);
            if (find_participant(c, m.source) && find_participant(c, m.target))
                unsupported("messageFlow between pools", m.id);
            c.message_flows.push_back(std::move(m));
        }
        return c;
    }

    static bool has_child(const pt::ptree& node, std::string_view name) {
        for (const auto& [k, _] : node)
            if (!is_meta_key(k) && local_name(k) == name) return true;
        return false;
    }

    static bool attr_true(const pt::ptree& node, const std::string& name) {
        auto a = attr(node, name);
        return a && (*a == "true" || *a == "1");
    }

    void event_definitions(const pt::ptree& v, FlowNode& n) {
        for (const auto& [k, child] : v) {
            if (is_meta_key(k)) continue;
            auto ln = local_name(k);
            if (ln == "messageEventDefinition")
                n.is_message = true;
            else if (ln.size() > 15 && ln.substr(ln.size() - 15) == "EventDefinition")
                unsupported(ln, n.id);
            else if (excluded_elements().contains(ln))
                unsupported(ln, n.id);
        }
    }

    void activity_checks(const pt::ptree& v, const std::string& id) {
        if (attr(v, "default")) unsupported("default", id);
        if (attr_true(v, "isForCompensation")) unsupported("isForCompensation", id);
        for (const auto& [k, _] : v) {
            if (is_meta_key(k)) continue;
            auto ln = local_name(k);
            if (excluded_elements().contains(ln)) unsupported(ln, id);
        }
    }

    ProcessGraph read_graph(const pt::ptree& node, const std::string& id, std::optional<std::string> parent) {
        ProcessGraph g;
        g.id = id;
        g.name = attr(node, "name");
        g.parent = std::move(parent);
        std::vector<const pt::ptree*> flows;
        for (const auto& [k, v] : node) {
            if (is_meta_key(k)) continue;
            auto ln = local_name(k);
            if (ln == "sequenceFlow") {
                flows.push_back(&v);
                continue;
            }
            if (ignored_elements().contains(ln)) continue;
            if (excluded_elements().contains(ln)) unsupported(ln, attr(v, "id").value_or(""));

            FlowNode n;
            if (ln == "startEvent" || ln == "endEvent") {
                n.id = required_id(v, ln);
                n.kind = ln == "startEvent" ? NodeKind::StartEvent : NodeKind::EndEvent;
                event_definitions(v, n);
            } else if (ln == "intermediateCatchEvent" || ln == "intermediateThrowEvent") {
                n.id = required_id(v, ln);
                n.kind = ln == "intermediateCatchEvent" ? NodeKind::IntermediateCatchEvent
                                                         : NodeKind::IntermediateThrowEvent;
                event_definitions(v, n);
                if (!n.is_message) unsupported(std::string(ln) + " without message definition", n.id);
            } else if (ln == "task" || ln == "sendTask" || ln == "receiveTask" || ln == "userTask" ||
                       ln == "manualTask") {
                n.id = required_id(v, ln);
                n.kind = NodeKind::Task;
                n.task_kind = ln == "sendTask"      ? TaskKind::Send
                              : ln == "receiveTask" ? TaskKind::Receive
                              : ln == "userTask"    ? TaskKind::User
                              : ln == "manualTask"  ? TaskKind::Manual
                                                    : TaskKind::Abstract;
                activity_checks(v, n.id);
            } else if (ln == "parallelGateway" || ln == "exclusiveGateway") {
                n.id = required_id(v, ln);
                n.kind = ln == "parallelGateway" ? NodeKind::ParallelGateway : NodeKind::ExclusiveGateway;
                activity_checks(v, n.id);
            } else if (ln == "subProcess") {
                n.id = required_id(v, ln);
                n.kind = NodeKind::SubProcess;
                if (attr_true(v, "triggeredByEvent")) unsupported("event subProcess", n.id);
                if (attr(v, "default")) unsupported("default", n.id);
                for (const auto& [ck, cv] : v) {
                    if (is_meta_key(ck)) continue;
                    auto cln = local_name(ck);
                    if (cln == "multiInstanceLoopCharacteristics") {
                        if (attr_true(cv, "isSequential")) unsupported("sequential multiInstanceLoopCharacteristics", n.id);
                        n.multi_instance_parallel = true;
                    } else if (cln == "standardLoopCharacteristics") {
                        unsupported(cln, n.id);
                    }
                }
                pt::ptree body_only;
                for (const auto& [ck, cv] : v) {
                    auto cln = local_name(ck);
                    if (cln != "multiInstanceLoopCharacteristics") body_only.add_child(ck, cv);
                }
                n.body = std::make_shared<const ProcessGraph>(read_graph(body_only, n.id, n.id));
            } else {
                unsupported(ln, attr(v, "id").value_or(""));
            }
            n.name = attr(v, "name");
            std::string nid = n.id;
            g.nodes.emplace(std::move(nid), std::move(n));
        }
        for (const auto* v : flows) {
            SequenceFlow f;
            f.id = required_id(*v, "sequenceFlow");
            f.source = attr(*v, "sourceRef").value_or("");
            f.target = attr(*v, "targetRef").value_or("");
            if (!g.find(f.source)) unresolved(f.id, f.source);
            if (!g.find(f.target)) unresolved(f.id, f.target);
            for (const auto& [k, cv] : *v) {
                if (is_meta_key(k)) continue;
                if (local_name(k) == "conditionExpression") {
                    auto c = parse_condition(trim(cv.data()));
                    if (!c) unsupported("conditionExpression '" + trim(cv.data()) + "'", f.id);
                    f.condition = std::move(c);
                }
            }
            g.sequence_flows.push_back(std::move(f));
        }
        return g;
    }

    std::set<std::string> ids_;
};

class Writer {
public:
    std::string write(const Diagram& d) {
        pt::ptree defs;
        defs.put("<xmlattr>.xmlns:bpmn", "http://www.omg.org/spec/BPMN/20100524/MODEL");
        defs.put("<xmlattr>.xmlns:xsi", "http://www.w3.org/2001/XMLSchema-instance");
        defs.put("<xmlattr>.id", "definitions");
        if (const auto* p = d.single_process()) {
            defs.add_child("bpmn:process", graph(*p));
        } else {
            const auto& c = *d.collaboration();
            pt::ptree col;
            col.put("<xmlattr>.id", c.id);
            for (const auto& part : c.participants) {
                pt::ptree x;
                x.put("<xmlattr>.id", part.id);
                if (part.name) x.put("<xmlattr>.name", *part.name);
                if (const auto* g = part.process()) x.put("<xmlattr>.processRef", g->id);
                col.add_child("bpmn:participant", x);
            }
            for (const auto& m : c.message_flows) {
                pt::ptree x;
                x.put("<xmlattr>.id", m.id);
                if (m.name) x.put("<xmlattr>.name", *m.name);
                x.put("<xmlattr>.sourceRef", m.source);
                x.put("<xmlattr>.targetRef", m.target);
                col.add_child("bpmn:messageFlow", x);
            }
            defs.add_child("bpmn:collaboration", col);
            for (const auto& part : c.participants)
                if (const auto* g = part.process()) defs.add_child("bpmn:process", graph(*g));
        }
        pt::ptree doc;
        doc.add_child("bpmn:definitions", defs);
        std::ostringstream os;
        pt::write_xml(os, doc, pt::xml_writer_make_settings<std::string>(' ', 2));
        return os.str();
    }

private:
    static pt::ptree graph(const ProcessGraph& g) {
        pt::ptree x;
        x.put("<xmlattr>.id", g.id);
        if (g.name) x.put("<xmlattr>.name", *g.name);
        for (const auto& [_, n] : g.nodes) {
            pt::ptree e;
            if (n.kind == NodeKind::SubProcess && n.body) e = graph(*n.body);
            e.put("<xmlattr>.id", n.id);
            if (n.name)
                e.put("<xmlattr>.name", *n.name);
            else
                e.get_child("<xmlattr>").erase("name");
            std::string tag = n.kind == NodeKind::Task ? to_string(n.task_kind) : to_string(n.kind);
            if (n.is_message) e.add_child("bpmn:messageEventDefinition", pt::ptree{});
            if (n.multi_instance_parallel) e.add_child("bpmn:multiInstanceLoopCharacteristics", pt::ptree{});
            x.add_child("bpmn:" + tag, e);
        }
        for (const auto& f : g.sequence_flows) {
            pt::ptree e;
            e.put("<xmlattr>.id", f.id);
            e.put("<xmlattr>.sourceRef", f.source);
            e.put("<xmlattr>.targetRef", f.target);
            if (f.condition) {
                pt::ptree c(to_string(*f.condition));
                c.put("<xmlattr>.xsi:type", "bpmn:tFormalExpression");
                e.add_child("bpmn:conditionExpression", c);
            }
            x.add_child("bpmn:sequenceFlow", e);
        }
        return x;
    }
};

}  // namespace detail

inline Diagram parse_diagram(std::istream& in) { return detail::Reader{}.read(in); }

inline Diagram parse_diagram(std::string_view xml) {
    std::istringstream in{std::string(xml)};
    return parse_diagram(in);
}

/// BPMN XML for `d`, without diagram interchange; parse_diagram reads it back to an equal Diagram.
inline std::string write_diagram(const Diagram& d) { return detail::Writer{}.write(d); }

}  // namespace bpmnpc::bpmn

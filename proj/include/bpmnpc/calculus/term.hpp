#pragma once

#include <iterator>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "bpmnpc/calculus/name.hpp"

namespace bpmnpc::calc {

struct ProcessNode;
struct SystemNode;

/// Immutable, shared process term. Copies are cheap; subterms are never mutated.
class Process {
public:
    Process();
    explicit Process(std::shared_ptr<const ProcessNode> node) : node_(std::move(node)) {}

    const ProcessNode& node() const { return *node_; }
    bool is_empty() const;

    friend bool operator==(const Process& a, const Process& b);

private:
    std::shared_ptr<const ProcessNode> node_;
};

class System {
public:
    System();
    explicit System(std::shared_ptr<const SystemNode> node) : node_(std::move(node)) {}

    const SystemNode& node() const { return *node_; }
    bool is_empty() const;

    friend bool operator==(const System& a, const System& b);

private:
    std::shared_ptr<const SystemNode> node_;
};

namespace proc {

struct Empty {
    friend bool operator==(const Empty&, const Empty&) = default;
};
struct Input {
    Name subject;
    std::string binder;
    PrivType type;
    Process cont;
    friend bool operator==(const Input&, const Input&) = default;
};
struct Output {
    Name subject;
    Name object;
    Process cont;
    friend bool operator==(const Output&, const Output&) = default;
};
struct Silent {
    Process cont;
    friend bool operator==(const Silent&, const Silent&) = default;
};
struct NewName {
    std::string base;
    PrivType type;
    Process cont;
    friend bool operator==(const NewName&, const NewName&) = default;
};
struct Par {
    Process left, right;
    friend bool operator==(const Par&, const Par&) = default;
};
struct Choice {
    Process left, right;
    friend bool operator==(const Choice&, const Choice&) = default;
};
/// if scrutinee=value then then_p else else_p
struct Cond {
    Name scrutinee;
    Name value;
    Process then_p, else_p;
    friend bool operator==(const Cond&, const Cond&) = default;
};
struct Repl {
    Process body;
    friend bool operator==(const Repl&, const Repl&) = default;
};
/// Opaque process variable (black-box participants). No transitions.
struct Var {
    std::string id;
    friend bool operator==(const Var&, const Var&) = default;
};

}  // namespace proc

namespace sys {

struct Empty {
    friend bool operator==(const Empty&, const Empty&) = default;
};
struct NewName {
    std::string base;
    PrivType type;
    System cont;
    friend bool operator==(const NewName&, const NewName&) = default;
};
struct Par {
    System left, right;
    friend bool operator==(const Par&, const Par&) = default;
};
struct GroupBind {
    Group group;
    System cont;
    friend bool operator==(const GroupBind&, const GroupBind&) = default;
};
/// G,u{P}
struct Lift {
    Group group;
    std::string purpose;
    Process body;
    friend bool operator==(const Lift&, const Lift&) = default;
};

}  // namespace sys

struct ProcessNode {
    std::variant<proc::Empty, proc::Input, proc::Output, proc::Silent, proc::NewName, proc::Par, proc::Choice,
                 proc::Cond, proc::Repl, proc::Var>
        v;
};

struct SystemNode {
    std::variant<sys::Empty, sys::NewName, sys::Par, sys::GroupBind, sys::Lift> v;
};

namespace detail {
inline const std::shared_ptr<const ProcessNode>& empty_process_node() {
    static const auto node = std::make_shared<const ProcessNode>(ProcessNode{proc::Empty{}});
    return node;
}
inline const std::shared_ptr<const SystemNode>& empty_system_node() {
    static const auto node = std::make_shared<const SystemNode>(SystemNode{sys::Empty{}});
    return node;
}
}  // namespace detail

inline Process::Process() : node_(detail::empty_process_node()) {}
inline bool Process::is_empty() const { return std::holds_alternative<proc::Empty>(node_->v); }
inline bool operator==(const Process& a, const Process& b) { return a.node_ == b.node_ || a.node_->v == b.node_->v; }

inline System::System() : node_(detail::empty_system_node()) {}
inline bool System::is_empty() const { return std::holds_alternative<sys::Empty>(node_->v); }
inline bool operator==(const System& a, const System& b) { return a.node_ == b.node_ || a.node_->v == b.node_->v; }

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Process constructors.

template <class T>
Process make_process(T node) {
    return Process(std::make_shared<const ProcessNode>(ProcessNode{std::move(node)}));
}

inline Process nil() { return Process{}; }
inline Process input(Name subject, std::string binder, PrivType type, Process cont) {
    return make_process(proc::Input{std::move(subject), std::move(binder), std::move(type), std::move(cont)});
}
inline Process output(Name subject, Name object, Process cont = {}) {
    return make_process(proc::Output{std::move(subject), std::move(object), std::move(cont)});
}
inline Process silent(Process cont) { return make_process(proc::Silent{std::move(cont)}); }
inline Process new_name(std::string base, PrivType type, Process cont) {
    return make_process(proc::NewName{std::move(base), std::move(type), std::move(cont)});
}
inline Process par(Process l, Process r) { return make_process(proc::Par{std::move(l), std::move(r)}); }
inline Process choice(Process l, Process r) { return make_process(proc::Choice{std::move(l), std::move(r)}); }
inline Process cond(Name scrutinee, Name value, Process then_p, Process else_p) {
    return make_process(proc::Cond{std::move(scrutinee), std::move(value), std::move(then_p), std::move(else_p)});
}
/// [x=v]P
inline Process when_equal(Name x, Name v, Process p) { return cond(std::move(x), std::move(v), std::move(p), nil()); }
/// [x≠v]P
inline Process when_unequal(Name x, Name v, Process p) { return cond(std::move(x), std::move(v), nil(), std::move(p)); }
inline Process repl(Process body) { return make_process(proc::Repl{std::move(body)}); }
inline Process var(std::string id) { return make_process(proc::Var{std::move(id)}); }

// System constructors.

template <class T>
System make_system(T node) {
    return System(std::make_shared<const SystemNode>(SystemNode{std::move(node)}));
}

inline System sys_nil() { return System{}; }
inline System sys_new(std::string base, PrivType type, System cont) {
    return make_system(sys::NewName{std::move(base), std::move(type), std::move(cont)});
}
inline System sys_par(System l, System r) { return make_system(sys::Par{std::move(l), std::move(r)}); }
inline System group_bind(Group g, System cont) { return make_system(sys::GroupBind{std::move(g), std::move(cont)}); }
inline System lift(Group g, std::string purpose, Process body) {
    return make_system(sys::Lift{std::move(g), std::move(purpose), std::move(body)});
}

/// Right-nested n-ary composition; empty input yields 0.
template <class Range>
Process par_all(const Range& items) {
    Process acc;
    bool first = true;
    for (auto it = std::rbegin(items); it != std::rend(items); ++it) {
        acc = first ? *it : par(*it, acc);
        first = false;
    }
    return acc;
}

template <class Range>
Process choice_all(const Range& items) {
    Process acc;
    bool first = true;
    for (auto it = std::rbegin(items); it != std::rend(items); ++it) {
        acc = first ? *it : choice(*it, acc);
        first = false;
    }
    return acc;
}

template <class Range>
System sys_par_all(const Range& items) {
    System acc;
    bool first = true;
    for (auto it = std::rbegin(items); it != std::rend(items); ++it) {
        acc = first ? *it : sys_par(*it, acc);
        first = false;
    }
    return acc;
}

/// Transition labels of the late semantics.
namespace label {
struct Tau {
    friend bool operator==(const Tau&, const Tau&) = default;
};
struct In {
    Name chan;
    std::string binder;
    friend bool operator==(const In&, const In&) = default;
};
struct Out {
    Name chan;
    Name object;
    friend bool operator==(const Out&, const Out&) = default;
};
/// x!(new b:T): the continuation has b at index 0 referring to the extruded name.
struct BoundOut {
    Name chan;
    std::string object;
    PrivType type;
    friend bool operator==(const BoundOut&, const BoundOut&) = default;
};
}  // namespace label

using Label = std::variant<label::Tau, label::In, label::Out, label::BoundOut>;

inline bool is_tau(const Label& l) { return std::holds_alternative<label::Tau>(l); }

/// Base bound by the label in its continuation, if any.
inline const std::string* label_binder(const Label& l) {
    if (const auto* in = std::get_if<label::In>(&l)) return &in->binder;
    if (const auto* bo = std::get_if<label::BoundOut>(&l)) return &bo->object;
    return nullptr;
}

inline std::string to_string(const Label& l) {
    return std::visit(overloaded{
                          [](const label::Tau&) -> std::string { return "tau"; },
                          [](const label::In& in) { return to_string(in.chan) + "?" + in.binder; },
                          [](const label::Out& o) { return to_string(o.chan) + "!" + to_string(o.object); },
                          [](const label::BoundOut& b) {
                              return to_string(b.chan) + "!(new " + b.object + ":" + to_string(b.type) + ")";
                          },
                      },
                      l);
}

}  // namespace bpmnpc::calc

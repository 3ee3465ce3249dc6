#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bpmnpc/calculus/cinni.hpp"
#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/calculus/print.hpp"

namespace bpmnpc::calc {

class LevelMismatch : public std::invalid_argument {
public:
    LevelMismatch() : std::invalid_argument("cannot compare a process with a system") {}
};

/// Binder bases are renamed to `_d`, d being the number of enclosing binders.
/// Every binder thus gets a base distinct from all binders around it, and the
/// canonical text of a subterm depends only on its nesting depth.
inline std::string canonical_binder(std::size_t depth) { return "_" + std::to_string(depth); }

template <Term T>
T alpha_canonical(const T& t) {
    auto rename = [](const std::string&, std::size_t depth) { return canonical_binder(depth); };
    auto keep = [](const Name& n) { return n; };
    detail::Rewriter rw(rename, keep);
    return rw(t);
}

template <Term T>
bool alpha_equivalent(const T& a, const T& b) {
    return alpha_canonical(a) == alpha_canonical(b);
}

namespace detail {

struct Keyed {
    std::string key;
    Process term;
};

inline Process rebuild(std::vector<Keyed>& ops, bool is_choice) {
    std::sort(ops.begin(), ops.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
    if (is_choice)
        ops.erase(std::unique(ops.begin(), ops.end(), [](const Keyed& a, const Keyed& b) { return a.key == b.key; }),
                  ops.end());
    std::vector<Process> terms;
    terms.reserve(ops.size());
    for (auto& k : ops) terms.push_back(std::move(k.term));
    return is_choice ? choice_all(terms) : par_all(terms);
}

Process structural_normal(const Process& p);

inline void flatten_par(const Process& p, std::vector<Keyed>& out) {
    if (const auto* pp = std::get_if<proc::Par>(&p.node().v)) {
        flatten_par(pp->left, out);
        flatten_par(pp->right, out);
        return;
    }
    Process n = structural_normal(p);
    if (const auto* np = std::get_if<proc::Par>(&n.node().v)) {
        // operand normalized into a parallel composition (e.g. a choice collapsing by idempotence)
        flatten_par(np->left, out);
        flatten_par(np->right, out);
        return;
    }
    if (n.is_empty()) return;
    out.push_back({print_term(n), std::move(n)});
}

inline void flatten_choice(const Process& p, std::vector<Keyed>& out) {
    if (const auto* c = std::get_if<proc::Choice>(&p.node().v)) {
        flatten_choice(c->left, out);
        flatten_choice(c->right, out);
        return;
    }
    Process n = structural_normal(p);
    if (const auto* nc = std::get_if<proc::Choice>(&n.node().v)) {
        flatten_choice(nc->left, out);
        flatten_choice(nc->right, out);
        return;
    }
    out.push_back({print_term(n), std::move(n)});
}

inline Process structural_normal(const Process& p) {
    return std::visit(overloaded{
                          [&](const proc::Empty&) { return p; },
                          [&](const proc::Var&) { return p; },
                          [&](const proc::Input& in) {
                              return input(in.subject, in.binder, in.type, structural_normal(in.cont));
                          },
                          [&](const proc::Output& o) { return output(o.subject, o.object, structural_normal(o.cont)); },
                          [&](const proc::Silent& s) { return silent(structural_normal(s.cont)); },
                          [&](const proc::NewName& nn) {
                              Process body = structural_normal(nn.cont);
                              return body.is_empty() ? nil() : new_name(nn.base, nn.type, std::move(body));
                          },
                          [&](const proc::Par&) {
                              std::vector<Keyed> ops;
                              flatten_par(p, ops);
                              return rebuild(ops, false);
                          },
                          [&](const proc::Choice&) {
                              std::vector<Keyed> ops;
                              flatten_choice(p, ops);
                              return rebuild(ops, true);
                          },
                          [&](const proc::Cond& c) {
                              return cond(c.scrutinee, c.value, structural_normal(c.then_p), structural_normal(c.else_p));
                          },
                          [&](const proc::Repl& r) {
                              Process body = structural_normal(r.body);
                              return body.is_empty() ? nil() : repl(std::move(body));
                          },
                      },
                      p.node().v);
}

struct KeyedSystem {
    std::string key;
    System term;
};

System structural_normal(const System& s);

inline void flatten_sys_par(const System& s, std::vector<KeyedSystem>& out) {
    if (const auto* pp = std::get_if<sys::Par>(&s.node().v)) {
        flatten_sys_par(pp->left, out);
        flatten_sys_par(pp->right, out);
        return;
    }
    System n = structural_normal(s);
    if (n.is_empty()) return;
    out.push_back({print_term(n), std::move(n)});
}

inline System structural_normal(const System& s) {
    return std::visit(overloaded{
                          [&](const sys::Empty&) { return s; },
                          [&](const sys::NewName& nn) {
                              System body = structural_normal(nn.cont);
                              return body.is_empty() ? sys_nil() : sys_new(nn.base, nn.type, std::move(body));
                          },
                          [&](const sys::Par&) {
                              std::vector<KeyedSystem> ops;
                              flatten_sys_par(s, ops);
                              std::sort(ops.begin(), ops.end(),
                                        [](const KeyedSystem& a, const KeyedSystem& b) { return a.key < b.key; });
                              std::vector<System> terms;
                              for (auto& k : ops) terms.push_back(std::move(k.term));
                              return sys_par_all(terms);
                          },
                          [&](const sys::GroupBind& g) {
                              System body = structural_normal(g.cont);
                              return body.is_empty() ? sys_nil() : group_bind(g.group, std::move(body));
                          },
                          [&](const sys::Lift& l) {
                              Process body = structural_normal(l.body);
                              return body.is_empty() ? sys_nil() : lift(l.group, l.purpose, std::move(body));
                          },
                      },
                      s.node().v);
}

}  // namespace detail

/// Congruence normal form: α-canonical, Par/Choice flattened and sorted,
/// Choice deduplicated, inert subterms removed.
template <Term T>
T normalize(const T& t) {
    return detail::structural_normal(alpha_canonical(t));
}

template <Term T>
bool congruent(const T& a, const T& b) {
    return normalize(a) == normalize(b);
}

inline bool congruent(const AnyTerm& a, const AnyTerm& b) {
    if (a.index() != b.index()) throw LevelMismatch();
    if (const auto* p = std::get_if<Process>(&a)) return congruent(*p, std::get<Process>(b));
    return congruent(std::get<System>(a), std::get<System>(b));
}

/// Printed normal form; equal keys iff congruent.
template <Term T>
std::string congruence_key(const T& t) {
    return print_term(normalize(t));
}

}  // namespace bpmnpc::calc

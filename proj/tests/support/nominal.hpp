#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bpmnpc/calculus/print.hpp"
#include "bpmnpc/calculus/term.hpp"

// Reference implementation with globally unique binder names. Every binder is
// renamed to `@k`, bound occurrences point at that name, free occurrences keep
// their outer index. Substitution is then plain textual replacement.
namespace bpmnpc::testing::nominal {

class Converter {
public:
    calc::Process operator()(const calc::Process& p) {
        using namespace calc;
        return std::visit(
            overloaded{
                [&](const proc::Empty&) { return nil(); },
                [&](const proc::Input& n) {
                    Name s = resolve(n.subject);
                    auto b = bind(n.binder);
                    Process c = (*this)(n.cont);
                    unbind();
                    return input(s, b, n.type, c);
                },
                [&](const proc::Output& n) { return output(resolve(n.subject), resolve(n.object), (*this)(n.cont)); },
                [&](const proc::Silent& n) { return silent((*this)(n.cont)); },
                [&](const proc::NewName& n) {
                    auto b = bind(n.base);
                    Process c = (*this)(n.cont);
                    unbind();
                    return new_name(b, n.type, c);
                },
                [&](const proc::Par& n) {
                    Process l = (*this)(n.left);
                    return par(l, (*this)(n.right));
                },
                [&](const proc::Choice& n) {
                    Process l = (*this)(n.left);
                    return choice(l, (*this)(n.right));
                },
                [&](const proc::Cond& n) {
                    Name s = resolve(n.scrutinee), v = resolve(n.value);
                    Process t = (*this)(n.then_p);
                    return cond(s, v, t, (*this)(n.else_p));
                },
                [&](const proc::Repl& n) { return repl((*this)(n.body)); },
                [&](const proc::Var& n) { return var(n.id); },
            },
            p.node().v);
    }

    calc::System operator()(const calc::System& s) {
        using namespace calc;
        return std::visit(overloaded{
                              [&](const sys::Empty&) { return sys_nil(); },
                              [&](const sys::NewName& n) {
                                  auto b = bind(n.base);
                                  System c = (*this)(n.cont);
                                  unbind();
                                  return sys_new(b, n.type, c);
                              },
                              [&](const sys::Par& n) {
                                  System l = (*this)(n.left);
                                  return sys_par(l, (*this)(n.right));
                              },
                              [&](const sys::GroupBind& n) { return group_bind(n.group, (*this)(n.cont)); },
                              [&](const sys::Lift& n) { return lift(n.group, n.purpose, (*this)(n.body)); },
                          },
                          s.node().v);
    }

private:
    std::string bind(const std::string& base) {
        std::string fresh = "@" + std::to_string(counter_++);
        scope_.push_back({base, fresh});
        return fresh;
    }
    void unbind() { scope_.pop_back(); }

    calc::Name resolve(const calc::Name& n) const {
        std::size_t skip = n.index;
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->first != n.base) continue;
            if (skip == 0) return calc::Name{it->second};
            --skip;
        }
        return calc::Name{n.base, skip};
    }

    std::vector<std::pair<std::string, std::string>> scope_;
    std::size_t counter_ = 0;
};

/// Unique-binder form; binders numbered in pre-order, so equal results mean α-equivalent inputs.
template <class T>
T to_nominal(const T& t) {
    Converter c;
    return c(t);
}

inline bool is_bound_name(const calc::Name& n) { return !n.base.empty() && n.base.front() == '@'; }

/// Textual substitution on a unique-binder term.
class Replace {
public:
    Replace(calc::Name a, calc::Name b) : a_(std::move(a)), b_(std::move(b)) {}

    calc::Name name(const calc::Name& n) const { return n == a_ ? b_ : n; }

    calc::Process operator()(const calc::Process& p) const {
        using namespace calc;
        return std::visit(
            overloaded{
                [&](const proc::Empty&) { return nil(); },
                [&](const proc::Input& n) { return input(name(n.subject), n.binder, n.type, (*this)(n.cont)); },
                [&](const proc::Output& n) { return output(name(n.subject), name(n.object), (*this)(n.cont)); },
                [&](const proc::Silent& n) { return silent((*this)(n.cont)); },
                [&](const proc::NewName& n) { return new_name(n.base, n.type, (*this)(n.cont)); },
                [&](const proc::Par& n) { return par((*this)(n.left), (*this)(n.right)); },
                [&](const proc::Choice& n) { return choice((*this)(n.left), (*this)(n.right)); },
                [&](const proc::Cond& n) {
                    return cond(name(n.scrutinee), name(n.value), (*this)(n.then_p), (*this)(n.else_p));
                },
                [&](const proc::Repl& n) { return repl((*this)(n.body)); },
                [&](const proc::Var& n) { return var(n.id); },
            },
            p.node().v);
    }

    calc::System operator()(const calc::System& s) const {
        using namespace calc;
        return std::visit(overloaded{
                              [&](const sys::Empty&) { return sys_nil(); },
                              [&](const sys::NewName& n) { return sys_new(n.base, n.type, (*this)(n.cont)); },
                              [&](const sys::Par& n) { return sys_par((*this)(n.left), (*this)(n.right)); },
                              [&](const sys::GroupBind& n) { return group_bind(n.group, (*this)(n.cont)); },
                              [&](const sys::Lift& n) { return lift(n.group, n.purpose, (*this)(n.body)); },
                          },
                          s.node().v);
    }

private:
    calc::Name a_, b_;
};

template <class T>
T subst(const T& nominal_term, const calc::Name& a, const calc::Name& b) {
    return Replace(a, b)(nominal_term);
}

/// Free names of a unique-binder term: every name that is not an `@k` binder.
template <class T>
std::set<calc::Name> free_names(const T& nominal_term) {
    class Visitor {
    public:
        explicit Visitor(std::set<calc::Name>& o) : out_(o) {}
        void name(const calc::Name& n) {
            if (!is_bound_name(n)) out_.insert(n);
        }
        void operator()(const calc::Process& p) {
            using namespace calc;
            std::visit(overloaded{
                           [&](const proc::Empty&) {},
                           [&](const proc::Input& n) {
                               name(n.subject);
                               (*this)(n.cont);
                           },
                           [&](const proc::Output& n) {
                               name(n.subject);
                               name(n.object);
                               (*this)(n.cont);
                           },
                           [&](const proc::Silent& n) { (*this)(n.cont); },
                           [&](const proc::NewName& n) { (*this)(n.cont); },
                           [&](const proc::Par& n) {
                               (*this)(n.left);
                               (*this)(n.right);
                           },
                           [&](const proc::Choice& n) {
                               (*this)(n.left);
                               (*this)(n.right);
                           },
                           [&](const proc::Cond& n) {
                               name(n.scrutinee);
                               name(n.value);
                               (*this)(n.then_p);
                               (*this)(n.else_p);
                           },
                           [&](const proc::Repl& n) { (*this)(n.body); },
                           [&](const proc::Var&) {},
                       },
                       p.node().v);
        }
        void operator()(const calc::System& s) {
            using namespace calc;
            std::visit(overloaded{
                           [&](const sys::Empty&) {},
                           [&](const sys::NewName& n) { (*this)(n.cont); },
                           [&](const sys::Par& n) {
                               (*this)(n.left);
                               (*this)(n.right);
                           },
                           [&](const sys::GroupBind& n) { (*this)(n.cont); },
                           [&](const sys::Lift& n) { (*this)(n.body); },
                       },
                       s.node().v);
        }

    private:
        std::set<calc::Name>& out_;
    };
    std::set<calc::Name> out;
    Visitor v(out);
    v(nominal_term);
    return out;
}

/// Printed unique-binder form: equal strings iff the original terms are α-equivalent.
template <class T>
std::string key(const T& t) {
    return calc::print_term(to_nominal(t));
}

}  // namespace bpmnpc::testing::nominal

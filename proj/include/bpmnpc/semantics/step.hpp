#pragma once

// One-step late transitions. Rules are applied to the congruence normal form of
// the input, which accounts for (Congr); targets are normalized again.
//
// Input and bound-output transitions are abstractions: the label's binder base
// occurs at index 0 in the target. (Par) and (Repl) lift the passive side past
// that binder instead of checking a freshness side condition; (Comm)/(Close)
// discharge the abstraction by instantiation.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "bpmnpc/calculus/cinni.hpp"
#include "bpmnpc/calculus/congruence.hpp"
#include "bpmnpc/calculus/print.hpp"

namespace bpmnpc::sem {

template <calc::Term T>
struct Transition {
    calc::Label label;
    T target;
};

namespace detail {

inline calc::Process wrap_new(std::string base, calc::PrivType ty, calc::Process body) {
    return calc::new_name(std::move(base), std::move(ty), std::move(body));
}
inline calc::System wrap_new(std::string base, calc::PrivType ty, calc::System body) {
    return calc::sys_new(std::move(base), std::move(ty), std::move(body));
}
inline calc::Process compose(calc::Process l, calc::Process r) { return calc::par(std::move(l), std::move(r)); }
inline calc::System compose(calc::System l, calc::System r) { return calc::sys_par(std::move(l), std::move(r)); }

template <calc::Term T>
T lift_past(const T& passive, const calc::Label& l) {
    const std::string* b = calc::label_binder(l);
    return b ? calc::shift_up(passive, *b) : passive;
}

std::vector<Transition<calc::Process>> raw_steps(const calc::Process& p);
std::vector<Transition<calc::System>> raw_steps(const calc::System& s);

/// (Open) and (ResN) for a binder `a:ty` over the transitions of its scope.
template <calc::Term T>
std::vector<Transition<T>> restrict(const std::string& a, const calc::PrivType& ty, std::vector<Transition<T>> inner) {
    const calc::Name a0{a, 0};
    std::vector<Transition<T>> out;
    for (auto& tr : inner) {
        if (const auto* o = std::get_if<calc::label::Out>(&tr.label)) {
            if (o->object == a0 && o->chan != a0) {
                out.push_back({calc::label::BoundOut{calc::shift_down(o->chan, a), a, ty}, std::move(tr.target)});
                continue;
            }
        }
        if (calc::free_names(tr.label).contains(a0)) continue;
        calc::Label l = calc::shift_down(tr.label, a);
        const std::string* b = calc::label_binder(l);
        T body = (b && *b == a) ? calc::swap_adjacent(tr.target, a) : std::move(tr.target);
        out.push_back({std::move(l), wrap_new(a, ty, std::move(body))});
    }
    return out;
}

/// (Comm)/(Close) between an input transition and an output transition.
template <calc::Term T>
void interact(const Transition<T>& in_tr, const Transition<T>& out_tr, bool input_on_left,
              std::vector<Transition<T>>& out) {
    const auto* in = std::get_if<calc::label::In>(&in_tr.label);
    if (!in) return;
    auto place = [&](T input_side, T output_side) {
        return input_on_left ? compose(std::move(input_side), std::move(output_side))
                             : compose(std::move(output_side), std::move(input_side));
    };
    if (const auto* o = std::get_if<calc::label::Out>(&out_tr.label)) {
        if (o->chan != in->chan) return;
        out.push_back({calc::label::Tau{}, place(calc::instantiate(in_tr.target, in->binder, o->object), out_tr.target)});
    } else if (const auto* bo = std::get_if<calc::label::BoundOut>(&out_tr.label)) {
        if (bo->chan != in->chan) return;
        T body = place(calc::instantiate_under(in_tr.target, in->binder, bo->object), out_tr.target);
        out.push_back({calc::label::Tau{}, wrap_new(bo->object, bo->type, std::move(body))});
    }
}

/// (Par) on both sides plus (Comm)/(Close) in both orders.
template <calc::Term T>
std::vector<Transition<T>> par_steps(const T& left, const T& right) {
    auto ls = raw_steps(left);
    auto rs = raw_steps(right);
    std::vector<Transition<T>> out;
    for (const auto& tr : ls) out.push_back({tr.label, compose(tr.target, lift_past(right, tr.label))});
    for (const auto& tr : rs) out.push_back({tr.label, compose(lift_past(left, tr.label), tr.target)});
    for (const auto& a : ls) {
        for (const auto& b : rs) {
            interact(a, b, true, out);
            interact(b, a, false, out);
        }
    }
    return out;
}

inline std::vector<Transition<calc::Process>> raw_steps(const calc::Process& p) {
    using namespace calc;
    using Out = std::vector<Transition<Process>>;
    return std::visit(overloaded{
                          [](const proc::Empty&) { return Out{}; },
                          [](const proc::Var&) { return Out{}; },
                          [](const proc::Input& in) { return Out{{label::In{in.subject, in.binder}, in.cont}}; },
                          [](const proc::Output& o) { return Out{{label::Out{o.subject, o.object}, o.cont}}; },
                          [](const proc::Silent& s) { return Out{{label::Tau{}, s.cont}}; },
                          [](const proc::NewName& nn) { return restrict(nn.base, nn.type, raw_steps(nn.cont)); },
                          [](const proc::Par& pp) { return par_steps(pp.left, pp.right); },
                          [](const proc::Choice& c) {
                              Out out = raw_steps(c.left);
                              Out more = raw_steps(c.right);
                              out.insert(out.end(), more.begin(), more.end());
                              return out;
                          },
                          [](const proc::Cond& c) {
                              return c.scrutinee == c.value ? raw_steps(c.then_p) : raw_steps(c.else_p);
                          },
                          [&p](const proc::Repl& r) {
                              Out out;
                              for (auto& tr : raw_steps(r.body))
                                  out.push_back({tr.label, par(tr.target, lift_past(p, tr.label))});
                              return out;
                          },
                      },
                      p.node().v);
}

inline std::vector<Transition<calc::System>> raw_steps(const calc::System& s) {
    using namespace calc;
    using Out = std::vector<Transition<System>>;
    return std::visit(overloaded{
                          [](const sys::Empty&) { return Out{}; },
                          [](const sys::NewName& nn) { return restrict(nn.base, nn.type, raw_steps(nn.cont)); },
                          [](const sys::Par& pp) { return par_steps(pp.left, pp.right); },
                          [](const sys::GroupBind& g) {
                              Out out;
                              for (auto& tr : raw_steps(g.cont)) out.push_back({tr.label, group_bind(g.group, tr.target)});
                              return out;
                          },
                          [](const sys::Lift& l) {
                              Out out;
                              for (auto& tr : raw_steps(l.body))
                                  out.push_back({tr.label, lift(l.group, l.purpose, tr.target)});
                              return out;
                          },
                      },
                      s.node().v);
}

}  // namespace detail

/// All one-step transitions of `t`, targets in congruence normal form, without
/// duplicates, ordered by printed label then printed target.
template <calc::Term T>
std::vector<Transition<T>> step(const T& t) {
    auto raw = detail::raw_steps(calc::normalize(t));
    struct Entry {
        std::string label_key;
        std::string target_key;
        Transition<T> tr;
    };
    std::vector<Entry> entries;
    entries.reserve(raw.size());
    for (auto& tr : raw) {
        T target = calc::normalize(tr.target);
        std::string tk = calc::print_term(target);
        entries.push_back({calc::to_string(tr.label), std::move(tk), {std::move(tr.label), std::move(target)}});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.label_key, a.target_key) < std::tie(b.label_key, b.target_key);
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const Entry& a, const Entry& b) {
                                  return a.label_key == b.label_key && a.target_key == b.target_key;
                              }),
                  entries.end());
    std::vector<Transition<T>> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(std::move(e.tr));
    return out;
}

/// Label with its binder erased; two transitions agree up to α iff their
/// shapes match and their targets agree once the binder is instantiated.
inline std::string label_shape(const calc::Label& l) {
    using namespace calc;
    return std::visit(overloaded{
                          [](const label::Tau&) -> std::string { return "tau"; },
                          [](const label::In& in) { return to_string(in.chan) + "?"; },
                          [](const label::Out& o) { return to_string(o.chan) + "!" + to_string(o.object); },
                          [](const label::BoundOut& b) { return to_string(b.chan) + "!(new:" + to_string(b.type) + ")"; },
                      },
                      l);
}

/// Key identifying a transition up to α: label shape plus the normal form of
/// the target with the label binder (if any) replaced by `probe`.
template <calc::Term T>
std::string transition_key(const Transition<T>& tr, const calc::Name& probe = calc::Name{"%probe"}) {
    const std::string* b = calc::label_binder(tr.label);
    T target = b ? calc::instantiate(tr.target, *b, probe) : tr.target;
    return label_shape(tr.label) + " => " + calc::congruence_key(target);
}

}  // namespace bpmnpc::sem

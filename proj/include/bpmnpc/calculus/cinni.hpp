#pragma once

// Index-aware name operations. Every operation here is an instance of one traversal:
// walk the term keeping a stack of crossed binders, resolve each name occurrence
// against it, and rewrite free occurrences through a function on outer-level names.

#include <concepts>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bpmnpc/calculus/term.hpp"

namespace bpmnpc::calc {

template <class T>
concept Term = std::same_as<T, Process> || std::same_as<T, System>;

namespace detail {

class BinderStack {
public:
    struct Frame {
        std::string original;
        std::string renamed;
    };

    BinderStack() = default;
    explicit BinderStack(std::vector<Frame> initial) : frames_(std::move(initial)) {}

    void push(std::string original, std::string renamed) { frames_.push_back({std::move(original), std::move(renamed)}); }
    void pop() { frames_.pop_back(); }
    std::size_t depth() const { return frames_.size(); }

    /// Rewrites one occurrence. Bound occurrences follow their binder's new base;
    /// free ones go through `free_map` (outer-level name in, outer-level name out)
    /// and are re-lifted past the renamed binders.
    template <class FreeMap>
    Name resolve(const Name& n, FreeMap& free_map) const {
        std::size_t seen = 0;
        for (std::size_t k = frames_.size(); k-- > 0;) {
            if (frames_[k].original != n.base) continue;
            if (seen == n.index) {
                const std::string& nb = frames_[k].renamed;
                std::size_t idx = 0;
                for (std::size_t j = k + 1; j < frames_.size(); ++j)
                    if (frames_[j].renamed == nb) ++idx;
                return Name{nb, idx};
            }
            ++seen;
        }
        Name mapped = free_map(Name{n.base, n.index - seen});
        for (const auto& f : frames_)
            if (f.renamed == mapped.base) ++mapped.index;
        return mapped;
    }

private:
    std::vector<Frame> frames_;
};

template <class Rename, class FreeMap>
class Rewriter {
public:
    Rewriter(Rename rename, FreeMap free_map, BinderStack stack = {})
        : rename_(std::move(rename)), free_map_(std::move(free_map)), stack_(std::move(stack)) {}

    Name name(const Name& n) { return stack_.resolve(n, free_map_); }

    Process operator()(const Process& p) {
        return std::visit(
            overloaded{
                [&](const proc::Empty&) { return p; },
                [&](const proc::Var&) { return p; },
                [&](const proc::Input& in) {
                    Name subject = name(in.subject);
                    std::string nb = rename_(in.binder, stack_.depth());
                    stack_.push(in.binder, nb);
                    Process cont = (*this)(in.cont);
                    stack_.pop();
                    return input(std::move(subject), std::move(nb), in.type, std::move(cont));
                },
                [&](const proc::Output& out) {
                    Name subject = name(out.subject);
                    Name object = name(out.object);
                    return output(std::move(subject), std::move(object), (*this)(out.cont));
                },
                [&](const proc::Silent& s) { return silent((*this)(s.cont)); },
                [&](const proc::NewName& nn) {
                    std::string nb = rename_(nn.base, stack_.depth());
                    stack_.push(nn.base, nb);
                    Process cont = (*this)(nn.cont);
                    stack_.pop();
                    return new_name(std::move(nb), nn.type, std::move(cont));
                },
                [&](const proc::Par& pp) {
                    Process l = (*this)(pp.left);
                    return par(std::move(l), (*this)(pp.right));
                },
                [&](const proc::Choice& c) {
                    Process l = (*this)(c.left);
                    return choice(std::move(l), (*this)(c.right));
                },
                [&](const proc::Cond& c) {
                    Name x = name(c.scrutinee);
                    Name v = name(c.value);
                    Process t = (*this)(c.then_p);
                    return cond(std::move(x), std::move(v), std::move(t), (*this)(c.else_p));
                },
                [&](const proc::Repl& r) { return repl((*this)(r.body)); },
            },
            p.node().v);
    }

    System operator()(const System& s) {
        return std::visit(overloaded{
                              [&](const sys::Empty&) { return s; },
                              [&](const sys::NewName& nn) {
                                  std::string nb = rename_(nn.base, stack_.depth());
                                  stack_.push(nn.base, nb);
                                  System cont = (*this)(nn.cont);
                                  stack_.pop();
                                  return sys_new(std::move(nb), nn.type, std::move(cont));
                              },
                              [&](const sys::Par& pp) {
                                  System l = (*this)(pp.left);
                                  return sys_par(std::move(l), (*this)(pp.right));
                              },
                              [&](const sys::GroupBind& g) { return group_bind(g.group, (*this)(g.cont)); },
                              [&](const sys::Lift& l) { return lift(l.group, l.purpose, (*this)(l.body)); },
                          },
                          s.node().v);
    }

private:
    Rename rename_;
    FreeMap free_map_;
    BinderStack stack_;
};

struct KeepBinder {
    std::string operator()(const std::string& base, std::size_t) const { return base; }
};

inline Name shift_up_name(Name n, const std::string& base) {
    if (n.base == base) ++n.index;
    return n;
}

}  // namespace detail

/// Rewrites every free occurrence through `f`, which sees and returns names as
/// they read from outside the term. Binders are left alone; results are re-indexed
/// so they are never captured.
template <Term T, class F>
T map_free(const T& t, F f) {
    detail::Rewriter rw(detail::KeepBinder{}, std::move(f));
    return rw(t);
}

template <Term T>
std::set<Name> free_names(const T& t) {
    std::set<Name> out;
    auto collect = [&out](const Name& n) {
        out.insert(n);
        return n;
    };
    detail::Rewriter rw(detail::KeepBinder{}, collect);
    (void)rw(t);
    return out;
}

inline std::set<Name> free_names(const Label& l) {
    return std::visit(overloaded{
                          [](const label::Tau&) { return std::set<Name>{}; },
                          [](const label::In& in) { return std::set<Name>{in.chan}; },
                          [](const label::Out& o) { return std::set<Name>{o.chan, o.object}; },
                          [](const label::BoundOut& b) { return std::set<Name>{b.chan}; },
                      },
                      l);
}

/// [b/a]: replace free occurrences of `a` by `b`.
template <Term T>
T subst(const T& t, const Name& a, const Name& b) {
    return map_free(t, [&](const Name& n) { return n == a ? b : n; });
}

/// ⇓base: decrement indices of free occurrences of `base`, floored at 0.
template <Term T>
T shift_down(const T& t, const std::string& base) {
    return map_free(t, [&](Name n) {
        if (n.base == base && n.index > 0) --n.index;
        return n;
    });
}

/// ⇑base: increment indices of free occurrences of `base`.
template <Term T>
T shift_up(const T& t, const std::string& base) {
    return map_free(t, [&](const Name& n) { return detail::shift_up_name(n, base); });
}

inline Name shift_down(Name n, const std::string& base) {
    if (n.base == base && n.index > 0) --n.index;
    return n;
}

inline Label shift_down(const Label& l, const std::string& base) {
    return std::visit(overloaded{
                          [](const label::Tau& t) -> Label { return t; },
                          [&](const label::In& in) -> Label { return label::In{shift_down(in.chan, base), in.binder}; },
                          [&](const label::Out& o) -> Label {
                              return label::Out{shift_down(o.chan, base), shift_down(o.object, base)};
                          },
                          [&](const label::BoundOut& b) -> Label {
                              return label::BoundOut{shift_down(b.chan, base), b.object, b.type};
                          },
                      },
                      l);
}

inline Label subst(const Label& l, const Name& a, const Name& b) {
    auto s = [&](const Name& n) { return n == a ? b : n; };
    return std::visit(overloaded{
                          [](const label::Tau& t) -> Label { return t; },
                          [&](const label::In& in) -> Label { return label::In{s(in.chan), in.binder}; },
                          [&](const label::Out& o) -> Label { return label::Out{s(o.chan), s(o.object)}; },
                          [&](const label::BoundOut& bo) -> Label { return label::BoundOut{s(bo.chan), bo.object, bo.type}; },
                      },
                      l);
}

/// Removes the abstraction over `binder` from `body` by supplying `value`
/// (a name at the level outside the abstraction).
template <Term T>
T instantiate(const T& body, const std::string& binder, const Name& value) {
    return map_free(body, [&](const Name& n) {
        if (n.base != binder) return n;
        return n.index == 0 ? value : Name{binder, n.index - 1};
    });
}

/// Like `instantiate`, but the result is placed directly under a fresh binder
/// `target`, which the abstracted name becomes.
template <Term T>
T instantiate_under(const T& body, const std::string& binder, const std::string& target) {
    return map_free(body, [&](const Name& n) {
        if (n.base == binder) {
            if (n.index == 0) return Name{target, 0};
            return detail::shift_up_name(Name{binder, n.index - 1}, target);
        }
        return detail::shift_up_name(n, target);
    });
}

/// Exchanges indices 0 and 1 of `base`; used when two adjacent binders with the
/// same base are commuted.
template <Term T>
T swap_adjacent(const T& t, const std::string& base) {
    return map_free(t, [&](Name n) {
        if (n.base == base && n.index <= 1) n.index = 1 - n.index;
        return n;
    });
}

}  // namespace bpmnpc::calc

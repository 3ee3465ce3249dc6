#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bpmnpc/semantics/step.hpp"

namespace bpmnpc::sem {

struct ExploreOptions {
    std::size_t max_states = 10000;
    std::size_t max_depth = 1000;
    bool tau_only = false;
};

template <calc::Term T>
struct TransitionGraph {
    struct Edge {
        std::size_t from;
        calc::Label label;
        std::size_t to;
    };

    /// states[i] is in congruence normal form; keys[i] is its printed text.
    std::vector<T> states;
    std::vector<std::string> keys;
    std::vector<Edge> edges;
    std::size_t root = 0;
    bool truncated = false;

    std::vector<const Edge*> outgoing(std::size_t s) const {
        std::vector<const Edge*> out;
        for (const auto& e : edges)
            if (e.from == s) out.push_back(&e);
        return out;
    }
};

/// Breadth-first closure of `step` from the normal form of `t`.
template <calc::Term T>
TransitionGraph<T> explore(const T& t, const ExploreOptions& opts = {}) {
    if (opts.max_states < 1 || opts.max_depth < 1) throw std::invalid_argument("explore limits must be at least 1");
    TransitionGraph<T> g;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> depth;

    T root = calc::normalize(t);
    std::string root_key = calc::print_term(root);
    index.emplace(root_key, 0);
    g.states.push_back(std::move(root));
    g.keys.push_back(std::move(root_key));
    depth.push_back(0);

    std::deque<std::size_t> queue{0};
    bool full = false;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        auto steps = step(g.states[s]);
        if (opts.tau_only)
            std::erase_if(steps, [](const Transition<T>& tr) { return !calc::is_tau(tr.label); });
        if (steps.empty()) continue;
        if (depth[s] >= opts.max_depth || full) {
            g.truncated = true;
            continue;
        }
        for (auto& tr : steps) {
            std::string key = calc::print_term(tr.target);
            auto it = index.find(key);
            std::size_t to;
            if (it != index.end()) {
                to = it->second;
            } else {
                if (g.states.size() >= opts.max_states) {
                    g.truncated = true;
                    full = true;
                    continue;
                }
                to = g.states.size();
                index.emplace(key, to);
                g.states.push_back(std::move(tr.target));
                g.keys.push_back(std::move(key));
                depth.push_back(depth[s] + 1);
                queue.push_back(to);
            }
            g.edges.push_back({s, std::move(tr.label), to});
        }
    }
    return g;
}

class TraceError : public std::runtime_error {
public:
    enum class Kind { GraphCyclic, GraphTruncated };
    TraceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using Trace = std::vector<calc::Label>;

inline std::string format_trace(const Trace& tr) {
    std::string out;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (i) out += ',';
        out += calc::to_string(tr[i]);
    }
    return out;
}

template <calc::Term T>
bool is_acyclic(const TransitionGraph<T>& g) {
    std::vector<std::vector<std::size_t>> succ(g.states.size());
    for (const auto& e : g.edges) succ[e.from].push_back(e.to);
    // 0 unvisited, 1 on stack, 2 done
    std::vector<int> color(g.states.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t start = 0; start < g.states.size(); ++start) {
        if (color[start]) continue;
        stack.push_back({start, 0});
        color[start] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < succ[v].size()) {
                std::size_t w = succ[v][i++];
                if (color[w] == 1) return false;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

/// Every root-to-sink label sequence, one per path, ordered by printed labels.
template <calc::Term T>
std::vector<Trace> maximal_traces(const TransitionGraph<T>& g) {
    if (g.truncated) throw TraceError(TraceError::Kind::GraphTruncated, "transition graph is truncated");
    if (!is_acyclic(g)) throw TraceError(TraceError::Kind::GraphCyclic, "transition graph has a cycle");

    std::vector<std::vector<const typename TransitionGraph<T>::Edge*>> succ(g.states.size());
    for (const auto& e : g.edges) succ[e.from].push_back(&e);

    std::vector<Trace> traces;
    Trace current;
    auto walk = [&](auto&& self, std::size_t s) -> void {
        if (succ[s].empty()) {
            traces.push_back(current);
            return;
        }
        for (const auto* e : succ[s]) {
            current.push_back(e->label);
            self(self, e->to);
            current.pop_back();
        }
    };
    walk(walk, g.root);

    std::vector<std::pair<std::vector<std::string>, std::size_t>> order;
    order.reserve(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        std::vector<std::string> printed;
        for (const auto& l : traces[i]) printed.push_back(calc::to_string(l));
        order.push_back({std::move(printed), i});
    }
    std::sort(order.begin(), order.end());
    std::vector<Trace> sorted;
    sorted.reserve(traces.size());
    for (const auto& [_, i] : order) sorted.push_back(std::move(traces[i]));
    return sorted;
}

}  // namespace bpmnpc::sem

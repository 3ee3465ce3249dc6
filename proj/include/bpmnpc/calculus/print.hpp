#pragma once

#include <string>
#include <variant>

#include "bpmnpc/calculus/term.hpp"

namespace bpmnpc::calc {

struct PrintOptions {
    /// Print context-variable types with their domain (`Status{ok,bad}`).
    bool inline_domains = true;
};

namespace detail {

class Printer {
public:
    explicit Printer(PrintOptions opts) : opts_(opts) {}

    void top(const Process& p) {
        if (const auto* pp = std::get_if<proc::Par>(&p.node().v)) {
            operand(pp->left);
            out += " | ";
            if (std::holds_alternative<proc::Par>(pp->right.node().v))
                top(pp->right);
            else
                operand(pp->right);
        } else if (const auto* c = std::get_if<proc::Choice>(&p.node().v)) {
            operand(c->left);
            out += " + ";
            if (std::holds_alternative<proc::Choice>(c->right.node().v))
                top(c->right);
            else
                operand(c->right);
        } else {
            unary(p);
        }
    }

    void top(const System& s) {
        if (const auto* pp = std::get_if<sys::Par>(&s.node().v)) {
            unary(pp->left);
            out += " || ";
            if (std::holds_alternative<sys::Par>(pp->right.node().v))
                top(pp->right);
            else
                unary(pp->right);
        } else {
            unary(s);
        }
    }

    std::string out;

private:
    void operand(const Process& p) { unary(p); }

    void type(const PrivType& t) { out += to_string(t, opts_.inline_domains); }

    void unary(const Process& p) {
        std::visit(overloaded{
                       [&](const proc::Empty&) { out += '0'; },
                       [&](const proc::Var& v) { out += v.id; },
                       [&](const proc::Input& in) {
                           out += to_string(in.subject) + "(" + in.binder + ":";
                           type(in.type);
                           out += ").";
                           unary(in.cont);
                       },
                       [&](const proc::Output& o) {
                           out += to_string(o.subject) + "!<" + to_string(o.object) + ">.";
                           unary(o.cont);
                       },
                       [&](const proc::Silent& s) {
                           out += "tau.";
                           unary(s.cont);
                       },
                       [&](const proc::NewName& nn) {
                           out += "(new " + nn.base + ":";
                           type(nn.type);
                           out += ")";
                           unary(nn.cont);
                       },
                       [&](const proc::Cond& c) {
                           out += "if " + to_string(c.scrutinee) + "=" + to_string(c.value) + " then ";
                           unary(c.then_p);
                           out += " else ";
                           unary(c.else_p);
                       },
                       [&](const proc::Repl& r) {
                           out += '!';
                           unary(r.body);
                       },
                       [&](const proc::Par&) { parens(p); },
                       [&](const proc::Choice&) { parens(p); },
                   },
                   p.node().v);
    }

    void parens(const Process& p) {
        out += '(';
        top(p);
        out += ')';
    }

    void unary(const System& s) {
        std::visit(overloaded{
                       [&](const sys::Empty&) { out += '0'; },
                       [&](const sys::NewName& nn) {
                           out += "(new " + nn.base + ":";
                           type(nn.type);
                           out += ")";
                           unary(nn.cont);
                       },
                       [&](const sys::GroupBind& g) {
                           out += "(group " + to_string(g.group) + ")";
                           unary(g.cont);
                       },
                       [&](const sys::Lift& l) {
                           out += "[" + to_string(l.group) + "," + l.purpose + "]{";
                           top(l.body);
                           out += '}';
                       },
                       [&](const sys::Par&) {
                           out += '(';
                           top(s);
                           out += ')';
                       },
                   },
                   s.node().v);
    }

    PrintOptions opts_;
};

}  // namespace detail

inline std::string print_term(const Process& p, PrintOptions opts = {}) {
    detail::Printer pr(opts);
    pr.top(p);
    return std::move(pr.out);
}

inline std::string print_term(const System& s, PrintOptions opts = {}) {
    detail::Printer pr(opts);
    pr.top(s);
    return std::move(pr.out);
}

}  // namespace bpmnpc::calc

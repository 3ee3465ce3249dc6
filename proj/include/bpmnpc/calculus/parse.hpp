#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bpmnpc/calculus/term.hpp"

namespace bpmnpc::calc {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : std::runtime_error("syntax error at offset " + std::to_string(position) + ": " + what), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

using AnyTerm = std::variant<Process, System>;

inline bool is_keyword(std::string_view s) {
    return s == "tau" || s == "if" || s == "then" || s == "else" || s == "new" || s == "group";
}

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return !is_keyword(s);
}

namespace detail {

struct Token {
    enum class Kind { Ident, Number, Symbol, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> toks;
    std::size_t i = 0;
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() && ident_char(src[i])) ++i;
            toks.push_back({Token::Kind::Ident, std::string(src.substr(start, i - start)), start});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            toks.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), start});
        } else if (c == '|' && i + 1 < src.size() && src[i + 1] == '|') {
            toks.push_back({Token::Kind::Symbol, "||", start});
            i += 2;
        } else if (std::string_view("|+()[]{}<>.,:!=~").find(c) != std::string_view::npos) {
            toks.push_back({Token::Kind::Symbol, std::string(1, c), start});
            ++i;
        } else {
            throw SyntaxError(start, std::string("unexpected character '") + c + "'");
        }
    }
    toks.push_back({Token::Kind::End, "", src.size()});
    return toks;
}

class TermParser {
public:
    explicit TermParser(std::string_view src) : toks_(lex(src)) {}

    Process whole_process() {
        Process p = process();
        expect_end();
        return p;
    }

    System whole_system() {
        System s = system();
        expect_end();
        return s;
    }

    PrivType whole_type() {
        PrivType t = type();
        expect_end();
        return t;
    }

    Group whole_group() {
        Group g = group();
        expect_end();
        return g;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_symbol(std::string_view s, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Symbol && t.text == s;
    }
    bool at_word(std::string_view s, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Ident && t.text == s;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.pos, what + ", found " + found);
    }
    void expect_symbol(std::string_view s) {
        if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
        ++pos_;
    }
    void expect_word(std::string_view s) {
        if (!at_word(s)) fail("expected '" + std::string(s) + "'");
        ++pos_;
    }
    void expect_end() {
        if (peek().kind != Token::Kind::End) fail("expected end of input");
    }

    std::string identifier() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident || is_keyword(t.text)) fail("expected identifier");
        ++pos_;
        return t.text;
    }

    Name name() {
        std::string base = identifier();
        std::size_t index = 0;
        if (at_symbol("~")) {
            ++pos_;
            const Token& t = peek();
            if (t.kind != Token::Kind::Number) fail("expected index after '~'");
            index = std::stoul(t.text);
            ++pos_;
        }
        return Name{std::move(base), index};
    }

    Group group() {
        Group g = Group::atom(identifier());
        while (at_symbol("+")) {
            ++pos_;
            g = Group::unite(g, Group::atom(identifier()));
        }
        return g;
    }

    PrivType type() {
        if (at_symbol("(")) {
            ++pos_;
            Group g = group();
            expect_symbol(")");
            expect_symbol("[");
            PrivType inner = type();
            expect_symbol("]");
            return PrivType::group_type(std::move(g), std::move(inner));
        }
        std::string id = identifier();
        if (at_symbol("[")) {
            ++pos_;
            PrivType inner = type();
            expect_symbol("]");
            return PrivType::group_type(Group::atom(std::move(id)), std::move(inner));
        }
        if (at_symbol("{")) {
            std::size_t at = peek().pos;
            ++pos_;
            std::vector<std::string> domain{identifier()};
            while (at_symbol(",")) {
                ++pos_;
                domain.push_back(identifier());
            }
            expect_symbol("}");
            try {
                return PrivType::context_var(std::move(id), std::move(domain));
            } catch (const std::invalid_argument& e) {
                throw SyntaxError(at, e.what());
            }
        }
        return PrivType::basic(std::move(id));
    }

    Process process() {
        std::vector<Process> items{unary()};
        std::string op;
        while (at_symbol("|") || at_symbol("+")) {
            if (op.empty())
                op = peek().text;
            else if (op != peek().text)
                fail("mixed '|' and '+' need parentheses");
            ++pos_;
            items.push_back(unary());
        }
        if (op == "+") return choice_all(items);
        return par_all(items);
    }

    Process unary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Number) {
            if (t.text != "0") fail("expected process");
            ++pos_;
            return nil();
        }
        if (at_symbol("!")) {
            ++pos_;
            return repl(unary());
        }
        if (at_symbol("(")) {
            if (at_word("new", 1)) {
                pos_ += 2;
                std::string base = identifier();
                expect_symbol(":");
                PrivType ty = type();
                expect_symbol(")");
                return new_name(std::move(base), std::move(ty), unary());
            }
            ++pos_;
            Process inner = process();
            expect_symbol(")");
            return inner;
        }
        if (at_word("tau")) {
            ++pos_;
            expect_symbol(".");
            return silent(unary());
        }
        if (at_word("if")) {
            ++pos_;
            Name x = name();
            expect_symbol("=");
            Name v = name();
            expect_word("then");
            Process then_p = unary();
            expect_word("else");
            Process else_p = unary();
            return cond(std::move(x), std::move(v), std::move(then_p), std::move(else_p));
        }
        if (t.kind != Token::Kind::Ident) fail("expected process");
        std::size_t save = pos_;
        Name subject = name();
        if (at_symbol("(")) {
            ++pos_;
            std::string binder = identifier();
            expect_symbol(":");
            PrivType ty = type();
            expect_symbol(")");
            expect_symbol(".");
            return input(std::move(subject), std::move(binder), std::move(ty), unary());
        }
        if (at_symbol("!")) {
            ++pos_;
            expect_symbol("<");
            Name object = name();
            expect_symbol(">");
            expect_symbol(".");
            return output(std::move(subject), std::move(object), unary());
        }
        if (subject.index != 0) {
            pos_ = save;
            fail("process variables carry no index");
        }
        return var(std::move(subject.base));
    }

    System system() {
        std::vector<System> items{system_unary()};
        while (at_symbol("||")) {
            ++pos_;
            items.push_back(system_unary());
        }
        return sys_par_all(items);
    }

    System system_unary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Number) {
            if (t.text != "0") fail("expected system");
            ++pos_;
            return sys_nil();
        }
        if (at_symbol("(")) {
            if (at_word("new", 1)) {
                pos_ += 2;
                std::string base = identifier();
                expect_symbol(":");
                PrivType ty = type();
                expect_symbol(")");
                return sys_new(std::move(base), std::move(ty), system_unary());
            }
            if (at_word("group", 1)) {
                pos_ += 2;
                Group g = group();
                expect_symbol(")");
                return group_bind(std::move(g), system_unary());
            }
            ++pos_;
            System inner = system();
            expect_symbol(")");
            return inner;
        }
        if (at_symbol("[")) {
            ++pos_;
            Group g = group();
            expect_symbol(",");
            std::string purpose = identifier();
            expect_symbol("]");
            expect_symbol("{");
            Process body = process();
            expect_symbol("}");
            return lift(std::move(g), std::move(purpose), std::move(body));
        }
        fail("expected system");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Process parse_process(std::string_view text) { return detail::TermParser(text).whole_process(); }
inline System parse_system(std::string_view text) { return detail::TermParser(text).whole_system(); }
inline PrivType parse_type(std::string_view text) { return detail::TermParser(text).whole_type(); }
inline Group parse_group(std::string_view text) { return detail::TermParser(text).whole_group(); }

/// Reads either level; a bare `0` or any process-only text is a Process.
inline AnyTerm parse_term(std::string_view text) {
    try {
        return parse_process(text);
    } catch (const SyntaxError& as_process) {
        try {
            return parse_system(text);
        } catch (const SyntaxError& as_system) {
            if (as_system.position() > as_process.position()) throw;
            throw as_process;
        }
    }
}

}  // namespace bpmnpc::calc

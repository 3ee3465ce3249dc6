#include <gtest/gtest.h>

#include "bpmnpc/calculus/cinni.hpp"
#include "bpmnpc/calculus/congruence.hpp"
#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/calculus/print.hpp"

using namespace bpmnpc::calc;

namespace {

Process P(const char* text) { return parse_process(text); }
System S(const char* text) { return parse_system(text); }
const PrivType T = PrivType::basic("T");

}  // namespace

TEST(Name, PrintsIndexOnlyWhenNonZero) {
    EXPECT_EQ(to_string(Name{"x"}), "x");
    EXPECT_EQ(to_string(Name{"x", 2}), "x~2");
}

TEST(Group, UnionOfEqualGroupsCollapses) {
    Group g = Group::atom("G");
    EXPECT_EQ(Group::unite(g, g), g);
    EXPECT_EQ(to_string(Group::unite(Group::atom("A"), Group::atom("B"))), "A+B");
}

TEST(PrivType, ContextVarDomainsMustBeNonEmptyAndDistinct) {
    EXPECT_THROW(PrivType::context_var("X", {}), std::invalid_argument);
    EXPECT_THROW(PrivType::context_var("X", {"a", "a"}), std::invalid_argument);
    PrivType t = parse_type("Status{ok,bad}");
    ASSERT_TRUE(t.is_context_var());
    EXPECT_EQ(t.domain(), (std::vector<std::string>{"ok", "bad"}));
    EXPECT_EQ(to_string(parse_type("(G1+G2)[T]")), "(G1+G2)[T]");
}

TEST(FreeNames, Examples) {
    EXPECT_EQ(free_names(P("x!<y>.0")), (std::set<Name>{"x", "y"}));
    EXPECT_EQ(free_names(P("(new x:T)x!<y>.0")), (std::set<Name>{"y"}));
    EXPECT_EQ(free_names(P("x(a:T).a!<a>.0")), (std::set<Name>{"x"}));
}

TEST(FreeNames, IndicesAreSeenFromOutside) {
    EXPECT_EQ(free_names(P("(new a:T)x!<a~1>.0")), (std::set<Name>{"x", "a"}));
    EXPECT_EQ(free_names(P("(new a:T)(new a:T)x!<a~3>.0")), (std::set<Name>{"x", Name{"a", 1}}));
}

TEST(FreeNames, Labels) {
    EXPECT_EQ(free_names(Label{label::In{"x", "a"}}), (std::set<Name>{"x"}));
    EXPECT_EQ(free_names(Label{label::Out{"x", "y"}}), (std::set<Name>{"x", "y"}));
    EXPECT_EQ(free_names(Label{label::BoundOut{"x", "b", T}}), (std::set<Name>{"x"}));
    EXPECT_TRUE(free_names(Label{label::Tau{}}).empty());
}

TEST(Subst, Examples) {
    EXPECT_EQ(print_term(subst(P("x!<a>.0"), Name{"a"}, Name{"b"})), "x!<b>.0");
    EXPECT_EQ(print_term(subst(P("a(y:T).a!<y>.0"), Name{"a"}, Name{"b"})), "b(y:T).b!<y>.0");
}

TEST(Subst, CrossingBindersAdjustsIndices) {
    EXPECT_EQ(print_term(subst(P("(new a:T)x!<a~1>.0"), Name{"a"}, Name{"b"})), "(new a:T)x!<b>.0");
    // b is captured by nothing: under a b-binder the outer b is b~1.
    EXPECT_EQ(print_term(subst(P("(new b:T)x!<a>.0"), Name{"a"}, Name{"b"})), "(new b:T)x!<b~1>.0");
    EXPECT_EQ(print_term(subst(P("(new a:T)x!<a>.0"), Name{"a"}, Name{"b"})), "(new a:T)x!<a>.0");
}

TEST(ShiftDown, Examples) {
    EXPECT_EQ(print_term(shift_down(P("x!<a~1>.0"), "a")), "x!<a>.0");
    EXPECT_EQ(print_term(shift_down(P("x!<a>.0"), "a")), "x!<a>.0");
    EXPECT_EQ(print_term(shift_down(P("b!<c>.0"), "a")), "b!<c>.0");
    EXPECT_EQ(print_term(shift_down(P("(new a:T)x!<a~2>.a!<a>.0"), "a")), "(new a:T)x!<a~1>.a!<a>.0");
}

TEST(AlphaCanonical, Examples) {
    EXPECT_EQ(alpha_canonical(P("(new x:T)x!<y>.0")), alpha_canonical(P("(new z:T)z!<y>.0")));
    EXPECT_EQ(print_term(alpha_canonical(P("x!<y>.0"))), "x!<y>.0");
    Process nested = alpha_canonical(P("(new x:T)x!<y>.(new x:T)x!<y>.0"));
    EXPECT_EQ(print_term(nested), "(new _0:T)_0!<y>.(new _1:T)_1!<y>.0");
    // The outer binder is still reachable from inside via its index.
    EXPECT_EQ(print_term(alpha_canonical(P("(new x:T)(new x:T)x~1!<x>.0"))), "(new _0:T)(new _1:T)_0!<_1>.0");
}

TEST(AlphaCanonical, FreeNamesSurviveCollisionWithReservedNames) {
    Process p = P("(new a:T)_0!<a>.0");
    EXPECT_EQ(free_names(alpha_canonical(p)), free_names(p));
    EXPECT_FALSE(alpha_equivalent(p, P("(new a:T)a!<a>.0")));
}

TEST(Congruence, Examples) {
    EXPECT_TRUE(congruent(P("x!<y>.0 | 0"), P("x!<y>.0")));
    EXPECT_TRUE(congruent(P("x!<y>.0 + tau.0"), P("tau.0 + x!<y>.0 + x!<y>.0")));
    EXPECT_FALSE(congruent(P("x!<y>.0"), P("x(y:T).0")));
    EXPECT_TRUE(congruent(P("!0"), P("0")));
    EXPECT_TRUE(congruent(P("(new x:T)0"), P("0")));
    EXPECT_TRUE(congruent(S("(group G)0"), S("0")));
    EXPECT_TRUE(congruent(S("[G,u]{0} || [H,w]{x!<y>.0}"), S("[H,w]{x!<y>.0}")));
    EXPECT_TRUE(congruent(P("(a!<b>.0 | c!<d>.0) | e!<f>.0"), P("e!<f>.0 | (c!<d>.0 | a!<b>.0)")));
    EXPECT_FALSE(congruent(P("a!<b>.0 | a!<b>.0"), P("a!<b>.0")));
}

TEST(Congruence, ChoiceDeduplicatesUpToAlpha) {
    EXPECT_TRUE(congruent(P("(new x:T)x!<y>.0 + (new z:T)z!<y>.0"), P("(new q:T)q!<y>.0")));
}

TEST(Congruence, ProcessVariablesAreNotInert) {
    EXPECT_FALSE(congruent(P("P_G"), P("0")));
    EXPECT_TRUE(congruent(P("P_G | 0"), P("P_G")));
}

TEST(Congruence, LevelMismatchThrows) {
    EXPECT_THROW(congruent(AnyTerm{P("0")}, AnyTerm{S("0")}), LevelMismatch);
}

TEST(Print, Examples) {
    EXPECT_EQ(print_term(output("x", "y")), "x!<y>.0");
    EXPECT_EQ(print_term(lift(Group::atom("G"), "u", nil())), "[G,u]{0}");
    EXPECT_EQ(print_term(par(input("e1", "t", PrivType::basic("Token"), nil()), repl(nil()))), "e1(t:Token).0 | !0");
    EXPECT_EQ(print_term(par(choice(output("a", "b"), output("c", "d")), output("e", "f"))), "(a!<b>.0 + c!<d>.0) | e!<f>.0");
    EXPECT_EQ(print_term(silent(par(output("a", "b"), output("c", "d")))), "tau.(a!<b>.0 | c!<d>.0)");
    EXPECT_EQ(print_term(repl(par(output("a", "b"), output("c", "d")))), "!(a!<b>.0 | c!<d>.0)");
    EXPECT_EQ(print_term(when_unequal("m", "ok", output("f", "t"))), "if m=ok then 0 else f!<t>.0");
    EXPECT_EQ(print_term(group_bind(Group::unite(Group::atom("A"), Group::atom("B")), sys_nil())), "(group A+B)0");
}

TEST(Print, ContextVarDomainsCanBeSuppressed) {
    Process p = input("E", "m", parse_type("Status{ok,bad}"), nil());
    EXPECT_EQ(print_term(p), "E(m:Status{ok,bad}).0");
    EXPECT_EQ(print_term(p, {.inline_domains = false}), "E(m:Status).0");
}

TEST(Parse, Examples) {
    auto out = parse_term("x!<y>.0");
    ASSERT_TRUE(std::holds_alternative<Process>(out));
    EXPECT_TRUE(std::holds_alternative<proc::Output>(std::get<Process>(out).node().v));

    Process nn = P("(new h:G[Token])h(t:Token).0");
    const auto* n = std::get_if<proc::NewName>(&nn.node().v);
    ASSERT_NE(n, nullptr);
    EXPECT_TRUE(n->type.is_group_type());

    Process c = P("if m=yes then f1!<t>.0 else 0");
    EXPECT_TRUE(std::holds_alternative<proc::Cond>(c.node().v));
}

TEST(Parse, SystemsAndIndices) {
    System s = S("(group G1+G2)(new F:(G1+G2)[T])([G1,u]{P_G1} || [G2,w]{F(m:T).0})");
    EXPECT_EQ(print_term(s), "(group G1+G2)(new F:(G1+G2)[T])([G1,u]{P_G1} || [G2,w]{F(m:T).0})");
    EXPECT_EQ(print_term(P("x~2!<y~1>.0")), "x~2!<y~1>.0");
}

TEST(Parse, PrintParseRoundTripKeepsText) {
    for (const char* text : {"x(a:T).(a!<b>.0 | tau.0)", "!(new x:T)x!<y>.0 + 0", "(a!<b>.0 + c!<d>.0) | e!<f>.0",
                             "if x=v then !0 else (x!<v>.0 | 0)"})
        EXPECT_EQ(print_term(P(text)), text);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
    try {
        (void)parse_process("x!<y>.0 + a!<b>.0 | c!<d>.0");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_GT(e.position(), 0u);
    }
    EXPECT_THROW(parse_process("x!<y>"), SyntaxError);
    EXPECT_THROW(parse_process("(new x:T x!<y>.0"), SyntaxError);
    EXPECT_THROW(parse_term("[G,u]{0} | 0"), SyntaxError);
    EXPECT_THROW(parse_process("tau.0 trailing"), SyntaxError);
}

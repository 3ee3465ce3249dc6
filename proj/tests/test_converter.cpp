#include <gtest/gtest.h>

#include "support/golden.hpp"
#include "support/scenarios.hpp"

using namespace bpmnpc;
using namespace bpmnpc::conv;
namespace bt = bpmnpc::testing;

namespace {

ConversionError::Kind error_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConversionError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no ConversionError";
    return ConversionError::Kind::UnsupportedNode;
}

ConversionOutput convert_fixture(const std::string& f) {
    return convert_collaboration(bt::load_diagram(f + ".bpmn"), bt::load_config(bt::config_for(f)).conversion);
}

// Channel use counts inside one restriction scope, ignoring shadowing (fixture names are unique).
struct ChannelUse {
    std::map<std::string, int> outputs, inputs;
    void walk(const calc::Process& p) {
        using namespace calc;
        std::visit(overloaded{
                       [](const proc::Empty&) {},
                       [&](const proc::Input& n) {
                           ++inputs[to_string(n.subject)];
                           walk(n.cont);
                       },
                       [&](const proc::Output& n) {
                           ++outputs[to_string(n.subject)];
                           walk(n.cont);
                       },
                       [&](const proc::Silent& n) { walk(n.cont); },
                       [&](const proc::NewName& n) { walk(n.cont); },
                       [&](const proc::Par& n) {
                           walk(n.left);
                           walk(n.right);
                       },
                       [&](const proc::Choice& n) {
                           walk(n.left);
                           walk(n.right);
                       },
                       [&](const proc::Cond& n) {
                           walk(n.then_p);
                           walk(n.else_p);
                       },
                       [&](const proc::Repl& n) { walk(n.body); },
                       [](const proc::Var&) {},
                   },
                   p.node().v);
    }
};

}  // namespace

TEST(Patterns, MatchHandTranscribedFormulas) {
    for (const auto& c : bt::pattern_checks()) EXPECT_EQ(bt::run_guarded(c), "") << c.name;
}

TEST(Elements, MatchHandTranscribedFormulas) {
    for (const auto& c : bt::element_checks()) EXPECT_EQ(bt::run_guarded(c), "") << c.name;
}

TEST(Joins, NofNWaitsForEveryFlow) { EXPECT_EQ(bt::check_n_of_n_join(), ""); }

TEST(Joins, MofNFiresOnAnyMFlows) { EXPECT_EQ(bt::check_m_of_n_join(), ""); }

TEST(Patterns, Errors) {
    FreshNames fresh("h");
    auto g = calc::Group::atom("G");
    EXPECT_EQ(error_kind([&] { (void)join_pattern(JoinKind::choice(), {}, calc::nil(), g, fresh); }),
              ConversionError::Kind::EmptyFlows);
    EXPECT_EQ(error_kind([&] { (void)join_pattern(JoinKind::m_of_n(0), {"a", "b"}, calc::nil(), g, fresh); }),
              ConversionError::Kind::BadM);
    EXPECT_EQ(error_kind([&] { (void)join_pattern(JoinKind::m_of_n(3), {"a", "b"}, calc::nil(), g, fresh); }),
              ConversionError::Kind::BadM);
    EXPECT_EQ(error_kind([] { (void)split_pattern(SplitKind::Parallel, {}, "t"); }), ConversionError::Kind::EmptyFlows);
    EXPECT_EQ(error_kind([] { (void)sync_pattern({}, calc::nil()); }), ConversionError::Kind::EmptyFlows);
}

TEST(FreshNames, SkipAvoidedAndIssuedNames) {
    FreshNames f("h", {"h2"});
    EXPECT_EQ(fresh_name(f), calc::Name{"h1"});
    EXPECT_EQ(fresh_name(f), calc::Name{"h3"});
    f.avoid("h4");
    EXPECT_EQ(fresh_name(f), calc::Name{"h5"});
}

TEST(Converter, FreshNamesAvoidDiagramIds) {
    auto out = convert_fixture("gateways");
    for (const auto& [name, _] : out.context) EXPECT_NE(name.base.rfind("h", 0), 0u) << calc::to_string(name);
    std::string text = calc::print_term(out.system);
    EXPECT_NE(text.find("(new h1:"), std::string::npos);
}

TEST(Converter, MissingMetaAndValidation) {
    auto d = bt::load_diagram("chain.bpmn");
    EXPECT_EQ(error_kind([&] { (void)convert_collaboration(d, ConversionConfig{}); }), ConversionError::Kind::MissingMeta);
    auto bad = bt::load_diagram("validation/TASK_MULTI_IN.bpmn");
    EXPECT_EQ(error_kind([&] { (void)convert_collaboration(bad, bt::load_config("chain.json").conversion); }),
              ConversionError::Kind::ValidationRequired);
    auto collab = bt::load_diagram("collaboration.bpmn");
    auto cfg = bt::load_config("collaboration.json").conversion;
    cfg.messages.clear();
    EXPECT_EQ(error_kind([&] { (void)convert_collaboration(collab, cfg); }), ConversionError::Kind::MissingMessageMeta);
}

TEST(Converter, PhantomsMustTargetNodesThatNeedThem) {
    auto d = bt::load_diagram("chain.bpmn");
    auto cfg = bt::load_config("chain.json").conversion;
    cfg.phantoms["Work"] = PhantomMeta{"E", "m", calc::PrivType::basic("T"), std::nullopt};
    EXPECT_EQ(error_kind([&] { (void)convert_collaboration(d, cfg); }), ConversionError::Kind::UnsupportedNode);
    cfg.phantoms.clear();
    cfg.phantoms["Ghost"] = PhantomMeta{"E", "m", calc::PrivType::basic("T"), std::nullopt};
    EXPECT_EQ(error_kind([&] { (void)convert_collaboration(d, cfg); }), ConversionError::Kind::MissingMeta);
}

TEST(Converter, EverySequenceFlowIsOneSenderOneReceiver) {
    for (const auto& f : {"chain", "gateways", "conditional", "subprocess_single", "two_starts"}) {
        auto out = convert_fixture(f);
        auto d = bt::load_diagram(std::string(f) + ".bpmn");
        ChannelUse use;
        std::function<void(const calc::System&)> sys = [&](const calc::System& s) {
            std::visit(calc::overloaded{
                           [](const calc::sys::Empty&) {},
                           [&](const calc::sys::NewName& n) { sys(n.cont); },
                           [&](const calc::sys::Par& n) {
                               sys(n.left);
                               sys(n.right);
                           },
                           [&](const calc::sys::GroupBind& n) { sys(n.cont); },
                           [&](const calc::sys::Lift& n) { use.walk(n.body); },
                       },
                       s.node().v);
        };
        sys(out.system);
        for_each_graph(*d.single_process(), [&](const bpmn::ProcessGraph& g) {
            for (const auto& flow : g.sequence_flows) {
                EXPECT_GE(use.outputs[flow.id], 1) << f << ": " << flow.id;
                EXPECT_GE(use.inputs[flow.id], 1) << f << ": " << flow.id;
            }
        });
    }
}

TEST(Converter, OutputIsDeterministic) {
    for (const auto& c : bt::determinism_checks()) EXPECT_EQ(bt::run_guarded(c), "") << c.name;
}

TEST(Converter, PhantomsAreReported) {
    auto out = convert_fixture("message_events");
    std::map<std::string, bool> incoming;
    for (const auto& ph : out.phantoms) incoming[ph.node_id] = ph.incoming;
    EXPECT_EQ(incoming, (std::map<std::string, bool>{{"Catch", true}, {"End", false}, {"Start", true}, {"Throw", false}}));
}

TEST(Converter, ContextCarriesConditionValues) {
    auto out = convert_fixture("conditional");
    ASSERT_TRUE(out.context.contains(calc::Name{"ok"}));
    EXPECT_EQ(calc::to_string(out.context.at(calc::Name{"ok"}), false), "Status");
    ASSERT_TRUE(out.context.contains(calc::Name{"E"}));
    EXPECT_TRUE(out.context.at(calc::Name{"E"}).is_group_type());
}

#include <iostream>

#include "CLI11.hpp"
#include "bpmnpc/emit/cli.hpp"

int main(int argc, char** argv) {
    using bpmnpc::emit::CliInvocation;
    CLI::App app{"BPMN to Privacy Calculus converter"};
    app.require_subcommand(1);

    CliInvocation inv;
    std::string config, output;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        sub->add_option("input", inv.input_path, "input file")->required();
        auto* c = sub->add_option("-c,--config", config, "configuration file");
        if (needs_config) c->required();
        sub->add_option("-o,--output", output, "write the result here instead of standard output");
    };

    auto* validate = app.add_subcommand("validate", "check a BPMN diagram against the supported subset");
    validate->add_option("input", inv.input_path, "BPMN XML file")->required();
    auto* convert = app.add_subcommand("convert", "emit the Privacy Calculus module for a diagram");
    add_common(convert, true);
    auto* trace = app.add_subcommand("trace", "explore the converted system and report maximal traces");
    add_common(trace, true);
    trace->add_option("--max-states", inv.max_states, "state limit")->check(CLI::PositiveNumber);
    trace->add_option("--max-depth", inv.max_depth, "depth limit")->check(CLI::PositiveNumber);
    trace->add_flag("--all-traces", inv.all_traces, "print every trace instead of the count");
    auto* parse_term = app.add_subcommand("parse-term", "print the canonical form of a term file");
    parse_term->add_option("input", inv.input_path, "term file")->required();
    parse_term->add_option("-o,--output", output, "write the result here instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (auto* sub : {validate, convert, trace, parse_term})
        if (sub->parsed()) inv.command = sub->get_name();
    if (!config.empty()) inv.config_path = config;
    if (!output.empty()) inv.output_path = output;
    return bpmnpc::emit::run_cli(inv, std::cout, std::cerr);
}

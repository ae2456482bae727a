#include "thimac/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "thimac/behavior.hpp"
#include "thimac/dot.hpp"
#include "thimac/parser.hpp"
#include "thimac/printer.hpp"
#include "thimac/scenario.hpp"
#include "thimac/simulator.hpp"
#include "thimac/validate.hpp"

namespace thimac {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

void report(const Diagnostics& diags, const std::string& file, std::ostream& err,
            bool warnings = true) {
    for (const Diagnostic& d : diags) {
        if (!warnings && d.severity == Severity::Warning) continue;
        err << format_diagnostic(d, file) << '\n';
    }
}

struct Loaded {
    ParseResult parsed;
    int status = kExitOk;
};

// Parse, validate and bind events. `status` is non-zero when the caller
// should stop.
Loaded load(const std::string& file, std::ostream& err, bool warnings) {
    Loaded l;
    auto text = read_file(file);
    if (!text) {
        err << file << ": cannot read file\n";
        l.status = kExitIo;
        return l;
    }
    l.parsed = parse(*text, file);
    if (!l.parsed.model) {
        report(l.parsed.diagnostics, file, err);
        l.status = kExitParse;
        return l;
    }
    Diagnostics diags = l.parsed.diagnostics;
    diags.append(validate(*l.parsed.model));
    diags.append(bind_events(*l.parsed.model, l.parsed.events).diagnostics);
    if (l.parsed.chronology)
        diags.append(check_chronology_structure(*l.parsed.chronology, l.parsed.events));
    diags.sort();
    report(diags, file, err, warnings);
    if (diags.has_errors()) l.status = kExitFailure;
    return l;
}

struct ScenarioLoad {
    Scenario scenario;
    int status = kExitOk;
};

ScenarioLoad load_scenario(const std::string& file, std::ostream& err) {
    ScenarioLoad s;
    auto text = read_file(file);
    if (!text) {
        err << file << ": cannot read file\n";
        s.status = kExitIo;
        return s;
    }
    auto parsed = parse_scenario(*text, file);
    report(parsed.diagnostics, file, err);
    if (parsed.diagnostics.has_errors()) s.status = kExitParse;
    s.scenario = std::move(parsed.scenario);
    return s;
}

int cmd_check(const std::string& file, std::ostream& err) {
    return load(file, err, true).status;
}

struct SimulateArgs {
    std::string file;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> max_ticks;
    std::string trace_out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    if (a.max_ticks && *a.max_ticks < 1) {
        err << "--max-ticks must be at least 1\n";
        return kExitUsage;
    }
    auto model = load(a.file, err, false);
    if (model.status != kExitOk) return model.status;
    auto scn = load_scenario(a.scenario, err);
    if (scn.status != kExitOk) return scn.status;
    if (a.seed) scn.scenario.seed = *a.seed;
    if (a.max_ticks) scn.scenario.max_ticks = *a.max_ticks;

    const SimResult result = simulate(*model.parsed.model, scn.scenario);
    report(result.diagnostics, a.scenario, err);
    const std::string text = trace_text(result.trace);
    if (a.trace_out.empty()) {
        out << text;
    } else if (!write_file(a.trace_out, text)) {
        err << a.trace_out << ": cannot write file\n";
        return kExitIo;
    }
    return result.ok() ? kExitOk : kExitFailure;
}

int cmd_behave(const std::string& file, const std::string& scenario_file, std::ostream& out,
               std::ostream& err) {
    auto model = load(file, err, false);
    if (model.status != kExitOk) return model.status;
    const ParseResult& p = model.parsed;
    if (p.events.empty() || !p.chronology) {
        err << file << ": behave needs event declarations and a chronology\n";
        return kExitFailure;
    }
    auto scn = load_scenario(scenario_file, err);
    if (scn.status != kExitOk) return scn.status;

    const SimResult result = simulate(*p.model, scn.scenario);
    if (!result.ok()) {
        report(result.diagnostics, scenario_file, err);
        return kExitFailure;
    }
    const auto bound = bind_events(*p.model, p.events);
    auto checked = check_chronology(project(result.trace, bound.events), *p.chronology);
    if (!checked.ok()) {
        err << format_diagnostic(checked.error(), file) << '\n';
        return kExitFailure;
    }
    out << format_report(*checked);
    return checked->verdict == Verdict::Conforms ? kExitOk : kExitFailure;
}

int cmd_render(const std::string& file, const std::string& output, bool events, std::ostream& out,
               std::ostream& err) {
    auto model = load(file, err, false);
    if (model.status != kExitOk) return model.status;
    RenderOptions options;
    options.show_events = events;
    auto dot = to_dot(*model.parsed.model, model.parsed.events, options);
    if (!dot.ok()) {
        err << format_diagnostic(dot.error(), file) << '\n';
        return kExitFailure;
    }
    if (output.empty()) {
        out << *dot;
    } else if (!write_file(output, *dot)) {
        err << output << ": cannot write file\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_fmt(const std::string& file, bool check, std::ostream& err) {
    auto text = read_file(file);
    if (!text) {
        err << file << ": cannot read file\n";
        return kExitIo;
    }
    const ParseResult p = parse(*text, file);
    if (!p.model) {
        report(p.diagnostics, file, err);
        return kExitParse;
    }
    const std::string canonical = print_canonical(*p.model, p.events, p.chronology);
    if (canonical == *text) return kExitOk;
    if (check) {
        err << file << ": not in canonical form\n";
        return kExitFailure;
    }
    if (!write_file(file, canonical)) {
        err << file << ": cannot write file\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thinging machine model toolchain", "tm"};
    app.require_subcommand(1);

    std::string file;

    auto* check = app.add_subcommand("check", "Parse and validate a model");
    check->add_option("file", file, "Model file")->required();

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a scenario and print the trace");
    simulate_cmd->add_option("file", sim.file, "Model file")->required();
    simulate_cmd->add_option("--scenario", sim.scenario, "Scenario file")->required();
    simulate_cmd->add_option("--seed", sim.seed, "Override the scenario seed");
    simulate_cmd->add_option("--max-ticks", sim.max_ticks, "Override the tick limit");
    simulate_cmd->add_option("--trace-out", sim.trace_out, "Write the trace here");

    std::string scenario;
    auto* behave = app.add_subcommand("behave", "Check a scenario run against the chronology");
    behave->add_option("file", file, "Model file")->required();
    behave->add_option("--scenario", scenario, "Scenario file")->required();

    std::string format = "dot";
    std::string output;
    bool events = false;
    auto* render = app.add_subcommand("render", "Render the model as a diagram");
    render->add_option("file", file, "Model file")->required();
    render->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot"}));
    render->add_option("-o,--output", output, "Output file");
    render->add_flag("--events", events, "Annotate event regions");

    bool fmt_check = false;
    auto* fmt = app.add_subcommand("fmt", "Rewrite a model in canonical form");
    fmt->add_option("file", file, "Model file")->required();
    fmt->add_flag("--check", fmt_check, "Only report whether the file is canonical");

    std::vector<const char*> argv{"tm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "tm: " << e.what() << '\n';
        return kExitUsage;
    }

    if (check->parsed()) return cmd_check(file, err);
    if (simulate_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (behave->parsed()) return cmd_behave(file, scenario, out, err);
    if (render->parsed()) return cmd_render(file, output, events, out, err);
    if (fmt->parsed()) return cmd_fmt(file, fmt_check, err);
    return kExitUsage;
}

}  // namespace thimac

// Command-line front end: parse graph/group/labeling files, dispatch to the
// library, print line-oriented key/value reports (or one JSON object with
// --emit machine). Exit codes: 0 success/balanced, 1 unbalanced or not
// balanceable, 2 usage/parse/cap errors.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gain/flexible.hpp"
#include "gain/oracle.hpp"
#include "gain/rigid.hpp"

namespace {

using nlohmann::ordered_json;

struct Report {
    bool machine = false;
    ordered_json j = ordered_json::object();
    std::vector<std::string> lines;

    void kv(const std::string& key, const std::string& value) {
        j[key] = value;
        lines.push_back(key + " " + value);
    }
    void kv(const std::string& key, long long value) {
        j[key] = value;
        lines.push_back(key + " " + std::to_string(value));
    }
    void kv_count(const std::string& key, unsigned long long value) {
        j[key] = value;
        lines.push_back(key + " " + std::to_string(value));
    }
    void kv(const std::string& key, bool value) {
        j[key] = value;
        lines.push_back(key + std::string(value ? " true" : " false"));
    }

    static ordered_json element_json(const gain::GroupElement& a) {
        ordered_json arr = ordered_json::array();
        for (long long c : a) arr.push_back(c);
        return arr;
    }

    void witness(const gain::Witness& w) {
        ordered_json wj;
        wj["vertices"] = w.vertices;
        wj["steps"] = ordered_json::array();
        std::string line = "witness";
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            const bool fwd = w.steps[i].dir == gain::StepDirection::forward;
            wj["steps"].push_back({{"edge", w.steps[i].edge}, {"direction", fwd ? "forward" : "reverse"}});
            line += " " + w.vertices[i] + " " + w.steps[i].edge + (fwd ? ":+" : ":-");
        }
        line += " " + w.vertices.back();
        lines.push_back(line);
        if (w.sum) {
            wj["sum"] = element_json(*w.sum);
            lines.push_back("witness_sum " + gain::element_str(*w.sum));
        }
        j["witness"] = std::move(wj);
    }

    void value_map(const std::string& kind, const std::map<std::string, gain::GroupElement>& values,
                   const std::vector<std::string>& id_order) {
        ordered_json mj = ordered_json::object();
        for (const std::string& id : id_order) {
            auto it = values.find(id);
            if (it == values.end()) continue;
            mj[id] = element_json(it->second);
            lines.push_back(kind + " " + id + " " + gain::element_str(it->second));
        }
        j[kind] = std::move(mj);
    }

    void labeling(const gain::Labeling& l, const gain::Digraph& g) {
        std::vector<std::string> edge_ids;
        for (const auto& e : g.edges()) edge_ids.push_back(e.id);
        value_map("vertex", l.on_vertices, g.vertex_ids());
        value_map("edge", l.on_edges, edge_ids);
    }

    void flush() const {
        if (machine) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& line : lines) std::cout << line << "\n";
        }
    }
};

struct Cli {
    std::string graph_path;
    std::string labels_path;
    std::string vertex_labels_path;
    std::string edge_labels_path;
    std::string group_text;
    std::string family_text;
    std::string mode_text;
    std::string root_id;
    std::string emit = "plain";
    bool strict = false;
    bool whole = false;
    std::uint64_t seed = 0;
    int sample_count = 1;
    int max_cycles_edges = gain::kCycleEdgeCap;
    unsigned long long max_enumeration = gain::kEnumerationCap;
    int max_orientation_edges = gain::kOrientationEdgeCap;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

gain::Family parse_family(const std::string& text) {
    static const std::map<std::string, gain::Family> table = {
        {"HF", gain::Family::HF}, {"BF", gain::Family::BF}, {"WF", gain::Family::WF},
        {"HR", gain::Family::HR}, {"BR", gain::Family::BR}, {"WR", gain::Family::WR},
    };
    auto it = table.find(text);
    if (it == table.end()) throw UsageError("unknown family '" + text + "'");
    return it->second;
}

void check_mode_consistency(const Cli& cli, gain::Family family) {
    if (cli.mode_text.empty()) return;
    const bool flexible = family == gain::Family::HF || family == gain::Family::BF ||
                          family == gain::Family::WF;
    const std::string implied = flexible ? "flexible" : "rigid";
    if (cli.mode_text != implied)
        throw UsageError("family " + cli.family_text + " implies --mode " + implied);
}

std::string verdict_str(bool balanced) { return balanced ? "balanced" : "unbalanced"; }

int run_structure(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Family family = parse_family(cli.family_text);
    check_mode_consistency(cli, family);

    gain::StructureDescriptor d;
    switch (family) {
        case gain::Family::HF: d = gain::flexible_structure(g, gain::FlexibleFamily::HF); break;
        case gain::Family::BF: d = gain::flexible_structure(g, gain::FlexibleFamily::BF); break;
        case gain::Family::WF: d = gain::flexible_structure(g, gain::FlexibleFamily::WF); break;
        case gain::Family::HR: d = gain::rigid_structure(g, gain::RigidFamily::HR); break;
        case gain::Family::BR: d = gain::rigid_structure(g, gain::RigidFamily::BR); break;
        case gain::Family::WR: d = gain::rigid_structure(g, gain::RigidFamily::WR); break;
        default: break;
    }
    report.kv("family", cli.family_text);
    report.kv("a_exponent", static_cast<long long>(d.a_exponent));
    report.kv("a2_exponent", static_cast<long long>(d.a2_exponent));
    report.kv("descriptor", d.str());
    auto card = d.cardinality(spec);
    if (card) {
        report.kv_count("cardinality", *card);
    } else {
        report.j["cardinality"] = nullptr;
        report.lines.push_back("cardinality infinite");
    }
    return 0;
}

int run_check(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Family family = parse_family(cli.family_text);
    check_mode_consistency(cli, family);
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);

    if (family == gain::Family::BF || family == gain::Family::BR) {
        gain::BalanceResult r = family == gain::Family::BF
                                    ? gain::bf_balance(g, labels)
                                    : gain::BalanceResult{true, gain::br_balance(g, labels), {}};
        report.kv("verdict", std::string(r.balanceable ? "balanceable" : "not_balanceable"));
        if (r.reason) report.witness(*r.reason);
        return r.balanceable ? 0 : 1;
    }

    gain::CheckResult r;
    switch (family) {
        case gain::Family::HF: r = gain::hf_check(g, labels); break;
        case gain::Family::WF: r = gain::wf_check(g, labels); break;
        case gain::Family::HR: r = gain::hr_check(g, labels); break;
        case gain::Family::WR: r = gain::wr_check(g, labels); break;
        default: break;
    }
    report.kv("verdict", verdict_str(r.balanced));
    if (r.witness) report.witness(*r.witness);
    return r.balanced ? 0 : 1;
}

int run_potential(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    if (!cli.family_text.empty() && cli.family_text != "HF")
        throw UsageError("potential applies to family HF (use params for WF and HR)");
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);
    std::string root = cli.root_id.empty() ? g.vertex_ids().at(0) : cli.root_id;
    auto phi = gain::hf_potential_of(g, labels, root);
    report.kv("verdict", std::string("balanced"));
    report.kv("root", root);
    report.value_map("potential", phi, g.vertex_ids());
    return 0;
}

int run_params(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Family family = parse_family(cli.family_text);
    check_mode_consistency(cli, family);
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);

    if (family == gain::Family::WF) {
        gain::WfParams p = gain::wf_params_of(g, labels);
        report.kv("verdict", std::string("balanced"));
        report.value_map("amplitude", p.amplitude, g.vertex_ids());
        report.value_map("potential", p.potential, g.vertex_ids());
        return 0;
    }
    if (family == gain::Family::HR) {
        gain::HrParams p = gain::hr_params_of(g, labels);
        std::vector<std::string> edge_ids;
        for (const auto& e : g.edges()) edge_ids.push_back(e.id);
        report.kv("verdict", std::string("balanced"));
        report.value_map("potential", p.potential, g.vertex_ids());
        report.value_map("cross", p.cross_values, edge_ids);
        return 0;
    }
    throw UsageError("params applies to families WF and HR");
}

int run_complete(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Family family = parse_family(cli.family_text);
    check_mode_consistency(cli, family);
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);

    if (family == gain::Family::BF) {
        gain::BalanceResult r = gain::bf_balance(g, labels);
        report.kv("verdict", std::string(r.balanceable ? "balanceable" : "not_balanceable"));
        if (r.completed) report.labeling(*r.completed, g);
        if (r.reason) report.witness(*r.reason);
        return r.balanceable ? 0 : 1;
    }
    if (family == gain::Family::BR) {
        gain::Labeling h = gain::br_balance(g, labels);
        report.kv("verdict", std::string("balanceable"));
        report.labeling(h, g);
        return 0;
    }
    throw UsageError("complete applies to families BF and BR");
}

int run_split(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    if (!cli.family_text.empty() && cli.family_text != "WR")
        throw UsageError("split applies to family WR");
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);
    auto [verts, edges] = gain::wr_split(g, labels);
    report.value_map("vertex", verts.on_vertices, g.vertex_ids());
    std::vector<std::string> edge_ids;
    for (const auto& e : g.edges()) edge_ids.push_back(e.id);
    report.value_map("edge", edges.on_edges, edge_ids);
    return 0;
}

int run_join(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    if (!cli.family_text.empty() && cli.family_text != "WR")
        throw UsageError("join applies to family WR");
    gain::Labeling gv = gain::load_labeling(cli.vertex_labels_path, g, spec);
    gain::Labeling f = gain::load_labeling(cli.edge_labels_path, g, spec);
    gain::Labeling h = gain::wr_join(g, gv, f);
    report.labeling(h, g);
    return 0;
}

int run_count(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Family family = parse_family(cli.family_text);
    check_mode_consistency(cli, family);
    unsigned long long n =
        gain::exhaustive_count(g, family, spec, cli.max_enumeration, cli.max_cycles_edges);
    report.kv("family", cli.family_text);
    report.kv_count("count", n);
    return 0;
}

int run_cycles(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    gain::WalkMode mode;
    if (cli.mode_text == "flexible")
        mode = gain::WalkMode::flexible;
    else if (cli.mode_text == "rigid")
        mode = gain::WalkMode::rigid;
    else if (cli.mode_text == "undirected")
        mode = gain::WalkMode::undirected;
    else
        throw UsageError("cycles requires --mode flexible|rigid|undirected");

    gain::CycleSet cycles = gain::enumerate_cycles(g, mode, cli.max_cycles_edges);
    report.kv("mode", cli.mode_text);
    report.kv_count("cycle_count", cycles.cycles.size());
    ordered_json arr = ordered_json::array();
    for (const auto& c : cycles.cycles) {
        ordered_json cj;
        cj["vertices"] = c.vertices;
        cj["steps"] = ordered_json::array();
        std::string line = "cycle";
        for (std::size_t i = 0; i < c.steps.size(); ++i) {
            const bool fwd = c.steps[i].dir == gain::StepDirection::forward;
            cj["steps"].push_back({{"edge", c.steps[i].edge}, {"direction", fwd ? "forward" : "reverse"}});
            line += " " + c.vertices[i] + " " + c.steps[i].edge + (fwd ? ":+" : ":-");
        }
        line += " " + c.vertices.back();
        report.lines.push_back(line);
        arr.push_back(std::move(cj));
    }
    report.j["cycles"] = std::move(arr);
    return 0;
}

int run_orientations(const Cli& cli, Report& report) {
    gain::Digraph g = gain::load_graph(cli.graph_path, cli.strict);
    if (cli.labels_path.empty()) {
        std::size_t index = 0;
        ordered_json arr = ordered_json::array();
        gain::for_each_orientation(
            g,
            [&](const gain::Digraph& d) {
                ordered_json oj = ordered_json::array();
                std::string line = "orientation " + std::to_string(index++);
                for (const auto& e : d.edges()) {
                    oj.push_back({{"edge", e.id}, {"tail", e.tail}, {"head", e.head}});
                    line += " " + e.id + ":" + e.tail + ">" + e.head;
                }
                report.lines.push_back(line);
                arr.push_back(std::move(oj));
            },
            cli.max_orientation_edges);
        report.kv_count("orientation_count", index);
        report.j["orientations"] = std::move(arr);
        return 0;
    }

    if (cli.group_text.empty()) throw UsageError("--labels requires --group");
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    gain::Labeling labels = gain::load_labeling(cli.labels_path, g, spec);
    gain::OrientationAgreement agreement =
        cli.whole ? gain::orientation_intersection_check_whole(g, labels, cli.max_orientation_edges)
                  : gain::orientation_intersection_check(g, labels, cli.max_orientation_edges);
    report.kv("statement", std::string(cli.whole ? "whole-graph" : "edges"));
    report.kv("undirected_verdict", verdict_str(agreement.undirected_balanced));
    report.kv("intersection_verdict", verdict_str(agreement.intersection_balanced));
    report.kv("agree", agreement.agree);
    return agreement.undirected_balanced && agreement.agree ? 0 : 1;
}

int run_sample(const Cli& cli, Report& report) {
    gain::GroupSpec spec = gain::parse_group_spec(cli.group_text);
    std::mt19937_64 rng(cli.seed);
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < cli.sample_count; ++i) {
        gain::GroupElement e = gain::sample_element(spec, rng);
        arr.push_back(Report::element_json(e));
        report.lines.push_back("element " + gain::element_str(e));
    }
    report.j["elements"] = std::move(arr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balanced Abelian-group-valued labelings of directed multigraphs"};
    app.require_subcommand(1);
    Cli cli;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--emit", cli.emit, "output format: plain or machine")
            ->check(CLI::IsMember({"plain", "machine"}));
    };
    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", cli.graph_path, "graph file")->required();
        cmd->add_flag("--strict", cli.strict, "require declared vertices for all edges");
    };
    auto add_group = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--group", cli.group_text, "group spec, e.g. \"Z^2 x Z/4\"");
        if (required) opt->required();
    };
    auto add_family = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--family", cli.family_text, "HF|BF|WF|HR|BR|WR");
        if (required) opt->required();
    };
    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", cli.mode_text, "flexible|rigid|undirected");
    };
    auto add_labels = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--labels", cli.labels_path, "labeling file (TSV)");
        if (required) opt->required();
    };

    auto* structure = app.add_subcommand("structure", "group structure of a function family");
    add_graph(structure), add_group(structure), add_family(structure), add_mode(structure),
        add_common(structure);

    auto* check = app.add_subcommand("check", "balance / balanceability verdict with witness");
    add_graph(check), add_group(check), add_family(check), add_mode(check), add_labels(check),
        add_common(check);

    auto* potential = app.add_subcommand("potential", "vertex potential of a balanced edge labeling");
    add_graph(potential), add_group(potential), add_family(potential, false), add_mode(potential),
        add_labels(potential), add_common(potential);
    potential->add_option("--root", cli.root_id, "root vertex (default: first vertex)");

    auto* params = app.add_subcommand("params", "parametrization of a balanced labeling (WF or HR)");
    add_graph(params), add_group(params), add_family(params), add_mode(params), add_labels(params),
        add_common(params);

    auto* complete = app.add_subcommand("complete", "balance a vertex labeling (BF or BR)");
    add_graph(complete), add_group(complete), add_family(complete), add_mode(complete),
        add_labels(complete), add_common(complete);

    auto* split = app.add_subcommand("split", "split a whole-graph labeling into (vertex, edge) parts");
    add_graph(split), add_group(split), add_family(split, false), add_mode(split), add_labels(split),
        add_common(split);

    auto* join = app.add_subcommand("join", "rebuild a whole-graph labeling from (vertex, edge) parts");
    add_graph(join), add_group(join), add_family(join, false), add_mode(join), add_common(join);
    join->add_option("--vertex-labels", cli.vertex_labels_path, "vertex labeling file")->required();
    join->add_option("--edge-labels", cli.edge_labels_path, "edge labeling file")->required();

    auto* count = app.add_subcommand("count", "exhaustive count of balanced labelings");
    add_graph(count), add_group(count), add_family(count), add_mode(count), add_common(count);
    count->add_option("--max-enumeration", cli.max_enumeration, "labeling sweep cap");
    count->add_option("--max-cycles-edges", cli.max_cycles_edges, "cycle enumeration edge cap");

    auto* cycles = app.add_subcommand("cycles", "enumerate cycles up to rotation");
    add_graph(cycles), add_mode(cycles), add_common(cycles);
    cycles->add_option("--max-cycles-edges", cli.max_cycles_edges, "cycle enumeration edge cap");

    auto* orient = app.add_subcommand("orientations",
                                      "list orientations, or run the orientation-intersection check");
    add_graph(orient), add_group(orient, false), add_common(orient);
    orient->add_option("--labels", cli.labels_path, "labeling file (TSV)");
    orient->add_flag("--whole", cli.whole, "whole-graph statement (vertex and edge labels)");
    orient->add_option("--max-orientation-edges", cli.max_orientation_edges, "orientation cap");
    orient->add_option("--max-cycles-edges", cli.max_cycles_edges, "cycle enumeration edge cap");

    auto* sample = app.add_subcommand("sample", "sample group elements deterministically");
    add_group(sample), add_common(sample);
    sample->add_option("--seed", cli.seed, "random seed");
    sample->add_option("--count", cli.sample_count, "number of elements");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report report;
    report.machine = cli.emit == "machine";
    int code = 0;
    try {
        if (structure->parsed()) code = run_structure(cli, report);
        else if (check->parsed()) code = run_check(cli, report);
        else if (potential->parsed()) code = run_potential(cli, report);
        else if (params->parsed()) code = run_params(cli, report);
        else if (complete->parsed()) code = run_complete(cli, report);
        else if (split->parsed()) code = run_split(cli, report);
        else if (join->parsed()) code = run_join(cli, report);
        else if (count->parsed()) code = run_count(cli, report);
        else if (cycles->parsed()) code = run_cycles(cli, report);
        else if (orient->parsed()) code = run_orientations(cli, report);
        else if (sample->parsed()) code = run_sample(cli, report);
    } catch (const gain::UnbalancedError& e) {
        report.kv("verdict", std::string("unbalanced"));
        report.witness(e.witness);
        report.flush();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    report.flush();
    return code;
}

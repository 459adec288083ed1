#include "hjq/builtin_models.hpp"
#include "hjq/canonical_system.hpp"
#include "hjq/errors.hpp"
#include "hjq/integrability.hpp"
#include "hjq/model.hpp"
#include "hjq/numflow.hpp"
#include "hjq/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hjq::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double parse_value(const std::string& raw) {
    std::string text = trim(raw);
    std::size_t slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(text.substr(0, slash));
            double den = std::stod(text.substr(slash + 1));
            if (den == 0.0) throw hjq::Error("zero denominator in value '" + text + "'");
            return num / den;
        }
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (trim(text.substr(pos)) != "") throw hjq::Error("bad numeric value '" + text + "'");
        return v;
    } catch (const std::logic_error&) {
        throw hjq::Error("bad numeric value '" + text + "'");
    }
}

// "a=1, p_a=0" with values as decimals or fractions like "1/12".
std::map<std::string, double> parse_assignments(const std::string& text) {
    std::map<std::string, double> out;
    for (const std::string& piece : split(text, ',')) {
        std::string item = trim(piece);
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw hjq::Error("expected name=value, got '" + item + "'");
        std::string name = trim(item.substr(0, eq));
        if (name.empty()) throw hjq::Error("missing name in '" + item + "'");
        out[name] = parse_value(item.substr(eq + 1));
    }
    if (out.empty()) throw hjq::Error("no assignments in '" + text + "'");
    return out;
}

std::map<hjq::SymbolId, double> resolve_assignments(const std::map<std::string, double>& named,
                                                    const hjq::SymbolTable& table,
                                                    const char* what) {
    std::map<hjq::SymbolId, double> out;
    for (const auto& [name, value] : named) {
        auto sid = table.find(name);
        if (!sid) throw hjq::Error("unknown symbol '" + name + "' in " + what);
        out[*sid] = value;
    }
    return out;
}

const char* status_word(hjq::ClosureStatus s) {
    switch (s) {
    case hjq::ClosureStatus::Integrable: return "integrable";
    case hjq::ClosureStatus::ParameterFixing: return "parameter-fixing";
    case hjq::ClosureStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

// Validation findings go to stderr; any "error:" finding aborts the run.
bool report_findings(const hjq::ModelDefinition& def) {
    bool fatal = false;
    for (const std::string& f : hjq::validate_model(def)) {
        std::cerr << f << "\n";
        if (f.rfind("error:", 0) == 0) fatal = true;
    }
    return fatal;
}

int cmd_analyze(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    hjq::ModelDefinition def = hjq::parse_model_text(text);
    if (report_findings(def)) return 1;

    hjq::AnalysisReport report = hjq::analyze_model(def, text);
    if (format == "json")
        std::cout << hjq::report_json(report);
    else
        std::cout << hjq::report_text(report);

    switch (report.closure.status) {
    case hjq::ClosureStatus::Integrable: return 0;
    case hjq::ClosureStatus::ParameterFixing: return 2;
    case hjq::ClosureStatus::BudgetExceeded: return 1;
    }
    return 1;
}

int cmd_flow(const std::string& path, const std::string& path_text,
             const std::string& initial_text, double step, double tol,
             const std::string& csv_path, const std::string& json_path) {
    std::string text = read_file(path);
    hjq::ModelDefinition def = hjq::parse_model_text(text);
    if (report_findings(def)) return 1;

    hjq::BoundModel bm = hjq::bind_model(def);
    hjq::CanonicalSystem cs = hjq::build_hjpde_set(bm);
    hjq::ClosureReport closure = hjq::constraint_closure(cs);
    if (closure.status != hjq::ClosureStatus::Integrable) {
        std::cerr << "flow requires an integrable system; closure status is "
                  << status_word(closure.status) << "\n";
        return 1;
    }
    const hjq::SymbolTable& table = cs.model.table;

    hjq::ParameterPath contour;
    for (const std::string& piece : split(path_text, ';')) {
        if (trim(piece).empty()) continue;
        contour.waypoints.push_back(
            resolve_assignments(parse_assignments(piece), table, "--path"));
    }
    std::map<hjq::SymbolId, double> initial =
        resolve_assignments(parse_assignments(initial_text), table, "--initial");

    hjq::FlowOptions opts;
    opts.step = step;
    hjq::FlowResult result = hjq::integrate_flow(cs, closure, contour, initial, opts);

    {
        std::ofstream os(csv_path, std::ios::binary);
        if (!os) throw hjq::Error("cannot write " + csv_path);
        hjq::write_flow_csv(result, table, os);
    }
    {
        std::ofstream os(json_path, std::ios::binary);
        if (!os) throw hjq::Error("cannot write " + json_path);
        os << hjq::flow_summary_json(result, table);
    }

    std::cout << "samples: " << result.samples.size() << "\n";
    std::cout << "final state:";
    for (std::size_t i = 0; i < result.state_symbols.size(); ++i)
        std::cout << (i ? ", " : " ") << table.name(result.state_symbols[i]) << "="
                  << result.final_state[i];
    std::cout << "\n";
    std::cout << "Z = " << hjq::action_along_flow(result) << "\n";
    std::cout << "max constraint residual: " << result.max_constraint_residual << "\n";
    std::cout << "wrote " << csv_path << " and " << json_path << "\n";

    return result.max_constraint_residual < tol ? 0 : 1;
}

int cmd_corpus() {
    for (const std::string& name : hjq::builtin_names()) {
        std::string mismatch = hjq::corpus_mismatch(hjq::builtin(name));
        if (!mismatch.empty()) {
            std::cout << mismatch << "\n";
            return 1;
        }
        std::cout << name << ": ok\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical analysis of singular Lagrangians"};
    app.require_subcommand(1);

    std::string analyze_path;
    std::string format = "text";
    CLI::App* analyze = app.add_subcommand(
        "analyze", "derive the constraint closure and action form for a model file");
    analyze->add_option("file", analyze_path, "model file")->required();
    analyze->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string flow_path, path_text, initial_text;
    double step = 1e-3, tol = 1e-6;
    std::string csv_path = "flow.csv", json_path = "flow_summary.json";
    CLI::App* flow = app.add_subcommand(
        "flow", "integrate the canonical flow along a parameter contour");
    flow->add_option("file", flow_path, "model file")->required();
    flow->add_option("--path", path_text, "waypoints, e.g. \"tau=0,N=1 ; tau=1,N=1\"")
        ->required();
    flow->add_option("--initial", initial_text, "initial data, e.g. \"a=1,p_a=0\"")->required();
    flow->add_option("--step", step, "step in contour arc length");
    flow->add_option("--tol", tol, "constraint residual tolerance for exit status");
    flow->add_option("--csv", csv_path, "per-sample output file");
    flow->add_option("--json", json_path, "summary output file");

    CLI::App* corpus = app.add_subcommand(
        "corpus", "check every builtin model against its frozen expected results");
    CLI::App* version = app.add_subcommand("version", "print the tool version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_path, format);
        if (flow->parsed())
            return cmd_flow(flow_path, path_text, initial_text, step, tol, csv_path, json_path);
        if (corpus->parsed()) return cmd_corpus();
        if (version->parsed()) {
            std::cout << hjq::kToolName << " " << hjq::kToolVersion << "\n";
            return 0;
        }
    } catch (const hjq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

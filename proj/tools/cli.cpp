// Command-line driver: seeded verification suites, one-off bracket and
// derivative evaluations on parsed expressions, and the worked-instance
// gallery.  All output is deterministic for a fixed seed and flag set.

#include "msym/io.hpp"
#include "msym/moment.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

// compute arguments may be inline expressions or paths to files holding one
std::string load_arg(const std::string& arg)
{
    std::ifstream in(arg);
    if (!in.good()) return arg;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials, bool json)
{
    std::vector<msym::CheckReport> reports = msym::run_suite(suite, seed, trials);
    if (json)
        std::cout << msym::report_json(suite, seed, reports);
    else
        std::cout << msym::report_text(reports);
    for (const msym::CheckReport& r : reports)
        if (!r.ok) return 1;
    return 0;
}

int run_compute(const std::string& op, const std::vector<std::string>& args, int dim, bool json)
{
    using namespace msym;
    std::string result;
    if (op == "schouten") {
        if (args.size() != 2) throw CLI::ValidationError("schouten takes two multivectors");
        result = mv_str(schouten(parse_mv(load_arg(args[0]), dim), parse_mv(load_arg(args[1]), dim)));
    } else if (op == "nu") {
        if (args.empty()) throw CLI::ValidationError("nu takes at least one multivector");
        MVWord word;
        for (const std::string& a : args) word.push_back(parse_mv(load_arg(a), dim));
        result = mv_str(nu_n(word));
    } else if (op == "d") {
        if (args.size() != 1) throw CLI::ValidationError("d takes one form");
        result = form_str(exterior_d(parse_form(load_arg(args[0]), dim)));
    } else if (op == "contract") {
        if (args.size() != 2) throw CLI::ValidationError("contract takes a multivector and a form");
        result = form_str(contract(parse_mv(load_arg(args[0]), dim), parse_form(load_arg(args[1]), dim)));
    } else if (op == "primitive") {
        if (args.size() != 1) throw CLI::ValidationError("primitive takes one closed form");
        result = form_str(poincare_primitive(parse_form(load_arg(args[0]), dim)));
    } else {
        throw CLI::ValidationError("unknown operation: " + op);
    }
    if (json) {
        nlohmann::ordered_json j{{"op", op}, {"dim", dim}, {"result", result}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result << "\n";
    }
    return 0;
}

int run_gallery(bool json)
{
    using namespace msym;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const GalleryInstance& g : moment_gallery()) {
        nlohmann::ordered_json j{{"name", g.name},
                                 {"dim", g.P.dim},
                                 {"m", g.P.m},
                                 {"generators", g.act.L.space->dim()},
                                 {"homotopy", g.h.has_value()},
                                 {"expected_accept", g.expected_accept}};
        if (json)
            arr.push_back(j);
        else
            std::cout << g.name << "  dim=" << g.P.dim << "  m=" << g.P.m
                      << "  generators=" << g.act.L.space->dim()
                      << (g.h.has_value() ? "  homotopy" : "  obstructed")
                      << (g.expected_accept ? "  accepts" : "  rejects") << "\n";
    }
    if (json) std::cout << arr.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact verification engine for graded bracket calculus"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int trials = 0;
    int dim = 3;
    bool json = false;

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suites_help = "all";
    for (const std::string& s : msym::suite_names()) suites_help += ", " + s;
    verify->add_option("suite", suite, "one of: " + suites_help);
    verify->add_option("--seed", seed, "generator seed");
    verify->add_option("--trials", trials, "trial count override (0 = suite default)");
    verify->add_flag("--json", json, "structured report");

    std::string op;
    std::vector<std::string> args;
    CLI::App* compute = app.add_subcommand("compute", "evaluate one operation");
    compute->add_option("op", op, "schouten | nu | d | contract | primitive")->required();
    compute->add_option("args", args, "expressions or files");
    compute->add_option("--dim", dim, "ambient dimension");
    compute->add_flag("--json", json, "structured output");

    CLI::App* gallery = app.add_subcommand("gallery", "list the worked instances");
    gallery->add_flag("--json", json, "structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(suite, seed, trials, json);
        if (compute->parsed()) return run_compute(op, args, dim, json);
        return run_gallery(json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

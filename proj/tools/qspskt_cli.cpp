// Command-line front end for the qspskt shared library. Talks to the library
// exclusively through the C API in qspskt.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspskt.h"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(QSPSKT_ERR_PARSE);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(QSPSKT_ERR_PARSE);
    }
    out << text << "\n";
}

[[noreturn]] void die(qspskt_status st) {
    std::cerr << "error: " << qspskt_last_error() << "\n";
    std::exit(st);
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { qspskt_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QSP Solovay-Kitaev toolkit"};
    app.require_subcommand(1);

    // eval
    std::string eval_file, eval_json_out;
    double eval_x = 0.5;
    int eval_grid = 0;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a protocol at a signal or over a grid");
    eval_cmd->add_option("protocol", eval_file, "protocol JSON file")->required();
    eval_cmd->add_option("-x,--signal", eval_x, "signal value in [-1,1]");
    eval_cmd->add_option("--grid", eval_grid, "evaluate on N uniform nodes instead of one signal");
    eval_cmd->add_option("--json-out", eval_json_out, "write the report to a file");

    // fit
    std::string fit_file, fit_json_out;
    int fit_degree = 2;
    double fit_tolerance = 1e-6;
    std::uint64_t fit_seed = 0;
    bool fit_free = false;
    auto* fit_cmd = app.add_subcommand("fit", "fit phases to a Chebyshev target series");
    fit_cmd->add_option("target", fit_file, "target ChebSeries JSON file")->required();
    fit_cmd->add_option("--degree", fit_degree, "protocol degree (oracle count)")->required();
    fit_cmd->add_option("--tolerance", fit_tolerance, "requested sup residual");
    fit_cmd->add_option("--seed", fit_seed, "random seed for the multistart");
    fit_cmd->add_flag("--free", fit_free, "optimize all phases instead of the symmetric half");
    fit_cmd->add_option("--json-out", fit_json_out, "write the fitted protocol to a file");

    // synthesize
    std::string syn_file, syn_json_out, syn_ledger_out, syn_builder = "phase-finder";
    double syn_eps = 1e-2, syn_eps0 = 0.2;
    int syn_depth = 2, syn_degree0 = -1, syn_force = -1;
    std::uint64_t syn_seed = 3;
    auto* syn_cmd = app.add_subcommand("synthesize", "run the lifted Solovay-Kitaev pipeline");
    syn_cmd->add_option("target", syn_file, "target ChebSeries JSON file")->required();
    syn_cmd->add_option("--epsilon", syn_eps, "requested uniform error");
    syn_cmd->add_option("--epsilon0", syn_eps0, "initial net radius");
    syn_cmd->add_option("--depth", syn_depth, "maximum refinement levels");
    syn_cmd->add_option("--degree0", syn_degree0, "initial fit degree (-1: auto)");
    syn_cmd->add_option("--force-levels", syn_force, "run exactly this many refinements");
    syn_cmd->add_option("--seed", syn_seed, "random seed");
    syn_cmd->add_option("--builder", syn_builder, "initial builder: phase-finder | fourier-lcu");
    syn_cmd->add_option("--json-out", syn_json_out, "write the protocol to a file");
    syn_cmd->add_option("--ledger-out", syn_ledger_out, "write the level ledger to a file");

    // verify
    std::string verify_suite;
    auto* verify_cmd = app.add_subcommand("verify", "run a named invariant suite");
    verify_cmd->add_option("suite", verify_suite, "suite name")->required();

    CLI11_PARSE(app, argc, argv);

    if (*eval_cmd) {
        std::string text = read_file(eval_file);
        qspskt_protocol* p = nullptr;
        if (auto st = qspskt_protocol_parse(text.c_str(), &p)) die(st);
        std::vector<double> xs;
        if (eval_grid > 1) {
            for (int i = 0; i < eval_grid; ++i) {
                xs.push_back(-1.0 + 2.0 * i / (eval_grid - 1));
            }
        } else {
            xs.push_back(eval_x);
        }
        OwnedString rep;
        auto st = qspskt_protocol_eval_report(p, xs.data(), xs.size(), &rep.ptr);
        qspskt_protocol_free(p);
        if (st) die(st);
        write_output(eval_json_out, rep.str());
        return 0;
    }

    if (*fit_cmd) {
        std::string text = read_file(fit_file);
        OwnedString proto;
        double residual = 0.0;
        auto st = qspskt_fit(text.c_str(), fit_degree, fit_tolerance, fit_free ? 0 : 1, fit_seed,
                             &proto.ptr, &residual);
        if (st) die(st);
        write_output(fit_json_out, proto.str());
        std::fprintf(stderr, "residual %.12e\n", residual);
        return 0;
    }

    if (*syn_cmd) {
        std::string text = read_file(syn_file);
        std::ostringstream cfg;
        cfg << "{\"epsilon0\":" << syn_eps0 << ",\"max_levels\":" << syn_depth
            << ",\"degree0\":" << syn_degree0 << ",\"force_levels\":" << syn_force
            << ",\"seed\":" << syn_seed << ",\"builder\":\"" << syn_builder << "\"}";
        OwnedString proto, ledger;
        auto st =
            qspskt_synthesize(text.c_str(), syn_eps, cfg.str().c_str(), &proto.ptr, &ledger.ptr);
        if (proto.ptr) write_output(syn_json_out, proto.str());
        if (ledger.ptr) write_output(syn_ledger_out.empty() ? "-" : syn_ledger_out, ledger.str());
        if (st) die(st);
        return 0;
    }

    if (*verify_cmd) {
        OwnedString rep;
        auto st = qspskt_verify(verify_suite.c_str(), &rep.ptr);
        if (st) die(st);
        auto j = nlohmann::json::parse(rep.str());
        bool suite_pass = j.value("pass", false);
        for (const auto& row : j["rows"]) {
            std::printf("%s  %-45s metric %-12.6g threshold %-12.6g %s\n",
                        row.value("pass", false) ? "PASS" : "FAIL",
                        row.value("check", "").c_str(), row.value("metric", 0.0),
                        row.value("threshold", 0.0), row.value("note", "").c_str());
        }
        std::printf("%s suite %s\n", suite_pass ? "PASS" : "FAIL", verify_suite.c_str());
        return suite_pass ? 0 : 1;
    }

    return 0;
}

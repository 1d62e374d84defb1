// Verification workbench CLI.
//
//   hhverify verify --expr "x^2*y^2" --rect 0,1,0,1 [--suite all] [--out report.json]
//   hhverify corpus run [--entry x2y2] [--out report.json]
//   hhverify corpus list
//
// Exit codes: 0 = all pass / expected-fail, 1 = unexpected fail, 2 = usage or
// config error.

#include <CLI11.hpp>

#include <hh/harness.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

hh::Rect parse_rect(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
    if (vals.size() != 4) throw hh::ConfigError("--rect expects a,b,c,d");
    return hh::Rect(vals[0], vals[1], vals[2], vals[3]);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int emit(const hh::RunResult& result, const std::string& csv, const std::string& out_path) {
    std::string json = result.report.dump();
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else if (ends_with(out_path, ".csv")) {
        // CSV summary at the requested path, full JSON report alongside it
        std::ofstream csv_out(out_path);
        if (!csv_out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        csv_out << csv;
        std::ofstream jout(out_path.substr(0, out_path.size() - 4) + ".json");
        jout << json << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << json << "\n";
    }
    std::cerr << (result.exit_code == 0 ? "status: pass" : "status: unexpected fail") << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification workbench for rectangle inequality chains and mappings"};
    app.require_subcommand(1);

    hh::Config cfg;
    std::string config_path;
    std::string out_path;
    double p_opt = 0.0, q_opt = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", cfg.quad_tol, "quadrature tolerance");
        cmd->add_option("--seed", cfg.seed, "sampling seed");
        cmd->add_option("--trials", cfg.trials, "random trials per classifier");
        cmd->add_option("--grid", cfg.grid, "mapping property grid resolution");
        cmd->add_option("--out", out_path, "report path (.json, or .csv for a CSV summary)");
        cmd->add_option("--config", config_path, "key=value config file");
    };

    auto* verify = app.add_subcommand("verify", "verify a single expression on a rectangle");
    std::string expr_text, rect_text, suite = "all", iv_form = "corrected";
    verify->add_option("--expr", expr_text, "expression in x and y")->required();
    verify->add_option("--rect", rect_text, "rectangle a,b,c,d")->required();
    verify->add_option("--suite", suite,
                       "suite: all|classify|lemma1|bounds|chain|mappings|errata");
    verify->add_option("--p", p_opt, "Holder exponent p (>1)");
    verify->add_option("--q", q_opt, "power-mean exponent q (>=1)");
    verify->add_option("--iv-form", iv_form, "mapping integral inequality form: corrected|printed");
    add_common(verify);

    auto* corpus = app.add_subcommand("corpus", "operate on the builtin corpus");
    corpus->require_subcommand(1);
    auto* corpus_run = corpus->add_subcommand("run", "run all suites over corpus entries");
    std::vector<std::string> entry_names;
    corpus_run->add_option("--entry", entry_names, "restrict to named entries");
    corpus_run->add_option("--suite", suite, "suite selection");
    add_common(corpus_run);
    auto* corpus_list = corpus->add_subcommand("list", "list corpus entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) hh::load_config_file(config_path, cfg);

        if (corpus_list->parsed()) {
            for (const auto& e : hh::builtin_corpus())
                std::cout << e.name << "\t" << e.expression << "\t[" << e.rect.a << "," << e.rect.b
                          << "]x[" << e.rect.c << "," << e.rect.d << "]\t"
                          << hh::expected_class_name(e.expected_class) << "\t" << e.notes << "\n";
            return 0;
        }

        cfg.suites = {suite};
        if (verify->parsed()) {
            cfg.iv_form = iv_form == "printed" ? hh::GIneqForm::Printed : hh::GIneqForm::Corrected;
            if (p_opt != 0.0) cfg.holder_ps = {p_opt};
            if (q_opt != 0.0) {
                if (!(q_opt >= 1.0)) throw hh::ConfigError("--q must be >= 1");
                cfg.extra_qs = {q_opt};
            }
            hh::parse(expr_text);  // reject malformed input as a usage error
            hh::CorpusEntry entry{"cli", expr_text, parse_rect(rect_text),
                                  hh::ExpectedClass::Unknown, ""};
            std::string csv;
            hh::RunResult result = hh::run_suite_with_csv(cfg, {entry}, csv);
            return emit(result, csv, out_path);
        }

        // corpus run
        cfg.entries = entry_names;
        std::string csv;
        hh::RunResult result = hh::run_suite_with_csv(cfg, hh::builtin_corpus(), csv);
        return emit(result, csv, out_path);
    } catch (const hh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hh::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

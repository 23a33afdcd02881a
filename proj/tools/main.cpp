// discrimlab command-line front end. Talks to the core exclusively through
// the C API in discrimlab/discrimlab.h: flags are folded into the flat
// key=value configuration (flag assignments come last, so flags win over the
// config file) and handed to dlab_run.

#include <discrimlab/discrimlab.h>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("--config", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class ConfigBuilder {
public:
    // registers a flag and mirrors it into the config text when the user sets it
    template <typename T>
    void add(CLI::App* cmd, const std::string& flag, const std::string& key, T& storage,
             const std::string& help) {
        auto* opt = cmd->add_option(flag, storage, help);
        emitters_.push_back([opt, key, &storage] {
            if (opt->count() == 0) return std::string();
            std::ostringstream line;
            line.precision(17);
            line << key << " = " << storage << "\n";
            return line.str();
        });
    }

    void add_flag(CLI::App* cmd, const std::string& flag, const std::string& key, bool& storage,
                  const std::string& help) {
        auto* opt = cmd->add_flag(flag, storage, help);
        emitters_.push_back([opt, key, &storage] {
            if (opt->count() == 0) return std::string();
            return key + std::string(" = ") + (storage ? "true" : "false") + "\n";
        });
    }

    std::string overrides() const {
        std::string text;
        for (const auto& emit : emitters_) text += emit();
        return text;
    }

private:
    std::vector<std::function<std::string()>> emitters_;
};

int execute(const std::string& command, const std::string& config_text,
            const CommonOptions& common) {
    const auto t0 = std::chrono::steady_clock::now();
    dlab_report* report = nullptr;
    const dlab_status status = dlab_run(command.c_str(), config_text.c_str(), &report);
    if (status != DLAB_OK) {
        std::cerr << "discrimlab: " << dlab_status_name(status) << ": "
                  << dlab_last_error_message() << "\n";
        return 2;
    }
    int rc = 0;
    if (!common.out_path.empty()) {
        const dlab_status wst =
            dlab_report_write(report, common.format.c_str(), common.out_path.c_str());
        if (wst != DLAB_OK) {
            std::cerr << "discrimlab: " << dlab_status_name(wst) << ": "
                      << dlab_last_error_message() << "\n";
            dlab_report_free(report);
            return 2;
        }
    } else {
        char* text = nullptr;
        const dlab_status rst = dlab_report_render(report, common.format.c_str(), &text);
        if (rst != DLAB_OK) {
            std::cerr << "discrimlab: " << dlab_status_name(rst) << ": "
                      << dlab_last_error_message() << "\n";
            dlab_report_free(report);
            return 2;
        }
        std::fputs(text, stdout);
        dlab_string_free(text);
    }
    const bool all_pass = dlab_report_all_pass(report) != 0;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    // wall time goes to stderr only: report files must be byte-identical
    // across reruns of the same configuration
    std::cerr << "discrimlab " << command << ": rows=" << dlab_report_row_count(report)
              << " all_pass=" << (all_pass ? "true" : "false") << " (" << ms << " ms)\n";
    if (!all_pass) rc = 1;
    dlab_report_free(report);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for the SWAP-game discriminability score, its "
                 "noncontextual bounds and the discriminability-constrained CHSH bound"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dlab_version()));

    struct SubcommandState {
        CLI::App* cmd = nullptr;
        CommonOptions common;
        ConfigBuilder builder;
        // flag storage
        double eta1 = 0, gamma2 = 0, gamma_re = 0, gamma_im = 0, q = 0, c = 0, theta = 0, tol = 0;
        std::int64_t samples = 0, steps = 0, runs = 0, resolution = 0, n = 0, split = 0,
                     budget = 0, seed = 0;
        bool sharp = false, no_sharp = false;
        std::string sweep, amps, alice0, alice1, bob0, bob1;
        std::string pi_plus_0, pi_plus_1, s_plus_0, s_minus_0, s_plus_1, s_minus_1;
    };

    std::vector<std::unique_ptr<SubcommandState>> states;

    auto make_command = [&](const std::string& name, const std::string& help) {
        auto state = std::make_unique<SubcommandState>();
        state->cmd = app.add_subcommand(name, help);
        state->cmd->add_option("--config", state->common.config_path,
                               "flat key=value configuration file");
        state->cmd->add_option("--out", state->common.out_path, "output file path");
        state->cmd->add_option("--format", state->common.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        state->builder.add(state->cmd, "--seed", "seed", state->seed, "RNG seed (default 0)");
        states.push_back(std::move(state));
        return states.back().get();
    };

    {
        auto* s = make_command("discrim", "closed-form vs game discriminability for one ensemble");
        s->builder.add(s->cmd, "--eta1", "eta1", s->eta1, "prior of the first state");
        s->builder.add(s->cmd, "--gamma2", "gamma2", s->gamma2, "squared overlap |gamma12|^2");
        s->builder.add(s->cmd, "--gamma-re", "gamma_re", s->gamma_re, "Re gamma12");
        s->builder.add(s->cmd, "--gamma-im", "gamma_im", s->gamma_im, "Im gamma12");
        s->builder.add(s->cmd, "--samples", "samples", s->samples, "Monte Carlo sample count");
        s->builder.add(s->cmd, "--steps", "steps", s->steps, "sweep |gamma|^2 over a grid");
    }
    {
        auto* s = make_command("ontic-bound",
                               "direct noncontextual bound, quantum saturation and q* threshold");
        s->builder.add(s->cmd, "--q", "q", s->q, "off-diagonal pass probability");
        s->builder.add(s->cmd, "--c", "c", s->c, "confusability");
        s->builder.add(s->cmd, "--steps", "steps", s->steps, "c-grid size over [0, 1/2]");
        s->builder.add(s->cmd, "--eta1", "eta1", s->eta1, "prior (q* threshold mode)");
        s->builder.add(s->cmd, "--gamma2", "gamma2", s->gamma2, "overlap (q* threshold mode)");
        s->builder.add(s->cmd, "--resolution", "resolution", s->resolution, "search resolution");
    }
    {
        auto* s = make_command("ontic-search", "maximize the game score over PNC models");
        s->builder.add(s->cmd, "--q", "q", s->q, "off-diagonal pass probability");
        s->builder.add_flag(s->cmd, "--sharp,!--no-sharp", "sharp", s->sharp,
                            "pin the sharp single-copy test (default on)");
        s->builder.add(s->cmd, "--c", "c", s->c, "confusability (sharp only)");
        s->builder.add(s->cmd, "--resolution", "resolution", s->resolution,
                       "grid points per free parameter");
        s->builder.add(s->cmd, "--eta1", "eta1", s->eta1, "prior of the first outcome");
        s->builder.add(s->cmd, "--n", "n", s->n, "ontic space size (n > 2: stochastic search)");
        s->builder.add(s->cmd, "--split", "split", s->split, "size of the T support (n > 2)");
        s->builder.add(s->cmd, "--budget", "budget", s->budget, "evaluation budget (n > 2)");
    }
    {
        auto* s = make_command("bell-verify", "separation parameters and CHSH bound for a scenario");
        s->builder.add(s->cmd, "--theta", "theta", s->theta,
                       "partially entangled cos(theta)|00> + sin(theta)|11>");
        s->builder.add(s->cmd, "--amps", "amps", s->amps, "8 comma-separated re,im amplitudes");
        s->builder.add(s->cmd, "--alice0", "alice0", s->alice0, "Alice direction x=0 (x,y,z)");
        s->builder.add(s->cmd, "--alice1", "alice1", s->alice1, "Alice direction x=1 (x,y,z)");
        s->builder.add(s->cmd, "--bob0", "bob0", s->bob0, "fixed Bob direction y=0 (x,y,z)");
        s->builder.add(s->cmd, "--bob1", "bob1", s->bob1, "fixed Bob direction y=1 (x,y,z)");
        s->builder.add(s->cmd, "--pi-plus-0", "pi_plus_0", s->pi_plus_0, "table: prior of +|0");
        s->builder.add(s->cmd, "--pi-plus-1", "pi_plus_1", s->pi_plus_1, "table: prior of +|1");
        s->builder.add(s->cmd, "--s-plus-0", "s_plus_0", s->s_plus_0, "table: Bloch of rho_{+|0}");
        s->builder.add(s->cmd, "--s-minus-0", "s_minus_0", s->s_minus_0, "table: Bloch of rho_{-|0}");
        s->builder.add(s->cmd, "--s-plus-1", "s_plus_1", s->s_plus_1, "table: Bloch of rho_{+|1}");
        s->builder.add(s->cmd, "--s-minus-1", "s_minus_1", s->s_minus_1, "table: Bloch of rho_{-|1}");
        s->builder.add(s->cmd, "--samples", "samples", s->samples,
                       "also estimate the separations by sampling");
        s->builder.add(s->cmd, "--tol", "tol", s->tol, "bound-check tolerance");
    }
    {
        auto* s = make_command("bell-sweep", "CHSH sweeps: entangled family or symmetric-D");
        s->builder.add(s->cmd, "--sweep", "sweep", s->sweep, "theta (default) or dsym");
        s->builder.add(s->cmd, "--steps", "steps", s->steps, "number of sweep rows");
        s->builder.add(s->cmd, "--tol", "tol", s->tol, "violation tolerance");
    }
    {
        auto* s = make_command("sample", "seeded Monte Carlo runs of the SWAP game");
        s->builder.add(s->cmd, "--eta1", "eta1", s->eta1, "prior of the first state");
        s->builder.add(s->cmd, "--gamma2", "gamma2", s->gamma2, "squared overlap");
        s->builder.add(s->cmd, "--samples", "samples", s->samples, "draws per frequency");
        s->builder.add(s->cmd, "--runs", "runs", s->runs, "independent seeded runs");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& state : states) {
        if (!state->cmd->parsed()) continue;
        std::string config_text;
        try {
            if (!state->common.config_path.empty())
                config_text = read_file(state->common.config_path) + "\n";
        } catch (const CLI::Error& e) {
            std::cerr << "discrimlab: " << e.what() << "\n";
            return 2;
        }
        config_text += state->builder.overrides();
        return execute(state->cmd->get_name(), config_text, state->common);
    }
    return 2;
}

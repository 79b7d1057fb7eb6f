// sim run --config <path> [--set section.key=value]... | sim verify [--sizes ...]
#include <omp.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "gempic/simulation.hpp"
#include "gempic/verify.hpp"

using namespace gempic;

namespace {

constexpr int kOk = 0, kCheckFailure = 1, kConfigError = 2;

int do_run(const std::string& path, const std::vector<std::string>& sets, bool serial)
{
    RunConfig cfg;
    try {
        ConfigTable t = path.empty() ? ConfigTable{} : load_config_file(path);
        for (const auto& s : sets) apply_override(t, s);
        if (const char* env = std::getenv("SIM_SEED")) apply_override(t, std::string("particles.seed=") + env);
        cfg = make_run_config(t);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    try {
        Simulation sim(cfg, serial ? Backend::Serial : Backend::OpenMP);
        const auto records = sim.run();
        write_csv(records, cfg.output_path);
        const RunSummary s = summarize(records);
        std::printf("steps %zu  t %.6g  records %zu -> %s\n", cfg.steps, sim.state().t, records.size(),
                    cfg.output_path.c_str());
        std::printf("max relative energy error %.3e\n", s.max_rel_energy_error);
        std::printf("max momentum drift        %.3e\n", s.max_momentum_error);
        std::printf("max gauss residual        %.3e\n", s.max_gauss_residual);
        return kOk;
    } catch (const NumericalBlowup& e) {
        std::cerr << "blow-up: " << e.what() << '\n';
        return kCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailure;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"structure-preserving PIC kit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0: runtime default)")->check(CLI::NonNegativeNumber);

    auto* run = app.add_subcommand("run", "run a simulation and write the diagnostics CSV");
    std::string config;
    std::vector<std::string> sets;
    bool serial = false;
    run->add_option("--config", config, "flat TOML config file");
    run->add_option("--set", sets, "override section.key=value")->take_all();
    run->add_flag("--serial", serial, "use the serial reference kernels");

    auto* verify = app.add_subcommand("verify", "run the structural verification suite");
    std::vector<std::size_t> sizes{16, 15};
    std::string fault = "none";
    verify->add_option("--sizes", sizes, "1D grid sizes for the commuting checks")->delimiter(',');
    verify->add_option("--inject-fault", fault, "none | faraday_sign | skip_k0")
        ->check(CLI::IsMember({"none", "faraday_sign", "skip_k0"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }
    if (threads > 0) omp_set_num_threads(threads);

    if (*run) return do_run(config, sets, serial);

    VerifyOptions opt;
    opt.sizes = sizes;
    if (fault == "faraday_sign") opt.fault = Fault::FaradaySignFlip;
    if (fault == "skip_k0") opt.fault = Fault::SkipK0Inverse;
    const VerifyReport rep = run_verification(opt);
    rep.print(std::cout);
    return rep.ok() ? kOk : kCheckFailure;
}

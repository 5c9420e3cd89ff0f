// Command-line front end: JSON/CSV plumbing over the library. Single-threaded
// orchestration; the library parallelizes internally (DIRAC_DELAY_THREADS
// caps the pool).
//
// Exit codes: 0 success (support-violation warnings included), 2 invalid
// input, 3 eigenvalue localization failure, 4 ill-conditioned subspectra
// system. stdout carries one machine-readable JSON summary per run; all
// diagnostics go to stderr.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diracdelay/io.hpp"

namespace dd = diracdelay;
using nlohmann::json;

namespace {

struct Options {
    double a = dd::kPi / 2.0;
    std::size_t M = 512;
    int N = 64;
    int K = -1;
    std::uint64_t seed = 1;
    int trials = 200;
    double r = 1.0;
    double tol_residual = 1e-10;
    double pert_min = 1e-6;
    double pert_max = -1.0;
    std::string out = ".";
    std::string config;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--a", o.a, "delay length, pi/2 <= a < pi");
    sub->add_option("--M", o.M, "potential grid resolution (even)");
    sub->add_option("--N", o.N, "spectrum truncation half width");
    sub->add_option("--K", o.K, "subspectra expansion half width");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--trials", o.trials, "stability trial count");
    sub->add_option("--r", o.r, "stability ball radius");
    sub->add_option("--tol-residual", o.tol_residual, "root residual tolerance");
    sub->add_option("--pert-min", o.pert_min, "smallest perturbation norm");
    sub->add_option("--pert-max", o.pert_max, "largest perturbation norm (0 disables)");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--config", o.config, "JSON config file (flags override it)");
}

// CLI flags override config values override defaults.
void apply_config(CLI::App* sub, Options& o) {
    if (o.config.empty()) return;
    const json cfg = dd::read_json_file(o.config);
    auto load = [&](const char* flag, const char* key, auto& field) {
        if (sub->count(flag) == 0 && cfg.contains(key))
            field = cfg.at(key).get<std::decay_t<decltype(field)>>();
    };
    load("--a", "a", o.a);
    load("--M", "M", o.M);
    load("--N", "N", o.N);
    load("--K", "K", o.K);
    load("--seed", "seed", o.seed);
    load("--trials", "trials", o.trials);
    load("--r", "r", o.r);
    load("--tol-residual", "tol_residual", o.tol_residual);
    load("--pert-min", "pert_min", o.pert_min);
    load("--pert-max", "pert_max", o.pert_max);
    load("--out", "out", o.out);
}

std::filesystem::path out_dir(const Options& o) {
    std::filesystem::path dir(o.out);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string eigenvalue_csv(const dd::Spectrum& s, const dd::CharFunctionKernelRep& rep) {
    std::string csv = "re,im,residual\n";
    for (const dd::cplx& v : s.values) {
        csv += dd::format_double(v.real());
        csv += ',';
        csv += dd::format_double(v.imag());
        csv += ',';
        csv += dd::format_double(std::abs(dd::eval_char(rep, v)));
        csv += '\n';
    }
    return csv;
}

std::string plot_csv(const dd::CharFunctionKernelRep& rep1,
                     const dd::CharFunctionKernelRep& rep2, int N) {
    const double limit = std::min(static_cast<double>(N) + 0.5, 12.0);
    const long steps = std::lround(limit * 64.0);
    std::string csv = "lambda,abs_delta1,abs_delta2\n";
    for (long k = -steps; k <= steps; ++k) {
        const double x = static_cast<double>(k) / 64.0;
        csv += dd::format_double(x);
        csv += ',';
        csv += dd::format_double(std::abs(dd::eval_char(rep1, dd::cplx(x, 0.0))));
        csv += ',';
        csv += dd::format_double(std::abs(dd::eval_char(rep2, dd::cplx(x, 0.0))));
        csv += '\n';
    }
    return csv;
}

int cmd_forward(const Options& o, const std::string& input) {
    const dd::PotentialPair pp = dd::potential_pair_from_json(dd::read_json_file(input));
    dd::RootOptions ropts;
    ropts.residual_tol = o.tol_residual;
    const dd::ForwardResult fr = dd::forward_spectra(pp, o.N, ropts);
    const dd::KernelPair kp = dd::potentials_to_kernels(pp);
    const dd::CharFunctionKernelRep rep1 = dd::kernels_to_char(kp, 1);
    const dd::CharFunctionKernelRep rep2 = dd::kernels_to_char(kp, 2);

    const auto dir = out_dir(o);
    dd::write_json_file((dir / "spectrum_1.json").string(), dd::to_json(fr.s1));
    dd::write_json_file((dir / "spectrum_2.json").string(), dd::to_json(fr.s2));
    dd::write_text_file((dir / "eigenvalues_1.csv").string(), eigenvalue_csv(fr.s1, rep1));
    dd::write_text_file((dir / "eigenvalues_2.csv").string(), eigenvalue_csv(fr.s2, rep2));
    dd::write_text_file((dir / "plot.csv").string(), plot_csv(rep1, rep2, o.N));

    json summary;
    summary["command"] = "forward";
    summary["a"] = pp.a;
    summary["M"] = pp.M();
    summary["N"] = o.N;
    summary["deviation_norm_1"] = dd::spectrum_deviation_norm(fr.s1);
    summary["deviation_norm_2"] = dd::spectrum_deviation_norm(fr.s2);
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_reconstruct(const Options& o, const std::string& in1, const std::string& in2) {
    const dd::Spectrum s1 = dd::spectrum_from_json(dd::read_json_file(in1));
    const dd::Spectrum s2 = dd::spectrum_from_json(dd::read_json_file(in2));
    const dd::DelayConfig cfg(o.a);
    const dd::ReconstructionResult res = dd::reconstruct_from_spectra(s1, s2, cfg, o.M);

    const auto dir = out_dir(o);
    dd::write_json_file((dir / "potentials.json").string(), dd::to_json(res.potentials));
    dd::write_json_file((dir / "type_report_1.json").string(), dd::to_json(res.diag1));
    dd::write_json_file((dir / "type_report_2.json").string(), dd::to_json(res.diag2));

    if (res.support_warning)
        std::cerr << "warning: synthesized kernel energy outside the expected "
                     "support exceeds the threshold; input spectra may not come "
                     "from a potential with this delay\n";

    json summary;
    summary["command"] = "reconstruct";
    summary["a"] = o.a;
    summary["M"] = o.M;
    summary["N"] = s1.half_width;
    if (res.support_warning) summary["warning"] = true;
    summary["outside_energy_fraction_1"] = res.diag1.outside_energy_fraction;
    summary["outside_energy_fraction_2"] = res.diag2.outside_energy_fraction;
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_subspectra(const CLI::App* sub, const Options& o, const std::string& in1,
                   const std::string& in2) {
    const dd::SubspectrumSpec sp1 = dd::subspectrum_from_json(dd::read_json_file(in1));
    const dd::SubspectrumSpec sp2 = dd::subspectrum_from_json(dd::read_json_file(in2));
    const double implied_a = dd::kPi - dd::kPi / static_cast<double>(sp1.m);
    if (sub->count("--a") > 0 && std::abs(o.a - implied_a) > 1e-12)
        throw std::invalid_argument("--a disagrees with pi - pi/m implied by the input");

    dd::SubspectraOptions sopts;
    sopts.expansion_order = o.K;
    sopts.M = o.M;
    const dd::SubspectraResult res = dd::reconstruct_from_m_subspectra(sp1, sp2, sopts);

    const auto dir = out_dir(o);
    dd::write_json_file((dir / "potentials.json").string(), dd::to_json(res.potentials));

    json summary;
    summary["command"] = "subspectra";
    summary["a"] = implied_a;
    summary["m"] = sp1.m;
    summary["M"] = o.M;
    summary["gram_condition_1"] = res.gram_condition_1;
    summary["gram_condition_2"] = res.gram_condition_2;
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_stability(const CLI::App* sub, const Options& o) {
    dd::StabilityOptions sopts;
    sopts.a = o.a;
    sopts.r = o.r;
    sopts.trials = o.trials;
    sopts.half_width = o.N;
    sopts.seed = o.seed;
    sopts.pert_min = o.pert_min;
    sopts.pert_max = o.pert_max;
    // reconstructions inside trials default to a coarser grid than the
    // standalone commands
    sopts.M = (sub->count("--M") > 0) ? o.M : 256;
    const dd::StabilityRun run = dd::run_stability_trials(sopts);

    const auto dir = out_dir(o);
    dd::write_json_file((dir / "stability_report.json").string(), dd::to_json(run.report));
    dd::write_text_file((dir / "trials.csv").string(), dd::stability_csv(run.trials));

    std::cout << dd::to_json(run.report).dump() << '\n';
    return 0;
}

int cmd_roundtrip(const Options& o, const std::string& input) {
    const dd::PotentialPair pp = dd::potential_pair_from_json(dd::read_json_file(input));
    dd::RootOptions ropts;
    ropts.residual_tol = o.tol_residual;
    const dd::RoundTripResult rt = dd::run_roundtrip(pp, o.N, true, ropts);

    const auto dir = out_dir(o);
    dd::write_json_file((dir / "recovered.json").string(), dd::to_json(rt.recovered));

    json summary;
    summary["command"] = "roundtrip";
    summary["a"] = pp.a;
    summary["M"] = pp.M();
    summary["N"] = o.N;
    summary["rel_error"] = rt.rel_error;
    summary["spectra_distance"] = rt.spectra_distance;
    summary["warning"] = rt.support_warning;
    std::cout << summary.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward and inverse spectral computations for Dirac-type "
                 "operators with a constant delay"};
    app.require_subcommand(1);

    Options o_forward, o_reconstruct, o_subspectra, o_stability, o_roundtrip;
    std::string fwd_in, rec_in1, rec_in2, sub_in1, sub_in2, rt_in;

    CLI::App* c_forward = app.add_subcommand("forward", "potentials -> spectra");
    c_forward->add_option("input", fwd_in, "PotentialPair JSON")->required();
    add_common(c_forward, o_forward);

    CLI::App* c_reconstruct =
        app.add_subcommand("reconstruct", "two full spectra -> potentials");
    c_reconstruct->add_option("spectrum1", rec_in1, "Spectrum JSON, j = 1")->required();
    c_reconstruct->add_option("spectrum2", rec_in2, "Spectrum JSON, j = 2")->required();
    add_common(c_reconstruct, o_reconstruct);

    CLI::App* c_subspectra =
        app.add_subcommand("subspectra", "two m-th subspectra -> potentials");
    c_subspectra->add_option("subspectrum1", sub_in1, "SubspectrumSpec JSON, j = 1")
        ->required();
    c_subspectra->add_option("subspectrum2", sub_in2, "SubspectrumSpec JSON, j = 2")
        ->required();
    add_common(c_subspectra, o_subspectra);

    CLI::App* c_stability =
        app.add_subcommand("stability", "random perturbation trials");
    add_common(c_stability, o_stability);

    CLI::App* c_roundtrip = app.add_subcommand(
        "roundtrip", "potentials -> spectra -> potentials -> spectra");
    c_roundtrip->add_option("input", rt_in, "PotentialPair JSON")->required();
    add_common(c_roundtrip, o_roundtrip);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_forward->parsed()) {
            apply_config(c_forward, o_forward);
            return cmd_forward(o_forward, fwd_in);
        }
        if (c_reconstruct->parsed()) {
            apply_config(c_reconstruct, o_reconstruct);
            return cmd_reconstruct(o_reconstruct, rec_in1, rec_in2);
        }
        if (c_subspectra->parsed()) {
            apply_config(c_subspectra, o_subspectra);
            return cmd_subspectra(c_subspectra, o_subspectra, sub_in1, sub_in2);
        }
        if (c_stability->parsed()) {
            apply_config(c_stability, o_stability);
            return cmd_stability(c_stability, o_stability);
        }
        if (c_roundtrip->parsed()) {
            apply_config(c_roundtrip, o_roundtrip);
            return cmd_roundtrip(o_roundtrip, rt_in);
        }
    } catch (const dd::LocalizationError& e) {
        std::cerr << "error: eigenvalue localization failed near lattice index "
                  << e.index << ": " << e.what() << '\n';
        return 3;
    } catch (const dd::IllConditionedBasis& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

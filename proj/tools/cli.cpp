// Copyright 2026 The povmsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <iomanip>

#include "povmsim/errors.hpp"
#include "povmsim/io.hpp"
#include "povmsim/random.hpp"
#include "povmsim/sampler.hpp"
#include "povmsim/tolerances.hpp"

namespace povmsim::cli {

namespace {

struct Options {
    std::string povm_path;
    std::string second_path;  // state / target POVM
    std::string out_path;
    std::string ensemble_path;
    std::string mode = "exhaustive";
    std::string demo;
    double delta = 0.05;
    double eps = 0.0;  // 0 = default min(0.1, 1/d)
    double noise = 1.0;
    bool noise_given = false;
    double ratio = 1.0;
    int r = 0;          // 0 = derived from max_size
    int max_size = 0;   // 0 = unconstrained
    int ancilla = 2;
    std::int64_t shots = 100000;
    std::int64_t budget = 0;  // 0 = module default
    std::uint64_t seed = 0;
    double tol_psd = tol::psd;
    double tol_norm = tol::norm_per_dim;
    double tol_witness = tol::witness;
};

SearchMode parse_mode(const std::string& mode) {
    if (mode == "exhaustive") return SearchMode::kExhaustive;
    if (mode == "greedy") return SearchMode::kGreedy;
    if (mode == "random") return SearchMode::kRandom;
    throw ValidationError("unknown search mode '" + mode + "'");
}

void print_line(std::ostream& out, const std::string& name, double value, double threshold,
                bool pass) {
    out << "  " << std::left << std::setw(28) << name << std::setw(14) << value
        << " (threshold " << threshold << ")  " << (pass ? "ok" : "FAIL") << "\n";
}

int cmd_validate(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    const ValidationReport report = validate(m, opt.tol_psd, opt.tol_norm);
    out << "POVM: dim " << m.dim << ", " << m.outcomes() << " outcomes\n";
    out << "  tolerances: psd " << opt.tol_psd << ", completeness " << opt.tol_norm * m.dim
        << "\n";
    if (report.ok) {
        out << "ok\n";
        return kOk;
    }
    for (const auto& v : report.violations) {
        out << "  violation: " << v.what << " (magnitude " << v.magnitude << ")\n";
    }
    return kValidationFailure;
}

int cmd_finegrain(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    const double eps = opt.eps > 0.0 ? opt.eps : std::min(0.1, 1.0 / m.dim);
    const Refinement ref = flat_refine(m, opt.delta, eps);
    const double recovery = effect_distance(post_process(ref.recover, ref.refined), m);
    const double cap = *std::max_element(ref.alphas.begin(), ref.alphas.end());
    out << "refined outcomes: " << ref.refined.outcomes() << "\n";
    print_line(out, "flatness", ref.flatness, 1.0 + opt.delta, ref.flatness <= 1.0 + opt.delta + 1e-12);
    print_line(out, "max magnitude", cap, eps, cap <= eps * (1.0 + 1e-12));
    print_line(out, "recovery deviation", recovery, 1e-10, recovery <= 1e-10);
    if (!opt.out_path.empty()) write_text_file(opt.out_path, write_povm(ref.refined));
    return recovery <= 1e-10 ? kOk : kVerificationFailure;
}

int cmd_partition(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    require_valid(m);
    const int n = m.outcomes();
    const int cap = opt.max_size > 0 ? opt.max_size : n;
    const int r = opt.r > 0 ? opt.r : (n + cap - 1) / cap;
    Partition s;
    if (opt.mode == "random") {
        s = random_partition(n, r, opt.seed);
        if (opt.max_size > 0) s = split_blocks(s, cap);
    } else {
        s = optimize_partition(m, r, cap, opt.budget, opt.seed);
    }
    const double q = success_prob(m, s);
    out << "blocks: " << s.blocks() << ", max block " << s.max_block() << "\n";
    out << "q = " << std::setprecision(17) << q << "\n";
    if (!opt.out_path.empty()) write_text_file(opt.out_path, write_partition(s));
    return kOk;
}

int cmd_certify(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    const double eps = opt.eps > 0.0 ? opt.eps : std::min(0.1, 1.0 / m.dim);
    const SpCertificate cert = certify_sp(m, opt.delta, eps, parse_mode(opt.mode), opt.seed);
    out << std::setprecision(17);
    out << "c_found = " << cert.c_found << " (q " << cert.diagnostics.q_found << ", t_np "
        << cert.diagnostics.t_np_found << ")\n";
    out << "search mode: " << cert.diagnostics.search_mode << ", witness components: "
        << cert.witness.components.size() << "\n";
    print_line(out, "verifier deviation", cert.verifier_deviation, opt.tol_witness,
               cert.verified);
    print_line(out, "composition deviation", cert.diagnostics.composition_deviation, 1e-9,
               cert.diagnostics.composition_deviation <= 1e-9);
    out << "  constant-noise guarantee: " << (cert.diagnostics.ks_c5_guarantee ? "yes" : "no")
        << " (groups<=d/2 " << (cert.diagnostics.groups_ok ? "yes" : "no") << ", lambda bound "
        << (cert.diagnostics.ks_c5_lambda_ok ? "yes" : "no") << ", q bound "
        << (cert.diagnostics.q_c5_ok ? "yes" : "no") << ")\n";
    if (cert.diagnostics.ks_c5_guarantee) {
        // Floor asserted by the guarantee: 0.0204 / (1 + delta)^2.
        const double floor_c =
            0.0204 / (cert.diagnostics.flatness * cert.diagnostics.flatness);
        print_line(out, "guaranteed c floor", cert.c_found, floor_c,
                   cert.c_found >= floor_c - 1e-12);
    }
    if (!opt.out_path.empty()) write_text_file(opt.out_path, write_certificate(cert));
    return cert.verified ? kOk : kVerificationFailure;
}

int cmd_dilate(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    const NaimarkDilation dil = dilate_with_ancilla(m, opt.ancilla);
    const double deviation = verify_dilation(dil, m, 50, opt.seed);
    out << "ambient dimension: " << dil.ambient_dim << " (ancilla " << dil.ancilla_dim
        << "), projective outcomes: " << dil.projective.outcomes() << "\n";
    print_line(out, "statistics deviation", deviation, 1e-10, deviation <= 1e-10);
    if (!opt.out_path.empty()) write_text_file(opt.out_path, write_dilation(dil));
    return deviation <= 1e-10 ? kOk : kVerificationFailure;
}

int cmd_check_witness(const Options& opt, std::ostream& out) {
    const std::string witness_text = read_text_file(opt.povm_path);
    const Povm target_povm = read_povm(read_text_file(opt.second_path));
    if (looks_like_dilation(witness_text)) {
        // A dilation certifies an exact realization; verify its statistics.
        const NaimarkDilation dil = read_dilation(witness_text);
        const double deviation = verify_dilation(dil, target_povm, 50, opt.seed);
        print_line(out, "statistics deviation", deviation, 1e-10, deviation <= 1e-10);
        return deviation <= 1e-10 ? kOk : kVerificationFailure;
    }
    SpWitness witness;
    double noise = opt.noise_given ? opt.noise : 1.0;
    if (looks_like_certificate(witness_text)) {
        const SpCertificate cert = read_certificate(witness_text);
        witness = cert.witness;
        if (!opt.noise_given) noise = cert.c_found;
        const double input_gap = effect_distance(cert.input, target_povm);
        out << "certificate input vs POVM argument: max deviation " << input_gap << "\n";
    } else {
        witness = read_witness(witness_text);
    }
    const Povm target = depolarize(target_povm, noise);
    const WitnessReport report = verify_sp_witness(witness, target, opt.tol_witness);
    out << "target: visibility " << noise << ", " << witness.components.size()
        << " components\n";
    print_line(out, "max effect deviation", report.max_deviation, report.tolerance,
               report.pass);
    for (const auto& v : report.violations) {
        out << "  violation: " << v.what << " (magnitude " << v.magnitude << ")\n";
    }
    return report.pass ? kOk : kVerificationFailure;
}

int cmd_sample(const Options& opt, std::ostream& out) {
    const Povm m = read_povm(read_text_file(opt.povm_path));
    const Matrix rho = read_state(read_text_file(opt.second_path));
    SampleReport report;
    if (!opt.ensemble_path.empty()) {
        const Partition s = read_partition(read_text_file(opt.ensemble_path));
        const SimulationEnsemble e = build_ensemble(m, s);
        report = sample_with_postselection(e, rho, opt.shots, opt.seed);
        out << "postselected sampling: q = " << e.q << "\n";
        out << "  acceptance rate " << report.acceptance_rate << " (" << report.accepted
            << "/" << report.shots << ")\n";
    } else {
        report = sample(m, rho, opt.shots, opt.seed);
    }
    out << "  outcome counts:";
    for (std::size_t i = 0; i < report.counts.size(); ++i) {
        const bool fail_outcome =
            !opt.ensemble_path.empty() && i + 1 == report.counts.size();
        out << " " << (fail_outcome ? kFailLabel : m.label(static_cast<int>(i))) << ":"
            << report.counts[i];
    }
    out << "\n";
    out << "  tv distance to target " << report.tv_distance << "\n";
    return kOk;
}

int cmd_demo(const Options& opt, std::ostream& out) {
    const double c = opt.noise_given ? opt.noise : 0.02;
    if (opt.demo == "discrimination") {
        CounterRng rng(opt.seed, 0xd15c);
        const int d = 3, n = 4;
        const Povm m = random_rank_one_povm(d, n, rng);
        StateEnsemble ens;
        for (int i = 0; i < n; ++i) {
            ens.priors.push_back(1.0 / n);
            ens.states.push_back(random_density(d, rng));
        }
        const DiscriminationReport report = disc_success(ens, m, c);
        out << std::setprecision(12);
        out << "minimum-error discrimination, dim " << d << ", " << n << " states, c = " << c
            << "\n";
        out << "  p_succ(ideal POVM)        " << report.p_succ_m << "\n";
        out << "  p_succ(depolarized POVM)  " << report.p_succ_noisy << "\n";
        print_line(out, "c * p_succ <= p_succ_noisy", c * report.p_succ_m,
                   report.p_succ_noisy, report.inequality_ok);
        return report.inequality_ok ? kOk : kVerificationFailure;
    }
    if (opt.demo == "shadow") {
        CounterRng rng(opt.seed, 0x5ad0);
        const int d = 3;
        const Povm m = random_rank_one_povm(d, d * d + 1, rng);
        std::vector<Matrix> observables;
        std::vector<Eigen::VectorXd> estimators;
        for (int o = 0; o < 3; ++o) {
            Matrix h = random_hermitian(d, rng);
            h -= (h.trace().real() / d) * Matrix::Identity(d, d);
            observables.push_back(h);
            estimators.push_back(least_squares_estimator(m, h));
        }
        const ShadowReport report = shadow_check(m, observables, estimators, c, 50, opt.seed);
        out << "single-shot estimator rescaling under depolarizing noise, c = " << c << "\n";
        print_line(out, "unbiasedness residual", report.max_unbiased_deviation, 1e-9,
                   report.unbiased_ok);
        print_line(out, "variance identity residual", report.max_variance_deviation, 1e-9,
                   report.variance_ok);
        out << "  worst-case variance inflation bounded by 1/c^2: "
            << (report.max_bound_ok ? "ok" : "FAIL") << "\n";
        return (report.unbiased_ok && report.variance_ok && report.max_bound_ok)
                   ? kOk
                   : kVerificationFailure;
    }
    throw ValidationError("unknown demo '" + opt.demo + "'");
}

int cmd_tradeoff(const Options& opt, std::ostream& out) {
    const TradeoffBounds bounds = ancilla_tradeoff(opt.ancilla, opt.ratio);
    out << std::setprecision(12);
    out << "ancilla dimension " << opt.ancilla << ", magnitude spread " << opt.ratio << "\n";
    out << "  C required  " << bounds.c_required << "\n";
    out << "  q lower     " << bounds.q_lower << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"POVM simulation toolkit: fine-graining, partition protocols, Naimark "
                 "dilations, and projective-simulability certificates"};
    app.require_subcommand(1);
    Options opt;

    auto* validate_cmd = app.add_subcommand("validate", "Check the POVM invariants");
    validate_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    validate_cmd->add_option("--tol-psd", opt.tol_psd, "PSD slack");
    validate_cmd->add_option("--tol-norm", opt.tol_norm, "completeness tolerance per dim");

    auto* finegrain_cmd =
        app.add_subcommand("finegrain", "Rank-one refinement with nearly flat magnitudes");
    finegrain_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    finegrain_cmd->add_option("--delta", opt.delta, "flatness slack (default 0.05)");
    finegrain_cmd->add_option("--eps", opt.eps, "magnitude cap (default min(0.1, 1/d))");
    finegrain_cmd->add_option("--out", opt.out_path, "write the refined POVM here");

    auto* partition_cmd =
        app.add_subcommand("partition", "Search or draw an outcome partition and report q");
    partition_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    partition_cmd->add_option("--r", opt.r, "number of blocks (default n/max-size)");
    partition_cmd->add_option("--max-size", opt.max_size, "block size cap (default none)");
    partition_cmd->add_option("--mode", opt.mode, "exhaustive|greedy|random");
    partition_cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    partition_cmd->add_option("--budget", opt.budget, "greedy move evaluations (default 200n)");
    partition_cmd->add_option("--out", opt.out_path, "write the partition here");

    auto* certify_cmd = app.add_subcommand(
        "certify-sp", "Certify that the depolarized POVM is projectively simulable");
    certify_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    certify_cmd->add_option("--delta", opt.delta, "flatness slack (default 0.05)");
    certify_cmd->add_option("--eps", opt.eps, "magnitude cap (default min(0.1, 1/d))");
    certify_cmd->add_option("--mode", opt.mode, "exhaustive|greedy|random");
    certify_cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    certify_cmd->add_option("--tol-witness", opt.tol_witness, "verifier tolerance");
    certify_cmd->add_option("--out", opt.out_path, "write the certificate here");

    auto* dilate_cmd =
        app.add_subcommand("dilate", "Projective realization on the system plus an ancilla");
    dilate_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    dilate_cmd->add_option("--ancilla", opt.ancilla, "ancilla dimension k")->required();
    dilate_cmd->add_option("--seed", opt.seed, "seed for the verification states");
    dilate_cmd->add_option("--out", opt.out_path, "write the dilation here");

    auto* check_cmd = app.add_subcommand(
        "check-witness", "Verify a witness, certificate, or dilation against a (noisy) POVM");
    check_cmd->add_option("witness", opt.povm_path, "witness, certificate, or dilation file")
        ->required();
    check_cmd->add_option("povm", opt.second_path, "target POVM file")->required();
    auto* noise_opt = check_cmd->add_option("--noise", opt.noise, "visibility c of the target");
    check_cmd->add_option("--tol-witness", opt.tol_witness, "verifier tolerance");

    auto* sample_cmd = app.add_subcommand("sample", "Seeded Born-rule sampling");
    sample_cmd->add_option("povm", opt.povm_path, "POVM file")->required();
    sample_cmd->add_option("state", opt.second_path, "density matrix file")->required();
    sample_cmd->add_option("--shots", opt.shots, "number of shots");
    sample_cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    sample_cmd->add_option("--ensemble", opt.ensemble_path,
                           "partition file: sample the postselected block ensemble");

    auto* demo_cmd = app.add_subcommand("demo", "Worked application checks");
    demo_cmd->add_option("name", opt.demo, "discrimination|shadow")->required();
    demo_cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    auto* demo_noise = demo_cmd->add_option("--c", opt.noise, "visibility (default 0.02)");

    auto* tradeoff_cmd =
        app.add_subcommand("tradeoff", "Success probability vs ancilla dimension");
    tradeoff_cmd->add_option("--k", opt.ancilla, "ancilla dimension")->required();
    tradeoff_cmd->add_option("--ratio", opt.ratio, "magnitude spread eps/eps~ (default 1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return kIoError;
    }
    opt.noise_given = noise_opt->count() > 0 || demo_noise->count() > 0;

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt, out);
        if (finegrain_cmd->parsed()) return cmd_finegrain(opt, out);
        if (partition_cmd->parsed()) return cmd_partition(opt, out);
        if (certify_cmd->parsed()) return cmd_certify(opt, out);
        if (dilate_cmd->parsed()) return cmd_dilate(opt, out);
        if (check_cmd->parsed()) return cmd_check_witness(opt, out);
        if (sample_cmd->parsed()) return cmd_sample(opt, out);
        if (demo_cmd->parsed()) return cmd_demo(opt, out);
        if (tradeoff_cmd->parsed()) return cmd_tradeoff(opt, out);
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kValidationFailure;
    }
    err << "no command dispatched\n";
    return kIoError;
}

}  // namespace povmsim::cli

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qconv/cli.hpp"

int main(int argc, char** argv)
{
    using namespace qconv;

    CLI::App app{"Left quaternion Fourier transform and classical/Mustard convolution toolkit"};
    app.require_subcommand(1);

    cli::transform_options topt;
    auto* transform = app.add_subcommand("transform", "Left qFT of a QF01 or PPM input, written as QF01");
    transform->add_option("input", topt.input, "Input field (QF01 or P6 PPM)")->required();
    transform->add_option("output", topt.output, "Output QF01 path")->required();
    transform->add_option("--roots", topt.roots, "Preset (equal-i, perp-ij, gray-line) or 'b,c,d[;b,c,d]'");
    transform->add_flag("--inverse", topt.inverse, "Inverse transform");
    transform->add_flag("--fast", topt.fast, "FFT path for power-of-two grids");

    cli::convolve_options copt;
    auto* convolve = app.add_subcommand("convolve", "Convolve two fields with a chosen method");
    convolve->add_option("input_f", copt.input_f, "Left operand f")->required();
    convolve->add_option("input_g", copt.input_g, "Right operand g")->required();
    convolve->add_option("output", copt.output, "Output path (.ppm writes an image, otherwise QF01)")->required();
    convolve->add_option("--roots", copt.roots, "Root pair");
    convolve->add_option("--method", copt.method, "Evaluation method")
        ->check(CLI::IsMember(cli::convolve_methods()));
    convolve->add_flag("--check", copt.check, "Report max-abs deviation from spatial convolution");

    verify_options vopt;
    std::string corrupt_spec;
    auto* verify = app.add_subcommand("verify", "Check every identity on seeded random data");
    verify->add_option("--seed", vopt.seed, "PRNG seed");
    verify->add_option("--size", vopt.size, "Grid size n (fields are n x n)")->check(CLI::PositiveNumber);
    verify->add_option("--tolerance", vopt.tolerance, "Maximum admissible error")->check(CLI::PositiveNumber);
    verify->add_option("--suite", vopt.suite, "all, algebra, qft, thm21, thm31, thm32, thm41, thm51 or thm52");
    verify->add_option("--instances", vopt.instances, "Random draws per identity");
    verify->add_option("--corrupt-term", corrupt_spec, "Harness hook: SUITE:INDEX scales one term weight by 1.5")
        ->group("");

    cli::bench_options bopt;
    auto* bench = app.add_subcommand("bench", "Time spatial vs Mustard-expansion convolution (CSV)");
    bench->add_option("--sizes", bopt.sizes, "Grid sizes")->delimiter(',');
    bench->add_option("--roots", bopt.roots, "Root pair");
    bench->add_option("--repeat", bopt.repeat, "Repetitions per measurement")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bopt.seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::usage_error;
    }

    if (*transform)
        return cli::cmd_transform(topt, std::cout, std::cerr);
    if (*convolve)
        return cli::cmd_convolve(copt, std::cout, std::cerr);
    if (*verify) {
        if (!corrupt_spec.empty()) {
            const auto colon = corrupt_spec.find(':');
            if (colon == std::string::npos) {
                std::cerr << "error: --corrupt-term expects SUITE:INDEX\n";
                return cli::usage_error;
            }
            vopt.corrupt = term_corruption{corrupt_spec.substr(0, colon), std::stoul(corrupt_spec.substr(colon + 1))};
        }
        return cli::cmd_verify(vopt, std::cout, std::cerr);
    }
    return cli::cmd_bench(bopt, std::cout, std::cerr);
}

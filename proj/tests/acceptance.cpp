// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <span>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "qconv/io.hpp"
#include "qconv/qconv.hpp"
#include "qconv/verify.hpp"
#include "test_util.hpp"

using namespace qconv;

namespace {

// Tolerances and protocol sizes.
constexpr double identity_tol = 1e-9;
constexpr double exact_tol = 1e-12;
constexpr double correlation_tol = 1e-13;
constexpr double round_trip_tol = 1e-10;
constexpr double parseval_tol = 1e-10;
constexpr double ac1_seconds = 5.0;
constexpr double ac8_seconds = 10.0;
constexpr std::size_t pairs = 20;
constexpr std::size_t grid = 8;
constexpr std::size_t identity_instances = 1000;

struct outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

class stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

/// Runs `check(f, g, roots)` over every field pair and root pair; returns the worst error.
double sweep(std::uint64_t seed, const std::vector<RootPair>& roots,
             const std::function<double(const QField&, const QField&, const RootPair&)>& check)
{
    field_rng rng(seed);
    double worst = 0.0;
    for (std::size_t p = 0; p < pairs; ++p) {
        const QField f = rng.field(grid, grid), g = rng.field(grid, grid);
        for (const auto& r : roots)
            worst = std::max(worst, check(f, g, r));
    }
    return worst;
}

outcome equal_roots()
{
    const stopwatch clock;
    field_rng rng(101);
    std::vector<RootPair> roots;
    for (int k = 0; k < 5; ++k) {
        const Root mu = rng.root();
        roots.emplace_back(mu, mu);
    }
    const double err = sweep(102, roots, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(classical_via_mustard_equal(f, g, r.mu()), oracle::convolve(f, g));
    });
    const double t = clock.seconds();
    return {err <= identity_tol && t < ac1_seconds,
            "max_err=" + sci(err) + " tol=" + sci(identity_tol) + " time=" + std::to_string(t) + "s (< 5s)"};
}

outcome perpendicular_roots()
{
    field_rng rng(201);
    std::vector<RootPair> roots;
    double worst_a = 0.0;
    for (int k = 0; k < 5; ++k) {
        roots.push_back(rng.perpendicular_pair());
        worst_a = std::max(worst_a, std::abs(roots.back().a()));
    }
    const double err = sweep(202, roots, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(classical_via_mustard_perp(f, g, r), oracle::convolve(f, g));
    });
    return {err <= identity_tol, "max_err=" + sci(err) + " tol=" + sci(identity_tol) + " max|a|=" + sci(worst_a)};
}

std::vector<RootPair> general_roots(std::uint64_t seed)
{
    field_rng rng(seed);
    const double half_pi = std::numbers::pi / 2;
    std::vector<RootPair> roots;
    for (const double angle : {1e-7, 1e-3, std::numbers::pi - 1e-3, std::numbers::pi - 1e-7, half_pi - 1e-7,
                               half_pi + 1e-3, 0.4, 1.1, 2.0, 2.7}) {
        const Root mu = rng.root();
        roots.emplace_back(mu, rng.root_at_angle(mu, angle));
    }
    return roots;
}

outcome general_roots_expansion()
{
    const auto roots = general_roots(301);
    double lo = 2.0, hi = 0.0;
    for (const auto& r : roots) {
        lo = std::min(lo, std::abs(r.a()));
        hi = std::max(hi, std::abs(r.a()));
    }
    const double err = sweep(302, roots, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(classical_via_mustard_general(f, g, r), oracle::convolve(f, g));
    });
    return {err <= identity_tol,
            "max_err=" + sci(err) + " tol=" + sci(identity_tol) + " |a| in [" + sci(lo) + ", " + sci(hi) + "]"};
}

outcome mustard_from_classical()
{
    field_rng rng(401);
    std::vector<RootPair> roots;
    for (int k = 0; k < 5; ++k)
        roots.push_back(rng.root_pair());
    const double err = sweep(402, roots, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(mustard_via_classical(f, g, r), mustard_convolve(f, g, r));
    });

    std::vector<RootPair> perp, equal;
    for (int k = 0; k < 5; ++k) {
        perp.push_back(rng.perpendicular_pair());
        const Root mu = rng.root();
        equal.emplace_back(mu, mu);
        equal.emplace_back(mu, -mu);
    }
    const auto table = mustard_from_classical_terms();
    const double a_block = sweep(403, perp, [&](const QField& f, const QField& g, const RootPair& r) {
        const auto block = resolve(select_block(table, 1), r);
        return max_abs(evaluate_expansion(std::span<const resolved_term>(block), f, g, classical_convolve));
    });
    const double equal_err = sweep(404, equal, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(mustard_via_classical(f, g, r), mustard_convolve(f, g, r));
    });
    bool counts = true;
    for (const auto& r : perp)
        counts = counts && effective_term_count(table, r) == 16;
    for (const auto& r : equal)
        counts = counts && effective_term_count(table, r) == 4;
    for (const auto& r : roots)
        counts = counts && effective_term_count(table, r) == 32;
    return {err <= identity_tol && a_block <= exact_tol && equal_err <= identity_tol && counts,
            "max_err=" + sci(err) + " a-block(a=0)=" + sci(a_block) + " equal/opposite err=" + sci(equal_err) +
                " term counts 32/16/4 " + (counts ? "ok" : "WRONG")};
}

outcome convolution_spectrum_check()
{
    field_rng rng(501);
    std::vector<RootPair> roots{RootPair(make_root(1, 0, 0), make_root(0, 0, 1))};
    for (int k = 0; k < 4; ++k)
        roots.push_back(rng.perpendicular_pair());
    const double err = sweep(502, roots, [](const QField& f, const QField& g, const RootPair& r) {
        const QField reference = oracle::left_transform(oracle::convolve(f, g), r.mu(), r.nu(), -1);
        return max_abs_diff(convolution_spectrum(f, g, r), reference);
    });
    return {err <= identity_tol, "max_err=" + sci(err) + " tol=" + sci(identity_tol)};
}

outcome correlation_spectrum_check()
{
    field_rng rng(601);
    std::vector<RootPair> roots{RootPair(make_root(0, 1, 0), make_root(0, 0, 1))};
    for (int k = 0; k < 4; ++k)
        roots.push_back(rng.perpendicular_pair());
    const double err = sweep(602, roots, [](const QField& f, const QField& g, const RootPair& r) {
        const QField reference = oracle::left_transform(oracle::correlate(f, g), r.mu(), r.nu(), -1);
        return max_abs_diff(correlation_spectrum(f, g, r), reference);
    });
    const double as_conv = sweep(603, {RootPair()}, [](const QField& f, const QField& g, const RootPair&) {
        return max_abs_diff(cross_correlate(f, g), classical_convolve(reflect(f, {1, 1}), g));
    });
    return {err <= identity_tol && as_conv <= correlation_tol,
            "max_err=" + sci(err) + " tol=" + sci(identity_tol) + "; correlation vs reflected convolution=" +
                sci(as_conv) + " tol=" + sci(correlation_tol)};
}

outcome reductions()
{
    field_rng rng(701);
    std::vector<RootPair> perp, any;
    for (int k = 0; k < 5; ++k) {
        perp.push_back(rng.perpendicular_pair());
        any.push_back(rng.root_pair());
    }
    const double reduce = sweep(702, perp, [](const QField& f, const QField& g, const RootPair& r) {
        return max_abs_diff(classical_via_mustard_general(f, g, r), classical_via_mustard_perp(f, g, r));
    });
    const auto a2 = select_block(classical_from_mustard_general_terms(), 2);
    const double squared = sweep(703, any, [&](const QField& f, const QField& g, const RootPair& r) {
        const QField even = 0.5 * (g + reflect(g, {0, 1}));
        const auto block = resolve(a2, r);
        return max_abs(evaluate_mustard_expansion(std::span<const resolved_term>(block), f, even, r));
    });
    return {reduce <= exact_tol && squared <= exact_tol,
            "general vs perpendicular at a=0: " + sci(reduce) + "; a^2 block with even g: " + sci(squared) +
                " tol=" + sci(exact_tol)};
}

outcome identity_suite()
{
    const stopwatch clock;
    verify_options opt;
    opt.instances = identity_instances;
    opt.seed = 801;
    opt.suite = "algebra";
    const auto algebra = run_verify(opt);
    opt.suite = "qft";
    const auto transform = run_verify(opt);
    const double t = clock.seconds();
    double worst_alg = 0.0, worst_tr = 0.0;
    std::string failing;
    for (const auto& c : algebra) {
        worst_alg = std::max(worst_alg, c.max_error);
        if (!(c.max_error <= exact_tol))
            failing += " [" + c.identity + "]";
    }
    for (const auto& c : transform) {
        worst_tr = std::max(worst_tr, c.max_error);
        if (!(c.max_error <= identity_tol))
            failing += " [" + c.identity + "]";
    }
    return {failing.empty() && t < ac8_seconds,
            std::to_string(algebra.size() + transform.size()) + " identities x " + std::to_string(identity_instances) +
                " instances; algebra max=" + sci(worst_alg) + " (tol 1e-12), transform max=" + sci(worst_tr) +
                " (tol 1e-9), time=" + std::to_string(t) + "s (< 10s)" + failing};
}

outcome transform_correctness()
{
    field_rng rng(901);
    double oracle_err = 0.0;
    for (const std::size_t n : {3, 4}) {
        for (int k = 0; k < 5; ++k) {
            const QField f = k == 0 ? rng.pure_field(n, n) : rng.field(n, n);
            const RootPair r = rng.root_pair();
            oracle_err = std::max(oracle_err, max_abs_diff(dft_left(f, r), oracle::left_transform(f, r.mu(), r.nu(), -1)));
            oracle_err = std::max(oracle_err, max_abs_diff(idft_left(f, r), oracle::left_transform(f, r.mu(), r.nu(), +1)));
        }
    }
    double fast_err = 0.0, trip_err = 0.0, parseval = 0.0;
    for (int k = 0; k < 5; ++k) {
        const QField f = rng.field(16, 16);
        const RootPair r = rng.root_pair();
        const QField F = dft_left(f, r);
        fast_err = std::max({fast_err, max_abs_diff(fast_qft(f, r, direction::forward), F),
                             max_abs_diff(fast_qft(f, r, direction::inverse), idft_left(f, r))});
        trip_err = std::max({trip_err, max_abs_diff(idft_left(F, r), f),
                             max_abs_diff(fast_qft(fast_qft(f, r, direction::forward), r, direction::inverse), f)});
        parseval = std::max(parseval, std::abs(energy(F) - energy(f)) / energy(f));
    }
    return {oracle_err <= exact_tol && fast_err <= identity_tol && trip_err <= round_trip_tol && parseval <= parseval_tol,
            "oracle(3x3,4x4)=" + sci(oracle_err) + " fast(16x16)=" + sci(fast_err) + " round trip=" + sci(trip_err) +
                " parseval rel=" + sci(parseval)};
}

int run_cli(const std::string& args)
{
    const std::string command = std::string(QCONV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

outcome end_to_end_cli()
{
    testutil::scratch_dir dir;
    const std::size_t n = 16;
    field_rng rng(1001);
    std::string header = "P6\n16 16\n255\n";
    std::vector<std::uint8_t> image(header.begin(), header.end());
    for (std::size_t k = 0; k < 3 * n * n; ++k)
        image.push_back(static_cast<std::uint8_t>(rng.unit() * 256));
    detail::write_bytes(dir / "image.ppm", image);

    // 3x3 box blur centred on the origin of the cyclic grid.
    QField kernel(n, n);
    for (const std::size_t r : {n - 1, std::size_t{0}, std::size_t{1}})
        for (const std::size_t c : {n - 1, std::size_t{0}, std::size_t{1}})
            kernel(r, c) = 1.0 / 9.0;
    write_field(dir / "kernel.qf", kernel);

    const std::string in = (dir / "image.ppm").string() + " " + (dir / "kernel.qf").string() + " ";
    const std::string roots = " --roots '1,0,0;1,1,0'";
    int codes = 0;
    codes |= run_cli("convolve " + in + (dir / "spatial.qf").string() + " --method spatial" + roots);
    codes |= run_cli("convolve " + in + (dir / "expanded.qf").string() + " --method thm41" + roots);
    codes |= run_cli("convolve " + in + (dir / "spatial.ppm").string() + " --method spatial" + roots);
    codes |= run_cli("convolve " + in + (dir / "expanded.ppm").string() + " --method thm41" + roots);
    if (codes != 0)
        return {false, "CLI exited non-zero"};
    const double err = max_abs_diff(read_field(dir / "spatial.qf"), read_field(dir / "expanded.qf"));
    const bool same_bytes = detail::read_bytes(dir / "spatial.ppm") == detail::read_bytes(dir / "expanded.ppm");
    return {err <= identity_tol && same_bytes,
            "pre-quantization max_err=" + sci(err) + " tol=" + sci(identity_tol) +
                "; PPM bytes " + (same_bytes ? "identical" : "DIFFER")};
}

} // namespace

int main()
{
    struct criterion {
        const char* id;
        const char* name;
        outcome (*run)();
    };
    const std::array<criterion, 10> criteria{{
        {"AC1", "classical convolution from single-root Mustard terms", equal_roots},
        {"AC2", "classical convolution from anticommuting-root Mustard terms", perpendicular_roots},
        {"AC3", "classical convolution from general-root Mustard terms", general_roots_expansion},
        {"AC4", "Mustard convolution from classical terms", mustard_from_classical},
        {"AC5", "spectrum of the classical convolution", convolution_spectrum_check},
        {"AC6", "spectrum of the cross-correlation", correlation_spectrum_check},
        {"AC7", "reduction checks", reductions},
        {"AC8", "algebra and transform identity suite", identity_suite},
        {"AC9", "transform correctness", transform_correctness},
        {"AC10", "end-to-end CLI blur", end_to_end_cli},
    }};
    int failures = 0;
    for (const auto& c : criteria) {
        outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "qconv/conv.hpp"
#include "qconv/error.hpp"
#include "qconv/io.hpp"
#include "qconv/qft.hpp"
#include "qconv/random.hpp"
#include "qconv/verify.hpp"

namespace qconv::cli {

enum exit_code : int { ok = 0, identity_failure = 1, usage_error = 2 };

struct transform_options {
    std::filesystem::path input;
    std::filesystem::path output;
    std::string roots = "perp-ij";
    bool inverse = false;
    bool fast = false;
};

struct convolve_options {
    std::filesystem::path input_f;
    std::filesystem::path input_g;
    std::filesystem::path output;
    std::string roots = "perp-ij";
    std::string method = "spatial";
    bool check = false;
};

struct bench_options {
    std::vector<std::size_t> sizes{8, 16, 32};
    std::string roots = "1,0,0;1,1,0";
    std::size_t repeat = 3;
    std::uint64_t seed = 42;
};

inline const std::vector<std::string>& convolve_methods()
{
    static const std::vector<std::string> names{"spatial", "mustard", "thm31", "thm32", "thm41", "spectral51"};
    return names;
}

namespace detail {

inline bool wants_ppm(const std::filesystem::path& p)
{
    auto ext = p.extension().string();
    for (auto& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".ppm";
}

inline void write_output(const std::filesystem::path& path, const QField& f, std::ostream& err)
{
    if (wants_ppm(path))
        write_ppm(path, f, &err);
    else
        write_field(path, f);
}

/// Runs body, mapping library errors to exit code 2.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace detail

inline int cmd_transform(const transform_options& opt, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const RootPair roots = parse_roots(opt.roots);
        const QField f = read_any(opt.input);
        const direction dir = opt.inverse ? direction::inverse : direction::forward;
        QField result = opt.fast ? fast_qft(f, roots, dir) : (opt.inverse ? idft_left(f, roots) : dft_left(f, roots));
        write_field(opt.output, result);
        out << "transform " << f.n1() << "x" << f.n2() << " direction=" << (opt.inverse ? "inverse" : "forward")
            << " path=" << (opt.fast && fast_path_applies(f) ? "fast" : "direct") << '\n';
        return int{ok};
    });
}

/// Dispatches one convolution method. thm31 needs mu = nu; thm32 and
/// spectral51 need anticommuting roots.
inline QField convolve_with(const std::string& method, const QField& f, const QField& g, const RootPair& roots)
{
    if (method == "spatial")
        return classical_convolve(f, g);
    if (method == "mustard")
        return mustard_convolve(f, g, roots);
    if (method == "thm31") {
        if (norm(roots.mu().value() - roots.nu().value()) > 1e-12)
            throw error(errc::roots_not_equal, "thm31 needs a single root (mu = nu)");
        return classical_via_mustard_equal(f, g, roots.mu());
    }
    if (method == "thm32")
        return classical_via_mustard_perp(f, g, roots);
    if (method == "thm41")
        return classical_via_mustard_general(f, g, roots);
    if (method == "spectral51")
        return qft(convolution_spectrum(f, g, roots), roots, direction::inverse);
    throw error(errc::parse_error, "unknown method '" + method + "'");
}

inline int cmd_convolve(const convolve_options& opt, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const RootPair roots = parse_roots(opt.roots);
        const QField f = read_any(opt.input_f);
        const QField g = read_any(opt.input_g);
        require_same_shape(f, g);
        const QField result = convolve_with(opt.method, f, g, roots);
        detail::write_output(opt.output, result, err);
        out << "convolve " << f.n1() << "x" << f.n2() << " method=" << opt.method << " a=" << roots.a() << '\n';
        if (opt.check) {
            const double dev = max_abs_diff(result, classical_convolve(f, g));
            out << "max_abs_deviation_vs_spatial=" << std::setprecision(6) << std::scientific << dev << '\n';
        }
        return int{ok};
    });
}

/// Prints one line per identity, then PASS or FAIL. Exit 1 if any identity exceeds the tolerance.
inline int cmd_verify(const verify_options& opt, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        if (!(opt.tolerance > 0.0))
            throw error(errc::parse_error, "tolerance must be positive");
        if (opt.suite != "all" && std::find(verify_suites().begin(), verify_suites().end(), opt.suite) == verify_suites().end())
            throw error(errc::parse_error, "unknown suite '" + opt.suite + "'");
        const auto checks = run_verify(opt);
        bool pass = true;
        for (const auto& c : checks) {
            const bool ok_line = c.max_error <= opt.tolerance;
            pass = pass && ok_line;
            out << (ok_line ? "ok   " : "FAIL ") << std::left << std::setw(6) << c.suite << ' ' << std::scientific
                << std::setprecision(3) << c.max_error << "  " << c.identity;
            if (!ok_line && !c.culprit.empty())
                out << "  [" << c.culprit << "]";
            out << '\n';
        }
        out << (pass ? "PASS" : "FAIL") << " suite=" << opt.suite << " seed=" << opt.seed << " size=" << opt.size
            << " tolerance=" << opt.tolerance << '\n';
        return int{pass ? ok : identity_failure};
    });
}

/// CSV: size,method,mean_ns,max_err. Errors are measured against spatial convolution.
inline int cmd_bench(const bench_options& opt, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const RootPair roots = parse_roots(opt.roots);
        const std::size_t repeat = std::max<std::size_t>(1, opt.repeat);
        out << "size,method,mean_ns,max_err\n";
        for (const std::size_t n : opt.sizes) {
            field_rng rng(opt.seed ^ n);
            const QField f = rng.field(n, n), g = rng.field(n, n);
            QField reference;
            auto run = [&](const std::string& name, auto&& method) {
                QField result;
                std::chrono::nanoseconds total{0};
                for (std::size_t r = 0; r < repeat; ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    result = method();
                    total += std::chrono::steady_clock::now() - t0;
                }
                if (name == "spatial")
                    reference = result;
                const double e = max_abs_diff(result, reference);
                out << n << ',' << name << ',' << total.count() / static_cast<long long>(repeat) << ','
                    << std::scientific << std::setprecision(3) << e << std::defaultfloat << '\n';
            };
            run("spatial", [&] { return classical_convolve(f, g); });
            run("thm41_naive", [&] { return classical_via_mustard_general(f, g, roots, spectral_mode::naive); });
            run("thm41_cached", [&] { return classical_via_mustard_general(f, g, roots, spectral_mode::cached); });
            run("thm41_accumulated",
                [&] { return classical_via_mustard_general(f, g, roots, spectral_mode::accumulated); });
        }
        return int{ok};
    });
}

} // namespace qconv::cli

#include "cli.hpp"

#include "fogalloc/config_io.hpp"
#include "fogalloc/csv.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace fogalloc::cli {

namespace {

struct Options {
    std::string config;
    std::vector<std::string> allocators;
    std::string sweep;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::vector<std::string> emit;
    std::optional<double> fixed_freq;
};

constexpr std::array kEmitKinds{"requests", "summary", "cdf", "hist2d"};

std::string valid_allocators() {
    std::string s;
    for (auto k : all_allocators()) s += fmt::format("{}{}", s.empty() ? "" : ", ", allocator_name(k));
    return s;
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::size_t start = 0;
        while (true) {
            const auto comma = item.find(',', start);
            auto part = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!part.empty()) out.push_back(std::move(part));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    f << text;
    if (!f) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-aware fog/cloud request allocation simulator", "fogalloc"};
    Options opt;
    bool allocator_given = false;
    app.add_option("--config", opt.config, "Scenario file")->required();
    auto* alloc_opt = app.add_option("--allocator", opt.allocators,
                                     "Allocator(s), repeatable or comma separated: " + valid_allocators());
    app.add_option("--sweep", opt.sweep, "AXIS=v1,v2,... or AXIS=lo:hi:step");
    app.add_option("--seed", opt.seed, "Override the scenario seed");
    app.add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    app.add_option("--emit", opt.emit, "requests|summary|cdf|hist2d, repeatable (default: summary)");
    app.add_option("--fixed-freq", opt.fixed_freq, "Pin every fog node to this frequency (GHz)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    allocator_given = alloc_opt->count() > 0;

    try {
        ScenarioConfig config = load_config(opt.config);
        if (opt.seed) config.seed = *opt.seed;
        if (opt.fixed_freq) config = fixed_frequency_mode(std::move(config), *opt.fixed_freq);
        if (!opt.sweep.empty()) config.sweep = parse_sweep(opt.sweep);

        std::vector<AllocatorKind> kinds;
        if (allocator_given) {
            for (const auto& name : split_commas(opt.allocators)) {
                const auto kind = parse_allocator(name);
                if (!kind)
                    throw ConfigError(fmt::format("--allocator: unknown allocator '{}' (valid: {})", name,
                                                  valid_allocators()));
                kinds.push_back(*kind);
            }
            if (kinds.empty()) throw ConfigError(fmt::format("--allocator: empty list (valid: {})", valid_allocators()));
            config.allocator = kinds.front();
        } else {
            kinds.push_back(config.allocator);
        }

        auto emit = split_commas(opt.emit);
        if (emit.empty()) emit.emplace_back("summary");
        for (const auto& e : emit)
            if (std::find(kEmitKinds.begin(), kEmitKinds.end(), e) == kEmitKinds.end())
                throw ConfigError(fmt::format("--emit: unknown output '{}' (valid: requests, summary, cdf, hist2d)", e));
        config.validate();

        const OutputBundle bundle = compare_allocators(config, kinds);

        const std::filesystem::path dir(opt.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "scenario.cfg", serialize_config(config));
        for (std::string_view kind : kEmitKinds) {
            if (std::find(emit.begin(), emit.end(), kind) == emit.end()) continue;
            std::string text;
            if (kind == "requests") text = bundle.requests_csv();
            if (kind == "summary") text = bundle.summary_csv();
            if (kind == "cdf") text = bundle.cdf_csv();
            if (kind == "hist2d") text = bundle.hist2d_csv();
            const auto path = dir / fmt::format("{}.csv", kind);
            write_file(path, text);
            out << "wrote " << path.string() << "\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fogalloc::cli

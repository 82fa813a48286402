// SPDX-License-Identifier: Apache-2.0
//
// cumulus: deterministic CPU volumetric-cloud renderer and benchmark harness.
//
//   cumulus render   --config scene.json [--out DIR] [--set k=v]... [--wide]
//   cumulus sequence --config scene.json --frames N [--out DIR] [--set k=v]...
//   cumulus bench    --config scene.json [--out DIR] [--repeats K] [--set k=v]...
//   cumulus fig2     --config scene.json [--out DIR] [--set k=v]...
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cumulus/config.hpp"
#include "cumulus/evalbench.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    int frames = 1;
    int repeats = 5;
    bool wide = false;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
}

std::string frame_filename(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04d.ppm", index);
    return buf;
}

int run_render(const Options& opt) {
    const cumulus::LoadedConfig config = cumulus::load_config(opt.config_path, opt.overrides);
    fs::create_directories(opt.out_dir);

    cumulus::FrameState state;
    const cumulus::RenderedFrame frame = cumulus::render_frame(config.scene, nullptr, 0, state);
    const fs::path image_path = fs::path(opt.out_dir) / "render.ppm";
    cumulus::write_ppm(frame.final_image, image_path.string(), opt.wide);

    std::printf("%s: %dx%d, density_samples=%lld, light_samples=%lld, wall_ms=%.2f\n", image_path.string().c_str(), config.scene.display_width, config.scene.display_height,
                frame.stats.density_samples, frame.stats.light_samples, frame.stats.wall_time * 1e3);
    return 0;
}

int run_sequence(const Options& opt) {
    const cumulus::LoadedConfig config = cumulus::load_config(opt.config_path, opt.overrides);
    fs::create_directories(opt.out_dir);

    std::string stats_csv = "frame,density_samples,light_samples,wall_ms\n";
    cumulus::render_sequence(config.scene, opt.frames, nullptr, [&](int index, const cumulus::RenderedFrame& frame) {
        const fs::path image_path = fs::path(opt.out_dir) / frame_filename(index);
        cumulus::write_ppm(frame.final_image, image_path.string(), opt.wide);
        char row[128];
        std::snprintf(row, sizeof(row), "%d,%lld,%lld,%.3f\n", index, frame.stats.density_samples, frame.stats.light_samples, frame.stats.wall_time * 1e3);
        stats_csv += row;
    });
    write_text(fs::path(opt.out_dir) / "frames.csv", stats_csv);

    std::printf("%d frame(s) written to %s\n", opt.frames, opt.out_dir.c_str());
    return 0;
}

int run_bench(const Options& opt) {
    const cumulus::LoadedConfig config = cumulus::load_config(opt.config_path, opt.overrides);
    fs::create_directories(opt.out_dir);

    const std::vector<cumulus::ExperimentSpec> specs = config.experiments.empty() ? cumulus::canonical_bench_specs(config.scene) : config.experiments;

    const cumulus::RunReport report = cumulus::run_experiments(specs, opt.repeats);
    write_text(fs::path(opt.out_dir) / "report.csv", cumulus::report_csv(report));
    write_text(fs::path(opt.out_dir) / "timings.csv", cumulus::timings_csv(report));
    const std::string table = cumulus::report_table(report);
    write_text(fs::path(opt.out_dir) / "report.txt", table);
    std::fputs(table.c_str(), stdout);

    for (const auto& r : report.results) {
        const fs::path image_path = fs::path(opt.out_dir) / (r.name + ".ppm");
        if (!r.error) cumulus::write_ppm(r.final_image, image_path.string(), opt.wide);
    }
    return 0;
}

int run_fig2(const Options& opt) {
    const cumulus::LoadedConfig config = cumulus::load_config(opt.config_path, opt.overrides);
    fs::create_directories(opt.out_dir);

    const cumulus::Fig2Report report = cumulus::fig2_experiment(config.scene);
    write_text(fs::path(opt.out_dir) / "fig2.csv", cumulus::fig2_csv(report));
    const std::string table = cumulus::fig2_table(report);
    write_text(fs::path(opt.out_dir) / "fig2.txt", table);
    std::fputs(table.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic volumetric-cloud renderer and benchmark harness"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* cmd, bool with_wide = true) {
        cmd->add_option("--config", opt.config_path, "scene config (JSON)")->required();
        cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
        cmd->add_option("--set", opt.overrides, "config override, dotted path (e.g. raymarch.n_steps=8)");
        if (with_wide) cmd->add_flag("--wide", opt.wide, "write 16-bit PPM instead of 8-bit");
    };

    CLI::App* render = app.add_subcommand("render", "render a single frame to PPM");
    add_common(render);

    CLI::App* sequence = app.add_subcommand("sequence", "render a frame sequence with temporal state");
    add_common(sequence);
    sequence->add_option("--frames", opt.frames, "number of frames")->required();

    CLI::App* bench = app.add_subcommand("bench", "run the benchmark experiments and emit reports");
    add_common(bench);
    bench->add_option("--repeats", opt.repeats, "timing repeats per experiment (>= 5, default 5)");

    CLI::App* fig2 = app.add_subcommand("fig2", "step-length brightness-dependence experiment");
    add_common(fig2, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (render->parsed()) return run_render(opt);
        if (sequence->parsed()) return run_sequence(opt);
        if (bench->parsed()) return run_bench(opt);
        if (fig2->parsed()) return run_fig2(opt);
    } catch (const cumulus::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

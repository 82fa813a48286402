// SPDX-License-Identifier: Apache-2.0
#include "cumulus/evalbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cumulus {

double rmse(const Image& a, const Image& b) {
    if (!a.same_resolution(b)) throw std::invalid_argument("rmse: image resolutions differ");
    double sum = 0.0;
    const auto& pa = a.pixels();
    const auto& pb = b.pixels();
    for (size_t i = 0; i < pa.size(); ++i) {
        const Vec3 d = pa[i].rgb - pb[i].rgb;
        sum += d.x * d.x + d.y * d.y + d.z * d.z;
    }
    return std::sqrt(sum / (static_cast<double>(pa.size()) * 3.0));
}

double mean_luminance(const Image& img) {
    double sum = 0.0;
    for (const Rgba& p : img.pixels()) sum += luminance(p.rgb);
    return sum / static_cast<double>(img.pixels().size());
}

double relative_spread(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    return mean > 0.0 ? (hi - lo) / mean : 0.0;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

const char* scale_name(BufferScale s) {
    switch (s) {
        case BufferScale::Full: return "full";
        case BufferScale::Half: return "half";
        case BufferScale::Quarter: return "quarter";
    }
    return "?";
}

const char* integration_name(IntegrationMode m) {
    return m == IntegrationMode::Naive ? "naive" : "analytic";
}

const char* jitter_name(JitterMode m) {
    switch (m) {
        case JitterMode::Off: return "off";
        case JitterMode::PerPixel: return "per_pixel";
        case JitterMode::PerFrameUniform: return "per_frame_uniform";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

RunReport run_experiments(const std::vector<ExperimentSpec>& specs, int repeats) {
    if (repeats < 5) throw std::invalid_argument("run_experiments: repeats must be >= 5");

    RunReport report;
    report.repeats = repeats;
    report.results.reserve(specs.size());

    std::map<std::string, const ExperimentSpec*> by_name;
    for (const auto& spec : specs) {
        if (!by_name.emplace(spec.name, &spec).second)
            throw std::invalid_argument("run_experiments: duplicate experiment name: " + spec.name);
    }

    // Execution pass: render each spec `repeats` times, timing the final
    // frame. The pipeline is deterministic, so the final frame of any repeat
    // is the same image.
    for (const auto& spec : specs) {
        ExperimentResult result;
        result.name = spec.name;
        result.scene = spec.scene;
        result.n_frames = spec.n_frames;
        try {
            if (spec.reference) {
                const auto it = by_name.find(*spec.reference);
                if (it == by_name.end())
                    throw std::runtime_error("reference spec not found: " + *spec.reference);
                if (it->second->scene.display_width != spec.scene.display_width ||
                    it->second->scene.display_height != spec.scene.display_height)
                    throw std::runtime_error("reference display resolution differs: " + *spec.reference);
            }
            for (int r = 0; r < repeats; ++r) {
                RenderedFrame last;
                render_sequence(spec.scene, spec.n_frames, nullptr, [&last](int, const RenderedFrame& f) { last = f; });
                result.wall_times.push_back(last.stats.wall_time);
                if (r == 0) {
                    result.final_image = std::move(last.final_image);
                    result.density_samples = last.stats.density_samples;
                    result.light_samples = last.stats.light_samples;
                }
            }
            result.median_wall_time = median(result.wall_times);
            result.mean_luminance = mean_luminance(result.final_image);
        } catch (const std::exception& e) {
            result.error = e.what();
        }
        report.results.push_back(std::move(result));
    }

    // Metric pass: references may appear anywhere in the list.
    std::map<std::string, const ExperimentResult*> done;
    for (const auto& r : report.results) done.emplace(r.name, &r);
    for (auto& result : report.results) {
        if (result.error) continue;
        const auto& spec = *by_name.at(result.name);
        if (!spec.reference) continue;
        const ExperimentResult* ref = done.at(*spec.reference);
        if (ref->error) {
            result.error = "reference failed: " + *spec.reference;
            continue;
        }
        result.rmse_vs_reference = rmse(result.final_image, ref->final_image);
    }
    return report;
}

Fig2Report fig2_experiment(const SceneConfig& scene) {
    Fig2Report report;
    report.step_counts = {8, 16, 32, 64, 128};

    SceneConfig probe = scene;
    probe.raymarch.jitter_mode = JitterMode::Off;
    probe.taa_enabled = false;

    for (IntegrationMode mode : {IntegrationMode::Naive, IntegrationMode::Analytic}) {
        probe.raymarch.integration_mode = mode;
        auto& out = mode == IntegrationMode::Naive ? report.naive_luminance : report.analytic_luminance;
        for (int n : report.step_counts) {
            probe.raymarch.n_steps = n;
            FrameState state;
            const RenderedFrame frame = render_frame(probe, nullptr, 0, state);
            out.push_back(mean_luminance(frame.final_image));
        }
    }
    report.naive_spread = relative_spread(report.naive_luminance);
    report.analytic_spread = relative_spread(report.analytic_luminance);
    return report;
}

SceneConfig canonical_scene() {
    SceneConfig scene;
    scene.field = make_procedural_clouds(11u, 0.22, 4, 0.62, VolumeBounds{{-14.0, 1.0, -14.0}, {14.0, 7.0, 14.0}});
    scene.medium.absorption = 0.9;
    scene.medium.hg_g = 0.5;
    scene.medium.sun_direction = normalize(Vec3{0.35, 0.75, -0.25});
    scene.medium.sun_radiance = {3.2, 3.0, 2.8};
    scene.medium.ambient_radiance = {0.12, 0.14, 0.18};
    scene.camera.position = {0.0, 1.6, -22.0};
    scene.camera.look_at = {0.0, 4.2, 0.0};
    scene.camera.up = {0.0, 1.0, 0.0};
    scene.camera.vertical_fov = 55.0 * kPi / 180.0;
    scene.background = {0.0, 0.0, 0.0};
    scene.display_width = 256;
    scene.display_height = 256;
    scene.cloud_buffer_scale = BufferScale::Full;
    scene.raymarch = RaymarchConfig{};
    scene.taa = TaaConfig{};
    scene.taa_enabled = false;
    return scene;
}

std::vector<ExperimentSpec> canonical_bench_specs(const SceneConfig& base) {
    auto row = [&base](const std::string& name, BufferScale scale, int steps, JitterMode jitter, bool taa, int n_frames, std::optional<std::string> reference) {
        ExperimentSpec spec;
        spec.name = name;
        spec.scene = base;
        spec.scene.cloud_buffer_scale = scale;
        spec.scene.raymarch.n_steps = steps;
        spec.scene.raymarch.integration_mode = IntegrationMode::Analytic;
        spec.scene.raymarch.jitter_mode = jitter;
        spec.scene.raymarch.alpha_early_out = 1.0;  // disabled: sample counts compare exactly
        spec.scene.taa_enabled = taa;
        spec.n_frames = n_frames;
        spec.reference = std::move(reference);
        return spec;
    };

    return {
        row("full_128", BufferScale::Full, 128, JitterMode::Off, false, 1, std::nullopt),
        row("half_128", BufferScale::Half, 128, JitterMode::Off, false, 1, "full_128"),
        row("half_8", BufferScale::Half, 8, JitterMode::Off, false, 1, "full_128"),
        row("half_8_jitter", BufferScale::Half, 8, JitterMode::PerPixel, false, 1, "full_128"),
        row("half_8_jitter_taa", BufferScale::Half, 8, JitterMode::PerPixel, true, 8, "full_128"),
        row("quarter_8_jitter_taa", BufferScale::Quarter, 8, JitterMode::PerPixel, true, 8, "full_128"),
    };
}

std::string report_csv(const RunReport& report) {
    std::ostringstream out;
    out << "name,width,height,buffer_scale,n_steps,integration,jitter,taa,n_frames,density_samples,light_samples,mean_luminance,rmse_vs_reference,status\n";
    for (const auto& r : report.results) {
        out << r.name << ',' << r.scene.display_width << ',' << r.scene.display_height << ','
            << scale_name(r.scene.cloud_buffer_scale) << ',' << r.scene.raymarch.n_steps << ','
            << integration_name(r.scene.raymarch.integration_mode) << ',' << jitter_name(r.scene.raymarch.jitter_mode) << ','
            << (r.scene.taa_enabled ? "on" : "off") << ',' << r.n_frames << ',';
        if (r.error) {
            out << ",,,,failed: " << *r.error << '\n';
            continue;
        }
        out << r.density_samples << ',' << r.light_samples << ',' << format_double(r.mean_luminance) << ',';
        if (r.rmse_vs_reference) out << format_double(*r.rmse_vs_reference);
        out << ",ok\n";
    }
    return out.str();
}

std::string timings_csv(const RunReport& report) {
    std::ostringstream out;
    out << "name,repeats,median_wall_ms\n";
    for (const auto& r : report.results) {
        out << r.name << ',' << report.repeats << ',';
        if (!r.error) out << format_double(r.median_wall_time * 1e3);
        out << '\n';
    }
    return out.str();
}

std::string report_table(const RunReport& report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-22s %10s %14s %14s %12s %12s\n", "experiment", "median ms", "density", "light", "rmse", "mean lum");
    out << line;
    for (const auto& r : report.results) {
        if (r.error) {
            std::snprintf(line, sizeof(line), "%-22s failed: %s\n", r.name.c_str(), r.error->c_str());
            out << line;
            continue;
        }
        std::snprintf(line, sizeof(line), "%-22s %10.2f %14lld %14lld %12s %12.6f\n", r.name.c_str(), r.median_wall_time * 1e3, r.density_samples, r.light_samples,
                      r.rmse_vs_reference ? format_double(*r.rmse_vs_reference).c_str() : "-", r.mean_luminance);
        out << line;
    }
    return out.str();
}

std::string fig2_csv(const Fig2Report& report) {
    std::ostringstream out;
    out << "integration,n_steps,mean_luminance\n";
    for (size_t i = 0; i < report.step_counts.size(); ++i)
        out << "naive," << report.step_counts[i] << ',' << format_double(report.naive_luminance[i]) << '\n';
    for (size_t i = 0; i < report.step_counts.size(); ++i)
        out << "analytic," << report.step_counts[i] << ',' << format_double(report.analytic_luminance[i]) << '\n';
    out << "naive_spread,," << format_double(report.naive_spread) << '\n';
    out << "analytic_spread,," << format_double(report.analytic_spread) << '\n';
    return out.str();
}

std::string fig2_table(const Fig2Report& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%8s %16s %16s\n", "n_steps", "naive lum", "analytic lum");
    out << line;
    for (size_t i = 0; i < report.step_counts.size(); ++i) {
        std::snprintf(line, sizeof(line), "%8d %16.8f %16.8f\n", report.step_counts[i], report.naive_luminance[i], report.analytic_luminance[i]);
        out << line;
    }
    std::snprintf(line, sizeof(line), "relative spread: naive %.6f, analytic %.8f\n", report.naive_spread, report.analytic_spread);
    out << line;
    return out.str();
}

}  // namespace cumulus

// SPDX-License-Identifier: Apache-2.0
#include "cumulus/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cumulus {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& message) {
    throw ConfigError(context + ": " + message);
}

void require_keys(const json& obj, const std::string& context, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(context, "expected an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) fail(context + "." + item.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& context, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(context + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& context, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(context + "." + key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& context, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(context + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& context, const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(context + "." + key, "expected a string");
    return v.get<std::string>();
}

Vec3 get_vec3(const json& obj, const std::string& context, const std::string& key, const Vec3& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
        fail(context + "." + key, "expected an array of 3 numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// --- field section ---

DensityField parse_field(const json& obj, const std::string& context) {
    require_keys(obj, context, {"kind", "bounds", "value", "center", "radius", "density", "y_min", "y_max", "seed", "frequency", "octaves", "coverage"});

    if (!obj.contains("bounds")) fail(context + ".bounds", "required");
    const json& b = obj.at("bounds");
    require_keys(b, context + ".bounds", {"min", "max"});
    VolumeBounds bounds;
    bounds.min_corner = get_vec3(b, context + ".bounds", "min", {});
    bounds.max_corner = get_vec3(b, context + ".bounds", "max", {});
    if (!(bounds.max_corner.x > bounds.min_corner.x && bounds.max_corner.y > bounds.min_corner.y && bounds.max_corner.z > bounds.min_corner.z))
        fail(context + ".bounds", "max must exceed min componentwise");

    const std::string kind = get_string(obj, context, "kind", "");
    try {
        if (kind == "constant") {
            return make_constant_field(get_number(obj, context, "value", 0.5), bounds);
        } else if (kind == "sphere") {
            return make_sphere_field(get_vec3(obj, context, "center", {}), get_number(obj, context, "radius", 1.0), get_number(obj, context, "density", 1.0), bounds);
        } else if (kind == "slab") {
            return make_slab_field(get_number(obj, context, "y_min", 0.0), get_number(obj, context, "y_max", 1.0), get_number(obj, context, "density", 1.0), bounds);
        } else if (kind == "procedural") {
            const int seed = get_int(obj, context, "seed", 0);
            if (seed < 0) fail(context + ".seed", "must be >= 0");
            return make_procedural_clouds(static_cast<std::uint32_t>(seed), get_number(obj, context, "frequency", 1.0), get_int(obj, context, "octaves", 4), get_number(obj, context, "coverage", 0.5), bounds);
        }
    } catch (const std::invalid_argument& e) {
        fail(context, e.what());
    }
    fail(context + ".kind", "must be one of constant|sphere|slab|procedural (got \"" + kind + "\")");
}

json field_to_json(const DensityField& f) {
    json obj;
    obj["bounds"] = {{"min", vec3_to_json(f.bounds.min_corner)}, {"max", vec3_to_json(f.bounds.max_corner)}};
    switch (f.kind) {
        case FieldKind::Constant:
            obj["kind"] = "constant";
            obj["value"] = f.constant_value;
            break;
        case FieldKind::Sphere:
            obj["kind"] = "sphere";
            obj["center"] = vec3_to_json(f.sphere_center);
            obj["radius"] = f.sphere_radius;
            obj["density"] = f.sphere_density;
            break;
        case FieldKind::Slab:
            obj["kind"] = "slab";
            obj["y_min"] = f.slab_y_min;
            obj["y_max"] = f.slab_y_max;
            obj["density"] = f.slab_density;
            break;
        case FieldKind::Procedural:
            obj["kind"] = "procedural";
            obj["seed"] = f.seed;
            obj["frequency"] = f.frequency;
            obj["octaves"] = f.octaves;
            obj["coverage"] = f.coverage;
            break;
    }
    return obj;
}

// --- medium section ---

MediumParams parse_medium(const json& obj, const std::string& context) {
    require_keys(obj, context, {"absorption", "hg_g", "sun_direction", "sun_radiance", "ambient_radiance"});
    MediumParams m;  // struct defaults
    m.absorption = get_number(obj, context, "absorption", m.absorption);
    if (!(m.absorption > 0.0)) fail(context + ".absorption", "must be > 0");
    m.hg_g = get_number(obj, context, "hg_g", m.hg_g);
    if (!(std::abs(m.hg_g) < 1.0)) fail(context + ".hg_g", "|g| must be < 1");
    m.sun_direction = get_vec3(obj, context, "sun_direction", m.sun_direction);
    const double len2 = dot(m.sun_direction, m.sun_direction);
    if (!(len2 > 0.0)) fail(context + ".sun_direction", "must be nonzero");
    if (std::abs(len2 - 1.0) > 1e-12) m.sun_direction = normalize(m.sun_direction);
    m.sun_radiance = get_vec3(obj, context, "sun_radiance", m.sun_radiance);
    m.ambient_radiance = get_vec3(obj, context, "ambient_radiance", m.ambient_radiance);
    for (const auto* c : {&m.sun_radiance, &m.ambient_radiance})
        if (c->x < 0.0 || c->y < 0.0 || c->z < 0.0) fail(context, "radiance must be >= 0 componentwise");
    return m;
}

json medium_to_json(const MediumParams& m) {
    return {{"absorption", m.absorption}, {"hg_g", m.hg_g}, {"sun_direction", vec3_to_json(m.sun_direction)}, {"sun_radiance", vec3_to_json(m.sun_radiance)}, {"ambient_radiance", vec3_to_json(m.ambient_radiance)}};
}

// --- camera section ---

CameraDesc parse_camera(const json& obj, const std::string& context) {
    require_keys(obj, context, {"position", "look_at", "up", "fov_degrees"});
    CameraDesc c;
    c.position = get_vec3(obj, context, "position", c.position);
    c.look_at = get_vec3(obj, context, "look_at", c.look_at);
    c.up = get_vec3(obj, context, "up", c.up);
    const double fov_deg = get_number(obj, context, "fov_degrees", c.vertical_fov * 180.0 / kPi);
    if (!(fov_deg > 0.0 && fov_deg < 180.0)) fail(context + ".fov_degrees", "must be in (0, 180)");
    c.vertical_fov = fov_deg * kPi / 180.0;
    const Vec3 gaze = c.look_at - c.position;
    if (dot(gaze, gaze) == 0.0) fail(context + ".look_at", "must differ from position");
    if (dot(cross(c.up, gaze), cross(c.up, gaze)) == 0.0) fail(context + ".up", "parallel to the view direction");
    return c;
}

json camera_to_json(const CameraDesc& c) {
    return {{"position", vec3_to_json(c.position)}, {"look_at", vec3_to_json(c.look_at)}, {"up", vec3_to_json(c.up)}, {"fov_degrees", c.vertical_fov * 180.0 / kPi}};
}

// --- render section ---

void parse_render(const json& obj, const std::string& context, SceneConfig& scene) {
    require_keys(obj, context, {"width", "height", "background", "buffer_scale"});
    scene.display_width = get_int(obj, context, "width", scene.display_width);
    scene.display_height = get_int(obj, context, "height", scene.display_height);
    if (scene.display_width < 1 || scene.display_height < 1) fail(context, "resolution must be positive");
    scene.background = get_vec3(obj, context, "background", scene.background);
    if (scene.background.x < 0.0 || scene.background.y < 0.0 || scene.background.z < 0.0) fail(context + ".background", "must be >= 0");
    const std::string scale = get_string(obj, context, "buffer_scale", "");
    if (!scale.empty()) {
        if (scale == "full") scene.cloud_buffer_scale = BufferScale::Full;
        else if (scale == "half") scene.cloud_buffer_scale = BufferScale::Half;
        else if (scale == "quarter") scene.cloud_buffer_scale = BufferScale::Quarter;
        else fail(context + ".buffer_scale", "must be full|half|quarter (got \"" + scale + "\")");
    }
}

json render_to_json(const SceneConfig& s) {
    const char* scale = s.cloud_buffer_scale == BufferScale::Full ? "full" : (s.cloud_buffer_scale == BufferScale::Half ? "half" : "quarter");
    return {{"width", s.display_width}, {"height", s.display_height}, {"background", vec3_to_json(s.background)}, {"buffer_scale", scale}};
}

// --- raymarch section ---

void parse_raymarch(const json& obj, const std::string& context, RaymarchConfig& r) {
    require_keys(obj, context, {"n_steps", "n_light_steps", "integration", "jitter", "alpha_early_out"});
    r.n_steps = get_int(obj, context, "n_steps", r.n_steps);
    if (r.n_steps < 1) fail(context + ".n_steps", "must be >= 1");
    r.n_light_steps = get_int(obj, context, "n_light_steps", r.n_light_steps);
    if (r.n_light_steps < 1) fail(context + ".n_light_steps", "must be >= 1");
    const std::string integration = get_string(obj, context, "integration", "");
    if (!integration.empty()) {
        if (integration == "naive") r.integration_mode = IntegrationMode::Naive;
        else if (integration == "analytic") r.integration_mode = IntegrationMode::Analytic;
        else fail(context + ".integration", "must be naive|analytic (got \"" + integration + "\")");
    }
    const std::string jitter = get_string(obj, context, "jitter", "");
    if (!jitter.empty()) {
        if (jitter == "off") r.jitter_mode = JitterMode::Off;
        else if (jitter == "per_pixel") r.jitter_mode = JitterMode::PerPixel;
        else if (jitter == "per_frame_uniform") r.jitter_mode = JitterMode::PerFrameUniform;
        else fail(context + ".jitter", "must be off|per_pixel|per_frame_uniform (got \"" + jitter + "\")");
    }
    r.alpha_early_out = get_number(obj, context, "alpha_early_out", r.alpha_early_out);
    if (!(r.alpha_early_out > 0.0 && r.alpha_early_out <= 1.0)) fail(context + ".alpha_early_out", "must be in (0, 1]");
}

json raymarch_to_json(const RaymarchConfig& r) {
    const char* jitter = r.jitter_mode == JitterMode::Off ? "off" : (r.jitter_mode == JitterMode::PerPixel ? "per_pixel" : "per_frame_uniform");
    return {{"n_steps", r.n_steps}, {"n_light_steps", r.n_light_steps}, {"integration", r.integration_mode == IntegrationMode::Naive ? "naive" : "analytic"}, {"jitter", jitter}, {"alpha_early_out", r.alpha_early_out}};
}

// --- taa section ---

void parse_taa(const json& obj, const std::string& context, SceneConfig& scene) {
    require_keys(obj, context, {"enabled", "history_weight", "clamp"});
    scene.taa_enabled = get_bool(obj, context, "enabled", scene.taa_enabled);
    scene.taa.history_weight = get_number(obj, context, "history_weight", scene.taa.history_weight);
    if (!(scene.taa.history_weight >= 0.0 && scene.taa.history_weight < 1.0)) fail(context + ".history_weight", "must be in [0, 1)");
    const std::string clamp = get_string(obj, context, "clamp", "");
    if (!clamp.empty()) {
        if (clamp == "none") scene.taa.clamp_mode = ClampMode::None;
        else if (clamp == "minmax_3x3") scene.taa.clamp_mode = ClampMode::MinMax3x3;
        else fail(context + ".clamp", "must be none|minmax_3x3 (got \"" + clamp + "\")");
    }
}

json taa_to_json(const SceneConfig& s) {
    return {{"enabled", s.taa_enabled}, {"history_weight", s.taa.history_weight}, {"clamp", s.taa.clamp_mode == ClampMode::None ? "none" : "minmax_3x3"}};
}

SceneConfig parse_scene(const json& root, const std::string& source) {
    require_keys(root, source, {"field", "medium", "camera", "render", "raymarch", "taa", "experiments"});
    if (!root.contains("field")) fail(source + ".field", "required");
    if (!root.contains("camera")) fail(source + ".camera", "required");

    SceneConfig scene;
    scene.field = parse_field(root.at("field"), source + ".field");
    if (root.contains("medium")) scene.medium = parse_medium(root.at("medium"), source + ".medium");
    scene.camera = parse_camera(root.at("camera"), source + ".camera");
    if (root.contains("render")) parse_render(root.at("render"), source + ".render", scene);
    if (root.contains("raymarch")) parse_raymarch(root.at("raymarch"), source + ".raymarch", scene.raymarch);
    if (root.contains("taa")) parse_taa(root.at("taa"), source + ".taa", scene);
    return scene;
}

json scene_to_json(const SceneConfig& scene) {
    json root;
    root["field"] = field_to_json(scene.field);
    root["medium"] = medium_to_json(scene.medium);
    root["camera"] = camera_to_json(scene.camera);
    root["render"] = render_to_json(scene);
    root["raymarch"] = raymarch_to_json(scene.raymarch);
    root["taa"] = taa_to_json(scene);
    return root;
}

std::vector<ExperimentSpec> parse_experiments(const json& root, const std::string& source, const SceneConfig&) {
    std::vector<ExperimentSpec> specs;
    if (!root.contains("experiments")) return specs;
    const json& list = root.at("experiments");
    if (!list.is_array()) fail(source + ".experiments", "expected an array");

    std::set<std::string> names;
    for (size_t i = 0; i < list.size(); ++i) {
        const std::string context = source + ".experiments[" + std::to_string(i) + "]";
        const json& entry = list[i];
        require_keys(entry, context, {"name", "n_frames", "reference", "field", "medium", "camera", "render", "raymarch", "taa"});

        ExperimentSpec spec;
        spec.name = get_string(entry, context, "name", "");
        if (spec.name.empty()) fail(context + ".name", "required and nonempty");
        if (!names.insert(spec.name).second) fail(context + ".name", "duplicate experiment name: " + spec.name);
        spec.n_frames = get_int(entry, context, "n_frames", 1);
        if (spec.n_frames < 1) fail(context + ".n_frames", "must be >= 1");
        if (entry.contains("reference") && !entry.at("reference").is_null()) spec.reference = get_string(entry, context, "reference", "");

        // Merge the experiment's partial sections over the base document and
        // re-parse, so per-experiment overrides follow the same schema.
        json merged = root;
        merged.erase("experiments");
        for (const char* section : {"field", "medium", "camera", "render", "raymarch", "taa"}) {
            if (!entry.contains(section)) continue;
            if (merged.contains(section)) {
                json m = merged.at(section);
                m.update(entry.at(section), true);
                merged[section] = m;
            } else {
                merged[section] = entry.at(section);
            }
        }
        spec.scene = parse_scene(merged, context);
        specs.push_back(std::move(spec));
    }

    // References must name another listed spec sharing the display resolution.
    std::map<std::string, const ExperimentSpec*> by_name;
    for (const auto& s : specs) by_name.emplace(s.name, &s);
    for (const auto& s : specs) {
        if (!s.reference) continue;
        const auto it = by_name.find(*s.reference);
        if (it == by_name.end()) fail(source + ".experiments", s.name + ": reference not found: " + *s.reference);
        if (it->second->scene.display_width != s.scene.display_width || it->second->scene.display_height != s.scene.display_height)
            fail(source + ".experiments", s.name + ": reference display resolution differs: " + *s.reference);
    }
    return specs;
}

void apply_override(json& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) fail("--set " + assignment, "expected key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;  // bare words become strings
    }

    json* node = &root;
    std::istringstream segments(path);
    std::string segment;
    std::vector<std::string> parts;
    while (std::getline(segments, segment, '.')) parts.push_back(segment);
    if (parts.empty()) fail("--set " + assignment, "empty key path");

    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        const std::string& key = parts[i];
        if (node->is_array()) {
            size_t index = 0;
            try {
                index = std::stoul(key);
            } catch (...) {
                fail("--set " + assignment, "array index expected at \"" + key + "\"");
            }
            if (index >= node->size()) fail("--set " + assignment, "array index out of range at \"" + key + "\"");
            node = &(*node)[index];
        } else {
            node = &(*node)[key];  // creates intermediate objects; schema check follows
        }
    }
    if (node->is_array()) {
        size_t index = 0;
        try {
            index = std::stoul(parts.back());
        } catch (...) {
            fail("--set " + assignment, "array index expected at \"" + parts.back() + "\"");
        }
        if (index >= node->size()) fail("--set " + assignment, "array index out of range");
        (*node)[index] = value;
    } else {
        (*node)[parts.back()] = value;
    }
}

LoadedConfig parse_config_json(json root, const std::vector<std::string>& overrides, const std::string& source) {
    for (const auto& assignment : overrides) apply_override(root, assignment);
    LoadedConfig config;
    config.scene = parse_scene(root, source);
    config.experiments = parse_experiments(root, source, config.scene);
    return config;
}

}  // namespace

LoadedConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Map the byte offset to a line number for the diagnostic.
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError(source + ":" + std::to_string(line) + ": " + e.what());
    }
    return parse_config_json(std::move(root), overrides, source);
}

LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), overrides, path);
}

std::string config_to_text(const LoadedConfig& config) {
    json root = scene_to_json(config.scene);
    if (!config.experiments.empty()) {
        json list = json::array();
        for (const auto& spec : config.experiments) {
            json entry;
            entry["name"] = spec.name;
            entry["n_frames"] = spec.n_frames;
            if (spec.reference) entry["reference"] = *spec.reference;
            // Emit the experiment's scene as full sections; re-parsing merges
            // them over the base and lands on the same configuration.
            const json scene = scene_to_json(spec.scene);
            for (const char* section : {"field", "medium", "camera", "render", "raymarch", "taa"})
                entry[section] = scene.at(section);
            list.push_back(std::move(entry));
        }
        root["experiments"] = std::move(list);
    }
    return root.dump(2) + "\n";
}

}  // namespace cumulus

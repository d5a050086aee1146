#include "fringescan/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fringescan {

namespace {

using json = nlohmann::ordered_json;

double number_field(const json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(errc::bad_config, std::string("config key '") + key + "' must be a number");
  return it->get<double>();
}

int int_field(const json& obj, const char* key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer())
    fail(errc::bad_config, std::string("config key '") + key + "' must be an integer");
  return it->get<int>();
}

std::string string_field(const json& obj, const char* key, const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) fail(errc::bad_config, std::string("config key '") + key + "' must be a string");
  return it->get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* scope) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) fail(errc::bad_config, std::string("unknown ") + scope + " key '" + it.key() + "'");
  }
}

}  // namespace

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig c;
  c.levels = {{912, 12}, {144, 12}, {24, 12}, {12, 12}};
  return c;
}

void PipelineConfig::validate() const {
  if (levels.empty()) fail(errc::bad_config, "config needs at least one level");
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (!(levels[m].period > 0)) fail(errc::bad_config, "level periods must be positive");
    if (m && !(levels[m].period < levels[m - 1].period))
      fail(errc::bad_config, "level periods must strictly decrease");
    if (levels[m].steps < 3)
      fail(errc::insufficient_samples, "insufficient samples: need at least 3 steps");
  }
  hdr_config().validate();
  if (!(max_phase_gap > 0)) fail(errc::bad_config, "max_phase_gap must be positive");
  if (!(residual_bound > 0)) fail(errc::bad_config, "residual_bound must be positive");
  projector_model().validate();
  sensor_model().validate();
  camera_rig().validate();
}

ProjectorModel PipelineConfig::projector_model() const {
  ProjectorModel p;
  p.periods.clear();
  p.steps.clear();
  for (const LevelSpec& l : levels) {
    p.periods.push_back(l.period);
    p.steps.push_back(l.steps);
  }
  p.field_px = sim.projector_px;
  p.i0 = sim.i0;
  p.alpha0 = sim.alpha0;
  p.blur_px = sim.blur_px;
  return p;
}

CameraRig PipelineConfig::camera_rig() const {
  return CameraRig{sim.width, sim.height, sim.camera_px_per_mm, sim.camera_half_angle_deg};
}

Scene PipelineConfig::load_scene() const {
  if (Scene::is_built_in(sim.scene)) return Scene::built_in(sim.scene);
  // A name that is neither built in nor on disk is a typo, not an IO failure.
  if (!std::filesystem::exists(sim.scene))
    fail(errc::bad_config, "unknown scene '" + sim.scene + "'");
  return read_scene(sim.scene);
}

std::string PipelineConfig::camera_path() const {
  return cameras.empty() ? input + "/cameras.txt" : cameras;
}

std::string PipelineConfig::to_json() const {
  json doc;
  json lv = json::array();
  for (const LevelSpec& l : levels) lv.push_back({{"period", l.period}, {"steps", l.steps}});
  doc["levels"] = std::move(lv);
  doc["sat_thr"] = sat_thr;
  doc["max_phase_gap"] = max_phase_gap;
  doc["residual_bound"] = residual_bound;
  doc["seed"] = seed;
  doc["input"] = input;
  doc["output"] = output;
  doc["cameras"] = cameras;
  doc["simulate"] = {{"scene", sim.scene},
                     {"width", sim.width},
                     {"height", sim.height},
                     {"projector_px", sim.projector_px},
                     {"i0", sim.i0},
                     {"alpha0", sim.alpha0},
                     {"blur_px", sim.blur_px},
                     {"noise_sigma", sim.noise_sigma},
                     {"camera_px_per_mm", sim.camera_px_per_mm},
                     {"camera_half_angle_deg", sim.camera_half_angle_deg}};
  return doc.dump(2) + "\n";
}

PipelineConfig parse_config(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) fail(errc::bad_config, "config is not valid JSON");
  if (!doc.is_object()) fail(errc::bad_config, "config root must be a JSON object");
  reject_unknown(doc,
                 {"levels", "sat_thr", "max_phase_gap", "residual_bound", "seed", "input",
                  "output", "cameras", "simulate"},
                 "config");

  PipelineConfig c = PipelineConfig::defaults();
  if (auto it = doc.find("levels"); it != doc.end()) {
    if (!it->is_array()) fail(errc::bad_config, "config key 'levels' must be an array");
    c.levels.clear();
    for (const json& l : *it) {
      if (!l.is_object()) fail(errc::bad_config, "each level must be an object");
      reject_unknown(l, {"period", "steps"}, "level");
      LevelSpec spec;
      spec.period = number_field(l, "period", 0);
      spec.steps = int_field(l, "steps", 0);
      c.levels.push_back(spec);
    }
  }
  c.sat_thr = int_field(doc, "sat_thr", c.sat_thr);
  c.max_phase_gap = number_field(doc, "max_phase_gap", c.max_phase_gap);
  c.residual_bound = number_field(doc, "residual_bound", c.residual_bound);
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      fail(errc::bad_config, "config key 'seed' must be an integer");
    c.seed = it->get<std::uint64_t>();
  }
  c.input = string_field(doc, "input", c.input);
  c.output = string_field(doc, "output", c.output);
  c.cameras = string_field(doc, "cameras", c.cameras);

  if (auto it = doc.find("simulate"); it != doc.end()) {
    if (!it->is_object()) fail(errc::bad_config, "config key 'simulate' must be an object");
    reject_unknown(*it,
                   {"scene", "width", "height", "projector_px", "i0", "alpha0", "blur_px",
                    "noise_sigma", "camera_px_per_mm", "camera_half_angle_deg"},
                   "simulate");
    SimSettings& s = c.sim;
    s.scene = string_field(*it, "scene", s.scene);
    s.width = int_field(*it, "width", s.width);
    s.height = int_field(*it, "height", s.height);
    s.projector_px = number_field(*it, "projector_px", s.projector_px);
    s.i0 = number_field(*it, "i0", s.i0);
    s.alpha0 = number_field(*it, "alpha0", s.alpha0);
    s.blur_px = number_field(*it, "blur_px", s.blur_px);
    s.noise_sigma = number_field(*it, "noise_sigma", s.noise_sigma);
    s.camera_px_per_mm = number_field(*it, "camera_px_per_mm", s.camera_px_per_mm);
    s.camera_half_angle_deg = number_field(*it, "camera_half_angle_deg", s.camera_half_angle_deg);
  }
  c.validate();
  return c;
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::read_failure, "config file not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fringescan

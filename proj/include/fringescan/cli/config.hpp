#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fringescan/hdr/saturation.hpp"
#include "fringescan/sim/render.hpp"
#include "fringescan/stereo/match.hpp"
#include "fringescan/stereo/triangulate.hpp"

namespace fringescan {

struct LevelSpec {
  double period = 0;  // projector px
  int steps = 0;
};

// Synthetic-capture settings. The scene itself (a built-in name or a scene
// file path) defines the physical extent; the projector field and camera
// frame are sized here.
struct SimSettings {
  std::string scene = "plane";
  int width = 256, height = 256;
  double projector_px = 912;
  double i0 = 100;
  double alpha0 = 0.5;
  double blur_px = 4.0;
  double noise_sigma = 1.0;
  double camera_px_per_mm = 68;
  double camera_half_angle_deg = 10;
};

// One JSON document drives every subcommand; defaults() is the complete
// reference configuration and print-config dumps the active values.
struct PipelineConfig {
  std::vector<LevelSpec> levels;
  int sat_thr = 255;
  double max_phase_gap = kTwoPi;
  double residual_bound = 0.5;
  std::uint64_t seed = 1;
  std::string input = "out";
  std::string output = "out";
  std::string cameras;  // empty = <input>/cameras.txt
  SimSettings sim;

  static PipelineConfig defaults();

  void validate() const;
  std::string to_json() const;  // deterministic, insertion-ordered

  HdrConfig hdr_config() const { return HdrConfig{sat_thr}; }
  MatchParams match_params() const { return MatchParams{max_phase_gap}; }
  TriangulationParams triangulation_params() const { return TriangulationParams{residual_bound}; }
  ProjectorModel projector_model() const;
  SensorModel sensor_model() const { return SensorModel{sim.noise_sigma}; }
  CameraRig camera_rig() const;
  SimParams sim_params() const { return SimParams{projector_model(), sensor_model(), camera_rig()}; }
  Scene load_scene() const;  // built-in name or scene file path
  std::string camera_path() const;
};

// Strict parse: unknown keys and wrong value types are configuration
// errors, not warnings. Absent keys keep their defaults.
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config_file(const std::string& path);

}  // namespace fringescan

#include "fringescan/cli/run.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fringescan/cli/analysis.hpp"
#include "fringescan/cli/config.hpp"
#include "fringescan/hdr/retrieval.hpp"
#include "fringescan/io/camera_io.hpp"
#include "fringescan/io/match_io.hpp"
#include "fringescan/io/pfm.hpp"
#include "fringescan/io/pgm.hpp"
#include "fringescan/io/ply.hpp"
#include "fringescan/io/stack_io.hpp"
#include "fringescan/phase/schedule.hpp"
#include "fringescan/sim/render.hpp"

namespace fringescan::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) fail(errc::internal, "number formatting failed");
  return std::string(buf, end);
}

const char* view_name(int view) { return view == 0 ? "left" : "right"; }

std::string stack_image_name(int view, int level, int sample) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "fringe_%s_m%d_%02d.pgm", view_name(view), level + 1, sample);
  return buf;
}

std::string level_file(const char* prefix, int view, int level, const char* ext) {
  return std::string(prefix) + "_" + view_name(view) + "_m" + std::to_string(level + 1) + ext;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(errc::write_failure, "cannot create output directory: " + dir);
}

// kv files are sorted by key so their bytes never depend on insertion order.
void write_kv(const std::map<std::string, std::string>& kv, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, "cannot write " + path);
  for (const auto& [key, value] : kv) out << key << "=" << value << "\n";
  if (!out) fail(errc::write_failure, "cannot write " + path);
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(errc::write_failure, "cannot write " + path);
}

// --- simulate -----------------------------------------------------------

void cmd_simulate(const PipelineConfig& cfg) {
  Scene scene = cfg.load_scene();
  SimParams params = cfg.sim_params();
  RenderResult render = render_stacks(scene, params, cfg.seed);
  auto [cam_left, cam_right] = make_rectified_rig(scene, params.rig);

  ensure_dir(cfg.output);
  const fs::path out(cfg.output);
  int files = 0;
  for (int view = 0; view < 2; ++view) {
    const MultiFreqSet& set = view == 0 ? render.left : render.right;
    for (int m = 0; m < set.level_count(); ++m)
      for (int n = 0; n < set.levels[static_cast<std::size_t>(m)].stack.sample_count(); ++n) {
        write_pgm(set.levels[static_cast<std::size_t>(m)].stack.samples[static_cast<std::size_t>(n)],
                  (out / stack_image_name(view, m, n)).string());
        files++;
      }
  }
  write_cameras(cam_left, cam_right, (out / "cameras.txt").string());
  write_phase_map(render.truth.phase_left, (out / "truth_phase_left.pfm").string());
  write_phase_map(render.truth.phase_right, (out / "truth_phase_right.pfm").string());
  write_point_cloud(render.truth.cloud, (out / "truth_cloud.ply").string());
  write_text(cfg.to_json(), (out / "run_config.json").string());
  std::cout << "simulate: wrote " << files + 5 << " files to " << cfg.output << "\n";
}

// --- phase ----------------------------------------------------------------

void stage_phase(const PipelineConfig& cfg, const std::string& in_dir, const std::string& out_dir,
                 bool naive) {
  ensure_dir(out_dir);
  const fs::path in(in_dir), out(out_dir);
  const HdrConfig hdr = cfg.hdr_config();
  for (int view = 0; view < 2; ++view)
    for (std::size_t m = 0; m < cfg.levels.size(); ++m) {
      const LevelSpec& level = cfg.levels[m];
      std::vector<std::string> paths;
      paths.reserve(static_cast<std::size_t>(level.steps));
      for (int n = 0; n < level.steps; ++n)
        paths.push_back((in / stack_image_name(view, static_cast<int>(m), n)).string());
      FringeStack stack =
          read_image_stack(paths, ShiftSchedule::uniform(level.steps).deltas, level.period);
      if (naive) {
        PhaseMap phase = naive_phase_shifting(stack);
        write_phase_map(phase,
                        (out / level_file("naive_wrapped", view, static_cast<int>(m), ".pfm")).string());
      } else {
        SaturationMap satmap = sat_map(stack, hdr);
        PhaseMap phase = gen_phase_shifting(stack, satmap, hdr);
        ImageU8 counts(satmap.width(), satmap.height());
        for (int y = 0; y < satmap.height(); ++y)
          for (int x = 0; x < satmap.width(); ++x) counts.at(x, y) = satmap.at(x, y);
        write_pgm(counts, (out / level_file("satcount", view, static_cast<int>(m), ".pgm")).string());
        write_phase_map(phase,
                        (out / level_file("wrapped", view, static_cast<int>(m), ".pfm")).string());
      }
    }
}

// --- fuse -------------------------------------------------------------------

std::string fused_map_name(int view, bool naive) {
  return std::string(naive ? "naive_" : "fused_") + view_name(view) + ".pfm";
}

void stage_fuse(const PipelineConfig& cfg, const std::string& in_dir, const std::string& out_dir,
                bool naive) {
  ensure_dir(out_dir);
  const fs::path in(in_dir), out(out_dir);
  std::vector<double> periods;
  std::vector<int> steps;
  for (const LevelSpec& level : cfg.levels) {
    periods.push_back(level.period);
    steps.push_back(level.steps);
  }

  for (int view = 0; view < 2; ++view) {
    std::vector<PhaseMap> wrapped;
    for (std::size_t m = 0; m < cfg.levels.size(); ++m)
      wrapped.push_back(read_phase_map(
          (in / level_file(naive ? "naive_wrapped" : "wrapped", view, static_cast<int>(m), ".pfm"))
              .string(),
          PhaseKind::wrapped, periods[m]));

    if (naive) {
      // Reference processing has no replacement stage: the result is the
      // densest level's unwrapped phase, oversaturated pixels included.
      std::vector<PhaseMap> unwrapped = temporal_unwrap(wrapped, periods);
      PhaseMap dense = std::move(unwrapped.back());
      dense.kind = PhaseKind::equivalent;
      write_phase_map(dense, (out / fused_map_name(view, true)).string());
      continue;
    }

    std::vector<SaturationMap> satcounts;
    for (std::size_t m = 0; m < cfg.levels.size(); ++m) {
      ImageU8 counts =
          read_pgm((in / level_file("satcount", view, static_cast<int>(m), ".pgm")).string());
      satcounts.push_back(std::move(counts));
    }
    auto [fused, report] = fuse_phase_maps(satcounts, steps, periods, wrapped, cfg.hdr_config());
    write_phase_map(fused, (out / fused_map_name(view, false)).string());

    // Source-level map as a viewable image: 0 = unfilled, m = source level.
    ImageU8 source(report.source_level.width(), report.source_level.height(), 0);
    for (int y = 0; y < source.height(); ++y)
      for (int x = 0; x < source.width(); ++x) {
        std::int8_t s = report.source_level.at(x, y);
        source.at(x, y) = s < 0 ? 0 : static_cast<std::uint8_t>(s);
      }
    write_pgm(source, (out / (std::string("source_") + view_name(view) + ".pgm")).string());
    write_text(report.to_text(), (out / (std::string("fusion_") + view_name(view) + ".txt")).string());
    write_text(report.to_kv(), (out / (std::string("fusion_") + view_name(view) + ".kv")).string());
  }
}

// --- match / reconstruct ------------------------------------------------

void stage_match(const PipelineConfig& cfg, const std::string& in_dir, const std::string& out_dir,
                 bool naive) {
  ensure_dir(out_dir);
  const fs::path in(in_dir), out(out_dir);
  const double dense_period = cfg.levels.back().period;
  RectifiedPair pair;
  pair.left = read_phase_map((in / fused_map_name(0, naive)).string(), PhaseKind::equivalent,
                             dense_period);
  pair.right = read_phase_map((in / fused_map_name(1, naive)).string(), PhaseKind::equivalent,
                              dense_period);
  MatchList matches = match_pair(pair, cfg.match_params());
  write_matches(matches, (out / (naive ? "naive_matches.txt" : "matches.txt")).string());
}

void stage_reconstruct(const PipelineConfig& cfg, const std::string& in_dir,
                       const std::string& camera_file, const std::string& out_dir, bool naive) {
  ensure_dir(out_dir);
  const fs::path in(in_dir), out(out_dir);
  const fs::path truth_dir = fs::path(camera_file).parent_path();
  const double dense_period = cfg.levels.back().period;

  auto [cam_left, cam_right] = read_cameras(camera_file);
  MatchList matches = read_matches((in / (naive ? "naive_matches.txt" : "matches.txt")).string());
  TriangulationReport report;
  PointCloud cloud = triangulate(matches, cam_left, cam_right, cfg.triangulation_params(), &report);
  write_point_cloud(cloud, (out / (naive ? "naive_cloud.ply" : "cloud.ply")).string());

  std::map<std::string, std::string> kv;
  kv["match_count"] = std::to_string(matches.size());
  kv["points_accepted"] = std::to_string(report.accepted);
  kv["points_rejected_residual"] = std::to_string(report.rejected_residual);
  kv["points_rejected_rank"] = std::to_string(report.rejected_rank);

  PhaseMap fused[2];
  for (int view = 0; view < 2; ++view) {
    fused[view] = read_phase_map((in / fused_map_name(view, naive)).string(),
                                 PhaseKind::equivalent, dense_period);
    kv[std::string("valid_fraction_") + view_name(view)] = fmt(fused[view].valid_fraction());

    if (!naive) {
      // Valid fraction the densest level achieves on its own, before any
      // lower-frequency replacement.
      ImageU8 counts = read_pgm(
          (in / level_file("satcount", view, static_cast<int>(cfg.levels.size()) - 1, ".pgm"))
              .string());
      IndexMap oversat = oversaturation_map(counts, cfg.levels.back().steps);
      std::size_t ok = 0;
      for (int y = 0; y < oversat.height(); ++y)
        for (int x = 0; x < oversat.width(); ++x) ok += oversat.at(x, y) == 0;
      kv[std::string("dense_only_valid_fraction_") + view_name(view)] =
          fmt(static_cast<double>(ok) / static_cast<double>(oversat.pixel_count()));
    }

    const fs::path truth_pfm = truth_dir / (std::string("truth_phase_") + view_name(view) + ".pfm");
    if (fs::exists(truth_pfm)) {
      PhaseMap truth = read_phase_map(truth_pfm.string(), PhaseKind::equivalent, dense_period);
      kv[std::string("rms_phase_vs_truth_") + view_name(view)] =
          fmt(error_stats(fused[view], truth).rms);
    }
  }

  const fs::path truth_ply = truth_dir / "truth_cloud.ply";
  if (fs::exists(truth_ply)) {
    PointCloud truth = read_point_cloud(truth_ply.string());
    const int w = fused[0].width();
    double sum_sq = 0;
    std::size_t n = 0;
    for (const CloudPoint& p : cloud.points) {
      std::size_t idx = static_cast<std::size_t>(p.v) * static_cast<std::size_t>(w) +
                        static_cast<std::size_t>(p.u);
      if (idx >= truth.points.size()) continue;
      double dz = p.z - truth.points[idx].z;
      sum_sq += dz * dz;
      n++;
    }
    if (n) kv["rms_z_vs_truth"] = fmt(std::sqrt(sum_sq / static_cast<double>(n)));
  }

  write_kv(kv, (out / (naive ? "naive_metrics.kv" : "metrics.kv")).string());
}

void cmd_pipeline(const PipelineConfig& cfg, bool naive) {
  PipelineConfig staged = cfg;
  staged.cameras = cfg.camera_path();
  stage_phase(staged, cfg.input, cfg.output, naive);
  stage_fuse(staged, cfg.output, cfg.output, naive);
  stage_match(staged, cfg.output, cfg.output, naive);
  stage_reconstruct(staged, cfg.output, staged.cameras, cfg.output, naive);
  write_text(cfg.to_json(), (fs::path(cfg.output) / "run_config.json").string());
  std::cout << "pipeline: wrote results to " << cfg.output << "\n";
}

// --- compare ---------------------------------------------------------------

void cmd_compare(const std::string& fused_path, const std::string& naive_path,
                 const std::string& truth_path) {
  PhaseMap fused = read_phase_map(fused_path, PhaseKind::equivalent, 1.0);
  PhaseMap naive = read_phase_map(naive_path, PhaseKind::equivalent, 1.0);
  PhaseMap truth = read_phase_map(truth_path, PhaseKind::equivalent, 1.0);

  ErrorStats fused_stats = error_stats(fused, truth);
  ErrorStats naive_stats = error_stats(naive, truth);
  ErrorSpectrum fused_spec = error_spectrum(fused, truth);
  ErrorSpectrum naive_spec = error_spectrum(naive, truth);

  // The fringe band starts above the low-frequency envelope of the error
  // footprint; saturation ripple lives at fringe-rate lines inside it.
  const double band_start = 0.05;
  SpectralPeak naive_peak = find_peak(naive_spec, band_start);
  double fused_at_peak = amplitude_near(fused_spec, naive_peak.frequency);

  std::map<std::string, std::string> kv;
  kv["valid_fraction_fused"] = fmt(fused.valid_fraction());
  kv["valid_fraction_naive"] = fmt(naive.valid_fraction());
  kv["rms_fused"] = fmt(fused_stats.rms);
  kv["rms_naive"] = fmt(naive_stats.rms);
  for (std::size_t b = 0; b < fused_stats.histogram.size(); ++b) {
    kv["hist_fused_bin" + std::to_string(b)] = std::to_string(fused_stats.histogram[b]);
    kv["hist_naive_bin" + std::to_string(b)] = std::to_string(naive_stats.histogram[b]);
  }
  kv["ripple_frequency"] = fmt(naive_peak.frequency);
  kv["ripple_amplitude_naive"] = fmt(naive_peak.amplitude);
  kv["ripple_amplitude_fused"] = fmt(fused_at_peak);
  kv["ripple_ratio"] = fmt(fused_at_peak > 0 ? naive_peak.amplitude / fused_at_peak
                                             : std::numeric_limits<double>::infinity());
  for (const auto& [key, value] : kv) std::cout << key << "=" << value << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fringe-projection HDR 3D scanning toolkit"};
  app.require_subcommand(1);

  std::string config_path, output, input, cameras, scene;
  std::string fused_path, naive_path, truth_path;
  std::uint64_t seed = 0;
  bool naive = false;

  auto add_common = [&](CLI::App* cmd, bool with_naive) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--seed", seed, "override the configured RNG seed");
    cmd->add_option("--output", output, "output directory");
    cmd->add_option("--input", input, "input directory");
    if (with_naive)
      cmd->add_flag("--naive", naive, "process every sample, ignoring saturation");
  };

  CLI::App* c_simulate = app.add_subcommand("simulate", "render synthetic fringe stacks");
  add_common(c_simulate, false);
  c_simulate->add_option("--scene", scene, "built-in scene name or scene file");

  CLI::App* c_phase = app.add_subcommand("phase", "per-level wrapped phase + saturation counts");
  add_common(c_phase, true);
  CLI::App* c_fuse = app.add_subcommand("fuse", "temporal unwrap + multi-frequency fusion");
  add_common(c_fuse, true);
  CLI::App* c_match = app.add_subcommand("match", "row-wise stereo phase matching");
  add_common(c_match, true);
  CLI::App* c_reconstruct = app.add_subcommand("reconstruct", "triangulate matches to a cloud");
  add_common(c_reconstruct, true);
  c_reconstruct->add_option("--cameras", cameras, "camera matrix file");
  CLI::App* c_pipeline = app.add_subcommand("pipeline", "phase, fuse, match, reconstruct");
  add_common(c_pipeline, true);
  c_pipeline->add_option("--cameras", cameras, "camera matrix file");
  CLI::App* c_print = app.add_subcommand("print-config", "dump the active configuration");
  add_common(c_print, false);
  c_print->add_option("--scene", scene, "built-in scene name or scene file");

  CLI::App* c_compare = app.add_subcommand("compare", "error reports for fused vs naive maps");
  c_compare->add_option("--fused", fused_path, "fused phase map (PFM)")->required();
  c_compare->add_option("--naive", naive_path, "naive phase map (PFM)")->required();
  c_compare->add_option("--truth", truth_path, "ground-truth phase map (PFM)")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(errc::bad_config);
  }

  try {
    if (app.got_subcommand(c_compare)) {
      cmd_compare(fused_path, naive_path, truth_path);
      return 0;
    }

    PipelineConfig cfg =
        config_path.empty() ? PipelineConfig::defaults() : load_config_file(config_path);
    if (c_simulate->count("--seed") || c_phase->count("--seed") || c_fuse->count("--seed") ||
        c_match->count("--seed") || c_reconstruct->count("--seed") ||
        c_pipeline->count("--seed") || c_print->count("--seed"))
      cfg.seed = seed;
    if (!output.empty()) cfg.output = output;
    if (!input.empty()) cfg.input = input;
    if (!cameras.empty()) cfg.cameras = cameras;
    if (!scene.empty()) cfg.sim.scene = scene;
    cfg.validate();

    if (app.got_subcommand(c_simulate)) cmd_simulate(cfg);
    else if (app.got_subcommand(c_phase)) stage_phase(cfg, cfg.input, cfg.output, naive);
    else if (app.got_subcommand(c_fuse)) stage_fuse(cfg, cfg.input, cfg.output, naive);
    else if (app.got_subcommand(c_match)) stage_match(cfg, cfg.input, cfg.output, naive);
    else if (app.got_subcommand(c_reconstruct))
      stage_reconstruct(cfg, cfg.input, cfg.camera_path(), cfg.output, naive);
    else if (app.got_subcommand(c_pipeline)) cmd_pipeline(cfg, naive);
    else if (app.got_subcommand(c_print)) std::cout << cfg.to_json();
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(errc::internal);
  }
  return 0;
}

}  // namespace fringescan::cli

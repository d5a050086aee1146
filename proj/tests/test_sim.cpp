#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fringescan/core/error.hpp"
#include "fringescan/core/phase_map.hpp"
#include "fringescan/hdr/retrieval.hpp"
#include "fringescan/sim/monte_carlo.hpp"
#include "fringescan/sim/render.hpp"
#include "fringescan/sim/scene.hpp"

using namespace fringescan;

namespace {

// Small frame that still views strictly inside the built-in 4x4 mm scenes.
SimParams small_params() {
  SimParams params;
  params.rig.width = 64;
  params.rig.height = 64;
  params.rig.scale_px_per_mm = 18.0;
  return params;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("built-in surfaces expose their defining fields") {
  Scene plane = Scene::built_in("plane");
  CHECK(plane.extent_x == 4.0);
  CHECK(plane.extent_y == 4.0);
  CHECK(plane.height_at(1.0, 2.0) == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK(plane.height_at(3.0, 0.5) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(plane.reflectance_at(1.7, 2.9) == doctest::Approx(1.0));
  CHECK(plane.height_min() == doctest::Approx(-0.2).epsilon(1e-6));
  CHECK(plane.height_max() == doctest::Approx(0.2).epsilon(1e-6));

  Scene bump = Scene::built_in("gaussian-bump");
  CHECK(bump.height_at(2.0, 2.0) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(bump.height_at(0.05, 0.05) == doctest::Approx(0.0).epsilon(1e-2));
  CHECK(bump.reflectance_at(2.0, 2.0) == doctest::Approx(1.0));

  Scene disk = Scene::built_in("shiny-disk-on-ramp");
  CHECK(disk.reflectance_at(2.0, 2.0) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(disk.reflectance_at(0.2, 0.2) == doctest::Approx(1.0).epsilon(1e-6));
  // The ramp underneath matches the plane.
  CHECK(disk.height_at(1.0, 2.0) == doctest::Approx(-0.1).epsilon(1e-9));

  CHECK(Scene::is_built_in("plane"));
  CHECK_FALSE(Scene::is_built_in("unknown"));
  try {
    Scene::built_in("unknown");
    FAIL("expected throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_config);
  }
}

TEST_CASE("scene validation rejects unusable surfaces") {
  Scene scene = Scene::built_in("plane");
  CHECK_NOTHROW(scene.validate());

  SUBCASE("grid too coarse") {
    Scene coarse;
    coarse.nx = coarse.ny = 8;
    coarse.extent_x = coarse.extent_y = 4.0;
    coarse.height.assign(64, 0.0);
    coarse.reflectance.assign(64, 1.0);
    CHECK_THROWS_AS(coarse.validate(), error);
  }
  SUBCASE("negative reflectance") {
    scene.reflectance[100] = -0.5;
    CHECK_THROWS_AS(scene.validate(), error);
  }
  SUBCASE("non-finite height") {
    scene.height[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(scene.validate(), error);
  }
}

TEST_CASE("defocus scales fringe contrast as a Gaussian in frequency") {
  ProjectorModel proj;
  for (double per : {912.0, 144.0, 24.0, 12.0}) {
    double expected = proj.alpha0 * std::exp(-std::pow(kPi * proj.blur_px / per, 2));
    CHECK(proj.contrast(per) == doctest::Approx(expected).epsilon(1e-12));
  }
  // Denser fringes always lose more contrast.
  CHECK(proj.contrast(912.0) > proj.contrast(144.0));
  CHECK(proj.contrast(144.0) > proj.contrast(12.0));
  // No defocus means no loss.
  proj.blur_px = 0.0;
  CHECK(proj.contrast(12.0) == proj.alpha0);
}

TEST_CASE("projector validation enforces the level ordering") {
  ProjectorModel proj;
  CHECK_NOTHROW(proj.validate());
  SUBCASE("periods must strictly decrease") {
    proj.periods = {912, 144, 144, 12};
    CHECK_THROWS_AS(proj.validate(), error);
  }
  SUBCASE("per-level step counts pair with periods") {
    proj.steps = {12, 12};
    CHECK_THROWS_AS(proj.validate(), error);
  }
  SUBCASE("fewer than three steps cannot be solved") {
    proj.steps = {12, 12, 12, 2};
    CHECK_THROWS_AS(proj.validate(), error);
  }
  SUBCASE("modulation must be usable") {
    proj.alpha0 = 0.0;
    CHECK_THROWS_AS(proj.validate(), error);
    proj.alpha0 = 1.5;
    CHECK_THROWS_AS(proj.validate(), error);
  }
}

TEST_CASE("rendering is bit-identical for a fixed seed") {
  SimParams params = small_params();
  RenderResult a = render_stacks(Scene::built_in("plane"), params, 42);
  RenderResult b = render_stacks(Scene::built_in("plane"), params, 42);
  REQUIRE(a.left.level_count() == 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < a.left.levels[m].stack.sample_count(); ++n) {
      CHECK(a.left.levels[m].stack.samples[n] == b.left.levels[m].stack.samples[n]);
      CHECK(a.right.levels[m].stack.samples[n] == b.right.levels[m].stack.samples[n]);
    }

  // A different seed must actually change the noise.
  RenderResult c = render_stacks(Scene::built_in("plane"), params, 43);
  CHECK_FALSE(a.left.levels[0].stack.samples[0] == c.left.levels[0].stack.samples[0]);
}

TEST_CASE("noiseless real-valued rendering closes the loop to ground truth") {
  SimParams params = small_params();
  params.sensor.sigma = 0.0;
  Scene scene = Scene::built_in("plane");
  RenderResult quantized = render_stacks(scene, params, 1);

  for (int view = 0; view < 2; ++view) {
    std::vector<RealFringeStack> stacks = render_stacks_real(scene, params, 1, view);
    REQUIRE(stacks.size() == 4);

    HdrConfig config;
    std::vector<PhaseMap> wrapped;
    std::vector<SaturationMap> counts;
    std::vector<int> steps;
    for (const auto& stack : stacks) {
      SaturationMap sat = sat_map(stack, config);
      wrapped.push_back(gen_phase_shifting(stack, sat, config));
      counts.push_back(std::move(sat));
      steps.push_back(stack.sample_count());
    }
    auto [fused, report] = fuse_phase_maps(counts, steps, params.projector.periods, wrapped, config);

    const PhaseMap& truth = view == 0 ? quantized.truth.phase_left : quantized.truth.phase_right;
    REQUIRE(fused.valid_count() == truth.valid_count());
    double max_err = 0.0;
    for (int y = 0; y < fused.height(); ++y)
      for (int x = 0; x < fused.width(); ++x) {
        REQUIRE(fused.is_valid(x, y));
        max_err = std::max(max_err, std::abs(fused.values.at(x, y) - truth.values.at(x, y)));
      }
    // The only error left is floating-point residue of the render/solve loop.
    CHECK(max_err < 1e-6);
  }
}

TEST_CASE("noiseless saturation masks do not depend on the seed") {
  SimParams params = small_params();
  params.sensor.sigma = 0.0;
  Scene scene = Scene::built_in("shiny-disk-on-ramp");
  RenderResult a = render_stacks(scene, params, 5);
  RenderResult b = render_stacks(scene, params, 77);
  for (int m = 0; m < 4; ++m) CHECK(a.left.levels[m].satmap == b.left.levels[m].satmap);
}

TEST_CASE("the shiny disk saturates the dense level but not the loosest") {
  SimParams params = small_params();
  Scene scene = Scene::built_in("shiny-disk-on-ramp");
  RenderResult result = render_stacks(scene, params, 7);

  long long dense_oversat = 0, loose_oversat = 0;
  const auto& loose = result.left.levels.front();
  const auto& dense = result.left.levels.back();
  IndexMap loose_flags = oversaturation_map(loose.satmap, loose.stack.sample_count());
  IndexMap dense_flags = oversaturation_map(dense.satmap, dense.stack.sample_count());
  for (int y = 0; y < params.rig.height; ++y)
    for (int x = 0; x < params.rig.width; ++x) {
      loose_oversat += loose_flags.at(x, y);
      dense_oversat += dense_flags.at(x, y);
    }
  CHECK(loose_oversat == 0);
  CHECK(dense_oversat > 100);

  // Eliminating more samples can only shrink the usable set.
  HdrConfig tight{250};
  SaturationMap dense_tight = sat_map(dense.stack, tight);
  for (int y = 0; y < params.rig.height; ++y)
    for (int x = 0; x < params.rig.width; ++x)
      CHECK(dense_tight.at(x, y) >= dense.satmap.at(x, y));
}

TEST_CASE("ground truth projects back onto the pixel grid") {
  SimParams params = small_params();
  Scene scene = Scene::built_in("gaussian-bump");
  RenderResult result = render_stacks(scene, params, 3);
  auto [left, right] = make_rectified_rig(scene, params.rig);

  REQUIRE(result.truth.cloud.size() ==
          static_cast<std::size_t>(params.rig.width) * params.rig.height);
  for (int i = 0; i < 200; ++i) {
    const CloudPoint& p = result.truth.cloud.points[static_cast<std::size_t>(i) * 17 % result.truth.cloud.size()];
    auto uv = left.project(p.x, p.y, p.z);
    CHECK(std::abs(uv[0] - p.u) < 1e-9);
    CHECK(std::abs(uv[1] - p.v) < 1e-9);
  }
  CHECK(result.truth.phase_left.kind == PhaseKind::equivalent);
  CHECK(result.truth.phase_left.period == 12.0);
}

TEST_CASE("a frame wider than the scene is a geometry error") {
  SimParams params = small_params();
  params.rig.scale_px_per_mm = 14.0;  // 64 px / 14 px/mm = 4.6 mm > 4 mm
  try {
    render_stacks(Scene::built_in("plane"), params, 1);
    FAIL("expected throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::geometry_error);
    CHECK(std::string(e.what()).find("scene extent") != std::string::npos);
  }
}

TEST_CASE("estimator statistics vanish without noise") {
  ProjectorModel proj;
  proj.periods = {912.0};
  proj.steps = {8};
  SensorModel sensor;
  sensor.sigma = 0.0;
  auto levels = monte_carlo_variance(proj, sensor, 10000, 1);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0].variance < 1e-18);
}

TEST_CASE("estimator variance matches the additive-noise prediction") {
  ProjectorModel proj;
  proj.periods = {912.0};
  proj.steps = {4};
  proj.field_px = 912.0;
  proj.i0 = 100.0;
  proj.alpha0 = 1.0;
  proj.blur_px = 0.0;
  SensorModel sensor;
  sensor.sigma = 2.0;

  auto levels = monte_carlo_variance(proj, sensor, 200000, 9);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0].modulation == doctest::Approx(100.0));
  CHECK(levels[0].steps == 4);
  // One fringe across the field: own scale and field scale coincide.
  double predicted = 2.0 * 2.0 * 2.0 / (4.0 * 100.0 * 100.0);
  CHECK(levels[0].variance == doctest::Approx(predicted).epsilon(0.10));
  CHECK(levels[0].equivalent_variance == levels[0].variance);
}

TEST_CASE("equivalent variances scale with the period ratio") {
  ProjectorModel proj;
  proj.periods = {912.0, 114.0};
  proj.steps = {4, 4};
  proj.blur_px = 0.0;
  proj.alpha0 = 0.8;
  SensorModel sensor;
  sensor.sigma = 1.5;

  auto levels = monte_carlo_variance(proj, sensor, 100000, 11);
  REQUIRE(levels.size() == 2);
  // Same modulation and steps: own-scale variances agree, so the equivalent
  // variances differ by (per_1/per_2)^2 = 64.
  CHECK(levels[0].variance == doctest::Approx(levels[1].variance).epsilon(0.15));
  CHECK(levels[0].equivalent_variance ==
        doctest::Approx(64.0 * levels[1].equivalent_variance).epsilon(0.15));
  CHECK(levels[1].equivalent_variance == levels[1].variance);
}

TEST_CASE("estimator runs need enough trials to be meaningful") {
  ProjectorModel proj;
  SensorModel sensor;
  try {
    monte_carlo_variance(proj, sensor, 9999, 1);
    FAIL("expected throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_config);
  }
}

}  // TEST_SUITE

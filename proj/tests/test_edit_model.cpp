#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "align360/edit_model.hpp"
#include "align360/errors.hpp"
#include "align360/trace.hpp"

using namespace align360;

namespace {

VideoMeta video(const char* name, double theta_r) {
    VideoMeta v;
    v.name = name;
    v.theta_r = theta_r;
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "align360_edit_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("compute_offset follows omega*t_edit - theta_r") {
    CHECK(compute_offset(86.0, 60.0, 2.0) == 34.0);    // Dance at 60 deg/s
    CHECK(compute_offset(120.0, 60.0, 2.0) == 0.0);    // Cart at 60 deg/s
    CHECK(compute_offset(180.0, 10.0, 2.0) == -160.0); // Park at 10 deg/s
}

TEST_CASE("fade-rotation timeline hits its endpoints") {
    const EditTimeline tl = build_fade_rotation(video("Dance", 86.0), 60.0);
    CHECK(tl.edit_start() == 14.0);
    CHECK(tl.edit_end() == 16.0);
    CHECK(tl.yaw_offset_deg(14.0) == 0.0);
    CHECK(tl.yaw_offset_deg(13.0) == 0.0);
    CHECK(tl.yaw_offset_deg(16.0) == doctest::Approx(86.0).epsilon(1e-12));
    CHECK(tl.yaw_offset_deg(25.0) == doctest::Approx(86.0).epsilon(1e-12));
    CHECK(tl.theta_off_deg() == 34.0);
    CHECK(tl.fade_alpha(15.0) == 0.0);  // fully black at the midpoint
    CHECK(tl.fade_alpha(14.0) == 1.0);
    CHECK(tl.fade_alpha(16.0) == 1.0);
}

TEST_CASE("zero offset keeps the rotation continuous through the blackout") {
    const EditTimeline tl = build_fade_rotation(video("Cart", 120.0), 60.0);
    CHECK(tl.theta_off_deg() == 0.0);
    const double before = tl.yaw_offset_deg(15.0 - 1e-9);
    const double after = tl.yaw_offset_deg(15.0 + 1e-9);
    CHECK(std::abs(after - before) < 1e-6);
}

TEST_CASE("negative displacement rotates the other way") {
    const EditTimeline tl = build_fade_rotation(video("Amizade", -120.0), 60.0);
    CHECK(tl.theta_off_deg() == 0.0);  // 60*2 == |theta_r|
    CHECK(tl.yaw_offset_deg(15.0) == doctest::Approx(-60.0));
    CHECK(tl.yaw_offset_deg(16.0) == doctest::Approx(-120.0));

    const EditTimeline slow = build_fade_rotation(video("Amizade", -120.0), 10.0);
    CHECK(slow.theta_off_deg() == doctest::Approx(-(10.0 * 2.0 - 120.0)));  // +100 jump magnitude
    CHECK(slow.yaw_offset_deg(16.0) == doctest::Approx(-120.0).epsilon(1e-12));
}

TEST_CASE("conservation: endpoint displacement equals theta_r for all videos and speeds") {
    const double thetas[] = {180.0, 180.0, 170.0, 86.0, -120.0, 120.0};
    const double omegas[] = {10.0, 20.0, 40.0, 60.0};
    for (double theta_r : thetas) {
        for (double omega : omegas) {
            const EditTimeline tl = build_fade_rotation(video("v", theta_r), omega);
            // Eq-level identity on magnitudes is exact
            CHECK(omega * 2.0 - compute_offset(std::abs(theta_r), omega, 2.0) ==
                  std::abs(theta_r));
            CHECK(tl.yaw_offset_deg(16.0) - tl.yaw_offset_deg(14.0) ==
                  doctest::Approx(theta_r).epsilon(1e-12));
        }
    }
}

TEST_CASE("the yaw jump happens only where the frame is black") {
    for (double omega : {10.0, 20.0, 40.0, 60.0}) {
        const EditTimeline tl = build_fade_rotation(video("Park", 180.0), omega);
        // scan for discontinuities: |delta yaw| >> omega * dt means a jump
        const double dt = 1e-4;
        for (double t = 13.5; t < 16.5; t += dt) {
            const double step = std::abs(tl.yaw_offset_deg(t + dt) - tl.yaw_offset_deg(t));
            if (step > omega * dt * 10 + 1e-9) {
                CHECK(tl.fade_alpha(t) < 0.01);
                CHECK(tl.fade_alpha(t + dt) < 0.01);
            }
        }
    }
}

TEST_CASE("fade alpha is continuous, piecewise linear, with minimum exactly 0") {
    const EditTimeline tl = build_fade_rotation(video("Jet", 180.0), 40.0);
    double min_alpha = 2.0;
    double prev = tl.fade_alpha(13.0);
    for (double t = 13.0; t <= 17.0; t += 1e-3) {
        const double a = tl.fade_alpha(t);
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        CHECK(std::abs(a - prev) < 1e-3 / 0.2 + 1e-9);  // slope bounded by 1/t_fade
        min_alpha = std::min(min_alpha, a);
        prev = a;
    }
    CHECK(min_alpha == 0.0);
    // linear halfway down the fade-out
    CHECK(tl.fade_alpha(15.0 - 0.1) == doctest::Approx(0.5));
    CHECK(tl.fade_alpha(15.0 + 0.05) == doctest::Approx(0.25));
}

TEST_CASE("snap-cut steps at t_ini with no fade") {
    const EditTimeline tl = build_snap_cut(video("Park", 180.0));
    CHECK(tl.yaw_offset_deg(14.999) == 0.0);
    CHECK(tl.yaw_offset_deg(15.0) == 180.0);
    CHECK(tl.edit_start() == 15.0);
    CHECK(tl.edit_end() == 15.0);
    for (double t = 0.0; t <= 30.0; t += 0.1) CHECK(tl.fade_alpha(t) == 1.0);

    const EditTimeline amz = build_snap_cut(video("Amizade", -120.0));
    CHECK(amz.yaw_offset_deg(15.0) == -120.0);
}

TEST_CASE("angular speed profile excludes jumps") {
    CHECK(build_fade_rotation(video("v", 86.0), 40.0).max_rotation_speed_deg_s() == 40.0);
    CHECK(build_fade_rotation(video("v", 86.0), 10.0).max_rotation_speed_deg_s() == 10.0);
    CHECK(build_snap_cut(video("v", 180.0)).max_rotation_speed_deg_s() == 0.0);
    CHECK(EditTimeline::none().max_rotation_speed_deg_s() == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(build_fade_rotation(video("v", 86.0), 0.0), ConfigError);
    CHECK_THROWS_AS(build_fade_rotation(video("v", 86.0), -10.0), ConfigError);
    CHECK_THROWS_AS(build_fade_rotation(video("v", 86.0), 40.0, 14.0, 0.3, 0.2), ConfigError);
    SnapCut sc;
    sc.theta_sc = 400.0;
    CHECK_THROWS_AS(EditTimeline::snap_cut(sc), ConfigError);
}

TEST_CASE("apply_timeline_to_trace expresses samples in the post-edit frame") {
    // viewer parked at yaw=180
    Trace fixed;
    for (int i = 0; i <= 300; ++i) {
        fixed.samples.push_back(TimedSample{-1.0, 0.0, 0.0, 0.1 * i});
    }

    SUBCASE("identity timeline leaves the trace unchanged") {
        const Trace out = apply_timeline_to_trace(fixed, EditTimeline::none());
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out.samples[i].x == fixed.samples[i].x);
            CHECK(out.samples[i].y == fixed.samples[i].y);
        }
    }

    SUBCASE("a 180-degree snap-cut brings the viewer to yaw 0") {
        const Trace out = apply_timeline_to_trace(fixed, build_snap_cut(video("Park", 180.0)));
        for (const TimedSample& s : out.samples) {
            if (s.t >= 15.0) {
                CHECK(s.x == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(std::abs(s.y) < 1e-12);
            } else {
                CHECK(s.x == doctest::Approx(-1.0).epsilon(1e-12));
            }
        }
    }

    SUBCASE("opposite timelines cancel") {
        const Trace once = apply_timeline_to_trace(fixed, build_snap_cut(video("v", 120.0)));
        const Trace back = apply_timeline_to_trace(once, build_snap_cut(video("v", -120.0)));
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back.samples[i].x == doctest::Approx(fixed.samples[i].x).epsilon(1e-9));
            CHECK(back.samples[i].y == doctest::Approx(fixed.samples[i].y).epsilon(1e-9));
        }
    }

    SUBCASE("same pre-edit position lands on the same target for either edit type") {
        const Trace via_fade =
            apply_timeline_to_trace(fixed, build_fade_rotation(video("Dance", 86.0), 60.0));
        const Trace via_snap =
            apply_timeline_to_trace(fixed, build_snap_cut(video("Dance", 86.0)));
        for (std::size_t i = 0; i < fixed.size(); ++i) {
            if (fixed.samples[i].t < 16.0) continue;  // both edits finished
            CHECK(via_fade.samples[i].x == doctest::Approx(via_snap.samples[i].x).epsilon(1e-12));
            CHECK(via_fade.samples[i].y == doctest::Approx(via_snap.samples[i].y).epsilon(1e-12));
        }
    }
}

TEST_CASE("edit config JSON round-trips with resolved parameters") {
    const EditTimeline tl = build_fade_rotation(video("Dance", 86.0), 60.0);
    const auto path = temp_file("fade.json");
    {
        std::ofstream out(path);
        out << edit_config_json(tl);
    }
    const EditTimeline back = read_edit_config(path);
    CHECK(back.is_fade_rotation());
    CHECK(back.as_fade_rotation().omega == 60.0);
    CHECK(back.as_fade_rotation().theta_r == 86.0);
    CHECK(back.theta_off_deg() == 34.0);

    // resolved output names the offset
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("theta_off") != std::string::npos);
}

TEST_CASE("edit config JSON rejects unknown or incomplete configs") {
    const auto bad_type = temp_file("bad_type.json");
    {
        std::ofstream out(bad_type);
        out << R"({"type":"teleport","t_ini":15.0})";
    }
    CHECK_THROWS_AS(read_edit_config(bad_type), ConfigError);

    const auto missing = temp_file("missing.json");
    {
        std::ofstream out(missing);
        out << R"({"type":"fade_rotation","t_ini":14.0})";
    }
    CHECK_THROWS_AS(read_edit_config(missing), ConfigError);

    const auto snap = temp_file("snap.json");
    {
        std::ofstream out(snap);
        out << R"({"type":"snap_cut","t_ini":15.0,"theta_r":-120.0})";
    }
    const EditTimeline sc = read_edit_config(snap);
    CHECK(sc.is_snap_cut());
    CHECK(sc.yaw_offset_deg(15.0) == -120.0);
}

TEST_CASE("the bundled video metadata lists the six production videos") {
    const auto videos = read_video_metadata(ALIGN360_DATA_DIR "/videos.json");
    REQUIRE(videos.size() == 6);
    CHECK(find_video(videos, "Park").theta_r == 180.0);
    CHECK(find_video(videos, "Jet").theta_r == 180.0);
    CHECK(find_video(videos, "360Partnership").theta_r == 170.0);
    CHECK(find_video(videos, "Dance").theta_r == 86.0);
    CHECK(find_video(videos, "Amizade").theta_r == -120.0);
    CHECK(find_video(videos, "Cart").theta_r == 120.0);
    CHECK(find_video(videos, "Park").initial_center_shift == -180.0);
    CHECK(find_video(videos, "Dance").initial_center_shift == -86.0);
    CHECK(to_string(find_video(videos, "Cart").camera_class) == "dynamic");
    CHECK_THROWS_AS(find_video(videos, "Nope"), ConfigError);
}

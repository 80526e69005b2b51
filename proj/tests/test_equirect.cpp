#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "align360/edit_model.hpp"
#include "align360/equirect.hpp"
#include "align360/errors.hpp"
#include "helpers.hpp"

using namespace align360;

namespace {

EquirectFrame random_frame(std::mt19937_64& rng, int width, int height) {
    EquirectFrame f(width, height);
    std::uniform_int_distribution<int> byte(0, 255);
    for (std::uint8_t& v : f.pixels) v = static_cast<std::uint8_t>(byte(rng));
    return f;
}

// column index painted into every pixel of that column, for shift bookkeeping
EquirectFrame column_index_frame(int width, int height) {
    EquirectFrame f(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            f.pixel(x, y)[0] = static_cast<std::uint8_t>(x);
        }
    }
    return f;
}

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "align360_equirect_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("frames must be 2:1") {
    CHECK_NOTHROW(EquirectFrame(16, 8));
    CHECK_THROWS_AS(EquirectFrame(16, 9), DomainError);
    CHECK_THROWS_AS(EquirectFrame(0, 0), DomainError);
}

TEST_CASE("rotate_yaw by full turns is the identity, bit-exact") {
    std::mt19937_64 rng(1);
    const EquirectFrame f = random_frame(rng, 32, 16);
    CHECK(rotate_yaw(f, 360.0) == f);
    CHECK(rotate_yaw(f, -720.0) == f);
    CHECK(rotate_yaw(f, 0.0) == f);
}

TEST_CASE("rotate_yaw then its inverse is the identity, bit-exact") {
    std::mt19937_64 rng(2);
    const EquirectFrame f = random_frame(rng, 64, 32);
    for (double theta : {45.0, 90.0, 123.75, 180.0, 301.5}) {
        CHECK(rotate_yaw(rotate_yaw(f, theta), -theta) == f);
    }
}

TEST_CASE("rotate_yaw pixel bookkeeping on a 4-column image") {
    const EquirectFrame f = column_index_frame(4, 2);
    const EquirectFrame r = rotate_yaw(f, 180.0);  // shift = 2
    for (int y = 0; y < 2; ++y) {
        CHECK(r.pixel(0, y)[0] == 2);
        CHECK(r.pixel(1, y)[0] == 3);
        CHECK(r.pixel(2, y)[0] == 0);
        CHECK(r.pixel(3, y)[0] == 1);
    }
}

TEST_CASE("rotate_yaw rounds the pixel shift half away from zero") {
    const EquirectFrame f = column_index_frame(8, 4);
    // 8 columns, 45 degrees per column
    CHECK(rotate_yaw(f, 33.75).pixel(0, 0)[0] == 1);  // 0.75 columns -> 1
    CHECK(rotate_yaw(f, 11.25).pixel(0, 0)[0] == 0);  // 0.25 columns -> 0
    // exactly half a column rounds away from zero
    CHECK(rotate_yaw(f, 22.5).pixel(0, 0)[0] == 1);
    CHECK(rotate_yaw(f, -22.5).pixel(0, 0)[0] == 7);
}

TEST_CASE("rotation composition is bit-exact on whole-column angles") {
    std::mt19937_64 rng(3);
    const EquirectFrame f = random_frame(rng, 16, 8);
    const double col = 360.0 / 16;
    for (int a = -3; a <= 3; ++a) {
        for (int b = 0; b <= 4; ++b) {
            CHECK(rotate_yaw(rotate_yaw(f, a * col), b * col) ==
                  rotate_yaw(f, (a + b) * col));
        }
    }
}

TEST_CASE("apply_fade scales channels with floor semantics") {
    std::mt19937_64 rng(4);
    const EquirectFrame f = random_frame(rng, 16, 8);
    CHECK(apply_fade(f, 1.0) == f);

    const EquirectFrame black = apply_fade(f, 0.0);
    for (std::uint8_t v : black.pixels) CHECK(v == 0);

    EquirectFrame single(2, 1);
    single.pixel(0, 0)[0] = 201;
    CHECK(apply_fade(single, 0.5).pixel(0, 0)[0] == 100);

    CHECK_THROWS_AS(apply_fade(f, 1.5), DomainError);
    CHECK_THROWS_AS(apply_fade(f, -0.1), DomainError);
}

TEST_CASE("apply_fade is monotone in alpha") {
    std::mt19937_64 rng(5);
    const EquirectFrame f = random_frame(rng, 8, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double a1 = unit(rng), a2 = unit(rng);
        if (a1 > a2) std::swap(a1, a2);
        const EquirectFrame f1 = apply_fade(f, a1);
        const EquirectFrame f2 = apply_fade(f, a2);
        for (std::size_t i = 0; i < f.pixels.size(); ++i) {
            CHECK(f1.pixels[i] <= f2.pixels[i]);
        }
    }
}

TEST_CASE("render_edit applies the timeline frame by frame") {
    std::mt19937_64 rng(6);
    FrameSequence seq;
    seq.fps = 10.0;
    for (int i = 0; i < 12; ++i) seq.frames.push_back(random_frame(rng, 16, 8));

    SUBCASE("identity timeline reproduces the input bit-exactly") {
        const FrameSequence out = render_edit(seq, EditTimeline::none(0.5));
        REQUIRE(out.frames.size() == seq.frames.size());
        for (std::size_t i = 0; i < seq.frames.size(); ++i) {
            CHECK(out.frames[i] == seq.frames[i]);
        }
    }

    SUBCASE("snap-cut changes only frames at or after t_ini") {
        SnapCut sc;
        sc.t_ini = 0.5;
        sc.theta_sc = 180.0;
        const FrameSequence out = render_edit(seq, EditTimeline::snap_cut(sc));
        for (std::size_t i = 0; i < seq.frames.size(); ++i) {
            if (seq.frame_time(i) < 0.5) {
                CHECK(out.frames[i] == seq.frames[i]);
            } else {
                CHECK(out.frames[i] == rotate_yaw(seq.frames[i], 180.0));
            }
        }
    }

    SUBCASE("fade-rotation blacks out the midpoint frame") {
        FadeRotation fr;
        fr.t_ini = 0.2;
        fr.t_edit = 0.6;   // midpoint at 0.5 s = frame 5
        fr.t_fade = 0.2;
        fr.omega = 60.0;
        fr.theta_r = 30.0;
        const FrameSequence out = render_edit(seq, EditTimeline::fade_rotation(fr));
        for (std::uint8_t v : out.frames[5].pixels) CHECK(v == 0);
        CHECK(out.frames[0] == seq.frames[0]);
    }

    SUBCASE("a sequence that ends before the edit is a coverage error") {
        SnapCut sc;
        sc.t_ini = 5.0;
        sc.theta_sc = 90.0;
        CHECK_THROWS_AS(render_edit(seq, EditTimeline::snap_cut(sc)), CoverageError);
    }
}

TEST_CASE("render_edit is deterministic across runs") {
    std::mt19937_64 rng(7);
    FrameSequence seq;
    seq.fps = 10.0;
    for (int i = 0; i < 8; ++i) seq.frames.push_back(random_frame(rng, 16, 8));
    FadeRotation fr;
    fr.t_ini = 0.1;
    fr.t_edit = 0.5;
    fr.t_fade = 0.1;
    fr.omega = 90.0;
    fr.theta_r = 45.0;
    const EditTimeline tl = EditTimeline::fade_rotation(fr);

    const FrameSequence a = render_edit(seq, tl);
    const FrameSequence b = render_edit(seq, tl);
    for (std::size_t i = 0; i < a.frames.size(); ++i) {
        CHECK(testutil::fnv1a64(a.frames[i].pixels.data(), a.frames[i].pixels.size()) ==
              testutil::fnv1a64(b.frames[i].pixels.data(), b.frames[i].pixels.size()));
    }
}

TEST_CASE("SI and TI on degenerate sequences") {
    FrameSequence constant;
    constant.fps = 10.0;
    for (int i = 0; i < 3; ++i) {
        EquirectFrame f(8, 4);
        for (std::uint8_t& v : f.pixels) v = 99;
        constant.frames.push_back(f);
    }
    const SiTi c = compute_si_ti(constant);
    CHECK(c.si == 0.0);
    CHECK(c.ti == 0.0);

    // static but spatially non-uniform: SI > 0, TI = 0
    std::mt19937_64 rng(8);
    FrameSequence still;
    still.fps = 10.0;
    const EquirectFrame f = random_frame(rng, 8, 4);
    still.frames.assign(3, f);
    const SiTi s = compute_si_ti(still);
    CHECK(s.si > 0.0);
    CHECK(s.ti == 0.0);

    // alternating full-black and full-white frames: the difference frame is
    // constant, so both stddevs vanish
    FrameSequence blink;
    blink.fps = 10.0;
    for (int i = 0; i < 4; ++i) {
        EquirectFrame g(8, 4);
        for (std::uint8_t& v : g.pixels) v = (i % 2 == 0) ? 0 : 255;
        blink.frames.push_back(g);
    }
    const SiTi b = compute_si_ti(blink);
    CHECK(b.si == 0.0);
    CHECK(b.ti == 0.0);

    FrameSequence single;
    single.fps = 10.0;
    single.frames.push_back(f);
    CHECK_THROWS_AS(compute_si_ti(single), NoDataError);
}

TEST_CASE("SI and TI are invariant under yaw rotation") {
    std::mt19937_64 rng(9);
    FrameSequence seq;
    seq.fps = 10.0;
    for (int i = 0; i < 4; ++i) seq.frames.push_back(random_frame(rng, 16, 8));

    FrameSequence rotated;
    rotated.fps = seq.fps;
    for (const EquirectFrame& f : seq.frames) rotated.frames.push_back(rotate_yaw(f, 90.0));

    const SiTi a = compute_si_ti(seq);
    const SiTi b = compute_si_ti(rotated);
    CHECK(b.si == doctest::Approx(a.si).epsilon(1e-12));
    CHECK(b.ti == doctest::Approx(a.ti).epsilon(1e-12));
}

TEST_CASE("PPM round-trips bit-exactly") {
    std::mt19937_64 rng(10);
    const EquirectFrame f = random_frame(rng, 32, 16);
    const auto dir = temp_dir("ppm");
    write_ppm(dir / "frame.ppm", f);
    const EquirectFrame back = read_ppm(dir / "frame.ppm");
    CHECK(back == f);
}

TEST_CASE("frame directories carry a manifest") {
    std::mt19937_64 rng(11);
    FrameSequence seq;
    seq.fps = 24.0;
    for (int i = 0; i < 5; ++i) seq.frames.push_back(random_frame(rng, 16, 8));

    const auto dir = temp_dir("seq");
    write_frame_dir(dir, seq);
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(std::filesystem::exists(dir / "frame_000004.ppm"));

    const FrameSequence back = read_frame_dir(dir);
    CHECK(back.fps == 24.0);
    REQUIRE(back.frames.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(back.frames[i] == seq.frames[i]);

    std::filesystem::remove(dir / "manifest.json");
    CHECK_THROWS_AS(read_frame_dir(dir), IoError);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "eitlab/io/csv.hpp"
#include "eitlab/io/pgm.hpp"

using namespace eitlab;
using namespace eitlab::io;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("eitlab_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(0.15), "0.15");
    EXPECT_EQ(format_number(-1.0 / 3.0), "-0.333333333333");
    EXPECT_EQ(format_number(1.5e-17), "1.5e-17");
    EXPECT_EQ(format_number(123456789012345.0), "1.23456789012e+14");
}

TEST(Csv, TextRoundTrip) {
    CsvTable t;
    t.header = {"detuning", "absorption", "kind"};
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int k = 0; k < 50; ++k) t.rows.push_back({format_number(n(rng)), format_number(n(rng) * 1e-9), "phase"});
    const std::string text = to_csv(t);
    const auto back = parse_csv(text);
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(to_csv(back), text);
    EXPECT_EQ(back.numbers("detuning").size(), 50u);
    EXPECT_EQ(format_number(back.number(7, 1)), t.rows[7][1]);
}

TEST(Csv, FileRoundTrip) {
    const auto dir = scratch_dir();
    CsvTable t;
    t.header = {"control_intensity", "width"};
    t.rows = {{"0.05", "0"}, {"0.1", "0.0916557993619"}};
    write_csv(dir / "w.csv", t);
    EXPECT_EQ(read_text(dir / "w.csv"), "control_intensity,width\n0.05,0\n0.1,0.0916557993619\n");
    const auto back = read_csv(dir / "w.csv");
    EXPECT_EQ(back.numbers("width")[1], 0.0916557993619);
}

TEST(Csv, MalformedInputRejected) {
    EXPECT_THROW(parse_csv(""), IoError);
    EXPECT_THROW(parse_csv("a,b\n1\n"), IoError);
    const auto t = parse_csv("a,b\n1,x\n2,3.5e\n");
    EXPECT_THROW(static_cast<void>(t.number(0, 1)), IoError);
    EXPECT_THROW(static_cast<void>(t.number(1, 1)), IoError);
    EXPECT_THROW(static_cast<void>(t.column("c")), IoError);
    CsvTable bad;
    bad.header = {"a,b"};
    EXPECT_THROW(to_csv(bad), IoError);
    bad.header = {"a"};
    bad.rows = {{"1", "2"}};
    EXPECT_THROW(to_csv(bad), IoError);
    EXPECT_THROW(read_text("/nonexistent/file.csv"), IoError);
}

TEST(Pgm, EightAndSixteenBitRoundTrip) {
    std::mt19937_64 rng(9);
    for (unsigned maxval : {255u, 65535u, 1000u}) {
        GrayImage img;
        img.width = 7;
        img.height = 5;
        img.maxval = maxval;
        for (std::size_t k = 0; k < 35; ++k) img.pixels.push_back(static_cast<std::uint16_t>(rng() % (maxval + 1)));
        const std::string bytes = encode_pgm(img);
        EXPECT_EQ(bytes.substr(0, 3), "P5\n");
        EXPECT_EQ(bytes.size(), std::to_string(maxval).size() + 8 + 35 * (maxval > 255 ? 2 : 1));
        const auto back = decode_pgm(bytes);
        EXPECT_EQ(back, img);
        EXPECT_EQ(encode_pgm(back), bytes);
    }
}

TEST(Pgm, HeaderCommentsAccepted) {
    const std::string data = std::string("P5\n# made by hand\n2 1\n255\n") + char(7) + char(200);
    const auto img = decode_pgm(data);
    EXPECT_EQ(img.width, 2u);
    EXPECT_EQ(img.pixels[1], 200);
}

TEST(Pgm, MalformedInputRejected) {
    EXPECT_THROW(decode_pgm("P2\n1 1\n255\n0"), IoError);
    EXPECT_THROW(decode_pgm("P5\n2 2\n255\nab"), IoError);
    EXPECT_THROW(decode_pgm("P5\n2 x\n255\nab"), IoError);
    EXPECT_THROW(decode_pgm("P5\n1 1\n70000\nab"), IoError);
    GrayImage img;
    img.width = 2;
    img.height = 1;
    img.pixels = {1, 300};
    EXPECT_THROW(encode_pgm(img), IoError);
}

TEST(Pgm, GridImageOrientationAndScaling) {
    const auto g = numerics::Grid2D::square(4, 1.0);
    std::vector<double> v(g.size(), 0.0);
    v[g.index(1, 3)] = 2.0;
    v[g.index(2, 0)] = 1.0;
    const auto img = grid_image(g, v, 8);
    EXPECT_EQ(img.pixels[0 * 4 + 1], 255);
    EXPECT_EQ(img.pixels[3 * 4 + 2], 128);
    const auto wide = grid_image(g, v, 16);
    EXPECT_EQ(wide.maxval, 65535u);
    EXPECT_EQ(wide.pixels[1], 65535);
    EXPECT_THROW(grid_image(g, v, 12), std::invalid_argument);
    const auto blank = grid_image(g, std::vector<double>(g.size(), 0.0), 8);
    for (auto p : blank.pixels) EXPECT_EQ(p, 0);
}

TEST(Pgm, FileRoundTrip) {
    const auto dir = scratch_dir();
    GrayImage img{3, 2, 255, {0, 1, 2, 3, 4, 255}};
    write_pgm(dir / "a.pgm", img);
    EXPECT_EQ(read_pgm(dir / "a.pgm"), img);
}

#include <vortexlab/io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

using namespace vortexlab;

TEST(IO, NumbersRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, 2.0039598133909749e-1, -1e-300, 6.02214076e23}) {
        EXPECT_EQ(std::strtod(io::num(x).c_str(), nullptr), x);
    }
}

TEST(IO, ProfileCsvAndJson) {
    const auto g = make_grid(3, 50, Grading::graded(2.0));
    const auto p = solve_gl_profile(3, Potential::zero(), 1.0, g);
    const auto csv = io::to_csv(p, Potential::zero());
    std::istringstream in(csv);
    std::string line;
    int header = 0, rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0)
            ++header;
        else
            ++rows;
    }
    EXPECT_GT(header, 0);
    EXPECT_EQ(rows, 51);  // column line plus nodes

    const auto j = nlohmann::json::parse(io::to_json(p, Potential::zero()));
    EXPECT_EQ(j.at("type"), "GLProfile");
    EXPECT_EQ(j.at("f").size(), g.size());
    EXPECT_EQ(io::to_json(p, Potential::zero()), io::to_json(p, Potential::zero()));
}

TEST(IO, ErrorDocument) {
    const auto j = nlohmann::json::parse(io::error_json("bracket_error", "no sign change", R"({"lo":0.5})"));
    EXPECT_EQ(j["error"]["code"], "bracket_error");
    EXPECT_EQ(j["error"]["details"]["lo"], 0.5);
    const auto k = nlohmann::json::parse(io::error_json("x", "y", "not json"));
    EXPECT_EQ(k["error"]["details"], "not json");
}

TEST(IO, PhaseOutputs) {
    const auto g = make_grid(3, 200, Grading::graded(2.0));
    const auto d = sweep(3, Potential::quadratic(), Potential::linear(), {0.1, 0.3}, {0.2, 2.0}, g);
    const auto svg = io::to_svg(d);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("pattern"), std::string::npos);
    EXPECT_EQ(svg, io::to_svg(d));
    const auto csv = io::to_csv(d);
    EXPECT_NE(csv.find("Escaping"), std::string::npos);
    EXPECT_NE(csv.find("NonEscaping"), std::string::npos);
    const auto j = nlohmann::json::parse(io::to_json(d));
    EXPECT_EQ(j.at("N"), 3);
}

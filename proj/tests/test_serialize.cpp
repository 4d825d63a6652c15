#include <doctest.h>

#include <dss/algebra.hpp>
#include <dss/elements.hpp>
#include <dss/modal.hpp>
#include <dss/network.hpp>
#include <dss/serialize.hpp>
#include <dss/transform.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace dss;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t end = line.find(',', start);
        if (end == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    return fields;
}

} // namespace

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(0.1) == "0.1");
    for (double x : {1.0 / 3.0, 2.5e-7, -1.234e30, 6.283185307179586, 1e-300}) {
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("model JSON round-trips exactly") {
    Branch rl{"b1", BranchKind::RL, "a", "GROUND", 2.0, 0.5, {}, ""};
    DssModel model = branch_admittance(rl);
    const std::string text = model_to_json(model);
    CHECK(text == model_to_json(model));
    CHECK(text.back() == '\n');

    DssModel back = model_from_json(text);
    CHECK(back.E == model.E);
    CHECK(back.A == model.A);
    CHECK(back.B == model.B);
    CHECK(back.C == model.C);
    CHECK(back.D == model.D);
    REQUIRE(back.state_labels.size() == model.state_labels.size());
    for (size_t i = 0; i < back.state_labels.size(); ++i) {
        CHECK(back.state_labels[i] == model.state_labels[i]);
        CHECK(back.state_labels[i].kind == model.state_labels[i].kind);
    }
    CHECK(back.input_labels == model.input_labels);
    CHECK(back.output_labels == model.output_labels);
}

TEST_CASE("stateless models serialize with empty matrices") {
    DssModel r = resistor(4.0, PortRole::Admittance);
    DssModel back = model_from_json(model_to_json(r));
    CHECK(back.n() == 0);
    CHECK(back.D(0, 0) == 0.25);
    CHECK(back.input_labels == r.input_labels);
}

TEST_CASE("model_from_json validates its input") {
    CHECK_THROWS_AS(model_from_json("nonsense"), ParseError);
    CHECK_THROWS_AS(model_from_json("[]"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"n": 1})"), ParseError);
    CHECK_THROWS_AS(model_from_json(R"({"n": -1, "m": 1, "p": 1})"), ParseError);

    DssModel model = inductor_admittance(2.0);
    std::string text = model_to_json(model);
    SUBCASE("wrong matrix shape") {
        // 0.5 is the single B entry; widening its row breaks the m count.
        const std::string bad = text.replace(text.find("0.5"), 3, "0.5, 1");
        CHECK_THROWS_AS(model_from_json(bad), ParseError);
    }
    SUBCASE("bad label kind") {
        const std::string bad = text.replace(text.find("\"physical\""), 10, "\"ghost\"");
        CHECK_THROWS_AS(model_from_json(bad), ParseError);
    }
}

TEST_CASE("save_model and load_model hit the filesystem") {
    const std::string dir = testutil::scratch_dir();
    DssModel model = capacitor_admittance(3.0);
    save_model(model, dir + "/m.json");
    DssModel back = load_model(dir + "/m.json");
    CHECK(back.E == model.E);
    CHECK(back.A == model.A);
    CHECK_THROWS_AS(load_model(dir + "/missing.json"), FileNotFound);
    CHECK_THROWS_AS(save_model(model, dir + "/no/such/dir/m.json"), FileNotFound);
}

TEST_CASE("ss_to_json reports the reduction") {
    SsResult ss = to_ss(inductor_impedance(3.0));
    const std::string text = ss_to_json(ss);
    CHECK(text == ss_to_json(ss));
    CHECK(text.find("\"n1\": 1") != std::string::npos);
    CHECK(text.find("\"is_proper\": false") != std::string::npos);
    CHECK(text.find("\"Bd\"") != std::string::npos);
    CHECK(text.find("\"Dd\"") != std::string::npos);
    CHECK(text.find("\"kept_labels\"") != std::string::npos);
}

TEST_CASE("modes_to_csv lists every mode with empty cells for virtual ones") {
    Mat e(2, 2), a(2, 2), b(2, 1), c(1, 2), d(1, 1);
    e << 1.0, 0.0, 0.0, 0.0;
    a << -3.0, 0.0, 0.0, 1.0;
    b << 1.0, 1.0;
    c << 1.0, 1.0;
    d << 0.0;
    DssModel model = make_dss(e, a, b, c, d);
    ModeSet modes = generalized_eig(model);

    SUBCASE("without hz") {
        const std::string csv = modes_to_csv(modes, false);
        CHECK(csv == modes_to_csv(modes, false));
        auto lines = lines_of(csv);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == "mode_index,re_rad_s,im_rad_s,class");
        auto row0 = fields_of(lines[1]);
        REQUIRE(row0.size() == 4);
        CHECK(row0[0] == "0");
        CHECK(std::strtod(row0[1].c_str(), nullptr) == doctest::Approx(-3.0).epsilon(1e-12));
        CHECK(std::strtod(row0[2].c_str(), nullptr) == doctest::Approx(0.0));
        CHECK(row0[3] == "finite");
        CHECK(lines[2] == "1,,,virtual");
    }
    SUBCASE("with hz") {
        auto lines = lines_of(modes_to_csv(modes, true));
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == "mode_index,re_rad_s,im_rad_s,freq_hz,class");
        auto row0 = fields_of(lines[1]);
        REQUIRE(row0.size() == 5);
        CHECK(row0[4] == "finite");
        CHECK(lines[2] == "1,,,,virtual");
    }
}

TEST_CASE("participation_to_csv follows the report ordering") {
    DssModel tank = inverse(parallel({inductor_admittance(1.0), capacitor_admittance(1.0)}));
    ModeSet modes = normalize(generalized_eig(tank), tank);
    ParticipationReport report = participation(tank, modes);
    REQUIRE(!report.modes.empty());

    const std::string csv = participation_to_csv(report.modes[0]);
    CHECK(csv == participation_to_csv(report.modes[0]));
    auto lines = lines_of(csv);
    REQUIRE(lines.size() == static_cast<size_t>(tank.n()) + 1);
    CHECK(lines[0] == "state,origin,ptilde_mag,ptilde_arg");
    for (size_t i = 1; i < lines.size(); ++i) {
        auto row = fields_of(lines[i]);
        REQUIRE(row.size() == 4);
        const auto& entry = report.modes[0].entries[i - 1];
        CHECK(row[0] == entry.state.name);
        CHECK(row[1] == entry.state.origin);
    }
    auto top = fields_of(lines[1]);
    CHECK(std::strtod(top[2].c_str(), nullptr) == doctest::Approx(0.5).epsilon(1e-9));
}

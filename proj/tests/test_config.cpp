#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "faraday/config.hpp"

using namespace faraday;

namespace {

std::string read_config(const std::string& name) {
    std::ifstream in(std::string(FARADAY_CONFIG_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect_error(const std::string& text, const std::string& fragment) {
    try {
        (void)parse_config(text);
        FAIL() << "accepted: " << text;
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Config, RelativeUnitResolvesAfterKappaI) {
    const auto c = parse_config("G = 0.1 kappa_i\nkappa_i = 28 MHz");
    EXPECT_DOUBLE_EQ(c.params.G, 2.8e6);
    EXPECT_DOUBLE_EQ(c.params.kappa_i, 28e6);
}

TEST(Config, UnknownKey) { expect_error("Tz = 3", "unknown key 'Tz'"); }

TEST(Config, MissingKappaI) {
    expect_error("G = 0.1 kappa_i", "kappa_i is not set");
    expect_error("G = 1 MHz", "missing kappa_i");
}

TEST(Config, NonNumericValue) { expect_error("kappa_i = fast", "non-numeric"); }

TEST(Config, UnitChecks) {
    expect_error("kappa_i = 1 K", "does not apply");
    expect_error("kappa_i = 1 furlong", "unknown unit");
    expect_error("kappa_i = 1 Hz\nT = 0.1 kappa_i", "not allowed");
    expect_error("kappa_i = 1 kappa_i", "not allowed");
    expect_error("kappa_i = 1 Hz\nP_in = 1 nW extra", "trailing");
}

TEST(Config, DuplicateKeys) { expect_error("kappa_i = 1\nkappa_i = 2", "duplicate"); }

TEST(Config, InvalidPhysics) {
    expect_error("kappa_i = 1\ngamma = -1", "gamma");
    expect_error("kappa_i = 1\nT = -3 K", "T must");
}

TEST(Config, DefaultsMatchBaseline) {
    const auto c = parse_config("kappa_i = 5 kHz  # comment\n\n# full-line comment\n");
    EXPECT_EQ(c.params, baseline_params(5e3));
    EXPECT_DOUBLE_EQ(c.params.omega_r, 2.8e9);
    EXPECT_DOUBLE_EQ(c.T, 70.0);
    EXPECT_DOUBLE_EQ(c.P_in, 1e-9);
    EXPECT_DOUBLE_EQ(c.tau_m, 1e-6);
}

TEST(Config, UnitsAndOverrides) {
    const auto c = parse_config("kappa_i = 2 GHz\nP_in = 3 nW\nT = 4 K\ntau_m = 2e-3 s",
                                {"delta=0.5 kappa_i", "G = 7 kHz"});
    EXPECT_DOUBLE_EQ(c.params.kappa_i, 2e9);
    EXPECT_DOUBLE_EQ(c.P_in, 3e-9);
    EXPECT_DOUBLE_EQ(c.T, 4.0);
    EXPECT_DOUBLE_EQ(c.tau_m, 2e-3);
    EXPECT_DOUBLE_EQ(c.params.delta, 1e9);
    EXPECT_DOUBLE_EQ(c.params.G, 7e3);
    // an override replaces the file value
    EXPECT_DOUBLE_EQ(parse_config("kappa_i = 1\nG = 3", {"G=4"}).params.G, 4.0);
}

TEST(Config, ShippedBaselineFile) {
    const auto c = parse_config(read_config("fig3_baseline.conf"));
    EXPECT_EQ(c.params, baseline_params(1.0));
}

TEST(Config, ShippedNvPresets) {
    const auto a = parse_config(read_config("nv_q100.conf"));
    const auto b = parse_config(read_config("nv_q1e5.conf"));
    EXPECT_EQ(a.params, overcoupled_params(28e6));
    EXPECT_EQ(b.params, overcoupled_params(28e3));
    EXPECT_DOUBLE_EQ(a.P_in, 1e-9);
}

TEST(Config, EchoRoundTrips) {
    const auto c = parse_config("kappa_i = 28 MHz\nG = 0.1 kappa_i\ndelta = 1.234567890123e-5 kappa_i");
    std::string text;
    for (const auto& [k, v] : config_echo(c)) text += k + " = " + v + "\n";
    const auto back = parse_config(text);
    EXPECT_EQ(back.params, c.params);
    EXPECT_EQ(back.T, c.T);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tdce/config.hpp"

using namespace tdce;

TEST_CASE("key = value specs") {
    const auto s = parse_channel_spec(
        "# link\n"
        "span_count = 4\n"
        "dispersion_ps_nm_km: 17.0   # comment\n"
        "\n"
        "baud_rate_hz = 64e9\n");
    CHECK(s.span_count == 4);
    CHECK(s.dispersion_ps_nm_km == 17.0);
    CHECK(s.baud_rate_hz == 64e9);
    CHECK(s.wavelength_nm == 1550.0);
}

TEST_CASE("JSON specs") {
    const auto s = parse_channel_spec(R"({"span_count": 2, "wavelength_nm": 1310})");
    CHECK(s.span_count == 2);
    CHECK(s.wavelength_nm == 1310.0);
    CHECK_THROWS_AS(parse_channel_spec(R"({"span_count": "two"})"), ConfigError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"span_count": 2,)"), ConfigError);
    CHECK_THROWS_AS(parse_channel_spec(R"([1, 2])"), ConfigError);
}

TEST_CASE("diagnostics name the offending line") {
    auto message = [](const std::string& text) {
        try {
            parse_channel_spec(text, "link.cfg");
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("span_count = 1\nbogus = 3\n").find("link.cfg:2") != std::string::npos);
    CHECK(message("span_count = 1\nbogus = 3\n").find("bogus") != std::string::npos);
    CHECK(message("\n\nwavelength_nm = abc\n").find("link.cfg:3") != std::string::npos);
    CHECK(message("span_count = 1.5\n").find("integer") != std::string::npos);
    CHECK(message("span_count\n").find("link.cfg:1") != std::string::npos);
    CHECK(message("span_count = 0\n") != "");
}

TEST_CASE("formatted specs parse back identically") {
    ChannelSpec s = ChannelSpec::ssmf(8);
    s.dispersion_ps_nm_km = 16.123456789012345;
    s.amp_noise_figure_db = 5.25;
    const ChannelSpec r = parse_channel_spec(format_channel_spec(s));
    CHECK(r.dispersion_ps_nm_km == s.dispersion_ps_nm_km);
    CHECK(r.span_count == 8);
    CHECK(r.amp_noise_figure_db == 5.25);
}

TEST_CASE("spec files") {
    const auto dir = std::filesystem::temp_directory_path() / "tdce_test_config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.cfg") << "span_count = 3\n";
    }
    CHECK(load_channel_spec(dir / "a.cfg").span_count == 3);
    CHECK_THROWS_AS(load_channel_spec(dir / "missing.cfg"), ConfigError);
    std::filesystem::remove_all(dir);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rnstab/config.hpp"

using namespace rnstab;

TEST(Config, ParsesAllSeparators) {
    std::istringstream in("# comment\nrho_f = 2\nrho_s: 3   # trailing\n\nh_s 0.5\nn_modes=12\n");
    RunConfig cfg;
    apply_key_values(cfg, parse_key_values(in));
    EXPECT_DOUBLE_EQ(cfg.params.rho_f, 2.0);
    EXPECT_DOUBLE_EQ(cfg.params.rho_s, 3.0);
    EXPECT_DOUBLE_EQ(cfg.params.h_s, 0.5);
    EXPECT_EQ(cfg.disc.n_modes, 12);
    EXPECT_DOUBLE_EQ(cfg.params.beta, fixture_params().beta);
}

TEST(Config, RejectsUnknownKeyAndBadValues) {
    RunConfig cfg;
    EXPECT_THROW(apply_setting(cfg, "gamma", "1"), InvalidParameter);
    EXPECT_THROW(apply_setting(cfg, "dt", "abc"), InvalidParameter);
    EXPECT_THROW(apply_setting(cfg, "n_modes", "2.5"), InvalidParameter);
    std::istringstream in("justakey\n");
    EXPECT_THROW((void)parse_key_values(in), InvalidParameter);
}

TEST(Config, LoadsFileAndReportsMissingPath) {
    const auto path = std::filesystem::temp_directory_path() / "rnstab_config_test.cfg";
    {
        std::ofstream out(path);
        out << "alpha = 2500\ndt = 1e-4\n";
    }
    const auto cfg = load_config(path.string());
    EXPECT_DOUBLE_EQ(cfg.alpha, 2500.0);
    EXPECT_DOUBLE_EQ(cfg.disc.dt, 1e-4);
    std::filesystem::remove(path);
    EXPECT_THROW((void)load_config("/nonexistent/dir/x.cfg"), IoError);
}

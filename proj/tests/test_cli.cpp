#include "commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qecwb::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "qecwb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double number_in(const Table& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows[row][col]); }

}  // namespace

TEST(Grid, Parsing)
{
  EXPECT_EQ(parse_grid("0.1,0.2,0.3"), (std::vector<double>{0.1, 0.2, 0.3}));
  const auto lin = parse_grid("lin:0:1:11");
  ASSERT_EQ(lin.size(), 11u);
  EXPECT_EQ(lin.back(), 1.0);
  const auto log = parse_grid("log:1e-4:1e-2:9");
  ASSERT_EQ(log.size(), 9u);
  EXPECT_EQ(log.front(), 1e-4);
  EXPECT_EQ(log.back(), 1e-2);
  EXPECT_THROW(parse_grid("lin:0:1"), std::invalid_argument);
  EXPECT_THROW(parse_grid("abc"), std::invalid_argument);
  EXPECT_THROW(parse_grid(""), std::invalid_argument);
}

TEST(Grid, Validation)
{
  EXPECT_NO_THROW(validate_grid({0.0, 0.5, 1.0}, 0.0, 1.0, "t"));
  EXPECT_THROW(validate_grid({0.5, 0.2}, 0.0, 1.0, "t"), std::invalid_argument);
  EXPECT_THROW(validate_grid({0.5, 1.5}, 0.0, 1.0, "t"), std::invalid_argument);
  EXPECT_THROW(validate_grid({}, 0.0, 1.0, "t"), std::invalid_argument);
}

TEST(Format, SeventeenDigits)
{
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(std::stod(format_number(0.972)), 0.972);
}

TEST(Tolerance, EnvironmentOverride)
{
  ::unsetenv("QECWB_TOL");
  EXPECT_EQ(tolerance_from_env(), 1e-10);
  ::setenv("QECWB_TOL", "1e-6", 1);
  EXPECT_EQ(tolerance_from_env(), 1e-6);
  ::setenv("QECWB_TOL", "junk", 1);
  EXPECT_EQ(tolerance_from_env(), 1e-10);
  ::unsetenv("QECWB_TOL");
}

TEST(Bitflip, Table)
{
  RunConfig cfg;
  const CommandResult r = cmd_bitflip(cfg);
  ASSERT_EQ(r.table.rows.size(), 101u);
  EXPECT_EQ(r.table.columns, (std::vector<std::string>{"p", "F_code", "F_baseline", "P_failure", "below_threshold"}));
  EXPECT_EQ(number_in(r.table, 0, 1), 1.0);
  EXPECT_EQ(number_in(r.table, 0, 2), 1.0);
  EXPECT_NEAR(number_in(r.table, 10, 1), 0.972, 1e-12);
  EXPECT_EQ(r.table.summary[0].first, "failure_threshold");
  EXPECT_NEAR(std::get<double>(r.table.summary[0].second), 0.5, 1e-10);
  EXPECT_TRUE(r.certificates_ok);
}

TEST(AdFidelity, FooterCoefficients)
{
  for (auto [choice, c2] : {std::pair{RecoveryChoice::qec, -2.0}, std::pair{RecoveryChoice::cp, -1.75},
                            std::pair{RecoveryChoice::fletcher, -1.5}, std::pair{RecoveryChoice::fletcher_opt, -1.5}}) {
    RunConfig cfg;
    cfg.recovery = choice;
    const CommandResult r = cmd_ad_fidelity(cfg);
    EXPECT_TRUE(r.certificates_ok);
    double fitted = 0;
    for (const auto& [k, v] : r.table.summary)
      if (k == "fit_c2") fitted = std::get<double>(v);
    EXPECT_NEAR(fitted, c2, 1e-2);
  }
}

TEST(AdFidelity, OptimizerColumns)
{
  RunConfig cfg;
  cfg.recovery = RecoveryChoice::fletcher_opt;
  cfg.grid = {0.1};
  const CommandResult r = cmd_ad_fidelity(cfg);
  ASSERT_EQ(r.table.columns.size(), 7u);
  EXPECT_NEAR(number_in(r.table, 0, 1), 0.98551263717602, 1e-12);
  EXPECT_LE(number_in(r.table, 0, 6), 1e-12);
}

TEST(Enumerate, Report)
{
  const CommandResult r = cmd_enumerate(RunConfig{});
  ASSERT_EQ(r.table.rows.size(), 28u);
  int good = 0;
  for (const auto& row : r.table.rows) good += std::get<bool>(row[2]) ? 1 : 0;
  EXPECT_EQ(good, 3);
  EXPECT_EQ(std::get<std::string>(r.table.rows[0][3]), "0000/1000");
  EXPECT_EQ(std::get<std::string>(r.table.rows[27][3]), "0010/0001");
  for (const auto& [k, v] : r.table.summary) {
    if (k.find("->") != std::string::npos) {
      EXPECT_NE(std::get<std::string>(v), "none");
    }
  }
}

TEST(Fig1, Curves)
{
  RunConfig cfg;
  const CommandResult r = cmd_fig1(cfg);
  ASSERT_EQ(r.table.rows.size(), 101u);
  for (std::size_t c = 1; c < r.table.columns.size(); ++c) EXPECT_NEAR(number_in(r.table, 0, c), 1.0, 1e-12);
  EXPECT_NEAR(number_in(r.table, 100, 7), 1.0 - 1.5e-4, 1e-15);
  for (std::size_t row = 1; row < r.table.rows.size(); ++row) {
    EXPECT_GT(number_in(r.table, row, 3), number_in(r.table, row, 2));
    EXPECT_GT(number_in(r.table, row, 2), number_in(r.table, row, 1));
    EXPECT_GT(number_in(r.table, row, 7), number_in(r.table, row, 6));
    EXPECT_GT(number_in(r.table, row, 6), number_in(r.table, row, 5));
  }
}

TEST(NoJumpReport, Values)
{
  RunConfig cfg;
  const CommandResult r = cmd_appendix_a(cfg);
  EXPECT_TRUE(r.certificates_ok);
  EXPECT_NEAR(number_in(r.table, 1, 3), 0.81, 1e-12);
  EXPECT_NEAR(number_in(r.table, 2, 3), 0.82805, 1e-12);

  cfg.gamma = 0.0;
  const CommandResult z = cmd_appendix_a(cfg);
  for (const auto& row : z.table.rows) {
    if (std::get<std::string>(row[0]) == "pi_0000") {
      EXPECT_NEAR(std::get<double>(row[3]), 0.0, 1e-12);
    }
  }
}

TEST(Certify, AllPass)
{
  const CommandResult r = cmd_certify(RunConfig{});
  EXPECT_TRUE(r.certificates_ok);
}

TEST(MainEntry, CsvOutput)
{
  const Outcome o = invoke({"bitflip", "--grid", "0,0.1"});
  EXPECT_EQ(o.code, 0);
  const auto l = lines(o.out);
  ASSERT_GE(l.size(), 3u);
  EXPECT_EQ(l[0], "p,F_code,F_baseline,P_failure,below_threshold");
  EXPECT_EQ(l[1], "0,1,1,0,true");
  EXPECT_EQ(l[2].substr(0, 24), "0.10000000000000001,0.97");
  EXPECT_EQ(o.out.find('\r'), std::string::npos);
}

TEST(MainEntry, JsonOutput)
{
  const Outcome o = invoke({"enumerate", "--format", "json"});
  EXPECT_EQ(o.code, 0);
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc.at("rows").size(), 28u);
  EXPECT_EQ(doc.at("summary").at("good").get<double>(), 3.0);
}

TEST(MainEntry, Deterministic)
{
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"bitflip"}, {"ad-fidelity", "--recovery", "cp", "--format", "json"},
        {"appendix-a", "--gamma", "0.2"}, {"fig1", "--points", "11"}}) {
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(MainEntry, WritesFile)
{
  const auto path = std::filesystem::temp_directory_path() / "qecwb_cli_test.csv";
  const Outcome o = invoke({"certify", "--out", path.string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "object,check,deviation,pass");
  std::filesystem::remove(path);
}

TEST(MainEntry, Errors)
{
  EXPECT_EQ(invoke({"bitflip", "--grid", "0.5,0.2"}).code, 2);
  EXPECT_EQ(invoke({"ad-fidelity", "--grid", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"appendix-a", "--gamma", "1"}).code, 2);
  EXPECT_NE(invoke({"ad-fidelity", "--recovery", "nope"}).code, 0);
  EXPECT_NE(invoke({}).code, 0);
}

TEST(MainEntry, FailingCertificatesExitOne)
{
  ::setenv("QECWB_TOL", "1e-300", 1);
  const Outcome o = invoke({"certify"});
  ::unsetenv("QECWB_TOL");
  EXPECT_EQ(o.code, 1);
}

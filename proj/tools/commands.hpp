#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qecwb::cli {

enum class Format { csv, json, text };
enum class Command { bitflip, ad_fidelity, enumerate, fig1, appendix_a, certify };
enum class RecoveryChoice { qec, cp, fletcher, fletcher_opt };

struct RunConfig {
  Command command = Command::certify;
  std::vector<double> grid;  // empty: command default
  std::string out;           // empty: stdout
  Format format = Format::csv;
  double tol = 1e-10;
  RecoveryChoice recovery = RecoveryChoice::qec;
  double gamma = 0.1;        // appendix-a
  double gamma_max = 1e-2;   // fig1
  int points = 101;          // fig1
};

using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
};

/// "0.1,0.2", "lin:0:1:101" or "log:1e-4:1e-2:9".
std::vector<double> parse_grid(std::string_view spec);

/// Throws unless the grid is non-empty, strictly increasing and inside [lo, hi].
void validate_grid(const std::vector<double>& grid, double lo, double hi, const char* what);

/// QECWB_TOL if set and parseable as a positive number, otherwise `fallback`.
double tolerance_from_env(double fallback = 1e-10);

/// 17 significant digits, '.' separator, independent of the locale.
std::string format_number(double x);

void render(const Table& table, Format format, std::ostream& out);

struct CommandResult {
  Table table;
  bool certificates_ok = true;
};

CommandResult cmd_bitflip(const RunConfig& cfg);
CommandResult cmd_ad_fidelity(const RunConfig& cfg);
CommandResult cmd_enumerate(const RunConfig& cfg);
CommandResult cmd_fig1(const RunConfig& cfg);
CommandResult cmd_appendix_a(const RunConfig& cfg);
CommandResult cmd_certify(const RunConfig& cfg);

/// Runs the command and renders it. Returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out);

/// Full command line entry point; returns the exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qecwb::cli

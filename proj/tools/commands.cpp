#include "commands.hpp"

#include "qecwb/qecwb.hpp"
#include "qecwb/serialize.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qecwb::cli {

namespace {

double parse_double(std::string_view s)
{
  double x = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: " + std::string(s));
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string cell_text(const Cell& c)
{
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

Json cell_json(const Cell& c)
{
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(double x) const { return std::isfinite(x) ? Json(x) : Json(nullptr); }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, c);
}

std::string label_text(const std::optional<std::pair<std::string, std::string>>& p)
{
  return p ? p->first + "/" + p->second : std::string();
}

struct Certificates {
  double tol;
  bool ok = true;
  void require(bool pass) { ok = ok && pass; }
  void channel(const KrausChannel& ch) { require(certify(ch, tol).trace_preserving); }
  void recovery(const RecoveryOperation& r) { require(r.completeness_defect() <= tol); }
};

const std::vector<double>& grid_or(const RunConfig& cfg, const std::vector<double>& fallback)
{
  return cfg.grid.empty() ? fallback : cfg.grid;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec)
{
  if (spec.starts_with("lin:") || spec.starts_with("log:")) {
    const auto parts = split(spec.substr(4), ':');
    if (parts.size() != 3) throw std::invalid_argument("grid: expected kind:start:stop:count");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    int n = 0;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || n < 1) {
      throw std::invalid_argument("grid: bad point count");
    }
    return spec.starts_with("lin:") ? linspace(lo, hi, n) : logspace(lo, hi, n);
  }
  std::vector<double> out;
  for (auto part : split(spec, ',')) {
    if (!part.empty()) out.push_back(parse_double(part));
  }
  if (out.empty()) throw std::invalid_argument("grid: no values");
  return out;
}

void validate_grid(const std::vector<double>& grid, double lo, double hi, const char* what)
{
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lo && grid[i] <= hi)) {
      throw std::invalid_argument(std::string(what) + ": grid value outside the valid domain");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

double tolerance_from_env(double fallback)
{
  const char* raw = std::getenv("QECWB_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    const double tol = parse_double(raw);
    return tol > 0.0 ? tol : fallback;
  } catch (const std::invalid_argument&) {
    return fallback;
  }
}

std::string format_number(double x)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

void render(const Table& table, Format format, std::ostream& out)
{
  switch (format) {
    case Format::csv: {
      for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
      out << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
        out << '\n';
      }
      for (const auto& [key, value] : table.summary) out << "# " << key << ',' << cell_text(value) << '\n';
      break;
    }
    case Format::json: {
      Json rows = Json::array();
      for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
        rows.push_back(std::move(obj));
      }
      Json summary = Json::object();
      for (const auto& [key, value] : table.summary) summary[key] = cell_json(value);
      Json doc{{"columns", table.columns}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::text: {
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : table.rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < row.size(); ++c) {
          line.push_back(cell_text(row[c]));
          width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
      }
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << line[c];
        }
        out << '\n';
      };
      emit(table.columns);
      for (const auto& line : cells) emit(line);
      for (const auto& [key, value] : table.summary) out << key << ": " << cell_text(value) << '\n';
      break;
    }
  }
}

CommandResult cmd_bitflip(const RunConfig& cfg)
{
  static const std::vector<double> fallback = linspace(0.0, 1.0, 101);
  const auto& grid = grid_or(cfg, fallback);
  validate_grid(grid, 0.0, 1.0, "bitflip");

  Certificates certs{cfg.tol};
  certs.recovery(repetition_recovery());
  const ThresholdReport th = threshold_analysis(bitflip_code_fidelity, bitflip_baseline);

  CommandResult res;
  res.table.columns = {"p", "F_code", "F_baseline", "P_failure", "below_threshold"};
  for (double p : grid) {
    certs.channel(enlarge(bitflip_single(p), 3));
    const double f = bitflip_code_fidelity(p);
    const double failure = 1.0 - f;
    res.table.rows.push_back({p, f, bitflip_baseline(p), failure, failure <= p});
  }
  res.table.summary.emplace_back("failure_threshold",
                                 th.failure_threshold ? Cell(*th.failure_threshold) : Cell(std::monostate{}));
  res.table.summary.emplace_back("coding_useful_everywhere", th.useful_everywhere);
  res.certificates_ok = certs.ok;
  return res;
}

CommandResult cmd_ad_fidelity(const RunConfig& cfg)
{
  static const std::vector<double> fallback = default_gamma_window();
  const auto& grid = grid_or(cfg, fallback);
  validate_grid(grid, 0.0, std::nextafter(1.0, 0.0), "ad-fidelity");

  Certificates certs{cfg.tol};
  CommandResult res;
  const bool opt = cfg.recovery == RecoveryChoice::fletcher_opt;
  res.table.columns = {"gamma", "F"};
  if (opt) {
    for (const char* c : {"a_bar", "b_bar", "f_star_closed", "f_star_numeric", "delta"}) {
      res.table.columns.emplace_back(c);
    }
  }

  auto recovery_at = [&](double g) {
    switch (cfg.recovery) {
      case RecoveryChoice::qec: return standard_ad_recovery(g);
      case RecoveryChoice::cp: return cp_recovery();
      case RecoveryChoice::fletcher: {
        const Optimum o = closed_form_optimum(g);
        return fletcher_recovery(o.a_bar, o.b_bar);
      }
      case RecoveryChoice::fletcher_opt: {
        const Optimum o = numeric_optimum(g);
        return fletcher_recovery(o.a_bar, o.b_bar);
      }
    }
    throw std::logic_error("ad-fidelity: unknown recovery");
  };

  const QuantumCode code = leung4();
  std::map<double, double> curve;
  for (double g : grid) {
    const KrausChannel channel = enlarge(ad_single(g), 4);
    const RecoveryOperation rec = recovery_at(g);
    certs.channel(channel);
    certs.recovery(rec);
    const double f = entanglement_fidelity(code, rec, channel).value;
    curve[g] = f;
    std::vector<Cell> row{g, f};
    if (opt) {
      const FletcherReport r = fletcher_report(g);
      row.insert(row.end(), {r.a_bar, r.b_bar, r.f_star_closed, r.f_star_numeric, r.delta});
    }
    res.table.rows.push_back(std::move(row));
  }

  std::vector<double> window;
  for (double g : grid) {
    if (g > 0.0 && g <= 1e-2) window.push_back(g);
  }
  if (window.size() >= 3) {
    const SeriesEstimate est = second_order_coeff([&](double g) { return curve.at(g); }, window);
    res.table.summary.emplace_back("fit_c0", est.c0);
    res.table.summary.emplace_back("fit_c1", est.c1);
    res.table.summary.emplace_back("fit_c2", est.c2);
    res.table.summary.emplace_back("fit_residual", est.residual);
  } else {
    res.table.summary.emplace_back("fit", std::string("needs three samples in (0, 1e-2]"));
  }
  res.certificates_ok = certs.ok;
  return res;
}

CommandResult cmd_enumerate(const RunConfig& cfg)
{
  (void)cfg;
  CommandResult res;
  res.table.columns = {"i", "j", "good", "witness", "slope"};
  int good = 0;
  std::vector<QuantumCode> good_codes;
  for (const auto& pair : enumerate_pairs()) {
    const PairClassification c = classify_pair(pair);
    res.table.rows.push_back({static_cast<double>(c.i), static_cast<double>(c.j), c.good, label_text(c.witness),
                              std::isfinite(c.slope) ? Cell(c.slope) : Cell(std::string("exact"))});
    if (c.good) {
      ++good;
      good_codes.push_back(pair.code());
    }
  }
  res.table.summary.emplace_back("pairs", static_cast<double>(res.table.rows.size()));
  res.table.summary.emplace_back("good", static_cast<double>(good));
  for (std::size_t k = 1; k < good_codes.size(); ++k) {
    const auto perm = permutation_equivalent(good_codes.front(), good_codes[k]);
    std::string text = "none";
    if (perm) {
      text.clear();
      for (std::size_t q = 0; q < perm->size(); ++q) text += (q ? " " : "") + std::to_string((*perm)[q] + 1);
    }
    res.table.summary.emplace_back(good_codes.front().name + "->" + good_codes[k].name, text);
  }
  return res;
}

CommandResult cmd_fig1(const RunConfig& cfg)
{
  if (!(cfg.gamma_max > 0.0 && cfg.gamma_max < 1.0)) throw std::invalid_argument("fig1: gamma-max must lie in (0, 1)");
  if (cfg.points < 2) throw std::invalid_argument("fig1: need at least two points");
  const std::vector<double> grid = cfg.grid.empty() ? linspace(0.0, cfg.gamma_max, cfg.points) : cfg.grid;
  validate_grid(grid, 0.0, std::nextafter(1.0, 0.0), "fig1");

  Certificates certs{cfg.tol};
  CommandResult res;
  res.table.columns = {"param", "F_qec", "F_cp", "F_fletcher", "F_baseline", "T_qec", "T_cp", "T_fletcher"};
  for (double g : grid) {
    const Optimum o = closed_form_optimum(g);
    certs.channel(enlarge(ad_single(g), 4));
    certs.recovery(standard_ad_recovery(g));
    certs.recovery(fletcher_recovery(o.a_bar, o.b_bar));
    const double g2 = g * g;
    res.table.rows.push_back({g, ad_qec_fidelity(g), ad_cp_fidelity(g), ad_fletcher_fidelity(g, o.a_bar, o.b_bar),
                              ad_baseline(g), 1.0 - 2.0 * g2, 1.0 - 1.75 * g2, 1.0 - 1.5 * g2});
  }
  certs.recovery(cp_recovery());
  res.certificates_ok = certs.ok;
  return res;
}

CommandResult cmd_appendix_a(const RunConfig& cfg)
{
  const double g = cfg.gamma;
  if (!(g >= 0.0 && g < 1.0)) throw std::invalid_argument("appendix-a: gamma must lie in [0, 1)");
  const QuantumCode code = leung4();
  const KrausChannel channel = enlarge(ad_single(g), 4);
  const Matrix& a = channel.at("0000").op;

  const KLGram gram = kl_gram(code, std::span<const LabeledOperator>(&channel.at("0000"), 1));
  const PolarDecomposition pd = polar_decompose(a, code.projector);
  const ResidueParameters rp = residue_parameters(code, a);
  const ResidueResult rr = residue(a, code.projector, rp.p_l, rp.lambda_l);
  const std::vector<StateVector> basis{basis_state("0000"), basis_state("0011"), basis_state("1100"),
                                       basis_state("1111")};
  const Matrix u4 = restrict(pd.u, basis);
  const Matrix j4 = restrict(pd.j, basis);
  const Matrix pi4 = restrict(rr.pi, basis);
  const auto j_spectrum = hermitian_eig(j4, 1e-9).values;

  const double polar_residual = max_abs(a * code.projector - pd.u * pd.j);
  const double unitarity = max_abs(pd.u.adjoint() * pd.u - Matrix::Identity(pd.u.rows(), pd.u.cols()));

  CommandResult res;
  res.table.columns = {"quantity", "row", "col", "re", "im"};
  auto scalar = [&](const std::string& name, double v) {
    res.table.rows.push_back({name, std::monostate{}, std::monostate{}, v, 0.0});
  };
  auto matrix = [&](const std::string& name, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        res.table.rows.push_back({name, static_cast<double>(r), static_cast<double>(c), m(r, c).real(), m(r, c).imag()});
      }
    }
  };
  scalar("gamma", g);
  scalar("lambda_min", gram.eig_min[0]);
  scalar("lambda_max", gram.eig_max[0]);
  for (Eigen::Index k = 0; k < j_spectrum.size(); ++k) scalar("sqrt_spectrum", j_spectrum(k));
  matrix("U_0000", u4);
  matrix("pi_0000", pi4);
  scalar("residue_max_singular_value", rr.max_singular_value);
  scalar("residue_bound", rr.bound);
  scalar("polar_residual", polar_residual);
  scalar("unitarity_defect", unitarity);
  res.table.summary.emplace_back("basis", std::string("0000 0011 1100 1111"));
  res.table.summary.emplace_back("residue_bound_ok", rr.bound_ok);
  res.certificates_ok = rr.bound_ok && polar_residual <= 1e-9 && unitarity <= 1e-9;
  return res;
}

CommandResult cmd_certify(const RunConfig& cfg)
{
  CommandResult res;
  res.table.columns = {"object", "check", "deviation", "pass"};
  bool ok = true;
  auto add = [&](const std::string& name, const std::string& check, double dev) {
    const bool pass = dev <= cfg.tol;
    ok = ok && pass;
    res.table.rows.push_back({name, check, dev, pass});
  };
  auto channel_rows = [&](const std::string& name, const KrausChannel& ch) {
    add(name, "trace_preserving", certify(ch, cfg.tol).max_deviation);
  };

  for (double p : {0.0, 0.1, 0.3, 0.5, 1.0}) {
    const std::string tag = "(" + format_number(p) + ")";
    channel_rows("bitflip" + tag, bitflip_single(p));
    channel_rows("bitflip^3" + tag, enlarge(bitflip_single(p), 3));
    channel_rows("phaseflip" + tag, phaseflip_single(p));
  }
  for (double g : {0.0, 0.01, 0.1, 0.3, 0.9}) {
    const std::string tag = "(" + format_number(g) + ")";
    channel_rows("ad" + tag, ad_single(g));
    channel_rows("ad^4" + tag, enlarge(ad_single(g), 4));
  }
  add("repetition", "completeness", repetition_recovery().completeness_defect());
  add("code_projected", "completeness", cp_recovery().completeness_defect());
  for (double g : {0.0, 0.01, 0.1, 0.3, 0.9}) {
    const std::string tag = "(" + format_number(g) + ")";
    add("standard_qec" + tag, "completeness", standard_ad_recovery(g).completeness_defect());
    const Optimum o = closed_form_optimum(g);
    add("fletcher" + tag, "completeness", fletcher_recovery(o.a_bar, o.b_bar).completeness_defect());
  }
  const QuantumCode rep = repetition3();
  const KrausChannel flips = leading(enlarge(bitflip_single(0.2), 3), 4);
  add("polar(bitflip)", "completeness", polar_recovery(rep, flips.kraus).completeness_defect());

  res.table.summary.emplace_back("tolerance", cfg.tol);
  res.table.summary.emplace_back("all_pass", ok);
  res.certificates_ok = ok;
  return res;
}

int run(const RunConfig& cfg, std::ostream& out)
{
  CommandResult res;
  switch (cfg.command) {
    case Command::bitflip: res = cmd_bitflip(cfg); break;
    case Command::ad_fidelity: res = cmd_ad_fidelity(cfg); break;
    case Command::enumerate: res = cmd_enumerate(cfg); break;
    case Command::fig1: res = cmd_fig1(cfg); break;
    case Command::appendix_a: res = cmd_appendix_a(cfg); break;
    case Command::certify: res = cmd_certify(cfg); break;
  }
  if (cfg.out.empty()) {
    render(res.table, cfg.format, out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + cfg.out);
    render(res.table, cfg.format, file);
  }
  return res.certificates_ok ? 0 : 1;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact and approximate quantum error correction workbench"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid_spec;
  std::string format = "csv";
  std::string recovery = "qec";

  auto common = [&](CLI::App* sub, bool with_grid) {
    if (with_grid) sub->add_option("--grid", grid_spec, "comma list, lin:a:b:n or log:a:b:n");
    sub->add_option("--out", cfg.out, "write to this file instead of stdout");
    sub->add_option("--format", format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  };

  auto* bitflip = app.add_subcommand("bitflip", "three-qubit repetition code under bit-flip noise");
  common(bitflip, true);
  auto* ad = app.add_subcommand("ad-fidelity", "four-qubit code under amplitude damping");
  common(ad, true);
  ad->add_option("--recovery", recovery, "qec, cp, fletcher or fletcher-opt")
      ->check(CLI::IsMember({"qec", "cp", "fletcher", "fletcher-opt"}));
  auto* enumerate = app.add_subcommand("enumerate", "classify the 28 self-complementary pairs");
  common(enumerate, false);
  auto* fig1 = app.add_subcommand("fig1", "fidelity curves and their quadratic truncations");
  common(fig1, true);
  fig1->add_option("--gamma-max", cfg.gamma_max, "upper end of the damping range");
  fig1->add_option("--points", cfg.points, "number of samples");
  auto* appendix = app.add_subcommand("appendix-a", "polar decomposition and residue of A_0000");
  common(appendix, false);
  appendix->add_option("--gamma", cfg.gamma, "damping rate");
  auto* cert = app.add_subcommand("certify", "trace preservation and completeness checks");
  common(cert, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    cfg.tol = tolerance_from_env(1e-10);
    if (!grid_spec.empty()) cfg.grid = parse_grid(grid_spec);
    cfg.format = format == "json" ? Format::json : format == "text" ? Format::text : Format::csv;
    cfg.recovery = recovery == "cp"             ? RecoveryChoice::cp
                   : recovery == "fletcher"     ? RecoveryChoice::fletcher
                   : recovery == "fletcher-opt" ? RecoveryChoice::fletcher_opt
                                                : RecoveryChoice::qec;
    if (bitflip->parsed()) cfg.command = Command::bitflip;
    else if (ad->parsed()) cfg.command = Command::ad_fidelity;
    else if (enumerate->parsed()) cfg.command = Command::enumerate;
    else if (fig1->parsed()) cfg.command = Command::fig1;
    else if (appendix->parsed()) cfg.command = Command::appendix_a;
    else cfg.command = Command::certify;
    return run(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qecwb::cli

#include "commands.hpp"

#include "archive.hpp"
#include "verify.hpp"

#include "nnts/dataio.hpp"
#include "nnts/optimizer.hpp"
#include "nnts/selection.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace nnts::tool {

namespace {

struct OrderRange {
  int first = 0;
  int last = 0;
};

OrderRange parse_range(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 0) {
      throw InvalidArgument("bad order range '" + text + "' (expected A..B or A)");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int m = parse_int(text);
    return {m, m};
  }
  OrderRange r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (r.last < r.first) {
    throw InvalidArgument("empty order range '" + text + "'");
  }
  return r;
}

// Number of data rows (non-comment, non-blank, after the header).
std::size_t count_data_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') {
      continue;
    }
    if (!header) {
      header = true;
    } else {
      ++rows;
    }
  }
  return rows;
}

struct FitOptions {
  std::string input;
  std::string unit = "radians";
  bool grouped = false;
  std::string partition = "file";
  std::string orders = "0..6";
  int restarts = 30;
  double tol = 1e-10;
  int max_iters = 50000;
  std::uint64_t seed = 0;
  bool lrt = false;
  double alpha = 0.01;
  std::string criterion = "bic";
  std::string out_dir = ".";
  bool no_step_guard = false;
};

struct DensityOptions {
  std::string archive;
  int order = 0;
  int grid = 512;
  std::string out = "-";
};

int cmd_fit(const FitOptions& o, std::ostream& out) {
  if (o.criterion != "aic" && o.criterion != "bic") {
    throw InvalidArgument("--criterion must be aic or bic");
  }
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
    throw InvalidArgument("--alpha must lie in (0, 1)");
  }
  const OrderRange range = parse_range(o.orders);

  SolverConfig config;
  config.tol = o.tol;
  config.max_iters = o.max_iters;
  config.restarts = o.restarts;
  config.seed = o.seed;
  config.step_guard = !o.no_step_guard;
  config.validate();

  FitArchive archive;
  archive.config = config;
  archive.dataset.path = o.input;

  std::optional<Dataset> data;
  DatasetSpec spec;
  spec.path = o.input;
  if (!std::filesystem::exists(spec.path)) {
    throw IoError("input file " + o.input + " does not exist");
  }
  if (o.grouped) {
    spec.kind = DataKind::kGrouped;
    std::optional<Partition> partition;
    if (o.partition == "calendar") {
      partition = calendar_partition(CalendarConvention::kCommonYear);
    } else if (o.partition == "calendar-leap") {
      partition = calendar_partition(CalendarConvention::kLeapAveraged);
    } else if (o.partition == "equal") {
      const std::size_t rows = count_data_rows(spec.path);
      if (rows == 0) {
        throw EmptyData("no cells in " + o.input);
      }
      partition = equal_partition(rows);
    } else if (o.partition != "file") {
      throw InvalidArgument("--partition must be file, equal, calendar or calendar-leap");
    }
    GroupedSample g = load_grouped(spec, partition);
    archive.dataset.kind = "grouped";
    archive.dataset.partition = o.partition;
    archive.dataset.bounds.assign(g.partition().bounds().begin(), g.partition().bounds().end());
    archive.dataset.size = static_cast<double>(g.total());
    data = std::move(g);
  } else {
    if (o.lrt) {
      throw InvalidArgument("--lrt applies to grouped data only");
    }
    spec.kind = DataKind::kContinuous;
    spec.unit = parse_unit(o.unit);
    AngularSample s = load_continuous(spec);
    archive.dataset.kind = "continuous";
    archive.dataset.unit = to_string(spec.unit);
    archive.dataset.size = static_cast<double>(s.size());
    data = std::move(s);
  }

  std::optional<int> saturated;
  if (o.lrt) {
    saturated = saturated_order(std::get<GroupedSample>(*data).cells());
    if (*saturated < range.first || *saturated > range.last) {
      throw InvalidArgument("--lrt needs the saturated order " + std::to_string(*saturated) +
                            " inside --m");
    }
  }

  bool all_converged = true;
  std::vector<OrderFit> table_input;
  for (int m = range.first; m <= range.last; ++m) {
    const FitResult r = fit(*data, m, config);
    all_converged = all_converged && r.converged;
    archive.fits.push_back(archive_fit(m, r));
    table_input.push_back({m, r.loglik});
  }

  const SelectionTable table =
      build_selection_table(table_input, observation_count(*data), saturated, o.alpha);
  archive.selection.criterion = o.criterion;
  archive.selection.selected_order =
      o.criterion == "aic" ? best_aic_order(table) : best_bic_order(table);
  archive.selection.lrt = o.lrt;
  archive.selection.alpha = o.alpha;
  archive.selection.saturated_order = saturated;
  if (o.lrt) {
    for (const auto& row : table.rows) {
      if (row.parsimonious) {
        archive.selection.parsimonious_order = row.order;
      }
    }
  }

  const std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  save_archive(dir / "fits.json", archive);
  {
    std::ofstream csv(dir / "selection.csv");
    if (!csv) {
      throw IoError("cannot write " + (dir / "selection.csv").string());
    }
    write_selection_csv(csv, table);
  }

  char buf[256];
  out << "   M       loglik          AIC          BIC  iters  converged\n";
  for (const auto& f : archive.fits) {
    const SelectionRow* row = table.find(f.order);
    std::snprintf(buf, sizeof buf, "%4d %12.4f %12.4f %12.4f %6d  %s%s%s\n", f.order, f.loglik,
                  row->aic, row->bic, f.iterations, f.converged ? "yes" : "NO",
                  row->best_aic ? "  *aic" : "", row->best_bic ? "  *bic" : "");
    out << buf;
  }
  if (o.lrt) {
    out << "\n   M      -2(l_M - l_S)   df     p-value\n";
    for (const auto& row : table.rows) {
      if (row.lr) {
        std::snprintf(buf, sizeof buf, "%4d %18.4f %4d %11.4g%s\n", row.order, row.lr->stat,
                      row.lr->df, row.lr->pvalue, row.parsimonious ? "  *" : "");
        out << buf;
      }
    }
    if (archive.selection.parsimonious_order) {
      out << "parsimonious order at alpha=" << o.alpha << ": "
          << *archive.selection.parsimonious_order << '\n';
    } else {
      out << "every LR test rejects at alpha=" << o.alpha << "; raise the saturated order\n";
    }
  }
  out << "selected order (" << o.criterion << "): " << *archive.selection.selected_order << '\n';
  return all_converged ? kExitOk : kExitNotConverged;
}

void write_grid(std::ostream& os, const NntsParams& params, int grid) {
  char buf[128];
  os << "theta,density,cdf\n";
  for (int j = 1; j <= grid; ++j) {
    const double theta = j == grid ? kTwoPi : kTwoPi * j / grid;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", theta, density(params, theta),
                  cdf(params, theta));
    os << buf;
  }
}

int cmd_density(const DensityOptions& o, std::ostream& out) {
  if (o.grid < 1) {
    throw InvalidArgument("--grid must be positive");
  }
  const FitArchive archive = load_archive(o.archive);
  const ArchivedFit* f = archive.find(o.order);
  if (f == nullptr) {
    throw MissingOrder("archive " + o.archive + " has no fit for M=" + std::to_string(o.order));
  }
  if (o.out == "-") {
    write_grid(out, f->params, o.grid);
    return kExitOk;
  }
  std::ofstream file(o.out);
  if (!file) {
    throw IoError("cannot write " + o.out);
  }
  write_grid(file, f->params, o.grid);
  if (!file) {
    throw IoError("failed writing " + o.out);
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  bool ok = true;
  for (const auto& check : run_verification(o)) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fit nonnegative trigonometric sum densities to circular data", "nnts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Fit NNTS models over a range of orders");
  fit_cmd->add_option("--input", fit_opts.input, "CSV dataset")->required();
  fit_cmd->add_option("--unit", fit_opts.unit, "radians, degrees or fraction")
      ->capture_default_str();
  fit_cmd->add_flag("--grouped", fit_opts.grouped, "Input holds grouped counts");
  fit_cmd->add_option("--partition", fit_opts.partition,
                      "file, equal, calendar (365-day year) or calendar-leap (365.25)")
      ->capture_default_str();
  fit_cmd->add_option("--m", fit_opts.orders, "Orders to fit, A..B")->capture_default_str();
  fit_cmd->add_option("--restarts", fit_opts.restarts, "Random starts per order")
      ->capture_default_str();
  fit_cmd->add_option("--tol", fit_opts.tol, "Stopping threshold on |c_{k+1} - c_k|")
      ->capture_default_str();
  fit_cmd->add_option("--max-iters", fit_opts.max_iters)->capture_default_str();
  fit_cmd->add_option("--seed", fit_opts.seed)->capture_default_str();
  fit_cmd->add_flag("--lrt", fit_opts.lrt, "Likelihood-ratio tests against the saturated order");
  fit_cmd->add_option("--alpha", fit_opts.alpha)->capture_default_str();
  fit_cmd->add_option("--criterion", fit_opts.criterion, "aic or bic")->capture_default_str();
  fit_cmd->add_option("--out-dir", fit_opts.out_dir)->capture_default_str();
  fit_cmd->add_flag("--no-step-guard", fit_opts.no_step_guard, "Always take full steps");

  DensityOptions density_opts;
  auto* density_cmd = app.add_subcommand("density", "Write a density/cdf grid from fits.json");
  density_cmd->add_option("--archive", density_opts.archive, "fits.json")->required();
  density_cmd->add_option("--m", density_opts.order, "Order to evaluate")->required();
  density_cmd->add_option("--grid", density_opts.grid, "Number of grid points")
      ->capture_default_str();
  density_cmd->add_option("--out", density_opts.out, "Output CSV ('-' for stdout)")
      ->capture_default_str();

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant checks on synthetic data");
  verify_cmd->add_option("--seed", verify_opts.seed)->capture_default_str();
  verify_cmd->add_option("--perturb-gradient", verify_opts.gradient_perturbation)
      ->group("");  // test hook

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit_cmd) {
      return cmd_fit(fit_opts, out);
    }
    if (*density_cmd) {
      return cmd_density(density_opts, out);
    }
    return cmd_verify(verify_opts, out);
  } catch (const IoError& e) {
    err << "nnts: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "nnts: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace nnts::tool

// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0
//
// cellimit-cli: command-line front end over the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cellimit.h"

namespace {

struct CliError {
  cl_status status;
  std::string message;
};

// Owns a string returned by the C API.
class CString {
 public:
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { cl_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ == nullptr ? std::string() : std::string(p_); }

 private:
  char* p_ = nullptr;
};

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p_); }
  T** out() { return &p_; }
  const T* get() const { return p_; }

 private:
  T* p_ = nullptr;
};

using Margins = Handle<cl_margins, cl_margins_free>;
using Growth = Handle<cl_growth, cl_growth_free>;
using PmfHandle = Handle<cl_pmf, cl_pmf_free>;

void check(cl_status s) {
  if (s != CL_OK) throw CliError{s, cl_last_error()};
}

int exit_code(cl_status s) {
  switch (s) {
    case CL_OK: return 0;
    case CL_RESOURCE_LIMIT: return 3;
    case CL_NO_CONVERGENCE:
    case CL_UNCLASSIFIABLE: return 4;
    case CL_INTERNAL_ERROR: return 1;
    default: return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{CL_IO_ERROR, "IOError: cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// All outputs of a command are written to temporaries first and renamed
// only once every one of them is complete.
void write_outputs(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
  for (const auto& [path, content] : files) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      for (const auto& s : staged) std::filesystem::remove(s.first);
      std::filesystem::remove(tmp);
      throw CliError{CL_IO_ERROR, "IOError: cannot write " + path};
    }
    staged.emplace_back(tmp, target);
  }
  for (const auto& [tmp, target] : staged) std::filesystem::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_outputs({{out_path, content}});
  }
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size() || v != static_cast<double>(static_cast<std::int64_t>(v))) throw std::invalid_argument(part);
      out.push_back(static_cast<std::int64_t>(v));
    } catch (const std::exception&) {
      throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: bad integer '" + part + "' in '" + text + "'"};
    }
  }
  if (out.empty()) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: empty list"};
  return out;
}

cl_format parse_format(const std::string& f) {
  if (f == "json") return CL_FORMAT_JSON;
  if (f == "csv") return CL_FORMAT_CSV;
  return CL_FORMAT_TEXT;
}

struct Config {
  std::string spec;
  std::string growth;
  std::string margins;
  std::string cell;
  std::string n;
  std::string n_grid;
  std::uint64_t reps = 10'000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool exact = false;
  bool logfloat = false;
  std::string out;
  std::string format = "text";
  int which = 2;
  std::optional<std::int64_t> birthday;
};

const char* cell_arg(const Config& c) { return c.cell.empty() ? nullptr : c.cell.c_str(); }

// --spec FILE, or --n N --margins a1,a2,...
void load_margins(const Config& c, Margins& mv) {
  if (!c.spec.empty() && !c.margins.empty()) {
    throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: give either --spec or --margins, not both"};
  }
  if (!c.spec.empty()) {
    check(cl_margins_from_json(read_file(c.spec).c_str(), cell_arg(c), mv.out()));
    return;
  }
  if (c.margins.empty() || c.n.empty()) {
    throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: need --spec FILE or --n N --margins a1,a2,..."};
  }
  if (!c.cell.empty()) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: --cell needs a table --spec"};
  const std::vector<std::int64_t> a = parse_list(c.margins);
  check(cl_margins_create(parse_list(c.n).front(), a.data(), a.size(), mv.out()));
}

void load_growth(const Config& c, Growth& g) {
  const std::string& path = c.growth.empty() ? c.spec : c.growth;
  if (path.empty()) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: need --growth FILE"};
  if (!c.growth.empty() && !c.spec.empty()) {
    throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: give either --growth or --spec, not both"};
  }
  check(cl_growth_from_json(read_file(path).c_str(), cell_arg(c), g.out()));
}

std::vector<std::int64_t> grid_of(const Config& c) {
  if (!c.n.empty() && !c.n_grid.empty()) {
    throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: give either --n or --n-grid, not both"};
  }
  if (!c.n_grid.empty()) return parse_list(c.n_grid);
  if (!c.n.empty()) return parse_list(c.n);
  return {};
}

void cmd_moments(const Config& c) {
  Margins mv;
  load_margins(c, mv);
  CString out;
  check(cl_moments(mv.get(), parse_format(c.format), out.out()));
  emit(c.out, out.str());
}

void cmd_pmf(const Config& c) {
  Margins mv;
  load_margins(c, mv);
  PmfHandle pmf;
  check(cl_cell_pmf(mv.get(), c.exact ? CL_EXACT : CL_LOGFLOAT, pmf.out()));
  CString out;
  check(cl_pmf_render(pmf.get(), c.format == "json" ? CL_FORMAT_JSON : CL_FORMAT_CSV, out.out()));
  emit(c.out, out.str());
}

void cmd_classify(const Config& c) {
  Growth g;
  load_growth(c, g);
  CString out;
  check(cl_classify(g.get(), c.format == "json" ? CL_FORMAT_JSON : CL_FORMAT_TEXT, out.out()));
  emit(c.out, out.str());
}

void cmd_diagnose(const Config& c) {
  Growth g;
  load_growth(c, g);
  const std::vector<std::int64_t> grid = grid_of(c);
  if (grid.empty()) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: diagnose needs --n or --n-grid"};
  CString out;
  check(cl_diagnose(g.get(), grid.data(), grid.size(), c.format == "json" ? CL_FORMAT_JSON : CL_FORMAT_TEXT,
                    out.out()));
  emit(c.out, out.str());
}

void cmd_simulate(const Config& c) {
  if (!c.seed) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: simulate requires --seed"};
  CString histogram;
  CString summary;
  if (c.birthday) {
    if (c.n.empty()) throw CliError{CL_INVALID_ARGUMENT, "InvalidArgument: --birthday needs --n"};
    check(cl_birthday(parse_list(c.n).front(), *c.birthday, c.reps, *c.seed, c.workers, histogram.out(),
                      summary.out()));
  } else {
    Margins mv;
    load_margins(c, mv);
    check(cl_simulate(mv.get(), c.reps, *c.seed, c.workers, histogram.out(), summary.out()));
  }
  if (c.out.empty()) {
    std::cout << (c.format == "csv" ? histogram.str() : summary.str());
  } else {
    write_outputs({{c.out + "_histogram.csv", histogram.str()}, {c.out + "_summary.json", summary.str()}});
  }
}

void cmd_example_tables(const Config& c) {
  const std::vector<std::int64_t> grid = grid_of(c);
  CString out;
  check(cl_example_table(c.which, grid.empty() ? nullptr : grid.data(), grid.size(), c.workers,
                         c.format == "json" ? CL_FORMAT_JSON : CL_FORMAT_TEXT, out.out()));
  emit(c.out, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact laws and limit theorems for cells of contingency tables with fixed margins"};
  app.require_subcommand(1);
  Config cfg;

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "MarginVector or MarginTable JSON");
    sub->add_option("--margins", cfg.margins, "inline margins a1,a2,... (with --n)");
    sub->add_option("--n", cfg.n, "number of coupons");
    sub->add_option("--cell", cfg.cell, "table cell i,j,k");
    sub->add_option("--out", cfg.out, "output path");
  };
  const auto add_growth = [&](CLI::App* sub) {
    sub->add_option("--growth", cfg.growth, "GrowthSpec or GrowthTable JSON");
    sub->add_option("--spec", cfg.spec, "alias of --growth");
    sub->add_option("--cell", cfg.cell, "table cell i,j,k");
    sub->add_option("--out", cfg.out, "output path");
  };

  auto* moments = app.add_subcommand("moments", "E_k and V_k of the running intersections");
  add_input(moments);
  moments->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "csv", "json"}));
  moments->add_flag("--exact", cfg.exact, "accepted for symmetry; moments are always exact");

  auto* pmf = app.add_subcommand("pmf", "exact law of the cell");
  add_input(pmf);
  auto* exact = pmf->add_flag("--exact", cfg.exact, "rational arithmetic");
  pmf->add_flag("--logfloat", cfg.logfloat, "floating point (default)")->excludes(exact);
  pmf->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* classify = app.add_subcommand("classify", "limiting regime of a growth spec");
  add_growth(classify);
  classify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo draws of the cell");
  add_input(simulate);
  simulate->add_option("--reps", cfg.reps, "replications")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "RNG seed (required)");
  simulate->add_option("--workers", cfg.workers, "threads")->check(CLI::Range(1u, 1024u));
  simulate->add_option("--birthday", cfg.birthday, "birthday scenario with M collectors of size n-1");
  simulate->add_option("--format", cfg.format, "stdout format: json summary or csv histogram")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* diagnose = app.add_subcommand("diagnose", "finite-n distance to the limit law");
  add_growth(diagnose);
  diagnose->add_option("--n", cfg.n, "evaluation point");
  diagnose->add_option("--n-grid", cfg.n_grid, "evaluation points a,b,c");
  diagnose->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* tables = app.add_subcommand("example-tables", "classify and certify the worked 3x2x2 examples");
  tables->alias("paper-tables");
  tables->add_option("--which", cfg.which, "2 or 3");
  tables->add_option("--n-grid", cfg.n_grid, "certificate points (default 1e4,1e6,1e8)");
  tables->add_option("--workers", cfg.workers, "threads")->check(CLI::Range(1u, 1024u));
  tables->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
  tables->add_option("--out", cfg.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*moments) cmd_moments(cfg);
    if (*pmf) cmd_pmf(cfg);
    if (*classify) cmd_classify(cfg);
    if (*simulate) cmd_simulate(cfg);
    if (*diagnose) cmd_diagnose(cfg);
    if (*tables) cmd_example_tables(cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Command-line front end: evaluate the fish-eye Green's function at point
// pairs or on grids, and run the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fisheye/fisheye.hpp"

namespace {

using fisheye::DomainError;
using fisheye::geometry::PointRN;
using fisheye::green::FishEyeMedium;
using fisheye::green::GreenValue;
using fisheye::green::Pathway;
using fisheye::verify::VerifyReport;

std::vector<double> parse_reals(const std::string& text,
                                const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw DomainError("InvalidArgument",
                        what + ": cannot parse '" + item + "' as a real");
    }
  }
  if (out.empty())
    throw DomainError("InvalidArgument", what + ": empty value list");
  return out;
}

PointRN parse_point(const std::string& text, int n, const std::string& what) {
  auto vals = parse_reals(text, what);
  if (static_cast<int>(vals.size()) != n)
    throw DomainError("InvalidArgument",
                      what + ": got " + std::to_string(vals.size()) +
                          " coordinates, -N says " + std::to_string(n));
  return PointRN(std::move(vals));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void print_record(const FishEyeMedium& medium, const GreenValue& g,
                  double cos_angle) {
  std::printf("pathway = %s\n", fisheye::green::to_string(g.pathway));
  std::printf("value = %s\n", fmt17(g.value).c_str());
  std::printf("lambda = %s\n", fmt17(fisheye::green::degree_map(medium)).c_str());
  std::printf("cos_angle = %s\n", fmt17(cos_angle).c_str());
  std::printf("terms_used = %zu\n", g.diagnostics.terms_used);
  std::printf("tail_estimate = %s\n",
              fmt17(g.diagnostics.tail_estimate).c_str());
  std::printf("branch = %s\n",
              fisheye::specfun::to_string(g.diagnostics.branch));
}

struct EvalOptions {
  int n = 2;
  double rho = 1.0;
  double nu = 0.5;
  double pole_guard = 1e-8;
  std::string r, rp;
  std::string pathway = "eq20";
};

int run_eval(const EvalOptions& o) {
  const FishEyeMedium medium{o.n, o.rho, o.nu, o.pole_guard};
  const PointRN r = parse_point(o.r, o.n, "--r");
  const PointRN rp = parse_point(o.rp, o.n, "--rp");
  const double cos_angle = fisheye::geometry::geodesic_cos(r, rp, o.rho);
  if (o.pathway == "eq20") {
    print_record(medium, fisheye::green::fisheye_green(medium, r, rp),
                 cos_angle);
  } else if (o.pathway == "sphere") {
    print_record(medium,
                 fisheye::green::fisheye_green_via_sphere(medium, r, rp),
                 cos_angle);
  } else if (o.pathway == "both") {
    const auto a = fisheye::green::fisheye_green(medium, r, rp);
    const auto b = fisheye::green::fisheye_green_via_sphere(medium, r, rp);
    print_record(medium, a, cos_angle);
    std::printf("\n");
    print_record(medium, b, cos_angle);
    const double rel = std::abs(a.value - b.value) /
                       std::max({std::abs(a.value), std::abs(b.value), 1e-300});
    std::printf("\nrelative_difference = %s\n", fmt17(rel).c_str());
  } else {
    throw DomainError("InvalidArgument",
                      "--pathway must be one of eq20|sphere|both");
  }
  return 0;
}

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int res = 0;
};

struct FieldOptions {
  int n = 2;
  double rho = 1.0;
  double nu = 0.5;
  double pole_guard = 1e-8;
  std::string source;
  std::string grid;
  std::string slice;
  std::string pathway = "eq20";
  std::string out;
};

int run_field(const FieldOptions& o) {
  const FishEyeMedium medium{o.n, o.rho, o.nu, o.pole_guard};
  fisheye::green::validate(medium);
  if (medium.degree * (medium.degree + 1.0) < 0.0)
    throw DomainError("NegativeSquare",
                      "field: local wavenumber column undefined for "
                      "nu(nu+1) < 0");
  const PointRN source = parse_point(o.source, o.n, "--rp");
  const bool via_sphere = (o.pathway == "sphere");
  if (!via_sphere && o.pathway != "eq20")
    throw DomainError("InvalidArgument",
                      "field: --pathway must be eq20 or sphere");

  // slices fix named axes; grid specs fill the remaining axes in order
  std::map<int, double> fixed;
  if (!o.slice.empty()) {
    std::stringstream ss(o.slice);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw DomainError("InvalidArgument",
                          "--slice entries must look like axis=value");
      std::string axis = item.substr(0, eq);
      if (!axis.empty() && (axis[0] == 'x' || axis[0] == 'X'))
        axis = axis.substr(1);
      int ax = 0;
      try {
        ax = std::stoi(axis);
      } catch (const std::exception&) {
        throw DomainError("InvalidArgument",
                          "--slice: bad axis '" + item + "'");
      }
      if (ax < 1 || ax > o.n || fixed.count(ax - 1))
        throw DomainError("InvalidArgument",
                          "--slice: axis out of range or repeated");
      fixed[ax - 1] = parse_reals(item.substr(eq + 1), "--slice")[0];
    }
  }

  std::vector<AxisSpec> axes;
  {
    std::stringstream ss(o.grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      AxisSpec a;
      if (std::sscanf(item.c_str(), "%lf:%lf:%d", &a.lo, &a.hi, &a.res) != 3)
        throw DomainError("InvalidArgument",
                          "--grid entries must look like min:max:res");
      if (a.res < 2)
        throw DomainError("InvalidArgument",
                          "--grid: resolution must be >= 2 per free axis");
      axes.push_back(a);
    }
  }
  if (axes.size() + fixed.size() != static_cast<std::size_t>(o.n))
    throw DomainError("InvalidArgument",
                      "field: grid axes plus slice assignments must cover "
                      "all " + std::to_string(o.n) + " coordinates");

  std::vector<int> free_axis;
  for (int i = 0; i < o.n; ++i)
    if (!fixed.count(i)) free_axis.push_back(i);

  std::size_t total = 1;
  for (const auto& a : axes) total *= static_cast<std::size_t>(a.res);

  const double mask_radius = 1e-9 * medium.radius;
  std::vector<std::string> lines(total);
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&](std::size_t begin, std::size_t end) {
    try {
      std::vector<double> coords(static_cast<std::size_t>(o.n), 0.0);
      for (const auto& [ax, v] : fixed) coords[static_cast<std::size_t>(ax)] = v;
      for (std::size_t idx = begin; idx < end; ++idx) {
        // decode lexicographic index, first free axis outermost
        std::size_t rest = idx;
        for (std::size_t k = axes.size(); k-- > 0;) {
          const auto res = static_cast<std::size_t>(axes[k].res);
          const std::size_t j = rest % res;
          rest /= res;
          const AxisSpec& a = axes[k];
          coords[static_cast<std::size_t>(free_axis[k])] =
              a.lo + (a.hi - a.lo) * static_cast<double>(j) /
                         static_cast<double>(a.res - 1);
        }
        PointRN p(coords);
        std::string line;
        for (int i = 0; i < o.n; ++i) {
          line += fmt_sci(p[i]);
          line += ',';
        }
        if (fisheye::geometry::dist(p, source) <= mask_radius) {
          line += "masked";
        } else {
          const double g =
              via_sphere
                  ? fisheye::green::fisheye_green_via_sphere(medium, p, source)
                        .value
                  : fisheye::green::fisheye_green(medium, p, source).value;
          line += fmt_sci(g);
        }
        line += ',';
        line += fmt_sci(fisheye::green::potential(medium, p));
        line += ',';
        line += fmt_sci(fisheye::green::refractive_profile(medium, p));
        lines[idx] = std::move(line);
      }
    } catch (const std::exception& e) {
      std::scoped_lock lock(error_mutex);
      if (!failed.exchange(true)) first_error = e.what();
    }
  };

  const std::size_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= total) break;
    pool.emplace_back(worker, begin, std::min(total, begin + chunk));
  }
  for (auto& t : pool) t.join();
  if (failed)
    throw DomainError("InvalidArgument", "field evaluation: " + first_error);

  std::ofstream os(o.out, std::ios::binary);
  if (!os)
    throw DomainError("InvalidArgument", "cannot open output file " + o.out);
  for (int i = 1; i <= o.n; ++i) os << 'x' << i << ',';
  os << "G,potential,k_local\n";
  for (const auto& line : lines) os << line << '\n';
  if (!os)
    throw DomainError("InvalidArgument", "write failed for " + o.out);
  return 0;
}

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::string out;
};

nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["parameters"] = r.parameters;
  j["measured"] = (r.measured.size() == 1) ? nlohmann::json(r.measured[0])
                                           : nlohmann::json(r.measured);
  j["expected"] = (r.expected.size() == 1) ? nlohmann::json(r.expected[0])
                                           : nlohmann::json(r.expected);
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

int run_verify(const VerifyOptions& o) {
  const auto reports = fisheye::verify::run_suite(o.suite, o.seed);
  nlohmann::json arr = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    all_passed = all_passed && r.passed;
  }
  const std::string text = arr.dump(2) + "\n";
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream os(o.out, std::ios::binary);
    if (!os)
      throw DomainError("InvalidArgument", "cannot open output file " + o.out);
    os << text;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Green's functions for scalar waves in an N-dimensional Maxwell "
      "fish-eye medium"};
  app.require_subcommand(1);

  EvalOptions eo;
  auto* eval = app.add_subcommand(
      "eval", "Evaluate the Green's function at one point pair");
  eval->add_option("-N", eo.n, "Space dimension (>= 2)");
  eval->add_option("--rho", eo.rho, "Fish-eye radius");
  eval->add_option("--nu", eo.nu, "Wave degree");
  eval->add_option("--r", eo.r, "Observation point, comma-separated")
      ->required();
  eval->add_option("--rp", eo.rp, "Source point, comma-separated")->required();
  eval->add_option("--pathway", eo.pathway, "eq20|sphere|both");
  eval->add_option("--pole-guard", eo.pole_guard,
                   "Distance from integer lambda treated as a pole");

  FieldOptions fo;
  auto* field = app.add_subcommand(
      "field", "Evaluate on an axis-aligned grid and write CSV");
  field->add_option("-N", fo.n, "Space dimension (>= 2)");
  field->add_option("--rho", fo.rho, "Fish-eye radius");
  field->add_option("--nu", fo.nu, "Wave degree");
  field->add_option("--rp", fo.source, "Source point, comma-separated")
      ->required();
  field->add_option("--grid", fo.grid,
                    "Per-free-axis ranges min:max:res, comma-separated")
      ->required();
  field->add_option("--slice", fo.slice,
                    "Fixed-coordinate assignments axis=value, comma-separated");
  field->add_option("--pathway", fo.pathway, "eq20|sphere");
  field->add_option("--pole-guard", fo.pole_guard,
                    "Distance from integer lambda treated as a pole");
  field->add_option("--out", fo.out, "Output CSV path")->required();

  VerifyOptions vo;
  auto* ver = app.add_subcommand(
      "verify", "Run a verification suite and emit a JSON report");
  ver->add_option("--suite", vo.suite,
                  "pathways|fd-rn|fd-sphere|flux|series|asymptote|all");
  ver->add_option("--seed", vo.seed, "64-bit seed recorded in every report");
  ver->add_option("--out", vo.out, "Output JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(eo);
    if (field->parsed()) return run_field(fo);
    if (ver->parsed()) return run_verify(vo);
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

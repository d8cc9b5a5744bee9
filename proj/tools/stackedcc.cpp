// stackedcc: command-line driver for the family solver, verification,
// certification and figures.
//
// Exit codes: 0 success, 1 failed check or internal error, 2 usage or domain
// error, 3 certification incomplete.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "stackedcc/certify.hpp"
#include "stackedcc/family_solver.hpp"
#include "stackedcc/io.hpp"
#include "stackedcc/plot.hpp"

namespace {

using namespace stackedcc;

constexpr int kOk = 0, kFail = 1, kUsage = 2, kIncomplete = 3;

struct Globals {
  double tol_h = 1e-13;
  double tol_r = 1e-14;
  unsigned threads = 0;
  unsigned long seed = 0;

  SolverOptions solver() const {
    SolverOptions o;
    o.tol_h = tol_h;
    o.tol_r = tol_r;
    return o;
  }
  unsigned thread_count() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Writes to the named file, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::ParseError, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void check_range(double lo, double hi, int n) {
  const double top = constants::kCollapseRadius;
  if (n < 1) throw Error(ErrorCode::DomainError, "--n must be at least 1");
  if (!(lo > 0.0 && hi < top && lo <= hi))
    throw Error(ErrorCode::DomainError, "need 0 < --min <= --max < sqrt(6)/4 = " + format_g17(top));
}

std::vector<FamilyPoint> solve_grid(double lo, double hi, int n, const Globals& g, bool& all_ok) {
  const auto entries = sweep(uniform_grid(lo, hi, n), g.solver(), g.thread_count());
  std::vector<FamilyPoint> pts;
  all_ok = true;
  for (const auto& e : entries) {
    if (e.point) {
      pts.push_back(*e.point);
    } else {
      all_ok = false;
      std::cerr << "r15=" << format_g17(e.r15) << ": " << e.message << '\n';
    }
  }
  return pts;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(mpz_class(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    Rational q(mpz_class(digits), den);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not a rational number: " + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stacked seven-body central configurations: family solver and certification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-h", g.tol_h, "Relative |H| tolerance for the family solver")->capture_default_str();
  app.add_option("--tol-r", g.tol_r, "Bracket width tolerance for the family solver")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")
      ->envname("STACKEDCC_THREADS")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized harnesses; no command here draws random numbers");

  // family
  auto* family = app.add_subcommand("family", "Solve the family on a uniform r15 grid");
  double fam_min = 0.05, fam_max = 0.6;
  int fam_n = 200;
  std::string fam_format = "csv", fam_file;
  family->add_option("--min", fam_min)->capture_default_str();
  family->add_option("--max", fam_max)->capture_default_str();
  family->add_option("--n", fam_n)->capture_default_str();
  family->add_option("--out", fam_format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  family->add_option("--file", fam_file, "Output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Report central-configuration residuals");
  double ver_r15 = 0.0, ver_tol = 1e-10;
  std::string ver_config;
  auto* ver_r15_opt = verify->add_option("--r15", ver_r15, "Family point to verify");
  auto* ver_cfg_opt = verify->add_option("--config", ver_config, "JSON point set {\"bodies\": [...]}");
  ver_r15_opt->excludes(ver_cfg_opt);
  verify->add_option("--tol", ver_tol)->capture_default_str();

  // certify
  auto* certify = app.add_subcommand("certify", "Interval certification of H' < 0 over an r15 range");
  double cert_min = 0.05, cert_max = 0.58;
  CertifyOptions copt;
  std::string cert_report, cert_rules = "p1,p2,direct";
  certify->add_option("--min", cert_min)->capture_default_str();
  certify->add_option("--max", cert_max)->capture_default_str();
  certify->add_option("--depth", copt.max_depth)->capture_default_str();
  certify->add_option("--budget", copt.budget)->capture_default_str();
  certify->add_option("--columns", copt.seed_columns, "r15 seed columns")->capture_default_str();
  certify->add_option("--rules", cert_rules, "Comma list of p1, p2, direct")->capture_default_str();
  certify->add_option("--report", cert_report, "JSON report path");

  // plot
  auto* plotcmd = app.add_subcommand("plot", "Emit an SVG figure");
  std::string plot_what = "region", plot_out;
  double plot_min = 0.05, plot_max = 0.6;
  int plot_n = 12;
  plotcmd->add_option("--what", plot_what)->check(CLI::IsMember({"region", "family", "masses"}))->capture_default_str();
  plotcmd->add_option("--out", plot_out, "SVG path (default stdout)");
  plotcmd->add_option("--min", plot_min)->capture_default_str();
  plotcmd->add_option("--max", plot_max)->capture_default_str();
  plotcmd->add_option("--n", plot_n, "Family points for family/masses")->capture_default_str();

  // embed
  auto* embedcmd = app.add_subcommand("embed", "Export the configuration at one r15");
  double emb_r15 = 0.3;
  std::string emb_format = "json", emb_out;
  embedcmd->add_option("--r15", emb_r15)->required();
  embedcmd->add_option("--format", emb_format)->check(CLI::IsMember({"json", "xyz"}))->capture_default_str();
  embedcmd->add_option("--out", emb_out, "Output path (default stdout)");

  // spot-check
  auto* spot = app.add_subcommand("spot-check", "Certified signs of p1 and p2 on the family fiber");
  std::vector<std::string> spot_values{"1/2", "11/21", "3/5"};
  spot->add_option("--r15", spot_values, "Rational r15 values")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*family) {
      check_range(fam_min, fam_max, fam_n);
      bool ok = true;
      const auto pts = solve_grid(fam_min, fam_max, fam_n, g, ok);
      std::vector<FamilyRow> rows;
      for (const auto& p : pts) rows.push_back(to_row(p));
      Output out(fam_file);
      if (fam_format == "csv")
        write_family_csv(out.stream(), rows);
      else
        out.stream() << io::family_json(rows).dump(2) << '\n';
      return ok ? kOk : kFail;
    }

    if (*verify) {
      io::PointSet ps;
      if (*ver_cfg_opt) {
        ps = io::load_point_set(ver_config);
      } else if (*ver_r15_opt) {
        const FamilyPoint fp = solve_family_point(ver_r15, g.solver());
        ps = io::to_point_set(embed(fp.params), fp.masses);
      } else {
        std::cerr << "verify needs --r15 or --config\n";
        return kUsage;
      }
      const ResidualReport rep = all_residuals(ps.positions, ps.masses);
      const bool pass = rep.max_f < ver_tol && rep.max_cc < ver_tol;
      auto j = io::to_json(rep);
      j["tol"] = ver_tol;
      j["result"] = pass ? "PASS" : "FAIL";
      std::cout << j.dump(2) << '\n' << (pass ? "PASS" : "FAIL") << '\n';
      return pass ? kOk : kFail;
    }

    if (*certify) {
      copt.threads = g.thread_count();
      copt.use_p1 = cert_rules.find("p1") != std::string::npos;
      copt.use_p2 = cert_rules.find("p2") != std::string::npos;
      copt.use_direct = cert_rules.find("direct") != std::string::npos;
      const auto rep = certify_uniqueness(cert_min, cert_max, copt);
      if (!cert_report.empty()) {
        Output out(cert_report);
        out.stream() << io::to_json(rep).dump(2) << '\n';
      }
      std::cout << io::summary_line(rep) << '\n';
      return rep.pass() ? kOk : kIncomplete;
    }

    if (*plotcmd) {
      std::string svg;
      if (plot_what == "region") {
        svg = plot::region_svg();
      } else {
        check_range(plot_min, plot_max, plot_n);
        bool ok = true;
        const auto pts = solve_grid(plot_min, plot_max, plot_n, g, ok);
        if (!ok) return kFail;
        svg = plot_what == "family" ? plot::family_svg(pts) : plot::masses_svg(pts);
      }
      Output out(plot_out);
      out.stream() << svg;
      return kOk;
    }

    if (*embedcmd) {
      const FamilyPoint fp = solve_family_point(emb_r15, g.solver());
      const auto ps = io::to_point_set(embed(fp.params), fp.masses);
      Output out(emb_out);
      if (emb_format == "json") {
        auto j = io::to_json(ps);
        j["r15"] = fp.params.r15;
        j["r16"] = fp.params.r16;
        j["r45"] = fp.params.r45;
        j["lambda"] = fp.masses.lambda;
        out.stream() << j.dump(2) << '\n';
      } else {
        io::write_xyz(out.stream(), ps, "r15=" + format_g17(fp.params.r15));
      }
      return kOk;
    }

    if (*spot) {
      bool all = true;
      for (const auto& v : spot_values) {
        const Rational q = parse_rational(v);
        const SpotCheck sc = spot_check_rational(q, g.solver());
        if (!sc.listed) std::cerr << "warning: r15 = " << v << " is not one of 1/2, 11/21, 3/5\n";
        auto sign = [](int s) { return s > 0 ? "+" : s < 0 ? "-" : "?"; };
        std::cout << "r15=" << v << " r16=[" << format_g17(sc.r16.lo()) << ',' << format_g17(sc.r16.hi())
                  << "] p1=[" << format_g17(sc.p1.lo()) << ',' << format_g17(sc.p1.hi()) << "] sign " << sign(sc.p1_sign)
                  << " p2=[" << format_g17(sc.p2.lo()) << ',' << format_g17(sc.p2.hi()) << "] sign " << sign(sc.p2_sign)
                  << (sc.consistent() ? " OK" : " UNDECIDED") << '\n';
        all = all && sc.consistent();
      }
      return all ? kOk : kFail;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::DomainError:
      case ErrorCode::ParseError:
      case ErrorCode::RegionViolation: return kUsage;
      case ErrorCode::BudgetExhausted: return kIncomplete;
      default: return kFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFail;
  }
  return kFail;
}

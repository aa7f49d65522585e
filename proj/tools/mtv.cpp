#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mtv/mtv.hpp"

using namespace mtv;

namespace {

struct Output {
  std::string format = "json";
  std::string path;
};

int emit(const json& report, const Output& out, int code) {
  const std::string text = render(report, out.format);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path);
    if (!f) {
      std::cerr << "mtv: cannot write '" << out.path << "'\n";
      return kExitInput;
    }
    f << text;
  }
  return code;
}

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output", out.path, "write the report to a file");
}

void add_trace_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--level", c.level, "level N (1 or prime)")->required();
  sub->add_option("--eta", c.eta, "eta quotient \"d:r,...\" (default: bundled for the level)");
  sub->add_option("--form", c.form_file, "JSON file with series g and g_fricke");
  sub->add_option("--lambda", c.lambda, "Eisenstein weight")->required();
  sub->add_option("--mu", c.mu, "power mu")->default_val(1);
  sub->add_option("--M", c.M, "target level M")->default_val(1);
  sub->add_option("--order", c.order, "truncation order T")->default_val(64);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mtv: exact verification of trace identities for modular forms"};
  app.require_subcommand(1);
  Output out;
  RunConfig cfg;
  long weight = 12, coeffs = 10, lambda = 4, level = 1, bound = 400, nmax = 30;
  std::string tau = "0.1+1.3i", form;

  auto* nf = app.add_subcommand("newforms", "level-one newforms of weight K");
  nf->add_option("--weight", weight, "weight K")->required();
  nf->add_option("--order", cfg.order, "truncation order T")->default_val(64);
  nf->add_option("--coeffs", coeffs, "number of coefficients to print")->default_val(10);
  add_output(nf, out);

  auto* th = app.add_subcommand("theorem", "verify the trace identity for g E_{lambda,N}");
  add_trace_options(th, cfg);
  add_output(th, out);

  auto* co = app.add_subcommand("corollary", "specialize the identity at a rational elliptic curve");
  add_trace_options(co, cfg);
  co->add_option("--curve", cfg.curve, "g2,g3");
  co->add_option("--weierstrass", cfg.weierstrass, "a1,a2,a3,a4,a6");
  add_output(co, out);

  auto* ph = app.add_subcommand("phi", "transformation polynomial coefficients");
  add_trace_options(ph, cfg);
  ph->add_option("--curve", cfg.curve, "g2,g3");
  ph->add_option("--weierstrass", cfg.weierstrass, "a1,a2,a3,a4,a6");
  add_output(ph, out);

  auto* orc = app.add_subcommand("oracle", "lattice sum against the closed-form Eisenstein series");
  orc->add_option("--lambda", lambda, "weight")->required();
  orc->add_option("--level", level, "level N")->required();
  orc->add_option("--tau", tau, "point as \"a+bi\"")->default_val("0.1+1.3i");
  orc->add_option("--bound", bound, "lattice bound B")->default_val(400);
  add_output(orc, out);

  auto* va = app.add_subcommand("validate", "check an externally supplied newform");
  va->add_option("--form", form, "JSON series file")->required();
  va->add_option("--nmax", nmax, "coefficient bound")->default_val(30);
  add_output(va, out);

  auto* fo = app.add_subcommand("form", "write a form file (g and its Fricke image) for an eta quotient");
  fo->add_option("--level", cfg.level, "level N")->required();
  fo->add_option("--eta", cfg.eta, "eta quotient (default: bundled for the level)");
  fo->add_option("--order", cfg.order, "truncation order T the file must support")->default_val(64);
  add_output(fo, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    cfg.prec = working_precision();
    CommandResult r;
    if (name == "newforms") r = cmd_newforms(weight, cfg.order, coeffs, cfg.prec);
    else if (name == "theorem") r = cmd_theorem(cfg);
    else if (name == "corollary") r = cmd_corollary(cfg);
    else if (name == "phi") r = cmd_phi(cfg);
    else if (name == "oracle") r = cmd_oracle(lambda, level, tau, bound, cfg.prec);
    else if (name == "form") r = cmd_form(cfg.level, cfg.eta, cfg.order);
    else r = cmd_validate(form, nmax);
    if (name != "form") r.report["exit_code"] = r.exit_code;
    return emit(r.report, out, r.exit_code);
  } catch (const std::exception& e) {
    std::cerr << "mtv " << name << ": " << e.what() << "\n";
    return emit(error_report(name, e), out, exit_code_for(e));
  }
}

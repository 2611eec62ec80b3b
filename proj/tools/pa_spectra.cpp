// pa-spectra: trapped-pair photoassociation spectra at the command line.
// One subcommand per output table; all numbers flow through the config file
// and land in CSV/plot files with the full provenance header.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "pa/commands.hpp"
#include "pa/config.hpp"
#include "pa/version.hpp"

namespace {

// single-line machine-parsable category on stderr, nonzero exit
int report(const char* category, const std::string& msg) {
  std::fprintf(stderr, "error.%s: %s\n", category, msg.c_str());
  return 1;
}

struct SubDefaults {
  int v_min, v_max, nt_max;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photoassociation of a trapped atom pair: level tables, "
               "Franck-Condon factors, linewidths, scattering-length scans"};
  app.set_version_flag("--version", std::string(pa::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  pa::CmdOptions opts;
  std::string factor;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", opts.out_dir, "output directory (default: current)");
    sub->add_option("--v-min", opts.v_min, "lowest vibrational label");
    sub->add_option("--v-max", opts.v_max, "highest vibrational label");
    sub->add_option("--nt-max", opts.nt_max, "highest trap level");
    sub->add_option("--factor", factor, "photon factor: unity|cos_half|cos_full");
  };

  auto* c_trap = app.add_subcommand("trap-levels", "trapped-pair levels and turning points");
  add_common(c_trap);
  auto* c_mol = app.add_subcommand("molecular-levels", "near-threshold vibrational ladder");
  add_common(c_mol);
  auto* c_fc = app.add_subcommand("fc", "bound-bound Franck-Condon matrix");
  add_common(c_fc);
  auto* c_lw = app.add_subcommand("linewidths", "spontaneous widths, bound-bound vs free-bound");
  add_common(c_lw);
  auto* c_scan = app.add_subcommand("scan", "scattering-length scan of one (v, n_t) pair; "
                                            "--v-min picks v, --nt-max picks n_t");
  add_common(c_scan);
  c_scan->add_option("--a-min", opts.a_min_nm, "scan start, nm");
  c_scan->add_option("--a-max", opts.a_max_nm, "scan end, nm");
  c_scan->add_option("--a-steps", opts.a_steps, "scan points");

  CLI11_PARSE(app, argc, argv);

  // subcommands share the option storage, so per-subcommand defaults apply
  // only where no flag was given
  CLI::App* sub = app.get_subcommands().front();
  const SubDefaults defaults = c_fc->parsed()     ? SubDefaults{33, 36, 2}
                               : c_scan->parsed() ? SubDefaults{35, 35, 0}
                                                  : SubDefaults{33, 39, 2};
  if (sub->count("--v-min") == 0) opts.v_min = defaults.v_min;
  if (sub->count("--v-max") == 0) opts.v_max = defaults.v_max;
  if (sub->count("--nt-max") == 0) opts.nt_max = defaults.nt_max;
  if (c_scan->parsed() && sub->count("--v-max") == 0) opts.v_max = opts.v_min;

  if (!factor.empty()) {
    if (factor == "unity") opts.factor_override = pa::PhotonFactor::Unity;
    else if (factor == "cos_half") opts.factor_override = pa::PhotonFactor::CosHalf;
    else if (factor == "cos_full") opts.factor_override = pa::PhotonFactor::CosFull;
    else return report("usage", "--factor must be unity|cos_half|cos_full");
  }

  try {
    const pa::RunConfig cfg = pa::load_config(config_path);
    if (c_trap->parsed()) pa::cmd_trap_levels(cfg, opts);
    else if (c_mol->parsed()) pa::cmd_molecular_levels(cfg, opts);
    else if (c_fc->parsed()) pa::cmd_fc(cfg, opts);
    else if (c_lw->parsed()) pa::cmd_linewidths(cfg, opts);
    else if (c_scan->parsed()) pa::cmd_scan(cfg, opts);
  } catch (const pa::ConfigError& e) {
    return report("config", e.what());
  } catch (const std::invalid_argument& e) {
    return report("domain", e.what());
  } catch (const std::runtime_error& e) {
    return report("numeric", e.what());
  } catch (const std::exception& e) {
    return report("internal", e.what());
  }
  return 0;
}

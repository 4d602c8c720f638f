#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "symrh/report.hpp"

using namespace symrh;

namespace {

struct Verb {
  const char* name;
  const char* help;
  unsigned stages;
};

const Verb kVerbs[] = {
    {"coeffs", "compute symmetric-power Dirichlet coefficients", kStageCoeffs},
    {"lvalues", "compute completed critical L-values with error budgets",
     kStageCoeffs | kStageValues},
    {"polys", "build period polynomials and verify their decompositions",
     kStageCoeffs | kStageValues | kStagePolys},
    {"verify-rh", "certify unit-circle zeros and unit-disk containments",
     kStageCoeffs | kStageValues | kStagePolys | kStageCertify},
    {"verify-lemmas", "check the proximity bounds |L(s) - 1|",
     kStageCoeffs | kStageLemmas},
    {"report", "full pipeline: values, polynomials, certificates, lemmas",
     kStageCoeffs | kStageValues | kStagePolys | kStageCertify | kStageLemmas},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "symrh: period polynomials of symmetric-power L-functions, their "
      "critical values, and rigorous unit-circle zero certificates"};
  app.require_subcommand(1);

  std::string config_path, out_dir, cache_dir;
  long precision = 0;
  unsigned jobs = 0;

  for (const Verb& v : kVerbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--config", config_path,
                    "experiment configuration file (JSON)");
    sub->add_option("--precision", precision, "working precision in bits");
    sub->add_option("--out", out_dir, "directory for report files");
    sub->add_option("--cache", cache_dir,
                    "cache directory for coefficients and values");
    sub->add_option("--jobs", jobs, "number of worker threads");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 3;
  }

  unsigned stages = 0;
  for (const Verb& v : kVerbs)
    if (app.get_subcommand(v.name)->parsed()) stages = v.stages;

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = config_from_file(config_path);
    } else {
      for (unsigned k : {12u, 16u, 18u}) {
        FormSpec f;
        f.weight = k;
        cfg.forms.push_back(f);
      }
    }
    if (precision) cfg.precision = precision;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    if (jobs) cfg.jobs = jobs;
    cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "symrh: invalid configuration: %s\n", e.what());
    return 3;
  }

  RunReport rep = run_experiments(cfg, stages, [](const std::string& line) {
    std::fprintf(stderr, "%s\n", line.c_str());
  });

  try {
    if (cfg.emit_json) {
      write_report_json(rep, cfg.out_dir + "/report.json");
      write_timings_json(rep, cfg.out_dir + "/timings.json");
    }
    if (cfg.emit_csv) {
      write_report_csv(rep, cfg.out_dir + "/report.csv");
      write_roots_csv(rep, cfg.out_dir + "/roots.csv");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "symrh: cannot write outputs: %s\n", e.what());
    return 3;
  }

  size_t ok = 0, skipped = 0, failed = 0;
  for (const InstanceResult& i : rep.instances) {
    if (i.status == "ok")
      ok++;
    else if (i.status == "skipped")
      skipped++;
    else
      failed++;
    std::printf("%-12s m=%u k=%-3u N=%-3lu %-8s%s%s\n", i.label.c_str(), i.m,
                i.k, i.level, i.status.c_str(),
                i.diagnostic.empty() ? "" : "  ", i.diagnostic.c_str());
  }
  std::printf("%zu instance(s): %zu ok, %zu skipped, %zu failed\n",
              rep.instances.size(), ok, skipped, failed);
  return rep.exit_code();
}

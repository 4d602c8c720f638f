#include "symrh/report.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace symrh {

namespace {

using nlohmann::json;

constexpr Prec kPb = 96;
constexpr size_t kBoundDigits = 14;

// Decimal scientific string that reparses to the identical mpfr value at the
// same precision (mpfr_get_str with n = 0 guarantees the round trip).
std::string exact_decimal(const Real& x) {
  if (x.is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, x.get(), MPFR_RNDN);
  if (!s) throw error("mpfr_get_str failed");
  std::string digits(s);
  mpfr_free_str(s);
  std::string out;
  if (digits[0] == '-')
    out = "-0." + digits.substr(1);
  else
    out = "0." + digits;
  out += "e" + std::to_string(static_cast<long>(e));
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp" + std::to_string(long(getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw error("cannot open for writing: " + tmp);
    f << content;
    f.flush();
    if (!f.good()) {
      std::remove(tmp.c_str());
      throw error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw error("cannot move cache file into place: " + path);
  }
}

bool slurp(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return f.good() || f.eof();
}

Strategy strategy_from_name(const std::string& s) {
  if (s == "direct") return Strategy::direct;
  if (s == "reflect") return Strategy::reflect;
  if (s == "afe") return Strategy::afe;
  throw error("unknown strategy name: " + s);
}

}  // namespace

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char ch : label) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
              (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    out += ok ? ch : '_';
  }
  return out.empty() ? std::string("form") : out;
}

bool within_proved_regime(unsigned m, unsigned k) {
  double thr =
      2.0 * (std::log2(13.0 / 9.0) + 2.0 * M_PI / std::log(2.0) + m) + 1.0;
  return double(k) > thr;
}

// ---------------- configuration ----------------

void ExperimentConfig::validate() const {
  if (precision < 64) throw error("precision must be at least 64 bits");
  if (forms.empty()) throw error("the form grid is empty");
  if (ms.empty()) throw error("no symmetric-power degrees requested");
  for (unsigned m : ms)
    if (m < 1) throw error("every m must be at least 1");
  if (rouche_samples < 64) throw error("rouche_samples must be at least 64");
  if (sign_grid_cap < 64) throw error("sign_grid_cap must be at least 64");
  if (jobs < 1) throw error("jobs must be at least 1");
  for (const FormSpec& f : forms) {
    if (f.path.empty()) {
      switch (f.weight) {
        case 12: case 16: case 18: case 20: case 22: case 26: break;
        default:
          throw error("unsupported built-in weight " +
                      std::to_string(f.weight));
      }
    }
    if (f.epsilon_override < -1 || f.epsilon_override > 1)
      throw error("epsilon_override must be -1, 0, or 1");
  }
}

nlohmann::json ExperimentConfig::echo() const {
  json fs = json::array();
  for (const FormSpec& f : forms) {
    json e;
    if (f.path.empty())
      e["builtin"] = f.weight;
    else
      e["path"] = f.path;
    e["epsilon_override"] = f.epsilon_override;
    e["pairing"] = f.pairing;
    fs.push_back(std::move(e));
  }
  return json{{"forms", fs},
              {"m", ms},
              {"precision", long(precision)},
              {"target_rel_log2", target_rel_log2},
              {"rouche_samples", rouche_samples},
              {"sign_grid_cap", sign_grid_cap},
              {"cache_dir", cache_dir},
              {"out_dir", out_dir},
              {"emit_json", emit_json},
              {"emit_csv", emit_csv},
              {"jobs", jobs}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    if (j.contains("forms")) {
      cfg.forms.clear();
      for (const auto& e : j.at("forms")) {
        FormSpec f;
        if (e.is_number_unsigned() || e.is_number_integer()) {
          f.weight = e.get<unsigned>();
        } else {
          if (e.contains("builtin")) f.weight = e.at("builtin").get<unsigned>();
          if (e.contains("path")) f.path = e.at("path").get<std::string>();
          if (e.contains("epsilon_override"))
            f.epsilon_override = e.at("epsilon_override").get<int>();
          if (e.contains("pairing")) f.pairing = e.at("pairing").get<bool>();
        }
        cfg.forms.push_back(std::move(f));
      }
    } else {
      for (unsigned k : {12u, 16u, 18u}) {
        FormSpec f;
        f.weight = k;
        cfg.forms.push_back(f);
      }
    }
    if (j.contains("m")) cfg.ms = j.at("m").get<std::vector<unsigned>>();
    if (j.contains("precision")) cfg.precision = j.at("precision").get<long>();
    if (j.contains("target_rel_log2"))
      cfg.target_rel_log2 = j.at("target_rel_log2").get<long>();
    if (j.contains("rouche_samples"))
      cfg.rouche_samples = j.at("rouche_samples").get<size_t>();
    if (j.contains("sign_grid_cap"))
      cfg.sign_grid_cap = j.at("sign_grid_cap").get<size_t>();
    if (j.contains("cache_dir"))
      cfg.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("emit_json")) cfg.emit_json = j.at("emit_json").get<bool>();
    if (j.contains("emit_csv")) cfg.emit_csv = j.at("emit_csv").get<bool>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<unsigned>();
  } catch (const json::exception& e) {
    throw error(std::string("config parse: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::string text;
  if (!slurp(path, text)) throw error("cannot read config file: " + path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw error(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

// ---------------- coefficient cache ----------------

SymPowerCoefficients cached_sym_coeffs(const NewformData& f, unsigned m,
                                       unsigned long X, Prec prec,
                                       const std::string& cache_dir,
                                       bool* hit) {
  if (hit) *hit = false;
  if (cache_dir.empty()) return sym_coeffs(f, m, X, prec);
  std::string path = cache_dir + "/lam_" + sanitize_label(f.label) + "_m" +
                     std::to_string(m) + "_p" + std::to_string(long(prec)) +
                     ".json";
  std::string text;
  if (slurp(path, text)) {
    try {
      json j = json::parse(text);
      if (j.at("label").get<std::string>() == f.label &&
          j.at("m").get<unsigned>() == m &&
          j.at("precision").get<long>() == long(prec) &&
          j.at("cutoff").get<unsigned long>() >= X) {
        const auto& arr = j.at("lambda");
        if (arr.size() >= X) {
          SymPowerCoefficients c;
          c.m = m;
          c.weight = f.weight;
          c.level = f.level;
          c.label = f.label;
          c.prec = prec;
          c.epsilon_hint = f.epsilon_hint_m1;
          c.lambda.reserve(X);
          for (unsigned long i = 0; i < X; i++)
            c.lambda.push_back(
                Real::from_string(arr.at(i).get<std::string>(), prec));
          if (hit) *hit = true;
          return c;
        }
      }
    } catch (...) {
      // corrupt or mismatched: recompute below
    }
  }
  SymPowerCoefficients c = sym_coeffs(f, m, X, prec);
  json j;
  j["label"] = c.label;
  j["m"] = m;
  j["precision"] = long(prec);
  j["cutoff"] = c.cutoff();
  json arr = json::array();
  for (const Real& v : c.lambda) arr.push_back(exact_decimal(v));
  j["lambda"] = std::move(arr);
  atomic_write(path, j.dump() + "\n");
  return c;
}

// ---------------- critical-value cache ----------------

namespace {

std::string value_cache_path(const std::string& dir, const std::string& label,
                             unsigned m, Prec prec, int eps_override,
                             bool pairing, long target) {
  return dir + "/lv_" + sanitize_label(label) + "_m" + std::to_string(m) +
         "_p" + std::to_string(long(prec)) + "_e" +
         std::to_string(eps_override) + (pairing ? "_pr" : "_np") + "_t" +
         std::to_string(target) + ".json";
}

std::optional<CriticalValues> parse_value_cache(const std::string& text,
                                                const SymPowerCoefficients& c,
                                                Prec prec, bool pairing) {
  try {
    json j = json::parse(text);
    if (j.at("label").get<std::string>() != c.label ||
        j.at("m").get<unsigned>() != c.m ||
        j.at("precision").get<long>() != long(prec))
      return std::nullopt;
    const long w = long(c.m) * (c.weight - 1), D = w - 1;
    const auto& va = j.at("values");
    if (long(va.size()) != D + 1) return std::nullopt;
    CriticalValues cv;
    cv.m = c.m;
    cv.k = c.weight;
    cv.level = c.level;
    cv.label = c.label;
    cv.epsilon = j.at("epsilon").get<int>();
    cv.prec = prec;
    cv.vals.assign(size_t(D + 1), CriticalValue{});
    for (long n = 0; n <= D; n++) {
      const auto& e = va.at(size_t(n));
      long s = e.at("s").get<long>();
      if (s != w - n) return std::nullopt;
      CriticalValue& slot = cv.vals[size_t(n)];
      slot.s = s;
      slot.value = Real::from_string(e.at("value").get<std::string>(), prec);
      slot.budget.series_tail =
          Real::from_string(e.at("budget").get<std::string>(), kPb);
      slot.strategy = strategy_from_name(e.at("strategy").get<std::string>());
    }
    if (pairing) {
      if (!j.contains("pairing")) return std::nullopt;
      for (const auto& e : j.at("pairing")) {
        long s = e.at("s").get<long>();
        if (s < 1 || s > w) return std::nullopt;
        CriticalValue& slot = cv.vals[size_t(s - 1)];
        if (slot.s != w - (s - 1)) return std::nullopt;
        slot.pairing_checked = true;
        slot.pairing_residual =
            Real::from_string(e.at("residual").get<std::string>(), kPb);
        slot.pairing_allowed =
            Real::from_string(e.at("allowed").get<std::string>(), kPb);
      }
    }
    return cv;
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace

CriticalValues cached_critical_values(const SymPowerCoefficients& c, Prec prec,
                                      int eps_override, bool pairing,
                                      long target_rel_log2,
                                      const std::string& cache_dir,
                                      bool* hit) {
  if (hit) *hit = false;
  if (cache_dir.empty())
    return critical_values(c, prec, eps_override, pairing, target_rel_log2);
  std::string path = value_cache_path(cache_dir, c.label, c.m, prec,
                                      eps_override, pairing, target_rel_log2);
  std::string text;
  if (slurp(path, text)) {
    if (auto cv = parse_value_cache(text, c, prec, pairing)) {
      if (hit) *hit = true;
      return *std::move(cv);
    }
  }
  CriticalValues fresh =
      critical_values(c, prec, eps_override, pairing, target_rel_log2);
  json j;
  j["label"] = fresh.label;
  j["m"] = fresh.m;
  j["precision"] = long(prec);
  j["epsilon"] = fresh.epsilon;
  json values = json::array();
  for (const CriticalValue& v : fresh.vals) {
    values.push_back(json{{"s", v.s},
                          {"value", exact_decimal(v.value)},
                          {"budget", exact_decimal(v.budget.total())},
                          {"strategy", strategy_name(v.strategy)}});
  }
  j["values"] = std::move(values);
  if (pairing) {
    json pr = json::array();
    for (const CriticalValue& v : fresh.vals) {
      if (!v.pairing_checked) continue;
      long s = fresh.w() - (&v - fresh.vals.data());
      pr.push_back(json{{"s", s},
                        {"residual", exact_decimal(v.pairing_residual)},
                        {"allowed", exact_decimal(v.pairing_allowed)}});
    }
    j["pairing"] = std::move(pr);
  }
  atomic_write(path, j.dump() + "\n");
  // read back: downstream state is the parsed file on cold and warm runs alike
  if (!slurp(path, text))
    throw error("cache file vanished after write: " + path);
  auto cv = parse_value_cache(text, c, prec, pairing);
  if (!cv) throw error("cache round-trip validation failed: " + path);
  return *std::move(cv);
}

// ---------------- instance pipeline ----------------

namespace {

json poly_json_real(const RealPolynomial& p, size_t digits) {
  json coeffs = json::array(), bounds = json::array();
  for (const Approx& a : p.c) {
    coeffs.push_back(a.val.to_string(digits));
    bounds.push_back(a.rad.to_string(kBoundDigits));
  }
  return json{{"poly", p.name},
              {"degree", p.degree()},
              {"coeffs", std::move(coeffs)},
              {"bounds", std::move(bounds)}};
}

json poly_json_complex(const ComplexPolynomial& p, size_t digits) {
  json coeffs = json::array(), bounds = json::array();
  for (const CApprox& a : p.c) {
    coeffs.push_back(
        json::array({a.val.re.to_string(digits), a.val.im.to_string(digits)}));
    bounds.push_back(a.rad.to_string(kBoundDigits));
  }
  return json{{"poly", p.name},
              {"degree", p.degree()},
              {"coeffs", std::move(coeffs)},
              {"bounds", std::move(bounds)}};
}

json cert_json(const ZeroCertificate& z, size_t digits) {
  json roots = json::array(), residuals = json::array(),
       moduli = json::array();
  for (const RootBox& b : z.roots) {
    roots.push_back(json::array(
        {b.rho.re.to_string(digits), b.rho.im.to_string(digits)}));
    residuals.push_back(b.residual_hi.to_string(kBoundDigits));
    moduli.push_back(b.rho.abs().to_string(kBoundDigits));
  }
  return json{{"poly", z.name},
              {"degree", z.degree},
              {"roots", std::move(roots)},
              {"residuals", std::move(residuals)},
              {"moduli", std::move(moduli)},
              {"max_circle_deviation", z.max_circle_deviation.to_string(kBoundDigits)},
              {"max_circle_deviation_hi",
               z.max_circle_deviation_hi.to_string(kBoundDigits)},
              {"deviation_rigorous", z.deviation_rigorous},
              {"sign_changes", z.sign_changes},
              {"grid", z.grid_size},
              {"verdicts", json{{"circle", to_string(z.circle)}}},
              {"note", z.note}};
}

struct Task {
  FormSpec spec;
  std::shared_ptr<const NewformData> form;
  std::string form_error;
  unsigned m = 1;
};

InstanceResult run_one(const ExperimentConfig& cfg, unsigned stages,
                       const Task& task) {
  auto t0 = std::chrono::steady_clock::now();
  InstanceResult r;
  r.m = task.m;
  json d;
  d["m"] = task.m;
  try {
    if (!task.form_error.empty()) throw error(task.form_error);
    const NewformData& f = *task.form;
    r.label = f.label;
    r.k = f.weight;
    r.level = f.level;
    d["label"] = f.label;
    d["k"] = f.weight;
    d["level"] = f.level;
    d["precision"] = long(cfg.precision);
    d["proved_regime"] = within_proved_regime(task.m, f.weight);
    const size_t digits = decimal_digits(cfg.precision);

    unsigned long X =
        required_cutoff(task.m, f.weight, f.level, cfg.precision,
                        cfg.target_rel_log2, task.spec.pairing);
    if (f.source == FormSource::file && f.cutoff() < X) {
      r.status = "skipped";
      r.diagnostic = "form file provides a(n) up to " +
                     std::to_string(f.cutoff()) + ", instance needs " +
                     std::to_string(X);
    } else {
      // cache-hit flags stay out of the detail record: a warm rerun must
      // serialize byte-identically to the cold run
      SymPowerCoefficients c =
          cached_sym_coeffs(f, task.m, X, cfg.precision, cfg.cache_dir);
      d["coefficients"] = json{{"cutoff", X}};

      if (stages & kStageLemmas) {
        long s0 = ((long(task.m) + 1) * (long(f.weight) - 1) + 1) / 2;
        std::vector<long> ss{s0, s0 + 2, s0 + 7};
        LemmaBoundsReport lr = check_lemma_bounds(c, ss);
        json arr = json::array();
        for (const LemmaBoundEntry& e : lr.entries) {
          arr.push_back(json{{"s", e.s},
                             {"checked", e.checked},
                             {"pass", e.pass},
                             {"lhs", e.lhs.to_string(kBoundDigits)},
                             {"bound", e.bound.to_string(kBoundDigits)},
                             {"convexity_ratio",
                              e.convexity_ratio.to_string(kBoundDigits)},
                             {"note", e.note}});
        }
        d["lemma_bounds"] = std::move(arr);
        r.lemma_failures = lr.failures;
        if (lr.failures) {
          r.status = "failed";
          r.diagnostic = "lemma bound violated";
        }
      }

      if (stages & (kStageValues | kStagePolys | kStageCertify)) {
        CriticalValues cv = cached_critical_values(
            c, cfg.precision, task.spec.epsilon_override, task.spec.pairing,
            cfg.target_rel_log2, cfg.cache_dir);
        r.epsilon = cv.epsilon;
        Real max_budget(kPb), worst_res(kPb), worst_allowed(kPb);
        size_t checked = 0, violations = 0;
        unsigned n_direct = 0, n_reflect = 0, n_afe = 0;
        for (const CriticalValue& v : cv.vals) {
          max_budget = Real::max(max_budget, v.budget.total());
          switch (v.strategy) {
            case Strategy::direct: n_direct++; break;
            case Strategy::reflect: n_reflect++; break;
            case Strategy::afe: n_afe++; break;
          }
          if (v.pairing_checked) {
            checked++;
            if (v.pairing_residual > v.pairing_allowed) violations++;
            if (v.pairing_residual > worst_res) {
              worst_res = v.pairing_residual;
              worst_allowed = v.pairing_allowed;
            }
          }
        }
        r.pairing_checked = checked;
        r.pairing_violations = violations;
        d["values"] =
            json{{"count", cv.vals.size()},
                 {"epsilon", cv.epsilon},
                 {"max_budget", max_budget.to_string(kBoundDigits)},
                 {"strategies", json{{"direct", n_direct},
                                     {"reflect", n_reflect},
                                     {"afe", n_afe}}},
                 {"pairing", json{{"checked", checked},
                                  {"violations", violations},
                                  {"worst_residual",
                                   worst_res.to_string(kBoundDigits)},
                                  {"worst_allowed",
                                   worst_allowed.to_string(kBoundDigits)}}}};
        if (violations) {
          r.status = "failed";
          r.diagnostic = "functional-equation pairing violation";
        }

        if (stages & (kStagePolys | kStageCertify)) {
          PeriodPolynomialBundle b = build_bundle(cv);
          d["normalizer"] = b.normalizer.val.to_string(digits);
          d["decomposition"] =
              json{{"worst_index", b.decomposition.worst_index},
                   {"worst_residual",
                    b.decomposition.worst_residual.to_string(kBoundDigits)},
                   {"worst_allowed",
                    b.decomposition.worst_allowed.to_string(kBoundDigits)},
                   {"pass", b.decomposition.pass}};
          json polys = json::array();
          polys.push_back(poly_json_complex(b.R, digits));
          polys.push_back(poly_json_real(b.P, digits));
          polys.push_back(poly_json_real(b.Q, digits));
          polys.push_back(poly_json_real(b.H, digits));
          if (b.odd_m) polys.push_back(poly_json_real(b.M, digits));
          d["polynomials"] = std::move(polys);
          r.degree = b.P.degree();

          if (stages & kStageCertify) {
            ZeroCertificate zc =
                certify_on_circle(b.P, cfg.precision, cfg.sign_grid_cap);
            r.circle = zc.circle;
            r.sign_changes = zc.sign_changes;
            DiskVerdict qd = certify_in_disk(b.Q, cfg.precision);
            DiskVerdict hd = certify_in_disk(b.H, cfg.precision);
            r.q_disk = qd;
            r.h_disk = hd;
            json certs;
            certs["P"] = cert_json(zc, digits);
            certs["Q"] = json{{"poly", b.Q.name},
                              {"verdicts", json{{"disk", to_string(qd)}}}};
            certs["H"] = json{{"poly", b.H.name},
                              {"verdicts", json{{"disk", to_string(hd)}}}};
            if (b.odd_m) {
              auto adaptive = [&](const RealPolynomial& A,
                                  const RealPolynomial& B, json& slot) {
                size_t S = cfg.rouche_samples;
                Real mg = rouche_margin(A, B, S, cfg.precision);
                while (!(mg.sign() > 0) && S * 2 <= 16 * cfg.rouche_samples) {
                  S *= 2;
                  mg = rouche_margin(A, B, S, cfg.precision);
                }
                slot = json{{"margin", mg.to_string(kBoundDigits)},
                            {"samples", S},
                            {"positive", mg.sign() > 0}};
                return mg;
              };
              json rhm, rqh;
              adaptive(b.H, b.M, rhm);
              adaptive(b.Q, b.H, rqh);
              certs["rouche_H_vs_M"] = std::move(rhm);
              certs["rouche_Q_vs_H"] = std::move(rqh);
            }
            d["certificates"] = std::move(certs);
          }
        }
      }
    }
  } catch (const error& e) {
    r.status = "failed";
    r.diagnostic = e.what();
  } catch (const std::exception& e) {
    r.status = "failed";
    r.diagnostic = e.what();
  }
  if (r.label.empty() && task.form) r.label = task.form->label;
  if (r.label.empty()) r.label = "unresolved";
  d["status"] = r.status;
  d["diagnostic"] = r.diagnostic;
  r.detail = std::move(d);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  return r;
}

}  // namespace

bool RunReport::all_ok() const {
  for (const InstanceResult& r : instances)
    if (r.status == "failed") return false;
  return true;
}

RunReport run_experiments(const ExperimentConfig& cfg, unsigned stages,
                          const std::function<void(const std::string&)>& log) {
  cfg.validate();
  RunReport rep;
  rep.toolchain = json{{"tool", "symrh"},
                       {"compiler", __VERSION__},
                       {"mpfr", MPFR_VERSION_STRING},
                       {"gmp", gmp_version}};
  rep.config_echo = cfg.echo();

  std::vector<Task> tasks;
  for (const FormSpec& fs : cfg.forms) {
    std::shared_ptr<const NewformData> form;
    std::string form_error;
    try {
      if (fs.path.empty()) {
        unsigned long X = 0;
        for (unsigned m : cfg.ms)
          X = std::max(X, required_cutoff(m, fs.weight, 1, cfg.precision,
                                          cfg.target_rel_log2, fs.pairing));
        form = std::make_shared<const NewformData>(
            builtin_newform(fs.weight, X));
      } else {
        form = std::make_shared<const NewformData>(load_newform(fs.path));
      }
    } catch (const std::exception& e) {
      form_error = e.what();
    }
    for (unsigned m : cfg.ms) {
      Task t;
      t.spec = fs;
      t.form = form;
      t.form_error = form_error;
      t.m = m;
      tasks.push_back(std::move(t));
    }
  }

  std::vector<InstanceResult> results(tasks.size());
  std::atomic<size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      results[i] = run_one(cfg, stages, tasks[i]);
      if (log) {
        std::lock_guard<std::mutex> lk(log_mutex);
        log(results[i].label + " m=" + std::to_string(results[i].m) + ": " +
            results[i].status +
            (results[i].diagnostic.empty() ? ""
                                           : " (" + results[i].diagnostic +
                                                 ")"));
      }
    }
  };
  unsigned J = std::min<size_t>(cfg.jobs, tasks.size());
  if (J <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < J; t++) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::sort(results.begin(), results.end(),
            [](const InstanceResult& a, const InstanceResult& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.m < b.m;
            });
  rep.instances = std::move(results);
  return rep;
}

// ---------------- writers ----------------

void write_report_json(const RunReport& r, const std::string& path) {
  json out;
  out["tool"] = "symrh";
  out["toolchain"] = r.toolchain;
  out["config"] = r.config_echo;
  json arr = json::array();
  for (const InstanceResult& i : r.instances) arr.push_back(i.detail);
  out["instances"] = std::move(arr);
  atomic_write(path, out.dump(1) + "\n");
}

namespace {

std::string csv_field(const json& j, const char* key) {
  if (!j.contains(key)) return "";
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

void write_report_csv(const RunReport& r, const std::string& path) {
  std::ostringstream out;
  out << "label,m,k,level,poly,degree,status,circle_verdict,disk_verdict,"
         "sign_changes,grid,max_circle_deviation,rouche_margin\n";
  for (const InstanceResult& i : r.instances) {
    const json& d = i.detail;
    if (!d.contains("polynomials")) {
      out << i.label << ',' << i.m << ',' << i.k << ',' << i.level
          << ",,," << i.status << ",,,,,,\n";
      continue;
    }
    const json* certs = d.contains("certificates") ? &d.at("certificates")
                                                   : nullptr;
    for (const json& p : d.at("polynomials")) {
      std::string name = p.at("poly").get<std::string>();
      std::string circle, disk, signs, grid, dev, rouche;
      if (certs) {
        if ((name == "P" || name == "p") && certs->contains("P")) {
          const json& c = certs->at("P");
          circle = csv_field(c.at("verdicts"), "circle");
          signs = csv_field(c, "sign_changes");
          grid = csv_field(c, "grid");
          dev = csv_field(c, "max_circle_deviation");
        }
        if ((name == "Q" || name == "q") && certs->contains("Q")) {
          disk = csv_field(certs->at("Q").at("verdicts"), "disk");
          if (certs->contains("rouche_Q_vs_H"))
            rouche = csv_field(certs->at("rouche_Q_vs_H"), "margin");
        }
        if ((name == "H" || name == "h") && certs->contains("H")) {
          disk = csv_field(certs->at("H").at("verdicts"), "disk");
          if (certs->contains("rouche_H_vs_M"))
            rouche = csv_field(certs->at("rouche_H_vs_M"), "margin");
        }
      }
      out << i.label << ',' << i.m << ',' << i.k << ',' << i.level << ','
          << name << ',' << p.at("degree").get<size_t>() << ',' << i.status
          << ',' << circle << ',' << disk << ',' << signs << ',' << grid
          << ',' << dev << ',' << rouche << '\n';
    }
  }
  atomic_write(path, out.str());
}

void write_roots_csv(const RunReport& r, const std::string& path) {
  std::ostringstream out;
  out << "label,m,poly,root_index,re,im,modulus\n";
  for (const InstanceResult& i : r.instances) {
    const json& d = i.detail;
    if (!d.contains("certificates")) continue;
    const json& certs = d.at("certificates");
    if (!certs.contains("P")) continue;
    const json& c = certs.at("P");
    const json& roots = c.at("roots");
    const json& moduli = c.at("moduli");
    for (size_t idx = 0; idx < roots.size(); idx++) {
      out << i.label << ',' << i.m << ','
          << c.at("poly").get<std::string>() << ',' << idx << ','
          << roots.at(idx).at(0).get<std::string>() << ','
          << roots.at(idx).at(1).get<std::string>() << ','
          << moduli.at(idx).get<std::string>() << '\n';
    }
  }
  atomic_write(path, out.str());
}

void write_timings_json(const RunReport& r, const std::string& path) {
  json arr = json::array();
  double total = 0;
  for (const InstanceResult& i : r.instances) {
    total += i.seconds;
    arr.push_back(json{{"label", i.label},
                       {"m", i.m},
                       {"status", i.status},
                       {"seconds", i.seconds}});
  }
  json out{{"total_seconds", total}, {"instances", std::move(arr)}};
  atomic_write(path, out.dump(1) + "\n");
}

}  // namespace symrh

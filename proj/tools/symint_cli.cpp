// symint: command-line front end for tables, integrals, identity census and scans.
//
// Exit codes: 0 success, 2 configuration/argument violation, 1 computation failure.

#include "symint/symint.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

namespace {

using namespace symint;

using AnyTable = std::variant<IntTable, RationalTable>;

AnyTable narrow_if_possible(RationalTable t) {
  IntTable narrowed;
  if (try_narrow(t, narrowed)) return narrowed;
  return t;
}

SieveWeights load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weights file '" + path + "'");
  return read_weights_csv(in, path);
}

/// A weights CSV becomes g * 1; a table CSV is used as is.
AnyTable load_function(const std::string& path, std::int64_t limit) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  in.seekg(0);
  if (header.rfind("q,", 0) == 0) return narrow_if_possible(convolve_with_unit(read_weights_csv(in, path), limit));
  return narrow_if_possible(read_table_csv(in, path));
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

struct IntegralArgs {
  std::string f = "dk";
  int k = 3;
  std::int64_t N = 0, h = 0;
  std::string mode = "continuous";
  std::string mixed_with;
  bool selberg = false;
  std::string model = "window";
  std::string out = "-";
};

int run_integral(const IntegralArgs& a) {
  if (a.N < 2 || a.h < 1) throw ConfigError("integral: need --n >= 2 and --h >= 1");
  const IntegralMode mode = parse_mode(a.mode);
  const std::int64_t limit = 2 * a.N + a.h;
  std::optional<SieveWeights> weights;
  AnyTable f;
  if (a.f == "dk") {
    if (a.k < 1) throw ConfigError("integral: need --k >= 1");
    f = sieve_divisor_k(a.k, limit);
  } else if (a.f.rfind("weights:", 0) == 0) {
    weights = load_weights(a.f.substr(8));
    f = narrow_if_possible(convolve_with_unit(*weights, limit));
  } else {
    throw ConfigError("integral: --f must be 'dk' or 'weights:PATH'");
  }

  IntegralReport report;
  if (a.selberg) {
    MeanValueModel model;
    if (a.model == "sieve") {
      if (!weights) throw ConfigError("integral: --model sieve needs --f weights:PATH");
      model = MeanValueModel::sieve_main_term(*weights);
    } else if (a.model == "window") {
      model = MeanValueModel::window_exact();
    } else if (a.model == "fit") {
      model = std::visit([&](const auto& t) { return fit_log_polynomial(t, a.N, a.h, a.k); }, f);
    } else {
      throw ConfigError("integral: unknown --model '" + a.model + "'");
    }
    report = std::visit([&](const auto& t) { return selberg_integral(t, a.N, a.h, model); }, f);
  } else if (!a.mixed_with.empty()) {
    const AnyTable f1 = load_function(a.mixed_with, limit);
    report = std::visit([&](const auto& x, const auto& y) { return mixed_symmetry_integral(x, y, a.N, a.h, mode); },
                        f, f1);
  } else {
    report = std::visit([&](const auto& t) { return symmetry_integral(t, a.N, a.h, mode); }, f);
  }
  emit(a.out, format_for_path(a.out) == ReportFormat::json ? to_json(report) : to_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symmetry and Selberg integrals of sieve-type arithmetic functions"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h

  std::string sieve_kind = "dk", sieve_out = "-";
  int sieve_k = 2;
  std::int64_t sieve_limit = 0;
  auto* sieve = app.add_subcommand("sieve", "Tabulate mu or d_k as an n,value CSV");
  sieve->add_option("--kind", sieve_kind)->check(CLI::IsMember({"mobius", "dk"}));
  sieve->add_option("--k", sieve_k);
  sieve->add_option("--limit", sieve_limit)->required();
  sieve->add_option("--out", sieve_out);

  IntegralArgs ia;
  auto* integral = app.add_subcommand("integral", "Symmetry, mixed or Selberg integral");
  integral->set_help_flag("--help", "Print this help message and exit");
  integral->add_option("--f", ia.f, "dk or weights:PATH");
  integral->add_option("--k", ia.k);
  integral->add_option("--n", ia.N)->required();
  integral->add_option("--h", ia.h)->required();
  integral->add_option("--mode", ia.mode)->check(CLI::IsMember({"discrete", "continuous"}));
  integral->add_option("--mixed-with", ia.mixed_with, "table or weights CSV for f1");
  integral->add_flag("--selberg", ia.selberg);
  integral->add_option("--model", ia.model)->check(CLI::IsMember({"sieve", "window", "fit"}));
  integral->add_option("--out", ia.out);

  std::int64_t qmax = 300, hmax = 300;
  std::string survey_out = "-";
  auto* survey = app.add_subcommand("identity-survey", "Exact census of the power-sum identities");
  survey->add_option("--qmax", qmax);
  survey->add_option("--hmax", hmax);
  survey->add_option("--out", survey_out);

  std::int64_t lN = 0, lh = 0, lD = 0, lQ = 0;
  bool ldashed = false;
  std::string lemma_out = "-";
  auto* lemma = app.add_subcommand("lemma-check", "Diagonal/off-diagonal split with g = g1 = 1");
  lemma->set_help_flag("--help", "Print this help message and exit");
  lemma->add_option("--n", lN)->required();
  lemma->add_option("--h", lh)->required();
  lemma->add_option("--d", lD)->required();
  lemma->add_option("--q", lQ)->required();
  lemma->add_flag("--dashed", ldashed);
  lemma->add_option("--out", lemma_out);

  std::string config_path;
  auto* scan = app.add_subcommand("scan", "Run a scan described by a key = value config file");
  scan->add_option("--config", config_path)->required();

  std::string render_in, render_format = "csv";
  auto* render_cmd = app.add_subcommand("render", "Re-render a CSV/JSON report");
  render_cmd->add_option("--in", render_in)->required();
  render_cmd->add_option("--format", render_format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sieve) {
      if (sieve_limit < 1) throw ConfigError("sieve: need --limit >= 1");
      std::ostringstream out;
      if (sieve_kind == "mobius") {
        write_csv(out, sieve_mobius(sieve_limit));
      } else {
        if (sieve_k < 1) throw ConfigError("sieve: need --k >= 1");
        write_csv(out, sieve_divisor_k(sieve_k, sieve_limit));
      }
      emit(sieve_out, out.str());
    } else if (*integral) {
      run_integral(ia);
    } else if (*survey) {
      if (qmax < 2 || hmax < 2) throw ConfigError("identity-survey: need --qmax, --hmax >= 2");
      auto census = run_identity_survey(qmax, hmax);
      emit(survey_out, render(census.table, format_for_path(survey_out)));
      if (survey_out != "-") write_file(survey_out + ".summary.json", to_json(census.summary));
      std::cerr << census.summary.note << "\n";
    } else if (*lemma) {
      if (!(1 < lD && lD <= lQ)) throw ConfigError("lemma-check: violated 1<D<=Q");
      if (lh < 1 || lN <= lh) throw ConfigError("lemma-check: violated 1<=h<N");
      const auto report = lemma_decomposition(SieveWeights::constant(lQ), SieveWeights::constant(lD), lN, lh,
                                              lD, lQ, ldashed);
      emit(lemma_out, format_for_path(lemma_out) == ReportFormat::json ? to_json(report) : to_csv(report));
    } else if (*scan) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config '" + config_path + "'");
      const ScanConfig cfg = parse_scan_config(in);
      run_scan(cfg);
    } else if (*render_cmd) {
      std::cout << render_report(render_in, parse_format(render_format));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

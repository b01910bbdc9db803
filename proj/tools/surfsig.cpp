// Command-line front end.
//
// Exit status: 0 success, 1 validation failure or mismatch, 2 parse error.

#include "surfsig/atlas.hpp"
#include "surfsig/bounds.hpp"
#include "surfsig/fibration.hpp"
#include "surfsig/meyer.hpp"
#include "surfsig/pipeline.hpp"
#include "surfsig/reproduce.hpp"
#include "surfsig/shipped.hpp"
#include "surfsig/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

namespace {

using nlohmann::ordered_json;
using namespace surfsig;

struct Common {
  std::string format = "json";
  std::string twist_sign;
  std::string config;
};

Convention resolve_convention(const Common& c) {
  if (!c.twist_sign.empty()) return {parse_twist_sign(c.twist_sign)};
  if (!c.config.empty() && std::filesystem::exists(c.config)) {
    const auto cal = calibrate_cached(c.config);
    if (cal.selected) return *cal.selected;
  }
  return {};
}

ordered_json convention_json(Convention conv) {
  return {{"twist_sign", to_string(conv.twist_sign)},
          {"word_order", std::string(Convention::word_order)},
          {"formula", conv.formula()}};
}

ordered_json checks_json(const CheckReport& r) {
  ordered_json a = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json j{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    a.push_back(j);
  }
  return a;
}

void print_text(const ordered_json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      std::cout << indent << it.key() << ":\n";
      print_text(v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      std::cout << indent << it.key() << ":\n";
      for (const auto& e : v) {
        std::string line;
        for (auto f = e.begin(); f != e.end(); ++f)
          line += (line.empty() ? "" : "  ") + f.key() + "=" + (f->is_string() ? f->get<std::string>() : f->dump());
        std::cout << indent << "  - " << line << "\n";
      }
    } else {
      std::cout << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int emit(const Common& c, ordered_json report, int status) {
  report["status"] = status;
  if (c.format == "text")
    print_text(report);
  else
    std::cout << report.dump(2) << "\n";
  return status;
}

ordered_json record_json(const FibrationRecord& r) {
  ordered_json j{{"id", r.id},
                 {"fiber_genus", r.fiber_genus},
                 {"base_genus", r.base_genus()},
                 {"signature", r.signature},
                 {"euler", r.euler()},
                 {"singular_fibers", r.fibers.size()},
                 {"mu_comb", mu_comb(r.fibers, r.fiber_genus)}};
  if (r.section.exists)
    j["section"] = {{"self_intersection", *r.section.self_intersection}, {"note", r.section.note}};
  else
    j["section"] = nullptr;
  j["provenance"] = r.provenance;
  return j;
}

ordered_json certificate_json(const BundleCertificate& c) {
  return {{"id", c.id}, {"h", c.h}, {"g", c.g}, {"sigma", c.sigma}, {"chain", c.chain}};
}

IntMatrix matrix_argument(const std::string& arg, Eigen::Index h, const std::optional<CurveAtlas>& atlas,
                          const Definitions& defs, Convention conv) {
  if (atlas) return evaluate(parse_word(arg), *atlas, defs, conv);
  return parse_matrix(arg, h);
}

std::optional<CurveAtlas> atlas_argument(const std::string& name, long h, Convention conv) {
  if (name.empty()) return std::nullopt;
  CurveAtlas a = load_atlas(name, conv);
  if (h > 0) a = stabilize(a, h);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signatures of surface bundles and Lefschetz fibrations from monodromy words"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--twist-sign", common.twist_sign, "positive or negative (default: calibrated)");
    sub->add_option("--config", common.config, "convention cache file");
  };

  long h = 0;
  std::string a_arg, b_arg, atlas_name, word_arg, fib_arg, defs_file;
  auto* tau_cmd = app.add_subcommand("tau", "evaluate Meyer's cocycle on two matrices or two words");
  tau_cmd->add_option("--h", h, "fiber genus");
  tau_cmd->add_option("--a", a_arg, "first matrix (rows ';', entries ',', or I) or word")->required();
  tau_cmd->add_option("--b", b_arg, "second matrix or word")->required();
  tau_cmd->add_option("--atlas", atlas_name, "read --a and --b as words over this atlas");
  tau_cmd->add_option("--defs", defs_file, "fibration file whose def lines are in scope");
  add_common(tau_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a word in Sp(2h,Z)");
  eval_cmd->add_option("--atlas", atlas_name, "atlas name or file")->required();
  eval_cmd->add_option("--word", word_arg, "monodromy word")->required();
  eval_cmd->add_option("--h", h, "stabilize the atlas to this genus");
  eval_cmd->add_option("--defs", defs_file, "fibration file whose def lines are in scope");
  add_common(eval_cmd);

  auto* sig_cmd = app.add_subcommand("sig", "signature, Euler characteristic and checks of a fibration");
  sig_cmd->add_option("file", fib_arg, "fibration file (shipped names such as prop45.fib work)")->required();
  sig_cmd->add_option("--h", h, "stabilize to this fiber genus");
  add_common(sig_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "certify an atlas or a fibration");
  verify_cmd->add_option("--atlas", atlas_name, "atlas name or file");
  verify_cmd->add_option("--fib", fib_arg, "fibration file");
  verify_cmd->add_option("--h", h, "stabilize to this genus");
  add_common(verify_cmd);

  std::string f2_arg, groups_arg, pipeline_arg;
  bool assert_iso = false, lifts = false;
  auto* sub_cmd = app.add_subcommand("subtract", "X1 - X2 along matched singular fibers");
  sub_cmd->add_option("f1", fib_arg, "first fibration");
  sub_cmd->add_option("f2", f2_arg, "second fibration");
  sub_cmd->add_option("--groups", groups_arg, "matched fibers, e.g. 9,10:1,2;3:4 (1-based)");
  sub_cmd->add_option("--pipeline", pipeline_arg, "run a pipeline file instead");
  sub_cmd->add_option("--h", h, "stabilize to this fiber genus");
  sub_cmd->add_flag("--assert-isomorphic", assert_iso, "accept multi-fiber groups without the class check");
  sub_cmd->add_flag("--coinciding-lifts", lifts, "section lifts of matched fibers coincide");
  add_common(sub_cmd);

  std::vector<std::string> bundles;
  auto* sum_cmd = app.add_subcommand("fibersum", "fiber sum of two bundles along zero sections");
  sum_cmd->add_option("--bundle", bundles, "h,g,sigma[,section] (section 0 or none); give twice")->expected(2);
  add_common(sum_cmd);

  long h_max = 12;
  auto* bounds_cmd = app.add_subcommand("bounds", "table of bounds on G_h");
  bounds_cmd->add_option("--h-max", h_max, "largest fiber genus");
  add_common(bounds_cmd);

  auto* rep_cmd = app.add_subcommand("reproduce", "calibrate the twist sign and check every claim");
  add_common(rep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ordered_json report;
  report["command"] = std::vector<std::string>(argv + 1, argv + argc);
  try {
    if (*rep_cmd) {
      const Convention requested = common.twist_sign.empty() ? Convention{} : Convention{parse_twist_sign(common.twist_sign)};
      const Calibration cal = common.config.empty() ? calibrate(requested) : calibrate_cached(common.config, requested);
      report["calibration"] = {{"requested", to_string(requested.twist_sign)},
                               {"requested_passed", cal.requested_passed},
                               {"other_passed", cal.other_passed},
                               {"from_cache", cal.from_cache},
                               {"diagnostic", cal.diagnostic}};
      if (!cal.selected) {
        report["convention"] = nullptr;
        return emit(common, report, 1);
      }
      report["convention"] = convention_json(*cal.selected);
      bool all = true;
      ordered_json rows = ordered_json::array();
      for (const auto& c : reproduce_claims(*cal.selected)) {
        rows.push_back({{"claim", c.id}, {"expected", c.expected}, {"computed", c.computed}, {"match", c.match}});
        all = all && c.match;
      }
      report["claims"] = rows;
      return emit(common, report, all ? 0 : 1);
    }

    const Convention conv = resolve_convention(common);
    report["convention"] = convention_json(conv);

    Definitions defs;
    if (!defs_file.empty()) defs = load_fibration(defs_file, {}, conv).defs;

    if (*tau_cmd) {
      const auto atlas = atlas_argument(atlas_name, h, conv);
      const Eigen::Index genus = atlas ? atlas->genus : h;
      if (genus < 1) throw surfsig::Error("--h is required for matrix input");
      const IntMatrix a = matrix_argument(a_arg, genus, atlas, defs, conv);
      const IntMatrix b = matrix_argument(b_arg, genus, atlas, defs, conv);
      report["tau"] = tau(a, b);
      return emit(common, report, 0);
    }
    if (*eval_cmd) {
      const auto atlas = atlas_argument(atlas_name, h, conv);
      const IntMatrix m = evaluate(parse_word(word_arg), *atlas, defs, conv);
      report["word"] = print_word(parse_word(word_arg));
      report["matrix"] = format_matrix(m);
      report["symplectic"] = is_symplectic(m);
      return emit(common, report, 0);
    }
    if (*sig_cmd) {
      const Fibration f = load_fibration(fib_arg, h > 0 ? std::optional<Eigen::Index>(h) : std::nullopt, conv);
      const CheckReport checks = validate(f, conv);
      report["fibration"] = f.id;
      report["fiber_genus"] = f.fiber_genus;
      report["base_genus"] = f.base_genus;
      report["mu_comb"] = mu_comb(f);
      report["euler"] = euler_characteristic(f);
      report["checks"] = checks_json(checks);
      if (const auto* bad = checks.first_failure()) {
        report["error"] = bad->name == "relator" ? "RelatorViolation: " + bad->detail : "check failed: " + bad->name;
        return emit(common, report, 1);
      }
      report["signature"] = signature(f, conv);
      return emit(common, report, 0);
    }
    if (*verify_cmd) {
      CheckReport checks;
      if (!atlas_name.empty()) {
        CurveAtlas a = parse_atlas(read_text(shipped_file("atlases/" + atlas_name + ".atlas") ? "atlases/" + atlas_name + ".atlas" : atlas_name),
                                   text::stem(atlas_name));
        if (h > 0) a = stabilize(a, h);
        report["atlas"] = a.name;
        report["genus"] = a.genus;
        checks.append(check_constraints(a, conv));
      }
      if (!fib_arg.empty()) {
        const Fibration f = load_fibration(fib_arg, h > 0 ? std::optional<Eigen::Index>(h) : std::nullopt, conv);
        report["fibration"] = f.id;
        checks.append(validate(f, conv), f.id + ": ");
      }
      if (atlas_name.empty() && fib_arg.empty()) throw surfsig::Error("give --atlas or --fib");
      report["checks"] = checks_json(checks);
      return emit(common, report, checks.ok() ? 0 : 1);
    }
    if (*sub_cmd) {
      const auto genus = h > 0 ? std::optional<Eigen::Index>(h) : std::nullopt;
      if (!pipeline_arg.empty()) {
        const auto run = run_pipeline(read_text(pipeline_arg), genus, conv);
        report["checks"] = checks_json(run.expectations);
        const auto& r = run.result_record();
        report["result"] = record_json(r);
        if (!run.expectations.ok()) return emit(common, report, 1);
        if (r.is_bundle()) report["certificate"] = certificate_json(certificate(r));
        return emit(common, report, 0);
      }
      if (fib_arg.empty() || f2_arg.empty()) throw surfsig::Error("give two fibration files or --pipeline");
      const auto f1 = summarize(load_fibration(fib_arg, genus, conv), conv);
      const auto f2 = summarize(load_fibration(f2_arg, genus, conv), conv);
      const SubtractOptions options{assert_iso, lifts};
      const FibrationRecord r = groups_arg.empty() ? subtract_full(f1, f2, options)
                                                   : subtract(f1, f2, parse_groups(groups_arg), options);
      report["result"] = record_json(r);
      if (r.is_bundle()) report["certificate"] = certificate_json(certificate(r));
      return emit(common, report, 0);
    }
    if (*sum_cmd) {
      std::vector<FibrationRecord> in;
      for (const auto& spec : bundles) {
        const auto parts = text::split(spec, ',');
        if (parts.size() < 3 || parts.size() > 4) throw ParseError(1, 1, {"h,g,sigma[,section]"}, spec);
        FibrationRecord r = trivial_bundle(text::to_int(parts[0], 1), text::to_int(parts[1], 1));
        r.id = "bundle(" + spec + ")";
        r.signature = text::to_int(parts[2], 1);
        r.section = parts.size() == 4 && parts[3] != "none"
                        ? SectionData::declared(text::to_int(parts[3], 1), "declared on the command line")
                        : SectionData{};
        r.provenance = {"declared " + r.id};
        in.push_back(r);
      }
      report["result"] = record_json(fiber_sum(in[0], in[1]));
      return emit(common, report, 0);
    }
    if (*bounds_cmd) {
      ordered_json rows = ordered_json::array();
      for (const auto& row : genus_bound_table(h_max, conv))
        rows.push_back({{"h", row.h},
                        {"lower", format_rational(row.lower)},
                        {"upper", format_rational(row.upper)},
                        {"upper_source", row.upper_source},
                        {"covering_bound", format_rational(row.covering_bound)},
                        {"sum_bound", format_rational(row.sum_bound)},
                        {"historical", format_rational(row.historical)},
                        {"kodaira_non_constructive", format_rational(row.kodaira)},
                        {"g_at_signature_4", row.g_at_one},
                        {"witnesses", row.witnesses}});
      report["rows"] = rows;
      return emit(common, report, 0);
    }
  } catch (const ParseError& e) {
    report["error"] = e.what();
    return emit(common, report, 2);
  } catch (const surfsig::Error& e) {
    report["error"] = e.what();
    return emit(common, report, 1);
  }
  return 1;
}

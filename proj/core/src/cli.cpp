#include "qdiff/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdiff/covariance.hpp"
#include "qdiff/differential.hpp"
#include "qdiff/parser.hpp"

namespace qdiff {

namespace {

struct CommonOpts {
  std::string algebra;
  std::string subst;
  bool json = false;
};

PresetId resolve_preset(const std::string& name) {
  auto id = preset_from_name(name);
  if (!id) throw UnknownPresetError("unknown preset: " + name);
  return *id;
}

Presentation resolved_presentation(const CommonOpts& o) {
  Presentation P = preset(resolve_preset(o.algebra));
  if (!o.subst.empty()) P = specialize(P, parse_bindings(o.subst));
  return P;
}

CalculusSpec resolved_calculus(const CommonOpts& o) {
  CalculusSpec C = calculus(resolve_preset(o.algebra));
  if (!o.subst.empty()) C = specialize(C, parse_bindings(o.subst));
  return C;
}

Element substitute_element(const Element& e, const Bindings& b) {
  Element out;
  for (const auto& [w, c] : e.terms()) out.add(w, c.substitute(b));
  return out;
}

int cmd_normalize(const CommonOpts& o, const std::string& expr,
                  std::ostream& out) {
  Presentation P = resolved_presentation(o);
  Element result = normalize(parse_element(expr, P), P);
  if (o.json)
    out << element_to_json(result, P) << "\n";
  else
    out << P.element_str(result) << "\n";
  return 0;
}

int cmd_diff(const CommonOpts& o, const std::string& expr, int times,
             std::ostream& out) {
  CalculusSpec C = resolved_calculus(o);
  Element result = d_times(parse_element(expr, C.pres), C, times);
  if (o.json)
    out << element_to_json(result, C.pres) << "\n";
  else
    out << C.pres.element_str(result) << "\n";
  return 0;
}

int cmd_check_confluence(const CommonOpts& o, std::ostream& out) {
  Presentation P = resolved_presentation(o);
  auto obs = critical_pairs(P);
  if (o.json) {
    nlohmann::json doc;
    doc["status"] = obs.empty() ? "pass" : "fail";
    doc["obstructions"] = nlohmann::json::array();
    for (const auto& ob : obs)
      doc["obstructions"].push_back(
          {{"overlap", P.word_str(ob.overlap)},
           {"difference", nlohmann::json::parse(element_to_json(ob.difference, P))}});
    out << doc.dump(2) << "\n";
  } else {
    out << obs.size() << " obstructions\n";
    for (const auto& ob : obs)
      out << "  " << P.word_str(ob.overlap) << ": "
          << P.element_str(ob.difference) << "\n";
  }
  return obs.empty() ? 0 : 1;
}

int cmd_check_nilpotency(const CommonOpts& o, int max_len, int samples,
                         std::ostream& out) {
  CalculusSpec C = resolved_calculus(o);
  CheckReport rep = check_nilpotency(C, max_len, samples);
  if (o.json) {
    out << rep.to_json(C.pres) << "\n";
  } else {
    out << "nilpotency d^" << C.nilpotency << " = 0: "
        << (rep.pass ? "pass" : "FAIL") << " (" << rep.checked << " words)\n";
    if (rep.witness)
      out << "  witness d^" << (C.nilpotency - 1)
          << " != 0 on " << C.pres.element_str(*rep.witness) << "\n";
    for (const auto& dtl : rep.details) out << "  " << dtl << "\n";
  }
  return rep.pass ? 0 : 1;
}

int cmd_check_leibniz(const CommonOpts& o, int samples, std::ostream& out) {
  CalculusSpec C = resolved_calculus(o);
  CheckReport rep = check_leibniz(C, samples);
  if (o.json) {
    out << rep.to_json(C.pres) << "\n";
  } else {
    out << "graded Leibniz rule: " << (rep.pass ? "pass" : "FAIL") << " ("
        << rep.checked << " sampled pairs)\n";
    for (size_t i = 0; i < rep.details.size(); ++i)
      out << "  defect at " << rep.details[i] << ": "
          << C.pres.element_str(rep.counterexamples[i]) << "\n";
  }
  return rep.pass ? 0 : 1;
}

int cmd_check_covariance(const CommonOpts& o, std::ostream& out) {
  PresetId id = resolve_preset(o.algebra);
  CovarianceSetup s = covariance_setup(id);
  std::vector<SourceRelation> rels;
  for (const auto& r : source_relations(id))
    if (r.covariant_block) rels.push_back(r);
  if (!o.subst.empty()) {
    Bindings b = parse_bindings(o.subst);
    s.plane = specialize(s.plane, b);
    s.group = specialize(s.group, b);
    for (auto& [key, v] : s.cross.entries) v = v.substitute(b);
    s.combined = specialize(s.combined, b);
    for (auto& r : rels) {
      r.lhs = substitute_element(r.lhs, b);
      r.rhs = substitute_element(r.rhs, b);
    }
  }
  bool all_ok = true;
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& t : s.transforms) {
    std::string tname = t.variant == TransformVariant::T ? "T"
                        : t.variant == TransformVariant::TransposeT
                            ? "transpose"
                            : "supertranspose";
    CovarianceReport rep = check_covariance(s.combined, s.plane, t, rels);
    all_ok = all_ok && rep.covariant;
    if (o.json) {
      for (const auto& [label, residual] : rep.residuals)
        doc.push_back({{"transform", tname},
                       {"relation", label},
                       {"residual_zero", residual.is_zero()}});
    } else {
      out << "coaction " << tname << ": "
          << (rep.covariant ? "all residuals zero" : "NONZERO residuals") << "\n";
      for (const auto& [label, residual] : rep.residuals)
        if (!residual.is_zero())
          out << "  " << label << ": " << s.combined.element_str(residual)
              << "\n";
    }
  }
  if (o.json) out << doc.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_solve_ansatz(bool json, bool linear_only, std::ostream& out) {
  AnsatzSolution sol = solve_ansatz(!linear_only);
  if (json) {
    out << sol.to_json() << "\n";
    return 0;
  }
  out << "rank " << sol.rank << " of 16";
  if (!sol.free_unknown.empty()) out << ", free unknown " << sol.free_unknown;
  out << "\n";
  for (const auto& [name, val] : sol.coefficients)
    out << "  " << name << " = " << val.str() << "\n";
  if (!sol.residual_constraints.empty()) {
    out << "residual constraints (must vanish):\n";
    for (const auto& c : sol.residual_constraints)
      out << "  " << c.str() << "\n";
  }
  if (!sol.associativity_roots.empty()) {
    out << "associativity roots for " << sol.free_unknown << ":";
    for (const auto& r : sol.associativity_roots) out << " " << r.str();
    out << "\nselected " << sol.free_unknown << " = " << sol.selected_root.str()
        << "\n";
  }
  return 0;
}

int cmd_presets(bool json, const std::string& export_dir, std::ostream& out) {
  if (!export_dir.empty()) {
    for (PresetId id : all_presets()) {
      std::string path = export_dir + "/" + preset_name(id) + ".json";
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path);
      f << presentation_to_json(preset(id)) << "\n";
      out << "wrote " << path << "\n";
    }
    return 0;
  }
  if (json) {
    nlohmann::json doc = nlohmann::json::array();
    for (PresetId id : all_presets())
      doc.push_back({{"name", preset_name(id)},
                     {"generators", preset(id).num_generators()},
                     {"rules", preset(id).rules().size()},
                     {"kind", is_group_preset(id) ? "group" : "calculus"}});
    out << doc.dump(2) << "\n";
  } else {
    for (PresetId id : all_presets()) {
      const Presentation& P = preset(id);
      out << preset_name(id) << ": " << P.num_generators() << " generators, "
          << P.rules().size() << " rules"
          << (is_group_preset(id) ? " (group)" : "") << "\n";
    }
  }
  return 0;
}

int cmd_limit(const CommonOpts& o, std::ostream& out) {
  if (o.subst.empty())
    throw ParseError("limit requires --subst bindings", 0);
  Presentation P = resolved_presentation(o);
  if (o.json) {
    out << presentation_to_json(P) << "\n";
  } else {
    for (const auto& r : P.rules())
      out << P.word_str(r.lhs) << " -> " << P.element_str(r.rhs) << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"exact workbench for differential calculi on quantum (super) planes"};
  app.require_subcommand(1);

  CommonOpts norm_o, diff_o, conf_o, nilp_o, leib_o, cov_o, limit_o;
  std::string norm_expr, diff_expr;
  int diff_times = 1, nilp_maxlen = 4, nilp_samples = 200, leib_samples = 200;
  bool solve_json = false, solve_linear = false, presets_json = false;
  std::string export_dir;

  auto add_common = [](CLI::App* cmd, CommonOpts& o, bool need_algebra = true) {
    auto* opt = cmd->add_option("--algebra", o.algebra, "preset id");
    if (need_algebra) opt->required();
    cmd->add_option("--subst", o.subst, "comma-separated var=expr bindings");
    cmd->add_flag("--json", o.json, "machine-readable output");
  };

  auto* normalize_cmd = app.add_subcommand("normalize", "reduce an expression to normal form");
  add_common(normalize_cmd, norm_o);
  normalize_cmd->add_option("expr", norm_expr, "expression")->required();

  auto* diff_cmd = app.add_subcommand("diff", "apply the exterior differential");
  add_common(diff_cmd, diff_o);
  diff_cmd->add_option("--times", diff_times, "apply d this many times");
  diff_cmd->add_option("expr", diff_expr, "expression")->required();

  auto* check_cmd = app.add_subcommand("check", "run a verification suite");
  check_cmd->require_subcommand(1);
  auto* conf_cmd = check_cmd->add_subcommand("confluence", "critical-pair analysis");
  add_common(conf_cmd, conf_o);
  auto* nilp_cmd = check_cmd->add_subcommand("nilpotency", "d^n = 0 sweep");
  add_common(nilp_cmd, nilp_o);
  nilp_cmd->add_option("--max-len", nilp_maxlen, "exhaustive word length");
  nilp_cmd->add_option("--samples", nilp_samples, "random longer words");
  auto* leib_cmd = check_cmd->add_subcommand("leibniz", "graded Leibniz sampling");
  add_common(leib_cmd, leib_o);
  leib_cmd->add_option("--samples", leib_samples, "random word pairs");
  auto* cov_cmd = check_cmd->add_subcommand("covariance", "coaction residuals");
  add_common(cov_cmd, cov_o);

  auto* solve_cmd = app.add_subcommand("solve", "derive calculus coefficients");
  solve_cmd->require_subcommand(1);
  auto* ansatz_cmd = solve_cmd->add_subcommand(
      "ansatz", "fix the 16 first-order coefficients");
  ansatz_cmd->add_flag("--json", solve_json, "machine-readable output");
  ansatz_cmd->add_flag("--linear-only", solve_linear,
                       "stop after the covariance and differentiation stages");

  auto* presets_cmd = app.add_subcommand("presets", "list or export the shipped algebras");
  presets_cmd->add_flag("--json", presets_json, "machine-readable output");
  presets_cmd->add_option("--export", export_dir, "write preset spec files here");

  auto* limit_cmd = app.add_subcommand("limit", "specialize parameters of a preset");
  add_common(limit_cmd, limit_o);

  std::vector<const char*> argv;
  argv.push_back("qdiff");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(norm_o, norm_expr, out);
    if (diff_cmd->parsed()) return cmd_diff(diff_o, diff_expr, diff_times, out);
    if (check_cmd->parsed()) {
      if (conf_cmd->parsed()) return cmd_check_confluence(conf_o, out);
      if (nilp_cmd->parsed())
        return cmd_check_nilpotency(nilp_o, nilp_maxlen, nilp_samples, out);
      if (leib_cmd->parsed()) return cmd_check_leibniz(leib_o, leib_samples, out);
      if (cov_cmd->parsed()) return cmd_check_covariance(cov_o, out);
    }
    if (solve_cmd->parsed() && ansatz_cmd->parsed())
      return cmd_solve_ansatz(solve_json, solve_linear, out);
    if (presets_cmd->parsed()) return cmd_presets(presets_json, export_dir, out);
    if (limit_cmd->parsed()) return cmd_limit(limit_o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownPresetError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecializationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedScalarError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace qdiff

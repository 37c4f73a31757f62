#pragma once

// The `stacky` command line. Exit codes: 0 success, 1 parse/IO/usage,
// 2 validation failure, 3 domain error.

#include "selftest.hpp"
#include "stacky/stacky.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace stacky::tools {

enum ExitCode : int { kOk = 0, kParse = 1, kValidation = 2, kDomain = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

inline Cone parse_index_list(const std::string& text) {
  Cone out;
  for (const auto& p : split_commas(text)) {
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad index list: \"" + text + "\"");
    out.push_back(std::stoul(p));
  }
  return out;
}

inline IntVector parse_integer_list(const std::string& text) {
  IntVector out;
  for (const auto& p : split_commas(text)) {
    Integer x;
    if (p.empty() || p.find_first_not_of("-0123456789") != std::string::npos || x.set_str(p, 10) != 0)
      throw UsageError("bad integer list: \"" + text + "\"");
    out.push_back(x);
  }
  return out;
}

inline json cone_json(const Cone& c) { return json(c); }

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Invariants of toric Deligne-Mumford stacks from stacky fan data", "stacky"};
    app.require_subcommand(1);
    app.add_flag("--json", json_, "Machine-readable JSON output");
    app.add_flag("--quiet", quiet_, "Suppress normal output; rely on the exit code");

    std::string file, out_path, cone_sel, zeros_sel, a_list, label_list;
    bool all = false, generators = false, report = false;
    std::size_t count = 200;

    auto* validate = app.add_subcommand("validate", "Check the stacky fan conditions");
    validate->add_option("file", file, "Fan document")->required();
    auto* group = app.add_subcommand("group", "DG(beta), G and G/G0");
    group->add_option("file", file, "Fan document")->required();
    auto* isotropy = app.add_subcommand("isotropy", "Isotropy groups of cones or points");
    isotropy->add_option("file", file, "Fan document")->required();
    auto* cone_opt = isotropy->add_option("--cone", cone_sel, "Cone as comma-separated ray indices");
    auto* zeros_opt = isotropy->add_option("--zeros", zeros_sel, "Zero set of a point");
    auto* all_opt = isotropy->add_flag("--all", all, "Every face of every maximal cone");
    isotropy->add_flag("--generators", generators, "Explicit generators (free N only)");
    auto* classify = app.add_subcommand("classify", "Weighted projective classification");
    classify->add_option("file", file, "Fan document")->required();
    auto* cover = app.add_subcommand("cover", "Write the universal-cover fan");
    cover->add_option("file", file, "Fan document")->required();
    cover->add_option("--out", out_path, "Output document path")->required();
    auto* sheared = app.add_subcommand("sheared", "Labelled sheared simplex invariants");
    sheared->add_option("--a", a_list, "Primitive positive vector a1,...,ad")->required();
    sheared->add_option("--labels", label_list, "Facet labels m0,...,md")->required();
    auto* sheared_zeros = sheared->add_option("--zeros", zeros_sel, "Zero set of a point");
    sheared->add_flag("--report", report, "Full invariant report");
    auto* selftest = app.add_subcommand("selftest", "Randomized closed-form vs pipeline check");
    selftest->add_option("--count", count, "Number of random sheared simplices");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e, out_, err_);
      return rc == 0 ? kOk : kParse;
    }

    try {
      if (validate->parsed()) return cmd_validate(file);
      if (group->parsed()) return cmd_group(file);
      if (isotropy->parsed()) {
        const int selectors = int(cone_opt->count() > 0) + int(zeros_opt->count() > 0) +
                              int(all_opt->count() > 0);
        if (selectors != 1) throw UsageError("give exactly one of --cone, --zeros, --all");
        return cmd_isotropy(file, cone_opt->count() ? std::optional(cone_sel) : std::nullopt,
                            zeros_opt->count() ? std::optional(zeros_sel) : std::nullopt,
                            generators);
      }
      if (classify->parsed()) return cmd_classify(file);
      if (cover->parsed()) return cmd_cover(file, out_path);
      if (sheared->parsed())
        return cmd_sheared(a_list, label_list,
                           sheared_zeros->count() ? std::optional(zeros_sel) : std::nullopt,
                           report || !sheared_zeros->count());
      if (selftest->parsed()) return cmd_selftest(count);
    } catch (const UsageError& e) {
      err_ << "usage error: " << e.what() << '\n';
      return kParse;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      switch (e.category()) {
        case ErrorCategory::Parse: return kParse;
        case ErrorCategory::Validation: return kValidation;
        case ErrorCategory::Domain: return kDomain;
      }
    }
    return kParse;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  bool json_ = false;
  bool quiet_ = false;
  std::ostringstream text_;

  /// Buffered report, emitted unless --quiet.
  int finish(const json& j, int rc = kOk) {
    if (!quiet_) {
      if (json_)
        out_ << j.dump(2) << '\n';
      else
        out_ << text_.str();
    }
    return rc;
  }

  /// Any failure to build the fan from a readable document is a validation error.
  StackyFan load_fan(const std::string& path) {
    const FanDocument doc = read_document(path);
    try {
      return fan_from_document(doc);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      throw ValidationExit{};
    }
  }
  struct ValidationExit {};

  template <class F>
  int with_fan(const std::string& path, F&& body) {
    try {
      const StackyFan fan = load_fan(path);
      return body(fan);
    } catch (const ValidationExit&) {
      return kValidation;
    }
  }

  int cmd_validate(const std::string& path) {
    const FanDocument doc = read_document(path);
    json checks = json::array();
    bool ok = true;
    auto record = [&](const std::string& condition, const char* status, const std::string& detail) {
      checks.push_back({{"condition", condition}, {"status", status}, {"detail", detail}});
      text_ << '[' << status << "] " << condition << (detail.empty() ? "" : ": " + detail) << '\n';
    };
    try {
      check_fan_shape(doc.n_module, doc.beta, doc.max_cones);
      record("shape", "pass", "");
      std::vector<Cone> cones;
      for (const auto& c : doc.max_cones) cones.push_back(normalize_cone(c));
      const IntMatrix lift = normalize_lift(doc.n_module, doc.beta);
      for (const auto& c : check_fan_conditions(doc.n_module, lift, cones, doc.polytopal)) {
        if (c.skipped)
          record(c.condition, "skip", "not flagged polytopal");
        else
          record(c.condition, c.passed ? "pass" : "fail", c.detail);
        ok = ok && c.passed;
      }
    } catch (const Error& e) {
      record("shape", "fail", e.what());
      ok = false;
    }
    text_ << (ok ? "valid stacky fan\n" : "invalid stacky fan\n");
    return finish({{"valid", ok}, {"checks", checks}}, ok ? kOk : kValidation);
  }

  int cmd_group(const std::string& path) {
    return with_fan(path, [&](const StackyFan& fan) {
      const auto dg = dual_group(fan);
      const auto g = structure_of_g(fan);
      const auto comp = component_group(fan);
      text_ << "DG(beta) = " << dg << '\n';
      text_ << "G = " << g.to_string() << '\n';
      if (comp.is_trivial())
        text_ << "G/G0 trivial (G connected)\n";
      else
        text_ << "G/G0 = " << comp << '\n';
      return finish({{"dual_group", group_to_json(dg)},
                     {"G", {{"torus_rank", g.torus_rank},
                            {"finite_part", group_to_json(g.finite_part)},
                            {"text", g.to_string()}}},
                     {"component_group", group_to_json(comp)}});
    });
  }

  int cmd_isotropy(const std::string& path, const std::optional<std::string>& cone_sel,
                   const std::optional<std::string>& zeros_sel, bool generators) {
    return with_fan(path, [&](const StackyFan& fan) {
      std::vector<std::pair<Cone, std::optional<Cone>>> targets;  // cone, zero set
      if (cone_sel) {
        targets.push_back({checked_face(fan, parse_index_list(*cone_sel)), std::nullopt});
      } else if (zeros_sel) {
        const Cone z = parse_index_list(*zeros_sel);
        targets.push_back({minimal_cone(fan, {z}), normalize_cone(z)});
      } else {
        for (const auto& f : faces(fan)) targets.push_back({f, std::nullopt});
      }
      json rows = json::array();
      for (const auto& [cone, zeros] : targets) {
        const auto quotient = cone_quotient(fan, cone);
        const auto gamma = quotient.torsion();
        json row{{"cone", cone_json(cone)},
                 {"isotropy", group_to_json(gamma)},
                 {"quotient", group_to_json(quotient)}};
        if (zeros) {
          row["zeros"] = cone_json(*zeros);
          text_ << "zeros " << cone_to_string(*zeros) << " -> cone ";
        }
        text_ << cone_to_string(cone) << ": " << gamma << '\n';
        if (generators) {
          json gens = json::array();
          for (const auto& g : isotropy_generators(fan, cone)) {
            json coords = json::array();
            for (const auto& x : g.character.coords) coords.push_back(x.get_str());
            gens.push_back({{"coords", coords}, {"order", integer_to_json(g.order)}});
            text_ << "  generator " << g.character.to_string() << " of order " << g.order << '\n';
          }
          row["generators"] = gens;
        }
        rows.push_back(row);
      }
      return finish({{"cones", rows}});
    });
  }

  int cmd_classify(const std::string& path) {
    return with_fan(path, [&](const StackyFan& fan) {
      const auto r = classify_wps(fan);
      json j{{"kind", std::string(kind_name(r.kind))},
             {"weights", vector_to_json(r.weights)},
             {"component_group", group_to_json(r.component_group)},
             {"cover_weights_source", r.cover_weights_source}};
      switch (r.kind) {
        case WpsKind::WeightedProjective: {
          const bool gcd_ok = torsion_gcd_check(fan);
          j["torsion_gcd_check"] = gcd_ok;
          text_ << "weighted projective: " << weights_to_string(r.weights) << '\n';
          text_ << "gcd(weights) = " << gcd_of(r.weights) << ", |Tor(N)| = "
                << fan.module().torsion_subgroup().torsion_order() << (gcd_ok ? " (agree)" : " (DISAGREE)")
                << '\n';
          break;
        }
        case WpsKind::FakeWeightedProjective:
          text_ << "fake weighted projective: cover " << weights_to_string(r.weights)
                << ", Lambda = " << r.component_group << '\n';
          text_ << "X = " << weights_to_string(r.weights) << "/Lambda\n";
          break;
        case WpsKind::Neither:
          text_ << "neither (n != d+1)\n";
          text_ << fan.ray_count() << " rays in rank " << fan.rank() << '\n';
          break;
      }
      return finish(j);
    });
  }

  int cmd_cover(const std::string& path, const std::string& out_path) {
    const FanDocument original = read_document(path);
    return with_fan(path, [&](const StackyFan& fan) {
      const StackyFan cov = universal_cover(fan);
      json meta = original.metadata;
      meta["name"] = (original.metadata.contains("name") && original.metadata["name"].is_string()
                          ? original.metadata["name"].get<std::string>()
                          : std::string("fan")) +
                     " (universal cover)";
      write_document(document_from_fan(cov, meta), out_path);

      const auto lambda = component_group(fan);
      const auto gq = is_global_quotient(fan);
      std::string cover_name = "X(N0,Sigma0,beta0)";
      if (cov.ray_count() == cov.rank() + 1) {
        const auto r = classify_wps(cov);
        if (r.kind == WpsKind::WeightedProjective) cover_name = weights_to_string(r.weights);
      }
      text_ << "wrote " << out_path << '\n';
      if (lambda.is_trivial()) text_ << "cover = self (beta surjective)\n";
      if (gq.global_quotient)
        text_ << "global quotient: [" << cover_name << "/" << lambda << "]\n";
      else
        text_ << "not a global quotient (N_sigma != N0 at cone " << cone_to_string(*gq.witness) << ")\n";
      json j{{"out", out_path},
             {"cover", document_to_json(document_from_fan(cov, meta))},
             {"component_group", group_to_json(lambda)},
             {"global_quotient", gq.global_quotient}};
      if (gq.witness) j["witness"] = cone_json(*gq.witness);
      return finish(j);
    });
  }

  int cmd_sheared(const std::string& a_list, const std::string& label_list,
                  const std::optional<std::string>& zeros_sel, bool report) {
    const ShearedSimplex s = make_sheared(parse_integer_list(a_list), parse_integer_list(label_list));
    const StackyFan fan = build(s);
    json j{{"beta", document_to_json(document_from_fan(fan))["beta"]}};
    if (report) {
      const auto comp = component_group_closed(s);
      const auto crit = wps_criterion(s);
      const auto cls = classify_wps(fan);
      const bool gq = global_quotient_closed(s);
      const bool smooth = is_connected_free(fan);
      text_ << "beta = " << fan.lift() << '\n';
      if (comp.is_trivial())
        text_ << "G/G0 trivial\n";
      else
        text_ << "G/G0 = " << comp << '\n';
      if (crit.is_wps)
        text_ << "WPS: " << weights_to_string(crit.weights) << '\n';
      else
        text_ << "WPS: no (fake weighted projective, cover " << weights_to_string(cls.weights) << ")\n";
      text_ << (gq ? "global quotient\n" : "not global quotient\n");
      text_ << (smooth ? "smooth\n" : "orbifold (nontrivial isotropy)\n");
      j["component_group"] = group_to_json(comp);
      j["wps"] = crit.is_wps;
      j["weights"] = vector_to_json(crit.is_wps ? crit.weights : cls.weights);
      j["global_quotient"] = gq;
      j["smooth"] = smooth;
      if (s.dim() == 2) {
        json table = json::array();
        std::size_t k = 1;
        for (const auto& row : table1(s)) {
          text_ << "table row " << k++ << " [" << row.labels << "; " << row.lengths << "] at zeros "
                << cone_to_string(row.vertex) << ": tabulated " << row.tabulated << ", pipeline "
                << row.pipeline << (row.agrees ? ", agree" : ", DISAGREE")
                << (row.note.empty() ? "" : " (" + row.note + ")") << '\n';
          table.push_back({{"labels", row.labels},
                           {"lengths", row.lengths},
                           {"vertex", cone_json(row.vertex)},
                           {"tabulated", group_to_json(row.tabulated)},
                           {"pipeline", group_to_json(row.pipeline)},
                           {"agrees", row.agrees},
                           {"note", row.note}});
        }
        j["table1"] = table;
      }
    }
    if (zeros_sel) {
      const auto e = isotropy_extension(s, {parse_index_list(*zeros_sel)});
      text_ << "sub " << e.sub << "; quot " << e.quot << "; full " << e.full << '\n';
      j["extension"] = {{"sub", group_to_json(e.sub)},
                        {"quot", group_to_json(e.quot)},
                        {"full", group_to_json(e.full)}};
    }
    return finish(j);
  }

  int cmd_selftest(std::size_t count) {
    std::uint64_t seed = 1;
    if (const char* env = std::getenv("STACKY_SEED")) seed = std::strtoull(env, nullptr, 10);
    std::ostringstream log;
    const std::size_t failures = run_selftest(count, seed, log);
    text_ << log.str();
    text_ << "selftest: " << count << " sheared simplices, seed " << seed << ", "
          << (failures == 0 ? "all agree" : std::to_string(failures) + " with mismatches") << '\n';
    return finish({{"count", count}, {"seed", seed}, {"failures", failures}},
                  failures == 0 ? kOk : kDomain);
  }
};

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace stacky::tools

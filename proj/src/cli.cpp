#include "rationing/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rationing/axioms.hpp"
#include "rationing/io.hpp"
#include "rationing/oracle.hpp"
#include "rationing/rules.hpp"

namespace rationing::cli {

namespace {

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << text;
}

UnreservedSplit parse_split(const std::string& text) {
  const auto comma = text.find(',');
  const auto number = [&text](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("split must look like q1,q2, got '" + text + "'");
    }
    return std::stoul(s);
  };
  if (comma == std::string::npos) throw ValidationError("split must look like q1,q2, got '" + text + "'");
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// One "path value" line per leaf, so the table carries exactly the document.
void flatten(const Json& v, const std::string& path, std::ostream& os) {
  if (v.is_object()) {
    if (v.empty()) os << path << " {}\n";
    for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, os);
  } else if (v.is_array()) {
    if (v.empty()) os << path << " []\n";
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "." + std::to_string(i), os);
  } else {
    os << path << ' ' << scalar(v) << '\n';
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "table") {
    std::ostringstream os;
    flatten(doc, "", os);
    return os.str();
  }
  return doc.dump(2) + "\n";
}

void require_format(const std::string& format) {
  if (format != "json" && format != "table") throw ValidationError("unknown format '" + format + "'");
}

RuleSpec rule_spec(const std::string& name, const std::string& split, const std::string& prefs,
                   const Instance& inst, std::istream& in) {
  RuleSpec spec;
  const auto kind = parse_rule(name);
  if (!kind) throw PreconditionError("unknown rule '" + name + "'");
  spec.kind = *kind;
  if (spec.kind == RuleKind::srr || spec.kind == RuleKind::soft) {
    if (split.empty()) throw PreconditionError(std::string(to_string(spec.kind)) + " needs --split q1,q2");
    spec.split = parse_split(split);
  }
  if (spec.kind == RuleKind::da) {
    spec.prefs = prefs.empty() ? Preferences(inst.agent_count())
                               : preferences_from_json(inst, parse_json(read_text(prefs, in)));
  }
  return spec;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const OracleBoundError& e) {
    err << "oracle bound: " << e.what() << '\n';
    return kPreconditionError;
  }
}

Json allocation_document(const RuleSpec& rule, const Instance& inst, const Instance& out_inst,
                         const Matching& m) {
  Json doc;
  doc["rule"] = to_string(rule.kind);
  if (out_inst.has_unreserved()) {
    const auto size = [&out_inst](std::optional<CategoryId> c) {
      return c ? out_inst.category(*c).quota : std::size_t{0};
    };
    doc["split"] = split_to_json({size(out_inst.unreserved_first()), size(out_inst.unreserved_last())});
  }
  doc["matching"] = matching_to_json(out_inst, m);
  Json unmatched = Json::array();
  for (AgentId a : out_inst.baseline()) {
    if (!m.matched(a)) unmatched.push_back(out_inst.agent_name(a));
  }
  doc["unmatched"] = std::move(unmatched);
  doc["size"] = m.size();
  Json usage = Json::array();
  for (std::size_t c = 0; c < out_inst.category_count(); ++c) {
    const auto& cat = out_inst.category(category_id(c));
    Json u;
    u["category"] = cat.name;
    u["quota"] = cat.quota;
    u["used"] = m.load(category_id(c));
    usage.push_back(std::move(u));
  }
  doc["utilization"] = std::move(usage);
  if (rule.kind == RuleKind::rr) {
    const auto cats = inst.all_categories();
    doc["trace"] = trace_to_json(inst, rr(inst, cats, rule.rr_options).trace);
  }
  return doc;
}

std::vector<Axiom> requested_axioms(const std::string& list, const std::optional<RuleSpec>& rule,
                                    const Instance& inst) {
  if (list == "all") {
    if (rule) return guaranteed_axioms(rule->kind);
    std::vector<Axiom> out{Axiom::eligibility, Axiom::respect_priorities, Axiom::nonwasteful,
                           Axiom::max_size};
    if (inst.has_unreserved()) {
      out.push_back(Axiom::max_beneficiary);
      out.push_back(Axiom::order_preservation);
    }
    return out;
  }
  std::vector<Axiom> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto a = parse_axiom(name);
    if (!a) throw ValidationError("unknown axiom '" + name + "'");
    out.push_back(*a);
  }
  return out;
}

}  // namespace

int allocate(const AllocateFlags& flags, Streams io) {
  return guarded(io.err, [&] {
    require_format(flags.format);
    const Instance inst = parse_instance(read_text(flags.instance, io.in));
    const RuleSpec rule = rule_spec(flags.rule, flags.split, flags.prefs, inst, io.in);
    const Instance out_inst = output_instance(rule, inst);
    const Matching m = run_rule(rule, inst);
    write_text(flags.out, render(allocation_document(rule, inst, out_inst, m), flags.format), io.out);
    return static_cast<int>(kPass);
  });
}

int check(const CheckFlags& flags, Streams io) {
  return guarded(io.err, [&] {
    require_format(flags.format);
    if (flags.matching.empty() == flags.rule.empty()) {
      throw ValidationError("pass exactly one of --matching and --rule");
    }
    const Instance inst = parse_instance(read_text(flags.instance, io.in));

    std::optional<RuleSpec> rule;
    Instance target = inst;
    std::optional<Matching> m;
    if (!flags.rule.empty()) {
      rule = rule_spec(flags.rule, flags.split, flags.prefs, inst, io.in);
      target = output_instance(*rule, inst);
      m = run_rule(*rule, inst);
    } else {
      const Json doc = parse_json(read_text(flags.matching, io.in));
      std::optional<UnreservedSplit> split;
      if (doc.is_object() && doc.contains("split")) split = split_from_json(doc.at("split"));
      if (!flags.split.empty()) split = parse_split(flags.split);
      if (split) {
        try {
          target = split_unreserved(inst, *split);
        } catch (const PreconditionError& e) {
          throw ValidationError(e.what());
        }
      }
      m = matching_from_json(target, doc);
    }

    const auto axioms = requested_axioms(flags.axioms, rule, target);
    const bool all = flags.axioms == "all";
    const bool eligible_matching = check_eligibility(target, *m).holds;
    Json reports = Json::array();
    bool holds = true;
    for (Axiom a : axioms) {
      if (all && a == Axiom::max_size && !eligible_matching) {
        io.err << "skipping max_size: the matching violates eligibility\n";
        continue;
      }
      const auto report = check_axiom(a, target, *m, rule, inst, flags.budget);
      holds = holds && report.holds;
      reports.push_back(report_to_json(target, report));
    }
    Json doc;
    doc["all_hold"] = holds;
    doc["reports"] = std::move(reports);
    write_text(flags.out, render(doc, flags.format), io.out);
    return static_cast<int>(holds ? kPass : kAxiomFailure);
  });
}

int gen(const GenFlags& flags, Streams io) {
  return guarded(io.err, [&] {
    write_text(flags.out, serialize_instance(generate_instance(flags.options)) + "\n", io.out);
    return static_cast<int>(kPass);
  });
}

int verify(const VerifyFlags& flags, Streams io) {
  return guarded(io.err, [&] {
    if (flags.max_agents == 0) throw ValidationError("--max-agents must be positive");
    std::mt19937_64 rng(flags.seed);
    std::uniform_int_distribution<std::size_t> agents(1, flags.max_agents);
    std::uniform_int_distribution<std::size_t> pool(0, flags.gen.max_quota);

    RrOptions rr_options;
    rr_options.skip_rejection = flags.fault_skip_rejection;

    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::optional<std::string> first;

    for (std::size_t k = 0; k < flags.count; ++k) {
      GeneratorOptions g = flags.gen;
      g.agents = agents(rng);
      g.seed = rng();
      const std::size_t u = flags.gen.unreserved.value_or(pool(rng));
      g.unreserved.reset();
      const Instance inst = generate_instance(g);

      std::string problem;
      try {
        const auto report = verify_characterization(inst, {}, rr_options);
        if (!report.holds) {
          problem = "characterization: " + std::to_string(report.missing_from_rr.size()) +
                    " axiom-satisfying matchings missing from rr, " +
                    std::to_string(report.extra_in_rr.size()) + " extra";
        }

        RuleSpec rr_rule;
        rr_rule.rr_options = rr_options;
        const Matching rr_m = run_rule(rr_rule, inst);
        for (Axiom a : guaranteed_axioms(RuleKind::rr)) {
          if (!problem.empty()) break;
          if (!check_axiom(a, inst, rr_m, rr_rule, inst, flags.budget).holds) {
            problem = "rr fails " + std::string(to_string(a));
          }
        }

        g.unreserved = u;
        const Instance with_pool = generate_instance(g);
        for (UnreservedSplit split : {UnreservedSplit{0, u}, UnreservedSplit{u, 0},
                                      UnreservedSplit{u / 2, u - u / 2}}) {
          RuleSpec srr_rule;
          srr_rule.kind = RuleKind::srr;
          srr_rule.split = split;
          const Instance target = output_instance(srr_rule, with_pool);
          const Matching m = run_rule(srr_rule, with_pool);
          for (Axiom a : guaranteed_axioms(RuleKind::srr)) {
            if (!problem.empty()) break;
            if (!check_axiom(a, target, m, srr_rule, with_pool, flags.budget).holds) {
              problem = "srr split (" + std::to_string(split.first) + "," +
                        std::to_string(split.last) + ") fails " + std::string(to_string(a));
            }
          }
        }
      } catch (const OracleBoundError& e) {
        io.err << "warning: instance " << k << " skipped: " << e.what() << '\n';
        ++skipped;
        continue;
      }

      if (problem.empty()) {
        ++passed;
      } else {
        ++failed;
        if (!first) {
          first = "instance " + std::to_string(k) + " (seed " + std::to_string(g.seed) + "): " +
                  problem + "\n" + instance_to_json(inst).dump();
        }
      }
    }

    io.out << "instances " << flags.count << '\n'
           << "passed " << passed << '\n'
           << "failed " << failed << '\n'
           << "skipped " << skipped << '\n';
    if (first) io.out << "first discrepancy: " << *first << '\n';
    return static_cast<int>(failed == 0 ? kPass : kAxiomFailure);
  });
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Priority-respecting rationing: allocate, check, generate, verify"};
  app.require_subcommand(1);

  AllocateFlags a;
  auto* alloc = app.add_subcommand("allocate", "Run a rule on an instance");
  alloc->add_option("--rule", a.rule, "rr, srr, mg, oaa, da or soft")->required();
  alloc->add_option("--instance", a.instance, "Instance document")->required();
  alloc->add_option("--split", a.split, "Unreserved split q1,q2 (srr, soft)");
  alloc->add_option("--prefs", a.prefs, "Preference document (da)");
  alloc->add_option("--out", a.out, "Output path");
  alloc->add_option("--format", a.format, "json or table");

  CheckFlags c;
  auto* chk = app.add_subcommand("check", "Check axioms on a matching or a rule's output");
  chk->add_option("--instance", c.instance, "Instance document")->required();
  chk->add_option("--matching", c.matching, "Matching document, - for stdin");
  chk->add_option("--rule", c.rule, "Check this rule's own output");
  chk->add_option("--split", c.split, "Unreserved split q1,q2");
  chk->add_option("--prefs", c.prefs, "Preference document (da)");
  chk->add_option("--axioms", c.axioms, "Comma list or all");
  chk->add_option("--manipulation-budget", c.budget, "Demotions tried per agent");
  chk->add_option("--out", c.out, "Output path");
  chk->add_option("--format", c.format, "json or table");

  GenFlags g;
  std::size_t unreserved = 0;
  auto* gn = app.add_subcommand("gen", "Generate a random instance");
  gn->add_option("--agents", g.options.agents);
  gn->add_option("--categories", g.options.categories);
  gn->add_option("--max-quota", g.options.max_quota);
  gn->add_option("--eligibility-density", g.options.density);
  gn->add_option("--tie-prob", g.options.tie_prob);
  gn->add_option("--seed", g.options.seed);
  auto* gen_unreserved = gn->add_option("--unreserved", unreserved, "Append c_u with this quota");
  gn->add_flag("--exclusive", g.options.exclusive, "At most one category per agent");
  gn->add_flag("--baseline-consistent", g.options.baseline_consistent,
               "Rankings follow the baseline strictly");
  gn->add_option("--out", g.out, "Output path");

  VerifyFlags v;
  std::size_t verify_unreserved = 0;
  std::size_t fault = 0;
  auto* ver = app.add_subcommand("verify", "Batch-check rr and srr against the oracle");
  ver->add_option("--count", v.count);
  ver->add_option("--max-agents", v.max_agents);
  ver->add_option("--seed", v.seed);
  ver->add_option("--categories", v.gen.categories);
  ver->add_option("--max-quota", v.gen.max_quota);
  ver->add_option("--eligibility-density", v.gen.density);
  ver->add_option("--tie-prob", v.gen.tie_prob);
  auto* ver_unreserved = ver->add_option("--unreserved", verify_unreserved);
  ver->add_option("--manipulation-budget", v.budget);
  auto* ver_fault = ver->add_option("--fault-skip-rejection", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, io.out, io.err);
    return kInputError;
  }

  if (alloc->parsed()) return allocate(a, io);
  if (chk->parsed()) return check(c, io);
  if (gn->parsed()) {
    if (gen_unreserved->count() > 0) g.options.unreserved = unreserved;
    return gen(g, io);
  }
  if (ver_unreserved->count() > 0) v.gen.unreserved = verify_unreserved;
  if (ver_fault->count() > 0) v.fault_skip_rejection = fault;
  return verify(v, io);
}

}  // namespace rationing::cli

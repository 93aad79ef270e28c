// Command-line front end: parse serialized maps, run the calculus, print
// deterministic JSON reports. Exit codes: 0 success, 2 precondition error,
// 3 parse/usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <nearbij/nearbij.hpp>

namespace {

using nearbij::json;
using nearbij::nat;
using nearbij::self_map;

constexpr int exit_ok = 0;
constexpr int exit_precondition = 2;
constexpr int exit_parse = 3;

std::string read_input_text(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (!arg.empty() && arg.front() == '{') return arg;  // inline JSON
  std::ifstream in(arg);
  if (!in) throw nearbij::parse_error("cannot open input file: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

self_map load_map(const std::string& arg) {
  return nearbij::parse_self_map(read_input_text(arg));
}

void emit(const json& report, const std::string& output_path) {
  const std::string text = nearbij::dump_report(report);
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw nearbij::parse_error("cannot open output file: " + output_path);
  out << text;
}

json finite_set_json(const std::vector<nat>& xs) { return json(xs); }

/// Naive windowed re-check that a map's finite complements are what the
/// analysis says, scanned to multiplier * W.
bool window_scan_agrees(const self_map& f, nat multiplier) {
  const nearbij::map_profile p = nearbij::profile(f);
  if (!p.monoset_complement.is_finite() || !p.range_complement.is_finite()) return false;
  const auto scan =
      nearbij::window_scan_profile(f, multiplier * nearbij::stability_window(f));
  return scan.monoset_complement == p.monoset_complement.elements() &&
         scan.range_complement == p.range_complement.elements();
}

struct oracle_options {
  nat exhaustive_max = 4;
  nat random_count = 100000;
  nat random_max_n = 12;
  nat agreement_count = 500;
  nat edit_count = 1000;
  std::uint64_t seed = 1;
};

int run_oracle(const oracle_options& opt, nat window_multiplier) {
  using namespace nearbij;
  std::uint64_t failures = 0;

  const auto report_line = [&](const char* name, std::uint64_t passed,
                               std::uint64_t total) {
    std::printf("%-28s %llu/%llu passed\n", name, (unsigned long long)passed,
                (unsigned long long)total);
    failures += total - passed;
  };

  // Every self-map of every carrier up to the exhaustive bound.
  {
    std::uint64_t total = 0, identity_ok = 0, comp_ok = 0, iff_ok = 0;
    for (nat n = 1; n <= opt.exhaustive_max; ++n) {
      finite_self_map m{n, std::vector<nat>(n, 0)};
      while (true) {
        ++total;
        if (check_finite_identity(m)) ++identity_ok;
        if (check_comp_identity(m)) ++comp_ok;
        if (check_inj_iff_surj(m)) ++iff_ok;
        nat i = 0;
        while (i < n && m.table[i] == n - 1) m.table[i++] = 0;
        if (i == n) break;
        ++m.table[i];
      }
    }
    report_line("finite identity (exhaustive)", identity_ok, total);
    report_line("comp identity (exhaustive)", comp_ok, total);
    report_line("inj iff surj (exhaustive)", iff_ok, total);
  }

  rng_engine rng(opt.seed);

  {
    std::uint64_t ok = 0;
    std::uniform_int_distribution<nat> size_dist(1, opt.random_max_n);
    for (nat i = 0; i < opt.random_count; ++i) {
      const finite_self_map m = random_finite_map(rng, size_dist(rng));
      if (check_finite_identity(m) && check_comp_identity(m) && check_inj_iff_surj(m))
        ++ok;
    }
    report_line("finite identity (random)", ok, opt.random_count);
  }

  {
    std::uint64_t ok = 0;
    std::uniform_int_distribution<nat> size_dist(2, opt.random_max_n);
    for (nat i = 0; i < opt.edit_count; ++i) {
      const finite_self_map m = random_finite_map(rng, size_dist(rng));
      std::uniform_int_distribution<nat> point_dist(0, m.size - 1);
      if (check_edit_invariance(m, point_dist(rng), point_dist(rng)).ok) ++ok;
    }
    report_line("edit invariance (random)", ok, opt.edit_count);
  }

  {
    std::uint64_t ok = 0;
    for (nat i = 0; i < opt.agreement_count; ++i) {
      const self_map f = random_near_bijection(rng);
      if (window_scan_agrees(f, window_multiplier)) ++ok;
    }
    report_line("window scan agreement", ok, opt.agreement_count);
  }

  std::printf("%s\n", failures == 0 ? "all oracle suites passed" : "ORACLE FAILURES");
  return failures == 0 ? exit_ok : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact index calculus for near-bijections of the naturals"};
  app.require_subcommand(1);

  std::string output_path;
  nat window_multiplier = 4;
  app.add_option("-o,--output", output_path, "write the report to a file");
  app.add_option("--window-multiplier", window_multiplier,
                 "window factor for naive verification scans")
      ->default_val(4);

  std::string arg_map, arg_map2, arg_nat, arg_int, arg_direction;

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a map at a point");
  cmd_eval->add_option("map", arg_map)->required();
  cmd_eval->add_option("n", arg_nat)->required();

  auto* cmd_classify = app.add_subcommand("classify", "near-injective/surjective/bijective flags");
  cmd_classify->add_option("map", arg_map)->required();

  auto* cmd_index = app.add_subcommand("index", "index of a near-bijection");
  cmd_index->add_option("map", arg_map)->required();

  auto* cmd_compose = app.add_subcommand("compose", "compose two maps (second applied first)");
  cmd_compose->add_option("g", arg_map)->required();
  cmd_compose->add_option("f", arg_map2)->required();

  auto* cmd_invert = app.add_subcommand("invert", "inverse up to almost equality");
  cmd_invert->add_option("map", arg_map)->required();

  auto* cmd_repair = app.add_subcommand("repair", "turn an index-zero map into a bijection");
  cmd_repair->add_option("map", arg_map)->required();

  auto* cmd_reduce = app.add_subcommand("reduce", "reduce to an injection or a surjection");
  cmd_reduce->add_option("direction", arg_direction)
      ->required()
      ->check(CLI::IsMember({"injection", "surjection"}));
  cmd_reduce->add_option("map", arg_map)->required();

  auto* cmd_synth = app.add_subcommand("synth", "synthesize lambda and rho for equal-index maps");
  cmd_synth->add_option("f", arg_map)->required();
  cmd_synth->add_option("g", arg_map2)->required();

  auto* cmd_fibers = app.add_subcommand("fibers", "fiber decomposition, or fiber matching of two maps");
  cmd_fibers->add_option("map", arg_map)->required();
  cmd_fibers->add_option("map2", arg_map2);

  auto* cmd_disagreement = app.add_subcommand("disagreement", "where two maps differ");
  cmd_disagreement->add_option("f", arg_map)->required();
  cmd_disagreement->add_option("g", arg_map2)->required();

  auto* cmd_class = app.add_subcommand("class", "canonical class representative");
  cmd_class->add_option("map", arg_map)->required();

  auto* cmd_ind = app.add_subcommand("ind", "index of the class of a map");
  cmd_ind->add_option("map", arg_map)->required();

  auto* cmd_split = app.add_subcommand("split", "class representative of the splitting at n");
  cmd_split->add_option("n", arg_int)->required();

  auto* cmd_demo = app.add_subcommand("demo-noncentral",
                                      "show that the splitting image is not central");

  oracle_options oracle_opt;
  auto* cmd_oracle = app.add_subcommand("oracle", "run the brute-force verification suites");
  cmd_oracle->add_option("--exhaustive-max", oracle_opt.exhaustive_max)->default_val(4);
  cmd_oracle->add_option("--random-count", oracle_opt.random_count)->default_val(100000);
  cmd_oracle->add_option("--max-n", oracle_opt.random_max_n)->default_val(12);
  cmd_oracle->add_option("--agreement-count", oracle_opt.agreement_count)->default_val(500);
  cmd_oracle->add_option("--edit-count", oracle_opt.edit_count)->default_val(1000);
  cmd_oracle->add_option("--seed", oracle_opt.seed)->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_parse;
  }

  using namespace nearbij;
  try {
    if (*cmd_eval) {
      const self_map f = load_map(arg_map);
      nat n = 0;
      try {
        n = std::stoull(arg_nat);
      } catch (const std::exception&) {
        throw parse_error("point must be a natural number");
      }
      json report;
      report["value"] = evaluate(f, n);
      emit(report, output_path);
    } else if (*cmd_classify) {
      const self_map f = load_map(arg_map);
      json report = to_json(classify(f));
      report["profile"] = to_json(profile(f));
      emit(report, output_path);
    } else if (*cmd_index) {
      json report;
      report["index"] = index(load_map(arg_map));
      emit(report, output_path);
    } else if (*cmd_compose) {
      emit(to_json(compose(load_map(arg_map), load_map(arg_map2))), output_path);
    } else if (*cmd_invert) {
      const self_map f = load_map(arg_map);
      const self_map g = class_inverse(f);
      json report;
      report["map"] = to_json(g);
      report["left_identity_disagreement"] =
          finite_set_json(disagreement(compose(g, f), identity_map()).elements());
      report["right_identity_disagreement"] =
          finite_set_json(disagreement(compose(f, g), identity_map()).elements());
      report["window_scan_agrees"] = window_scan_agrees(g, window_multiplier);
      emit(report, output_path);
    } else if (*cmd_repair) {
      const self_map f = load_map(arg_map);
      const self_map g = repair_to_bijection(f);
      const classification c = classify(g);
      const std::vector<nat> diff = disagreement(f, g).elements();
      json report;
      report["map"] = to_json(g);
      report["bijective"] = c.injective && c.surjective;
      report["disagreement_with_input"] = finite_set_json(diff);
      report["range_complement_of_input"] =
          finite_set_json(range_complement(f).elements());
      report["disagreement_size_matches"] =
          diff.size() == range_complement(f).elements().size();
      report["window_scan_agrees"] = window_scan_agrees(g, window_multiplier);
      emit(report, output_path);
    } else if (*cmd_reduce) {
      const self_map f = load_map(arg_map);
      const bool to_injection = arg_direction == "injection";
      const self_map g = to_injection ? reduce_to_injection(f) : reduce_to_surjection(f);
      const classification c = classify(g);
      json report;
      report["map"] = to_json(g);
      report["direction"] = arg_direction;
      report[to_injection ? "injective" : "surjective"] =
          to_injection ? c.injective : c.surjective;
      report["almost_equal_to_input"] = almost_equal(f, g);
      report["index"] = index(f);
      report["window_scan_agrees"] = window_scan_agrees(g, window_multiplier);
      emit(report, output_path);
    } else if (*cmd_synth) {
      emit(to_json(synthesize_lambda_rho(load_map(arg_map), load_map(arg_map2))),
           output_path);
    } else if (*cmd_fibers) {
      const self_map f = load_map(arg_map);
      json report;
      if (arg_map2.empty()) {
        json fibers = json::array();
        for (const auto& [value, fiber] : fiber_decomposition(f))
          fibers.push_back(json::array({json(value), json(fiber)}));
        report["fibers"] = std::move(fibers);
      } else {
        const self_map g = load_map(arg_map2);
        const bool match = fibers_match(f, g);
        report["match"] = match;
        if (match) report["rho"] = to_json(synthesize_rho_exact(f, g));
      }
      emit(report, output_path);
    } else if (*cmd_disagreement) {
      emit(to_json(disagreement(load_map(arg_map), load_map(arg_map2))), output_path);
    } else if (*cmd_class) {
      emit(to_json(class_of(load_map(arg_map))), output_path);
    } else if (*cmd_ind) {
      json report;
      report["index"] = ind(class_of(load_map(arg_map)));
      emit(report, output_path);
    } else if (*cmd_split) {
      std::int64_t n = 0;
      try {
        n = std::stoll(arg_int);
      } catch (const std::exception&) {
        throw parse_error("splitting argument must be an integer");
      }
      emit(to_json(splitting(n)), output_path);
    } else if (*cmd_demo) {
      const self_map u = successor_map();
      const self_map swap = adjacent_swap();
      const finiteness_result d = noncentrality_demo();
      json report;
      report["disagreement"] = to_json(d);
      report["swap_then_shift"] = to_json(compose(swap, u));
      report["shift_then_swap"] = to_json(compose(u, swap));
      emit(report, output_path);
    } else if (*cmd_oracle) {
      return run_oracle(oracle_opt, window_multiplier);
    }
  } catch (const nearbij::parse_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_parse;
  } catch (const nearbij::precondition_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_precondition;
  }
  return exit_ok;
}

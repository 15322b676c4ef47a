#pragma once

// Command-line front end.  run() is the whole program minus main().

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edp/error.hpp"
#include "edp/io.hpp"
#include "edp/oracle.hpp"
#include "edp/pipeline.hpp"
#include "edp/stab.hpp"
#include "edp/symrank.hpp"

namespace edp {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kInconclusive = 2, kBudgetExceeded = 3 };

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Inconclusive: return kInconclusive;
    case ErrorCode::LimitExceeded:
    case ErrorCode::BudgetExceeded: return kBudgetExceeded;
    default: return kInvalidInput;
  }
}

namespace cli {

struct Source {
  ParsedInput input;
  std::optional<SlnCase> sl;
  std::optional<std::size_t> so_n;
};

inline std::size_t parse_size(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    fail(ErrorCode::InvalidInput, what + " must be a non-negative integer, got '" + s + "'");
  return std::stoul(s);
}

inline Source load_source(const std::vector<std::string>& args) {
  Source src;
  if (args.empty()) fail(ErrorCode::InvalidInput, "missing input: give a JSON file or 'case sl <n> <p>' / 'case so <n>'");
  if (args[0] == "case") {
    if (args.size() == 4 && args[1] == "sl") {
      src.sl = sln_case(parse_size(args[2], "n"), parse_size(args[3], "p"));
      src.input.presentation = src.sl->presentation;
    } else if (args.size() == 3 && args[1] == "so") {
      src.so_n = parse_size(args[2], "n");
      src.input.presentation = so_case(*src.so_n);
    } else {
      fail(ErrorCode::InvalidInput, "expected 'case sl <n> <p>' or 'case so <n>'");
    }
    return src;
  }
  if (args.size() != 1) fail(ErrorCode::InvalidInput, "expected a single input file");
  std::ifstream f(args[0]);
  if (!f) fail(ErrorCode::InvalidInput, "cannot open '" + args[0] + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  src.input = parse_input(ss.str());
  return src;
}

inline std::optional<MonomialRep> select_rep(const ParsedInput& in, const std::string& which) {
  MonomialRep R;
  if (which == "none") return std::nullopt;
  if (which == "defining" || which == "all") R = MonomialRep::defining(in.presentation);
  if (which == "extra" || which == "all") {
    if (which == "extra" && in.extra_blocks.empty()) fail(ErrorCode::InvalidInput, "--rep extra needs extra_blocks in the input");
    R.blocks.insert(R.blocks.end(), in.extra_blocks.begin(), in.extra_blocks.end());
  }
  if (which != "defining" && which != "all" && which != "extra")
    fail(ErrorCode::InvalidInput, "unknown representation selector '" + which + "'");
  return R;
}

inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json")
    out << j.dump(2) << "\n";
  else
    flatten(j, "", out);
}

inline std::string cell(const std::optional<std::int64_t>& x) { return x ? std::to_string(*x) : "-"; }

}  // namespace cli

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Essential p-dimension of torus normalizer extensions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  Limits limits;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--max-steps", limits.max_steps, "Cap on search and enumeration steps");
  app.add_option("--max-elements", limits.max_elements, "Cap on group closure size");

  std::vector<std::string> args;
  std::string rep = "defining";
  std::optional<std::size_t> bound;
  std::optional<std::uint64_t> q;
  std::size_t trials = 50;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check a presentation and enumerate its component group");
  auto* stabilizer = app.add_subcommand("stabilizer", "Stabilizer in general position of a representation");
  auto* symrank_cmd = app.add_subcommand("symrank", "Symmetric p-rank of the character lattice");
  auto* eta_cmd = app.add_subcommand("eta", "Bounds on the minimal p-faithful dimension");
  auto* ed = app.add_subcommand("ed", "Essential p-dimension report");
  auto* case_cmd = app.add_subcommand("case", "Emit a case-study presentation: sl <n> <p> | so <n>");
  auto* table = app.add_subcommand("table", "Case-study table: sl <nmax> <p> | so <nmax>");
  auto* oracle = app.add_subcommand("oracle", "Brute-force checks: stab <input> | symrank <input> | sylow <d> <p>");
  for (auto* s : {validate, stabilizer, symrank_cmd, eta_cmd, ed, case_cmd, table, oracle})
    s->add_option("args", args, "Input file, or case sl <n> <p> / case so <n>")->required();
  for (auto* s : {stabilizer, ed, oracle})
    s->add_option("--rep", rep, "Representation: defining, all, extra")->check(CLI::IsMember({"defining", "all", "extra"}));
  eta_cmd->add_option("--rep", rep, "Representation: none, defining, all, extra")
      ->check(CLI::IsMember({"none", "defining", "all", "extra"}));
  for (auto* s : {symrank_cmd, eta_cmd, ed, oracle}) s->add_option("--bound", bound, "Sup-norm search bound");
  oracle->add_option("--q", q, "Prime modulus for the finite-field check");
  oracle->add_option("--trials", trials, "Random points per check");
  oracle->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed;
  for (int i = argc - 1; i >= 1; --i) reversed.emplace_back(argv[i]);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (validate->parsed()) {
      auto src = cli::load_source(args);
      auto r = edp::validate(src.input.presentation, limits);
      cli::emit(to_json(r), format, out);
      for (const auto& d : r.diagnostics) err << json{{"diagnostic", d}}.dump() << "\n";
      return kOk;
    }
    if (stabilizer->parsed()) {
      auto src = cli::load_source(args);
      const ComponentGroup F = component_group(src.input.presentation, limits);
      auto s = generic_stabilizer(F, *cli::select_rep(src.input, rep));
      cli::emit(to_json(s, F), format, out);
      return kOk;
    }
    if (symrank_cmd->parsed()) {
      auto src = cli::load_source(args);
      const ComponentGroup F = component_group(src.input.presentation, limits);
      auto r = symrank(character_lattice_action(F, limits), F.p(), bound, limits);
      cli::emit(to_json(r), format, out);
      return r.status == SymRankStatus::Exact ? kOk : kInconclusive;
    }
    if (eta_cmd->parsed()) {
      auto src = cli::load_source(args);
      auto e = eta(src.input.presentation, cli::select_rep(src.input, rep), EtaOptions{bound, true, limits});
      cli::emit(to_json(e), format, out);
      return e.exact ? kOk : kInconclusive;
    }
    if (ed->parsed()) {
      auto src = cli::load_source(args);
      EdOptions opt{bound, limits};
      if (src.sl || src.so_n) {
        auto r = src.sl ? ed_case_sl(src.sl->n, src.sl->p, opt) : ed_case_so(*src.so_n, opt);
        cli::emit(to_json(r), format, out);
        return r.ed.exact ? kOk : kInconclusive;
      }
      auto r = essential_p_dimension(src.input.presentation, cli::select_rep(src.input, rep), opt);
      cli::emit(to_json(r), format, out);
      return r.exact ? kOk : kInconclusive;
    }
    if (case_cmd->parsed()) {
      std::vector<std::string> full{"case"};
      full.insert(full.end(), args.begin(), args.end());
      auto src = cli::load_source(full);
      json j = {{"presentation", to_json(src.input.presentation)}};
      if (src.sl) {
        j["family"] = "sl";
        j["n"] = src.sl->n;
        j["p"] = src.sl->p;
        j["label"] = std::string(1, src.sl->label);
        j["h_description"] = src.sl->h_description;
      } else {
        j["family"] = "so";
        j["n"] = *src.so_n;
        j["p"] = 2;
      }
      cli::emit(j, format, out);
      return kOk;
    }
    if (table->parsed()) {
      EdOptions opt{bound, limits};
      std::vector<CaseReport> rows;
      if (args.size() == 3 && args[0] == "sl") {
        const auto nmax = cli::parse_size(args[1], "nmax");
        const auto p = cli::parse_size(args[2], "p");
        for (std::size_t n = 2; n <= nmax; ++n) rows.push_back(ed_case_sl(n, p, opt));
      } else if (args.size() == 2 && args[0] == "so") {
        const auto nmax = cli::parse_size(args[1], "nmax");
        for (std::size_t n = 1; n <= nmax; ++n) rows.push_back(ed_case_so(n, opt));
      } else {
        fail(ErrorCode::InvalidInput, "expected 'table sl <nmax> <p>' or 'table so <nmax>'");
      }
      bool all_exact = true;
      if (format == "json") {
        json a = json::array();
        for (const auto& r : rows) a.push_back(to_json(r));
        out << a.dump(2) << "\n";
      } else {
        out << "n\tcase\tclosed\ted_lower\ted_upper\texact\tmatch\n";
        for (const auto& r : rows)
          out << r.n << "\t" << (r.label ? std::string(1, r.label) : "-") << "\t" << r.closed_form << "\t" << r.ed.ed_lower
              << "\t" << cli::cell(r.ed.ed_upper) << "\t" << cli::cell(r.ed.exact) << "\t"
              << (r.matches_closed_form ? "yes" : "no") << "\n";
      }
      for (const auto& r : rows) all_exact = all_exact && r.ed.exact.has_value();
      return all_exact ? kOk : kInconclusive;
    }
    if (oracle->parsed()) {
      if (args.empty()) fail(ErrorCode::InvalidInput, "expected 'oracle stab|symrank|sylow ...'");
      const std::string kind = args[0];
      std::vector<std::string> rest(args.begin() + 1, args.end());
      if (kind == "sylow") {
        if (rest.size() != 2) fail(ErrorCode::InvalidInput, "expected 'oracle sylow <d> <p>'");
        auto r = sylow_abelian_bound_check(cli::parse_size(rest[0], "d"), cli::parse_size(rest[1], "p"), limits.max_steps);
        cli::emit(to_json(r), format, out);
        return kOk;
      }
      auto src = cli::load_source(rest);
      if (kind == "stab") {
        const auto R = *cli::select_rep(src.input, rep);
        auto r = ff_stabilizer(src.input.presentation, R, FFStabilizerOptions{q, trials, seed}, limits);
        auto s = generic_stabilizer(src.input.presentation, R, limits);
        json j = to_json(r);
        j["symbolic_order"] = to_json(s.order());
        j["agrees"] = Int(r.min_order) == s.order();
        cli::emit(j, format, out);
        return kOk;
      }
      if (kind == "symrank") {
        const ComponentGroup F = component_group(src.input.presentation, limits);
        const FLattice L = character_lattice_action(F, limits);
        const std::size_t b = bound.value_or(std::min<std::size_t>(3, default_search_bound(L)));
        cli::emit(json{{"value", symrank_bruteforce(L, F.p(), b, BruteforceOptions{2, 3, limits.max_steps})}, {"bound", b}},
                  format, out);
        return kOk;
      }
      fail(ErrorCode::InvalidInput, "unknown oracle '" + kind + "'");
    }
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  }
  return kInvalidInput;
}

}  // namespace edp

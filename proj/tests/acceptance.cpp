// Acceptance runner.  `acceptance --criterion N` runs one criterion, no
// argument runs all of them.  Each criterion ends with exactly one line
// "criterion N: PASS|FAIL <summary>"; detail lines are indented.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "edp/cli.hpp"

using namespace edp;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

void detail(const std::string& s) { std::cout << "  " << s << "\n"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

struct CliResult {
  int code;
  json j;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "edp");
  args.push_back("--format");
  args.push_back("json");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0 && code != 2) return {code, json{{"stderr", err.str()}}};
  return {code, json::parse(out.str())};
}

std::optional<std::int64_t> exact_of(const json& report) {
  const auto& e = report["ed"]["exact"];
  if (e.is_null()) return std::nullopt;
  return e.get<std::int64_t>();
}

// Representations gathered for the oracle agreement check.
struct NamedRep {
  std::string name;
  MonomialGroupPresentation P;
  MonomialRep R;
};

std::vector<NamedRep> oracle_pool() {
  std::vector<NamedRep> v;
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{3, 3}, {6, 3}, {9, 3}, {4, 2}, {8, 2}}) {
    auto P = sln_case(n, p).presentation;
    v.push_back({"sl " + std::to_string(n) + " " + std::to_string(p) + " defining", P, MonomialRep::defining(P)});
  }
  for (std::size_t n : {1u, 2u}) {
    auto P = so_case(n);
    v.push_back({"so " + std::to_string(n) + " defining", P, MonomialRep::defining(P)});
  }
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{5, 3}, {7, 3}, {6, 2}, {10, 2}}) {
    auto c = sln_case(n, p);
    v.push_back({"sl " + std::to_string(n) + " " + std::to_string(p) + " witness", c.presentation, upper_witness_sln(c).W});
  }
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{3, 3}, {4, 2}, {6, 3}}) {
    auto P = sln_case(n, p).presentation;
    v.push_back({"sl " + std::to_string(n) + " " + std::to_string(p) + " extension", P,
                 build_generically_free_extension(P, MonomialRep::defining(P)).W});
  }
  for (std::size_t n : {1u, 2u}) {
    auto P = so_case(n);
    v.push_back({"so " + std::to_string(n) + " extension", P, build_generically_free_extension(P, MonomialRep::defining(P)).W});
  }
  return v;
}

Outcome sl_exact_values() {
  Outcome o;
  std::size_t ok = 0;
  for (auto [n, p, want] : std::vector<std::tuple<std::size_t, std::uint64_t, std::int64_t>>{
           {3, 3, 2}, {6, 3, 3}, {9, 3, 4}, {4, 2, 3}, {8, 2, 5}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_cli({"ed", "case", "sl", std::to_string(n), std::to_string(p)});
    double secs = seconds_since(t0);
    auto got = r.code == 0 ? exact_of(r.j) : std::nullopt;
    bool good = got == want && want == closed_form_sln(n, p) && secs < 60;
    detail("sl " + std::to_string(n) + " " + std::to_string(p) + ": exact " + (got ? std::to_string(*got) : "-") +
           ", expected " + std::to_string(want) + ", " + fmt_seconds(secs) + (good ? "" : "  <- mismatch"));
    ok += good;
    o.pass = o.pass && good;
  }
  o.summary = std::to_string(ok) + "/5 cases exact and on time";
  return o;
}

Outcome so_exact_values() {
  Outcome o;
  std::vector<std::string> got;
  for (auto [n, limit] : std::vector<std::pair<std::size_t, double>>{{1, 60}, {2, 300}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_cli({"ed", "case", "so", std::to_string(n)});
    double secs = seconds_since(t0);
    auto v = r.code == 0 ? exact_of(r.j) : std::nullopt;
    const std::int64_t want = 4 * std::int64_t(n);
    bool good = v == want && secs < limit;
    detail("so " + std::to_string(n) + ": exact " + (v ? std::to_string(*v) : "-") + ", expected " + std::to_string(want) +
           ", " + fmt_seconds(secs));
    if (r.code == 0) {
      detail("  rank of stabilizer image " + r.j["ed"]["rank_p_S"].dump() + ", dim W " + r.j["ed"]["dim_W"].dump());
      for (const auto& note : r.j["ed"]["notes"]) detail("  note: " + note.get<std::string>());
    }
    got.push_back(v ? std::to_string(*v) : "-");
    o.pass = o.pass && good;
  }
  o.summary = "computed " + got[0] + ", " + got[1] + " against expected 4, 8";
  return o;
}

Outcome sl_witness_bounds() {
  Outcome o;
  std::size_t ok = 0;
  for (auto [n, p, check_oracle] : std::vector<std::tuple<std::size_t, std::uint64_t, bool>>{
           {5, 3, true}, {7, 3, false}, {6, 2, true}, {10, 2, false}}) {
    auto c = sln_case(n, p);
    auto w = upper_witness_sln(c);
    const std::int64_t floor_np = std::int64_t(n / p);
    bool free = is_p_generically_free(c.presentation, w.W).holds;
    bool good = w.bound == floor_np && w.generically_free.holds && free && w.bound == closed_form_sln(n, p);
    std::string extra;
    if (check_oracle) {
      auto r = ff_stabilizer(c.presentation, w.W);
      bool oracle_free = r.min_order == 1;
      good = good && oracle_free;
      extra = ", oracle min stabilizer order " + std::to_string(r.min_order) + " over F_" + std::to_string(r.q);
    }
    detail("sl " + std::to_string(n) + " " + std::to_string(p) + ": witness bound " + std::to_string(w.bound) +
           ", floor " + std::to_string(floor_np) + ", generically free " + (free ? "yes" : "no") + extra);
    ok += good;
    o.pass = o.pass && good;
  }
  o.summary = std::to_string(ok) + "/4 witnesses at the floor bound and generically free";
  return o;
}

Outcome stabilizer_image_even_part() {
  Outcome o;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t p : {2u, 3u, 5u}) {
      auto c = sln_case(n, p);
      if (c.label != 'a' && c.label != 'b') continue;
      ++cases;
      auto even = verify_lemma_sln(n, c.h_generators, p);
      std::vector<std::size_t> mins;
      bool seeds_agree = true;
      for (std::uint64_t seed : {0u, 1u, 2u}) {
        auto r = ff_stabilizer(c.presentation, MonomialRep::defining(c.presentation), {std::nullopt, 50, seed});
        mins.push_back(r.min_order);
        seeds_agree = seeds_agree && r.min_order == even.even_part_order;
      }
      bool good = even.holds() && seeds_agree;
      detail("sl " + std::to_string(n) + " " + std::to_string(p) + ": image order " + std::to_string(even.pi_S_order) +
             ", even part order " + std::to_string(even.even_part_order) + ", oracle minima " + std::to_string(mins[0]) +
             " " + std::to_string(mins[1]) + " " + std::to_string(mins[2]));
      o.pass = o.pass && good;
    }
  o.summary = std::to_string(cases) + " subgroups checked symbolically and over 3 seeds";
  return o;
}

Outcome extension_contract() {
  Outcome o;
  struct Item {
    std::string name;
    MonomialGroupPresentation P;
  };
  std::vector<Item> items{{"sl 3 with 3-cycle", sln_case(3, 3).presentation},
                          {"sl 4 with Klein group", sln_case(4, 2).presentation},
                          {"sl 6 with two 3-cycles", sln_case(6, 3).presentation},
                          {"so 4", so_case(1)},
                          {"so 8", so_case(2)}};
  std::size_t ok = 0;
  for (const auto& it : items) {
    auto F = component_group(it.P);
    auto V = MonomialRep::defining(it.P);
    auto ext = build_generically_free_extension(F, V);
    const auto r = *generic_stabilizer(F, V).p_rank_S;
    bool free = is_p_generically_free(F, ext.W).holds;
    bool good = free && ext.W.dimension() - V.dimension() == r;
    detail(it.name + ": dim V " + std::to_string(V.dimension()) + ", dim W " + std::to_string(ext.W.dimension()) +
           ", p-rank " + std::to_string(r) + ", generically free " + (free ? "yes" : "no"));
    ok += good;
    o.pass = o.pass && good;
  }
  o.summary = std::to_string(ok) + "/5 extensions free with the predicted dimension";
  return o;
}

Outcome symrank_values() {
  Outcome o;
  for (const auto& [name, L, p, want] : std::vector<std::tuple<std::string, FLattice, std::uint64_t, std::size_t>>{
           {"sl 3 lattice", character_lattice_action(sln_case(3, 3).presentation), 3, 3},
           {"sl 4 lattice", character_lattice_action(sln_case(4, 2).presentation), 2, 4},
           {"so 4 lattice", character_lattice_action(so_case(1)), 2, 4}}) {
    auto r = symrank(L, p);
    bool good = r.value == want && r.status == SymRankStatus::Exact && r.lower_bound_used == want;
    detail(name + ": " + std::to_string(r.value) + " " + to_string(r.status) + ", lower bound " +
           std::to_string(r.lower_bound_used));
    o.pass = o.pass && good;
  }

  // Finite subgroups of GL_d(Z), d <= 2, of order <= 4, from random small generators.
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> entry(-1, 1);
  Limits cap;
  cap.max_elements = 4;
  std::size_t agree = 0, drawn = 0, attempts = 0;
  while (drawn < 20 && attempts < 100000) {
    ++attempts;
    const std::size_t d = 1 + rng() % 2;
    const std::size_t k = rng() % 3;
    std::vector<IntMatrix> gens;
    for (std::size_t g = 0; g < k; ++g) {
      IntMatrix m(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
      if (abs(determinant(m)) != 1) break;
      gens.push_back(std::move(m));
    }
    if (gens.size() != k) continue;
    FLattice L;
    try {
      L = FLattice::generated_by(d, gens, cap);
    } catch (const Error&) {
      continue;
    }
    std::uint64_t p = L.order() == 1 ? (rng() % 2 ? 2 : 3) : (L.order() == 3 ? 3 : 2);
    ++drawn;
    auto fast = symrank(L, p, 3);
    auto brute = symrank_bruteforce(L, p, 3);
    bool good = fast.value == brute;
    agree += good;
    if (!good)
      detail("random lattice " + std::to_string(drawn) + " (rank " + std::to_string(d) + ", order " +
             std::to_string(L.order()) + ", p " + std::to_string(p) + "): search " + std::to_string(fast.value) +
             ", exhaustive " + std::to_string(brute));
  }
  detail("random lattices: " + std::to_string(agree) + "/" + std::to_string(drawn) + " agree with exhaustive search");
  o.pass = o.pass && drawn == 20 && agree == drawn;
  o.summary = "case lattices 3, 4, 4 and " + std::to_string(agree) + "/20 random lattices";
  return o;
}

Outcome sylow_abelian_bound() {
  Outcome o;
  std::size_t checked = 0;
  for (auto [dmax, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{8, 2}, {9, 3}})
    for (std::size_t d = 1; d <= dmax; ++d) {
      auto r = sylow_abelian_bound_check(d, p);
      ++checked;
      detail("d " + std::to_string(d) + " p " + std::to_string(p) + ": Sylow order " + std::to_string(r.sylow_order) +
             ", max abelian " + std::to_string(r.max_abelian_order) + ", bound " + std::to_string(r.floor_bound) +
             (r.pass ? "" : "  <- fails"));
      o.pass = o.pass && r.pass;
      if (d == 4 && p == 2) o.pass = o.pass && r.max_abelian_order == 4;
    }
  o.summary = std::to_string(checked) + " degree/prime pairs, (4,2) maximum 4";
  return o;
}

Outcome sandwich_property() {
  Outcome o;
  std::size_t rows = 0, bad = 0;
  double slowest = 0;
  std::string slowest_name;
  auto check = [&](const std::string& name, const std::function<CaseReport()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    double secs = seconds_since(t0);
    if (secs > slowest) slowest = secs, slowest_name = name;
    const auto& e = r.ed;
    bool good = e.ed_upper && e.dim_W && std::int64_t(e.eta_lower) - std::int64_t(e.dim_G) <= e.ed_lower &&
                e.ed_lower <= *e.ed_upper && *e.ed_upper == std::int64_t(*e.dim_W) - std::int64_t(e.dim_G);
    ++rows;
    if (!good) {
      ++bad;
      detail(name + ": eta_lower " + std::to_string(e.eta_lower) + ", dim G " + std::to_string(e.dim_G) + ", ed_lower " +
             std::to_string(e.ed_lower) + ", ed_upper " + cli::cell(e.ed_upper) + "  <- violates");
    }
  };
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::uint64_t p : {2u, 3u, 5u})
      check("sl " + std::to_string(n) + " " + std::to_string(p), [=] { return ed_case_sl(n, p); });
  for (std::size_t n : {1u, 2u}) check("so " + std::to_string(n), [=] { return ed_case_so(n); });
  detail("slowest case " + slowest_name + " at " + fmt_seconds(slowest));
  o.pass = bad == 0;
  o.summary = std::to_string(rows - bad) + "/" + std::to_string(rows) + " reports satisfy the sandwich";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::size_t agreed = 0, checked = 0;
  std::vector<std::string> skipped;
  for (const auto& item : oracle_pool()) {
    FFStabilizerReport r;
    try {
      r = ff_stabilizer(item.P, item.R);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      skipped.push_back(item.name);
      continue;
    }
    const Int symbolic = generic_stabilizer(item.P, item.R).order();
    bool good = Int(r.min_order) == symbolic;
    ++checked;
    agreed += good;
    detail(item.name + ": oracle " + std::to_string(r.min_order) + " over F_" + std::to_string(r.q) + ", symbolic " +
           symbolic.str() + (good ? "" : "  <- disagree"));
  }
  for (const auto& s : skipped) detail(s + ": skipped, over budget");
  o.pass = checked > 0 && agreed == checked;
  o.summary = std::to_string(agreed) + "/" + std::to_string(checked) + " agree, " + std::to_string(skipped.size()) +
              " over budget";
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"sl exact values", sl_exact_values},
    {"so exact values", so_exact_values},
    {"sl witness bounds", sl_witness_bounds},
    {"stabilizer image is the even part", stabilizer_image_even_part},
    {"extension contract", extension_contract},
    {"symrank values", symrank_values},
    {"sylow abelian bound", sylow_abelian_bound},
    {"sandwich property", sandwich_property},
    {"oracle agreement", oracle_agreement},
};

bool run_one(std::size_t i) {
  std::cout << "[" << i << "] " << kCriteria[i - 1].first << "\n";
  Outcome o;
  try {
    o = kCriteria[i - 1].second();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.summary << "\n" << std::flush;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const std::size_t i = std::strtoul(argv[2], nullptr, 10);
    if (i < 1 || i > kCriteria.size()) {
      std::cerr << "criterion must be 1.." << kCriteria.size() << "\n";
      return 2;
    }
    which.push_back(i);
  } else if (argc == 1) {
    for (std::size_t i = 1; i <= kCriteria.size(); ++i) which.push_back(i);
  } else {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool all = true;
  for (auto i : which) all = run_one(i) && all;
  return all ? 0 : 1;
}

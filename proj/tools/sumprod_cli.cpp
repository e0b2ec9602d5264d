// Command-line front end: one subcommand per library operation, JSON or
// table output, exit codes 0 (found / holds), 1 (not found / violated /
// budget exhausted) and 2 (invalid input or any other error).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/pattern_search.hpp"
#include "sumprod/predicate.hpp"
#include "sumprod/random.hpp"
#include "sumprod/rational_folner.hpp"
#include "sumprod/spectral.hpp"
#include "sumprod/subset_spec.hpp"
#include "sumprod/sweeps.hpp"

namespace {

using namespace sumprod;
using cli::json;

struct Globals {
  bool json_out = false;
  bool table_out = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
  bool exact = false;
  bool fast = false;
  std::uint32_t max_order = kDefaultMaxOrder;

  cli::OutputMode mode() const { return table_out ? cli::OutputMode::table : cli::OutputMode::json; }

  // Thread count is deliberately absent: output must not depend on it.
  json config() const {
    return {{"seed", seed}, {"budget", budget}, {"arithmetic", fast ? "fast" : "exact"},
            {"output", table_out ? "table" : "json"}, {"max_order", max_order}};
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) throw ParseError("");
      out.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw ParseError("malformed index list '" + text + "'");
    }
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

json witness_list(const std::vector<Witness>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back({w.u, w.y});
  return out;
}

json bound_json(const CardinalityBound& b) {
  return {{"offset", to_string(b.offset)},     {"root_coeff", to_string(b.root_coeff)},
          {"radicand", to_string(b.radicand)}, {"approx", b.approx},
          {"required", b.required.str()},      {"vacuous", b.vacuous}};
}

// Shared flags for commands that act on a field.
struct FieldArgs {
  std::string field;
  void add(CLI::App* cmd) { cmd->add_option("--field", field, "Field descriptor, e.g. GF(7), GF(3^2)")->required(); }
  FiniteField get(const Globals& g) const { return FiniteField::parse(field, g.max_order); }
};

struct ActionArgs {
  std::string kind = "regular";
  std::uint32_t d = 1;
  std::string alpha;
  void add(CLI::App* cmd) {
    cmd->add_option("--action", kind, "regular or vector")->check(CLI::IsMember({"regular", "vector"}));
    cmd->add_option("--d", d, "Dimension for the vector-space action");
    cmd->add_option("--alpha", alpha, "Comma-separated nonzero alpha_i (vector action)");
  }
  FiniteAction get(const FiniteField& f) const {
    if (kind == "regular") return FiniteAction::regular(f);
    std::vector<Index> a = alpha.empty() ? std::vector<Index>(d, 1) : parse_index_list(alpha);
    return FiniteAction::vector_space(f, d, a);
  }
  json describe(const FiniteAction& a) const {
    json out = {{"action", a.label()}, {"space_size", a.size()}, {"ergodic", a.is_ergodic()}};
    if (kind == "vector") out["alpha"] = alpha.empty() ? std::vector<Index>(d, 1) : parse_index_list(alpha);
    return out;
  }
};

IndexSet parse_space_set(const std::string& spec, const FiniteAction& a) {
  return parse_index_set(spec, a.size(), a.size() == a.field().order() ? &a.field() : nullptr);
}

Coloring parse_coloring(const FiniteField& f, const std::string& spec) {
  if (spec == "qr") return Coloring::quadratic_residue(f);
  if (spec.rfind("random:", 0) == 0) {
    const auto parts = split(spec.substr(7), ':');
    if (parts.size() != 2) throw ParseError("coloring 'random:r:seed' expected");
    const auto r = static_cast<std::uint32_t>(std::stoul(parts[0]));
    if (r < 1) throw ParseError("a coloring needs at least one color");
    Rng rng(std::stoull(parts[1]));
    std::vector<std::uint32_t> colors(f.order());
    for (auto& c : colors) c = static_cast<std::uint32_t>(rng.below(r));
    return Coloring(f, colors, r);
  }
  std::vector<std::uint32_t> colors;
  for (Index c : parse_index_list(spec)) colors.push_back(c);
  std::uint32_t r = 0;
  for (auto c : colors) r = std::max(r, c + 1);
  return Coloring(f, colors, r);
}

struct FolnerArgs {
  std::uint32_t n = 0;
  std::uint32_t primes = 0, e = 0, m = 0;
  std::uint64_t k = 0, big_p = 0;
  std::string config_file;
  std::uint64_t cap = 1'000'000;
  std::string den_rule = "unit";

  void add(CLI::App* cmd, bool explicit_spec) {
    cmd->add_option("--cap", cap, "Element budget for the default family");
    cmd->add_option("--den-rule", den_rule, "Default family denominator exponent: unit (m=1) or quadratic (m=2N^2)")
        ->check(CLI::IsMember({"unit", "quadratic"}));
    if (!explicit_spec) return;
    cmd->add_option("--n", n, "Index N of the default family");
    cmd->add_option("--primes", primes, "Number of primes in P_N");
    cmd->add_option("--e", e, "Exponent bound");
    cmd->add_option("--m", m, "Denominator exponent");
    cmd->add_option("--k", k, "Additive range size k_max");
    cmd->add_option("--P", big_p, "Base prime (default: a prime large enough to keep elements distinct)");
    cmd->add_option("--config", config_file, "Key-value spec file");
  }

  FamilyParams params() const { return {cap, den_rule == "unit" ? DenominatorRule::unit : DenominatorRule::quadratic}; }

  FolnerSpec spec() const {
    FolnerSpec s;
    if (!config_file.empty()) {
      s = load_config();
    } else if (n > 0) {
      s = default_folner_spec(n, params());
    } else if (primes > 0) {
      s.prime_count = primes;
      s.exp_bound = e;
      s.den_exp = m;
      s.add_count = k;
    } else {
      throw ParseError("give --n, --config, or --primes/--e/--m/--k");
    }
    if (big_p != 0) s.base_prime = big_p;
    return s;
  }

  // Lines "key = value"; '#' starts a comment. Keys: prime_count, exp_bound,
  // den_exp, add_count, base_prime.
  FolnerSpec load_config() const {
    std::ifstream in(config_file);
    if (!in) throw ParseError("cannot read config file '" + config_file + "'");
    std::map<std::string, std::uint64_t> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = line.substr(0, line.find('#'));
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e2 = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e2 - b + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw ParseError(config_file + ":" + std::to_string(line_no) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      static const std::vector<std::string> known = {"prime_count", "exp_bound", "den_exp", "add_count", "base_prime"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ParseError(config_file + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
      try {
        std::size_t used = 0;
        values[key] = std::stoull(value, &used);
        if (used != value.size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError(config_file + ":" + std::to_string(line_no) + ": '" + value + "' is not a nonnegative integer");
      }
    }
    for (const char* key : {"prime_count", "exp_bound", "den_exp", "add_count"}) {
      if (!values.count(key)) throw ParseError(config_file + ": missing key '" + std::string(key) + "'");
    }
    FolnerSpec s;
    s.prime_count = static_cast<std::uint32_t>(values["prime_count"]);
    s.exp_bound = static_cast<std::uint32_t>(values["exp_bound"]);
    s.den_exp = static_cast<std::uint32_t>(values["den_exp"]);
    s.add_count = values["add_count"];
    if (values.count("base_prime")) s.base_prime = values["base_prime"];
    return s;
  }
};

json spec_json(const FolnerSpec& s) {
  json out = {{"prime_count", s.prime_count}, {"exp_bound", s.exp_bound}, {"den_exp", s.den_exp},
              {"add_count", s.add_count},     {"cap_limited", s.cap_limited}};
  out["base_prime"] = s.base_prime ? json(*s.base_prime) : json();
  return out;
}

json rationals_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

const char* status_of(bool positive, const char* yes, const char* no) { return positive ? yes : no; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-product configurations in finite fields and along Følner sequences in Q"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* fmt = app.add_option_group("output");
  fmt->add_flag("--json", g.json_out, "JSON output (default)");
  fmt->add_flag("--table", g.table_out, "Aligned table output");
  fmt->require_option(0, 1);
  app.add_option("--seed", g.seed, "Seed for randomized generators")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")->capture_default_str();
  app.add_option("--budget", g.budget, "Check budget for exhaustive searches")->capture_default_str();
  auto* arith = app.add_option_group("arithmetic");
  arith->add_flag("--exact", g.exact, "Exact comparisons everywhere (default)");
  arith->add_flag("--fast", g.fast, "Floating-point comparisons with exact fallback near the boundary");
  arith->require_option(0, 1);
  app.add_option("--max-order", g.max_order, "Largest field order accepted")->capture_default_str();

  std::function<int()> action;
  std::string command;

  // witnesses
  FieldArgs w_field;
  std::string w_e1, w_e2;
  bool w_exclude = false;
  auto* w = app.add_subcommand("witnesses", "All (u, y), y != 0, with u + y in E1 and u*y in E2");
  w_field.add(w);
  w->add_option("--e1", w_e1, "Subset spec for E1")->required();
  w->add_option("--e2", w_e2, "Subset spec for E2")->required();
  w->add_flag("--exclude-degenerate", w_exclude, "Drop pairs with u + y = u*y");
  w->callback([&] {
    command = "witnesses";
    action = [&] {
      const FiniteField f = w_field.get(g);
      const Subset e1 = parse_subset(f, w_e1), e2 = parse_subset(f, w_e2);
      const auto ws = sumprod_witnesses(e1, e2, w_exclude, g.threads);
      json cfg = g.config();
      cfg["e1"] = w_e1;
      cfg["e2"] = w_e2;
      cfg["exclude_degenerate"] = w_exclude;
      json res = {{"e1_size", e1.size()},
                  {"e2_size", e2.size()},
                  {"hypothesis_met", e1.size() * e2.size() > 6 * std::size_t{f.order()}},
                  {"count", ws.size()},
                  {"witnesses", witness_list(ws)}};
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(!ws.empty(), "found", "not_found"), res), g.mode());
      return ws.empty() ? cli::kNegative : cli::kOk;
    };
  });

  // bound-check
  std::string b_field, b_e1, b_e2, b_sweep;
  std::size_t b_s = 0;
  std::uint32_t b_qmax = 9, b_pairs = 200;
  auto* b = app.add_subcommand("bound-check", "Check |D| against the displayed cardinality bound");
  b->add_option("--field", b_field, "Field descriptor (single-instance mode)");
  b->add_option("--e1", b_e1, "Subset spec for E1");
  b->add_option("--e2", b_e2, "Subset spec for E2");
  b->add_option("--s", b_s, "Threshold s")->capture_default_str();
  b->add_option("--sweep", b_sweep, "exhaustive (all subset pairs) or random")->check(CLI::IsMember({"exhaustive", "random"}));
  b->add_option("--qmax", b_qmax, "Largest field order in a sweep")->capture_default_str();
  b->add_option("--pairs", b_pairs, "Random pairs per field")->capture_default_str();
  b->callback([&] {
    command = "bound-check";
    action = [&] {
      json cfg = g.config();
      cfg["s"] = b_s;
      if (b_sweep.empty()) {
        if (b_field.empty() || b_e1.empty() || b_e2.empty()) throw ParseError("bound-check needs --field, --e1, --e2 or --sweep");
        const FiniteField f = FiniteField::parse(b_field, g.max_order);
        const Subset e1 = parse_subset(f, b_e1), e2 = parse_subset(f, b_e2);
        cfg["e1"] = b_e1;
        cfg["e2"] = b_e2;
        const auto rep = verify_cardinality_bound(e1, e2, b_s, g.threads);
        json res = {{"d_set", rep.d_set.indices()}, {"d_size", rep.d_set.size()}, {"bound", bound_json(rep.bound)},
                    {"holds", rep.holds}, {"witnesses", witness_list(rep.witnesses)}};
        cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(rep.holds, "holds", "violated"), res), g.mode());
        return rep.holds ? cli::kOk : cli::kNegative;
      }
      if (b_qmax > 64 && b_sweep == "exhaustive") throw ParseError("exhaustive sweeps are limited to q <= 64; use --qmax <= 12 in practice");
      cfg["sweep"] = b_sweep;
      cfg["qmax"] = b_qmax;
      if (b_sweep == "random") cfg["pairs"] = b_pairs;
      json fields = json::array();
      std::uint64_t instances = 0, failures = 0, vacuous = 0;
      json counterexamples = json::array();
      for (std::uint32_t q : prime_powers(2, b_qmax)) {
        const FiniteField f = FiniteField::of_order(q, g.max_order);
        std::uint64_t field_instances = 0;
        auto check = [&](const Subset& e1, const Subset& e2) {
          if (b_s >= std::min(e1.size(), e2.size())) return;
          ++instances;
          ++field_instances;
          const auto rep = verify_cardinality_bound(e1, e2, b_s, g.threads);
          if (rep.bound.vacuous) ++vacuous;
          if (!rep.holds) {
            ++failures;
            if (counterexamples.size() < 20) counterexamples.push_back({{"field", f.descriptor()}, {"e1", e1.indices()}, {"e2", e2.indices()}});
          }
        };
        if (b_sweep == "exhaustive") {
          if (q > 12) throw ParseError("exhaustive sweeps enumerate 4^q pairs; keep --qmax <= 12");
          std::vector<Subset> all;
          for (std::uint64_t m = 0; m < (1ull << q); ++m) {
            Subset s(f);
            for (Index i = 0; i < q; ++i)
              if ((m >> i) & 1u) s.insert(i);
            all.push_back(std::move(s));
          }
          for (const auto& e1 : all)
            for (const auto& e2 : all) check(e1, e2);
        } else {
          Rng rng(derived_seed(g.seed, "bound-check", q));
          for (std::uint32_t i = 0; i < b_pairs; ++i) {
            const auto k1 = static_cast<std::uint32_t>(rng.between(0, q));
            const auto k2 = static_cast<std::uint32_t>(rng.between(0, q));
            const auto a = rng.sample(q, k1);
            const auto c = rng.sample(q, k2);
            check(Subset::of(f, a), Subset::of(f, c));
          }
        }
        fields.push_back({{"q", q}, {"instances", field_instances}});
      }
      json res = {{"instances", instances}, {"failures", failures}, {"vacuous", vacuous}, {"fields", fields},
                  {"counterexamples", counterexamples}};
      cli::emit(std::cout, cli::envelope(command, cfg, "", "", status_of(failures == 0, "holds", "violated"), res), g.mode());
      return failures == 0 ? cli::kOk : cli::kNegative;
    };
  });

  // triples
  FieldArgs t_field;
  std::string t_coloring;
  bool t_require_u = false;
  auto* t = app.add_subcommand("triples", "Monochromatic {u, y+u, yu} in a coloring");
  t_field.add(t);
  t->add_option("--coloring", t_coloring, "qr, random:r:seed, or comma-separated colors per index")->required();
  t->add_flag("--require-u", t_require_u, "Also require u in the same color class");
  t->callback([&] {
    command = "triples";
    action = [&] {
      const FiniteField f = t_field.get(g);
      const Coloring c = parse_coloring(f, t_coloring);
      const auto found = monochromatic_triple_search(c, t_require_u);
      json cfg = g.config();
      cfg["coloring"] = t_coloring;
      cfg["require_u"] = t_require_u;
      json list = json::array();
      for (const auto& x : found) list.push_back({{"u", x.u}, {"y", x.y}, {"color", x.color}});
      json res = {{"colors", c.colors()}, {"num_colors", c.num_colors()}, {"count", found.size()}, {"triples", list}};
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(!found.empty(), "found", "not_found"), res), g.mode());
      return found.empty() ? cli::kNegative : cli::kOk;
    };
  });

  // audit-colorings
  std::string a_field;
  std::uint32_t a_colors = 2, a_qmax = 0;
  bool a_no_prune = false, a_primes_only = false;
  auto* a = app.add_subcommand("audit-colorings", "Search every r-coloring for one avoiding {u, y+u, yu}");
  a->add_option("--field", a_field, "Field descriptor");
  a->add_option("--colors", a_colors, "Number of colors r")->capture_default_str();
  a->add_flag("--no-prune", a_no_prune, "Disable symmetry pruning");
  a->add_option("--scan-qmax", a_qmax, "Scan q = 2..Q and report the smallest q where every coloring has the pattern");
  a->add_flag("--primes-only", a_primes_only, "With --scan-qmax, restrict to prime q");
  a->callback([&] {
    command = "audit-colorings";
    action = [&] {
      json cfg = g.config();
      cfg["colors"] = a_colors;
      cfg["prune"] = !a_no_prune;
      auto verdict_name = [](AuditVerdict v) {
        return v == AuditVerdict::all_colorings_contain_pattern ? "all_colorings_contain_pattern"
               : v == AuditVerdict::avoiding_coloring_found    ? "avoiding_coloring_found"
                                                                : "budget_exceeded";
      };
      auto audit_json = [&](const FiniteField& f, const AuditResult& r) {
        json out = {{"field", f.descriptor()}, {"verdict", verdict_name(r.verdict)}, {"candidates_checked", r.candidates_checked},
                    {"candidates_enumerated", r.candidates_enumerated}, {"pruned", r.pruned}};
        out["witness"] = r.witness ? json(r.witness->colors()) : json();
        return out;
      };
      if (a_qmax > 0) {
        cfg["scan_qmax"] = a_qmax;
        cfg["primes_only"] = a_primes_only;
        json rows = json::array();
        std::optional<std::uint32_t> minimal;
        bool exhausted = false;
        for (std::uint32_t q : prime_powers(2, a_qmax)) {
          const FiniteField f = FiniteField::of_order(q, g.max_order);
          if (a_primes_only && f.degree() != 1) continue;
          const auto r = exhaustive_coloring_audit(f, a_colors, !a_no_prune, g.budget);
          rows.push_back(audit_json(f, r));
          if (r.verdict == AuditVerdict::budget_exceeded) {
            exhausted = true;
            break;
          }
          if (r.verdict == AuditVerdict::all_colorings_contain_pattern && !minimal) minimal = q;
        }
        json res = {{"audits", rows}};
        res["minimal_q"] = minimal ? json(*minimal) : json();
        const char* status = minimal ? "found" : exhausted ? "budget_exceeded" : "not_found";
        cli::emit(std::cout, cli::envelope(command, cfg, "", "", status, res), g.mode());
        return minimal ? cli::kOk : cli::kNegative;
      }
      if (a_field.empty()) throw ParseError("audit-colorings needs --field or --scan-qmax");
      const FiniteField f = FiniteField::parse(a_field, g.max_order);
      const auto r = exhaustive_coloring_audit(f, a_colors, !a_no_prune, g.budget);
      const bool ok = r.verdict == AuditVerdict::all_colorings_contain_pattern;
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), ok ? "holds" : r.verdict == AuditVerdict::budget_exceeded ? "budget_exceeded" : "violated", audit_json(f, r)), g.mode());
      return ok ? cli::kOk : cli::kNegative;
    };
  });

  // tower
  FieldArgs tw_field;
  std::string tw_e;
  std::uint32_t tw_k = 1;
  auto* tw = app.add_subcommand("tower", "First x_0..x_k with every +/* left-nested evaluation in E");
  tw_field.add(tw);
  tw->add_option("--e", tw_e, "Subset spec for E")->required();
  tw->add_option("--k", tw_k, "Number of operations k")->capture_default_str();
  tw->callback([&] {
    command = "tower";
    action = [&] {
      const FiniteField f = tw_field.get(g);
      const Subset e = parse_subset(f, tw_e);
      const auto r = iterated_tower_search(e, tw_k, g.budget);
      json cfg = g.config();
      cfg["e"] = tw_e;
      cfg["k"] = tw_k;
      const char* status = r.status == SearchStatus::found ? "found" : r.status == SearchStatus::not_found ? "not_found" : "budget_exceeded";
      json res = {{"tuples_checked", r.tuples_checked}};
      res["tuple"] = r.status == SearchStatus::found ? json(r.tuple) : json();
      if (r.status == SearchStatus::found) res["values"] = tower_values(f, r.tuple);
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status, res), g.mode());
      return r.status == SearchStatus::found ? cli::kOk : cli::kNegative;
    };
  });

  // counterexample
  std::uint32_t c_p = 7;
  std::string c_lo = "1/3", c_hi = "2/3";
  auto* c = app.add_subcommand("counterexample", "E = {x in GF(p) : lo <= x/p < hi} and its triple check");
  c->add_option("--p", c_p, "Prime p")->required();
  c->add_option("--lo", c_lo, "Lower end of the interval")->capture_default_str();
  c->add_option("--hi", c_hi, "Upper end of the interval")->capture_default_str();
  c->callback([&] {
    command = "counterexample";
    action = [&] {
      const Subset e = character_counterexample(c_p, parse_rational(c_lo), parse_rational(c_hi));
      const auto triple = find_additive_triple(e);
      json cfg = g.config();
      cfg["p"] = c_p;
      cfg["lo"] = to_string(parse_rational(c_lo));
      cfg["hi"] = to_string(parse_rational(c_hi));
      json res = {{"e", e.indices()}, {"size", e.size()}, {"triple_free", !triple}};
      res["triple"] = triple ? json({triple->u, triple->y}) : json();
      cli::emit(std::cout, cli::envelope(command, cfg, "field", e.field().descriptor(), status_of(!triple, "holds", "violated"), res), g.mode());
      return triple ? cli::kNegative : cli::kOk;
    };
  });

  // vector-search
  FieldArgs v_field;
  std::uint32_t v_d = 1;
  std::string v_alpha, v_b;
  auto* v = app.add_subcommand("vector-search", "u, y with y + u*alpha and u*y both in B subset of F^d");
  v_field.add(v);
  v->add_option("--d", v_d, "Dimension d")->capture_default_str();
  v->add_option("--alpha", v_alpha, "Comma-separated nonzero alpha_i")->required();
  v->add_option("--b", v_b, "Subset spec over the q^d points (index sum y_i q^i)")->required();
  v->callback([&] {
    command = "vector-search";
    action = [&] {
      const FiniteField f = v_field.get(g);
      const auto alpha = parse_index_list(v_alpha);
      std::uint64_t points = 1;
      for (std::uint32_t i = 0; i < v_d; ++i) points *= f.order();
      if (points > g.max_order) throw FieldTooLarge("q^d exceeds --max-order");
      const IndexSet bset = parse_index_set(v_b, points, v_d == 1 ? &f : nullptr);
      const auto hit = vector_space_pattern_search(f, v_d, alpha, bset);
      json cfg = g.config();
      cfg["d"] = v_d;
      cfg["alpha"] = alpha;
      cfg["b"] = v_b;
      json res = {{"b_size", bset.size()}, {"existence_guaranteed", vector_search_guaranteed(f.order(), v_d, bset.size())}};
      res["witness"] = hit ? json({{"u", hit->u}, {"y", hit->y}}) : json();
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(hit.has_value(), "found", "not_found"), res), g.mode());
      return hit ? cli::kOk : cli::kNegative;
    };
  });

  // twisted-avg
  FieldArgs ta_field;
  ActionArgs ta_action;
  std::string ta_b, ta_c;
  auto* ta = app.add_subcommand("twisted-avg", "Average of mu(B ∩ M_u A_{-u} C) against its lower bound");
  ta_field.add(ta);
  ta_action.add(ta);
  ta->add_option("--b", ta_b, "Subset spec for B")->required();
  ta->add_option("--c", ta_c, "Subset spec for C (default: B)");
  ta->callback([&] {
    command = "twisted-avg";
    action = [&] {
      const FiniteField f = ta_field.get(g);
      const FiniteAction act = ta_action.get(f);
      const IndexSet bs = parse_space_set(ta_b, act);
      const IndexSet cs = ta_c.empty() ? bs : parse_space_set(ta_c, act);
      const auto r = twisted_average(act, bs, cs, g.fast ? Arithmetic::fast : Arithmetic::exact, g.threads);
      json cfg = g.config();
      cfg["b"] = ta_b;
      cfg["c"] = ta_c.empty() ? ta_b : ta_c;
      cfg["action"] = ta_action.describe(act);
      json res = {{"mu_b", to_string(r.mu_b)}, {"mu_c", to_string(r.mu_c)}, {"average", to_string(r.average)},
                  {"inner", to_string(r.inner)}, {"radicand", to_string(r.radicand)},
                  {"lower_bound_approx", r.lower_bound_approx}, {"holds", r.holds},
                  {"two_sided_holds", r.two_sided_holds}, {"upper_deviation", to_string(abs(r.average - r.inner))},
                  {"self_inner", to_string(r.self_inner)}, {"self_inner_at_least_square", r.self_inner_at_least_square},
                  {"statement_threshold_met", r.statement_threshold_met}, {"proof_threshold_met", r.proof_threshold_met},
                  {"positive_intersection", r.positive_intersection}, {"ergodic", r.ergodic},
                  {"decided_exactly", r.decided_exactly}};
      res["diagonal_bound_holds"] = r.diagonal_bound_holds ? json(*r.diagonal_bound_holds) : json();
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(r.holds, "holds", "violated"), res), g.mode());
      return r.holds ? cli::kOk : cli::kNegative;
    };
  });

  // vdc-check
  FieldArgs vd_field;
  ActionArgs vd_action;
  std::string vd_f, vd_c;
  auto* vd = app.add_subcommand("vdc-check", "||sum_u M_u A_{-u} f||^2 <= 3|F*| ||f||^2 after centering f");
  vd_field.add(vd);
  vd_action.add(vd);
  vd->add_option("--f", vd_f, "Comma-separated rational values of f");
  vd->add_option("--c", vd_c, "Use f = 1_C (also checks the 6|F*|mu(C) form)");
  vd->callback([&] {
    command = "vdc-check";
    action = [&] {
      const FiniteField f = vd_field.get(g);
      const FiniteAction act = vd_action.get(f);
      json cfg = g.config();
      cfg["action"] = vd_action.describe(act);
      json res;
      bool ok = false;
      if (!vd_c.empty()) {
        cfg["c"] = vd_c;
        const auto r = vdc_indicator_check(act, parse_space_set(vd_c, act));
        ok = r.core.holds && r.chain_holds && r.norm_bound_holds;
        res = {{"lhs", to_string(r.core.lhs)}, {"rhs", to_string(r.core.rhs)}, {"holds", r.core.holds},
               {"rhs_measure", to_string(r.rhs_measure)}, {"chain_holds", r.chain_holds},
               {"norm_bound_holds", r.norm_bound_holds}};
      } else {
        if (vd_f.empty()) throw ParseError("vdc-check needs --f or --c");
        cfg["f"] = vd_f;
        const auto values = parse_rational_list(vd_f);
        if (values.size() != act.size()) throw ParseError("--f needs exactly " + std::to_string(act.size()) + " values");
        const auto r = vdc_norm_check(act, FunctionOnSpace::from_rationals(values));
        ok = r.holds;
        res = {{"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}, {"holds", r.holds}};
      }
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(ok, "holds", "violated"), res), g.mode());
      return ok ? cli::kOk : cli::kNegative;
    };
  });

  // projections
  FieldArgs pr_field;
  ActionArgs pr_action;
  std::string pr_f;
  auto* pr = app.add_subcommand("projections", "P_A f, P_M f and the commutation deviation");
  pr_field.add(pr);
  pr_action.add(pr);
  pr->add_option("--f", pr_f, "Comma-separated rational values of f")->required();
  pr->callback([&] {
    command = "projections";
    action = [&] {
      const FiniteField f = pr_field.get(g);
      const FiniteAction act = pr_action.get(f);
      const auto values = parse_rational_list(pr_f);
      if (values.size() != act.size()) throw ParseError("--f needs exactly " + std::to_string(act.size()) + " values");
      const auto fn = FunctionOnSpace::from_rationals(values);
      const auto pa = proj_additive(act, fn);
      const auto pm = proj_multiplicative(act, fn);
      const auto dev = check_projection_commutation(act, fn);
      json cfg = g.config();
      cfg["f"] = pr_f;
      cfg["action"] = pr_action.describe(act);
      json res = {{"p_a", rationals_json(pa.values())},
                  {"p_m", rationals_json(pm.values())},
                  {"p_a_p_m", rationals_json(proj_additive(act, pm).values())},
                  {"deviation", to_string(dev)}};
      cli::emit(std::cout, cli::envelope(command, cfg, "field", f.descriptor(), status_of(dev == 0, "holds", "violated"), res), g.mode());
      return dev == 0 ? cli::kOk : cli::kNegative;
    };
  });

  // folner-build
  FolnerArgs fb;
  bool fb_list = false;
  auto* fbc = app.add_subcommand("folner-build", "Construct F = {a/P + k/D} and report its size");
  fb.add(fbc, true);
  fbc->add_flag("--list", fb_list, "Include every element");
  fbc->callback([&] {
    command = "folner-build";
    action = [&] {
      const FolnerSet set = FolnerSet::build(fb.spec());
      json cfg = g.config();
      cfg["spec"] = spec_json(*set.spec());
      json res = {{"size", set.size()}, {"base_prime", set.base_prime()},
                  {"multipliers", rationals_json(set.multipliers())}};
      if (fb_list) res["elements"] = rationals_json(set.elements());
      cli::emit(std::cout, cli::envelope(command, cfg, "family", set.label(), "ok", res), g.mode());
      return cli::kOk;
    };
  });

  // folner-invariance
  FolnerArgs fi;
  std::string fi_add = "1,1/2", fi_mul = "2,1/2,3", fi_scale;
  bool fi_inverse = false;
  auto* fic = app.add_subcommand("folner-invariance", "Invariance ratios and the scaling / inversion identities");
  fi.add(fic, true);
  fic->add_option("--additive", fi_add, "Additive probes")->capture_default_str();
  fic->add_option("--multiplicative", fi_mul, "Multiplicative probes")->capture_default_str();
  fic->add_option("--scale", fi_scale, "Also check the identities for bF");
  fic->add_flag("--inverse", fi_inverse, "Also check the identities for F^{-1}");
  fic->callback([&] {
    command = "folner-invariance";
    action = [&] {
      const FolnerSet set = FolnerSet::build(fi.spec());
      const auto adds = fi_add.empty() ? std::vector<Rational>{} : parse_rational_list(fi_add);
      const auto muls = fi_mul.empty() ? std::vector<Rational>{} : parse_rational_list(fi_mul);
      json cfg = g.config();
      cfg["spec"] = spec_json(*set.spec());
      cfg["additive"] = rationals_json(adds);
      cfg["multiplicative"] = rationals_json(muls);
      json ratios = json::array();
      for (const auto& x : adds) {
        const auto r = invariance_ratio(set, x, InvarianceMode::additive, g.threads);
        ratios.push_back({{"mode", "additive"}, {"x", to_string(x)}, {"ratio", to_string(r)}, {"approx", to_double(r)}});
      }
      for (const auto& x : muls) {
        const auto r = invariance_ratio(set, x, InvarianceMode::multiplicative, g.threads);
        ratios.push_back({{"mode", "multiplicative"}, {"x", to_string(x)}, {"ratio", to_string(r)}, {"approx", to_double(r)}});
      }
      json res = {{"size", set.size()}, {"ratios", ratios}};
      bool ok = true;
      auto checks_json = [&](const FamilyCheckReport& rep) {
        json list = json::array();
        for (const auto& ck : rep.checks) {
          list.push_back({{"mode", to_string(ck.mode)}, {"probe", to_string(ck.probe)}, {"transformed", to_string(ck.transformed_ratio)},
                          {"substituted_probe", to_string(ck.substituted_probe)}, {"original", to_string(ck.original_ratio)}, {"equal", ck.equal}});
        }
        ok = ok && rep.all_equal;
        return json{{"transform", rep.transform}, {"all_equal", rep.all_equal}, {"checks", list}};
      };
      if (!fi_scale.empty()) {
        cfg["scale"] = to_string(parse_rational(fi_scale));
        res["scaled"] = checks_json(scaled_family_check(set, parse_rational(fi_scale), adds, muls, g.threads));
      }
      if (fi_inverse) {
        cfg["inverse"] = true;
        res["inverse"] = checks_json(inverse_family_check(set, muls, g.threads));
      }
      cli::emit(std::cout, cli::envelope(command, cfg, "family", set.label(), status_of(ok, "holds", "violated"), res), g.mode());
      return ok ? cli::kOk : cli::kNegative;
    };
  });

  // density
  FolnerArgs dn;
  std::string dn_pred, dn_csv;
  std::uint32_t dn_min = 1, dn_max = 2;
  auto* dnc = app.add_subcommand("density", "Exact |E ∩ F_N|/|F_N| along the default family (a truncated estimate)");
  dn.add(dnc, false);
  dnc->add_option("--predicate", dn_pred, "Predicate, e.g. num_mod(3,0) or vpart_mod(3,0)")->required();
  dnc->add_option("--n-min", dn_min, "First N")->capture_default_str();
  dnc->add_option("--n-max", dn_max, "Last N")->capture_default_str();
  dnc->add_option("--csv", dn_csv, "Also write the per-N table as CSV to this path");
  dnc->callback([&] {
    command = "density";
    action = [&] {
      const Predicate p = Predicate::parse(dn_pred);
      const auto r = density(p, dn_min, dn_max, dn.params(), g.threads);
      json cfg = g.config();
      cfg["predicate"] = p.to_string();
      cfg["n_min"] = dn_min;
      cfg["n_max"] = dn_max;
      cfg["cap"] = dn.cap;
      cfg["den_rule"] = dn.den_rule;
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"family", row.spec.descriptor()}, {"size", row.size}, {"hits", row.hits},
                        {"ratio", to_string(row.ratio)}, {"approx", to_double(row.ratio)}});
      }
      json res = {{"estimate_kind", "truncated estimate"}, {"rows", rows}, {"upper", to_string(r.upper)},
                  {"lower", to_string(r.lower)}};
      if (!dn_csv.empty()) {
        std::ofstream out(dn_csv);
        if (!out) throw Error("cannot write '" + dn_csv + "'");
        out << "n,family,size,hits,ratio,approx\n";
        for (const auto& row : r.rows) {
          out << row.n << ",\"" << row.spec.descriptor() << "\"," << row.size << "," << row.hits << ","
              << to_string(row.ratio) << "," << to_double(row.ratio) << "\n";
        }
      }
      cli::emit(std::cout, cli::envelope(command, cfg, "family",
                                         "folner-default(N=" + std::to_string(dn_min) + ".." + std::to_string(dn_max) +
                                             ",cap=" + std::to_string(dn.cap) + ",den_rule=" + dn.den_rule + ")",
                                         "ok", res), g.mode());
      return cli::kOk;
    };
  });

  // density-experiment
  FolnerArgs de;
  std::string de_pred, de_eps = "1/10", de_slack = "1/10";
  std::uint32_t de_n = 1;
  std::uint64_t de_probes = 200;
  bool de_all = false;
  auto* dec = app.add_subcommand("density-experiment", "Density of (E - u) ∩ (E/u) for u in F_N against d(E)^2 - eps");
  de.add(dec, false);
  dec->add_option("--predicate", de_pred, "Value predicate for E")->required();
  dec->add_option("--n", de_n, "Family index N")->capture_default_str();
  dec->add_option("--eps", de_eps, "eps > 0")->capture_default_str();
  dec->add_option("--slack", de_slack, "Slack for the empirical comparison")->capture_default_str();
  dec->add_option("--probe-budget", de_probes, "Number of u probed")->capture_default_str();
  dec->add_flag("--list-candidates", de_all, "List every probed u");
  dec->callback([&] {
    command = "density-experiment";
    action = [&] {
      const Predicate p = Predicate::parse(de_pred);
      const auto r = sumprod_density_experiment(p, de_n, parse_rational(de_eps), de_probes, parse_rational(de_slack),
                                                de.params(), g.threads);
      json cfg = g.config();
      cfg["predicate"] = p.to_string();
      cfg["n"] = de_n;
      cfg["eps"] = to_string(r.eps);
      cfg["slack"] = to_string(r.slack);
      cfg["probe_budget"] = de_probes;
      cfg["cap"] = de.cap;
      cfg["den_rule"] = de.den_rule;
      json res = {{"estimate_kind", "truncated estimate"}, {"d_e", to_string(r.d_e)}, {"threshold", to_string(r.threshold)},
                  {"vacuous", r.vacuous}, {"probed", r.probed}, {"qualifying", r.qualifying},
                  {"qualifying_fraction", to_string(r.qualifying_fraction)}, {"d_lower_bound", to_string(r.d_lower_bound)},
                  {"meets_bound_with_slack", r.meets_bound_with_slack}, {"budget_exceeded", r.budget_exceeded}};
      json cands = json::array();
      for (const auto& cd : r.candidates) {
        if (de_all || cd.qualifies) cands.push_back({{"u", to_string(cd.u)}, {"density", to_string(cd.density)}, {"qualifies", cd.qualifies}});
      }
      res["candidates"] = cands;
      const char* status = r.budget_exceeded ? "budget_exceeded" : r.meets_bound_with_slack ? "holds" : "violated";
      cli::emit(std::cout, cli::envelope(command, cfg, "family", r.spec.descriptor(), status, res), g.mode());
      return !r.budget_exceeded && r.meets_bound_with_slack ? cli::kOk : cli::kNegative;
    };
  });

  // sweep
  std::string sw_name;
  auto* sw = app.add_subcommand("sweep", "Run a named verification suite");
  sw->add_option("name", sw_name, "Suite name")->required();
  sw->callback([&] {
    command = "sweep";
    action = [&] {
      const auto r = run_sweep(sw_name, {g.seed, g.threads});
      json cfg = g.config();
      cfg["suite"] = sw_name;
      cli::emit(std::cout, cli::envelope(command, cfg, "", "", status_of(r.passed, "holds", "violated"), to_json(r)), g.mode());
      return r.passed ? cli::kOk : cli::kNegative;
    };
  });

  std::string names;
  for (const auto& n : sweep_names()) names += (names.empty() ? "" : ", ") + n;
  sw->footer("Suites: " + names);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kError;
  }
}

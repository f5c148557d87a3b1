#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <groupalg/acceptance.hpp>
#include <groupalg/algebra.hpp>
#include <groupalg/constructions.hpp>
#include <groupalg/errors.hpp>
#include <groupalg/grothendieck.hpp>
#include <groupalg/group.hpp>
#include <groupalg/homcount.hpp>
#include <groupalg/json_io.hpp>
#include <groupalg/limits.hpp>
#include <groupalg/numeric.hpp>
#include <groupalg/ring.hpp>

using namespace groupalg;

namespace {

// ---------- reference parsing ----------

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParams("cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw BadParams(path + " is not valid JSON");
  return j;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string piece =
        s.substr(pos, comma == std::string::npos ? std::string::npos
                                                 : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw BadParams(std::string(what) + ": \"" + piece +
                      "\" is not an integer");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

FiniteGroup parse_group(const std::string& ref) {
  if (ref.empty()) throw BadParams("empty group reference");
  if (ref[0] == '@') return group_from_json(read_json_file(ref.substr(1)));
  if (ref.rfind("shuffled:", 0) == 0) {
    const std::string rest = ref.substr(9);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw BadParams("shuffled needs shuffled:SEED:GROUP, got \"" + ref +
                      "\"");
    const std::vector<int> seed =
        parse_int_list(rest.substr(0, colon), "shuffle seed");
    if (seed.size() != 1 || seed[0] < 0)
      throw BadParams("shuffle seed must be one nonnegative integer");
    return shuffled(parse_group(rest.substr(colon + 1)),
                    static_cast<unsigned>(seed[0]));
  }
  const std::size_t colon = ref.find(':');
  const std::string name = ref.substr(0, colon);
  const std::vector<int> params =
      colon == std::string::npos
          ? std::vector<int>{}
          : parse_int_list(ref.substr(colon + 1), "group parameters");
  return catalog_group(name, params);
}

RingPtr parse_ring(const std::string& ref) {
  if (ref.empty()) throw BadParams("empty ring reference");
  if (ref[0] == '@') return ring_from_json(read_json_file(ref.substr(1)));
  const std::size_t colon = ref.find(':');
  const std::string name = ref.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : ref.substr(colon + 1);
  if (name == "Fp" || name == "Zn") {
    const std::vector<int> v = parse_int_list(arg, "ring parameter");
    if (v.size() != 1)
      throw BadParams(name + " takes exactly one parameter, got \"" + arg +
                      "\"");
    return name == "Fp" ? ring_fp(v[0]) : ring_zn(v[0]);
  }
  throw BadParams("unknown ring reference \"" + ref +
                  "\" (forms: Fp:P, Zn:N, @file.json)");
}

// Splits on ';' at parenthesis depth zero, so parenthesized composite
// arguments keep their own separators.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (const char c : s) {
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0)
      throw BadParams("unbalanced parentheses in \"" + s + "\"");
    if (c == ';' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw BadParams("unbalanced parentheses in \"" + s + "\"");
  parts.push_back(cur);
  return parts;
}

std::string strip_parens(std::string s) {
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) {
        wraps = false;
        break;
      }
    }
    if (!wraps) break;
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

AlgebraPtr parse_algebra(const std::string& raw) {
  const std::string ref = strip_parens(raw);
  if (ref.empty()) throw BadParams("empty algebra reference");
  if (ref[0] == '@') return algebra_from_json(read_json_file(ref.substr(1)));
  const std::size_t colon = ref.find(':');
  const std::string kind = ref.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : ref.substr(colon + 1);
  if (kind == "ring") return ring_as_algebra(parse_ring(rest));
  if (kind == "groupalgebra" || kind == "aug") {
    const auto parts = split_args(rest);
    if (parts.size() != 2)
      throw BadParams(kind + " needs RING;GROUP, got \"" + rest + "\"");
    const RingPtr r = parse_ring(strip_parens(parts[0]));
    const FiniteGroup g = parse_group(strip_parens(parts[1]));
    return kind == "aug" ? augmentation_ideal(r, g) : group_algebra(r, g);
  }
  if (kind == "un") return unitization(parse_algebra(rest));
  if (kind == "product") {
    const auto parts = split_args(rest);
    std::vector<AlgebraPtr> factors;
    for (const auto& p : parts) factors.push_back(parse_algebra(p));
    return algebra_product(factors);
  }
  if (kind == "baer") return baer_algebra(parse_group(rest));
  throw BadParams("unknown algebra reference \"" + ref +
                  "\" (forms: @file.json, ring:R, groupalgebra:R;G, "
                  "aug:R;G, un:A, product:A;B;..., baer:G)");
}

// ---------- run configuration ----------

struct RunConfig {
  std::string command;
  std::string format;
  std::optional<std::int64_t> max_order, max_algebra_elements, search_budget;
  std::optional<std::string> input, output;
};

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw BadParams("config: expected a JSON object");
  static const std::vector<std::string> allowed = {
      "command", "max_order", "max_algebra_elements",
      "search_budget", "format", "input", "output"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& a : allowed) known = known || item.key() == a;
    if (!known) throw BadParams("config: unknown field \"" + item.key() + "\"");
  }
  RunConfig cfg;
  const auto get_str = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string())
      throw BadParams(std::string("config: ") + key + " must be a string");
    return j[key].get<std::string>();
  };
  const auto get_bound = [&](const char* key) -> std::optional<std::int64_t> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_integer())
      throw BadParams(std::string("config: ") + key + " must be an integer");
    const std::int64_t v = j[key].get<std::int64_t>();
    if (v <= 0)
      throw BadParams(std::string("config: ") + key + " must be positive");
    return v;
  };
  cfg.command = get_str("command").value_or("");
  cfg.format = get_str("format").value_or("");
  if (!cfg.format.empty() && cfg.format != "text" && cfg.format != "json")
    throw BadParams("config: format must be \"text\" or \"json\"");
  cfg.max_order = get_bound("max_order");
  cfg.max_algebra_elements = get_bound("max_algebra_elements");
  cfg.search_budget = get_bound("search_budget");
  cfg.input = get_str("input");
  cfg.output = get_str("output");
  return cfg;
}

// ---------- small output helpers ----------

std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string map_line(const std::vector<int>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i)
    s += (i ? " " : "") + std::to_string(m[i]);
  return s;
}

std::string term_lines(const Certificate& cert) {
  std::string s;
  for (const auto& t : cert.terms)
    s += "  " + to_string(t.q) + " * " + t.algebra->label + "\n";
  return s;
}

std::string witness_line(const HereditaryWitness& w) {
  return "witness: A=" + w.a->label + ", B=" + w.b->label +
         ", n=" + std::to_string(w.n);
}

int prime_of_order(int n, const std::string& label) {
  if (n < 2)
    throw BadParams("no default coefficient prime for " + label +
                    "; pass --p or --pool");
  int p = 2;
  while (n % p != 0) ++p;
  int m = n;
  while (m % p == 0) m /= p;
  if (m != 1)
    throw BadParams(label + " is not a prime-power group; pass --p or --pool");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite groups, their modular group algebras, and unit-group "
      "certificates: construction, hom counting, span membership, and the "
      "group-algebra comparison pipeline."};
  app.require_subcommand(1);
  app.footer(
      "References:\n"
      "  groups    name:params (cyclic:8, abelian:4,2, dihedral:4,\n"
      "            quaternion8, heisenberg:3, modular_p3:3),\n"
      "            shuffled:SEED:GROUP, or @file.json\n"
      "  rings     Fp:P, Zn:N, or @file.json\n"
      "  algebras  ring:R, groupalgebra:R;G, aug:R;G, un:A,\n"
      "            product:A;B;..., baer:G, or @file.json\n"
      "            (parenthesize nested arguments that contain ';')\n"
      "Environment bounds (integer overrides, read at startup):\n"
      "  GROUPALG_MAX_GROUP_ORDER, GROUPALG_SUBGROUP_ENUM_BOUND,\n"
      "  GROUPALG_MAX_ALGEBRA_ELEMENTS, GROUPALG_SEARCH_BUDGET,\n"
      "  GROUPALG_MAX_MAXIMAL_SUBGROUPS, GROUPALG_ALGEBRA_HOM_BUDGET,\n"
      "  GROUPALG_BOVDI_BUDGET, GROUPALG_EXHAUSTIVE_SCAN_BOUND\n"
      "Exit codes: 0 verdict reached, 1 inconclusive (budget, bounds, or an\n"
      "unsupported class), 2 usage error, 3 internal invariant violation.");

  std::string config_path, format_flag, out_path;
  bool json_flag = false;
  std::int64_t opt_max_order = 0, opt_max_elems = 0, opt_budget = 0;
  app.add_option("--config", config_path,
                 "JSON run configuration (unknown fields rejected)");
  app.add_option("--format", format_flag, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--json", json_flag, "Shorthand for --format json");
  app.add_option("--out", out_path, "Write the report to this file");
  app.add_option("--max-order", opt_max_order,
                 "Cap on materialized group orders");
  app.add_option("--max-algebra-elements", opt_max_elems,
                 "Cap on algebra element enumeration");
  app.add_option("--search-budget", opt_budget,
                 "Backtracking node budget");

  std::string a_group, a_ring, a_g, a_h, a_algebra;
  std::vector<std::string> a_pool;
  int a_p = 0, a_n = -1, a_dim = 0;
  std::int64_t a_budget = 0;
  bool a_table = false, a_skip_check = false, a_with_constructions = false;

  // --h is an option name below, so subcommand help must not claim -h.
  const auto add_sub = [&app](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->set_help_flag("--help", "Print this help message and exit");
    s->fallthrough();  // global options are accepted after the subcommand too
    return s;
  };

  auto* c_catalog = add_sub("catalog", "List built-in groups");
  auto* c_subgroups =
      add_sub("subgroups", "Enumerate all subgroups of a group");
  c_subgroups->add_option("--group", a_group, "Group reference");
  auto* c_invariants = add_sub(
      "invariants", "Structural invariants of a group");
  c_invariants->add_option("--group", a_group, "Group reference");
  auto* c_iso =
      add_sub("iso", "Decide isomorphism with an explicit map");
  c_iso->add_option("--g", a_g, "First group")->required();
  c_iso->add_option("--h", a_h, "Second group")->required();
  auto* c_unitgroup = add_sub(
      "unitgroup", "Unit group of a group algebra R[G]");
  c_unitgroup->add_option("--ring", a_ring, "Ring reference")->required();
  c_unitgroup->add_option("--group", a_group, "Group reference");
  c_unitgroup->add_flag("--table", a_table, "Force full tabulation");
  auto* c_qgroup = add_sub(
      "qgroup", "Circle group of the quasi-regular elements of an algebra");
  c_qgroup->add_option("--algebra", a_algebra, "Algebra reference");
  auto* c_groupalgebra = add_sub(
      "groupalgebra", "Materialize a group algebra (use --json to export)");
  c_groupalgebra->add_option("--ring", a_ring, "Ring reference")->required();
  c_groupalgebra->add_option("--group", a_group, "Group reference");
  auto* c_homcount =
      add_sub("homcount", "Count homomorphisms g -> h");
  c_homcount->add_option("--g", a_g, "Source group")->required();
  c_homcount->add_option("--h", a_h, "Target group")->required();
  auto* c_epicount =
      add_sub("epicount", "Count surjective homomorphisms g -> h");
  c_epicount->add_option("--g", a_g, "Source group")->required();
  c_epicount->add_option("--h", a_h, "Target group")->required();
  c_epicount->add_flag("--skip-check", a_skip_check,
                       "Skip the brute-force cross-check on small inputs");
  auto* c_lovasz = add_sub(
      "lovasz", "Compare two groups by hom counts over subgroup classes");
  c_lovasz->add_option("--g", a_g, "First group")->required();
  c_lovasz->add_option("--h", a_h, "Second group")->required();
  auto* c_certificate =
      add_sub("certificate", "Unit-class certificates");
  c_certificate->require_subcommand(1);
  auto* c_cert_cyclic = c_certificate->add_subcommand(
      "cyclic", "Tower of certificates for C_{p^i}, i = 0..n");
  c_cert_cyclic->fallthrough();
  c_cert_cyclic->add_option("--p", a_p, "Prime")->required();
  c_cert_cyclic->add_option("--n", a_n, "Top exponent")->required();
  auto* c_membership = add_sub(
      "membership", "Express a group class through unit groups of a pool");
  c_membership->add_option("--group", a_group, "Target group");
  c_membership->add_option("--p", a_p,
                           "Add the default pool for this prime");
  c_membership->add_option("--pool", a_pool, "Extra pool algebra (repeatable)");
  auto* c_hereditary = add_sub(
      "hereditary", "Run membership for every subgroup class of a group");
  c_hereditary->add_option("--group", a_group, "Group reference");
  c_hereditary->add_option("--p", a_p,
                           "Coefficient prime (default: from the group order)");
  c_hereditary->add_option("--pool", a_pool,
                           "Extra pool algebra (repeatable)");
  c_hereditary->add_flag(
      "--with-constructions", a_with_constructions,
      "Extend the pool with unitized nilpotent algebras for nonabelian "
      "subgroup classes");
  auto* c_baer = add_sub(
      "baer", "Commutator-halving algebra of a class-2 odd-exponent group");
  c_baer->add_option("--group", a_group, "Group reference");
  auto* c_bovdi = add_sub(
      "bovdi-search",
      "Search structure constants over F2 for an algebra with a given "
      "circle group");
  c_bovdi->add_option("--group", a_group, "Group reference");
  c_bovdi->add_option("--dim", a_dim, "Algebra dimension")->required();
  c_bovdi->add_option("--budget", a_budget,
                      "Candidate budget (0 = configured default)");
  auto* c_pipeline = add_sub(
      "pipeline",
      "Compare two groups through recovered subgroup hom counts");
  c_pipeline->add_option("--ring", a_ring, "Coefficient ring (prime field)")
      ->required();
  c_pipeline->add_option("--g", a_g, "First group")->required();
  c_pipeline->add_option("--h", a_h, "Second group")->required();
  auto* c_verify =
      add_sub("verify-all", "Run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = config_from_json(read_json_file(config_path));
    CLI::App* sub = app.get_subcommands().front();
    if (!cfg.command.empty() && cfg.command != sub->get_name())
      throw BadParams("config names command \"" + cfg.command +
                      "\" but \"" + sub->get_name() + "\" was invoked");

    const auto bound = [](std::int64_t flag, std::optional<std::int64_t> conf,
                          const char* what) -> std::optional<std::int64_t> {
      if (flag != 0) {
        if (flag < 0) throw BadParams(std::string(what) + " must be positive");
        return flag;
      }
      return conf;
    };
    if (const auto v = bound(opt_max_order, cfg.max_order, "--max-order"))
      limits().max_group_order = static_cast<int>(*v);
    if (const auto v = bound(opt_max_elems, cfg.max_algebra_elements,
                             "--max-algebra-elements"))
      limits().max_algebra_elements = *v;
    if (const auto v = bound(opt_budget, cfg.search_budget, "--search-budget"))
      limits().search_budget = *v;

    const bool json = json_flag || format_flag == "json" ||
                      (format_flag.empty() && cfg.format == "json");
    if (out_path.empty() && cfg.output) out_path = *cfg.output;
    const auto input_ref = [&](const std::string& flag,
                               const char* what) -> std::string {
      if (!flag.empty()) return flag;
      if (cfg.input) return "@" + *cfg.input;
      throw BadParams(std::string("missing ") + what);
    };

    std::ostringstream text;
    Json payload;
    int exit_code = 0;

    if (sub == c_catalog) {
      if (json) {
        payload = Json::array();
        for (const auto& [name, desc] : catalog_listing())
          payload.push_back(Json{{"name", name}, {"description", desc}});
      } else {
        for (const auto& entry : catalog_listing()) text << entry.second << "\n";
      }
    } else if (sub == c_subgroups) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const auto subs = subgroups(g);
      if (json) {
        payload = Json{{"group", g.label},
                       {"count", subs.size()},
                       {"subgroups", Json::array()}};
        for (const auto& h : subs)
          payload["subgroups"].push_back(subgroup_to_json(h));
      } else {
        text << g.label << ": " << subs.size() << " subgroups\n";
        for (std::size_t i = 0; i < subs.size(); ++i) {
          text << i << ": order " << subs[i].size() << ", members";
          for (std::size_t b = subs[i].members.find_first(); b != Bitset::npos;
               b = subs[i].members.find_next(b))
            text << " " << b;
          text << "\n";
        }
      }
    } else if (sub == c_invariants) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const GroupInvariants inv = structure_invariants(g);
      if (json) {
        payload = Json{{"label", g.label},
                       {"order", inv.order},
                       {"exponent", inv.exponent},
                       {"nilpotency_class", inv.nilpotency_class
                                                ? Json(*inv.nilpotency_class)
                                                : Json(nullptr)},
                       {"center_order", inv.center_order},
                       {"derived_order", inv.derived_order},
                       {"abelian_invariants",
                        inv.abelian_invariants ? Json(*inv.abelian_invariants)
                                               : Json(nullptr)},
                       {"order_statistics", Json::object()},
                       {"key", invariant_key(inv)}};
        for (const auto& [o, c] : inv.order_statistics)
          payload["order_statistics"][std::to_string(o)] = c;
      } else {
        text << g.label << "\norder: " << inv.order
             << "\nexponent: " << inv.exponent << "\nnilpotency class: ";
        if (inv.nilpotency_class)
          text << *inv.nilpotency_class;
        else
          text << "none";
        text << "\ncenter order: " << inv.center_order
             << "\nderived order: " << inv.derived_order;
        if (inv.abelian_invariants)
          text << "\nabelian invariants: " << int_list(*inv.abelian_invariants);
        text << "\nelement orders:";
        for (const auto& [o, c] : inv.order_statistics)
          text << " " << o << ":" << c;
        text << "\nkey: " << invariant_key(inv) << "\n";
      }
    } else if (sub == c_iso) {
      const FiniteGroup g = parse_group(a_g);
      const FiniteGroup h = parse_group(a_h);
      const auto m = is_isomorphic(g, h);
      if (json) {
        payload = Json{{"g", g.label},
                       {"h", h.label},
                       {"isomorphic", m.has_value()},
                       {"map", m ? Json(*m) : Json(nullptr)}};
      } else if (m) {
        text << "isomorphic\nmap: " << map_line(*m) << "\n";
      } else {
        text << "not isomorphic\n";
      }
    } else if (sub == c_unitgroup) {
      const RingPtr r = parse_ring(a_ring);
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const AlgebraPtr a = group_algebra(r, g);
      const UnitGroupInfo u =
          unit_group(a, a_table ? UnitMode::Table : UnitMode::Implicit);
      if (json) {
        payload = unit_info_to_json(u, a_table);
      } else {
        text << u.label << "\norder: " << u.order << "\nabelian: "
             << (u.abelian ? "yes" : "no");
        if (u.invariants)
          text << "\ninvariants: " << int_list(*u.invariants);
        text << "\ntabulated: " << (u.table ? "yes" : "no") << "\n";
      }
    } else if (sub == c_qgroup) {
      const AlgebraPtr a = parse_algebra(input_ref(a_algebra, "--algebra"));
      const FiniteGroup qg = quasi_regular_group(*a);
      if (json) {
        payload = group_to_json(qg);
      } else {
        text << qg.label << "\norder: " << qg.n << "\nabelian: "
             << (qg.is_abelian() ? "yes" : "no")
             << "\nkey: " << invariant_key(qg) << "\n";
      }
    } else if (sub == c_groupalgebra) {
      const RingPtr r = parse_ring(a_ring);
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const AlgebraPtr a = group_algebra(r, g);
      if (json) {
        payload = algebra_to_json(a);
      } else {
        text << a->label << "\ndim: " << a->dim
             << "\nelements: " << a->element_count()
             << "\n(use --json for the full structure constants)\n";
      }
    } else if (sub == c_homcount) {
      const FiniteGroup g = parse_group(a_g);
      const FiniteGroup h = parse_group(a_h);
      const BigInt c = count_homs(g, h);
      if (json)
        payload = Json{{"g", g.label}, {"h", h.label}, {"count", to_string(c)}};
      else
        text << c << "\n";
    } else if (sub == c_epicount) {
      const FiniteGroup g = parse_group(a_g);
      const FiniteGroup h = parse_group(a_h);
      const BigInt c = count_epis_inclusion_exclusion(g, h);
      const bool check = !a_skip_check && g.n <= 32 && h.n <= 32;
      if (check && count_epis_bruteforce(g, h) != c)
        throw InternalError("surjection count expansion disagrees with "
                            "direct enumeration for " +
                            g.label + " -> " + h.label);
      if (json)
        payload = Json{{"g", g.label},
                       {"h", h.label},
                       {"count", to_string(c)},
                       {"cross_checked", check}};
      else
        text << c << "\n"
             << (check ? "cross-check: direct enumeration agrees\n"
                       : "cross-check: skipped\n");
    } else if (sub == c_lovasz) {
      const FiniteGroup g = parse_group(a_g);
      const FiniteGroup h = parse_group(a_h);
      const LovaszResult r = lovasz_compare(g, h);
      if (json) {
        payload = lovasz_to_json(r);
      } else if (r.kind == LovaszResult::Kind::Isomorphic) {
        text << "isomorphic\nmap: " << map_line(*r.map) << "\n";
      } else if (r.kind == LovaszResult::Kind::Distinguished) {
        text << "distinguished by subgroup " << r.witness->label << ": |Hom("
             << g.label << ",K)| = " << r.count_g << " vs |Hom(" << h.label
             << ",K)| = " << r.count_h << "\n";
      } else {
        text << "order mismatch: " << r.detail << "\n";
      }
    } else if (sub == c_certificate) {
      if (a_p < 2 || a_n < 0)
        throw BadParams("certificate cyclic needs a prime --p and --n >= 0");
      const auto certs = cyclic_certificate(a_p, a_n);
      ClassRegistry reg;
      if (json) payload = Json::array();
      for (std::size_t i = 0; i < certs.size(); ++i) {
        const bool cert_ok = verify_certificate(reg, certs[i]);
        const HereditaryWitness w = certificate_to_witness(certs[i]);
        const bool wit_ok = verify_witness(w);
        if (json) {
          payload.push_back(Json{{"certificate", certificate_to_json(certs[i])},
                                 {"witness", witness_to_json(w)},
                                 {"certificate_verified", cert_ok},
                                 {"witness_verified", wit_ok}});
        } else {
          text << "layer " << i << ": target " << certs[i].target.label
               << (cert_ok ? "" : " (VERIFICATION FAILED)") << "\n"
               << term_lines(certs[i]) << "  " << witness_line(w)
               << (wit_ok ? ", verified" : ", NOT VERIFIED") << "\n";
        }
        if (!cert_ok || !wit_ok) exit_code = 3;
      }
    } else if (sub == c_membership) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      std::vector<AlgebraPtr> pool;
      if (a_p != 0 || a_pool.empty())
        pool = default_pool(a_p != 0 ? a_p : prime_of_order(g.n, g.label));
      for (const auto& ref : a_pool) pool.push_back(parse_algebra(ref));
      ClassRegistry reg;
      const MembershipResult m = solve_membership(reg, g, pool);
      if (json) {
        payload = membership_to_json(reg, m);
      } else if (m.certificate) {
        text << "[" << g.label << "] in span: yes\n"
             << term_lines(*m.certificate);
        const HereditaryWitness w = certificate_to_witness(*m.certificate);
        text << witness_line(w)
             << (verify_witness(w) ? ", verified" : ", NOT VERIFIED") << "\n";
      } else {
        text << "[" << g.label << "] in span: no\nresidual: "
             << lv_to_string(reg, m.residual) << "\n";
      }
    } else if (sub == c_hereditary) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const int p = a_p != 0 ? a_p : prime_of_order(g.n, g.label);
      std::vector<AlgebraPtr> pool = default_pool(p);
      for (const auto& ref : a_pool) pool.push_back(parse_algebra(ref));
      if (a_with_constructions) {
        for (const auto& rep : subgroup_class_representatives(g)) {
          if (rep.is_abelian()) continue;
          try {
            if (p > 2) {
              pool.push_back(unitization(baer_algebra(rep)));
            } else {
              int dim = 0;
              while ((1 << dim) < rep.n) ++dim;
              const auto hit = bovdi_search(rep, dim);
              if (hit) pool.push_back(unitization(*hit));
            }
          } catch (const Error& e) {
            text << "note: no construction for " << rep.label << ": "
                 << e.what() << "\n";
          }
        }
      }
      ClassRegistry reg;
      const HereditaryReport rep = is_hereditary(reg, g, pool);
      if (json) {
        payload = hereditary_report_to_json(reg, rep);
      } else {
        for (const auto& row : rep.rows)
          text << "class " << row.subgroup_rep.label << " (order "
               << row.subgroup_rep.n << "): "
               << (row.certificate ? "certified" : "not in the span") << "\n";
        text << "hereditary over this pool: " << (rep.hereditary ? "yes" : "no")
             << "\n";
      }
      if (!rep.hereditary) exit_code = 1;
    } else if (sub == c_baer) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const AlgebraPtr a = baer_algebra(g);
      if (json) {
        payload = algebra_to_json(a);
      } else {
        text << a->label << "\nring: " << a->ring->label
             << "\ndim: " << a->dim << "\ncircle group: " << g.label
             << " (order " << g.n << ")\n";
      }
    } else if (sub == c_bovdi) {
      const FiniteGroup g = parse_group(input_ref(a_group, "--group"));
      const auto hit = bovdi_search(g, a_dim, a_budget);
      if (!hit) {
        const std::int64_t used =
            a_budget > 0 ? a_budget : limits().bovdi_budget;
        if (json)
          payload = Json{{"group", g.label},
                         {"dim", a_dim},
                         {"found", false},
                         {"budget", used}};
        else
          text << "no hit for " << g.label << " in dimension " << a_dim
               << " within " << used << " candidates\n";
        exit_code = 1;
      } else if (json) {
        payload = algebra_to_json(*hit);
      } else {
        text << (*hit)->label << "\ndim " << a_dim << " over "
             << (*hit)->ring->label << "\nnonzero basis products:\n";
        for (int i = 0; i < a_dim; ++i)
          for (int k = 0; k < a_dim; ++k) {
            const Vec& v = (*hit)->bp[static_cast<std::size_t>(i) * a_dim + k];
            std::string rhs;
            for (int t = 0; t < a_dim; ++t)
              if (v[static_cast<std::size_t>(t)] != 0)
                rhs += (rhs.empty() ? "" : " + ") + std::string("e") +
                       std::to_string(t);
            if (!rhs.empty())
              text << "  e" << i << "*e" << k << " = " << rhs << "\n";
          }
        text << "circle group matches " << g.label << "\n";
      }
    } else if (sub == c_pipeline) {
      const RingPtr r = parse_ring(a_ring);
      const FiniteGroup g = parse_group(a_g);
      const FiniteGroup h = parse_group(a_h);
      const PipelineReport rep = criterion_check(g, h, r);
      if (json) {
        payload = pipeline_report_to_json(rep);
      } else {
        text << "pipeline over " << rep.ring_label << ": " << rep.g_label
             << " vs " << rep.h_label << "\n";
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
          const PipelineRow& row = rep.rows[i];
          text << "row " << i << ": class " << row.subgroup_rep.label << " ("
               << witness_line(row.witness) << "): " << rep.g_label
               << " recovers " << row.recovered_g << ", " << rep.h_label
               << " recovers " << row.recovered_h
               << (row.matched ? " [match]" : " [differ]") << "\n";
        }
        text << "verdict: "
             << (rep.verdict == PipelineReport::Verdict::IsomorphicCertified
                     ? "IsomorphicCertified"
                 : rep.verdict ==
                         PipelineReport::Verdict::AlgebrasDistinguished
                     ? "AlgebrasDistinguished"
                     : "Inconclusive")
             << "\n";
        if (!rep.reason.empty()) text << "reason: " << rep.reason << "\n";
        if (rep.isomorphism)
          text << "isomorphism: " << map_line(*rep.isomorphism) << "\n";
      }
      if (rep.verdict == PipelineReport::Verdict::Inconclusive) exit_code = 1;
    } else if (sub == c_verify) {
      std::ostringstream suite;
      const int fails = run_acceptance(suite);
      if (json) {
        payload = Json{{"report", suite.str()}, {"failures", fails}};
      } else {
        text << suite.str();
      }
      if (fails != 0) exit_code = 3;
    }

    const std::string body = json ? payload.dump(2) + "\n" : text.str();
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw BadParams("cannot write " + out_path);
      out << body;
    } else {
      std::cout << body;
    }
    return exit_code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    const std::string& k = e.kind();
    if (k == "BoundExceeded" || k == "SearchBudgetExceeded" ||
        k == "UnsupportedClass")
      return 1;
    if (k == "InternalError" || k == "ConstructionFailed" ||
        k == "EmptyPositivePart")
      return 3;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}

#include "groupalg/json_io.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "groupalg/errors.hpp"

namespace groupalg {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw BadParams(std::string(what) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw BadParams(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

// Parsers are strict: a field the schema does not define is a hand-editing
// mistake, not an extension point.
void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const char* what) {
  if (!j.is_object())
    throw BadParams(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known)
      throw BadParams(std::string(what) + ": unknown field \"" + item.key() +
                      "\"");
  }
}

int to_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw BadParams(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::string to_str(const Json& j, const char* what) {
  if (!j.is_string())
    throw BadParams(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::vector<int> to_int_vec(const Json& j, const char* what) {
  if (!j.is_array())
    throw BadParams(std::string(what) + ": expected an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(to_int(e, what));
  return out;
}

BigInt bigint_from_decimal(const std::string& s, const char* what) {
  try {
    if (s.empty()) throw BadParams("empty");
    return BigInt(s);
  } catch (const std::exception&) {
    throw BadParams(std::string(what) + ": \"" + s +
                    "\" is not a decimal integer");
  }
}

}  // namespace

std::string rational_to_json_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational rational_from_json_string(const std::string& s) {
  auto slash = s.find('/');
  BigInt num = bigint_from_decimal(s.substr(0, slash), "rational");
  BigInt den = slash == std::string::npos
                   ? BigInt(1)
                   : bigint_from_decimal(s.substr(slash + 1), "rational");
  if (den == 0) throw BadParams("rational: zero denominator in \"" + s + "\"");
  return Rational(num, den);
}

Json group_to_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (int a = 0; a < g.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < g.n; ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return Json{{"label", g.label}, {"order", g.n}, {"table", std::move(table)}};
}

FiniteGroup group_from_json(const Json& j) {
  reject_unknown(j, {"label", "order", "table"}, "group");
  std::string label = to_str(require_field(j, "label", "group"), "group label");
  int order = to_int(require_field(j, "order", "group"), "group order");
  const Json& tj = require_field(j, "table", "group");
  if (!tj.is_array()) throw BadParams("group: table must be an array of rows");
  std::vector<std::vector<int>> rows;
  rows.reserve(tj.size());
  for (const auto& r : tj) rows.push_back(to_int_vec(r, "group table row"));
  if (order != static_cast<int>(rows.size()))
    throw BadParams("group: declared order " + std::to_string(order) +
                    " does not match table size " +
                    std::to_string(rows.size()));
  return group_from_table(rows, label);
}

Json subgroup_to_json(const SubgroupHandle& h) {
  Json members = Json::array();
  for (std::size_t i = h.members.find_first(); i != Bitset::npos;
       i = h.members.find_next(i))
    members.push_back(static_cast<int>(i));
  return Json{{"group", h.parent->label}, {"members", std::move(members)}};
}

Json ring_to_json(const RingPtr& r) {
  if (!r) throw PreconditionViolated("ring serialization: null ring");
  if (r->prime && r->label == "F" + std::to_string(*r->prime))
    return Json{{"type", "Fp"}, {"p", *r->prime}};
  if (r->size >= 2 && r->label == "Z" + std::to_string(r->size) &&
      same_ring(r, ring_zn(r->size)))
    return Json{{"type", "Zn"}, {"n", r->size}};
  Json add = Json::array(), mul = Json::array();
  for (int a = 0; a < r->size; ++a) {
    Json arow = Json::array(), mrow = Json::array();
    for (int b = 0; b < r->size; ++b) {
      arow.push_back(r->addc(a, b));
      mrow.push_back(r->mulc(a, b));
    }
    add.push_back(std::move(arow));
    mul.push_back(std::move(mrow));
  }
  return Json{{"type", "tables"},
              {"size", r->size},
              {"add", std::move(add)},
              {"mul", std::move(mul)},
              {"label", r->label}};
}

RingPtr ring_from_json(const Json& j) {
  std::string type = to_str(require_field(j, "type", "ring"), "ring type");
  if (type == "Fp") {
    reject_unknown(j, {"type", "p"}, "ring");
    return ring_fp(to_int(require_field(j, "p", "ring"), "ring p"));
  }
  if (type == "Zn") {
    reject_unknown(j, {"type", "n"}, "ring");
    return ring_zn(to_int(require_field(j, "n", "ring"), "ring n"));
  }
  if (type == "tables") {
    reject_unknown(j, {"type", "size", "add", "mul", "label"}, "ring");
    int size = to_int(require_field(j, "size", "ring"), "ring size");
    auto read_table = [&](const char* key) {
      const Json& tj = require_field(j, key, "ring");
      if (!tj.is_array())
        throw BadParams(std::string("ring ") + key + ": expected rows");
      std::vector<std::vector<int>> rows;
      for (const auto& row : tj) rows.push_back(to_int_vec(row, "ring row"));
      return rows;
    };
    auto add = read_table("add");
    auto mul = read_table("mul");
    if (size != static_cast<int>(add.size()))
      throw BadParams("ring: declared size does not match the add table");
    return ring_from_tables(size, add, mul,
                            to_str(require_field(j, "label", "ring"),
                                   "ring label"));
  }
  throw BadParams("ring: unknown type \"" + type + "\"");
}

Json algebra_to_json(const AlgebraPtr& a) {
  if (!a) throw PreconditionViolated("algebra serialization: null algebra");
  Json constants = Json::array();
  for (int i = 0; i < a->dim; ++i) {
    Json row = Json::array();
    for (int k = 0; k < a->dim; ++k)
      row.push_back(a->bp[static_cast<std::size_t>(i) * a->dim + k]);
    constants.push_back(std::move(row));
  }
  return Json{{"ring", ring_to_json(a->ring)},
              {"dim", a->dim},
              {"constants", std::move(constants)},
              {"one", a->one ? Json(*a->one) : Json(nullptr)},
              {"label", a->label}};
}

AlgebraPtr algebra_from_json(const Json& j) {
  reject_unknown(j, {"ring", "dim", "constants", "one", "label"}, "algebra");
  RingPtr ring = ring_from_json(require_field(j, "ring", "algebra"));
  int dim = to_int(require_field(j, "dim", "algebra"), "algebra dim");
  const Json& cj = require_field(j, "constants", "algebra");
  if (!cj.is_array() || dim != static_cast<int>(cj.size()))
    throw BadParams("algebra: constants must be a dim x dim array");
  std::vector<std::vector<std::vector<int>>> constants;
  constants.reserve(cj.size());
  for (const auto& row : cj) {
    if (!row.is_array() || dim != static_cast<int>(row.size()))
      throw BadParams("algebra: constants must be a dim x dim array");
    std::vector<std::vector<int>> one_row;
    one_row.reserve(row.size());
    for (const auto& vec : row)
      one_row.push_back(to_int_vec(vec, "algebra constants"));
    constants.push_back(std::move(one_row));
  }
  const Json& oj = require_field(j, "one", "algebra");
  std::optional<std::vector<int>> one;
  if (!oj.is_null()) one = to_int_vec(oj, "algebra one");
  return algebra_from_constants(
      ring, dim, constants, one,
      to_str(require_field(j, "label", "algebra"), "algebra label"));
}

Json unit_info_to_json(const UnitGroupInfo& u, bool include_table) {
  Json out{{"algebra", u.algebra ? Json(u.algebra->label) : Json(nullptr)},
           {"label", u.label},
           {"order", to_string(u.order)},
           {"abelian", u.abelian},
           {"invariants", u.invariants ? Json(*u.invariants) : Json(nullptr)},
           {"tabulated", u.table.has_value()}};
  if (include_table && u.table) out["table"] = group_to_json(*u.table);
  return out;
}

Json profile_to_json(const HomCountProfile& p) {
  Json entries = Json::array();
  for (const auto& [key, count] : p.entries)
    entries.push_back(Json{{"subgroup", key}, {"count", to_string(count)}});
  return Json{{"source", p.source}, {"entries", std::move(entries)}};
}

Json lovasz_to_json(const LovaszResult& r) {
  const char* kind = r.kind == LovaszResult::Kind::Isomorphic ? "isomorphic"
                     : r.kind == LovaszResult::Kind::Distinguished
                         ? "distinguished"
                         : "order_mismatch";
  return Json{{"kind", kind},
              {"map", r.map ? Json(*r.map) : Json(nullptr)},
              {"witness", r.witness ? group_to_json(*r.witness) : Json(nullptr)},
              {"count_g", to_string(r.count_g)},
              {"count_h", to_string(r.count_h)},
              {"detail", r.detail}};
}

Json certificate_to_json(const Certificate& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms)
    terms.push_back(Json{{"q", rational_to_json_string(t.q)},
                         {"algebra", algebra_to_json(t.algebra)}});
  return Json{{"ring", ring_to_json(c.ring)},
              {"target", invariant_key(c.target)},
              {"target_group", group_to_json(c.target)},
              {"terms", std::move(terms)}};
}

Certificate certificate_from_json(const Json& j) {
  reject_unknown(j, {"ring", "target", "target_group", "terms"},
                 "certificate");
  Certificate c;
  c.ring = ring_from_json(require_field(j, "ring", "certificate"));
  c.target = group_from_json(require_field(j, "target_group", "certificate"));
  std::string key = to_str(require_field(j, "target", "certificate"),
                           "certificate target");
  if (key != invariant_key(c.target))
    throw BadParams("certificate: target key \"" + key +
                    "\" does not describe the embedded target group");
  const Json& terms = require_field(j, "terms", "certificate");
  if (!terms.is_array()) throw BadParams("certificate: terms must be an array");
  for (const auto& t : terms) {
    reject_unknown(t, {"q", "algebra"}, "certificate term");
    CertificateTerm term;
    term.q = rational_from_json_string(
        to_str(require_field(t, "q", "certificate term"), "certificate q"));
    if (term.q == 0)
      throw BadParams("certificate: zero coefficient in a term");
    term.algebra = algebra_from_json(require_field(t, "algebra",
                                                   "certificate term"));
    if (!same_ring(term.algebra->ring, c.ring))
      throw RingMismatch("certificate term algebra \"" + term.algebra->label +
                         "\" is not over the certificate ring");
    c.terms.push_back(std::move(term));
  }
  return c;
}

Json witness_to_json(const HereditaryWitness& w) {
  return Json{{"K", group_to_json(w.k)},
              {"A", algebra_to_json(w.a)},
              {"B", algebra_to_json(w.b)},
              {"n", w.n}};
}

HereditaryWitness witness_from_json(const Json& j) {
  reject_unknown(j, {"K", "A", "B", "n"}, "witness");
  HereditaryWitness w;
  w.k = group_from_json(require_field(j, "K", "witness"));
  w.a = algebra_from_json(require_field(j, "A", "witness"));
  w.b = algebra_from_json(require_field(j, "B", "witness"));
  w.n = to_int(require_field(j, "n", "witness"), "witness n");
  if (w.n < 1) throw BadParams("witness: n must be positive");
  if (!same_ring(w.a->ring, w.b->ring))
    throw RingMismatch("witness algebras are over different rings");
  return w;
}

namespace {

Json residual_to_json(const ClassRegistry& reg, const LVector& v) {
  Json out = Json::array();
  for (const auto& [idx, q] : v.coef)
    out.push_back(Json{{"class", invariant_key(reg.representative(idx))},
                       {"q", rational_to_json_string(q)}});
  return out;
}

}  // namespace

Json membership_to_json(const ClassRegistry& reg, const MembershipResult& m) {
  return Json{
      {"in_span", m.certificate.has_value()},
      {"certificate",
       m.certificate ? certificate_to_json(*m.certificate) : Json(nullptr)},
      {"residual", residual_to_json(reg, m.residual)}};
}

Json hereditary_report_to_json(const ClassRegistry& reg,
                               const HereditaryReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{
        {"class", invariant_key(row.subgroup_rep)},
        {"order", row.subgroup_rep.n},
        {"certificate", row.certificate
                            ? certificate_to_json(*row.certificate)
                            : Json(nullptr)},
        {"residual", residual_to_json(reg, row.residual)}});
  return Json{{"hereditary", r.hereditary}, {"rows", std::move(rows)}};
}

Json pipeline_report_to_json(const PipelineReport& r) {
  const char* verdict =
      r.verdict == PipelineReport::Verdict::IsomorphicCertified
          ? "isomorphic_certified"
          : r.verdict == PipelineReport::Verdict::AlgebrasDistinguished
                ? "algebras_distinguished"
                : "inconclusive";
  Json rows = Json::array();
  Json witnesses = Json::object();
  for (const auto& row : r.rows) {
    Json w = witness_to_json(row.witness);
    std::string hash = content_hash(w);
    witnesses[hash] = std::move(w);
    rows.push_back(Json{{"class", invariant_key(row.subgroup_rep)},
                        {"subgroup_order", row.subgroup_rep.n},
                        {"witness", hash},
                        {"hom_a_g", to_string(row.hom_a_g)},
                        {"hom_b_g", to_string(row.hom_b_g)},
                        {"hom_a_h", to_string(row.hom_a_h)},
                        {"hom_b_h", to_string(row.hom_b_h)},
                        {"recovered_g", to_string(row.recovered_g)},
                        {"recovered_h", to_string(row.recovered_h)},
                        {"matched", row.matched}});
  }
  return Json{{"g", r.g_label},
              {"h", r.h_label},
              {"ring", r.ring_label},
              {"verdict", verdict},
              {"reason", r.reason},
              {"distinguished_row",
               r.distinguished_row ? Json(*r.distinguished_row) : Json(nullptr)},
              {"isomorphism",
               r.isomorphism ? Json(*r.isomorphism) : Json(nullptr)},
              {"rows", std::move(rows)},
              {"witnesses", std::move(witnesses)}};
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace groupalg

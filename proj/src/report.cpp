#include "catamaj/report.hpp"

#include <iomanip>
#include <sstream>

namespace catamaj {

namespace {

using DomParser = nlohmann::detail::json_sax_dom_parser<json>;

// Floats are stored as their literal text; integers stay integers.
class ExactSax : public DomParser {
 public:
  explicit ExactSax(json& root) : DomParser(root, true) {}
  bool number_float(json::number_float_t /*value*/, const json::string_t& text) {
    json::string_t copy = text;
    return DomParser::string(copy);
  }
};

[[noreturn]] void shape_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) shape_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

Scalar scalar_back(const json& j) {
  if (!j.is_string()) shape_error("scalar must be a string");
  return Scalar::from_string(j.get<std::string>());
}

Rational rational_back(const json& j) {
  Scalar s = scalar_back(j);
  if (!s.is_exact()) shape_error("expected an exact rational");
  return s.rational();
}

EntropyValue entropy_back(const json& j) {
  if (j == "-inf") return EntropyValue::minus_infinity();
  return {false, real_from_json(j)};
}

ExponentPair exponents_back(const json& j) {
  ExponentPair e;
  e.r = real_from_json(field(j, "r"));
  e.r_bar = field(j, "r_bar").get<long>();
  e.s = real_from_json(field(j, "s"));
  e.s_bar = field(j, "s_bar").get<long>();
  e.r_defined = field(j, "r_defined").get<bool>();
  e.s_defined = field(j, "s_defined").get<bool>();
  return e;
}

Status status_back(const std::string& s) {
  for (Status v : {Status::ClosureSufficient, Status::TrumpingSufficient, Status::Refuted, Status::Inconclusive})
    if (s == to_string(v)) return v;
  shape_error("unknown status '" + s + "'");
}

const char* relation_name(Relation r) { return r == Relation::StrictGreater ? "greater" : "less"; }

std::vector<std::string> strings_back(const json& j) { return j.get<std::vector<std::string>>(); }

json grid_json(const std::vector<Rational>& grid) {
  json g = json::array();
  for (const auto& p : grid) g.push_back(Scalar(p).to_string());
  return g;
}

std::vector<Rational> grid_back(const json& j) {
  std::vector<Rational> out;
  for (const auto& p : j) out.push_back(rational_back(p));
  return out;
}

bool same_real(const Real& a, const Real& b) { return a == b && a.precision() == b.precision(); }

bool same_entropy(const EntropyValue& a, const EntropyValue& b) {
  return a.neg_inf == b.neg_inf && (a.neg_inf || same_real(a.bits, b.bits));
}

bool same_exponents(const ExponentPair& a, const ExponentPair& b) {
  return same_real(a.r, b.r) && a.r_bar == b.r_bar && same_real(a.s, b.s) && a.s_bar == b.s_bar &&
         a.r_defined == b.r_defined && a.s_defined == b.s_defined;
}

bool same_report(const ComparisonReport& a, const ComparisonReport& b) {
  if (a.relation != b.relation || a.r != b.r || a.k_lo != b.k_lo || a.k_hi != b.k_hi ||
      !a.slack.same_representation(b.slack) || a.all_hold != b.all_hold || a.any_undecided != b.any_undecided ||
      a.per_k.size() != b.per_k.size())
    return false;
  for (std::size_t i = 0; i < a.per_k.size(); ++i) {
    const auto& p = a.per_k[i];
    const auto& q = b.per_k[i];
    if (p.k != q.k || !p.lhs.same_representation(q.lhs) || !p.rhs.same_representation(q.rhs) ||
        p.holds != q.holds || p.identity != q.identity || p.undecided != q.undecided)
      return false;
  }
  return true;
}

bool same_oracle(const OracleReport& a, const OracleReport& b) {
  if (a.grid != b.grid || a.h1_ok != b.h1_ok || a.burg_ok != b.burg_ok || a.consistent != b.consistent ||
      a.refuted_at != b.refuted_at || a.failures.size() != b.failures.size())
    return false;
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    const auto& p = a.failures[i];
    const auto& q = b.failures[i];
    if (!p.p.same_representation(q.p) || p.which != q.which || p.lhs != q.lhs || p.rhs != q.rhs) return false;
  }
  return true;
}

template <class T, class Eq>
bool same_optional(const std::optional<T>& a, const std::optional<T>& b, Eq eq) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq(*a, *b);
}

bool same_scalars(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_representation(b[i])) return false;
  return true;
}

}  // namespace

json parse_json_exact(std::string_view text) {
  json root;
  ExactSax sax(root);
  try {
    if (!json::sax_parse(text.begin(), text.end(), &sax)) shape_error("malformed JSON");
  } catch (const json::exception& e) {
    shape_error(std::string("malformed JSON: ") + e.what());
  }
  return root;
}

Scalar scalar_from_json(const json& j, Backend backend) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), backend);
  if (j.is_number_integer()) return Scalar::parse(j.dump(), backend);
  if (j.is_number_float()) return Scalar::from_double(j.get<double>(), backend);
  shape_error("expected a number or a decimal string, got " + j.dump());
}

std::vector<Scalar> scalars_from_json(const json& j, Backend backend) {
  if (!j.is_array()) shape_error("expected an array, got " + j.dump());
  std::vector<Scalar> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(scalar_from_json(v, backend));
  return out;
}

json to_json(const Scalar& v) { return v.to_string(); }

json to_json(const Real& v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(v.precision()) + 3) << v;
  return os.str();
}

Real real_from_json(const json& j) {
  if (!j.is_string()) shape_error("real must be a string");
  return Real(j.get<std::string>());
}

json to_json(const EntropyValue& v) { return v.neg_inf ? json("-inf") : to_json(v.bits); }
json to_json(const DivergenceValue& v) { return v.pos_inf ? json("inf") : to_json(v.bits); }

json to_json(const ExponentPair& e) {
  return json{{"r", to_json(e.r)},         {"r_bar", e.r_bar},         {"s", to_json(e.s)},
              {"s_bar", e.s_bar},          {"r_defined", e.r_defined}, {"s_defined", e.s_defined}};
}

json to_json(const ComparisonReport& r, bool with_values) {
  json j{{"relation", relation_name(r.relation)},
         {"r", r.r},
         {"k_lo", r.k_lo},
         {"k_hi", r.k_hi},
         {"slack", to_json(r.slack)},
         {"all_hold", r.all_hold},
         {"any_undecided", r.any_undecided},
         {"first_failure", r.first_failure()}};
  json per = json::array();
  for (const auto& c : r.per_k) {
    json e{{"k", c.k}, {"holds", c.holds}, {"identity", c.identity}, {"undecided", c.undecided}};
    if (with_values) {
      e["lhs"] = to_json(c.lhs);
      e["rhs"] = to_json(c.rhs);
    }
    per.push_back(std::move(e));
  }
  j["per_k"] = std::move(per);
  return j;
}

ComparisonReport comparison_report_from_json(const json& j) {
  ComparisonReport r;
  const auto rel = field(j, "relation").get<std::string>();
  if (rel != "greater" && rel != "less") shape_error("unknown relation '" + rel + "'");
  r.relation = rel == "greater" ? Relation::StrictGreater : Relation::StrictLess;
  r.r = field(j, "r").get<int>();
  r.k_lo = field(j, "k_lo").get<int>();
  r.k_hi = field(j, "k_hi").get<int>();
  r.slack = scalar_back(field(j, "slack"));
  r.all_hold = field(j, "all_hold").get<bool>();
  r.any_undecided = field(j, "any_undecided").get<bool>();
  for (const auto& e : field(j, "per_k")) {
    KComparison c;
    c.k = field(e, "k").get<int>();
    c.lhs = scalar_back(field(e, "lhs"));
    c.rhs = scalar_back(field(e, "rhs"));
    c.holds = field(e, "holds").get<bool>();
    c.identity = field(e, "identity").get<bool>();
    c.undecided = field(e, "undecided").get<bool>();
    r.per_k.push_back(std::move(c));
  }
  return r;
}

json to_json(const OracleReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"p", to_json(f.p)}, {"which", f.which}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return json{{"grid", grid_json(r.grid)},  {"failures", std::move(failures)}, {"h1_ok", r.h1_ok},
              {"burg_ok", r.burg_ok},       {"consistent", r.consistent},     {"refuted_at", r.refuted_at}};
}

OracleReport oracle_report_from_json(const json& j) {
  OracleReport r;
  r.grid = grid_back(field(j, "grid"));
  for (const auto& f : field(j, "failures"))
    r.failures.push_back({scalar_back(field(f, "p")), field(f, "which").get<std::string>(),
                          field(f, "lhs").get<std::string>(), field(f, "rhs").get<std::string>()});
  r.h1_ok = field(j, "h1_ok").get<bool>();
  r.burg_ok = field(j, "burg_ok").get<bool>();
  r.consistent = field(j, "consistent").get<bool>();
  r.refuted_at = field(j, "refuted_at").get<std::string>();
  return r;
}

json to_json(const TrumpingVerdict& v, bool with_values) {
  json families = json::array();
  if (v.closure_report) {
    json f = to_json(*v.closure_report, with_values);
    f["name"] = "closure";
    families.push_back(std::move(f));
  }
  if (v.negative_report) {
    json f = to_json(*v.negative_report, with_values);
    f["name"] = "negative";
    families.push_back(std::move(f));
  }
  json h1 = nullptr;
  if (v.h1)
    h1 = {{"lhs", to_json(v.h1->lhs)}, {"rhs", to_json(v.h1->rhs)}, {"margin", to_json(v.h1->margin)},
          {"holds", v.h1->holds}};
  return json{{"status", to_string(v.status)},
              {"reasons", v.reasons},
              {"dim", v.dim},
              {"exponents", to_json(v.exponents)},
              {"weight_branch", to_string(v.weight_branch)},
              {"families", std::move(families)},
              {"h1", std::move(h1)},
              {"oracle", v.oracle ? to_json(*v.oracle) : json(nullptr)}};
}

TrumpingVerdict trumping_verdict_from_json(const json& j) {
  TrumpingVerdict v;
  v.status = status_back(field(j, "status").get<std::string>());
  v.reasons = strings_back(field(j, "reasons"));
  v.dim = field(j, "dim").get<std::size_t>();
  v.exponents = exponents_back(field(j, "exponents"));
  const auto branch = field(j, "weight_branch").get<std::string>();
  v.weight_branch = branch == "WeightLess" ? WeightBranch::WeightLess : WeightBranch::FullWeight;
  for (const auto& f : field(j, "families")) {
    const auto name = field(f, "name").get<std::string>();
    if (name == "closure") v.closure_report = comparison_report_from_json(f);
    else if (name == "negative") v.negative_report = comparison_report_from_json(f);
    else shape_error("unknown family '" + name + "'");
  }
  if (const auto& h = field(j, "h1"); !h.is_null())
    v.h1 = EntropyComparison{entropy_back(field(h, "lhs")), entropy_back(field(h, "rhs")),
                             real_from_json(field(h, "margin")), field(h, "holds").get<bool>()};
  if (const auto& o = field(j, "oracle"); !o.is_null()) v.oracle = oracle_report_from_json(o);
  return v;
}

json to_json(const DivergenceScan& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"p", to_json(f.p)}, {"rho", f.rho}, {"sigma", f.sigma}});
  return json{{"grid", grid_json(r.grid)}, {"failures", std::move(failures)}, {"kl_ok", r.kl_ok},
              {"consistent", r.consistent}, {"refuted_at", r.refuted_at}};
}

DivergenceScan divergence_scan_from_json(const json& j) {
  DivergenceScan r;
  r.grid = grid_back(field(j, "grid"));
  for (const auto& f : field(j, "failures"))
    r.failures.push_back({scalar_back(field(f, "p")), field(f, "rho").get<std::string>(),
                          field(f, "sigma").get<std::string>()});
  r.kl_ok = field(j, "kl_ok").get<bool>();
  r.consistent = field(j, "consistent").get<bool>();
  r.refuted_at = field(j, "refuted_at").get<std::string>();
  return r;
}

json to_json(const EmbeddingSpec& e) {
  json g = json::array();
  for (const auto& v : e.g_eps) g.push_back(to_json(v));
  return json{{"N", e.N}, {"nu", e.nu}, {"g_eps", std::move(g)}, {"eps", to_json(e.eps)}};
}

json to_json(const ThermoVerdict& v, bool with_values) {
  return json{{"status", to_string(v.status)},
              {"reasons", v.reasons},
              {"path", to_string(v.path)},
              {"embedding", to_json(v.embedding)},
              {"delta", to_json(v.delta)},
              {"slack", {{"a_r", to_json(v.slack.a_r)}, {"a_s", to_json(v.slack.a_s)}}},
              {"conditions", v.conditions ? to_json(*v.conditions, with_values) : json(nullptr)},
              {"oracle", v.oracle ? to_json(*v.oracle) : json(nullptr)}};
}

ThermoVerdict thermo_verdict_from_json(const json& j) {
  ThermoVerdict v;
  v.status = status_back(field(j, "status").get<std::string>());
  v.reasons = strings_back(field(j, "reasons"));
  const auto path = field(j, "path").get<std::string>();
  v.path = path == to_string(ThermoPath::IrrationalTheorem) ? ThermoPath::IrrationalTheorem
                                                            : ThermoPath::RationalCorollary;
  const auto& e = field(j, "embedding");
  v.embedding.N = field(e, "N").get<long>();
  v.embedding.nu = field(e, "nu").get<std::vector<long>>();
  for (const auto& g : field(e, "g_eps")) v.embedding.g_eps.push_back(scalar_back(g));
  v.embedding.eps = scalar_back(field(e, "eps"));
  v.delta = real_from_json(field(j, "delta"));
  const auto& s = field(j, "slack");
  v.slack = {real_from_json(field(s, "a_r")), real_from_json(field(s, "a_s"))};
  if (const auto& c = field(j, "conditions"); !c.is_null()) v.conditions = trumping_verdict_from_json(c);
  if (const auto& o = field(j, "oracle"); !o.is_null()) v.oracle = divergence_scan_from_json(o);
  return v;
}

json to_json(const CoherenceReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"p", Scalar(s.p).to_string()}, {"psi", to_json(s.psi)}, {"phi", to_json(s.phi)},
                       {"ok", s.ok}});
  return json{{"samples", std::move(samples)}, {"consistent", r.consistent}, {"refuted_at", r.refuted_at}};
}

json to_json(const CoherentVerdict& v, bool with_values) {
  json j = to_json(v.trumping, with_values);
  j["free_coherence"] = to_json(v.coherence);
  return j;
}

json to_json(const SearchResult& r) {
  json c = nullptr;
  if (r.catalyst) {
    c = json::array();
    for (const auto& v : r.catalyst->vector.entries()) c.push_back(to_json(v));
  }
  return json{{"found", r.catalyst.has_value()}, {"trivial", r.trivial}, {"grid_points", r.grid_points},
              {"catalyst", std::move(c)}};
}

bool identical(const TrumpingVerdict& a, const TrumpingVerdict& b) {
  return a.status == b.status && a.reasons == b.reasons && a.dim == b.dim &&
         same_exponents(a.exponents, b.exponents) && a.weight_branch == b.weight_branch &&
         same_optional(a.closure_report, b.closure_report, same_report) &&
         same_optional(a.negative_report, b.negative_report, same_report) &&
         same_optional(a.h1, b.h1,
                       [](const EntropyComparison& p, const EntropyComparison& q) {
                         return same_entropy(p.lhs, q.lhs) && same_entropy(p.rhs, q.rhs) &&
                                same_real(p.margin, q.margin) && p.holds == q.holds;
                       }) &&
         same_optional(a.oracle, b.oracle, same_oracle);
}

bool identical(const ThermoVerdict& a, const ThermoVerdict& b) {
  auto same_scan = [](const DivergenceScan& p, const DivergenceScan& q) {
    if (p.grid != q.grid || p.kl_ok != q.kl_ok || p.consistent != q.consistent || p.refuted_at != q.refuted_at ||
        p.failures.size() != q.failures.size())
      return false;
    for (std::size_t i = 0; i < p.failures.size(); ++i)
      if (!p.failures[i].p.same_representation(q.failures[i].p) || p.failures[i].rho != q.failures[i].rho ||
          p.failures[i].sigma != q.failures[i].sigma)
        return false;
    return true;
  };
  return a.status == b.status && a.reasons == b.reasons && a.path == b.path && a.embedding.N == b.embedding.N &&
         a.embedding.nu == b.embedding.nu && same_scalars(a.embedding.g_eps, b.embedding.g_eps) &&
         a.embedding.eps.same_representation(b.embedding.eps) && same_real(a.delta, b.delta) &&
         same_real(a.slack.a_r, b.slack.a_r) && same_real(a.slack.a_s, b.slack.a_s) &&
         same_optional(a.conditions, b.conditions,
                       [](const TrumpingVerdict& p, const TrumpingVerdict& q) { return identical(p, q); }) &&
         same_optional(a.oracle, b.oracle, same_scan);
}

}  // namespace catamaj

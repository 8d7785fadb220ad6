#include "nncomp/serialize.hpp"

#include <json.hpp>

#include <sstream>

namespace nncomp {

namespace {

using Json = nlohmann::ordered_json;

// --- writing ---------------------------------------------------------------

std::string rat_str(const Rational& r) { return r.str(); }

Json anchor_json(const Anchor& a) {
  Json arr = Json::array();
  for (const auto& c : a) arr.push_back(rat_str(c));
  return arr;
}

Json anchors_json(const std::vector<Anchor>& as) {
  Json arr = Json::array();
  for (const auto& a : as) arr.push_back(anchor_json(a));
  return arr;
}

Json embedding_json(const Substitution& v) {
  Json arr = Json::array();
  for (int m : v.map) {
    if (m == 0) arr.push_back("0");
    else if (m == -1) arr.push_back("1");
    else arr.push_back("x" + std::to_string(m));
  }
  return arr;
}

Json form_json(const LinearForm& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(rat_str(c));
  return Json{{"coeffs", coeffs}, {"const", rat_str(f.constant)}};
}

Json forms_json(const std::vector<LinearForm>& fs) {
  Json arr = Json::array();
  for (const auto& f : fs) arr.push_back(form_json(f));
  return arr;
}

Json nn_json(const NNRep& r) {
  return Json{{"model", "nn"},
              {"n", r.source_arity()},
              {"embedding", embedding_json(r.embedding)},
              {"pos", anchors_json(r.pos)},
              {"neg", anchors_json(r.neg)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- reading ---------------------------------------------------------------

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Rational parse_rat(const Json& v, const char* where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) fail(std::string(where) + ": rational must be a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(std::string(where) + ": " + e.what());
  }
}

Int parse_int(const Json& v, const char* where) {
  Rational r = parse_rat(v, where);
  if (!is_integer(r)) fail(std::string(where) + ": expected an integer, got " + r.str());
  return numerator(r);
}

Anchor parse_anchor(const Json& v) {
  if (!v.is_array()) fail("anchor must be an array of rationals");
  Anchor a;
  a.reserve(v.size());
  for (const auto& c : v) a.push_back(parse_rat(c, "anchor coordinate"));
  return a;
}

std::vector<Anchor> parse_anchors(const Json& v, const char* key) {
  if (!v.is_array()) fail(std::string("field \"") + key + "\" must be an array of anchors");
  std::vector<Anchor> out;
  out.reserve(v.size());
  for (const auto& a : v) out.push_back(parse_anchor(a));
  return out;
}

Substitution parse_embedding(const Json& v, int n) {
  if (!v.is_array()) fail("embedding must be an array of \"x<i>\"/\"0\"/\"1\" tokens");
  Substitution sub;
  sub.source_arity = n;
  for (const auto& t : v) {
    if (!t.is_string()) fail("embedding token must be a string");
    std::string s = t.get<std::string>();
    if (s == "0") sub.map.push_back(0);
    else if (s == "1") sub.map.push_back(-1);
    else if (s.size() >= 2 && s[0] == 'x') {
      int idx = 0;
      try {
        idx = std::stoi(s.substr(1));
      } catch (const std::exception&) {
        fail("bad embedding token: " + s);
      }
      if (idx < 1) fail("bad embedding token: " + s);
      sub.map.push_back(idx);
    } else {
      fail("bad embedding token: " + s);
    }
  }
  return sub;
}

LinearForm parse_form(const Json& v) {
  if (!v.is_object()) fail("linear form must be an object {\"coeffs\": [...], \"const\": ...}");
  const Json& cs = field(v, "coeffs");
  if (!cs.is_array()) fail("form coeffs must be an array");
  LinearForm f;
  for (const auto& c : cs) f.coeffs.push_back(parse_rat(c, "form coefficient"));
  f.constant = parse_rat(field(v, "const"), "form constant");
  return f;
}

std::vector<LinearForm> parse_forms(const Json& v, const char* key) {
  if (!v.is_array()) fail(std::string("field \"") + key + "\" must be an array of forms");
  std::vector<LinearForm> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(parse_form(f));
  return out;
}

NNRep parse_nn_body(const Json& j) {
  NNRep r;
  int n = int_field(j, "n");
  r.embedding = parse_embedding(field(j, "embedding"), n);
  r.pos = parse_anchors(field(j, "pos"), "pos");
  r.neg = parse_anchors(field(j, "neg"), "neg");
  return r;
}

std::uint8_t parse_bit(const Json& v, const char* where) {
  if (!v.is_number_integer()) fail(std::string(where) + " must be 0 or 1");
  int b = v.get<int>();
  if (b != 0 && b != 1) fail(std::string(where) + " must be 0 or 1");
  return static_cast<std::uint8_t>(b);
}

DecisionList parse_dlist(const Json& j, ListKind kind) {
  DecisionList d;
  d.n = int_field(j, "n");
  d.kind = kind;
  const Json& es = field(j, "entries");
  if (!es.is_array()) fail("entries must be an array");
  for (const auto& e : es) {
    if (!e.is_object()) fail("decision-list entry must be an object");
    d.entries.emplace_back(parse_form(field(e, "form")), parse_bit(field(e, "output"), "output"));
  }
  return d;
}

ThresholdCircuit parse_circuit(const Json& j) {
  ThresholdCircuit c;
  c.n = int_field(j, "n");
  const Json& gs = field(j, "gates");
  if (!gs.is_array()) fail("gates must be an array");
  for (const auto& g : gs) {
    if (!g.is_object()) fail("gate must be an object");
    Gate gate;
    const Json& ws = field(g, "wires");
    if (!ws.is_array()) fail("gate wires must be an array");
    for (const auto& w : ws) {
      if (!w.is_array() || w.size() != 2) fail("wire must be a [node, weight] pair");
      if (!w[0].is_number_integer()) fail("wire node must be an integer");
      gate.wires.emplace_back(w[0].get<int>(), parse_int(w[1], "wire weight"));
    }
    gate.threshold = parse_int(field(g, "threshold"), "gate threshold");
    const Json& cmp = field(g, "cmp");
    if (!cmp.is_string()) fail("gate cmp must be \"ge\" or \"eq\"");
    std::string cs = cmp.get<std::string>();
    if (cs == "ge") gate.cmp = GateCmp::Ge;
    else if (cs == "eq") gate.cmp = GateCmp::Eq;
    else fail("gate cmp must be \"ge\" or \"eq\"");
    c.gates.push_back(std::move(gate));
  }
  c.output = int_field(j, "output");
  return c;
}

}  // namespace

// --- representation dispatch ------------------------------------------------

std::string model_tag(const Representation& r) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NNRep>) return "nn";
        else if constexpr (std::is_same_v<T, KNNRep>) return "knn";
        else if constexpr (std::is_same_v<T, MpPTF>) return "mpptf";
        else if constexpr (std::is_same_v<T, KStat>) return "kstat";
        else if constexpr (std::is_same_v<T, LabeledKStat>) return "labeled_kstat";
        else if constexpr (std::is_same_v<T, DecisionList>)
          return v.kind == ListKind::Ldl ? "ldl" : "eldl";
        else return "circuit";
      },
      r);
}

int rep_arity(const Representation& r) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NNRep> || std::is_same_v<T, KNNRep>)
          return v.source_arity();
        else
          return v.n;
      },
      r);
}

TriBool rep_eval(const Representation& r, std::uint64_t x) {
  return std::visit(
      [x](const auto& v) -> TriBool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NNRep>) return eval_nn(v, x);
        else if constexpr (std::is_same_v<T, KNNRep>) return eval_knn(v, x);
        else if constexpr (std::is_same_v<T, MpPTF>) return tri(eval_mpptf(v, x));
        else if constexpr (std::is_same_v<T, KStat>) return tri(eval_kstat(v, x));
        else if constexpr (std::is_same_v<T, LabeledKStat>) return tri(eval_labeled_kstat(v, x));
        else if constexpr (std::is_same_v<T, DecisionList>) return tri(eval_dlist(v, x));
        else return tri(eval_circuit(v, x));
      },
      r);
}

// --- writers -----------------------------------------------------------------

std::string to_json(const NNRep& r) { return dump(nn_json(r)); }

std::string to_json(const KNNRep& r) {
  Json j = nn_json(r.rep);
  j["model"] = "knn";
  j["k"] = r.k;
  return dump(j);
}

std::string to_json(const MpPTF& m) {
  return dump(Json{{"model", "mpptf"},
                   {"n", m.n},
                   {"left", forms_json(m.left)},
                   {"right", forms_json(m.right)}});
}

std::string to_json(const KStat& s) {
  return dump(Json{{"model", "kstat"},
                   {"n", s.n},
                   {"left", forms_json(s.left)},
                   {"right", forms_json(s.right)},
                   {"k_l", s.k_l},
                   {"k_r", s.k_r}});
}

std::string to_json(const LabeledKStat& s) {
  Json labels = Json::array();
  for (auto b : s.labels) labels.push_back(static_cast<int>(b));
  return dump(Json{{"model", "labeled_kstat"},
                   {"n", s.n},
                   {"forms", forms_json(s.forms)},
                   {"labels", labels},
                   {"k", s.k}});
}

std::string to_json(const DecisionList& d) {
  Json entries = Json::array();
  for (const auto& [form, out] : d.entries)
    entries.push_back(Json{{"form", form_json(form)}, {"output", static_cast<int>(out)}});
  return dump(Json{{"model", d.kind == ListKind::Ldl ? "ldl" : "eldl"},
                   {"n", d.n},
                   {"entries", entries}});
}

std::string to_json(const ThresholdCircuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json wires = Json::array();
    for (const auto& [node, w] : g.wires) wires.push_back(Json::array({node, w.str()}));
    gates.push_back(Json{{"wires", wires},
                         {"threshold", g.threshold.str()},
                         {"cmp", g.cmp == GateCmp::Ge ? "ge" : "eq"}});
  }
  return dump(Json{{"model", "circuit"}, {"n", c.n}, {"gates", gates}, {"output", c.output}});
}

std::string to_json(const Representation& r) {
  return std::visit([](const auto& v) { return to_json(v); }, r);
}

std::string to_json(const PassReport& r) {
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v.str();
  Json j{{"pass", r.pass},
         {"source_model", r.source_model},
         {"target_model", r.target_model},
         {"metrics", metrics},
         {"bound", r.bound ? Json(r.bound->str()) : Json(nullptr)},
         {"bound_met", r.bound_met},
         {"notes", r.notes}};
  return dump(j);
}

std::string to_json(const EquivReport& r) {
  Json j{{"status", to_string(r.status)},
         {"witness", r.witness ? Json(*r.witness) : Json(nullptr)},
         {"inputs_checked", r.inputs_checked}};
  return dump(j);
}

std::string to_json(const SearchResult& r) {
  Json per_m = Json::array();
  for (const auto& [m, count] : r.candidates_per_m) per_m.push_back(Json::array({m, count}));
  Json j{{"found", r.found},
         {"min_anchors", r.min_anchors},
         {"witness", r.found ? Json::parse(to_json(r.witness)) : Json(nullptr)},
         {"candidates_per_m", per_m},
         {"budget_exhausted", r.budget_exhausted}};
  return dump(j);
}

// --- parsing -----------------------------------------------------------------

Representation parse_representation(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");
  const Json& tag = field(j, "model");
  if (!tag.is_string()) fail("model tag must be a string");
  std::string model = tag.get<std::string>();

  Representation rep;
  try {
    if (model == "nn") {
      rep = parse_nn_body(j);
    } else if (model == "knn") {
      KNNRep r;
      r.rep = parse_nn_body(j);
      r.k = int_field(j, "k");
      rep = std::move(r);
    } else if (model == "mpptf") {
      MpPTF m;
      m.n = int_field(j, "n");
      m.left = parse_forms(field(j, "left"), "left");
      m.right = parse_forms(field(j, "right"), "right");
      rep = std::move(m);
    } else if (model == "kstat") {
      KStat s;
      s.n = int_field(j, "n");
      s.left = parse_forms(field(j, "left"), "left");
      s.right = parse_forms(field(j, "right"), "right");
      s.k_l = int_field(j, "k_l");
      s.k_r = int_field(j, "k_r");
      rep = std::move(s);
    } else if (model == "labeled_kstat") {
      LabeledKStat s;
      s.n = int_field(j, "n");
      s.forms = parse_forms(field(j, "forms"), "forms");
      const Json& ls = field(j, "labels");
      if (!ls.is_array()) fail("labels must be an array of bits");
      for (const auto& b : ls) s.labels.push_back(parse_bit(b, "label"));
      s.k = int_field(j, "k");
      rep = std::move(s);
    } else if (model == "ldl") {
      rep = parse_dlist(j, ListKind::Ldl);
    } else if (model == "eldl") {
      rep = parse_dlist(j, ListKind::Eldl);
    } else if (model == "circuit") {
      rep = parse_circuit(j);
    } else {
      fail("unknown model tag: " + model);
    }
    std::visit([](const auto& v) { v.validate(); }, rep);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("validation failed: ") + e.what());
  }
  return rep;
}

GroundTruth parse_ground_truth(const std::string& text) {
  if (text.rfind("family:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) fail("expected family:<name>:<n>[:<param>]");
    int n = 0, extra = 0;
    try {
      n = std::stoi(parts[2]);
      if (parts.size() == 4) extra = std::stoi(parts[3]);
    } catch (const std::exception&) {
      fail("bad family parameter in: " + text);
    }
    FamilySpec spec;
    try {
      spec = parse_family_spec(parts[1], n, extra, extra);
    } catch (const std::exception& e) {
      fail(std::string("bad family literal: ") + e.what());
    }
    return GroundTruth{family_arity(spec),
                       [spec](std::uint64_t x) { return family_eval(spec, x); }};
  }
  if (text.rfind("n=", 0) == 0) {
    try {
      BoolFn f = BoolFn::from_hex(text);
      return GroundTruth{f.arity(), [f](std::uint64_t x) { return f.eval(x); }};
    } catch (const std::exception& e) {
      fail(std::string("bad truth table literal: ") + e.what());
    }
  }
  fail("expected a family:<name>:<n> or n=<arity>:<hex> literal");
}

// --- DOT ---------------------------------------------------------------------

std::string to_dot(const ThresholdCircuit& c) {
  auto node_name = [&](int idx) {
    if (idx < c.n) return "x" + std::to_string(idx + 1);
    return "g" + std::to_string(idx - c.n);
  };
  std::ostringstream out;
  out << "digraph circuit {\n";
  out << "  rankdir=LR;\n";
  for (int i = 0; i < c.n; ++i)
    out << "  x" << (i + 1) << " [shape=circle, label=\"x" << (i + 1) << "\"];\n";
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    out << "  g" << j << " [shape=box, label=\"" << (g.cmp == GateCmp::Ge ? ">= " : "== ")
        << g.threshold.str() << "\"";
    if (static_cast<int>(j) == c.output) out << ", peripheries=2";
    out << "];\n";
  }
  for (std::size_t j = 0; j < c.gates.size(); ++j)
    for (const auto& [node, w] : c.gates[j].wires)
      out << "  " << node_name(node) << " -> g" << j << " [label=\"" << w.str() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace nncomp

// nncomp command-line tool: construction, conversion, exhaustive
// verification, minimal-representation search, and circuit emission over
// exact-arithmetic Boolean function representations.
//
// Exit codes: 0 success / EQUAL; 1 MISMATCH or ILL_DEFINED (witness printed);
// 2 parse or validation errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <nncomp/constructions.hpp>
#include <nncomp/oracle.hpp>
#include <nncomp/serialize.hpp>
#include <nncomp/transforms.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

using namespace nncomp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << text;
}

Representation load_representation(const std::string& path) {
  return parse_representation(read_file(path));
}

template <class T>
const T& expect_model(const Representation& rep, const std::string& context) {
  const T* p = std::get_if<T>(&rep);
  if (!p) throw ParseError(context + ": input has model \"" + model_tag(rep) + "\"");
  return *p;
}

const NNRep& expect_boolean_nn(const Representation& rep, const std::string& context) {
  const NNRep& r = expect_model<NNRep>(rep, context);
  if (!r.boolean_anchors()) throw ParseError(context + ": requires Boolean anchors");
  return r;
}

using PassFn = std::function<Representation(const Representation&, PassReport*)>;

const std::map<std::string, PassFn>& pass_registry() {
  static const std::map<std::string, PassFn> registry = {
      {"nn-to-mpptf",
       [](const Representation& in, PassReport* rep) -> Representation {
         return nn_to_mpptf(expect_model<NNRep>(in, "nn-to-mpptf"), rep);
       }},
      {"mpptf-to-hnn",
       [](const Representation& in, PassReport* rep) -> Representation {
         return mpptf_to_hnn(expect_model<MpPTF>(in, "mpptf-to-hnn"), rep);
       }},
      {"mpptf-to-nn",
       [](const Representation& in, PassReport* rep) -> Representation {
         return mpptf_to_nn(expect_model<MpPTF>(in, "mpptf-to-nn"), rep);
       }},
      {"knn-to-mpptf",
       [](const Representation& in, PassReport* rep) -> Representation {
         return knn_to_mpptf(expect_model<KNNRep>(in, "knn-to-mpptf"), rep);
       }},
      {"knn-to-kstat",
       [](const Representation& in, PassReport* rep) -> Representation {
         return knn_to_kstat(expect_model<KNNRep>(in, "knn-to-kstat"), rep);
       }},
      {"kstat-to-knn",
       [](const Representation& in, PassReport* rep) -> Representation {
         return kstat_to_knn(expect_model<KStat>(in, "kstat-to-knn"), rep);
       }},
      {"kstat-to-labeled-kstat",
       [](const Representation& in, PassReport* rep) -> Representation {
         return twosided_to_labeled(expect_model<KStat>(in, "kstat-to-labeled-kstat"), rep);
       }},
      {"labeled-kstat-to-kstat",
       [](const Representation& in, PassReport* rep) -> Representation {
         return labeled_to_twosided(expect_model<LabeledKStat>(in, "labeled-kstat-to-kstat"),
                                    rep);
       }},
      {"mpptf-to-ldl",
       [](const Representation& in, PassReport* rep) -> Representation {
         return mpptf_to_ldl(expect_model<MpPTF>(in, "mpptf-to-ldl"), rep);
       }},
      {"eldl-to-kstat",
       [](const Representation& in, PassReport* rep) -> Representation {
         const DecisionList& d = expect_model<DecisionList>(in, "eldl-to-kstat");
         if (d.kind != ListKind::Eldl)
           throw ParseError("eldl-to-kstat: input is an ldl, not an eldl");
         return eldl_to_kstat(d, rep);
       }},
      {"hnn-to-depth3",
       [](const Representation& in, PassReport* rep) -> Representation {
         return hnn_to_depth3(expect_boolean_nn(in, "hnn-to-depth3"), Depth3Variant::Auto, rep);
       }},
      {"hnn-to-depth3-slice",
       [](const Representation& in, PassReport* rep) -> Representation {
         return hnn_to_depth3_slice(expect_boolean_nn(in, "hnn-to-depth3-slice"), rep);
       }},
      {"hnn-to-depth2",
       [](const Representation& in, PassReport* rep) -> Representation {
         return hnn_to_depth2(expect_boolean_nn(in, "hnn-to-depth2"), rep);
       }},
  };
  return registry;
}

// A verification operand: a representation file, or a "family:<name>:<n>" /
// "n=<arity>:<hex>" ground-truth literal.
struct Operand {
  int arity = 0;
  Evaluator eval;
};

Operand load_operand(const std::string& spec) {
  if (spec.rfind("family:", 0) == 0 || spec.rfind("n=", 0) == 0) {
    GroundTruth g = parse_ground_truth(spec);
    auto fn = g.eval;
    return Operand{g.arity, [fn](std::uint64_t x) { return tri(fn(x)); }};
  }
  Representation rep = load_representation(spec);
  return Operand{rep_arity(rep), [rep](std::uint64_t x) { return rep_eval(rep, x); }};
}

// --- subcommand drivers -----------------------------------------------------

struct Options {
  int n = 0;
  int k = 0;
  std::string model;
  std::string pass;
  std::string family;
  std::string in_path;
  std::string out_path;
  std::string format = "json";
  std::string a_spec;
  std::string b_spec;
  std::string fn_spec;
  std::string checkpoint;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = 1'000'000'000;
};

void emit_with_report(const Representation& out, const PassReport& report,
                      const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << to_json(out);
    std::cerr << to_json(report);
  } else {
    write_output(out_path, to_json(out));
    std::cout << to_json(report);
  }
}

int run_construct(const Options& o) {
  PassReport report;
  Representation out;
  if (!o.in_path.empty()) {
    // Clause-form input: build the nearest-neighbor representation of a
    // CNF/DNF given as {"n":..., "kind":"cnf"|"dnf", "clauses":[[...],...]}.
    if (o.model != "nn") throw ParseError("construct --in currently targets --model nn");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.in_path));
    } catch (const std::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    CnfDnf c;
    try {
      c.n = j.at("n").get<int>();
      std::string kind = j.value("kind", std::string("cnf"));
      if (kind == "cnf") c.kind = ClauseKind::Cnf;
      else if (kind == "dnf") c.kind = ClauseKind::Dnf;
      else throw ParseError("kind must be \"cnf\" or \"dnf\"");
      c.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
      c.validate();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad clause document: ") + e.what());
    }
    out = cnf_to_nn(c, &report);
  } else if (o.family == "xor" && o.model == "mpptf") {
    out = xor_mpptf(o.n, &report);
  } else if (o.family == "omb-and2" && o.model == "mpptf") {
    out = omb_and2_mpptf(o.n, &report);
  } else if (o.family == "disj" && (o.model == "nn" || o.model == "hnn")) {
    out = disj_hnn(o.n, &report);
  } else if (o.family == "ip" && o.model == "knn") {
    out = sym_and_to_knn(ip_sym_and(o.n), &report);
  } else {
    throw ParseError("no construction for family \"" + o.family + "\" with model \"" + o.model +
                     "\"; available: xor/mpptf, omb-and2/mpptf, disj/nn, ip/knn, or --in "
                     "<clauses.json> with --model nn");
  }
  emit_with_report(out, report, o.out_path);
  return 0;
}

int run_convert(const Options& o) {
  auto it = pass_registry().find(o.pass);
  if (it == pass_registry().end()) {
    std::string names;
    for (const auto& [name, fn] : pass_registry()) names += "\n  " + name;
    throw ParseError("unknown pass \"" + o.pass + "\"; available:" + names);
  }
  Representation in = load_representation(o.in_path);
  PassReport report;
  try {
    Representation out = it->second(in, &report);
    emit_with_report(out, report, o.out_path);
  } catch (const IllDefinedError& e) {
    std::cerr << "ILL_DEFINED: " << e.what() << " (witness input " << e.witness() << ")\n";
    return 1;
  }
  return 0;
}

int run_verify(const Options& o) {
  Operand a = load_operand(o.a_spec);
  Operand b = load_operand(o.b_spec);
  if (a.arity != b.arity)
    throw ParseError("arity mismatch: " + std::to_string(a.arity) + " vs " +
                     std::to_string(b.arity));
  EquivReport r = equiv_check(a.eval, b.eval, a.arity, o.jobs);
  std::cout << to_json(r);
  if (!r.equal()) {
    std::cerr << to_string(r.status) << " at input " << *r.witness << "\n";
    return 1;
  }
  return 0;
}

int run_components(const Options& o) {
  GroundTruth g = parse_ground_truth(o.fn_spec);
  if (g.arity > BoolFn::kMaxArity) throw ParseError("arity too large to materialize");
  BoolFn f = BoolFn::from_evaluator(g.arity, g.eval);
  std::cout << "{\n  \"arity\": " << g.arity << ",\n  \"components\": " << components(f)
            << "\n}\n";
  return 0;
}

int run_search(const Options& o) {
  GroundTruth g = parse_ground_truth(o.fn_spec);
  if (g.arity > 4) throw ParseError("search-min-hnn supports arity <= 4");
  BoolFn f = BoolFn::from_evaluator(g.arity, g.eval);
  SearchOptions opts;
  opts.budget = o.budget;
  opts.checkpoint_path = o.checkpoint;
  SearchResult r = min_hnn_search(f, opts);
  std::string text = to_json(r);
  write_output(o.out_path, text);
  if (!o.out_path.empty()) std::cout << text;
  return 0;
}

int run_emit_circuit(const Options& o) {
  Representation in = load_representation(o.in_path);
  const NNRep& r = expect_boolean_nn(in, "emit-circuit");
  ThresholdCircuit c;
  PassReport report;
  if (o.pass.empty() || o.pass == "hnn-to-depth3")
    c = hnn_to_depth3(r, Depth3Variant::Auto, &report);
  else if (o.pass == "hnn-to-depth3-slice")
    c = hnn_to_depth3_slice(r, &report);
  else if (o.pass == "hnn-to-depth2")
    c = hnn_to_depth2(r, &report);
  else
    throw ParseError("unknown circuit pass \"" + o.pass +
                     "\"; available: hnn-to-depth3, hnn-to-depth3-slice, hnn-to-depth2");
  if (o.format == "dot") {
    write_output(o.out_path, to_dot(c));
  } else if (o.format == "json") {
    write_output(o.out_path, to_json(c));
  } else {
    throw ParseError("--format must be json or dot");
  }
  if (!o.out_path.empty()) std::cout << to_json(report);
  return 0;
}

int run_bitcomplexity(const Options& o) {
  Representation in = load_representation(o.in_path);
  int bits = 0;
  if (const NNRep* r = std::get_if<NNRep>(&in)) bits = bit_complexity(*r);
  else if (const KNNRep* r = std::get_if<KNNRep>(&in)) bits = bit_complexity(*r);
  else throw ParseError("bitcomplexity: input must be an nn or knn representation");
  std::cout << "{\n  \"bit_complexity\": " << bits << "\n}\n";
  return 0;
}

int run_report(const Options& o) {
  Representation in = load_representation(o.in_path);
  std::ostringstream out;
  out << "{\n  \"model\": \"" << model_tag(in) << "\",\n  \"n\": " << rep_arity(in);
  if (const NNRep* r = std::get_if<NNRep>(&in)) {
    out << ",\n  \"ambient_dim\": " << r->ambient_dim() << ",\n  \"anchors\": "
        << r->anchor_count() << ",\n  \"boolean_anchors\": "
        << (r->boolean_anchors() ? "true" : "false")
        << ",\n  \"bit_complexity\": " << bit_complexity(*r);
  } else if (const KNNRep* r = std::get_if<KNNRep>(&in)) {
    out << ",\n  \"ambient_dim\": " << r->rep.ambient_dim() << ",\n  \"anchors\": "
        << r->anchor_count() << ",\n  \"k\": " << r->k
        << ",\n  \"bit_complexity\": " << bit_complexity(*r);
  } else if (const MpPTF* m = std::get_if<MpPTF>(&in)) {
    out << ",\n  \"terms\": " << m->terms() << ",\n  \"max_weight\": \"" << m->max_weight().str()
        << "\"";
  } else if (const KStat* s = std::get_if<KStat>(&in)) {
    out << ",\n  \"left_forms\": " << s->left.size() << ",\n  \"right_forms\": "
        << s->right.size() << ",\n  \"k_l\": " << s->k_l << ",\n  \"k_r\": " << s->k_r;
  } else if (const LabeledKStat* s = std::get_if<LabeledKStat>(&in)) {
    out << ",\n  \"forms\": " << s->forms.size() << ",\n  \"k\": " << s->k;
  } else if (const DecisionList* d = std::get_if<DecisionList>(&in)) {
    out << ",\n  \"length\": " << d->length();
  } else if (const ThresholdCircuit* c = std::get_if<ThresholdCircuit>(&in)) {
    out << ",\n  \"gates\": " << c->size() << ",\n  \"depth\": " << c->depth()
        << ",\n  \"max_weight\": \"" << c->max_weight().str() << "\"";
  }
  out << "\n}\n";
  write_output(o.out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic Boolean function representations: construction, "
               "conversion, verification, search, circuit emission"};
  app.require_subcommand(1);

  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", o.jobs, "Worker threads for exhaustive scans")->default_val(1);
    cmd->add_option("--seed", o.seed, "Seed for randomized generators")->default_val(1);
  };

  CLI::App* construct = app.add_subcommand("construct", "Build a bundled representation");
  construct->add_option("--family", o.family, "Family name (xor, omb-and2, disj, ip)");
  construct->add_option("--n", o.n, "Family parameter");
  construct->add_option("--k", o.k, "Extra family parameter (unused by bundled families)");
  construct->add_option("--model", o.model, "Target model tag")->required();
  construct->add_option("--in", o.in_path, "Clause-form JSON input (CNF/DNF)");
  construct->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  add_common(construct);

  CLI::App* convert = app.add_subcommand("convert", "Run a conversion pass");
  convert->add_option("--pass", o.pass, "Pass name <source>-to-<target>")->required();
  convert->add_option("--in", o.in_path, "Input representation JSON")->required();
  convert->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  add_common(convert);

  CLI::App* verify = app.add_subcommand("verify", "Exhaustive equivalence check");
  verify->add_option("--a", o.a_spec, "File, family:<name>:<n>, or n=<arity>:<hex>")->required();
  verify->add_option("--b", o.b_spec, "File, family:<name>:<n>, or n=<arity>:<hex>")->required();
  add_common(verify);

  CLI::App* comps = app.add_subcommand("components", "One-set component count");
  comps->add_option("--f", o.fn_spec, "family:<name>:<n> or n=<arity>:<hex>")->required();
  add_common(comps);

  CLI::App* search = app.add_subcommand("search-min-hnn",
                                        "Smallest Boolean-anchor representation (n <= 4)");
  search->add_option("--f", o.fn_spec, "family:<name>:<n> or n=<arity>:<hex>")->required();
  search->add_option("--budget", o.budget, "Candidate evaluation cap")
      ->default_val(std::uint64_t(1'000'000'000));
  search->add_option("--checkpoint", o.checkpoint, "Resumable checkpoint file");
  search->add_option("--out", o.out_path, "Result path (stdout when omitted)");
  add_common(search);

  CLI::App* emit = app.add_subcommand("emit-circuit", "Threshold circuit from Boolean anchors");
  emit->add_option("--in", o.in_path, "Input nn representation JSON")->required();
  emit->add_option("--pass", o.pass,
                   "hnn-to-depth3 (default), hnn-to-depth3-slice, hnn-to-depth2");
  emit->add_option("--format", o.format, "json or dot")->default_val("json");
  emit->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  add_common(emit);

  CLI::App* bits = app.add_subcommand("bitcomplexity", "Anchor coordinate bit-complexity");
  bits->add_option("--in", o.in_path, "Input nn/knn representation JSON")->required();
  add_common(bits);

  CLI::App* report = app.add_subcommand("report", "Size summary of a representation");
  report->add_option("--in", o.in_path, "Input representation JSON")->required();
  report->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*construct) return run_construct(o);
    if (*convert) return run_convert(o);
    if (*verify) return run_verify(o);
    if (*comps) return run_components(o);
    if (*search) return run_search(o);
    if (*emit) return run_emit_circuit(o);
    if (*bits) return run_bitcomplexity(o);
    if (*report) return run_report(o);
  } catch (const IllDefinedError& e) {
    std::cerr << "ILL_DEFINED: " << e.what() << " (witness input " << e.witness() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

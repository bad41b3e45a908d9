// Command-line front end: construct the graphs of a pair, reduce, build the
// triangulation, run the verifiers, emit path-counting tables, or sweep many
// pairs.  Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 resource limit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ijt/algebra.hpp"
#include "ijt/geometry.hpp"
#include "ijt/graph.hpp"
#include "ijt/pair.hpp"
#include "ijt/report.hpp"
#include "ijt/sweep.hpp"
#include "ijt/tamari.hpp"

using nlohmann::json;

namespace {

constexpr const char* kFormatTag = "ijt.v1";

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

json to_json(const ijt::ProvGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"provenance", e.provenance}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

json to_json(const ijt::AugmentedGraph& ag) {
  json j = to_json(ag.inner);
  j["source_edges"] = std::vector<int>(ag.source_edges.begin(), ag.source_edges.end());
  j["sink_edges"] = std::vector<int>(ag.sink_edges.begin(), ag.sink_edges.end());
  return j;
}

json to_json(const ijt::Report& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"format", kFormatTag},
          {"subject", rep.subject},
          {"passed", rep.ok()},
          {"checks", checks}};
}

json to_json(const ijt::BetaPolynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms) {
    json exps = json::array();
    for (const auto& [e, m] : t.exponents)
      exps.push_back({{"tail", e.first}, {"head", e.second}, {"multiplicity", m}});
    terms.push_back({{"exponents", exps},
                     {"beta_power", t.beta_power},
                     {"coefficient", t.coefficient.str()}});
  }
  return {{"format", kFormatTag}, {"terms", terms}};
}

json to_json(const ijt::LatticeVertex& v) {
  json coords = json::array();
  for (const auto& [c, val] : v.coords)
    coords.push_back({{"a", c.a}, {"b", c.b}, {"value", val}});
  return {{"ambient", ijt::to_string(v.ambient)}, {"coords", coords}};
}

struct Output {
  std::string path;  // empty = stdout

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::filesystem::path p(path);
    if (p.is_relative()) {
      if (const char* dir = std::getenv("IJT_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open output file " + p.string());
    os << text;
  }
};

struct PairArgs {
  std::string I, Jbar;
  bool normalize = false;

  ijt::ValidPair resolve() const {
    auto i = parse_ints(I);
    auto j = parse_ints(Jbar);
    return normalize ? ijt::normalize_pair(i, j) : ijt::validate_pair(i, j);
  }
};

void add_pair_options(CLI::App* cmd, PairArgs& pa) {
  cmd->add_option("--I", pa.I, "comma-separated unbarred elements")->required();
  cmd->add_option("--Jbar", pa.Jbar, "comma-separated barred elements")->required();
  cmd->add_flag("--normalize", pa.normalize, "prune arc-free elements instead of rejecting");
}

int report_exit(const std::vector<ijt::Report>& reps, const std::string& format,
                const Output& out) {
  bool all_ok = true;
  std::ostringstream text;
  json arr = json::array();
  for (const auto& r : reps) {
    all_ok = all_ok && r.ok();
    text << r.summary() << "\n";
    arr.push_back(to_json(r));
  }
  if (format == "json")
    out.emit(json{{"format", kFormatTag}, {"reports", arr}}.dump(2) + "\n");
  else
    out.emit(text.str());
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph pair constructions, subdivision reductions, and verifiers"};
  app.require_subcommand(1);

  std::string format = "text";
  Output out;
  app.add_option("--format", format, "text|json|dot|csv")
      ->check(CLI::IsMember({"text", "json", "dot", "csv"}));
  app.add_option("--output,-o", out.path,
                 "output file (default stdout; relative paths resolve under $IJT_OUTPUT_DIR)");

  PairArgs pa;
  std::string order_name = "length";
  bool simple = false;
  std::string nu_arg;
  std::string space = "flow";
  int max_n = 5;
  int random_count = 0;
  int random_n = 9;
  std::uint64_t seed = 0;
  std::size_t max_reductions = ijt::kDefaultMaxReductions;
  long long work_limit = ijt::kDefaultFlowWorkLimit;
  std::string what = "all";

  auto* construct = app.add_subcommand("construct", "emit the arc graph, quotient, tree and augmented tree of a pair");
  add_pair_options(construct, pa);

  auto* reduce = app.add_subcommand("reduce", "reduction tree and reduced form");
  add_pair_options(reduce, pa);
  reduce->add_option("--order", order_name, "length|leftmost")
      ->check(CLI::IsMember({"length", "leftmost"}));
  reduce->add_flag("--simple", simple, "two-child reduction tree");
  reduce->add_option("--max-reductions", max_reductions, "step guard");

  auto* triangulate = app.add_subcommand("triangulate", "facet simplices and dual graph");
  add_pair_options(triangulate, pa);
  triangulate->add_option("--space", space, "flow|pair")->check(CLI::IsMember({"flow", "pair"}));

  auto* verify = app.add_subcommand("verify", "run the verifiers for one pair");
  add_pair_options(verify, pa);
  verify->add_option("--what", what, "diagram|triangulation|h|bijection|lemma|all")
      ->check(CLI::IsMember({"diagram", "triangulation", "h", "bijection", "lemma", "all"}));
  verify->add_option("--work-limit", work_limit, "flow oracle work guard");

  auto* count = app.add_subcommand("count", "path-counting tables for a nu path or a pair");
  count->add_option("--nu", nu_arg, "word over {E,N}");
  count->add_option("--I", pa.I, "comma-separated unbarred elements");
  count->add_option("--Jbar", pa.Jbar, "comma-separated barred elements");
  count->add_flag("--normalize", pa.normalize,
                  "prune arc-free elements instead of rejecting");

  auto* sweep = app.add_subcommand("sweep", "verify every pair up to --max-n plus optional random pairs");
  sweep->add_option("--max-n", max_n, "exhaustive bound");
  sweep->add_option("--random", random_count, "number of random pairs");
  sweep->add_option("--random-n", random_n, "value bound for random pairs");
  sweep->add_option("--seed", seed, "random seed");
  sweep->add_option("--work-limit", work_limit, "flow oracle work guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) {
      ijt::ValidPair vp = pa.resolve();
      ijt::PrecMap pm = ijt::prec(vp);
      auto arcs = ijt::build_A(vp);
      ijt::Quotient q = ijt::prec_quotient(arcs, vp, pm);
      ijt::ProvGraph g = ijt::build_G(vp);
      ijt::AugmentedGraph ghat = ijt::build_Ghat(vp);
      if (format == "dot") {
        std::ostringstream os;
        os << ijt::to_dot(q.graph, "prec_quotient") << ijt::to_dot(g, "tree")
           << ijt::to_dot(ghat, "augmented_tree");
        out.emit(os.str());
      } else if (format == "json") {
        json j{{"format", kFormatTag}, {"pair", ijt::to_string(vp)}};
        json ja = json::array();
        for (const auto& [i, jj] : arcs) ja.push_back({i, jj});
        j["arc_graph"] = ja;
        j["prec"] = json::object();
        for (const auto& [k, v] : pm.forward) j["prec"][std::to_string(k)] = v;
        j["prec_quotient"] = to_json(q.graph);
        json collapsed = json::array();
        for (const auto& [i, jj] : q.collapsed) collapsed.push_back({i, jj});
        j["collapsed_arcs"] = collapsed;
        j["tree"] = to_json(g);
        j["augmented_tree"] = to_json(ghat);
        out.emit(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "pair: " << ijt::to_string(vp) << "\n";
        os << "arcs (" << arcs.size() << "):";
        for (const auto& [i, jj] : arcs) os << " (" << i << "," << jj << "~)";
        os << "\nprec:";
        for (const auto& [k, v] : pm.forward) os << " " << k << "~->" << v;
        os << "\nquotient edges (" << q.graph.edges.size() << "):";
        for (const auto& e : q.graph.edges) os << " (" << e.tail << "," << e.head << ")";
        os << "\ncollapsed arcs:";
        for (const auto& [i, jj] : q.collapsed) os << " (" << i << "," << jj << "~)";
        os << "\ntree edges (" << g.edges.size() << "):";
        for (const auto& e : g.edges) os << " (" << e.tail << "," << e.head << ")";
        os << "\naugmented: " << ghat.edge_count() << " edges, "
           << ijt::routes(ghat).size() << " routes\n";
        out.emit(os.str());
      }
      return 0;
    }

    if (reduce->parsed()) {
      ijt::ValidPair vp = pa.resolve();
      ijt::ProvGraph g = ijt::build_G(vp);
      ijt::ReductionOrder order = order_name == "leftmost"
                                      ? ijt::ReductionOrder::leftmost()
                                      : ijt::ReductionOrder::length();
      ijt::ReductionTree tree = ijt::build_reduction_tree(
          g, order, simple, ijt::Schedule::simultaneous, max_reductions);
      ijt::BetaPolynomial p = ijt::reduced_form(g, order, ijt::Schedule::simultaneous,
                                                max_reductions);
      if (format == "json") {
        json j{{"format", kFormatTag},
               {"pair", ijt::to_string(vp)},
               {"nodes", tree.nodes.size()},
               {"leaves", tree.leaves().size()},
               {"full_dimensional_leaves", tree.full_dimensional_leaves().size()},
               {"reduced_form", to_json(p)}};
        out.emit(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "pair: " << ijt::to_string(vp) << "\n"
           << "tree nodes: " << tree.nodes.size()
           << ", leaves: " << tree.leaves().size()
           << ", full-dimensional: " << tree.full_dimensional_leaves().size() << "\n"
           << "reduced form: " << ijt::to_string(p) << "\n";
        out.emit(os.str());
      }
      return 0;
    }

    if (triangulate->parsed()) {
      ijt::ValidPair vp = pa.resolve();
      ijt::ProvGraph g = ijt::build_G(vp);
      ijt::ReductionTree tree = ijt::build_reduction_tree(g, ijt::ReductionOrder::length());
      ijt::Ambient target = space == "pair" ? ijt::Ambient::pair_space : ijt::Ambient::flow;
      auto facets = ijt::facet_simplices(tree, target, vp);
      auto trees = ijt::enumerate_IJ_trees(vp);
      auto adj = ijt::dual_graph(trees);
      if (format == "dot") {
        std::ostringstream os;
        os << "graph dual {\n";
        for (std::size_t a = 0; a < adj.size(); ++a)
          for (int b : adj[a])
            if (a < static_cast<std::size_t>(b))
              os << "  f" << a << " -- f" << b << ";\n";
        os << "}\n";
        out.emit(os.str());
      } else if (format == "json") {
        json jf = json::array();
        for (const auto& sx : facets) {
          json verts = json::array();
          for (const auto& v : sx.vertices) verts.push_back(to_json(v));
          jf.push_back(verts);
        }
        json j{{"format", kFormatTag},
               {"pair", ijt::to_string(vp)},
               {"facets", jf},
               {"dual_graph", adj}};
        out.emit(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "pair: " << ijt::to_string(vp) << "\nfacets: " << facets.size()
           << " simplices of " << (facets.empty() ? 0 : facets[0].vertices.size())
           << " vertices each (" << ijt::to_string(target) << " space)\n";
        int dual_edges = 0;
        for (const auto& a : adj) dual_edges += static_cast<int>(a.size());
        os << "dual graph: " << adj.size() << " nodes, " << dual_edges / 2 << " edges\n";
        out.emit(os.str());
      }
      return 0;
    }

    if (verify->parsed()) {
      ijt::ValidPair vp = pa.resolve();
      ijt::SweepOptions opt;
      opt.work_limit = work_limit;
      std::vector<ijt::Report> reps;
      if (what == "all" || what == "diagram") reps.push_back(ijt::verify_theorem_3_1(vp));
      if (what == "all" || what == "triangulation")
        reps.push_back(ijt::verify_triangulation(vp, opt));
      if (what == "all" || what == "h") reps.push_back(ijt::verify_corollary_4_9(vp));
      if (what == "all" || what == "bijection") reps.push_back(ijt::verify_tree_bijection(vp));
      if (what == "all" || what == "lemma") {
        ijt::ProvGraph g = ijt::build_G(vp);
        auto pairs = ijt::non_alternating_pairs(g);
        if (!pairs.empty())
          reps.push_back(ijt::verify_reduction_lemma(g, ijt::length_pick(g), vp, work_limit));
      }
      return report_exit(reps, format, out);
    }

    if (count->parsed()) {
      std::string nu;
      if (!nu_arg.empty()) {
        if (!pa.I.empty() || !pa.Jbar.empty())
          throw ijt::InvalidPair("give either --nu or a pair, not both");
        nu = nu_arg;
      } else {
        nu = ijt::nu_from_pair(pa.resolve());
      }
      ijt::Int cat = ijt::nu_catalan(nu);
      auto nar = ijt::nu_narayana(nu);
      auto sch = ijt::nu_schroeder(nu);
      auto vec_str = [](const std::vector<ijt::Int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
        return s;
      };
      if (format == "json") {
        json jn = json::array(), js = json::array();
        for (const auto& v : nar) jn.push_back(v.str());
        for (const auto& v : sch) js.push_back(v.str());
        out.emit(json{{"format", kFormatTag},
                      {"nu", nu},
                      {"catalan", cat.str()},
                      {"narayana", jn},
                      {"schroeder", js}}
                     .dump(2) +
                 "\n");
      } else if (format == "csv") {
        out.emit("nu,catalan,narayana,schroeder\n" + nu + "," + cat.str() + "," +
                 vec_str(nar) + "," + vec_str(sch) + "\n");
      } else {
        out.emit("nu = " + (nu.empty() ? std::string("(empty)") : nu) +
                 "\ncatalan = " + cat.str() + "\nnarayana = [" + vec_str(nar) +
                 "]\nschroeder = [" + vec_str(sch) + "]\n");
      }
      return 0;
    }

    if (sweep->parsed()) {
      ijt::SweepOptions opt;
      opt.work_limit = work_limit;
      std::vector<ijt::ValidPair> pairs = ijt::enumerate_valid_pairs(max_n);
      if (random_count > 0) {
        auto extra = ijt::random_valid_pairs(random_count, random_n, seed);
        pairs.insert(pairs.end(), extra.begin(), extra.end());
      }
      std::vector<ijt::Report> reps;
      for (const auto& vp : pairs) reps.push_back(ijt::verify_pair(vp, opt));
      if (format == "text") {
        // Compact: one line per pair.
        std::ostringstream os;
        bool all_ok = true;
        for (const auto& r : reps) {
          all_ok = all_ok && r.ok();
          os << (r.ok() ? "PASS " : "FAIL ") << r.subject << "\n";
          for (const auto& f : r.failures()) os << "  " << f << "\n";
        }
        os << (all_ok ? "sweep passed (" : "sweep FAILED (") << reps.size() << " pairs)\n";
        out.emit(os.str());
        return all_ok ? 0 : 1;
      }
      return report_exit(reps, format, out);
    }
  } catch (const ijt::InvalidPair& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

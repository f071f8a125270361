#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cambrian/cambrian.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/fan.hpp"
#include "cambrian/kernels.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/typea.hpp"
#include "cambrian/verify.hpp"
#include "json.hpp"

namespace {

using namespace cambrian;

constexpr int kExitBadInput = 2;
constexpr int kExitVerification = 3;

struct Common {
  std::string type;
  std::string matrix_file;
  std::string cword;
  std::string orientation;
  std::string out;
  std::string format = "text";
  int samples = 10000;
  std::uint64_t seed = 0;
};

Caps caps_from_env() {
  Caps caps;
  if (const char* env = std::getenv("CAMBRIAN_MAX_ORDER")) caps.max_elements = std::atoll(env);
  return caps;
}

// --export wins; otherwise the --out extension decides
std::string effective_format(const Common& c) {
  if (c.format != "text") return c.format;
  for (const char* ext : {"svg", "json", "dot"}) {
    std::string suffix = std::string(".") + ext;
    if (c.out.size() > suffix.size() && c.out.compare(c.out.size() - suffix.size(), suffix.size(), suffix) == 0)
      return ext;
  }
  return "text";
}

CoxeterSystem build_system(const Common& c) {
  Caps caps = caps_from_env();
  if (!c.matrix_file.empty()) {
    std::ifstream in(c.matrix_file);
    if (!in) throw BadInput("cannot open matrix file " + c.matrix_file);
    nlohmann::json j;
    in >> j;
    CoxeterMatrix cm;
    cm.m = j.at("matrix").get<std::vector<std::vector<int>>>();
    cm.rank = static_cast<int>(cm.m.size());
    return CoxeterSystem::build(cm, caps);
  }
  if (c.type.empty()) throw BadInput("need --type or --matrix");
  return CoxeterSystem::build(c.type, caps);
}

CoxeterElement pick_coxeter_element(const CoxeterSystem& sys, const Common& c) {
  if (!c.cword.empty())
    return coxeter_element_from_word(sys, CoxeterSystem::parse_word(c.cword, sys.rank()));
  if (!c.orientation.empty())
    return coxeter_element(sys, Orientation::parse(c.orientation, sys.matrix()));
  // default: s1 s2 ... sn
  std::vector<int> word(sys.rank());
  for (int s = 0; s < sys.rank(); ++s) word[s] = s;
  return coxeter_element_from_word(sys, word);
}

void emit(const Common& c, const std::string& payload) {
  if (c.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw BadInput("cannot write " + c.out);
    out << payload;
  }
}

void add_common(CLI::App* cmd, Common& c, bool with_group = true, bool with_c = true) {
  if (with_group) {
    cmd->add_option("--type", c.type, "classification label, e.g. A3, B2, H3, I2(7), A2xA1");
    cmd->add_option("--matrix", c.matrix_file, "JSON file with {\"matrix\": [[...]]}");
  }
  if (with_c) {
    cmd->add_option("--c,--coxeter-element", c.cword, "Coxeter element word, e.g. s1s3s2");
    cmd->add_option("--orientation", c.orientation, "diagram orientation, e.g. 1>2,3>2");
  }
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--export", c.format, "output format: text|dot|json|svg");
  cmd->add_option("--samples", c.samples, "sample count for fan checks");
  cmd->add_option("--seed", c.seed, "RNG seed");
}

int cmd_group(const Common& c) {
  CoxeterSystem sys = build_system(c);
  EnumeratedGroup g = enumerate_group(sys, caps_from_env());
  std::string fmt = effective_format(c);
  if (fmt == "dot") {
    emit(c, lattice_dot(g.lattice, nullptr, "weak_order"));
  } else if (fmt == "json") {
    emit(c, system_json(sys, g.order()));
  } else {
    std::ostringstream os;
    os << "group " << (sys.label() ? sys.label()->str() : "custom") << "\n"
       << "rank " << sys.rank() << "\n"
       << "order " << g.order() << "\n"
       << "positive_roots " << sys.num_positive_roots() << "\n"
       << "longest_length " << g.elements.back().length() << "\n";
    emit(c, os.str());
  }
  return 0;
}

int cmd_congruence(const Common& c) {
  CoxeterSystem sys = build_system(c);
  WeakOrder w = WeakOrder::build(sys, caps_from_env());
  CoxeterElement cox = pick_coxeter_element(sys, c);
  Congruence theta = cambrian_congruence(w, cox);
  std::string fmt = effective_format(c);
  if (fmt == "dot") {
    emit(c, lattice_dot(w.lattice(), &theta.contracted, "cambrian_congruence"));
  } else if (fmt == "json") {
    emit(c, congruence_json(theta));
  } else {
    std::ostringstream os;
    os << "coxeter_element " << sys.word_str(cox.word) << "\n"
       << "orientation " << orientation_of(sys, cox).str() << "\n"
       << "classes " << theta.num_classes() << "\n"
       << "contracted_edges " << theta.contracted.count() << "\n";
    emit(c, os.str());
  }
  return 0;
}

int cmd_cambrian(const Common& c, bool verify) {
  CoxeterSystem sys = build_system(c);
  WeakOrder w = WeakOrder::build(sys, caps_from_env());
  CoxeterElement cox = pick_coxeter_element(sys, c);
  Congruence theta = cambrian_congruence(w, cox);
  CambrianLattice camb = cambrian_lattice(w, cox);
  std::ostringstream os;
  os << "coxeter_element " << sys.word_str(cox.word) << "\n"
     << "classes " << theta.num_classes() << "\n"
     << "sortables " << camb.sortables.size() << "\n"
     << "covers " << camb.lattice.num_edges() << "\n";
  int rc = 0;
  if (verify) {
    // Theorem checks at this single Coxeter element
    bool bottoms_ok = true;
    std::set<int> bottoms(theta.bottom.begin(), theta.bottom.end());
    bottoms_ok = bottoms == std::set<int>(camb.sortables.begin(), camb.sortables.end());
    os << (bottoms_ok ? "PASS" : "FAIL") << " class-bottoms-are-sortables\n";
    bool rec_ok = true;
    for (int v = 0; v < w.size() && rec_ok; ++v)
      rec_ok = is_sortable(sys, w.element(v), cox) == is_sortable_recursive(sys, w.element(v), cox);
    os << (rec_ok ? "PASS" : "FAIL") << " recursive-sortability-agrees\n";
    auto tabs = kern::meet_join_tables(w.lattice(), w.reach);
    bool sub_ok = tabs.ok;
    for (std::size_t a = 0; a < camb.sortables.size() && sub_ok; ++a)
      for (std::size_t b = a + 1; b < camb.sortables.size() && sub_ok; ++b) {
        int mv = tabs.tables.m(camb.sortables[a], camb.sortables[b]);
        int jv = tabs.tables.j(camb.sortables[a], camb.sortables[b]);
        sub_ok = is_sortable(sys, w.element(mv), cox) && is_sortable(sys, w.element(jv), cox);
      }
    os << (sub_ok ? "PASS" : "FAIL") << " sortables-form-sublattice\n";
    if (!bottoms_ok || !rec_ok || !sub_ok) rc = kExitVerification;
  }
  std::string fmt = effective_format(c);
  if (fmt != "text" && verify) std::cout << os.str();
  if (fmt == "dot") {
    emit(c, lattice_dot(camb.lattice, nullptr, "cambrian_lattice"));
  } else if (fmt == "json") {
    nlohmann::json j;
    j["coxeter_element"] = sys.word_str(cox.word);
    j["classes"] = theta.num_classes();
    std::vector<std::string> names;
    for (int v : camb.sortables) names.push_back(w.lattice().labels[v]);
    j["sortables"] = names;
    j["covers"] = camb.lattice.covers;
    emit(c, j.dump(2));
  } else {
    emit(c, os.str());
  }
  return rc;
}

int cmd_sortable(const Common& c) {
  CoxeterSystem sys = build_system(c);
  WeakOrder w = WeakOrder::build(sys, caps_from_env());
  CoxeterElement cox = pick_coxeter_element(sys, c);
  if (effective_format(c) == "dot") {
    emit(c, search_tree_dot(w, sortable_search_tree(w, cox)));
  } else {
    emit(c, sortable_records_json(w, cox));
  }
  return 0;
}

int cmd_fan(const Common& c, bool cambrian_requested) {
  CoxeterSystem sys = build_system(c);
  WeakOrder w = WeakOrder::build(sys, caps_from_env());
  Fan coxfan = coxeter_fan(w);
  Fan out_fan;
  if (cambrian_requested) {
    CoxeterElement cox = pick_coxeter_element(sys, c);
    Congruence theta = cambrian_congruence(w, cox);
    CambrianLattice camb = cambrian_lattice(w, cox);
    Fan cvecfan = cambrian_fan_by_cvectors(w, cox, camb.sortables);
    FanCheckReport rep = check_fans(w, coxfan, theta, cvecfan, c.samples, c.seed);
    if (!rep.ok()) throw MismatchWithClassFan(rep.witness);
    out_fan = std::move(cvecfan);
  } else {
    std::string witness;
    if (!region_adjacency_matches_weak_order(w, coxfan, &witness)) throw Error(witness);
    out_fan = std::move(coxfan);
  }
  std::string fmt = effective_format(c);
  if (fmt == "svg") {
    emit(c, render_stereographic_svg(out_fan, sys.weight_sum()));
  } else if (fmt == "json" || fmt == "text") {
    emit(c, fan_json(out_fan));
  } else {
    throw BadInput("fan supports --export svg|json");
  }
  return 0;
}

int cmd_tamari(const Common& c, int n, const std::string& barring_text, const std::string& perm_text) {
  typea::Barring barring =
      barring_text.empty() ? typea::Barring::all_down(n) : typea::Barring::parse(barring_text);
  typea::PolygonQ q = typea::build_polygon(n, barring);
  std::string fmt = effective_format(c);
  if (fmt == "svg") {
    typea::Perm x(n + 1);
    for (int i = 0; i < n + 1; ++i) x[i] = i + 1;
    if (!perm_text.empty()) {
      if (static_cast<int>(perm_text.size()) != n + 1) throw BadInput("--perm needs n+1 digits");
      for (int i = 0; i < n + 1; ++i) x[i] = perm_text[i] - '0';
    }
    emit(c, typea::triangulation_svg(q, typea::eta(x, q)));
    return 0;
  }
  typea::FlipLattice fl = typea::tamari_like_lattice(q);
  if (fmt == "dot") {
    emit(c, lattice_dot(fl.lattice, nullptr, "tamari_like"));
  } else if (fmt == "json") {
    nlohmann::json j;
    j["n"] = n;
    j["barring"] = barring.str();
    j["size"] = fl.lattice.n;
    nlohmann::json tris = nlohmann::json::array();
    for (auto& t : fl.tris) tris.push_back(t.diagonals);
    j["triangulations"] = tris;
    j["covers"] = fl.lattice.covers;
    emit(c, j.dump(2));
  } else {
    std::ostringstream os;
    os << "n " << n << "\nbarring " << barring.str() << "\ntriangulations " << fl.lattice.n
       << "\ncovers " << fl.lattice.num_edges() << "\n";
    emit(c, os.str());
  }
  return 0;
}

int cmd_verify(const Common& c, bool all, int max_rank) {
  VerifyOptions opt;
  opt.all = all;
  opt.max_rank = max_rank;
  opt.seed = c.seed;
  opt.samples = c.samples;
  VerifyResult res = run_verify(opt);
  emit(c, res.report);
  return res.ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter groups, Cambrian lattices, sortable elements and Cambrian fans"};
  app.require_subcommand(1);

  Common copt;
  bool flag_verify = false, flag_all = false;
  int tamari_n = 3, max_rank = 3;
  std::string barring_text, perm_text;

  auto* group = app.add_subcommand("group", "build a group and report order/roots");
  add_common(group, copt, true, false);

  auto* congruence = app.add_subcommand("congruence", "Cambrian congruence of an orientation");
  add_common(congruence, copt);

  auto* camb = app.add_subcommand("cambrian", "Cambrian lattice and sortables");
  add_common(camb, copt);
  camb->add_flag("--verify", flag_verify, "run theorem checks for this Coxeter element");

  auto* sortable = app.add_subcommand("sortable", "sortable-element records or search tree");
  add_common(sortable, copt);

  auto* fan = app.add_subcommand("fan", "Coxeter or Cambrian fan exports");
  add_common(fan, copt);

  auto* tamari = app.add_subcommand("tamari", "type-A triangulation lattices");
  tamari->add_option("--n", tamari_n, "polygon parameter n (Q has n+3 vertices)")->required();
  tamari->add_option("--barring", barring_text, "string over {u,d} of length n+1");
  tamari->add_option("--perm", perm_text, "one-line permutation for svg export");
  add_common(tamari, copt, false, false);

  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_flag("--all", flag_all, "include rank-4 groups and larger type-A sweeps");
  verify->add_option("--max-rank", max_rank, "largest rank to test");
  add_common(verify, copt, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (group->parsed()) return cmd_group(copt);
    if (congruence->parsed()) return cmd_congruence(copt);
    if (camb->parsed()) return cmd_cambrian(copt, flag_verify);
    if (sortable->parsed()) return cmd_sortable(copt);
    if (fan->parsed()) return cmd_fan(copt, !copt.cword.empty() || !copt.orientation.empty());
    if (tamari->parsed()) return cmd_tamari(copt, tamari_n, barring_text, perm_text);
    if (verify->parsed()) return cmd_verify(copt, flag_all, max_rank);
  } catch (const NotALattice& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const NotACongruence& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const NotPolygonal& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const NonConvexUnion& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const MismatchWithClassFan& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}

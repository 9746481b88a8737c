// congwb: build family instances, enumerate congruence lattices, and check
// the predicted classifications against brute force.
//
// exit codes: 0 ok, 1 verification mismatch, 2 validation error, 3 size guard

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "congwb/predict.hpp"
#include "lattice_io.hpp"

using namespace congwb;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string family = "T";
  std::vector<int> objects;
  int field = 2;
  int rank = -1;  // -1: whole instance
  std::string out, dot;
  bool force = false;
  bool timing = false;
  unsigned threads = 1;
  // named / principal
  std::string name;
  int ideal = -1;
  std::string subgroup;
  std::vector<std::string> tuple;
  std::vector<std::string> pairs;

  FamilySpec spec() const {
    FamilySpec sp;
    sp.family = parse_family(family);
    sp.objects = objects;
    sp.field_p = field;
    sp.validate();
    return sp;
  }
  EnumOptions enum_options() const {
    EnumOptions o;
    o.force = force;
    o.threads = threads;
    return o;
  }
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// keys mirror the flag names; flags given on the command line win
void apply_config_file(RunConfig& cfg, const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
  if (j.contains("family") && unset("--family")) cfg.family = j["family"].get<std::string>();
  if (j.contains("objects") && unset("--objects")) cfg.objects = j["objects"].get<std::vector<int>>();
  if (j.contains("field") && unset("--field")) cfg.field = j["field"].get<int>();
  if (j.contains("rank") && unset("--rank")) cfg.rank = j["rank"].get<int>();
  if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("dot") && unset("--dot")) cfg.dot = j["dot"].get<std::string>();
  if (j.contains("force") && unset("--force")) cfg.force = j["force"].get<bool>();
  if (j.contains("threads") && unset("--threads")) cfg.threads = j["threads"].get<unsigned>();
  if (j.contains("ideal") && unset("--ideal")) cfg.ideal = j["ideal"].get<int>();
  if (j.contains("subgroup") && unset("--subgroup")) cfg.subgroup = j["subgroup"].get<std::string>();
  if (j.contains("tuple") && unset("--tuple")) cfg.tuple = j["tuple"].get<std::vector<std::string>>();
  if (j.contains("name") && cfg.name.empty()) cfg.name = j["name"].get<std::string>();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream o(path);
  if (!o) throw ValidationError("cannot write " + path);
  o << text;
}

std::unique_ptr<IdealContext> context(const RunConfig& cfg) {
  return IdealContext::make(cfg.spec(), cfg.rank, cfg.force);
}

// ---- build / green

int cmd_build(const RunConfig& cfg) {
  FamilySpec sp = cfg.spec();
  PartialSemigroup S = build_instance(sp, cfg.force);
  GreenData G = green_relations(S);
  std::cout << S.n << " elements";
  std::string stable = is_stable(S, G) ? "yes" : "no", regular = is_regular(S) ? "yes" : "no";
  if (G.j_is_chain) {
    IdealChain C = ideal_chain(S, G);
    std::cout << ", D-classes: ";
    for (size_t i = 0; i < C.d_sorted.size(); ++i)
      std::cout << (i ? " < " : "") << "D" << C.rank_of_class[i] << "(" << G.d_members[C.d_sorted[i]].size() << ")";
  } else {
    std::cout << ", " << G.n_d << " D-classes, not a chain";
  }
  std::cout << "\nhom-sets:";
  for (int a = 0; a < S.n_objects; ++a)
    for (int b = 0; b < S.n_objects; ++b)
      std::cout << " " << sp.objects[a] << "->" << sp.objects[b] << ":" << S.homset(a, b).size();
  std::cout << "\nstable: " << stable << ", regular: " << regular << "\n";
  return 0;
}

int cmd_green(const RunConfig& cfg) {
  auto X = context(cfg);
  std::cout << X->S.n << " elements, " << X->G.n_d << " D-classes, D = J: " << (X->G.d_equals_j ? "yes" : "no")
            << "\n";
  for (int q : X->ranks()) {
    int d = X->d_class(q);
    const auto& D = X->G.d_members[d];
    std::set<int> rs, ls;
    for (Idx x : D) {
      rs.insert(X->G.r_class[x]);
      ls.insert(X->G.l_class[x]);
    }
    size_t h = X->G.h_members[X->G.h_class[D.front()]].size();
    const auto& grp = X->embedding(q).group;
    std::cout << "D" << q << ": " << D.size() << " elements, " << rs.size() << " R-classes x " << ls.size()
              << " L-classes, |H| = " << h << ", group " << structure_probe(grp) << " of order " << grp.order()
              << ", normal subgroups:";
    for (auto& N : X->normals(q)) std::cout << " " << N.name;
    std::cout << ", stable: " << (d_class_stable(*X, d) ? "yes" : "no")
              << ", regular: " << (d_class_regular(*X, d) ? "yes" : "no") << "\n";
  }
  return 0;
}

// ---- lattices and single congruences

int cmd_cong_lattice(const RunConfig& cfg) {
  auto X = context(cfg);
  CongruenceLattice L = all_congruences(X->S, cfg.enum_options());
  label_lattice(*X, L);
  emit(cfg.out, io::lattice_json(*X, L).dump(1) + "\n");
  if (!cfg.dot.empty()) emit(cfg.dot, io::lattice_dot(L));
  if (!cfg.out.empty() && cfg.out != "-")
    std::cout << L.size() << " congruences, " << L.covers.size() << " covers\n";
  return 0;
}

std::pair<Idx, Idx> parse_pair(const std::string& s, size_t n) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("pair '" + s + "' must be x,y");
  try {
    size_t x = std::stoul(s.substr(0, comma)), y = std::stoul(s.substr(comma + 1));
    if (x >= n || y >= n) throw ValidationError("pair '" + s + "' out of range");
    return {static_cast<Idx>(x), static_cast<Idx>(y)};
  } catch (const std::logic_error&) {
    throw ValidationError("pair '" + s + "' must be two element indices");
  }
}

int cmd_principal(const RunConfig& cfg) {
  auto X = context(cfg);
  std::vector<std::pair<Idx, Idx>> pairs;
  for (auto& p : cfg.pairs) pairs.push_back(parse_pair(p, X->S.n));
  Congruence c = principal_congruence(X->S, pairs);
  std::string label = "cg";
  for (auto [x, y] : pairs) label += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  emit(cfg.out, io::congruence_json(*X, label, c).dump(1) + "\n");
  return 0;
}

std::vector<int> members_or_trivial(IdealContext& X, int q, const std::string& name) {
  if (name.empty() || name == "1") return {0};
  return X.normal_by_name(q, name).members;
}

int cmd_named(const RunConfig& cfg) {
  auto X = context(cfg);
  const std::string& nm = cfg.name;
  int q = cfg.ideal;
  auto need_ideal = [&]() {
    auto ranks = X->ranks();
    if (std::find(ranks.begin(), ranks.end(), q) == ranks.end())
      throw ValidationError("--ideal must be one of the ideal ranks of this instance");
  };
  std::string suffix = cfg.subgroup.empty() || cfg.subgroup == "1" ? "" : "_" + cfg.subgroup;
  std::string label;
  Congruence c;
  if (nm == "rees") {
    need_ideal();
    c = rees(X->S, X->ideal(q));
    label = "R_I" + std::to_string(q);
  } else if (nm == "nu") {
    need_ideal();
    c = nu(X->S, X->G, X->embedding(q).group, members_or_trivial(*X, q, cfg.subgroup));
    label = "nu_D" + std::to_string(q) + (suffix.empty() ? "_1" : suffix);
  } else if (nm == "rin" || nm == "lam" || nm == "rho" || nm == "mu" || nm == "eta") {
    need_ideal();
    int above = X->next_rank(q);
    if (above < 0) throw ValidationError("no D-class above the ideal");
    auto N = members_or_trivial(*X, above, cfg.subgroup);
    if (nm == "rin") {
      c = r_in(*X, q, N);
      label = "R_I" + std::to_string(q) + suffix;
    } else {
      MRel m = nm == "lam" ? MRel::L : nm == "rho" ? MRel::R : nm == "mu" ? MRel::H : MRel::Delta;
      c = theta_named(*X, q, m, N);
      label = nm + "_I" + std::to_string(q) + suffix;
    }
  } else if (nm == "theta-tuple") {
    auto ranks = X->ranks();
    if (cfg.tuple.size() != ranks.size())
      throw ValidationError("--tuple needs one subgroup name per rank (" + std::to_string(ranks.size()) + ")");
    std::vector<std::vector<int>> t;
    label = "Theta(";
    for (size_t i = 0; i < ranks.size(); ++i) {
      t.push_back(members_or_trivial(*X, ranks[i], cfg.tuple[i]));
      label += (i ? "," : "") + cfg.tuple[i];
    }
    label += ")";
    c = theta_tuple(*X, t);
  } else if (nm == "zeta") {
    c = X->zeta();
    label = "zeta";
  } else {
    throw ValidationError("unknown construction '" + nm + "'");
  }
  emit(cfg.out, io::congruence_json(*X, label, c).dump(1) + "\n");
  return 0;
}

int cmd_check_properties(const RunConfig& cfg) {
  auto X = context(cfg);
  PropertyReport rep = check_properties(*X);
  auto row = [](const char* name, const PropertyResult& p) {
    std::cout << name << ": " << (p.holds ? "holds" : "fails");
    if (!p.witness.empty()) std::cout << " (" << p.witness << ")";
    std::cout << "\n";
  };
  std::cout << "I_" << X->r << " of " << family_name(X->spec.family) << ", " << X->S.n << " elements\n";
  row("Dmax", rep.dmax);
  row("Dmax below", rep.dmax_below);
  row("ngen", rep.ngen);
  row("S1", rep.s1);
  row("S2", rep.s2);
  row("S3", rep.s3);
  row("S3z", rep.s3z);
  row("M1", rep.m1);
  row("M2", rep.m2);
  row("M3", rep.m3);
  row("M3z", rep.m3z);
  row("Sep", rep.sep);
  row("Mult", rep.mult);
  row("Sepb", rep.sepb);
  row("Multb", rep.multb);
  row("Sepz", rep.sepz);
  row("Multz", rep.multz);
  std::cout << "consistent: " << (rep.consistent() ? "yes" : "no") << "\n";
  return rep.consistent() ? 0 : 1;
}

// ---- verification

bool print_report(const VerifyReport& rep, bool timing) {
  std::cout << rep.line(timing) << "\n";
  for (auto& m : rep.missing) std::cout << "  predicted but absent: " << m << "\n";
  for (auto& e : rep.extra) std::cout << "  present but not predicted: " << e << "\n";
  return rep.equal;
}

// Brauer-type categories with both parities split into their even and odd
// parts, whose congruence lattices multiply.
int verify_split(const RunConfig& cfg, const FamilySpec& sp) {
  bool ok = true;
  size_t product = 1;
  for (int parity : {0, 1}) {
    FamilySpec part = sp;
    part.objects.clear();
    for (int k : sp.objects)
      if (k % 2 == parity) part.objects.push_back(k);
    int r = cfg.rank >= 0 && cfg.rank % 2 == parity ? cfg.rank : *std::max_element(part.objects.begin(), part.objects.end());
    auto rep = verify_theorem(part, r, cfg.enum_options());
    ok = print_report(rep, cfg.timing) && ok;
    product *= rep.oracle;
  }
  std::cout << "disjoint union: " << product << " congruences\n";
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  FamilySpec sp;
  sp.family = parse_family(cfg.family);
  sp.objects = cfg.objects;
  sp.field_p = cfg.field;
  if (is_brauer_family(sp.family)) {
    bool ev = false, od = false;
    for (int k : sp.objects) (k % 2 ? od : ev) = true;
    if (ev && od) return verify_split(cfg, sp);
  }
  sp.validate();
  int r = cfg.rank;
  if (r < 0) r = IdealContext::make(sp, -1, cfg.force)->top_rank();
  return print_report(verify_theorem(sp, r, cfg.enum_options()), cfg.timing) ? 0 : 1;
}

struct Cell {
  Family f;
  std::vector<int> objs;
  int p;
  std::vector<int> ranks;
};

std::vector<Cell> verify_matrix() {
  return {{Family::T, {4}, 2, {1, 2, 3, 4}},      {Family::OP_T, {4}, 2, {4}},
          {Family::OPR_T, {4}, 2, {4}},           {Family::OriP_T, {4}, 2, {4}},
          {Family::OriPR_T, {4}, 2, {4}},         {Family::P, {3}, 2, {0, 1, 2, 3}},
          {Family::B, {3}, 2, {1, 3}},            {Family::B, {4}, 2, {0, 2, 4}},
          {Family::TL, {4}, 2, {4}},              {Family::TL, {5}, 2, {5}},
          {Family::TL, {6}, 2, {6}},              {Family::TLpm, {4}, 2, {4}},
          {Family::J, {4}, 2, {4}},               {Family::Jpm, {4}, 2, {4}},
          {Family::J, {5}, 2, {5}},               {Family::Jpm, {5}, 2, {5}},
          {Family::L, {2}, 2, {0, 1, 2}},         {Family::L, {2}, 3, {0, 1, 2}},
          {Family::PL, {2}, 3, {2}}};
}

int cmd_verify_all(const RunConfig& cfg) {
  int total = 0, equal = 0;
  for (auto& cell : verify_matrix()) {
    FamilySpec sp;
    sp.family = cell.f;
    sp.objects = cell.objs;
    sp.field_p = cell.p;
    for (int r : cell.ranks) {
      ++total;
      equal += print_report(verify_theorem(sp, r, cfg.enum_options()), cfg.timing);
    }
  }
  std::cout << equal << "/" << total << " cells EQUAL\n";
  return equal == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congruence lattices of diagram, transformation and matrix categories"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  auto family_opts = [&](CLI::App* s, bool with_rank) {
    s->add_option("--family", cfg.family, "T, OP-T, OPR-T, OriP-T, OriPR-T, P, PB, Motzkin, OP-P, OPR-P, OriP-P, OriPR-P, "
                                          "B, TL, TLpm, J, Jpm, L, PL");
    s->add_option("--objects", cfg.objects, "object sizes (comma separated)")->delimiter(',');
    s->add_option("--field", cfg.field, "prime field for L and PL");
    if (with_rank) s->add_option("--rank", cfg.rank, "work in the ideal I_r (default: whole instance)");
    s->add_flag("--force", cfg.force, "ignore the size guards");
    s->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    s->add_option("--config", config_path, "JSON file with the same keys as the flags");
  };

  auto* build = app.add_subcommand("build", "materialize an instance and summarize it");
  family_opts(build, false);
  auto* green = app.add_subcommand("green", "Green's relations, D-classes and group H-classes");
  family_opts(green, true);
  auto* lat = app.add_subcommand("cong-lattice", "all congruences as JSON, Hasse diagram as DOT");
  family_opts(lat, true);
  lat->add_option("--out", cfg.out, "JSON output path (default stdout)");
  lat->add_option("--dot", cfg.dot, "DOT output path");
  auto* principal = app.add_subcommand("principal", "congruence generated by pairs of element indices");
  family_opts(principal, true);
  principal->add_option("--pair", cfg.pairs, "x,y (repeatable)")->required();
  principal->add_option("--out", cfg.out, "JSON output path (default stdout)");
  auto* named = app.add_subcommand("named", "one named congruence");
  family_opts(named, true);
  named->add_option("name", cfg.name, "rees, nu, rin, lam, rho, mu, eta, theta-tuple, zeta");
  named->add_option("--ideal", cfg.ideal, "rank q of the ideal I_q (nu: of the D-class)");
  named->add_option("--subgroup", cfg.subgroup, "normal subgroup name");
  named->add_option("--tuple", cfg.tuple, "one subgroup name per rank, ascending")->delimiter(',');
  named->add_option("--out", cfg.out, "JSON output path (default stdout)");
  auto* props = app.add_subcommand("check-properties", "separation and multiplication properties of I_r");
  family_opts(props, true);
  auto* verify = app.add_subcommand("verify", "compare the predicted congruences with brute force");
  family_opts(verify, true);
  verify->add_flag("--timing", cfg.timing, "append wall-clock times");
  auto* verify_all = app.add_subcommand("verify-all", "verify the built-in matrix of instances");
  verify_all->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
  verify_all->add_flag("--timing", cfg.timing, "append wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!config_path.empty()) apply_config_file(cfg, config_path, *sub);
    if (cfg.command != "verify-all" && cfg.objects.empty()) throw ValidationError("--objects is required");
    if (cfg.command == "build") return cmd_build(cfg);
    if (cfg.command == "green") return cmd_green(cfg);
    if (cfg.command == "cong-lattice") return cmd_cong_lattice(cfg);
    if (cfg.command == "principal") return cmd_principal(cfg);
    if (cfg.command == "named") {
      if (cfg.name.empty()) throw ValidationError("named: a construction name is required");
      return cmd_named(cfg);
    }
    if (cfg.command == "check-properties") return cmd_check_properties(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    return cmd_verify_all(cfg);
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << " (use --force)\n";
    return 3;
  } catch (const LatticeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

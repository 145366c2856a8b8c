#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fusionlab/catalog.hpp"
#include "fusionlab/cli.hpp"
#include "fusionlab/groupfile.hpp"
#include "fusionlab/hfree.hpp"
#include "fusionlab/pgroup.hpp"
#include "fusionlab/stellmacher.hpp"
#include "fusionlab/subsystems.hpp"
#include "fusionlab/theorems.hpp"

using namespace fusionlab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kContradiction = 2, kCap = 3 };

// A p-group file is its own carrier; otherwise the first Sylow subgroup.
Subgroup carrier_of(const GroupPtr& G, unsigned p) {
  if (is_p_group(G->order(), p)) return whole_group(G);
  return sylow(G, p);
}

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string indices(const Subgroup& H) {
  std::string out;
  for (auto x : H.elements()) out += (out.empty() ? "" : " ") + std::to_string(x);
  return "[" + out + "]";
}

void print_profiles(const FusionSystem& F, bool all) {
  std::cout << "order\tclass\tfull_norm\tfull_cent\tcentric\tradical\tessential\t|Aut_F|\t|Out_F|\tsubgroup\n";
  for (const auto& pr : classify_all(F)) {
    if (!all && !pr.centric) continue;
    std::cout << pr.Q.order() << '\t' << pr.class_size << '\t' << yn(pr.fully_normalized) << '\t'
              << yn(pr.fully_centralized) << '\t' << yn(pr.centric) << '\t' << yn(pr.radical) << '\t'
              << yn(pr.essential) << '\t' << pr.aut_order << '\t' << pr.out_order << '\t' << describe_subgroup(pr.Q)
              << '\n';
  }
}

void print_report(const TheoremReport& r, std::ostream& out) {
  out << to_string(r.id) << " on " << r.instance << "\n";
  for (const auto& h : r.hypotheses) out << "  hypothesis " << h.name << ": " << yn(h.holds) << "  " << h.detail << "\n";
  for (const auto& c : r.conclusions) out << "  conclusion " << c.name << ": " << yn(c.holds) << "  " << c.detail << "\n";
  for (const auto& d : r.diagnostics) out << "  note: " << d << "\n";
  if (r.W) out << "  W = " << describe_subgroup(*r.W) << "\n";
  out << "  hypotheses " << yn(r.hypotheses_hold) << ", conclusion " << yn(r.conclusion_holds) << "\n";
}

CandidateFamily family_from(const Subgroup& S, unsigned p, const std::vector<std::string>& files, bool catalog) {
  std::vector<GroupPtr> extra;
  for (const auto& f : files) extra.push_back(load_group(f));
  return canonical_family(S, p, extra, catalog);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion systems of finite groups"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  auto config = default_config();
  std::string format = "text";
  app.add_option("--order-cap", config.order_cap, "cap for lattice-dependent operations");
  app.add_option("--aut-cap", config.aut_cap, "cap on |S| for automorphism enumeration");
  app.add_option("--cache-dir", config.cache_dir, "result cache directory (FUSIONLAB_CACHE)");
  app.add_option("--format", format, "text or tsv")->check(CLI::IsMember({"text", "tsv"}));

  std::string group_arg;
  unsigned p = 2;

  auto* analyze = app.add_subcommand("analyze", "basic invariants of a group");
  analyze->add_option("group", group_arg, "group file or cat:NAME")->required();

  auto* jt = app.add_subcommand("jthompson", "J(S), Ω(Z(S)) and Ω(Z(J(S))) of a Sylow subgroup");
  jt->add_option("group", group_arg)->required();
  jt->add_option("p", p)->required();

  bool profile_all = false, essentials = false;
  std::vector<std::string> dump;
  auto* fusion = app.add_subcommand("fusion", "the fusion system F_S(G)");
  fusion->add_option("group", group_arg)->required();
  fusion->add_option("p", p)->required();
  fusion->add_flag("--profile-all", profile_all, "classify every subgroup, not only centric ones");
  fusion->add_flag("--essentials", essentials, "list essential subgroups");
  fusion->add_option("--dump-homs", dump, "print Hom_F(P, R) as index lists")->expected(2);

  std::string kind_arg, q_spec;
  auto* sub = app.add_subcommand("subsystem", "normalizer, centralizer, product and quotient systems");
  sub->add_option("group", group_arg)->required();
  sub->add_option("p", p)->required();
  sub->add_option("--kind", kind_arg)->required()->check(
      CLI::IsMember({"normalizer", "centralizer", "mixed", "product", "quotient"}));
  sub->add_option("--q", q_spec, "comma-separated generator words")->required();

  std::string h_arg;
  auto* hf = app.add_subcommand("hfree", "H-freeness of F_S(G)");
  hf->add_option("group", group_arg)->required();
  hf->add_option("p", p)->required();
  hf->add_option("--h", h_arg, "sigma4, qd3 or a group file")->required();

  std::vector<std::string> family_files;
  bool use_catalog = false;
  auto* wc = app.add_subcommand("wcompute", "W(S) over a family of fusion systems");
  wc->add_option("group", group_arg, "a p-group, or a group whose Sylow subgroup is used")->required();
  wc->add_option("p", p)->required();
  wc->add_option("--family", family_files, "groups whose Sylow subgroup is isomorphic to S");
  wc->add_flag("--catalog", use_catalog, "add every matching catalog group");

  std::string theorem_arg, witness_path = "fusionlab-witness.txt";
  auto* verify = app.add_subcommand("verify", "check one theorem on one instance");
  verify->add_option("--theorem", theorem_arg)->required()->check(
      CLI::IsMember({"1", "2", "3", "frobenius", "thompson"}));
  verify->add_option("--group", group_arg)->required();
  verify->add_option("--p", p)->required();
  verify->add_option("--family", family_files, "extra family groups (the catalog is always used)");
  verify->add_option("--witness", witness_path, "where to write the witness dump on a contradiction");

  std::vector<std::string> suite_files;
  std::string report_dir;
  bool no_catalog = false;
  auto* suite = app.add_subcommand("suite", "the invariant and theorem sweep");
  suite->add_option("--files", suite_files, "group files to sweep");
  suite->add_flag("--no-catalog", no_catalog, "sweep only the given files");
  suite->add_option("--report-dir", report_dir, "where per-instance reports are written");

  bool validate = false;
  auto* cat = app.add_subcommand("catalog", "list the built-in groups");
  cat->add_flag("--validate", validate, "construct every entry and check its order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  config.output_format = format == "tsv" ? OutputFormat::Tsv : OutputFormat::Text;
  const char* sep = config.output_format == OutputFormat::Tsv ? "\t" : ": ";
  auto kv = [&](const std::string& k, const auto& v) { std::cout << k << sep << v << "\n"; };

  try {
    apply_limits(config);

    if (*analyze) {
      auto G = load_group(group_arg);
      const auto Gw = whole_group(G);
      kv("name", G->name());
      kv("order", G->order());
      kv("abelian", yn(is_abelian(Gw)));
      kv("center", describe_subgroup(center(Gw)));
      kv("derived subgroup", describe_subgroup(derived_subgroup(Gw)));
      kv("subgroups", subgroup_lattice(G).size());
      for (unsigned q = 2; q <= G->order(); ++q) {
        if (!is_prime(q) || G->order() % q) continue;
        const auto qs = std::to_string(q);
        kv("sylow " + qs, describe_subgroup(sylow(G, q)));
        kv("O_" + qs, describe_subgroup(o_p(Gw, q)));
        kv("O_" + qs + "'", describe_subgroup(o_p_prime(Gw, q)));
      }
      return kOk;
    }

    if (*jt) {
      auto G = load_group(group_arg);
      const auto td = thompson_data(carrier_of(G, p), p);
      kv("S", describe_subgroup(td.S));
      kv("max abelian order", td.max_abelian_order);
      kv("max abelian subgroups", td.max_abelian_subgroups.size());
      for (const auto& A : td.max_abelian_subgroups) kv("  abelian", describe_subgroup(A));
      kv("J", describe_subgroup(td.J));
      kv("A = Omega(Z(S))", describe_subgroup(td.A));
      kv("B = Omega(Z(J))", describe_subgroup(td.B));
      return kOk;
    }

    if (*fusion) {
      auto G = load_group(group_arg);
      const auto F = FusionSystem::realize(G, p);
      kv("system", F.name());
      kv("S", describe_subgroup(F.S()));
      kv("subgroups of S", F.subgroups().size());
      kv("morphisms", F.morphism_count());
      const auto ax = verify_axioms(F);
      kv("axioms", ax.ok ? std::string("ok") : ax.failed + ": " + ax.detail);
      print_profiles(F, profile_all);
      if (essentials) {
        const auto e = essential_subgroups(F);
        kv("essential", e.all.size());
        for (const auto& E : e.all) kv("  essential", describe_subgroup(E));
      }
      if (!dump.empty()) {
        const auto P = parse_subgroup_spec(G, dump[0]);
        const auto R = parse_subgroup_spec(G, dump[1]);
        std::cout << "domain " << indices(P) << "\n";
        for (const auto& phi : F.hom_set(P, R)) {
          std::string images;
          for (auto x : P.elements()) images += (images.empty() ? "" : " ") + std::to_string(phi(x));
          std::cout << "[" << images << "]\n";
        }
      }
      return kOk;
    }

    if (*sub) {
      auto G = load_group(group_arg);
      const auto F = FusionSystem::realize(G, p);
      const auto Q = parse_subgroup_spec(G, q_spec);
      const auto kind = *parse_subsystem_kind(kind_arg);
      if (kind == SubsystemKind::Quotient) {
        const auto qs = quotient_system(F, Q);
        kv("system", "F/Q");
        kv("carrier order", qs.system.S().order());
        kv("morphisms", qs.system.morphism_count());
        kv("axioms", verify_axioms(qs.system).ok ? "ok" : "fail");
        print_profiles(qs.system, true);
        return kOk;
      }
      const auto N = kind == SubsystemKind::Normalizer ? normalizer_system(F, Q) : centralizer_like_system(F, Q, kind);
      kv("system", N.name());
      kv("carrier", describe_subgroup(N.S()));
      kv("morphisms", N.morphism_count());
      kv("saturation", to_string(N.saturation()));
      const auto ax = verify_axioms(N);
      kv("axioms", ax.ok ? std::string("ok") : ax.failed + ": " + ax.detail);
      return kOk;
    }

    if (*hf) {
      auto G = load_group(group_arg);
      GroupPtr H;
      if (h_arg == "sigma4") H = catalog_group("S4");
      else if (h_arg == "qd3") H = qd_group(3);
      else H = load_group(h_arg);
      const auto F = FusionSystem::realize(G, p);
      const auto r = is_fusion_H_free(F, H);
      kv("H", H->name());
      kv("free", yn(r.free));
      kv("examined", r.examined.size());
      for (const auto& Q : r.examined) kv("  model at", describe_subgroup(Q));
      if (!r.free) {
        kv("witness Q", describe_subgroup(*r.Q));
        kv("model order", r.model->order());
        kv("section", std::to_string(r.section->B.order()) + "/" + std::to_string(r.section->A.order()));
      }
      return kOk;
    }

    if (*wc) {
      auto G = load_group(group_arg);
      const auto S = carrier_of(G, p);
      const auto fam = family_from(S, p, family_files, use_catalog);
      for (const auto& m : fam.members)
        kv("member " + m.label, m.flags.admitted() ? std::string("admitted") : "rejected: " + m.rejection);
      const auto c = compute_W_iterative(fam);
      kv("A = Omega(Z(S))", describe_subgroup(c.A));
      kv("B = Omega(Z(J(S)))", describe_subgroup(c.B));
      for (std::size_t i = 0; i < c.chain.size(); ++i) kv("W_" + std::to_string(i), describe_subgroup(c.chain[i]));
      for (const auto& st : c.steps)
        kv("step", fam.members[st.member].label + ": " + std::to_string(st.images.size()) + " images, order " +
                       std::to_string(st.before.order()) + " -> " + std::to_string(st.after.order()));
      kv("W", describe_subgroup(c.W_iter));
      kv("W one-shot", describe_subgroup(c.W_oneshot));
      kv("equal", yn(c.equal));
      const auto fr = functor_checks(S, fam);
      kv("characteristic", yn(fr.characteristic_iter && fr.characteristic_oneshot));
      kv("nontrivial", yn(fr.nontrivial));
      kv("permutation independent", yn(fr.permutation_independent));
      kv("realization independent", yn(fr.realization_independent));
      kv("Aut(S)-closed family stable", yn(fr.aut_closure_stable));
      kv("|Aut(S)|", fr.aut_order);
      return fr.ok() ? kOk : kContradiction;
    }

    if (*verify) {
      auto G = load_group(group_arg);
      const auto id = *parse_theorem_id(theorem_arg);
      std::optional<CandidateFamily> fam;
      const auto S = sylow(G, p);
      if (!family_files.empty()) fam = family_from(S, p, family_files, true);
      TheoremReport r;
      try {
        switch (id) {
          case TheoremId::T1: r = verify_theorem_1(FusionSystem::realize(G, p, S), fam); break;
          case TheoremId::T2: r = verify_theorem_2(FusionSystem::realize(G, p, S), fam); break;
          case TheoremId::T3: r = verify_theorem_3(FusionSystem::realize(G, p, S), fam); break;
          case TheoremId::Frobenius: r = frobenius_check(G, p); break;
          case TheoremId::Thompson: r = thompson_group_check(G, p, fam); break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InternalInconsistency) throw;
        std::ofstream(witness_path) << e.what() << "\n";
        std::cerr << e.what() << "\nwitness written to " << witness_path << "\n";
        return kContradiction;
      }
      print_report(r, std::cout);
      if (r.contradiction()) {
        std::ofstream out(witness_path);
        print_report(r, out);
        std::cerr << "contradiction; witness written to " << witness_path << "\n";
        return kContradiction;
      }
      return kOk;
    }

    if (*suite) {
      if (!report_dir.empty()) config.report_dir = report_dir;
      const auto summary = run_suite(config, !no_catalog, suite_files);
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << summary.format(config.output_format);
      return summary.exit_code();
    }

    if (*cat) {
      if (validate) validate_catalog();
      for (const auto& e : catalog_entries()) {
        std::cout << e.name << sep << e.expected_order << sep << e.description;
        if (validate) std::cout << sep << "order " << catalog_group(e.name)->order();
        std::cout << "\n";
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::OrderCapExceeded: return kCap;
      case ErrorCode::InternalInconsistency: return kContradiction;
      default: return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

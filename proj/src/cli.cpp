#include "fusionlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fusionlab/catalog.hpp"
#include "fusionlab/groupfile.hpp"
#include "fusionlab/hfree.hpp"
#include "fusionlab/stellmacher.hpp"
#include "fusionlab/subsystems.hpp"
#include "fusionlab/theorems.hpp"

namespace fusionlab {

using json = nlohmann::json;

RunConfig default_config() {
  RunConfig c;
  if (const char* env = std::getenv("FUSIONLAB_CACHE"); env && *env) c.cache_dir = env;
  return c;
}

void apply_limits(const RunConfig& config) {
  if (config.order_cap == 0 || config.aut_cap == 0) throw Error(ErrorCode::ParseError, "caps must be positive");
  Limits l = limits();
  l.order = config.order_cap;
  l.automorphisms = config.aut_cap;
  set_limits(l);
}

GroupPtr load_group(std::string_view arg) {
  if (arg.substr(0, 4) == "cat:") return catalog_group(arg.substr(4));
  return parse_group_file(std::filesystem::path(arg));
}

std::string describe_subgroup(const Subgroup& H) {
  std::string out = "<";
  bool first = true;
  for (auto x : small_generating_set(H)) {
    if (!first) out += ", ";
    first = false;
    if (auto perm = H.group().permutation_of(x)) out += format_cycles(*perm);
    else out += "#" + std::to_string(x);
  }
  return out + "> order " + std::to_string(H.order());
}

std::string describe_morphism(const GroupMorphism& phi) {
  auto name = [&](Elem x) {
    if (auto perm = phi.domain().group().permutation_of(x)) return format_cycles(*perm);
    return "#" + std::to_string(x);
  };
  std::string out;
  for (auto x : small_generating_set(phi.domain())) {
    if (!out.empty()) out += ", ";
    out += name(x) + " -> " + name(phi(x));
  }
  return out.empty() ? "trivial map" : out;
}

// ---------------------------------------------------------------------------
// Cache

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Error corrupt(const std::filesystem::path& path, const std::string& what) {
  return Error(ErrorCode::CacheCorrupt, path.string() + ": " + what);
}

}  // namespace

std::filesystem::path ResultCache::file_for(const FiniteGroup& G, unsigned p) const {
  return dir_ / (hex(G.content_hash()) + "-p" + std::to_string(p) + ".json");
}

std::optional<FusionSystem> ResultCache::load(const GroupPtr& G, unsigned p) const {
  const auto path = file_for(*G, p);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw corrupt(path, e.what());
  }
  try {
    if (doc.at("format").get<int>() != 1 || doc.at("hash").get<std::string>() != hex(G->content_hash()) ||
        doc.at("order").get<std::size_t>() != G->order() || doc.at("p").get<unsigned>() != p)
      throw corrupt(path, "header does not match the group");

    std::vector<ElementSet> lattice;
    for (const auto& entry : doc.at("lattice")) {
      ElementSet bits(G->order());
      for (const auto& x : entry) {
        auto v = x.get<std::size_t>();
        if (v >= G->order()) throw corrupt(path, "element index out of range");
        bits.set(static_cast<Elem>(v));
      }
      Subgroup::checked(G, bits);
      lattice.push_back(std::move(bits));
    }
    std::sort(lattice.begin(), lattice.end(),
              [](const ElementSet& a, const ElementSet& b) { return canonical_less(a, b); });
    if (lattice.empty() || lattice.front().count() != 1 || lattice.back().count() != G->order() ||
        std::adjacent_find(lattice.begin(), lattice.end()) != lattice.end())
      throw corrupt(path, "lattice is incomplete");
    G->store_lattice(std::move(lattice));

    auto F = FusionSystem::realize(G, p);
    const auto& S = F.S();
    const auto& subs = F.subgroups();
    const auto& homs = doc.at("homs");
    if (homs.size() != subs.size()) throw corrupt(path, "hom table does not match the subgroups of S");
    std::vector<std::vector<GroupMorphism>> loaded(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto& P = subs[i];
      for (const auto& images : homs[i]) {
        if (images.size() != P.order()) throw corrupt(path, "map of the wrong length");
        std::vector<Elem> table(G->order(), kNoElem);
        std::size_t k = 0;
        for (auto x : P.elements()) {
          auto v = images[k++].get<std::size_t>();
          if (v >= G->order() || !S.contains(static_cast<Elem>(v))) throw corrupt(path, "image outside S");
          table[x] = static_cast<Elem>(v);
        }
        GroupMorphism phi(P, S, std::move(table));
        if (!phi.is_homomorphism() || !phi.is_injective()) throw corrupt(path, "stored map is not injective");
        loaded[i].push_back(std::move(phi));
      }
      const auto incl = GroupMorphism::inclusion(P, S);
      if (std::none_of(loaded[i].begin(), loaded[i].end(), [&](const GroupMorphism& m) { return m.same_map(incl); }))
        throw corrupt(path, "hom-set without the inclusion");
    }
    for (std::size_t i = 0; i < subs.size(); ++i) F.preload(subs[i], std::move(loaded[i]));
    return F;
  } catch (const json::exception& e) {
    throw corrupt(path, e.what());
  }
}

void ResultCache::store(const GroupPtr& G, const FusionSystem& F) const {
  json doc;
  doc["format"] = 1;
  doc["hash"] = hex(G->content_hash());
  doc["order"] = G->order();
  doc["p"] = F.p();
  doc["group"] = G->name();
  json lattice = json::array();
  for (const auto& H : subgroup_lattice(G)) lattice.push_back(H.elements());
  doc["lattice"] = std::move(lattice);
  json homs = json::array();
  for (const auto& P : F.subgroups()) {
    json list = json::array();
    for (const auto& phi : F.homs_to_S(P)) list.push_back(map_key(phi));
    homs.push_back(std::move(list));
  }
  doc["homs"] = std::move(homs);
  std::filesystem::create_directories(dir_);
  write_atomically(file_for(*G, F.p()), doc.dump() + "\n");
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InternalInconsistency, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::InternalInconsistency, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Instances

std::string InstanceReport::file_stem() const {
  std::string stem;
  for (char c : group) stem += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return stem + "_p" + std::to_string(p);
}

std::string InstanceReport::format(OutputFormat fmt) const {
  std::ostringstream out;
  const char* sep = fmt == OutputFormat::Tsv ? "\t" : ": ";
  if (fmt == OutputFormat::Text) out << "# " << group << " p=" << p << "\n";
  for (const auto& [k, v] : rows) out << k << sep << v << "\n";
  if (!skipped.empty()) out << "skipped" << sep << skipped << "\n";
  out << "status" << sep << (hard_failure ? "FAIL" : skipped.empty() ? "ok" : "skipped") << "\n";
  if (hard_failure) out << "failure" << sep << failure << "\n";
  return out.str();
}

namespace {

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string theorem_line(const TheoremReport& r) {
  return "hypotheses " + yn(r.hypotheses_hold) + ", conclusion " + yn(r.conclusion_holds) +
         (r.W ? ", W order " + std::to_string(r.W->order()) : std::string());
}

std::string dump(const TheoremReport& r) {
  std::ostringstream out;
  out << to_string(r.id) << " on " << r.instance << "\n";
  for (const auto& h : r.hypotheses) out << "  hypothesis " << h.name << ": " << yn(h.holds) << " " << h.detail << "\n";
  for (const auto& c : r.conclusions) out << "  conclusion " << c.name << ": " << yn(c.holds) << " " << c.detail << "\n";
  for (const auto& d : r.diagnostics) out << "  note: " << d << "\n";
  if (r.W) out << "  W = " << describe_subgroup(*r.W) << "\n";
  return out.str();
}

struct HardFailure {
  std::string what;
};

}  // namespace

InstanceReport run_instance(const GroupPtr& G, unsigned p, const ResultCache* cache,
                            std::vector<std::string>* warnings) {
  InstanceReport r;
  r.group = G->name();
  r.p = p;
  auto row = [&](std::string k, std::string v) { r.rows.emplace_back(std::move(k), std::move(v)); };
  auto fail = [&](std::string what) { throw HardFailure{std::move(what)}; };
  try {
    std::optional<FusionSystem> loaded;
    if (cache) {
      try {
        loaded = cache->load(G, p);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CacheCorrupt) throw;
        if (warnings) warnings->push_back(std::string("ignoring cache entry: ") + e.what());
      }
    }
    const FusionSystem F = loaded ? *loaded : FusionSystem::realize(G, p);
    const auto& S = F.S();
    row("order", std::to_string(G->order()));
    row("sylow", describe_subgroup(S));
    row("subgroups of S", std::to_string(F.subgroups().size()));

    const auto ax = verify_axioms(F);
    if (cache && !loaded) cache->store(G, F);
    row("morphisms", std::to_string(F.morphism_count()));
    row("axioms", ax.ok ? "ok" : ax.failed + ": " + ax.detail);
    if (!ax.ok) fail("axiom " + ax.failed + " fails: " + ax.detail);

    const auto profiles = classify_all(F);
    std::size_t centric = 0, radical = 0, cr = 0, prop = 0;
    std::vector<std::string> ess;
    for (const auto& pr : profiles) {
      centric += pr.centric;
      radical += pr.radical;
      cr += pr.centric && pr.radical;
      prop += pr.criterion_holds;
      if (pr.essential) ess.push_back(describe_subgroup(pr.Q) + (pr.fully_normalized ? "" : " (not fully normalized)"));
    }
    row("normalizer criterion", std::to_string(prop) + "/" + std::to_string(profiles.size()));
    if (prop != profiles.size()) fail("fully normalized criterion fails");
    row("centric", std::to_string(centric));
    row("radical", std::to_string(radical));
    row("centric radical", std::to_string(cr));
    std::string es;
    for (const auto& e : ess) es += (es.empty() ? "" : "; ") + e;
    row("essential", ess.empty() ? "none" : es);

    if (S.order() <= 16) {
      std::size_t maps = 0, longest = 0;
      for (const auto& P : F.subgroups())
        for (const auto& phi : F.homs_to_S(P)) {
          const auto d = alperin_decompose(F, phi);
          if (!d.recompose(S).same_map(phi)) fail("Alperin recomposition differs: " + describe_morphism(phi));
          longest = std::max(longest, d.steps());
          ++maps;
        }
      row("alperin round trip", std::to_string(maps) + " maps, longest " + std::to_string(longest) + " steps");
    } else {
      row("alperin round trip", "skipped, |S| > 16");
    }

    std::size_t models = 0;
    for (const auto& pr : profiles) {
      if (!pr.centric || !pr.fully_normalized) continue;
      model_group(F, pr.Q);
      ++models;
    }
    row("models validated", std::to_string(models));

    const auto Op = o_p_of_F(F);
    row("O_p(F)", describe_subgroup(Op));
    if (!Op.is_trivial()) {
      const auto R = join(Op, centralizer(S, Op));
      const auto F1 = centralizer_like_system(F, Op, SubsystemKind::Product);
      const auto F2 = normalizer_system(F, R);
      const auto gen = generated_system({F1, F2});
      const bool same = gen.same_morphisms(F);
      row("generated by S C_F(Q) and N_F(Q C_S(Q))", yn(same));
      if (!same) fail("F is not generated by S C_F(Q) and N_F(Q C_S(Q))");
      std::size_t checked = 0;
      for (const auto& W : F.subgroups()) {
        if (!is_normal(W, S) || !is_normal_in_F(F1, W).normal || !is_normal_in_F(F2, W).normal) continue;
        if (!is_normal_in_F(gen, W).normal) fail("normality does not pass to the generated system");
        ++checked;
      }
      row("normality propagation", std::to_string(checked) + " subgroups");
    }

    if (p == 2 || p == 3) {
      const auto qd = qd_group(p);
      const auto hf = is_fusion_H_free(F, qd);
      row(qd->name() + "-free", hf.free ? "yes" : "no, model at " + describe_subgroup(*hf.Q));
    }
    if (p == 2) {
      const auto [s4, s3] = sigma3_involvement_check(G);
      row("S4 involved / S3 in a 2-local automizer", yn(s4) + " / " + yn(s3));
      try {
        const auto [a, b] = remark67_check(G);
        row("S4-free / G/O_2(G) S3-free", yn(a) + " / " + yn(b));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::HypothesisViolated) throw;
        row("S4-free / G/O_2(G) S3-free", "n/a");
      }
    }

    if (p == 2 || p == 3) {
      const auto fam = canonical_family(S, p);
      const auto c = compute_W_iterative(fam);
      const auto fr = functor_checks(S, fam);
      row("family", std::to_string(fam.admitted().size()) + " admitted of " + std::to_string(fam.members.size()));
      row("W", describe_subgroup(c.W_iter));
      row("W chain length", std::to_string(c.steps.size()));
      row("W one-shot equal", yn(c.equal));
      row("W functor checks", fr.ok() ? "ok" : "FAIL");
      if (!fr.ok()) fail("W functor checks fail");

      std::vector<TheoremReport> reports;
      if (p == 2) reports.push_back(verify_theorem_1(F));
      reports.push_back(verify_theorem_2(F));
      if (p % 2 == 1) {
        reports.push_back(verify_theorem_3(F));
        reports.push_back(thompson_group_check(G, p));
      }
      reports.push_back(frobenius_check(G, p));
      for (const auto& t : reports) {
        row(std::string(to_string(t.id)), theorem_line(t));
        if (t.contradiction()) {
          r.contradiction = true;
          r.witness += dump(t);
        }
      }
      if (r.contradiction) fail("theorem contradiction");
    }
  } catch (const HardFailure& h) {
    r.hard_failure = true;
    r.failure = h.what;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OrderCapExceeded) {
      r.skipped = e.what();
    } else {
      r.hard_failure = true;
      r.failure = e.what();
      r.contradiction = r.contradiction || e.code() == ErrorCode::InternalInconsistency;
    }
  }
  if (r.hard_failure && r.witness.empty()) r.witness = r.failure + "\n";
  return r;
}

// ---------------------------------------------------------------------------
// Suite

std::string SuiteSummary::format(OutputFormat fmt) const {
  std::ostringstream out;
  const char* sep = fmt == OutputFormat::Tsv ? "\t" : "  ";
  for (const auto& r : reports) {
    out << r.group << sep << "p=" << r.p << sep
        << (r.hard_failure ? "FAIL" : r.skipped.empty() ? "ok" : "skipped");
    if (r.hard_failure) out << sep << r.failure;
    if (!r.skipped.empty()) out << sep << r.skipped;
    out << "\n";
  }
  out << "instances" << sep << instances << "\n";
  out << "passed" << sep << passed << "\n";
  out << "failed" << sep << failed << "\n";
  out << "skipped" << sep << skipped << "\n";
  out << "contradictions" << sep << contradictions << "\n";
  return out.str();
}

SuiteSummary run_suite(const RunConfig& config, bool use_catalog, const std::vector<std::string>& files) {
  apply_limits(config);
  SuiteSummary summary;
  bool all_fit = true;
  for (const auto& e : catalog_entries()) all_fit = all_fit && e.expected_order <= limits().order;
  if (all_fit) validate_catalog();
  std::optional<ResultCache> cache;
  if (!config.cache_dir.empty()) cache.emplace(config.cache_dir);
  std::filesystem::create_directories(config.report_dir);
  const auto ext = config.output_format == OutputFormat::Tsv ? ".tsv" : ".txt";

  std::vector<GroupPtr> groups;
  if (use_catalog)
    for (const auto& e : catalog_entries()) {
      if (e.expected_order > limits().order) {
        InstanceReport r;
        r.group = e.name;
        r.skipped = "order " + std::to_string(e.expected_order) + " exceeds cap " + std::to_string(limits().order);
        summary.reports.push_back(std::move(r));
        continue;
      }
      groups.push_back(catalog_group(e.name));
    }
  for (const auto& f : files) {
    try {
      groups.push_back(load_group(f));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OrderCapExceeded) throw;
      InstanceReport r;
      r.group = std::filesystem::path(f).filename().string();
      r.skipped = e.what();
      summary.reports.push_back(std::move(r));
    }
  }

  for (const auto& G : groups) {
    for (unsigned p : config.primes) {
      if (G->order() % p != 0) continue;
      summary.reports.push_back(run_instance(G, p, cache ? &*cache : nullptr, &summary.warnings));
    }
  }
  for (const auto& r : summary.reports) {
    if (!r.skipped.empty() && !r.hard_failure) {
      ++summary.skipped;
      continue;
    }
    ++summary.instances;
    if (r.hard_failure) ++summary.failed;
    else ++summary.passed;
    if (r.contradiction) ++summary.contradictions;
    if (r.p == 0) continue;
    write_atomically(config.report_dir / (r.file_stem() + ext), r.format(config.output_format));
    if (r.hard_failure) write_atomically(config.report_dir / (r.file_stem() + ".witness.txt"), r.witness);
  }
  write_atomically(config.report_dir / (std::string("summary") + ext), summary.format(config.output_format));
  return summary;
}

}  // namespace fusionlab
